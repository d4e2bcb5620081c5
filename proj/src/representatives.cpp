#include "partdet/representatives.hpp"

#include <algorithm>

#include "partdet/error.hpp"

namespace partdet {

std::vector<std::vector<ElementId>> RepresentativeSet::tuples() const {
    std::vector<std::vector<ElementId>> out;
    out.reserve(by_value.size());
    for (const auto& [y, x] : by_value) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<std::vector<int>> build_ranks(const GroundFamily& g, const CoordinateOrder* order) {
    std::vector<std::vector<int>> ranks(g.k);
    for (int i = 0; i < g.k; ++i) {
        const auto& set = g.sets[i];
        std::vector<ElementId> perm;
        if (order) {
            if (order->size() != static_cast<std::size_t>(g.k))
                fail("BadOrder", "coordinate order needs one permutation per index");
            perm = (*order)[i];
            auto sorted = perm;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != set)
                fail("BadOrder",
                     "order for index " + std::to_string(i + 1) + " is not a permutation of the ground set");
        } else {
            perm = set;
        }
        // rank by position within this ground set
        std::vector<int> r(set.size());
        for (std::size_t pos = 0; pos < perm.size(); ++pos) {
            auto it = std::lower_bound(set.begin(), set.end(), perm[pos]);
            r[static_cast<std::size_t>(it - set.begin())] = static_cast<int>(pos);
        }
        ranks[i] = std::move(r);
    }
    return ranks;
}

}  // namespace

RepresentativeSet lex_min_representatives(const PDFunction& f, const std::set<Value>& ys,
                                          const CoordinateOrder* order,
                                          unsigned long long budget) {
    const GroundFamily& g = f.ground();
    const SubsetMask full = full_mask(g.k);
    const auto ranks = build_ranks(g, order);

    auto rank_of = [&](int coord, ElementId e) {
        const auto& set = g.sets[coord];
        auto it = std::lower_bound(set.begin(), set.end(), e);
        return ranks[coord][static_cast<std::size_t>(it - set.begin())];
    };
    auto less = [&](const std::vector<ElementId>& a, const std::vector<ElementId>& b) {
        for (int i = 0; i < g.k; ++i) {
            int ra = rank_of(i, a[i]), rb = rank_of(i, b[i]);
            if (ra != rb) return ra < rb;
        }
        return false;
    };

    RepresentativeSet r;
    r.ground = g;
    for_each_tuple(g, full, budget, [&](const std::vector<ElementId>& x) {
        Value y = f.eval(full, x);
        if (!ys.count(y)) return;
        auto it = r.by_value.find(y);
        if (it == r.by_value.end()) {
            r.by_value.emplace(std::move(y), x);
        } else if (less(x, it->second)) {
            it->second = x;
        }
    });
    if (r.by_value.size() != ys.size()) {
        for (const Value& y : ys)
            if (!r.by_value.count(y))
                fail("YNotInImage", "value " + y.str() + " has no preimage");
    }
    return r;
}

RepresentativeSet lex_min_representatives(const PDFunction& f, unsigned long long budget) {
    auto image = compound_image(f, full_mask(f.k()), budget);
    return lex_min_representatives(f, image, nullptr, budget);
}

std::string SectionInjectivity::describe() const {
    if (ok) return "sections injective";
    std::string out = "f on " + mask_str(s) + " collides at (";
    for (std::size_t i = 0; i < a.size(); ++i) out += (i ? "," : "") + std::to_string(a[i]);
    out += ") and (";
    for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + std::to_string(b[i]);
    return out + ")";
}

SectionInjectivity verify_section_injectivity(const PDFunction& f,
                                              const std::vector<SubsetMask>& family,
                                              const std::vector<std::vector<ElementId>>& reps) {
    const SubsetMask full = full_mask(f.k());
    SectionInjectivity res;
    for (SubsetMask s : family) {
        if (s == 0) continue;  // constant section, nothing to check
        std::map<Value, std::vector<ElementId>> seen;
        for (const auto& x : reps) {
            std::vector<ElementId> xs = subtuple(full, x, s);
            Value v = f.eval(s, xs);
            auto [it, fresh] = seen.emplace(std::move(v), xs);
            if (!fresh && it->second != xs) {
                res.ok = false;
                res.s = s;
                res.a = it->second;
                res.b = xs;
                return res;
            }
        }
    }
    return res;
}

}  // namespace partdet
