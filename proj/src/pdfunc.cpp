#include "partdet/pdfunc.hpp"

#include <algorithm>

namespace partdet {

int Value::compare(const Value& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
    switch (kind_) {
        case Kind::Neutral:
        case Kind::Pad:
            return 0;
        case Kind::Group:
        case Kind::Ring:
            return elem_ == o.elem_ ? 0 : (elem_ < o.elem_ ? -1 : 1);
        case Kind::Int:
            return cmp(int_, o.int_);
        case Kind::Tuple: {
            const std::size_t n = std::min(items_.size(), o.items_.size());
            for (std::size_t i = 0; i < n; ++i) {
                int c = items_[i].compare(o.items_[i]);
                if (c != 0) return c;
            }
            if (items_.size() == o.items_.size()) return 0;
            return items_.size() < o.items_.size() ? -1 : 1;
        }
    }
    return 0;
}

std::string Value::str() const {
    switch (kind_) {
        case Kind::Neutral: return "_";
        case Kind::Pad: return "#";
        case Kind::Group: return "g" + std::to_string(elem_);
        case Kind::Ring: return "r" + std::to_string(elem_);
        case Kind::Int: return int_.get_str();
        case Kind::Tuple: {
            std::string s = "(";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                if (i) s += ",";
                s += items_[i].str();
            }
            return s + ")";
        }
    }
    return "?";
}

unsigned long long for_each_tuple(const GroundFamily& ground, SubsetMask mask,
                                  unsigned long long budget,
                                  const std::function<void(const std::vector<ElementId>&)>& fn) {
    std::vector<int> idx = mask_indices(mask);
    unsigned long long total = 1;
    for (int i : idx) {
        const unsigned long long sz = ground.sets[i - 1].size();
        if (total > budget / sz)
            fail("BudgetExceeded", "tuple space over " + mask_str(mask) + " exceeds budget of " +
                                       std::to_string(budget) + " tuples");
        total *= sz;
    }
    if (idx.empty()) {
        fn({});
        return 1;
    }
    std::vector<std::size_t> pos(idx.size(), 0);
    std::vector<ElementId> tuple(idx.size());
    unsigned long long count = 0;
    for (;;) {
        for (std::size_t j = 0; j < idx.size(); ++j) tuple[j] = ground.sets[idx[j] - 1][pos[j]];
        fn(tuple);
        ++count;
        std::size_t j = idx.size();
        while (j > 0) {
            --j;
            if (++pos[j] < ground.sets[idx[j] - 1].size()) break;
            pos[j] = 0;
            if (j == 0) return count;
        }
    }
}

void PDFunction::check_point(SubsetMask mask, const std::vector<ElementId>& tuple) const {
    if (mask >= (1u << ground_.k))
        fail("BadArity", "mask " + mask_str(mask) + " has bits beyond k=" + std::to_string(ground_.k));
    const auto idx = mask_indices(mask);
    if (tuple.size() != idx.size())
        fail("BadArity", "tuple of length " + std::to_string(tuple.size()) + " for mask " + mask_str(mask));
    for (std::size_t j = 0; j < idx.size(); ++j) {
        const auto& set = ground_.sets[idx[j] - 1];
        if (!std::binary_search(set.begin(), set.end(), tuple[j]))
            fail("ElementOutOfGround", "element " + std::to_string(tuple[j]) + " not in ground set " +
                                           std::to_string(idx[j]));
    }
}

Value PDFunction::eval_uncached(SubsetMask mask, const std::vector<ElementId>& tuple) const {
    check_point(mask, tuple);
    if (mask == 0) return Value::neutral();
    return evaluator_(mask, tuple);
}

Value PDFunction::eval(SubsetMask mask, const std::vector<ElementId>& tuple) const {
    check_point(mask, tuple);
    if (mask == 0) return Value::neutral();
    if (!memo_->enabled) return evaluator_(mask, tuple);
    {
        std::lock_guard<std::mutex> lock(memo_->mutex);
        auto it = memo_->cache.find({mask, tuple});
        if (it != memo_->cache.end()) return it->second;
    }
    Value v = evaluator_(mask, tuple);
    std::lock_guard<std::mutex> lock(memo_->mutex);
    memo_->cache.emplace(std::make_pair(mask, tuple), v);
    return v;
}

PDFunction PDFunction::projection(GroundFamily ground) {
    auto ev = [](SubsetMask, const std::vector<ElementId>& tuple) {
        std::vector<Value> items;
        items.reserve(tuple.size());
        for (ElementId x : tuple) items.push_back(Value::integer(x));
        return Value::tuple(std::move(items));
    };
    return PDFunction(std::move(ground), Kind::Projection, "projection", ev);
}

PDFunction PDFunction::abelian_linear(const FiniteGroup& g, GroundFamily ground,
                                      std::vector<long long> coeffs) {
    if (!g.is_abelian()) fail("RequiresAbelian", "abelian_linear needs an abelian group");
    if (coeffs.size() != static_cast<std::size_t>(ground.k))
        fail("BadArity", "abelian_linear needs one coefficient per index");
    auto shared = std::make_shared<const FiniteGroup>(g);
    // c*x as repeated addition; group order caps the loop at order-1 steps.
    auto scale = [shared](long long c, ElementId x) {
        const FiniteGroup& gg = *shared;
        long long n = gg.order();
        long long r = ((c % n) + n) % n;
        ElementId acc = gg.identity();
        for (long long i = 0; i < r; ++i) acc = gg.op(acc, x);
        return acc;
    };
    auto ev = [shared, scale, coeffs](SubsetMask mask, const std::vector<ElementId>& tuple) {
        const FiniteGroup& gg = *shared;
        ElementId acc = gg.identity();
        auto idx = mask_indices(mask);
        for (std::size_t j = 0; j < idx.size(); ++j) acc = gg.op(acc, scale(coeffs[idx[j] - 1], tuple[j]));
        return Value::group(acc);
    };
    PDFunction f(std::move(ground), Kind::AbelianLinear, "abelian_linear", ev);
    f.group_ = shared;
    return f;
}

PDFunction PDFunction::cartesian(GroundFamily ground) {
    const int k = ground.k;
    auto ev = [k](SubsetMask mask, const std::vector<ElementId>& tuple) {
        std::vector<Value> items(k, Value::integer(0));
        auto idx = mask_indices(mask);
        for (std::size_t j = 0; j < idx.size(); ++j) items[idx[j] - 1] = Value::integer(tuple[j]);
        return Value::tuple(std::move(items));
    };
    return PDFunction(std::move(ground), Kind::Cartesian, "cartesian", ev);
}

PDFunction PDFunction::ring_product(const FiniteRing& r, GroundFamily ground) {
    auto shared = std::make_shared<const FiniteRing>(r);
    auto ev = [shared](SubsetMask, const std::vector<ElementId>& tuple) {
        const FiniteRing& rr = *shared;
        ElementId acc = tuple[0];
        for (std::size_t j = 1; j < tuple.size(); ++j) acc = rr.mul(acc, tuple[j]);
        return Value::ring(acc);
    };
    PDFunction f(std::move(ground), Kind::RingProduct, "ring_product", ev);
    f.ring_ = shared;
    return f;
}

namespace {

bool is_interval(SubsetMask mask) {
    if (mask == 0) return false;
    // Contiguous set bits: m / lowest-set-bit is all ones.
    SubsetMask shifted = mask / (mask & ~(mask - 1));
    return (shifted & (shifted + 1)) == 0;
}

}  // namespace

PDFunction PDFunction::interval_g(const FiniteGroup& g, GroundFamily ground) {
    auto shared = std::make_shared<const FiniteGroup>(g);
    const int k = ground.k;
    auto ev = [shared, k](SubsetMask mask, const std::vector<ElementId>& tuple) {
        const FiniteGroup& gg = *shared;
        if (is_interval(mask)) {
            ElementId acc = tuple[0];
            for (std::size_t j = 1; j < tuple.size(); ++j) acc = gg.op(acc, tuple[j]);
            return Value::group(acc);
        }
        std::vector<Value> items(k, Value::pad());
        auto idx = mask_indices(mask);
        for (std::size_t j = 0; j < idx.size(); ++j) items[idx[j] - 1] = Value::group(tuple[j]);
        return Value::tuple(std::move(items));
    };
    PDFunction f(std::move(ground), Kind::IntervalG, "interval_g", ev);
    f.group_ = shared;
    return f;
}

PDFunction PDFunction::group_product(const FiniteGroup& g, GroundFamily ground) {
    auto shared = std::make_shared<const FiniteGroup>(g);
    auto ev = [shared](SubsetMask, const std::vector<ElementId>& tuple) {
        const FiniteGroup& gg = *shared;
        ElementId acc = tuple[0];
        for (std::size_t j = 1; j < tuple.size(); ++j) acc = gg.op(acc, tuple[j]);
        return Value::group(acc);
    };
    PDFunction f(std::move(ground), Kind::Custom, "group_product", ev);
    f.group_ = shared;
    return f;
}

PDFunction PDFunction::custom(GroundFamily ground, Evaluator evaluator, std::string label) {
    return PDFunction(std::move(ground), Kind::Custom, std::move(label), std::move(evaluator));
}

std::string PDCheckResult::describe() const {
    if (ok) return "ok";
    std::string out = "witness: s=" + mask_str(s);
    if (t != 0) out += " t=" + mask_str(t);
    out += " x=" + set_str(x) + " y=" + set_str(y);
    return out;
}

std::vector<ElementId> subtuple(SubsetMask from, const std::vector<ElementId>& tuple, SubsetMask to) {
    std::vector<ElementId> out;
    out.reserve(static_cast<std::size_t>(mask_size(to)));
    std::size_t j = 0;
    for (SubsetMask m = from; m != 0; m &= m - 1, ++j) {
        SubsetMask bit = m & ~(m - 1);
        if (to & bit) out.push_back(tuple[j]);
    }
    return out;
}

PDCheckResult is_partition_determined(const PDFunction& f, const std::vector<SubsetMask>& family,
                                      unsigned long long budget) {
    const SubsetMask full = full_mask(f.k());
    PDCheckResult res;
    for (SubsetMask s : family) {
        if (s & ~full) fail("BadMask", "family member outside [k]");
        const SubsetMask sbar = full & ~s;
        // key (f_s, f_sbar) -> (f(x), x)
        std::map<std::pair<Value, Value>, std::pair<Value, std::vector<ElementId>>> seen;
        bool failed = false;
        for_each_tuple(f.ground(), full, budget, [&](const std::vector<ElementId>& x) {
            if (failed) return;
            Value fs = f.eval(s, subtuple(full, x, s));
            Value fsbar = f.eval(sbar, subtuple(full, x, sbar));
            Value fx = f.eval(full, x);
            auto [it, inserted] = seen.try_emplace({std::move(fs), std::move(fsbar)}, fx, x);
            if (!inserted && !(it->second.first == fx)) {
                res.ok = false;
                res.s = s;
                res.x = it->second.second;
                res.y = x;
                failed = true;
            }
        });
        if (failed) return res;
    }
    return res;
}

PDCheckResult is_strongly_partition_determined(const PDFunction& f, unsigned long long budget) {
    const int k = f.k();
    const SubsetMask full = full_mask(k);
    PDCheckResult res;
    for (SubsetMask s = 1; s <= full; ++s) {
        for (SubsetMask t = 1; t <= full; ++t) {
            if ((s & t) != 0 || s == 0 || t == 0) continue;
            const SubsetMask st = s | t;
            // key (f_t, f_{s|t}) -> (f_s(x), x over s|t)
            std::map<std::pair<Value, Value>, std::pair<Value, std::vector<ElementId>>> seen;
            bool failed = false;
            for_each_tuple(f.ground(), st, budget, [&](const std::vector<ElementId>& x) {
                if (failed) return;
                Value ft = f.eval(t, subtuple(st, x, t));
                Value fst = f.eval(st, x);
                Value fs = f.eval(s, subtuple(st, x, s));
                auto [it, inserted] = seen.try_emplace({std::move(ft), std::move(fst)}, fs, x);
                if (!inserted && !(it->second.first == fs)) {
                    res.ok = false;
                    res.s = s;
                    res.t = t;
                    res.x = it->second.second;
                    res.y = x;
                    failed = true;
                }
            });
            if (failed) return res;
        }
    }
    return res;
}

std::set<Value> compound_image(const PDFunction& f, SubsetMask mask, unsigned long long budget) {
    if (mask == 0) fail("BadMask", "compound_image needs a nonempty mask");
    std::set<Value> out;
    for_each_tuple(f.ground(), mask, budget,
                   [&](const std::vector<ElementId>& x) { out.insert(f.eval(mask, x)); });
    return out;
}

std::vector<std::vector<ElementId>> compound_preimage(const PDFunction& f, SubsetMask mask,
                                                      const std::set<Value>& ys,
                                                      unsigned long long budget) {
    if (mask == 0) fail("BadMask", "compound_preimage needs a nonempty mask");
    std::vector<std::vector<ElementId>> out;
    std::set<Value> hit;
    for_each_tuple(f.ground(), mask, budget, [&](const std::vector<ElementId>& x) {
        Value v = f.eval(mask, x);
        if (ys.count(v)) {
            out.push_back(x);
            hit.insert(v);
        }
    });
    if (hit.size() != ys.size()) {
        for (const Value& y : ys)
            if (!hit.count(y)) fail("YNotInImage", "value " + y.str() + " is not attained on " + mask_str(mask));
    }
    return out;
}

}  // namespace partdet
