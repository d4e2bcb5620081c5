#include "partdet/entropy.hpp"

#include <algorithm>

namespace partdet {

Marginal uniform_on(const std::vector<ElementId>& set) {
    if (set.empty()) fail("BadMarginal", "uniform_on needs a nonempty set");
    std::vector<ElementId> sorted = set;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Marginal m;
    const Rational p(1, static_cast<unsigned long>(sorted.size()));
    for (ElementId x : sorted) m.emplace_back(x, p);
    return m;
}

JointDistribution JointDistribution::from_atoms(GroundFamily supports,
                                                std::map<std::vector<ElementId>, Rational> atoms) {
    if (atoms.empty()) fail("BadDistribution", "no atoms");
    for (auto& [tuple, p] : atoms) p.canonicalize();  // mpq comparisons need canonical form
    Rational total = 0;
    for (const auto& [tuple, p] : atoms) {
        if (tuple.size() != static_cast<std::size_t>(supports.k))
            fail("BadDistribution", "atom arity " + std::to_string(tuple.size()) + ", expected " +
                                        std::to_string(supports.k));
        for (int i = 0; i < supports.k; ++i) {
            const auto& s = supports.sets[i];
            if (!std::binary_search(s.begin(), s.end(), tuple[i]))
                fail("BadDistribution",
                     "atom coordinate " + std::to_string(tuple[i]) + " outside support " + std::to_string(i + 1));
        }
        if (p <= 0) fail("BadDistribution", "atom mass must be positive");
        total += p;
    }
    if (total != 1) fail("BadDistribution", "atom masses sum to " + rational_str(total) + ", not 1");
    JointDistribution d;
    d.supports = std::move(supports);
    d.pmf = std::move(atoms);
    return d;
}

JointDistribution product_distribution(const std::vector<Marginal>& raw) {
    if (raw.empty()) fail("BadMarginal", "no marginals");
    std::vector<Marginal> marginals = raw;  // mpq comparisons need canonical form
    std::vector<std::vector<ElementId>> sets;
    for (Marginal& m : marginals) {
        if (m.empty()) fail("BadMarginal", "empty marginal");
        Rational sum = 0;
        std::vector<ElementId> support;
        for (auto& [x, p] : m) {
            p.canonicalize();
            if (p <= 0) fail("BadMarginal", "marginal mass must be positive");
            if (!support.empty() && x <= support.back()) fail("BadMarginal", "marginal elements must increase");
            support.push_back(x);
            sum += p;
        }
        if (sum != 1) fail("BadMarginal", "marginal sums to " + rational_str(sum) + ", not 1");
        sets.push_back(std::move(support));
    }
    ElementId max_elem = 0;
    for (const auto& s : sets) max_elem = std::max(max_elem, s.back());
    GroundFamily supports = GroundFamily::of(sets, max_elem + 1);

    std::map<std::vector<ElementId>, Rational> atoms;
    std::vector<std::size_t> pos(marginals.size(), 0);
    for (;;) {
        std::vector<ElementId> tuple(marginals.size());
        Rational p = 1;
        for (std::size_t i = 0; i < marginals.size(); ++i) {
            tuple[i] = marginals[i][pos[i]].first;
            p *= marginals[i][pos[i]].second;
        }
        atoms.emplace(std::move(tuple), std::move(p));
        std::size_t j = marginals.size();
        bool done = false;
        while (j > 0) {
            --j;
            if (++pos[j] < marginals[j].size()) break;
            pos[j] = 0;
            if (j == 0) done = true;
        }
        if (done) break;
    }
    return JointDistribution::from_atoms(std::move(supports), std::move(atoms));
}

JointDistribution uniform_on_tuples(GroundFamily supports,
                                    const std::vector<std::vector<ElementId>>& tuples) {
    if (tuples.empty()) fail("BadDistribution", "uniform_on_tuples needs tuples");
    std::map<std::vector<ElementId>, Rational> atoms;
    const Rational p(1, static_cast<unsigned long>(tuples.size()));
    for (const auto& t : tuples)
        if (!atoms.emplace(t, p).second) fail("BadDistribution", "duplicate tuple");
    return JointDistribution::from_atoms(std::move(supports), std::move(atoms));
}

JointDistribution uniformizing_joint(const PDFunction& f, unsigned long long budget) {
    const SubsetMask full = full_mask(f.k());
    // fiber sizes l_y, then p(x) = 1/(l * l_y) on the fiber of y
    std::map<Value, unsigned long> fiber;
    for_each_tuple(f.ground(), full, budget,
                   [&](const std::vector<ElementId>& x) { ++fiber[f.eval(full, x)]; });
    const unsigned long l = static_cast<unsigned long>(fiber.size());
    std::map<std::vector<ElementId>, Rational> atoms;
    for_each_tuple(f.ground(), full, budget, [&](const std::vector<ElementId>& x) {
        Rational p(1, l * fiber[f.eval(full, x)]);
        p.canonicalize();
        atoms.emplace(x, std::move(p));
    });
    return JointDistribution::from_atoms(f.ground(), std::move(atoms));
}

namespace {

// Sub-tuple of a full support atom at the positions of `mask`.
std::vector<ElementId> atom_slice(const std::vector<ElementId>& atom, SubsetMask mask) {
    std::vector<ElementId> out;
    out.reserve(static_cast<std::size_t>(mask_size(mask)));
    for (int i : mask_indices(mask)) out.push_back(atom[i - 1]);
    return out;
}

Value derived_value(const DerivedVar& v, const std::vector<ElementId>& atom) {
    std::vector<ElementId> slice = atom_slice(atom, v.mask);
    if (v.f == nullptr) {
        std::vector<Value> items;
        items.reserve(slice.size());
        for (ElementId x : slice) items.push_back(Value::integer(x));
        return Value::tuple(std::move(items));
    }
    return v.f->eval(v.mask, slice);
}

std::vector<Value> derived_values(const std::vector<DerivedVar>& vars,
                                  const std::vector<ElementId>& atom) {
    std::vector<Value> out;
    out.reserve(vars.size());
    for (const DerivedVar& v : vars) out.push_back(derived_value(v, atom));
    return out;
}

}  // namespace

std::map<Value, Rational> pushforward(const JointDistribution& dist, const PDFunction& f,
                                      SubsetMask mask) {
    std::map<Value, Rational> out;
    for (const auto& [atom, p] : dist.pmf) out[f.eval(mask, atom_slice(atom, mask))] += p;
    return out;
}

std::map<std::vector<Value>, Rational> joint_pushforward(const JointDistribution& dist,
                                                         const std::vector<DerivedVar>& vars) {
    std::map<std::vector<Value>, Rational> out;
    for (const auto& [atom, p] : dist.pmf) out[derived_values(vars, atom)] += p;
    return out;
}

namespace {

template <typename Map>
double entropy_impl(const Map& pmf) {
    double h = 0;
    for (const auto& [v, p] : pmf) {
        if (p == 1) continue;  // point mass contributes exactly 0
        h -= to_double(p) * log2_rational(p);
    }
    return h;
}

}  // namespace

double entropy_of_pmf(const std::map<std::vector<Value>, Rational>& pmf) { return entropy_impl(pmf); }
double entropy_of_pmf(const std::map<Value, Rational>& pmf) { return entropy_impl(pmf); }

double entropy_bits(const JointDistribution& dist, const std::vector<DerivedVar>& vars) {
    if (vars.empty()) fail("BadDerived", "entropy needs at least one derived variable");
    return entropy_of_pmf(joint_pushforward(dist, vars));
}

namespace {

std::vector<DerivedVar> concat(const std::vector<DerivedVar>& a, const std::vector<DerivedVar>& b) {
    std::vector<DerivedVar> out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

double conditional_entropy_bits(const JointDistribution& dist, const std::vector<DerivedVar>& target,
                                const std::vector<DerivedVar>& given) {
    if (given.empty()) return entropy_bits(dist, target);
    return entropy_bits(dist, concat(target, given)) - entropy_bits(dist, given);
}

double mutual_information_bits(const JointDistribution& dist, const std::vector<DerivedVar>& a,
                               const std::vector<DerivedVar>& b, const std::vector<DerivedVar>& given) {
    return conditional_entropy_bits(dist, a, given) + conditional_entropy_bits(dist, b, given) -
           conditional_entropy_bits(dist, concat(a, b), given);
}

bool conditional_entropy_zero_exact(const JointDistribution& dist,
                                    const std::vector<DerivedVar>& target,
                                    const std::vector<DerivedVar>& given) {
    // H(target|given) = 0 iff each given-fiber carries a single target value.
    std::map<std::vector<Value>, std::vector<Value>> fiber_value;
    for (const auto& [atom, p] : dist.pmf) {
        (void)p;
        auto g = derived_values(given, atom);
        auto t = derived_values(target, atom);
        auto [it, inserted] = fiber_value.emplace(std::move(g), t);
        if (!inserted && it->second != t) return false;
    }
    return true;
}

}  // namespace partdet
