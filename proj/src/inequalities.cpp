#include "partdet/inequalities.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "partdet/error.hpp"
#include "partdet/representatives.hpp"

namespace partdet {

std::string status_str(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Violated: return "violated";
        default: return "inconclusive";
    }
}

nlohmann::json Verdict::to_json() const {
    nlohmann::json j;
    j["statement"] = statement;
    j["status"] = status_str(status);
    j["exact"] = exact;
    if (exact) {
        j["lhs"] = lhs_int.get_str();
        j["rhs"] = rhs_int.get_str();
    } else {
        j["lhs"] = lhs_bits;
        j["rhs"] = rhs_bits;
    }
    j["lhs_bits"] = lhs_bits;
    j["rhs_bits"] = rhs_bits;
    j["margin_bits"] = margin;
    j["witness"] = witness;
    j["seed"] = seed;
    j["runtime_ms"] = runtime_ms;
    return j;
}

std::string Verdict::summary() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%+.9f", margin);
    std::string out = statement + ": " + status_str(status);
    if (exact) {
        out += " (" + lhs_int.get_str() + " vs " + rhs_int.get_str() + ")";
    } else {
        char lb[64], rb[64];
        std::snprintf(lb, sizeof(lb), "%.9f", lhs_bits);
        std::snprintf(rb, sizeof(rb), "%.9f", rhs_bits);
        out += " (" + std::string(lb) + " vs " + rb + " bits)";
    }
    return out + " margin " + buf + " bits";
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }
};

double log2_big(const BigInt& n) { return log2_rational(Rational(n)); }

Verdict exact_verdict(std::string statement, BigInt lhs, BigInt rhs, nlohmann::json witness,
                      const Timer& t) {
    Verdict v;
    v.statement = std::move(statement);
    v.exact = true;
    v.lhs_int = std::move(lhs);
    v.rhs_int = std::move(rhs);
    v.status = v.lhs_int <= v.rhs_int ? Status::Holds : Status::Violated;
    v.lhs_bits = v.lhs_int > 0 ? log2_big(v.lhs_int) : 0.0;
    v.rhs_bits = v.rhs_int > 0 ? log2_big(v.rhs_int) : 0.0;
    v.margin = v.rhs_bits - v.lhs_bits;
    v.witness = std::move(witness);
    v.runtime_ms = t.ms();
    return v;
}

Verdict bits_verdict(std::string statement, double lhs, double rhs, nlohmann::json witness,
                     const Timer& t) {
    Verdict v;
    v.statement = std::move(statement);
    v.exact = false;
    v.lhs_bits = lhs;
    v.rhs_bits = rhs;
    v.margin = rhs - lhs;
    if (v.margin >= -kEntropyHoldsEps) {
        v.status = Status::Holds;
    } else if (v.margin < -kEntropyViolationEps) {
        v.status = Status::Violated;
    } else {
        v.status = Status::Inconclusive;
    }
    v.witness = std::move(witness);
    v.runtime_ms = t.ms();
    return v;
}

unsigned long cleared_exponent(const Rational& w, const BigInt& lcm) {
    Rational p = w * Rational(lcm);
    p.canonicalize();
    if (p.get_den() != 1) fail("BadWeight", "weight " + rational_str(w) + " does not clear");
    BigInt n = p.get_num();
    if (n < 0 || !n.fits_ulong_p()) fail("BadWeight", "cleared exponent out of range");
    return n.get_ui();
}

nlohmann::json set_json(const std::vector<ElementId>& s) { return nlohmann::json(s); }

nlohmann::json marginals_json(const std::vector<Marginal>& ms) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& m : ms) {
        nlohmann::json one = nlohmann::json::array();
        for (const auto& [e, p] : m) one.push_back({{"element", e}, {"p", rational_str(p)}});
        out.push_back(one);
    }
    return out;
}

nlohmann::json covering_json(const FractionalCovering& c) {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < c.family.members.size(); ++i)
        out.push_back({{"set", mask_str(c.family.members[i])},
                       {"weight", rational_str(c.weights[i])}});
    return out;
}

void require_strongly_determined(const PDFunction& f, unsigned long long budget) {
    auto res = is_strongly_partition_determined(f, budget);
    if (!res.ok) fail("NotStronglyPD", res.describe());
}

double pushforward_entropy(const JointDistribution& dist, const PDFunction& f, SubsetMask mask) {
    return entropy_bits(dist, {DerivedVar{&f, mask}});
}

// (f_s, f_t) jointly determine f on s|t, checked by enumeration.
void require_pair_determines_union(const PDFunction& f, SubsetMask s, SubsetMask t,
                                   unsigned long long budget) {
    const SubsetMask st = s | t;
    std::map<std::pair<Value, Value>, Value> seen;
    bool ok = true;
    std::vector<ElementId> bad;
    for_each_tuple(f.ground(), st, budget, [&](const std::vector<ElementId>& x) {
        if (!ok) return;
        Value u = f.eval(st, x);
        auto key = std::make_pair(f.eval(s, subtuple(st, x, s)), f.eval(t, subtuple(st, x, t)));
        auto [it, fresh] = seen.emplace(std::move(key), u);
        if (!fresh && !(it->second == u)) {
            ok = false;
            bad = x;
        }
    });
    if (!ok)
        fail("NotPD", "pair of sections on " + mask_str(s) + ", " + mask_str(t) +
                          " does not determine their union");
}

}  // namespace

// -- entropy lane ------------------------------------------------------

Verdict check_entropy_submodularity(const PDFunction& f, const std::vector<Marginal>& marginals,
                                    SubsetMask s, SubsetMask t, unsigned long long budget) {
    Timer timer;
    const SubsetMask full = full_mask(f.k());
    if ((s | t) & ~full) fail("BadMask", "masks exceed the index range");
    require_strongly_determined(f, budget);

    auto dist = product_distribution(marginals);
    double hu = pushforward_entropy(dist, f, s | t);
    double hi = pushforward_entropy(dist, f, s & t);
    double hs = pushforward_entropy(dist, f, s);
    double ht = pushforward_entropy(dist, f, t);

    nlohmann::json w;
    w["s"] = mask_str(s);
    w["t"] = mask_str(t);
    w["H_union"] = hu;
    w["H_intersection"] = hi;
    w["H_s"] = hs;
    w["H_t"] = ht;
    w["marginals"] = marginals_json(marginals);
    w["function"] = f.label();
    return bits_verdict("entropy-submodularity", hu + hi, hs + ht, std::move(w), timer);
}

Verdict check_mutual_information(const PDFunction& f, const std::vector<Marginal>& marginals,
                                 SubsetMask s, SubsetMask t, unsigned long long budget) {
    Timer timer;
    if (s == 0 || t == 0 || (s & t) != 0)
        fail("BadMask", "needs disjoint nonempty masks");
    if ((s | t) & ~full_mask(f.k())) fail("BadMask", "masks exceed the index range");
    require_pair_determines_union(f, s, t, budget);

    auto dist = product_distribution(marginals);
    DerivedVar vu{&f, static_cast<SubsetMask>(s | t)}, vs{&f, s}, vt{&f, t};
    double hu = entropy_bits(dist, {vu});
    double hs = entropy_bits(dist, {vs});
    double mi = mutual_information_bits(dist, {vu}, {vt});

    nlohmann::json w;
    w["s"] = mask_str(s);
    w["t"] = mask_str(t);
    w["H_union"] = hu;
    w["H_s"] = hs;
    w["I_union_t"] = mi;
    w["marginals"] = marginals_json(marginals);
    w["function"] = f.label();
    return bits_verdict("entropy-mutual-information", hu - hs, mi, std::move(w), timer);
}

Verdict check_compression_entropy(const PDFunction& f, const std::vector<Marginal>& marginals,
                                  const SubsetFamily& a, const SubsetFamily& b,
                                  const std::vector<CompressionStep>& chain,
                                  unsigned long long budget) {
    Timer timer;
    if (a.k != f.k() || b.k != f.k()) fail("BadParameter", "family index count must match f");
    SubsetFamily cur = a;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& step : chain) {
        try {
            cur = apply_compression_step(cur, step);
        } catch (const Error& e) {
            fail("InvalidChain", std::string("step does not apply: ") + e.what());
        }
    }
    if (!(cur == b)) fail("InvalidChain", "chain from " + a.str() + " ends at " + cur.str() +
                                              ", not " + b.str());
    require_strongly_determined(f, budget);

    auto dist = product_distribution(marginals);
    std::map<SubsetMask, double> hcache;
    auto h = [&](SubsetMask m) {
        auto it = hcache.find(m);
        if (it == hcache.end()) it = hcache.emplace(m, pushforward_entropy(dist, f, m)).first;
        return it->second;
    };

    double sum_a = 0, sum_b = 0;
    for (SubsetMask m : a.members) sum_a += h(m);
    for (SubsetMask m : b.members) sum_b += h(m);

    for (const auto& step : chain) {
        double drop = h(step.first) + h(step.second) -
                      h(step.first | step.second) - h(step.first & step.second);
        steps.push_back({{"first", mask_str(step.first)},
                         {"second", mask_str(step.second)},
                         {"margin_bits", drop}});
    }

    nlohmann::json w;
    w["from"] = a.str();
    w["to"] = b.str();
    w["steps"] = steps;
    w["sum_from"] = sum_a;
    w["sum_to"] = sum_b;
    w["marginals"] = marginals_json(marginals);
    w["function"] = f.label();
    return bits_verdict("compression-order", sum_b, sum_a, std::move(w), timer);
}

Verdict check_entropy_upper_bound(const PDFunction& f, const std::vector<Marginal>& marginals,
                                  const FractionalCovering& covering,
                                  unsigned long long budget) {
    Timer timer;
    if (covering.family.k != f.k()) fail("BadParameter", "covering index count must match f");
    require_strongly_determined(f, budget);

    auto dist = product_distribution(marginals);
    double lhs = pushforward_entropy(dist, f, full_mask(f.k()));
    double rhs = 0;
    nlohmann::json parts = nlohmann::json::array();
    for (std::size_t i = 0; i < covering.family.members.size(); ++i) {
        double hs = pushforward_entropy(dist, f, covering.family.members[i]);
        rhs += to_double(covering.weights[i]) * hs;
        parts.push_back({{"set", mask_str(covering.family.members[i])},
                         {"weight", rational_str(covering.weights[i])},
                         {"H", hs}});
    }

    nlohmann::json w;
    w["H_full"] = lhs;
    w["parts"] = parts;
    w["marginals"] = marginals_json(marginals);
    w["function"] = f.label();
    return bits_verdict("entropy-covering-bound", lhs, rhs, std::move(w), timer);
}

Verdict check_entropy_counterexample_4sets(int m) {
    Timer timer;
    if (m < 1) fail("BadParameter", "support size must be at least 1");
    std::vector<ElementId> pts(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pts[static_cast<std::size_t>(i)] = i;
    auto supports = GroundFamily::of({{0}, pts, pts, {0}}, m);
    std::map<std::vector<ElementId>, Rational> atoms;
    for (ElementId v : pts) atoms[{0, v, v, 0}] = Rational(1, m);
    auto dist = JointDistribution::from_atoms(supports, atoms);

    auto coords = [](SubsetMask mk) { return DerivedVar{nullptr, mk}; };
    double lhs = entropy_bits(dist, {coords(0b1111)});
    double h123 = entropy_bits(dist, {coords(0b0111)});
    double h234 = entropy_bits(dist, {coords(0b1110)});
    double h134_2 = conditional_entropy_bits(dist, {coords(0b1101)}, {coords(0b0010)});
    double h124_3 = conditional_entropy_bits(dist, {coords(0b1011)}, {coords(0b0100)});
    double rhs = (h123 + h234 + h134_2 + h124_3) / 3.0;

    nlohmann::json w;
    w["support_points"] = m;
    w["H_full"] = lhs;
    w["H_123"] = h123;
    w["H_234"] = h234;
    w["H_134_given_2"] = h134_2;
    w["H_124_given_3"] = h124_3;
    w["construction"] = "coordinates 2 and 3 equal and uniform, 1 and 4 constant";
    return bits_verdict("entropy-4sets", lhs, rhs, std::move(w), timer);
}

Verdict check_pairwise_conditional(const JointDistribution& dist) {
    Timer timer;
    const int k = dist.k();
    if (k < 2) fail("BadParameter", "needs at least two coordinates");

    double hall = entropy_bits(dist, {DerivedVar{nullptr, full_mask(k)}});
    double rhs = 0;
    nlohmann::json pairs = nlohmann::json::array();
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            SubsetMask pair = (SubsetMask{1} << (i - 1)) | (SubsetMask{1} << (j - 1));
            SubsetMask between = 0;
            for (int t = i + 1; t < j; ++t) between |= SubsetMask{1} << (t - 1);
            double h = conditional_entropy_bits(dist, {DerivedVar{nullptr, pair}},
                                                {DerivedVar{nullptr, between}});
            rhs += h;
            pairs.push_back({{"pair", mask_str(pair)},
                             {"between", mask_str(between)},
                             {"H", h}});
        }
    }

    nlohmann::json w;
    w["k"] = k;
    w["H_joint"] = hall;
    w["pairs"] = pairs;
    return bits_verdict("pairwise-conditional-bound", (k - 1) * hall, rhs, std::move(w), timer);
}

// -- cardinality lane --------------------------------------------------

namespace {

Verdict covering_product_verdict(std::string statement, std::size_t base_count,
                                 const FractionalCovering& covering,
                                 const std::map<SubsetMask, std::size_t>& factor_sizes,
                                 nlohmann::json witness, const Timer& timer) {
    BigInt lcm = denominator_lcm(covering.weights);
    BigInt lhs = big_pow(BigInt(static_cast<unsigned long>(base_count)),
                         cleared_exponent(Rational(1), lcm));
    BigInt rhs = 1;
    nlohmann::json parts = nlohmann::json::array();
    for (std::size_t i = 0; i < covering.family.members.size(); ++i) {
        SubsetMask mask = covering.family.members[i];
        std::size_t nsz = factor_sizes.at(mask);
        unsigned long e = cleared_exponent(covering.weights[i], lcm);
        rhs *= big_pow(BigInt(static_cast<unsigned long>(nsz)), e);
        parts.push_back({{"set", mask_str(mask)},
                         {"size", nsz},
                         {"weight", rational_str(covering.weights[i])}});
    }
    witness["count"] = base_count;
    witness["factors"] = parts;
    witness["cleared_lcm"] = lcm.get_str();
    return exact_verdict(std::move(statement), std::move(lhs), std::move(rhs),
                         std::move(witness), timer);
}

}  // namespace

Verdict check_set_main(const PDFunction& f, const std::set<Value>& ys,
                       const FractionalCovering& covering, unsigned long long budget) {
    Timer timer;
    if (covering.family.k != f.k()) fail("BadParameter", "covering index count must match f");
    if (ys.empty()) fail("BadParameter", "needs a nonempty target set");
    auto pd = is_partition_determined(f, covering.family.members, budget);
    if (!pd.ok) fail("NotPD", pd.describe());

    const SubsetMask full = full_mask(f.k());
    std::map<SubsetMask, std::set<Value>> sections;
    for (SubsetMask m : covering.family.members) sections[m];
    std::set<Value> hit;
    for_each_tuple(f.ground(), full, budget, [&](const std::vector<ElementId>& x) {
        Value y = f.eval(full, x);
        if (!ys.count(y)) return;
        hit.insert(y);
        for (auto& [mask, img] : sections) img.insert(f.eval(mask, subtuple(full, x, mask)));
    });
    if (hit.size() != ys.size()) {
        for (const Value& y : ys)
            if (!hit.count(y)) fail("YNotInImage", "value " + y.str() + " has no preimage");
    }

    std::map<SubsetMask, std::size_t> sizes;
    nlohmann::json secs = nlohmann::json::array();
    for (auto& [mask, img] : sections) {
        sizes[mask] = img.size();
        secs.push_back({{"set", mask_str(mask)}, {"section_size", img.size()}});
    }
    nlohmann::json w;
    w["function"] = f.label();
    w["sections"] = secs;
    w["covering"] = covering_json(covering);
    return covering_product_verdict("restricted-covering-bound", ys.size(), covering, sizes,
                                    std::move(w), timer);
}

Verdict check_compound_full(const PDFunction& f, const FractionalCovering& covering,
                            unsigned long long budget) {
    Timer timer;
    if (covering.family.k != f.k()) fail("BadParameter", "covering index count must match f");
    auto pd = is_partition_determined(f, covering.family.members, budget);
    if (!pd.ok) fail("NotPD", pd.describe());

    auto image = compound_image(f, full_mask(f.k()), budget);
    std::map<SubsetMask, std::size_t> sizes;
    for (SubsetMask m : covering.family.members)
        if (!sizes.count(m)) sizes[m] = compound_image(f, m, budget).size();

    nlohmann::json w;
    w["function"] = f.label();
    w["covering"] = covering_json(covering);
    return covering_product_verdict("compound-covering-bound", image.size(), covering, sizes,
                                    std::move(w), timer);
}

Verdict check_projection_bound(const std::vector<std::vector<ElementId>>& ys, int k,
                               const FractionalCovering& covering) {
    Timer timer;
    if (covering.family.k != k) fail("BadParameter", "covering index count must match k");
    std::set<std::vector<ElementId>> pts;
    for (const auto& y : ys) {
        if (static_cast<int>(y.size()) != k) fail("BadParameter", "tuple of wrong arity");
        pts.insert(y);
    }
    if (pts.empty()) fail("BadParameter", "needs a nonempty point set");

    std::map<SubsetMask, std::size_t> sizes;
    for (SubsetMask m : covering.family.members) {
        if (sizes.count(m)) continue;
        std::set<std::vector<ElementId>> proj;
        for (const auto& p : pts) {
            std::vector<ElementId> q;
            for (int i : mask_indices(m)) q.push_back(p[static_cast<std::size_t>(i - 1)]);
            proj.insert(std::move(q));
        }
        sizes[m] = proj.size();
    }

    nlohmann::json w;
    w["points"] = pts.size();
    w["covering"] = covering_json(covering);
    return covering_product_verdict("projection-covering-bound", pts.size(), covering, sizes,
                                    std::move(w), timer);
}

Verdict sumset_log_submodularity_probe(const PDFunction& f, const std::set<Value>& ys,
                                       SubsetMask s, SubsetMask t, unsigned long long budget) {
    Timer timer;
    if (ys.empty()) fail("BadParameter", "needs a nonempty target set");
    const SubsetMask full = full_mask(f.k());
    if ((s | t) & ~full) fail("BadMask", "masks exceed the index range");

    std::map<SubsetMask, std::set<Value>> img;
    for (SubsetMask m : {static_cast<SubsetMask>(s | t), static_cast<SubsetMask>(s & t), s, t})
        img[m];
    std::set<Value> hit;
    for_each_tuple(f.ground(), full, budget, [&](const std::vector<ElementId>& x) {
        Value y = f.eval(full, x);
        if (!ys.count(y)) return;
        hit.insert(y);
        for (auto& [mask, vals] : img) vals.insert(f.eval(mask, subtuple(full, x, mask)));
    });
    if (hit.size() != ys.size()) fail("YNotInImage", "some target value has no preimage");

    BigInt lhs = BigInt(static_cast<unsigned long>(img[s | t].size())) *
                 BigInt(static_cast<unsigned long>(img[s & t].size()));
    BigInt rhs = BigInt(static_cast<unsigned long>(img[s].size())) *
                 BigInt(static_cast<unsigned long>(img[t].size()));

    nlohmann::json w;
    w["function"] = f.label();
    w["s"] = mask_str(s);
    w["t"] = mask_str(t);
    w["size_union"] = img[s | t].size();
    w["size_intersection"] = img[s & t].size();
    w["size_s"] = img[s].size();
    w["size_t"] = img[t].size();
    w["note"] = "no theorem claims this; violations are findings, not errors";
    return exact_verdict("sumset-log-submodularity", std::move(lhs), std::move(rhs),
                         std::move(w), timer);
}

Verdict projection_nonsubmodularity_example() {
    Timer timer;
    auto ground = GroundFamily::of({{0, 1}, {0, 1}, {0, 1}}, 2);
    auto f = PDFunction::projection(ground);
    const std::vector<std::vector<ElementId>> pts = {
        {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}};
    std::set<Value> ys;
    for (const auto& p : pts) ys.insert(f.eval(0b111, p));

    Verdict v = sumset_log_submodularity_probe(f, ys, 0b011, 0b110);
    v.statement = "projection-submodularity";
    v.witness["points"] = pts;
    return v;
}

namespace {

BigInt card_pow(std::size_t base, unsigned long e) {
    return big_pow(BigInt(static_cast<unsigned long>(base)), e);
}

std::vector<ElementId> singleton(ElementId e) { return {e}; }

}  // namespace

Verdict check_abelian_sumset(const FiniteGroup& g, const std::vector<ElementId>& a,
                             const std::vector<std::vector<ElementId>>& bs,
                             const std::vector<ElementId>& d,
                             const FractionalCovering& covering) {
    Timer timer;
    if (!g.is_abelian()) fail("NotAbelian", "group " + g.name() + " is not abelian");
    if (!covering.is_partition)
        fail("NotAPartition", "weights must cover every index with equality");
    const int k = covering.family.k;
    if (static_cast<int>(bs.size()) != k) fail("BadParameter", "needs one set per index");

    auto btotal = nary_sumset(g, bs);
    for (ElementId e : d)
        if (!std::binary_search(btotal.begin(), btotal.end(), e))
            fail("DNotInSumset", "element " + g.element_name(e) + " outside the full sum");

    auto ad = nary_sumset(g, {a, d});
    Rational c = covering.total_weight();
    std::vector<Rational> denoms = covering.weights;
    denoms.push_back(c);
    BigInt lcm = denominator_lcm(denoms);

    BigInt lhs = card_pow(ad.size(), cleared_exponent(c, lcm));
    BigInt rhs = card_pow(d.size(), cleared_exponent(Rational(c - 1), lcm));
    nlohmann::json parts = nlohmann::json::array();
    for (std::size_t i = 0; i < covering.family.members.size(); ++i) {
        SubsetMask mask = covering.family.members[i];
        std::vector<std::vector<ElementId>> ops;
        ops.push_back(a);
        for (int idx : mask_indices(mask)) ops.push_back(bs[static_cast<std::size_t>(idx - 1)]);
        auto abp = nary_sumset(g, ops);
        rhs *= card_pow(abp.size(), cleared_exponent(covering.weights[i], lcm));
        parts.push_back({{"set", mask_str(mask)},
                         {"A_plus_B_size", abp.size()},
                         {"weight", rational_str(covering.weights[i])}});
    }

    nlohmann::json w;
    w["group"] = g.name();
    w["A"] = set_json(a);
    w["D"] = set_json(d);
    w["A_plus_D_size"] = ad.size();
    w["total_weight"] = rational_str(c);
    w["parts"] = parts;
    w["covering"] = covering_json(covering);
    return exact_verdict("abelian-partition-bound", std::move(lhs), std::move(rhs),
                         std::move(w), timer);
}

Verdict check_regular_abelian(const FiniteGroup& g, const std::vector<ElementId>& a,
                              const std::vector<std::vector<ElementId>>& bs,
                              const std::vector<ElementId>& d, const SubsetFamily& family) {
    Timer timer;
    if (!g.is_abelian()) fail("NotAbelian", "group " + g.name() + " is not abelian");
    auto r = family.regular_degree();
    if (!r) fail("NotRegular", "family is not r-regular: " + family.str());
    const int k = family.k;
    if (static_cast<int>(bs.size()) != k) fail("BadParameter", "needs one set per index");

    auto btotal = nary_sumset(g, bs);
    for (ElementId e : d)
        if (!std::binary_search(btotal.begin(), btotal.end(), e))
            fail("DNotInSumset", "element " + g.element_name(e) + " outside the full sum");

    auto ad = nary_sumset(g, {a, d});
    const unsigned long members = static_cast<unsigned long>(family.members.size());
    BigInt lhs = card_pow(ad.size(), members);
    BigInt rhs = card_pow(d.size(), members - static_cast<unsigned long>(*r));
    nlohmann::json parts = nlohmann::json::array();
    for (SubsetMask mask : family.members) {
        std::vector<std::vector<ElementId>> ops;
        ops.push_back(a);
        for (int idx : mask_indices(mask)) ops.push_back(bs[static_cast<std::size_t>(idx - 1)]);
        auto abp = nary_sumset(g, ops);
        rhs *= BigInt(static_cast<unsigned long>(abp.size()));
        parts.push_back({{"set", mask_str(mask)}, {"A_plus_B_size", abp.size()}});
    }

    nlohmann::json w;
    w["group"] = g.name();
    w["A"] = set_json(a);
    w["D"] = set_json(d);
    w["A_plus_D_size"] = ad.size();
    w["regular_degree"] = *r;
    w["parts"] = parts;
    return exact_verdict("abelian-regular-bound", std::move(lhs), std::move(rhs), std::move(w),
                         timer);
}

Verdict check_nonabelian(const FiniteGroup& g, const std::vector<std::vector<ElementId>>& xs,
                         unsigned long long budget) {
    Timer timer;
    const int k = static_cast<int>(xs.size());
    if (k < 2) fail("BadParameter", "needs at least two sets");

    auto total = nary_sumset(g, xs);
    BigInt lhs = card_pow(total.size(), static_cast<unsigned long>(k - 1));
    BigInt rhs = 1;
    nlohmann::json table = nlohmann::json::array();
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            unsigned long long middles = 1;
            for (int t = i + 1; t < j; ++t) {
                std::size_t sz = xs[static_cast<std::size_t>(t - 1)].size();
                if (middles > budget / sz)
                    fail("MiddleEnumerationBudgetExceeded",
                         "middle tuples between " + std::to_string(i) + " and " +
                             std::to_string(j) + " exceed the budget");
                middles *= sz;
            }
            std::size_t best = 0;
            std::vector<std::size_t> idx(static_cast<std::size_t>(j - i - 1), 0);
            while (true) {
                std::vector<std::vector<ElementId>> ops;
                ops.push_back(xs[static_cast<std::size_t>(i - 1)]);
                for (int t = i + 1; t < j; ++t)
                    ops.push_back(singleton(
                        xs[static_cast<std::size_t>(t - 1)][idx[static_cast<std::size_t>(t - i - 1)]]));
                ops.push_back(xs[static_cast<std::size_t>(j - 1)]);
                best = std::max(best, nary_sumset(g, ops).size());
                int p = static_cast<int>(idx.size()) - 1;
                while (p >= 0) {
                    if (++idx[static_cast<std::size_t>(p)] <
                        xs[static_cast<std::size_t>(i + p)].size())
                        break;
                    idx[static_cast<std::size_t>(p)] = 0;
                    --p;
                }
                if (p < 0) break;
            }
            rhs *= BigInt(static_cast<unsigned long>(best));
            table.push_back({{"i", i}, {"j", j}, {"A", best}});
        }
    }

    nlohmann::json w;
    w["group"] = g.name();
    w["abelian"] = g.is_abelian();
    w["total_size"] = total.size();
    w["k"] = k;
    w["A_table"] = table;
    return exact_verdict("nonabelian-interval-bound", std::move(lhs), std::move(rhs),
                         std::move(w), timer);
}

Verdict check_naive_triple(const FiniteGroup& g, const std::vector<ElementId>& s,
                           const std::vector<ElementId>& t, const std::vector<ElementId>& u) {
    Timer timer;
    auto stu = nary_sumset(g, {s, t, u});
    auto st = nary_sumset(g, {s, t});
    auto tu = nary_sumset(g, {t, u});
    auto su = nary_sumset(g, {s, u});
    BigInt lhs = card_pow(stu.size(), 2);
    BigInt rhs = BigInt(static_cast<unsigned long>(st.size())) *
                 BigInt(static_cast<unsigned long>(tu.size())) *
                 BigInt(static_cast<unsigned long>(su.size()));

    nlohmann::json w;
    w["group"] = g.name();
    w["S"] = set_json(s);
    w["T"] = set_json(t);
    w["U"] = set_json(u);
    w["size_STU"] = stu.size();
    w["size_ST"] = st.size();
    w["size_TU"] = tu.size();
    w["size_SU"] = su.size();
    w["note"] = "unconditioned product; false in general";
    return exact_verdict("naive-triple-bound", std::move(lhs), std::move(rhs), std::move(w),
                         timer);
}

Verdict check_ruzsa_triple(const FiniteGroup& g, const std::vector<ElementId>& s,
                           const std::vector<ElementId>& t, const std::vector<ElementId>& u) {
    Timer timer;
    auto stu = nary_sumset(g, {s, t, u});
    auto st = nary_sumset(g, {s, t});
    auto tu = nary_sumset(g, {t, u});
    std::size_t best = 0;
    for (ElementId e : t) best = std::max(best, nary_sumset(g, {s, singleton(e), u}).size());

    BigInt lhs = card_pow(stu.size(), 2);
    BigInt rhs = BigInt(static_cast<unsigned long>(st.size())) *
                 BigInt(static_cast<unsigned long>(tu.size())) *
                 BigInt(static_cast<unsigned long>(best));

    nlohmann::json w;
    w["group"] = g.name();
    w["S"] = set_json(s);
    w["T"] = set_json(t);
    w["U"] = set_json(u);
    w["size_STU"] = stu.size();
    w["size_ST"] = st.size();
    w["size_TU"] = tu.size();
    w["max_S_t_U"] = best;
    return exact_verdict("ruzsa-triple", std::move(lhs), std::move(rhs), std::move(w), timer);
}

Verdict check_ruzsa_quadruple(const FiniteGroup& g, const std::vector<ElementId>& s,
                              const std::vector<ElementId>& t, const std::vector<ElementId>& u,
                              const std::vector<ElementId>& v) {
    Timer timer;
    auto stuv = nary_sumset(g, {s, t, u, v});
    auto stu = nary_sumset(g, {s, t, u});
    auto tuv = nary_sumset(g, {t, u, v});
    std::size_t best_u = 0, best_t = 0;
    for (ElementId e : u) best_u = std::max(best_u, nary_sumset(g, {s, t, singleton(e), v}).size());
    for (ElementId e : t) best_t = std::max(best_t, nary_sumset(g, {s, singleton(e), u, v}).size());

    BigInt lhs = card_pow(stuv.size(), 3);
    BigInt rhs = BigInt(static_cast<unsigned long>(stu.size())) *
                 BigInt(static_cast<unsigned long>(best_u)) *
                 BigInt(static_cast<unsigned long>(best_t)) *
                 BigInt(static_cast<unsigned long>(tuv.size()));

    nlohmann::json w;
    w["group"] = g.name();
    w["S"] = set_json(s);
    w["T"] = set_json(t);
    w["U"] = set_json(u);
    w["V"] = set_json(v);
    w["size_STUV"] = stuv.size();
    w["size_STU"] = stu.size();
    w["size_TUV"] = tuv.size();
    w["max_STuV"] = best_u;
    w["max_StUV"] = best_t;
    w["note"] = "open problem probe; the verdict covers this instance only";
    return exact_verdict("ruzsa-quadruple", std::move(lhs), std::move(rhs), std::move(w), timer);
}

// -- polynomial compound lane ------------------------------------------

namespace {

Verdict polynomial_compound_impl(std::string statement, const FiniteRing& r,
                                 const CompoundSpec& spec, const FractionalCovering& covering,
                                 const std::vector<std::vector<ElementId>>& grounds,
                                 unsigned long long budget, const Timer& timer) {
    if (spec.m < 1 || static_cast<int>(spec.inner.size()) != spec.m)
        fail("BadParameter", "needs one inner polynomial per combination slot");
    if (covering.family.k != spec.m)
        fail("BadParameter", "covering must live on the combination slots");
    auto xground = GroundFamily::of(grounds, r.order());
    const int n = xground.k;
    for (const auto& p : spec.inner)
        if (p.nvars > n) fail("BadArity", "inner polynomial uses too many variables");
    if (spec.whole.nvars > n) fail("BadArity", "outer polynomial uses too many variables");

    const SubsetMask xfull = full_mask(n);
    const SubsetMask yfull = full_mask(spec.m);
    std::set<ElementId> fimg;
    std::vector<std::set<ElementId>> yimg(static_cast<std::size_t>(spec.m));
    std::vector<ElementId> gvals(static_cast<std::size_t>(spec.m));
    for_each_tuple(xground, xfull, budget, [&](const std::vector<ElementId>& x) {
        for (int j = 0; j < spec.m; ++j) {
            gvals[static_cast<std::size_t>(j)] = spec.inner[static_cast<std::size_t>(j)].eval(r, x);
            yimg[static_cast<std::size_t>(j)].insert(gvals[static_cast<std::size_t>(j)]);
        }
        ElementId fv = spec.whole.eval(r, x);
        fimg.insert(fv);
        Value combined = spec.combine(yfull, gvals);
        if (!(combined == Value::ring(fv))) {
            std::string pt;
            for (std::size_t i = 0; i < x.size(); ++i)
                pt += (i ? "," : "") + std::to_string(x[i]);
            fail("IdentityFailsAt", "combination disagrees with the outer polynomial at (" +
                                        pt + ")");
        }
    });

    std::vector<std::vector<ElementId>> ysets;
    for (auto& s : yimg) ysets.emplace_back(s.begin(), s.end());
    auto yground = GroundFamily::of(ysets, r.order());
    auto fbar = PDFunction::custom(yground, spec.combine, spec.label);
    auto pd = is_partition_determined(fbar, covering.family.members, budget);
    if (!pd.ok) fail("NotPD", pd.describe());

    std::map<SubsetMask, std::size_t> sizes;
    for (SubsetMask m : covering.family.members)
        if (!sizes.count(m)) sizes[m] = compound_image(fbar, m, budget).size();

    nlohmann::json w;
    w["ring"] = r.name();
    w["outer"] = spec.whole.str();
    nlohmann::json inners = nlohmann::json::array();
    for (const auto& p : spec.inner) inners.push_back(p.str());
    w["inner"] = inners;
    nlohmann::json ysizes = nlohmann::json::array();
    for (const auto& s : ysets) ysizes.push_back(s.size());
    w["image_sizes"] = ysizes;
    w["covering"] = covering_json(covering);
    return covering_product_verdict(std::move(statement), fimg.size(), covering, sizes,
                                    std::move(w), timer);
}

}  // namespace

Verdict check_polynomial_compound(const FiniteRing& r, const CompoundSpec& spec,
                                  const FractionalCovering& covering,
                                  const std::vector<std::vector<ElementId>>& grounds,
                                  unsigned long long budget) {
    Timer timer;
    return polynomial_compound_impl("polynomial-compound", r, spec, covering, grounds, budget,
                                    timer);
}

Verdict check_factorized(const FiniteRing& r, const std::vector<RingPoly>& factors,
                         const FractionalCovering& covering,
                         const std::vector<std::vector<ElementId>>& grounds,
                         unsigned long long budget) {
    Timer timer;
    if (!r.commutative_mul())
        fail("NotCommutative", "factor bound needs a commutative ring");
    if (factors.empty()) fail("BadParameter", "needs at least one factor");

    CompoundSpec spec;
    spec.m = static_cast<int>(factors.size());
    spec.inner = factors;
    spec.whole = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) spec.whole = spec.whole * factors[i];
    const FiniteRing* rp = &r;
    spec.combine = [rp](SubsetMask mask, const std::vector<ElementId>& y) {
        ElementId acc = y[0];
        for (std::size_t i = 1; i < y.size(); ++i) acc = rp->mul(acc, y[i]);
        (void)mask;
        return Value::ring(acc);
    };
    spec.label = "factor-product";
    return polynomial_compound_impl("factorized-compound", r, spec, covering, grounds, budget,
                                    timer);
}

Verdict check_sum_of_squares(const FiniteRing& r, const std::vector<ElementId>& a,
                             const std::vector<ElementId>& b) {
    Timer timer;
    if (a.empty() || b.empty()) fail("EmptyOperand", "both sets must be nonempty");
    std::set<ElementId> lhs_set, squares, crosses;
    for (ElementId x : a) {
        for (ElementId y : b) {
            lhs_set.insert(r.add(r.mul(x, x), r.mul(y, y)));
            ElementId s = r.add(x, y);
            squares.insert(r.mul(s, s));
            crosses.insert(r.add(r.mul(x, y), r.mul(y, x)));
        }
    }
    BigInt lhs(static_cast<unsigned long>(lhs_set.size()));
    BigInt rhs = BigInt(static_cast<unsigned long>(squares.size())) *
                 BigInt(static_cast<unsigned long>(crosses.size()));

    nlohmann::json w;
    w["ring"] = r.name();
    w["A"] = set_json(a);
    w["B"] = set_json(b);
    w["size_squares_sum"] = lhs_set.size();
    w["size_sum_squared"] = squares.size();
    w["size_cross"] = crosses.size();
    return exact_verdict("sum-of-squares", std::move(lhs), std::move(rhs), std::move(w), timer);
}

// -- structural lane ---------------------------------------------------

Verdict check_section_injectivity(const PDFunction& f, const std::vector<SubsetMask>& family,
                                  unsigned long long budget) {
    Timer timer;
    auto pd = is_partition_determined(f, family, budget);
    if (!pd.ok) fail("NotPD", pd.describe());

    auto reps = lex_min_representatives(f, budget);
    auto tuples = reps.tuples();
    auto verdict = verify_section_injectivity(f, family, tuples);

    auto dist = uniform_on_tuples(f.ground(), tuples);
    bool zeros = true;
    nlohmann::json per_mask = nlohmann::json::array();
    for (SubsetMask s : family) {
        bool z = conditional_entropy_zero_exact(dist, {DerivedVar{nullptr, s}},
                                                {DerivedVar{&f, s}});
        zeros = zeros && z;
        per_mask.push_back({{"set", mask_str(s)}, {"section_determined", z}});
    }

    nlohmann::json w;
    w["function"] = f.label();
    w["representatives"] = tuples.size();
    w["sections"] = per_mask;
    if (!verdict.ok) w["collision"] = verdict.describe();

    int violations = (verdict.ok ? 0 : 1) + (zeros ? 0 : 1);
    return exact_verdict("pd-injectivity", BigInt(violations), BigInt(0), std::move(w), timer);
}

Verdict check_uniform_pushforward(const PDFunction& f, unsigned long long budget) {
    Timer timer;
    auto dist = uniformizing_joint(f, budget);
    auto pf = pushforward(dist, f, full_mask(f.k()));
    const std::size_t n = pf.size();
    Rational expect(1, static_cast<unsigned long>(n));
    int off = 0;
    for (const auto& [y, p] : pf)
        if (p != expect) ++off;

    nlohmann::json w;
    w["function"] = f.label();
    w["image_size"] = n;
    w["H_bits"] = entropy_of_pmf(pf);
    w["log2_image"] = log2_rational(Rational(static_cast<unsigned long>(n)));
    return exact_verdict("uniform-pushforward", BigInt(off), BigInt(0), std::move(w), timer);
}

}  // namespace partdet
