#include "partdet/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

#include "partdet/entropy.hpp"
#include "partdet/error.hpp"
#include "partdet/hypergraph.hpp"
#include "partdet/pdfunc.hpp"

namespace partdet {

std::vector<FiniteGroup> group_catalog(int max_order) {
    if (max_order < 1 || max_order > 16) fail("BadParameter", "catalog covers orders 1..16");
    std::vector<FiniteGroup> all;
    for (int n = 1; n <= max_order; ++n) all.push_back(FiniteGroup::cyclic(n));
    for (int n = 3; 2 * n <= max_order; ++n) all.push_back(FiniteGroup::dihedral(n));
    if (max_order >= 8) all.push_back(FiniteGroup::quaternion());
    for (int a = 2; a * a <= max_order; ++a)
        for (int b = a; a * b <= max_order; ++b)
            all.push_back(
                FiniteGroup::direct_product(FiniteGroup::cyclic(a), FiniteGroup::cyclic(b)));

    std::sort(all.begin(), all.end(), [](const FiniteGroup& x, const FiniteGroup& y) {
        if (x.order() != y.order()) return x.order() < y.order();
        return x.name() < y.name();
    });
    std::vector<FiniteGroup> out;
    std::set<std::string> seen;
    for (auto& g : all)
        if (seen.insert(g.name()).second) out.push_back(std::move(g));
    return out;
}

FiniteGroup group_by_name(const std::string& name, int max_order) {
    for (auto& g : group_catalog(max_order))
        if (g.name() == name) return g;
    fail("UnknownGroup", "no catalog group named " + name);
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) { return n ? next() % n : 0; }

nlohmann::json SearchScenario::to_json() const {
    nlohmann::json j;
    j["name"] = name;
    j["statement"] = statement;
    j["min_order"] = min_order;
    j["max_order"] = max_order;
    j["abelian"] = abelian ? (*abelian ? "true" : "false") : "any";
    nlohmann::json names = nlohmann::json::array();
    for (const auto& g : structures) names.push_back(g.name());
    j["structures"] = names;
    j["max_subset_size"] = max_subset_size;
    j["set_count"] = set_count;
    j["trials"] = trials;
    j["exhaustive"] = exhaustive;
    j["seed"] = seed;
    j["threads"] = threads;
    j["budget"] = budget;
    return j;
}

nlohmann::json SearchReport::to_json() const {
    nlohmann::json j;
    j["scenario"] = scenario;
    j["instances"] = instances;
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : violations)
        vs.push_back({{"trial", v.trial},
                      {"instance", v.instance},
                      {"verdict", v.verdict.to_json()},
                      {"reverified", v.reverified}});
    j["violations"] = vs;
    j["violation_count"] = violations.size();
    if (has_min) {
        j["min_margin_bits"] = min_margin_bits;
        j["min_margin_instance"] = min_margin_instance;
    }
    j["budget_exhausted"] = budget_exhausted;
    j["runtime_ms"] = runtime_ms;
    return j;
}

nlohmann::json SearchReport::stable(nlohmann::json report) {
    if (report.is_object()) {
        report.erase("runtime_ms");
        for (auto& [key, value] : report.items()) value = stable(std::move(value));
    } else if (report.is_array()) {
        for (auto& value : report) value = stable(std::move(value));
    }
    return report;
}

namespace {

enum class Space { Box, Triples, Quadruples, Intervals, Coverings, FourCoordinates };

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    SplitMix64 r(seed + 0x9e3779b97f4a7c15ull * (trial + 1));
    r.next();
    return r.next();
}

std::vector<ElementId> sample_subset(SplitMix64& rng, int n, int max_size) {
    std::vector<ElementId> s;
    for (int attempt = 0; attempt < 64; ++attempt) {
        s.clear();
        for (int e = 0; e < n; ++e)
            if (rng.coin()) s.push_back(e);
        if (!s.empty()) break;
    }
    if (s.empty()) s.push_back(static_cast<ElementId>(rng.below(static_cast<std::uint64_t>(n))));
    if (static_cast<int>(s.size()) > max_size) {
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(s.size() - i));
            std::swap(s[i], s[j]);
            if (static_cast<int>(i + 1) == max_size) break;
        }
        s.resize(static_cast<std::size_t>(max_size));
        std::sort(s.begin(), s.end());
    }
    return s;
}

nlohmann::json sets_json(const std::vector<std::vector<ElementId>>& sets) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : sets) out.push_back(s);
    return out;
}

struct RunContext {
    Space space = Space::Box;
    std::vector<FiniteGroup> groups;
    std::vector<std::vector<ElementId>> box_points;          // all points of {0,1}^k
    std::vector<std::pair<SubsetMask, SubsetMask>> pairs;    // incomparable nonempty masks
    std::vector<std::vector<ElementId>> subsets;             // exhaustive subset pool
    int sets_per_instance = 0;
    unsigned long long total = 0;
    bool capped = false;
};

struct TrialResult {
    bool violated = false;
    bool reverified = false;
    nlohmann::json instance;
    Verdict verdict;
    double margin = 0.0;
};

// Rebuilding from the catalog re-derives the multiplication table from
// scratch, so re-verification does not trust the searched object.
FiniteGroup rebuild(const FiniteGroup& g) {
    try {
        return group_by_name(g.name());
    } catch (const Error&) {
        return g;
    }
}

std::size_t projection_size(const std::vector<std::vector<ElementId>>& pts, SubsetMask m) {
    if (m == 0) return 1;
    std::set<std::vector<ElementId>> proj;
    for (const auto& pt : pts) {
        std::vector<ElementId> q;
        for (int i : mask_indices(m)) q.push_back(pt[static_cast<std::size_t>(i - 1)]);
        proj.insert(std::move(q));
    }
    return proj.size();
}

TrialResult box_trial(const SearchScenario& sc, const RunContext& ctx, std::uint64_t trial) {
    const int k = sc.set_count;
    std::vector<std::vector<ElementId>> pts;
    if (sc.exhaustive) {
        std::uint64_t bits = trial + 1;
        for (std::size_t p = 0; p < ctx.box_points.size(); ++p)
            if ((bits >> p) & 1) pts.push_back(ctx.box_points[p]);
    } else {
        SplitMix64 rng(trial_seed(sc.seed, trial));
        for (int attempt = 0; attempt < 64 && pts.empty(); ++attempt)
            for (const auto& p : ctx.box_points)
                if (rng.coin()) pts.push_back(p);
        if (pts.empty()) pts.push_back(ctx.box_points[rng.below(ctx.box_points.size())]);
    }

    TrialResult r;
    r.margin = 1e300;
    SubsetMask vs = 0, vt = 0;
    for (auto [s, t] : ctx.pairs) {
        std::size_t u = projection_size(pts, s | t);
        std::size_t i = projection_size(pts, s & t);
        std::size_t a = projection_size(pts, s);
        std::size_t b = projection_size(pts, t);
        double margin = std::log2(static_cast<double>(a) * static_cast<double>(b)) -
                        std::log2(static_cast<double>(u) * static_cast<double>(i));
        r.margin = std::min(r.margin, margin);
        if (u * i > a * b && vs == 0) {
            vs = s;
            vt = t;
        }
    }
    if (vs != 0) {
        // independent pass: the probe verifier recomputes through the
        // function pipeline rather than raw point sets
        auto ground =
            GroundFamily::of(std::vector<std::vector<ElementId>>(
                                 static_cast<std::size_t>(k), std::vector<ElementId>{0, 1}),
                             2);
        auto f = PDFunction::projection(ground);
        std::set<Value> ys;
        for (const auto& p : pts) ys.insert(f.eval(full_mask(k), p));
        Verdict v = sumset_log_submodularity_probe(f, ys, vs, vt);
        v.statement = sc.statement;
        v.seed = sc.seed;
        if (v.status != Status::Violated)
            fail("ReverificationFailed", "probe disagrees with the raw projection pass");
        r.violated = true;
        r.reverified = true;
        r.verdict = std::move(v);
        r.instance = {{"points", pts}, {"s", mask_str(vs)}, {"t", mask_str(vt)}};
    } else {
        r.instance = {{"points", pts}};
    }
    return r;
}

std::vector<std::vector<ElementId>> instance_sets(const SearchScenario& sc,
                                                  const RunContext& ctx, std::uint64_t trial,
                                                  const FiniteGroup& g, int count) {
    std::vector<std::vector<ElementId>> sets;
    if (sc.exhaustive) {
        std::uint64_t idx = trial;
        for (int i = 0; i < count; ++i) {
            sets.push_back(ctx.subsets[idx % ctx.subsets.size()]);
            idx /= ctx.subsets.size();
        }
    } else {
        SplitMix64 rng(trial_seed(sc.seed, trial));
        for (int i = 0; i < count; ++i)
            sets.push_back(sample_subset(rng, g.order(), sc.max_subset_size));
    }
    return sets;
}

TrialResult triple_trial(const SearchScenario& sc, const RunContext& ctx, std::uint64_t trial) {
    const FiniteGroup& g = ctx.groups[trial % ctx.groups.size()];
    auto sets = instance_sets(sc, ctx, trial, g, 3);
    const auto &s = sets[0], &t = sets[1], &u = sets[2];

    TrialResult r;
    r.instance = {{"group", g.name()}, {"S", s}, {"T", t}, {"U", u}};

    if (sc.statement == "naive-triple-bound") {
        // raw pass: direct product-set accumulation, no library sumsets
        std::set<ElementId> stu, st, tu, su;
        for (ElementId a : s)
            for (ElementId b : t) {
                st.insert(g.op(a, b));
                for (ElementId c : u) stu.insert(g.op(g.op(a, b), c));
            }
        for (ElementId b : t)
            for (ElementId c : u) tu.insert(g.op(b, c));
        for (ElementId a : s)
            for (ElementId c : u) su.insert(g.op(a, c));
        double lhs = 2 * std::log2(static_cast<double>(stu.size()));
        double rhs = std::log2(static_cast<double>(st.size())) +
                     std::log2(static_cast<double>(tu.size())) +
                     std::log2(static_cast<double>(su.size()));
        r.margin = rhs - lhs;
        if (stu.size() * stu.size() > st.size() * tu.size() * su.size()) {
            Verdict v = check_naive_triple(rebuild(g), s, t, u);
            v.seed = sc.seed;
            if (v.status != Status::Violated)
                fail("ReverificationFailed", "verifier disagrees with the raw triple pass");
            r.violated = true;
            r.reverified = true;
            r.verdict = std::move(v);
        }
        return r;
    }

    Verdict v = check_ruzsa_triple(g, s, t, u);
    v.seed = sc.seed;
    r.margin = v.margin;
    if (v.status == Status::Violated) {
        Verdict again = check_ruzsa_triple(rebuild(g), s, t, u);
        r.violated = true;
        r.reverified = again.status == Status::Violated;
        if (!r.reverified) fail("ReverificationFailed", "triple bound violation did not replay");
        r.verdict = std::move(v);
    }
    return r;
}

TrialResult quadruple_trial(const SearchScenario& sc, const RunContext& ctx,
                            std::uint64_t trial) {
    const FiniteGroup& g = ctx.groups[trial % ctx.groups.size()];
    auto sets = instance_sets(sc, ctx, trial, g, 4);
    TrialResult r;
    r.instance = {{"group", g.name()},
                  {"S", sets[0]},
                  {"T", sets[1]},
                  {"U", sets[2]},
                  {"V", sets[3]}};
    Verdict v = check_ruzsa_quadruple(g, sets[0], sets[1], sets[2], sets[3]);
    v.seed = sc.seed;
    r.margin = v.margin;
    if (v.status == Status::Violated) {
        Verdict again = check_ruzsa_quadruple(rebuild(g), sets[0], sets[1], sets[2], sets[3]);
        r.violated = true;
        r.reverified = again.status == Status::Violated;
        if (!r.reverified) fail("ReverificationFailed", "quadruple violation did not replay");
        r.verdict = std::move(v);
    }
    return r;
}

TrialResult interval_trial(const SearchScenario& sc, const RunContext& ctx,
                           std::uint64_t trial) {
    const FiniteGroup& g = ctx.groups[trial % ctx.groups.size()];
    auto sets = instance_sets(sc, ctx, trial, g, ctx.sets_per_instance);
    TrialResult r;
    r.instance = {{"group", g.name()}, {"sets", sets_json(sets)}};
    Verdict v = check_nonabelian(g, sets, sc.budget);
    v.seed = sc.seed;
    r.margin = v.margin;
    if (v.status == Status::Violated) {
        Verdict again = check_nonabelian(rebuild(g), sets, sc.budget);
        r.violated = true;
        r.reverified = again.status == Status::Violated;
        if (!r.reverified) fail("ReverificationFailed", "interval violation did not replay");
        r.verdict = std::move(v);
    }
    return r;
}

FractionalCovering sample_covering(SplitMix64& rng, int k) {
    switch (rng.below(5)) {
        case 0: return regular_covering(SubsetFamily::singletons(k));
        case 1:
            if (k >= 2) return regular_covering(SubsetFamily::all_subsets_of_size(k, 2));
            return regular_covering(SubsetFamily::singletons(k));
        case 2:
            if (k >= 2) return regular_covering(SubsetFamily::leave_one_out(k));
            return regular_covering(SubsetFamily::singletons(k));
        default: {
            const SubsetMask full = full_mask(k);
            std::set<SubsetMask> members;
            int count = 2 + static_cast<int>(rng.below(3));
            SubsetMask covered = 0;
            for (int i = 0; i < count; ++i) {
                SubsetMask m = static_cast<SubsetMask>(rng.below(full)) + 1;
                members.insert(m);
                covered |= m;
            }
            if (covered != full) members.insert(full);
            auto fam = SubsetFamily::of(k, {members.begin(), members.end()});
            return rng.coin() ? degree_covering(fam) : min_covering_lp(fam);
        }
    }
}

TrialResult covering_trial(const SearchScenario& sc, const RunContext& ctx,
                           std::uint64_t trial) {
    const FiniteGroup& g = ctx.groups[trial % ctx.groups.size()];
    const int k = ctx.sets_per_instance;
    SplitMix64 rng(trial_seed(sc.seed, trial));
    std::vector<std::vector<ElementId>> grounds;
    for (int i = 0; i < k; ++i) grounds.push_back(sample_subset(rng, g.order(), sc.max_subset_size));
    auto covering = sample_covering(rng, k);

    nlohmann::json fam = nlohmann::json::array(), w = nlohmann::json::array();
    for (std::size_t i = 0; i < covering.family.members.size(); ++i) {
        fam.push_back(mask_str(covering.family.members[i]));
        w.push_back(rational_str(covering.weights[i]));
    }
    TrialResult r;
    r.instance = {{"group", g.name()}, {"grounds", sets_json(grounds)}, {"family", fam},
                  {"weights", w}};

    auto make = [&](const FiniteGroup& grp) {
        auto ground = GroundFamily::of(grounds, grp.order());
        return PDFunction::abelian_linear(grp, ground,
                                          std::vector<long long>(static_cast<std::size_t>(k), 1));
    };
    Verdict v = check_compound_full(make(g), covering, sc.budget);
    v.seed = sc.seed;
    r.margin = v.margin;
    if (v.status == Status::Violated) {
        FiniteGroup fresh = rebuild(g);
        Verdict again = check_compound_full(make(fresh), covering, sc.budget);
        r.violated = true;
        r.reverified = again.status == Status::Violated;
        if (!r.reverified) fail("ReverificationFailed", "covering violation did not replay");
        r.verdict = std::move(v);
    }
    return r;
}

TrialResult four_coordinates_trial(const SearchScenario& sc, std::uint64_t trial) {
    int m;
    if (sc.exhaustive) {
        m = static_cast<int>(trial) + 1;
    } else {
        SplitMix64 rng(trial_seed(sc.seed, trial));
        m = 1 + static_cast<int>(rng.below(16));
    }
    TrialResult r;
    r.instance = {{"support_points", m}};
    double closed = m >= 2 ? -std::log2(static_cast<double>(m)) / 3.0 : 0.0;
    r.margin = closed;
    if (m >= 2) {
        Verdict v = check_entropy_counterexample_4sets(m);
        v.seed = sc.seed;
        r.violated = true;
        r.reverified =
            v.status == Status::Violated && std::abs(v.margin - closed) <= 1e-9;
        if (!r.reverified)
            fail("ReverificationFailed", "entropy construction disagrees with the closed form");
        r.verdict = std::move(v);
    }
    return r;
}

RunContext build_context(const SearchScenario& sc) {
    RunContext ctx;
    if (sc.statement == "projection-submodularity" ||
        sc.statement == "sumset-log-submodularity") {
        ctx.space = Space::Box;
    } else if (sc.statement == "naive-triple-bound" || sc.statement == "ruzsa-triple") {
        ctx.space = Space::Triples;
        ctx.sets_per_instance = 3;
    } else if (sc.statement == "ruzsa-quadruple") {
        ctx.space = Space::Quadruples;
        ctx.sets_per_instance = 4;
    } else if (sc.statement == "nonabelian-interval-bound") {
        ctx.space = Space::Intervals;
        ctx.sets_per_instance = sc.set_count;
    } else if (sc.statement == "compound-covering-bound") {
        ctx.space = Space::Coverings;
        ctx.sets_per_instance = sc.set_count;
    } else if (sc.statement == "entropy-4sets") {
        ctx.space = Space::FourCoordinates;
    } else {
        fail("UnknownStatement", "no search space for statement " + sc.statement);
    }

    if (ctx.space == Space::Box) {
        const int k = sc.set_count;
        if (k < 2 || k > 4) fail("BadScenario", "box searches support 2 to 4 coordinates");
        for (SubsetMask p = 0; p < (SubsetMask{1} << k); ++p) {
            std::vector<ElementId> pt(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) pt[static_cast<std::size_t>(i)] = (p >> i) & 1;
            ctx.box_points.push_back(std::move(pt));
        }
        const SubsetMask full = full_mask(k);
        for (SubsetMask s = 1; s <= full; ++s)
            for (SubsetMask t = s + 1; t <= full; ++t)
                if ((s & ~t) && (t & ~s)) ctx.pairs.emplace_back(s, t);
        ctx.total = sc.exhaustive ? (1ull << ctx.box_points.size()) - 1 : sc.trials;
    } else if (ctx.space == Space::FourCoordinates) {
        ctx.total = sc.trials;
    } else {
        if (!sc.structures.empty()) {
            ctx.groups = sc.structures;
        } else {
            for (auto& g : group_catalog(sc.max_order)) {
                if (g.order() < sc.min_order) continue;
                if (sc.abelian && g.is_abelian() != *sc.abelian) continue;
                ctx.groups.push_back(std::move(g));
            }
        }
        if (ctx.space == Space::Coverings)
            for (const auto& g : ctx.groups)
                if (!g.is_abelian())
                    fail("BadScenario", "covering searches need abelian structures, got " +
                                            g.name());
        if (ctx.groups.empty()) fail("BadScenario", "no structures match the filter");

        if (sc.exhaustive) {
            if (ctx.space == Space::Coverings)
                fail("BadScenario", "exhaustive mode unsupported for covering searches");
            if (ctx.groups.size() != 1)
                fail("BadScenario", "exhaustive subset searches need exactly one structure");
            const int n = ctx.groups[0].order();
            for (SubsetMask m = 1; m < (SubsetMask{1} << n); ++m) {
                if (mask_size(m) > sc.max_subset_size) continue;
                std::vector<ElementId> s;
                for (int e = 0; e < n; ++e)
                    if (m & (SubsetMask{1} << e)) s.push_back(e);
                ctx.subsets.push_back(std::move(s));
            }
            unsigned long long total = 1;
            for (int i = 0; i < ctx.sets_per_instance; ++i) {
                if (total > sc.budget / ctx.subsets.size() + 1) {
                    total = sc.budget + 1;
                    break;
                }
                total *= ctx.subsets.size();
            }
            ctx.total = total;
        } else {
            ctx.total = sc.trials;
        }
    }
    if (ctx.total > sc.budget) {
        ctx.total = sc.budget;
        ctx.capped = true;
    }
    return ctx;
}

}  // namespace

SearchReport run_search(const SearchScenario& sc) {
    auto t0 = std::chrono::steady_clock::now();
    RunContext ctx = build_context(sc);

    struct WorkerState {
        std::vector<SearchViolation> violations;
        bool has_min = false;
        double min_margin = 0.0;
        std::uint64_t min_trial = 0;
        nlohmann::json min_instance;
        unsigned long long count = 0;
        std::exception_ptr error;
        std::uint64_t error_trial = 0;
    };

    int threads = std::max(1, sc.threads);
    threads = static_cast<int>(
        std::min<unsigned long long>(static_cast<unsigned long long>(threads),
                                     std::max<unsigned long long>(1, ctx.total)));
    std::vector<WorkerState> states(static_cast<std::size_t>(threads));

    auto work = [&](int w) {
        WorkerState& st = states[static_cast<std::size_t>(w)];
        for (std::uint64_t trial = static_cast<std::uint64_t>(w); trial < ctx.total;
             trial += static_cast<std::uint64_t>(threads)) {
            try {
                TrialResult r;
                switch (ctx.space) {
                    case Space::Box: r = box_trial(sc, ctx, trial); break;
                    case Space::Triples: r = triple_trial(sc, ctx, trial); break;
                    case Space::Quadruples: r = quadruple_trial(sc, ctx, trial); break;
                    case Space::Intervals: r = interval_trial(sc, ctx, trial); break;
                    case Space::Coverings: r = covering_trial(sc, ctx, trial); break;
                    case Space::FourCoordinates: r = four_coordinates_trial(sc, trial); break;
                }
                ++st.count;
                if (!st.has_min || r.margin < st.min_margin ||
                    (r.margin == st.min_margin && trial < st.min_trial)) {
                    st.has_min = true;
                    st.min_margin = r.margin;
                    st.min_trial = trial;
                    st.min_instance = r.instance;
                }
                if (r.violated)
                    st.violations.push_back(
                        {trial, std::move(r.instance), std::move(r.verdict), r.reverified});
            } catch (...) {
                if (!st.error || trial < st.error_trial) {
                    st.error = std::current_exception();
                    st.error_trial = trial;
                }
                return;
            }
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    std::exception_ptr error;
    std::uint64_t error_trial = 0;
    for (auto& st : states)
        if (st.error && (!error || st.error_trial < error_trial)) {
            error = st.error;
            error_trial = st.error_trial;
        }
    if (error) std::rethrow_exception(error);

    SearchReport report;
    report.scenario = sc.to_json();
    report.budget_exhausted = ctx.capped;
    std::uint64_t min_trial = 0;
    for (auto& st : states) {
        report.instances += st.count;
        for (auto& v : st.violations) report.violations.push_back(std::move(v));
        if (st.has_min &&
            (!report.has_min || st.min_margin < report.min_margin_bits ||
             (st.min_margin == report.min_margin_bits && st.min_trial < min_trial))) {
            report.has_min = true;
            report.min_margin_bits = st.min_margin;
            min_trial = st.min_trial;
            report.min_margin_instance = {{"trial", st.min_trial},
                                          {"margin_bits", st.min_margin},
                                          {"instance", st.min_instance}};
        }
    }
    std::sort(report.violations.begin(), report.violations.end(),
              [](const SearchViolation& a, const SearchViolation& b) { return a.trial < b.trial; });
    report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return report;
}

std::vector<SearchScenario> default_scenarios() {
    std::vector<SearchScenario> out;

    SearchScenario projection;
    projection.name = "projection-box";
    projection.statement = "projection-submodularity";
    projection.set_count = 3;
    projection.exhaustive = true;
    projection.seed = 1;
    out.push_back(projection);

    SearchScenario triple;
    triple.name = "dihedral-triple";
    triple.statement = "naive-triple-bound";
    triple.structures = {FiniteGroup::dihedral(3)};
    triple.max_subset_size = 2;
    triple.exhaustive = true;
    triple.seed = 1;
    out.push_back(triple);

    SearchScenario entropy4;
    entropy4.name = "entropy-4sets-sweep";
    entropy4.statement = "entropy-4sets";
    entropy4.trials = 8;
    entropy4.exhaustive = true;
    entropy4.seed = 1;
    out.push_back(entropy4);

    SearchScenario logsub;
    logsub.name = "log-submodularity-box";
    logsub.statement = "sumset-log-submodularity";
    logsub.set_count = 3;
    logsub.exhaustive = true;
    logsub.seed = 1;
    out.push_back(logsub);

    SearchScenario covering;
    covering.name = "covering-regression";
    covering.statement = "compound-covering-bound";
    covering.abelian = true;
    covering.max_order = 16;
    covering.set_count = 3;
    covering.max_subset_size = 3;
    covering.trials = 10000;
    covering.seed = 7;
    out.push_back(covering);

    SearchScenario quadruple;
    quadruple.name = "quadruple-probe";
    quadruple.statement = "ruzsa-quadruple";
    quadruple.abelian = false;
    quadruple.min_order = 8;
    quadruple.max_order = 10;
    quadruple.max_subset_size = 4;
    quadruple.trials = 10000;
    quadruple.seed = 42;
    out.push_back(quadruple);

    return out;
}

}  // namespace partdet
