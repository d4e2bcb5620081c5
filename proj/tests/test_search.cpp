#include <doctest.h>

#include <algorithm>
#include <set>

#include "partdet/error.hpp"
#include "partdet/search.hpp"

using namespace partdet;

namespace {

std::string thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

std::vector<std::string> catalog_names(int max_order) {
    std::vector<std::string> names;
    for (const auto& g : group_catalog(max_order)) names.push_back(g.name());
    return names;
}

}  // namespace

TEST_CASE("group catalog contents") {
    auto names = catalog_names(6);
    std::vector<std::string> expected = {"Z1", "Z2",    "Z3", "Z2xZ2", "Z4",
                                         "Z5", "D3",    "Z2xZ3", "Z6"};
    CHECK(names == expected);

    CHECK(catalog_names(1) == std::vector<std::string>{"Z1"});

    auto eight = catalog_names(8);
    CHECK(std::count(eight.begin(), eight.end(), "Q8") == 1);
    CHECK(std::count(eight.begin(), eight.end(), "D4") == 1);
    CHECK(std::count(eight.begin(), eight.end(), "Z2xZ4") == 1);
    CHECK(std::count(eight.begin(), eight.end(), "Z2xZ2xZ2") == 0);

    auto full = group_catalog(16);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < full.size(); ++i) {
        CHECK(seen.insert(full[i].name()).second);
        if (i > 0) {
            bool ordered = full[i - 1].order() < full[i].order() ||
                           (full[i - 1].order() == full[i].order() &&
                            full[i - 1].name() < full[i].name());
            CHECK(ordered);
        }
        CHECK(full[i].order() <= 16);
    }
    CHECK(thrown_code([] { group_catalog(0); }) == "BadParameter");
    CHECK(thrown_code([] { group_catalog(17); }) == "BadParameter");

    CHECK(group_by_name("D4").order() == 8);
    CHECK_FALSE(group_by_name("Q8").is_abelian());
    CHECK(group_by_name("Z2xZ3").is_abelian());
    CHECK(thrown_code([] { group_by_name("E8"); }) == "UnknownGroup");
    CHECK(thrown_code([] { group_by_name("D4", 6); }) == "UnknownGroup");
}

TEST_CASE("splitmix stream is deterministic") {
    SplitMix64 a(12345), b(12345), c(54321);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
        std::uint64_t x = a.next();
        all_equal = all_equal && x == b.next();
        any_diff = any_diff || x != c.next();
    }
    CHECK(all_equal);
    CHECK(any_diff);
    SplitMix64 d(7);
    for (int i = 0; i < 100; ++i) CHECK(d.below(13) < 13);
    CHECK(SplitMix64(9).below(1) == 0);
}

TEST_CASE("exhaustive projection search over the binary box") {
    SearchScenario sc;
    sc.name = "projection-box";
    sc.statement = "projection-submodularity";
    sc.set_count = 3;
    sc.exhaustive = true;
    sc.seed = 1;

    SearchReport report = run_search(sc);
    CHECK(report.instances == 255);
    CHECK_FALSE(report.budget_exhausted);
    CHECK(report.violations.size() > 0);
    CHECK(report.has_min);
    CHECK(report.min_margin_bits < 0.0);

    // every violation re-verified, and none involves fewer than five points
    std::size_t min_points = 100;
    bool pinned_found = false;
    const nlohmann::json pinned = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}};
    for (const auto& v : report.violations) {
        CHECK(v.reverified);
        CHECK(v.verdict.status == Status::Violated);
        CHECK(v.verdict.statement == "projection-submodularity");
        const auto& pts = v.instance.at("points");
        min_points = std::min(min_points, pts.size());
        if (pts == pinned) pinned_found = true;
    }
    CHECK(min_points == 5);
    CHECK(pinned_found);
}

TEST_CASE("log submodularity probe shares the box space") {
    SearchScenario sc;
    sc.statement = "sumset-log-submodularity";
    sc.set_count = 3;
    sc.exhaustive = true;
    sc.seed = 1;
    SearchReport report = run_search(sc);
    CHECK(report.violations.size() > 0);
    for (const auto& v : report.violations) {
        CHECK(v.reverified);
        CHECK(v.verdict.statement == "sumset-log-submodularity");
    }
}

TEST_CASE("exhaustive dihedral triple search finds the known violation") {
    SearchScenario sc;
    sc.name = "dihedral-triple";
    sc.statement = "naive-triple-bound";
    sc.structures = {FiniteGroup::dihedral(3)};
    sc.max_subset_size = 2;
    sc.exhaustive = true;
    sc.seed = 1;

    SearchReport report = run_search(sc);
    // 6 singletons + 15 pairs, three slots
    CHECK(report.instances == 21ull * 21ull * 21ull);
    CHECK(report.violations.size() > 0);

    bool example_found = false;
    for (const auto& v : report.violations) {
        CHECK(v.reverified);
        CHECK(v.verdict.status == Status::Violated);
        if (v.instance.at("S") == nlohmann::json{0, 3} &&
            v.instance.at("T") == nlohmann::json{1} &&
            v.instance.at("U") == nlohmann::json{0, 3})
            example_found = true;
    }
    CHECK(example_found);
}

TEST_CASE("search reports are byte stable across repeats and thread counts") {
    SearchScenario sc;
    sc.statement = "naive-triple-bound";
    sc.abelian = false;
    sc.max_order = 8;
    sc.max_subset_size = 3;
    sc.trials = 200;
    sc.seed = 7;

    SearchReport a = run_search(sc);
    SearchReport b = run_search(sc);
    CHECK(SearchReport::stable(a.to_json()).dump() == SearchReport::stable(b.to_json()).dump());

    SearchScenario threaded = sc;
    threaded.threads = 4;
    SearchReport c = run_search(threaded);
    auto sa = SearchReport::stable(a.to_json());
    auto sc4 = SearchReport::stable(c.to_json());
    sa.erase("scenario");
    sc4.erase("scenario");
    CHECK(sa.dump() == sc4.dump());
    for (const auto& v : c.violations) CHECK(v.reverified);
}

TEST_CASE("abelian triple and covering searches stay clean") {
    SearchScenario triple;
    triple.statement = "ruzsa-triple";
    triple.abelian = true;
    triple.max_order = 8;
    triple.max_subset_size = 3;
    triple.trials = 200;
    triple.seed = 11;
    SearchReport tr = run_search(triple);
    CHECK(tr.instances == 200);
    CHECK(tr.violations.empty());
    CHECK(tr.has_min);
    CHECK(tr.min_margin_bits >= 0.0);

    SearchScenario covering;
    covering.statement = "compound-covering-bound";
    covering.abelian = true;
    covering.max_order = 8;
    covering.set_count = 3;
    covering.max_subset_size = 3;
    covering.trials = 300;
    covering.seed = 7;
    SearchReport cv = run_search(covering);
    CHECK(cv.instances == 300);
    CHECK(cv.violations.empty());
    CHECK(cv.min_margin_bits >= 0.0);
}

TEST_CASE("four coordinate entropy sweep recovers the counterexample family") {
    SearchScenario sc;
    sc.statement = "entropy-4sets";
    sc.exhaustive = true;
    sc.trials = 8;
    sc.seed = 1;
    SearchReport report = run_search(sc);
    CHECK(report.instances == 8);
    CHECK(report.violations.size() == 7);  // every m >= 2
    for (const auto& v : report.violations) {
        CHECK(v.reverified);
        int m = v.instance.at("support_points").get<int>();
        CHECK(m >= 2);
        CHECK(v.verdict.margin ==
              doctest::Approx(-std::log2(static_cast<double>(m)) / 3.0).epsilon(1e-9));
    }
    CHECK(report.min_margin_bits == doctest::Approx(-1.0));  // m = 8
}

TEST_CASE("interval and quadruple searches run verifier driven") {
    SearchScenario interval;
    interval.statement = "nonabelian-interval-bound";
    interval.structures = {FiniteGroup::dihedral(4)};
    interval.set_count = 3;
    interval.max_subset_size = 3;
    interval.trials = 40;
    interval.seed = 3;
    SearchReport ir = run_search(interval);
    CHECK(ir.instances == 40);
    CHECK(ir.violations.empty());

    SearchScenario quad;
    quad.statement = "ruzsa-quadruple";
    quad.abelian = false;
    quad.min_order = 8;
    quad.max_order = 10;
    quad.max_subset_size = 3;
    quad.trials = 40;
    quad.seed = 5;
    SearchReport qr = run_search(quad);
    CHECK(qr.instances == 40);
    CHECK(qr.has_min);
    for (const auto& v : qr.violations) CHECK(v.reverified);
    SearchReport qr2 = run_search(quad);
    CHECK(SearchReport::stable(qr.to_json()).dump() ==
          SearchReport::stable(qr2.to_json()).dump());
}

TEST_CASE("budget caps produce flagged partial reports") {
    SearchScenario sc;
    sc.statement = "projection-submodularity";
    sc.set_count = 3;
    sc.exhaustive = true;
    sc.seed = 1;
    sc.budget = 50;
    SearchReport report = run_search(sc);
    CHECK(report.budget_exhausted);
    CHECK(report.instances == 50);

    SearchScenario triple;
    triple.statement = "naive-triple-bound";
    triple.structures = {FiniteGroup::dihedral(3)};
    triple.max_subset_size = 2;
    triple.exhaustive = true;
    triple.budget = 100;
    SearchReport tr = run_search(triple);
    CHECK(tr.budget_exhausted);
    CHECK(tr.instances == 100);
}

TEST_CASE("scenario validation failures") {
    SearchScenario sc;
    sc.statement = "entropy-submodularity";
    CHECK(thrown_code([&] { run_search(sc); }) == "UnknownStatement");

    SearchScenario covering;
    covering.statement = "compound-covering-bound";
    covering.exhaustive = true;
    covering.abelian = true;
    CHECK(thrown_code([&] { run_search(covering); }) == "BadScenario");

    SearchScenario nonab;
    nonab.statement = "compound-covering-bound";
    nonab.structures = {FiniteGroup::dihedral(3)};
    CHECK(thrown_code([&] { run_search(nonab); }) == "BadScenario");

    SearchScenario multi;
    multi.statement = "naive-triple-bound";
    multi.structures = {FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)};
    multi.exhaustive = true;
    CHECK(thrown_code([&] { run_search(multi); }) == "BadScenario");

    SearchScenario empty;
    empty.statement = "ruzsa-triple";
    empty.abelian = false;
    empty.max_order = 4;
    CHECK(thrown_code([&] { run_search(empty); }) == "BadScenario");

    SearchScenario wide;
    wide.statement = "projection-submodularity";
    wide.set_count = 5;
    CHECK(thrown_code([&] { run_search(wide); }) == "BadScenario");
}

TEST_CASE("default scenarios cover reproductions and regressions") {
    auto suite = default_scenarios();
    CHECK(suite.size() == 6);
    std::set<std::string> names;
    for (const auto& sc : suite) {
        CHECK(names.insert(sc.name).second);
        CHECK_FALSE(sc.statement.empty());
    }
    CHECK(suite[0].statement == "projection-submodularity");
    CHECK(suite[1].structures.size() == 1);
    CHECK(suite[1].structures[0].name() == "D3");
    CHECK(suite[4].abelian.has_value());
    CHECK(*suite[4].abelian);
    CHECK_FALSE(*suite[5].abelian);
}
