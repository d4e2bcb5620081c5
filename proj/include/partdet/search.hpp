#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "partdet/algebra.hpp"
#include "partdet/inequalities.hpp"

namespace partdet {

/// Small named groups up to the given order: cyclic, dihedral, quaternion,
/// and products of two cyclics. Deduplicated by name, sorted by
/// (order, name). Isomorphic groups under different names both appear.
std::vector<FiniteGroup> group_catalog(int max_order = 16);

/// Catalog lookup by display name ("Z6", "D4", "Q8", "Z2xZ3", ..).
/// UnknownGroup if absent.
FiniteGroup group_by_name(const std::string& name, int max_order = 16);

/// Deterministic 64-bit stream; the n-th draw depends only on the seed.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}
    std::uint64_t next();
    std::uint64_t below(std::uint64_t n);  // uniform-enough draw in [0, n)
    bool coin() { return next() & 1; }
};

/// One search job: a statement id, an instance space, and budgets. The
/// instance space is either a group catalog filter plus subset-size bounds
/// or an explicit structure list; box statements ignore the groups.
struct SearchScenario {
    std::string name;               // label echoed in reports
    std::string statement;          // verifier id
    int min_order = 1;
    int max_order = 16;
    std::optional<bool> abelian;    // catalog filter; nullopt keeps both
    std::vector<FiniteGroup> structures;  // overrides the filter when nonempty
    int max_subset_size = 3;
    int set_count = 3;              // sets per instance / box width
    unsigned long long trials = 1000;
    bool exhaustive = false;
    std::uint64_t seed = 0;
    int threads = 1;
    unsigned long long budget = 1'000'000;  // tuple budget and exhaustive cap

    nlohmann::json to_json() const;
};

struct SearchViolation {
    unsigned long long trial = 0;
    nlohmann::json instance;   // raw inputs, enough to rebuild the check
    Verdict verdict;           // from the independent verifier
    bool reverified = false;   // second pass from raw inputs agreed
};

struct SearchReport {
    nlohmann::json scenario;
    unsigned long long instances = 0;
    std::vector<SearchViolation> violations;
    bool has_min = false;
    double min_margin_bits = 0.0;
    nlohmann::json min_margin_instance;
    bool budget_exhausted = false;  // exhaustive space truncated at the cap
    long long runtime_ms = 0;

    nlohmann::json to_json() const;
    /// Copy with every timing field removed, for byte-level comparisons.
    static nlohmann::json stable(nlohmann::json report);
};

/// Runs the scenario: deterministic for a fixed seed regardless of the
/// thread count. Every violation is re-verified by an independent pass
/// before it is emitted (ReverificationFailed if the passes disagree).
SearchReport run_search(const SearchScenario& scenario);

/// The built-in suite: the fixed violation reproductions (projection box,
/// dihedral triple, four-coordinate entropy, log-submodularity probe) plus
/// the covering-bound regression and the open-problem margin probe.
std::vector<SearchScenario> default_scenarios();

}  // namespace partdet
