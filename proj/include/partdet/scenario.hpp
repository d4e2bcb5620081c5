#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "partdet/algebra.hpp"
#include "partdet/hypergraph.hpp"
#include "partdet/inequalities.hpp"
#include "partdet/ringpoly.hpp"
#include "partdet/search.hpp"

namespace partdet {

/// Parsed scenario file. Which keys are required depends on the statement;
/// run_scenario_verify and scenario_to_search validate on use.
struct ScenarioDoc {
    std::string name;
    std::string statement;
    std::vector<FiniteGroup> groups;
    std::optional<FiniteRing> ring;
    std::vector<std::vector<ElementId>> grounds;          // slot-indexed, 1-based keys
    std::map<std::string, std::vector<ElementId>> sets;   // named operand sets
    std::vector<SubsetMask> family, family_b;
    std::string weights_kind;                             // regular | degree | lp
    std::vector<std::pair<SubsetMask, Rational>> weight_list;
    std::optional<SubsetMask> mask_s, mask_t;
    std::map<int, Marginal> marginals;
    std::vector<std::pair<std::vector<ElementId>, Rational>> atoms;
    std::vector<std::vector<ElementId>> points;           // tuples: inputs or raw points
    std::vector<CompressionStep> steps;
    std::vector<std::pair<std::string, RingPoly>> polys;  // declaration order kept
    std::map<SubsetMask, RingPoly> sections;
    std::optional<RingPoly> fbar;
    std::string function_kind;                            // sum|linear|projection|product|interval|cartesian
    std::vector<long long> function_coeffs;
    std::map<int, std::vector<ElementId>> orders;         // per-slot order overrides
    std::optional<int> k, m, set_count, subset_max, max_order, min_order, threads;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned long long> trials, budget;
    std::optional<bool> exhaustive, abelian;
};

/// Z<n>, D<n>, Q8, and x-joined direct products such as Z2xZ4.
FiniteGroup parse_structure_name(const std::string& name);

/// Z<n>, M2(Z2), M2(Z3).
FiniteRing parse_ring_name(const std::string& name);

/// Accepts the line-oriented text grammar, or a JSON object (first
/// non-space byte '{') whose keys mirror the text keys with repeated keys
/// as arrays. Strict: unknown keys fail with the line or key position.
ScenarioDoc parse_scenario(const std::string& text);
ScenarioDoc load_scenario_file(const std::string& path);

/// Runs the statement named by the doc against the instance it describes.
Verdict run_scenario_verify(const ScenarioDoc& doc);

/// Maps search-relevant keys onto a SearchScenario; instance-description
/// keys (sets, polynomials, distributions, ...) are rejected here.
SearchScenario scenario_to_search(const ScenarioDoc& doc);

}  // namespace partdet
