#pragma once

#include <optional>
#include <string>
#include <vector>

#include "partdet/mask.hpp"
#include "partdet/rational.hpp"

namespace partdet {

/// Multiset of nonempty subsets of [k]; members kept sorted (by mask value)
/// so equal multisets compare equal.
struct SubsetFamily {
    int k = 0;
    std::vector<SubsetMask> members;

    static SubsetFamily of(int k, std::vector<SubsetMask> members);

    /// Number of members containing index i (1-based).
    int degree(int i) const;
    /// r if every index has degree exactly r (r >= 1), nullopt otherwise.
    std::optional<int> regular_degree() const;
    /// min_{i in s} degree(i) for a member set s.
    int min_degree_over(SubsetMask s) const;

    bool operator==(const SubsetFamily& o) const { return k == o.k && members == o.members; }
    bool operator<(const SubsetFamily& o) const {
        if (k != o.k) return k < o.k;
        return members < o.members;
    }

    std::string str() const;

    /// All m-element subsets of [k].
    static SubsetFamily all_subsets_of_size(int k, int m);
    /// {[k] \ {i}} for each i.
    static SubsetFamily leave_one_out(int k);
    static SubsetFamily singletons(int k);
};

/// Nonnegative weights on the members of a family, one per member instance,
/// with every index fractionally covered: sum_{s with i in s} alpha_s >= 1.
struct FractionalCovering {
    SubsetFamily family;
    std::vector<Rational> weights;  // parallel to family.members
    bool is_partition = false;      // equality at every index

    /// Validates coverage exactly; NotACovering names the first uncovered
    /// index. Negative weights rejected.
    static FractionalCovering of(SubsetFamily family, std::vector<Rational> weights);

    Rational total_weight() const;
    std::string str() const;
};

/// alpha_s = 1/r on an r-regular family (a fractional partition).
FractionalCovering regular_covering(const SubsetFamily& c);

/// alpha_s = 1 / min_{i in s} degree(i); always a covering.
FractionalCovering degree_covering(const SubsetFamily& c);

/// Exact optimum of min sum alpha_s subject to coverage, via rational
/// two-phase simplex with Bland's rule. Infeasible if some index lies in no
/// member. Repeated members carry the weight on their first instance.
FractionalCovering min_covering_lp(const SubsetFamily& c);

/// sum |s|^2; strictly increases along elementary compressions.
long long compression_weight(const SubsetFamily& a);

/// Replaces members at positions i, j (0-based) by their intersection and
/// union, dropping an empty intersection. NestedPair if one contains the
/// other (the operation would be a no-op).
SubsetFamily elementary_compression(const SubsetFamily& a, int i, int j);

/// Threshold family: s_j = { i : i lies in at least j members }, for
/// j = 1..max degree. The compression-order endpoint below a.
SubsetFamily minimal_multiset(const SubsetFamily& a);

struct CompressionStep {
    SubsetMask first = 0, second = 0;  // member values compressed at this step
};

struct DominatesResult {
    enum class Status { Yes, No, BudgetExhausted } status = Status::No;
    std::vector<CompressionStep> sequence;  // filled when Yes
};

/// Breadth-first search for a chain of elementary compressions from a to b;
/// budget counts visited families.
DominatesResult dominates(const SubsetFamily& a, const SubsetFamily& b,
                          std::size_t budget = 100000);

/// Applies one recorded step (members identified by value, first occurrence).
SubsetFamily apply_compression_step(const SubsetFamily& a, const CompressionStep& step);

}  // namespace partdet
