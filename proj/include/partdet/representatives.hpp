#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "partdet/pdfunc.hpp"

namespace partdet {

/// One full-arity tuple per image value y, with f(R(y)) = y.
struct RepresentativeSet {
    GroundFamily ground;
    std::map<Value, std::vector<ElementId>> by_value;

    std::size_t size() const { return by_value.size(); }
    /// Representative tuples in increasing tuple order.
    std::vector<std::vector<ElementId>> tuples() const;
};

/// Per-coordinate element ranking used to compare full tuples. Position i
/// holds a permutation of the i-th ground set; earlier means smaller.
using CoordinateOrder = std::vector<std::vector<ElementId>>;

/// Picks, for each y in ys, the smallest preimage tuple under the
/// coordinatewise lexicographic order (carrier order by default, or the
/// supplied per-coordinate permutations). YNotInImage if some y is missed.
RepresentativeSet lex_min_representatives(const PDFunction& f, const std::set<Value>& ys,
                                          const CoordinateOrder* order = nullptr,
                                          unsigned long long budget = kDefaultTupleBudget);

/// Convenience: representatives for the whole image of f.
RepresentativeSet lex_min_representatives(const PDFunction& f,
                                          unsigned long long budget = kDefaultTupleBudget);

struct SectionInjectivity {
    bool ok = true;
    SubsetMask s = 0;                 // mask where injectivity failed
    std::vector<ElementId> a, b;      // distinct s-sections with equal value
    std::string describe() const;
};

/// Checks, for every s in the family, that f_s restricted to the s-sections
/// of the representative tuples is one-to-one. Always passes when f is
/// partition-determined w.r.t. the family and the tuples are lex-minimal.
SectionInjectivity verify_section_injectivity(const PDFunction& f,
                                              const std::vector<SubsetMask>& family,
                                              const std::vector<std::vector<ElementId>>& reps);

}  // namespace partdet
