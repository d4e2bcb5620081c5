#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "partdet/entropy.hpp"
#include "partdet/hypergraph.hpp"
#include "partdet/pdfunc.hpp"
#include "partdet/rational.hpp"
#include "partdet/ringpoly.hpp"

namespace partdet {

enum class Status { Holds, Violated, Inconclusive };
std::string status_str(Status s);

/// Float margins within this of zero still count as holding (accumulated
/// rounding of exact-rational log terms); beyond the violation threshold the
/// statement is genuinely broken; in between the verdict stays inconclusive.
inline constexpr double kEntropyHoldsEps = 1e-9;
inline constexpr double kEntropyViolationEps = 1e-6;

/// Outcome of one inequality check, oriented as lhs <= rhs. Cardinality
/// checks compare big integers and are never inconclusive; entropy checks
/// compare bits within the band above.
struct Verdict {
    std::string statement;
    Status status = Status::Inconclusive;
    bool exact = false;
    BigInt lhs_int{0}, rhs_int{0};  // meaningful when exact
    double lhs_bits = 0.0, rhs_bits = 0.0;
    double margin = 0.0;  // rhs - lhs, in bits
    nlohmann::json witness;
    std::uint64_t seed = 0;
    long long runtime_ms = 0;

    nlohmann::json to_json() const;
    std::string summary() const;
};

// -- entropy lane ------------------------------------------------------

/// H(f_{s|t}) + H(f_{s&t}) <= H(f_s) + H(f_t) for strongly determined f and
/// independent coordinates. Refuses (NotStronglyPD) otherwise.
Verdict check_entropy_submodularity(const PDFunction& f, const std::vector<Marginal>& marginals,
                                    SubsetMask s, SubsetMask t,
                                    unsigned long long budget = kDefaultTupleBudget);

/// H(f_{s|t}) - H(f_s) <= I(f_{s|t}; f_t) for disjoint s, t whenever the
/// pair (f_s, f_t) determines f_{s|t}; refuses (NotPD) when it does not.
Verdict check_mutual_information(const PDFunction& f, const std::vector<Marginal>& marginals,
                                 SubsetMask s, SubsetMask t,
                                 unsigned long long budget = kDefaultTupleBudget);

/// Sum of H(f_t) over b <= sum of H(f_s) over a, where b arises from a by
/// the supplied compression chain (InvalidChain if replay fails). Witness
/// records each step's own margin.
Verdict check_compression_entropy(const PDFunction& f, const std::vector<Marginal>& marginals,
                                  const SubsetFamily& a, const SubsetFamily& b,
                                  const std::vector<CompressionStep>& chain,
                                  unsigned long long budget = kDefaultTupleBudget);

/// H(f on everything) <= sum alpha_s H(f_s) over a fractional covering.
Verdict check_entropy_upper_bound(const PDFunction& f, const std::vector<Marginal>& marginals,
                                  const FractionalCovering& covering,
                                  unsigned long long budget = kDefaultTupleBudget);

/// Fixed 4-coordinate construction (two equal uniform coordinates on m
/// points, two constants) violating the triple-wise conditional bound that
/// a cardinality analogue would suggest: margin -log2(m)/3 bits.
Verdict check_entropy_counterexample_4sets(int m = 2);

/// (k-1) H(Z) <= sum over pairs i<j of H(Z_i, Z_j | coordinates between),
/// for arbitrary (dependent) joints.
Verdict check_pairwise_conditional(const JointDistribution& dist);

// -- cardinality lane --------------------------------------------------

/// |Y| <= prod |f_s(preimage of Y)|^{alpha_s}, exact after clearing weight
/// denominators. Refuses when f is not determined w.r.t. the family (NotPD)
/// or Y is not inside the image (YNotInImage).
Verdict check_set_main(const PDFunction& f, const std::set<Value>& ys,
                       const FractionalCovering& covering,
                       unsigned long long budget = kDefaultTupleBudget);

/// Same bound for Y = the whole image: |f(X)| <= prod |f(X_s)|^{alpha_s}.
Verdict check_compound_full(const PDFunction& f, const FractionalCovering& covering,
                            unsigned long long budget = kDefaultTupleBudget);

/// |Y| <= prod |pi_s(Y)|^{alpha_s} for a set of k-tuples.
Verdict check_projection_bound(const std::vector<std::vector<ElementId>>& ys, int k,
                               const FractionalCovering& covering);

/// |f_{s|t}(P)| * |f_{s&t}(P)| vs |f_s(P)| * |f_t(P)| with P the preimage
/// of Y; no theorem claims this, so Violated outcomes are data, not bugs.
Verdict sumset_log_submodularity_probe(const PDFunction& f, const std::set<Value>& ys,
                                       SubsetMask s, SubsetMask t,
                                       unsigned long long budget = kDefaultTupleBudget);

/// The fixed five-point subset of {0,1}^3 whose projections break the
/// product-submodularity pattern: 5*2 = 10 > 9 = 3*3.
Verdict projection_nonsubmodularity_example();

/// |A+D|^c <= |D|^{c-1} prod |A+B_s|^{alpha_s} over an abelian group, with
/// alpha a fractional partition, c its total weight, B_s the sum of B_i
/// over s, and D inside the full sum of the B_i.
Verdict check_abelian_sumset(const FiniteGroup& g, const std::vector<ElementId>& a,
                             const std::vector<std::vector<ElementId>>& bs,
                             const std::vector<ElementId>& d, const FractionalCovering& covering);

/// r-regular specialization with integer exponents:
/// |A+D|^{|C|} <= |D|^{|C|-r} prod |A+B_s|.
Verdict check_regular_abelian(const FiniteGroup& g, const std::vector<ElementId>& a,
                              const std::vector<std::vector<ElementId>>& bs,
                              const std::vector<ElementId>& d, const SubsetFamily& family);

/// |X_1+...+X_k|^{k-1} <= prod A(i,j), where A(i,j) maximizes
/// |X_i + x_{i+1} + ... + x_{j-1} + X_j| over middle elements. Holds in any
/// group; the interesting cases are non-abelian.
Verdict check_nonabelian(const FiniteGroup& g, const std::vector<std::vector<ElementId>>& xs,
                         unsigned long long budget = kDefaultTupleBudget);

/// The unconditioned product |S+T+U|^2 vs |S+T| |T+U| |S+U|: false in
/// general, used to harvest non-abelian counterexamples.
Verdict check_naive_triple(const FiniteGroup& g, const std::vector<ElementId>& s,
                           const std::vector<ElementId>& t, const std::vector<ElementId>& u);

/// |S+T+U|^2 <= |S+T| |T+U| max_t |S+t+U|.
Verdict check_ruzsa_triple(const FiniteGroup& g, const std::vector<ElementId>& s,
                           const std::vector<ElementId>& t, const std::vector<ElementId>& u);

/// |S+T+U+V|^3 <= max over t in T, u in U of
/// |S+T+U| |S+T+u+V| |S+t+U+V| |T+U+V|. No theorem either way; the verdict
/// describes this instance only and is labeled an open problem probe.
Verdict check_ruzsa_quadruple(const FiniteGroup& g, const std::vector<ElementId>& s,
                              const std::vector<ElementId>& t, const std::vector<ElementId>& u,
                              const std::vector<ElementId>& v);

// -- polynomial compound lane ------------------------------------------

/// A compound-set bound instance over a finite ring: F must equal the full
/// combination applied to the inner polynomials, pointwise on the grounds.
struct CompoundSpec {
    int m = 0;                       // number of inner polynomials
    std::vector<RingPoly> inner;     // g_1..g_m over n variables
    RingPoly whole;                  // F over n variables
    PDFunction::Evaluator combine;   // value on (mask over [m], y-tuple)
    std::string label;
};

/// |F(X_1..X_n)| <= prod |combine_s(Y_s)|^{alpha_s} with Y_j the image of
/// g_j and Y_s the unrestricted product over s. Checks the pointwise
/// identity (IdentityFailsAt) and determinedness of the combination w.r.t.
/// the covering family (NotPD) before asserting anything.
Verdict check_polynomial_compound(const FiniteRing& r, const CompoundSpec& spec,
                                  const FractionalCovering& covering,
                                  const std::vector<std::vector<ElementId>>& grounds,
                                  unsigned long long budget = kDefaultTupleBudget);

/// F = product of the factors (commutative rings only):
/// |F(X)| <= prod_s |prod_{j in s} g_j(X)|^{alpha_s}.
Verdict check_factorized(const FiniteRing& r, const std::vector<RingPoly>& factors,
                         const FractionalCovering& covering,
                         const std::vector<std::vector<ElementId>>& grounds,
                         unsigned long long budget = kDefaultTupleBudget);

/// |{a^2+b^2}| <= |{(a+b)^2}| * |{ab+ba}| with one element drawn per set
/// symbol; direct enumeration over A x B.
Verdict check_sum_of_squares(const FiniteRing& r, const std::vector<ElementId>& a,
                             const std::vector<ElementId>& b);

// -- structural lane ---------------------------------------------------

/// Lex-minimal representatives have injective sections on every family
/// member when f is determined w.r.t. the family; reports collisions.
Verdict check_section_injectivity(const PDFunction& f, const std::vector<SubsetMask>& family,
                                  unsigned long long budget = kDefaultTupleBudget);

/// The fiber-weighted joint puts exactly 1/|image| on every image value.
Verdict check_uniform_pushforward(const PDFunction& f,
                                  unsigned long long budget = kDefaultTupleBudget);

}  // namespace partdet
