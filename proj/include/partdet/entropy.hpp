#pragma once

#include <map>
#include <utility>
#include <vector>

#include "partdet/pdfunc.hpp"
#include "partdet/rational.hpp"

namespace partdet {

/// One-coordinate pmf: (element, probability) pairs, elements strictly
/// increasing, probabilities positive and summing to exactly 1.
using Marginal = std::vector<std::pair<ElementId, Rational>>;

Marginal uniform_on(const std::vector<ElementId>& set);

/// Exact joint law of Z = (Z_1,..,Z_k) on a product of finite supports.
/// Only positive atoms are stored; masses sum to exactly 1.
struct JointDistribution {
    GroundFamily supports;
    std::map<std::vector<ElementId>, Rational> pmf;

    int k() const { return supports.k; }

    static JointDistribution from_atoms(GroundFamily supports,
                                        std::map<std::vector<ElementId>, Rational> atoms);
};

/// Independent coordinates with the given marginals.
JointDistribution product_distribution(const std::vector<Marginal>& marginals);

/// Uniform distribution on an explicit list of k-tuples (each within the
/// supports); duplicates rejected.
JointDistribution uniform_on_tuples(GroundFamily supports,
                                    const std::vector<std::vector<ElementId>>& tuples);

/// The dependent joint law making f's full-mask pushforward exactly uniform
/// on the image: p(x) = 1/(l * l_y) on the fiber of y, l = image size,
/// l_y = fiber size.
JointDistribution uniformizing_joint(const PDFunction& f,
                                     unsigned long long budget = kDefaultTupleBudget);

/// A derived random variable: f_mask(Z_mask), or the coordinate tuple
/// Z_mask itself when f is null.
struct DerivedVar {
    const PDFunction* f = nullptr;
    SubsetMask mask = 0;
};

/// Exact law of a single derived variable.
std::map<Value, Rational> pushforward(const JointDistribution& dist, const PDFunction& f,
                                      SubsetMask mask);

/// Exact joint law of a list of derived variables.
std::map<std::vector<Value>, Rational> joint_pushforward(const JointDistribution& dist,
                                                         const std::vector<DerivedVar>& vars);

/// -sum p log2 p of an exact pmf (double result, bits).
double entropy_of_pmf(const std::map<std::vector<Value>, Rational>& pmf);
double entropy_of_pmf(const std::map<Value, Rational>& pmf);

/// H of the joint law of the listed derived variables, in bits.
double entropy_bits(const JointDistribution& dist, const std::vector<DerivedVar>& vars);

/// H(target | given) = H(target, given) - H(given).
double conditional_entropy_bits(const JointDistribution& dist, const std::vector<DerivedVar>& target,
                                const std::vector<DerivedVar>& given);

/// I(a; b | given) = H(a|given) + H(b|given) - H(a,b|given).
double mutual_information_bits(const JointDistribution& dist, const std::vector<DerivedVar>& a,
                               const std::vector<DerivedVar>& b,
                               const std::vector<DerivedVar>& given = {});

/// Exact decision of H(target | given) = 0: every fiber of the given-value
/// is a point mass on the target value. No float tolerance involved.
bool conditional_entropy_zero_exact(const JointDistribution& dist,
                                    const std::vector<DerivedVar>& target,
                                    const std::vector<DerivedVar>& given);

}  // namespace partdet
