#pragma once

#include <string>
#include <vector>

#include "partdet/algebra.hpp"

namespace partdet {

/// Integer-combination polynomial over a ring in variables x1..xn, keeping
/// the order of factors inside each monomial (rings may be non-commutative).
/// Monomials are words of variable indices with an integer coefficient;
/// like terms (equal words) collect, so x1*x2 and x2*x1 stay distinct.
struct RingPoly {
    struct Monomial {
        long long coeff = 0;
        std::vector<int> word;  // 1-based variable indices, in order
    };
    std::vector<Monomial> terms;  // sorted by word, nonzero coeffs
    int nvars = 0;

    static RingPoly variable(int index);
    static RingPoly zero() { return {}; }

    RingPoly operator+(const RingPoly& o) const;
    RingPoly operator-(const RingPoly& o) const;
    RingPoly operator-() const;
    RingPoly operator*(const RingPoly& o) const;  // words concatenate
    RingPoly scaled(long long c) const;
    RingPoly pow(int e) const;  // e >= 1

    bool operator==(const RingPoly& o) const { return nvars == o.nvars && same_terms(o); }

    ElementId eval(const FiniteRing& r, const std::vector<ElementId>& x) const;
    std::string str(char letter = 'x') const;

  private:
    bool same_terms(const RingPoly& o) const;
    void normalize();
    friend RingPoly parse_ring_poly(const std::string&, int);
};

/// Parses expressions like "x1^2 + x2^2", "3*x1*x2 - x2*x1", or
/// "(x1+x2)(x2+x3)". Variables are x<digits> or y<digits>; juxtaposition
/// multiplies; integer factors scale; a term with no variable is rejected
/// (rings may lack a unit, so there is no constant element to mean).
/// nvars_hint, when positive, fixes the variable count (and bound-checks).
RingPoly parse_ring_poly(const std::string& text, int nvars_hint = 0);

}  // namespace partdet
