#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "partdet/error.hpp"

namespace partdet {

using ElementId = std::int32_t;

/// Finite group given by its Cayley table over the carrier {0,..,order-1}.
/// The carrier index order is the canonical element order everywhere
/// (lexicographic representatives, set printouts, serialization).
///
/// Construction validates closure, identity and two-sided inverses always;
/// associativity is checked for order <= 64 (named constructors are correct
/// by construction above that).
class FiniteGroup {
public:
    static FiniteGroup from_table(const std::vector<std::vector<ElementId>>& table,
                                  std::string name = "custom");

    static FiniteGroup cyclic(int n);
    /// Order 2n; carrier ordered e, R, .., R^{n-1}, F, RF, .., R^{n-1}F.
    static FiniteGroup dihedral(int n);
    static FiniteGroup quaternion();
    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

    /// Reads the text format: `group <order>` then <order> rows of indices.
    static FiniteGroup from_stream(std::istream& in);
    static FiniteGroup from_file(const std::string& path);

    int order() const { return order_; }
    ElementId op(ElementId a, ElementId b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    ElementId identity() const { return identity_; }
    ElementId inverse(ElementId a) const { return inverse_[a]; }
    bool is_abelian() const { return abelian_; }
    const std::string& name() const { return name_; }
    const std::string& element_name(ElementId a) const { return element_names_[a]; }

    /// Serializes in the same text format from_stream accepts.
    std::string to_table_string() const;

private:
    FiniteGroup() = default;
    void validate(bool check_associativity) const;
    void finish(bool check_associativity);

    int order_ = 0;
    std::vector<ElementId> table_;    // row-major order_ x order_
    std::vector<ElementId> inverse_;
    ElementId identity_ = 0;
    bool abelian_ = true;
    std::string name_;
    std::vector<std::string> element_names_;
};

/// {a1 + a2 + .. + am} with the group operation applied left to right;
/// result sorted by carrier index. Order of operands matters when the group
/// is non-abelian.
std::vector<ElementId> nary_sumset(const FiniteGroup& g,
                                   const std::vector<std::vector<ElementId>>& operands);

inline std::vector<ElementId> sumset(const FiniteGroup& g,
                                     const std::vector<ElementId>& a,
                                     const std::vector<ElementId>& b) {
    return nary_sumset(g, {a, b});
}

/// Finite ring over the carrier {0,..,order-1}: (add) an abelian group,
/// (mul) associative and distributive over add. No unity or commutativity
/// required. Deep axiom checks run for order <= 64.
class FiniteRing {
public:
    static FiniteRing from_tables(const std::vector<std::vector<ElementId>>& add,
                                  const std::vector<std::vector<ElementId>>& mul,
                                  std::string name = "custom");

    /// Z_n with + and * mod n. n >= 1; ring_mod(1) is the zero ring.
    static FiniteRing mod(int n);
    /// 2x2 matrices over Z_p, order p^4; p in {2, 3}.
    static FiniteRing matrix_2x2(int p);

    /// Reads: `ring <order>`, `add`, <order> rows, `mul`, <order> rows.
    static FiniteRing from_stream(std::istream& in);
    static FiniteRing from_file(const std::string& path);

    int order() const { return order_; }
    ElementId add(ElementId a, ElementId b) const { return add_[static_cast<std::size_t>(a) * order_ + b]; }
    ElementId mul(ElementId a, ElementId b) const { return mul_[static_cast<std::size_t>(a) * order_ + b]; }
    ElementId neg(ElementId a) const { return neg_[a]; }
    ElementId zero() const { return zero_; }
    bool commutative_mul() const { return commutative_; }
    const std::string& name() const { return name_; }
    const std::string& element_name(ElementId a) const { return element_names_[a]; }

    /// The additive group (same carrier), for reuse of group machinery.
    FiniteGroup additive_group() const;

    std::string to_table_string() const;

private:
    FiniteRing() = default;
    void finish(bool deep);

    int order_ = 0;
    std::vector<ElementId> add_, mul_;
    std::vector<ElementId> neg_;
    ElementId zero_ = 0;
    bool commutative_ = true;
    std::string name_;
    std::vector<std::string> element_names_;
};

/// Ground sets X_1..X_k over a shared carrier: each nonempty, sorted,
/// duplicate-free, elements within [0, carrier_order).
struct GroundFamily {
    int k = 0;
    std::vector<std::vector<ElementId>> sets;

    static GroundFamily of(std::vector<std::vector<ElementId>> sets, int carrier_order);

    /// Product of the set sizes, saturating at 2^63-1.
    unsigned long long product_size() const;
};

/// Human-readable "{e, F}" style set printer using the structure's names.
std::string set_str(const FiniteGroup& g, const std::vector<ElementId>& xs);
std::string set_str(const std::vector<ElementId>& xs);

}  // namespace partdet
