#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "partdet/algebra.hpp"
#include "partdet/mask.hpp"
#include "partdet/rational.hpp"

namespace partdet {

/// Codomain value of a function on the Q-space: structural equality and
/// ordering. Neutral is the value on the empty index set; Pad is the
/// reserved off-interval filler, distinct from every carrier element.
class Value {
public:
    enum class Kind : std::uint8_t { Neutral = 0, Pad, Group, Ring, Int, Tuple };

    Value() : kind_(Kind::Neutral) {}

    static Value neutral() { return Value(); }
    static Value pad() { Value v; v.kind_ = Kind::Pad; return v; }
    static Value group(ElementId e) { Value v; v.kind_ = Kind::Group; v.elem_ = e; return v; }
    static Value ring(ElementId e) { Value v; v.kind_ = Kind::Ring; v.elem_ = e; return v; }
    static Value integer(long n) { Value v; v.kind_ = Kind::Int; v.int_ = n; return v; }
    static Value integer(BigInt n) { Value v; v.kind_ = Kind::Int; v.int_ = std::move(n); return v; }
    static Value tuple(std::vector<Value> items) {
        Value v;
        v.kind_ = Kind::Tuple;
        v.items_ = std::move(items);
        return v;
    }

    Kind kind() const { return kind_; }
    ElementId element() const { return elem_; }
    const BigInt& integer_value() const { return int_; }
    const std::vector<Value>& items() const { return items_; }

    int compare(const Value& o) const;
    friend bool operator==(const Value& a, const Value& b) { return a.compare(b) == 0; }
    friend bool operator!=(const Value& a, const Value& b) { return a.compare(b) != 0; }
    friend bool operator<(const Value& a, const Value& b) { return a.compare(b) < 0; }

    std::string str() const;

private:
    Kind kind_;
    ElementId elem_ = 0;
    BigInt int_;
    std::vector<Value> items_;
};

/// A point of the disjoint-union domain: which indices are present, and one
/// element per present index in increasing index order.
struct QPoint {
    SubsetMask mask = 0;
    std::vector<ElementId> values;
};

inline constexpr unsigned long long kDefaultTupleBudget = 1'000'000;

/// Visits every tuple of prod_{i in mask} X_i in lexicographic order
/// (coordinates listed in increasing index order). Throws BudgetExceeded
/// before visiting anything if the product exceeds the budget.
/// Returns the number of tuples visited.
unsigned long long for_each_tuple(const GroundFamily& ground, SubsetMask mask,
                                  unsigned long long budget,
                                  const std::function<void(const std::vector<ElementId>&)>& fn);

/// A function on the Q-space over fixed ground sets. Immutable once built;
/// the optional memo is a thread-safe cache. The empty mask always
/// evaluates to Neutral, for every kind.
class PDFunction {
public:
    enum class Kind : std::uint8_t { Projection, AbelianLinear, Cartesian, RingProduct, IntervalG, Custom };

    /// Evaluator contract: mask is nonempty, tuple has one element per set
    /// bit in increasing index order and elements already validated.
    using Evaluator = std::function<Value(SubsetMask, const std::vector<ElementId>&)>;

    /// f_s(x) = the coordinate tuple x_s.
    static PDFunction projection(GroundFamily ground);

    /// f_s(x) = sum_{i in s} c_i * x_i in an abelian group; c_i * x is
    /// repeated addition (negated for c_i < 0).
    static PDFunction abelian_linear(const FiniteGroup& g, GroundFamily ground,
                                     std::vector<long long> coeffs);

    /// f_s(x) = the k-slot tuple with x_i in slot i for i in s, integer 0
    /// elsewhere (the standard-basis embedding).
    static PDFunction cartesian(GroundFamily ground);

    /// f_s(x) = prod_{i in s} x_i in a ring, factors in increasing index
    /// order.
    static PDFunction ring_product(const FiniteRing& r, GroundFamily ground);

    /// f_s(x) = ordered group product when s is a consecutive interval of
    /// [k]; otherwise the k-slot tuple with x_i on s and Pad off s.
    static PDFunction interval_g(const FiniteGroup& g, GroundFamily ground);

    /// f_s(x) = ordered group product over s, for any s (not
    /// partition-determined in general when g is non-abelian).
    static PDFunction group_product(const FiniteGroup& g, GroundFamily ground);

    static PDFunction custom(GroundFamily ground, Evaluator evaluator, std::string label);

    Value eval(SubsetMask mask, const std::vector<ElementId>& tuple) const;
    Value eval_uncached(SubsetMask mask, const std::vector<ElementId>& tuple) const;

    void enable_memo(bool on) const { memo_->enabled = on; }
    bool memo_enabled() const { return memo_->enabled; }

    const GroundFamily& ground() const { return ground_; }
    int k() const { return ground_.k; }
    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }

    /// Underlying structure when the kind carries one; null otherwise.
    const FiniteGroup* group() const { return group_.get(); }
    const FiniteRing* ring() const { return ring_.get(); }

private:
    // Copies share the memo; it caches a pure function so sharing is
    // semantically invisible.
    struct MemoState {
        std::mutex mutex;
        bool enabled = false;
        std::map<std::pair<SubsetMask, std::vector<ElementId>>, Value> cache;
    };

    PDFunction(GroundFamily ground, Kind kind, std::string label, Evaluator ev)
        : ground_(std::move(ground)),
          kind_(kind),
          label_(std::move(label)),
          evaluator_(std::move(ev)),
          memo_(std::make_shared<MemoState>()) {}

    void check_point(SubsetMask mask, const std::vector<ElementId>& tuple) const;

    GroundFamily ground_;
    Kind kind_;
    std::string label_;
    Evaluator evaluator_;
    std::shared_ptr<const FiniteGroup> group_;
    std::shared_ptr<const FiniteRing> ring_;
    std::shared_ptr<MemoState> memo_;
};

/// Outcome of a determinedness check; on failure carries the first witness
/// found in deterministic enumeration order.
struct PDCheckResult {
    bool ok = true;
    SubsetMask s = 0;
    SubsetMask t = 0;               // strong check only
    std::vector<ElementId> x, y;    // full tuples (plain) / tuples over s|t (strong)
    std::string describe() const;
};

/// Partition-determinedness of f with respect to the family: for each s in
/// the family, (f_s(x), f_sbar(x)) determines f(x). Exhaustive over the full
/// tuple space, budget-guarded.
/// Sub-tuple of `tuple` (indexed by `from`) at the positions in `to`;
/// to must be a subset of from, tuples in increasing index order.
std::vector<ElementId> subtuple(SubsetMask from, const std::vector<ElementId>& tuple, SubsetMask to);

PDCheckResult is_partition_determined(const PDFunction& f, const std::vector<SubsetMask>& family,
                                      unsigned long long budget = kDefaultTupleBudget);

/// Strong determinedness: for every ordered pair of disjoint nonempty s,t,
/// (f_t, f_{s|t}) determines f_s. Exhaustive over X_{s|t} per pair.
PDCheckResult is_strongly_partition_determined(const PDFunction& f,
                                               unsigned long long budget = kDefaultTupleBudget);

/// { f_s(x) : x in X_s } for nonempty mask s.
std::set<Value> compound_image(const PDFunction& f, SubsetMask mask,
                               unsigned long long budget = kDefaultTupleBudget);

/// All tuples x in X_s with f_s(x) in ys, lexicographic order. Every y in ys
/// must be attained (YNotInImage otherwise).
std::vector<std::vector<ElementId>> compound_preimage(const PDFunction& f, SubsetMask mask,
                                                      const std::set<Value>& ys,
                                                      unsigned long long budget = kDefaultTupleBudget);

}  // namespace partdet
