#include "partdet/algebra.hpp"

#include "partdet/mask.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace partdet {

namespace {

void check_table_shape(const std::vector<std::vector<ElementId>>& table, const char* what) {
    if (table.empty()) fail("BadTable", std::string(what) + ": empty table");
    const std::size_t n = table.size();
    for (std::size_t r = 0; r < n; ++r) {
        if (table[r].size() != n)
            fail("BadTable", std::string(what) + ": row " + std::to_string(r) + " has " +
                                 std::to_string(table[r].size()) + " entries, expected " + std::to_string(n));
        for (ElementId v : table[r])
            if (v < 0 || static_cast<std::size_t>(v) >= n)
                fail("NotClosed", std::string(what) + ": entry " + std::to_string(v) + " in row " +
                                      std::to_string(r) + " outside [0," + std::to_string(n) + ")");
    }
}

std::vector<ElementId> flatten(const std::vector<std::vector<ElementId>>& table) {
    std::vector<ElementId> flat;
    flat.reserve(table.size() * table.size());
    for (const auto& row : table) flat.insert(flat.end(), row.begin(), row.end());
    return flat;
}

std::vector<std::string> decimal_names(int n) {
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
    return names;
}

constexpr int kDeepCheckMaxOrder = 64;

}  // namespace

void FiniteGroup::validate(bool check_associativity) const {
    const int n = order_;
    // Identity: must act as identity on both sides.
    {
        bool left = true, right = true;
        for (int x = 0; x < n; ++x) {
            if (op(identity_, x) != x) left = false;
            if (op(x, identity_) != x) right = false;
        }
        if (!left || !right) fail("NoIdentity", name_ + ": no two-sided identity element");
    }
    for (int a = 0; a < n; ++a) {
        ElementId b = inverse_[a];
        if (op(a, b) != identity_ || op(b, a) != identity_)
            fail("NoInverse", name_ + ": element " + std::to_string(a) + " lacks a two-sided inverse");
    }
    if (check_associativity) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (op(op(a, b), c) != op(a, op(b, c)))
                        fail("NotAssociative", name_ + ": (" + std::to_string(a) + "," + std::to_string(b) +
                                                   "," + std::to_string(c) + ") breaks associativity");
    }
}

void FiniteGroup::finish(bool check_associativity) {
    const int n = order_;
    // Locate the identity before inverses can be derived.
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x) ok = (op(e, x) == x && op(x, e) == x);
        if (ok) identity_ = e;
    }
    if (identity_ < 0) fail("NoIdentity", name_ + ": no two-sided identity element");

    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (op(a, b) == identity_ && op(b, a) == identity_) {
                inverse_[a] = b;
                break;
            }
        }
        if (inverse_[a] < 0) fail("NoInverse", name_ + ": element " + std::to_string(a) + " lacks a two-sided inverse");
    }

    abelian_ = true;
    for (int a = 0; a < n && abelian_; ++a)
        for (int b = a + 1; b < n && abelian_; ++b)
            if (op(a, b) != op(b, a)) abelian_ = false;

    if (element_names_.empty()) element_names_ = decimal_names(n);
    validate(check_associativity);
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<ElementId>>& table, std::string name) {
    check_table_shape(table, "group");
    FiniteGroup g;
    g.order_ = static_cast<int>(table.size());
    g.table_ = flatten(table);
    g.name_ = std::move(name);
    g.finish(g.order_ <= kDeepCheckMaxOrder);
    return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1) fail("BadOrder", "cyclic group needs order >= 1");
    FiniteGroup g;
    g.order_ = n;
    g.table_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) g.table_[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    g.name_ = "Z" + std::to_string(n);
    g.finish(n <= kDeepCheckMaxOrder);
    return g;
}

FiniteGroup FiniteGroup::dihedral(int n) {
    if (n < 1) fail("BadOrder", "dihedral group needs n >= 1");
    const int order = 2 * n;
    FiniteGroup g;
    g.order_ = order;
    g.table_.resize(static_cast<std::size_t>(order) * order);
    // id = b*n + a encodes R^a F^b; F R^c = R^{-c} F.
    auto compose = [n](int a, int b, int c, int d) {
        int rot = (b == 0) ? (a + c) % n : ((a - c) % n + n) % n;
        return ((b + d) % 2) * n + rot;
    };
    for (int x = 0; x < order; ++x)
        for (int y = 0; y < order; ++y)
            g.table_[static_cast<std::size_t>(x) * order + y] = compose(x % n, x / n, y % n, y / n);
    g.name_ = "D" + std::to_string(n);
    g.element_names_.resize(order);
    for (int a = 0; a < n; ++a) {
        std::string rot = (a == 0) ? "" : (a == 1 ? "R" : "R" + std::to_string(a));
        g.element_names_[a] = (a == 0) ? "e" : rot;
        g.element_names_[n + a] = rot + "F";
    }
    g.finish(order <= kDeepCheckMaxOrder);
    return g;
}

FiniteGroup FiniteGroup::quaternion() {
    // Elements (x, s): base x in {1,i,j,k}, sign s; id = 2*x + s.
    // basemul[x][y] = {base, sign} of x*y.
    static const int base[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    FiniteGroup g;
    g.order_ = 8;
    g.table_.resize(64);
    for (int x = 0; x < 4; ++x)
        for (int sx = 0; sx < 2; ++sx)
            for (int y = 0; y < 4; ++y)
                for (int sy = 0; sy < 2; ++sy) {
                    int b = base[x][y];
                    int s = (sx + sy + sign[x][y]) % 2;
                    g.table_[static_cast<std::size_t>(2 * x + sx) * 8 + (2 * y + sy)] = 2 * b + s;
                }
    g.name_ = "Q8";
    g.element_names_ = {"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    g.finish(true);
    return g;
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    FiniteGroup g;
    const int na = a.order(), nb = b.order();
    const long long order = static_cast<long long>(na) * nb;
    if (order > 4096) fail("BadOrder", "direct product order above 4096");
    g.order_ = static_cast<int>(order);
    g.table_.resize(static_cast<std::size_t>(order) * order);
    for (int x = 0; x < g.order_; ++x)
        for (int y = 0; y < g.order_; ++y) {
            int r = a.op(x / nb, y / nb) * nb + b.op(x % nb, y % nb);
            g.table_[static_cast<std::size_t>(x) * order + y] = r;
        }
    g.name_ = a.name() + "x" + b.name();
    g.element_names_.resize(g.order_);
    for (int x = 0; x < g.order_; ++x)
        g.element_names_[x] = "(" + a.element_name(x / nb) + "," + b.element_name(x % nb) + ")";
    g.finish(g.order_ <= kDeepCheckMaxOrder);
    return g;
}

namespace {

// Reads exactly n*n indices as n rows; stream errors become BadTable.
std::vector<std::vector<ElementId>> read_rows(std::istream& in, int n, const char* what) {
    std::vector<std::vector<ElementId>> rows(n, std::vector<ElementId>(n));
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!(in >> rows[r][c]))
                fail("BadTable", std::string(what) + ": expected " + std::to_string(n) + "x" +
                                     std::to_string(n) + " entries, ran out at row " + std::to_string(r));
    return rows;
}

void reject_trailing(std::istream& in, const char* what) {
    std::string tail;
    if (in >> tail) fail("BadTable", std::string(what) + ": trailing content '" + tail + "'");
}

}  // namespace

FiniteGroup FiniteGroup::from_stream(std::istream& in) {
    std::string tag;
    int n = 0;
    if (!(in >> tag) || tag != "group") fail("BadTable", "expected leading 'group <order>'");
    if (!(in >> n) || n < 1) fail("BadTable", "bad group order");
    if (n > 1024) fail("BadTable", "group order above 1024 unsupported");
    auto rows = read_rows(in, n, "group");
    reject_trailing(in, "group");
    return from_table(rows, "file");
}

FiniteGroup FiniteGroup::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("FileError", "cannot open '" + path + "'");
    FiniteGroup g = from_stream(in);
    g.name_ = path;
    return g;
}

std::string FiniteGroup::to_table_string() const {
    std::ostringstream out;
    out << "group " << order_ << "\n";
    for (int r = 0; r < order_; ++r) {
        for (int c = 0; c < order_; ++c) out << (c ? " " : "") << op(r, c);
        out << "\n";
    }
    return out.str();
}

std::vector<ElementId> nary_sumset(const FiniteGroup& g,
                                   const std::vector<std::vector<ElementId>>& operands) {
    if (operands.empty()) fail("EmptyOperand", "nary_sumset needs at least one operand");
    for (const auto& a : operands) {
        if (a.empty()) fail("EmptyOperand", "nary_sumset operand is empty");
        for (ElementId x : a)
            if (x < 0 || x >= g.order()) fail("BadElement", "element outside carrier");
    }
    std::vector<char> cur(g.order(), 0), next(g.order(), 0);
    for (ElementId x : operands[0]) cur[x] = 1;
    for (std::size_t i = 1; i < operands.size(); ++i) {
        std::fill(next.begin(), next.end(), 0);
        for (int a = 0; a < g.order(); ++a)
            if (cur[a])
                for (ElementId b : operands[i]) next[g.op(a, b)] = 1;
        std::swap(cur, next);
    }
    std::vector<ElementId> out;
    for (int a = 0; a < g.order(); ++a)
        if (cur[a]) out.push_back(a);
    return out;
}

void FiniteRing::finish(bool deep) {
    const int n = order_;
    std::vector<std::vector<ElementId>> rows(n, std::vector<ElementId>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) rows[a][b] = add(a, b);
    // from_table validates the additive axioms
    FiniteGroup additive = FiniteGroup::from_table(rows, name_ + " (additive)");
    if (!additive.is_abelian()) fail("NotAbelianAdd", name_ + ": addition is not commutative");
    zero_ = additive.identity();
    neg_.resize(n);
    for (int a = 0; a < n; ++a) neg_[a] = additive.inverse(a);

    if (deep) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        fail("NotAssociative", name_ + ": multiplication not associative at (" +
                                                   std::to_string(a) + "," + std::to_string(b) + "," +
                                                   std::to_string(c) + ")");
                    if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
                        fail("NotDistributive", name_ + ": left distributivity fails at (" + std::to_string(a) +
                                                    "," + std::to_string(b) + "," + std::to_string(c) + ")");
                    if (mul(add(a, b), c) != add(mul(a, c), mul(b, c)))
                        fail("NotDistributive", name_ + ": right distributivity fails at (" + std::to_string(a) +
                                                    "," + std::to_string(b) + "," + std::to_string(c) + ")");
                }
    }

    commutative_ = true;
    for (int a = 0; a < n && commutative_; ++a)
        for (int b = a + 1; b < n && commutative_; ++b)
            if (mul(a, b) != mul(b, a)) commutative_ = false;

    if (element_names_.empty()) element_names_ = decimal_names(n);
}

FiniteRing FiniteRing::from_tables(const std::vector<std::vector<ElementId>>& add,
                                   const std::vector<std::vector<ElementId>>& mul,
                                   std::string name) {
    check_table_shape(add, "ring add");
    check_table_shape(mul, "ring mul");
    if (add.size() != mul.size()) fail("BadTable", "ring add/mul table sizes differ");
    FiniteRing r;
    r.order_ = static_cast<int>(add.size());
    r.add_ = flatten(add);
    r.mul_ = flatten(mul);
    r.name_ = std::move(name);
    r.finish(r.order_ <= kDeepCheckMaxOrder);
    return r;
}

FiniteRing FiniteRing::mod(int n) {
    if (n < 1) fail("InvalidModulus", "ring modulus must be >= 1");
    FiniteRing r;
    r.order_ = n;
    r.add_.resize(static_cast<std::size_t>(n) * n);
    r.mul_.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            r.add_[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
            r.mul_[static_cast<std::size_t>(a) * n + b] = static_cast<ElementId>((static_cast<long long>(a) * b) % n);
        }
    r.name_ = "Z" + std::to_string(n);
    r.finish(n <= kDeepCheckMaxOrder);
    return r;
}

FiniteRing FiniteRing::matrix_2x2(int p) {
    if (p != 2 && p != 3) fail("InvalidModulus", "matrix ring supports p in {2, 3}");
    const int n = p * p * p * p;
    // id = ((a*p + b)*p + c)*p + d encodes [[a, b], [c, d]].
    auto unpack = [p](int m, int out[4]) {
        out[3] = m % p; m /= p;
        out[2] = m % p; m /= p;
        out[1] = m % p; m /= p;
        out[0] = m;
    };
    auto pack = [p](const int m[4]) { return ((m[0] * p + m[1]) * p + m[2]) * p + m[3]; };
    FiniteRing r;
    r.order_ = n;
    r.add_.resize(static_cast<std::size_t>(n) * n);
    r.mul_.resize(static_cast<std::size_t>(n) * n);
    for (int x = 0; x < n; ++x) {
        int mx[4], my[4], mz[4];
        unpack(x, mx);
        for (int y = 0; y < n; ++y) {
            unpack(y, my);
            for (int i = 0; i < 4; ++i) mz[i] = (mx[i] + my[i]) % p;
            r.add_[static_cast<std::size_t>(x) * n + y] = pack(mz);
            mz[0] = (mx[0] * my[0] + mx[1] * my[2]) % p;
            mz[1] = (mx[0] * my[1] + mx[1] * my[3]) % p;
            mz[2] = (mx[2] * my[0] + mx[3] * my[2]) % p;
            mz[3] = (mx[2] * my[1] + mx[3] * my[3]) % p;
            r.mul_[static_cast<std::size_t>(x) * n + y] = pack(mz);
        }
    }
    r.name_ = "M2(Z" + std::to_string(p) + ")";
    r.element_names_.resize(n);
    for (int x = 0; x < n; ++x) {
        int m[4];
        unpack(x, m);
        r.element_names_[x] = "[" + std::to_string(m[0]) + std::to_string(m[1]) + ";" +
                              std::to_string(m[2]) + std::to_string(m[3]) + "]";
    }
    r.finish(n <= kDeepCheckMaxOrder);
    return r;
}

FiniteRing FiniteRing::from_stream(std::istream& in) {
    std::string tag;
    int n = 0;
    if (!(in >> tag) || tag != "ring") fail("BadTable", "expected leading 'ring <order>'");
    if (!(in >> n) || n < 1) fail("BadTable", "bad ring order");
    if (n > 1024) fail("BadTable", "ring order above 1024 unsupported");
    if (!(in >> tag) || tag != "add") fail("BadTable", "expected 'add' block");
    auto add = read_rows(in, n, "ring add");
    if (!(in >> tag) || tag != "mul") fail("BadTable", "expected 'mul' block");
    auto mul = read_rows(in, n, "ring mul");
    reject_trailing(in, "ring");
    return from_tables(add, mul, "file");
}

FiniteRing FiniteRing::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("FileError", "cannot open '" + path + "'");
    FiniteRing r = from_stream(in);
    r.name_ = path;
    return r;
}

FiniteGroup FiniteRing::additive_group() const {
    std::vector<std::vector<ElementId>> rows(order_, std::vector<ElementId>(order_));
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b) rows[a][b] = add(a, b);
    FiniteGroup g = FiniteGroup::from_table(rows, name_ + "+");
    return g;
}

std::string FiniteRing::to_table_string() const {
    std::ostringstream out;
    out << "ring " << order_ << "\nadd\n";
    for (int r = 0; r < order_; ++r) {
        for (int c = 0; c < order_; ++c) out << (c ? " " : "") << add(r, c);
        out << "\n";
    }
    out << "mul\n";
    for (int r = 0; r < order_; ++r) {
        for (int c = 0; c < order_; ++c) out << (c ? " " : "") << mul(r, c);
        out << "\n";
    }
    return out.str();
}

GroundFamily GroundFamily::of(std::vector<std::vector<ElementId>> sets, int carrier_order) {
    if (sets.empty()) fail("BadGround", "at least one ground set required");
    if (sets.size() > static_cast<std::size_t>(kMaxIndices))
        fail("BadGround", "more than " + std::to_string(kMaxIndices) + " ground sets");
    GroundFamily g;
    g.k = static_cast<int>(sets.size());
    for (auto& s : sets) {
        if (s.empty()) fail("BadGround", "ground set is empty");
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (ElementId x : s)
            if (x < 0 || x >= carrier_order)
                fail("BadGround", "element " + std::to_string(x) + " outside carrier of order " +
                                      std::to_string(carrier_order));
    }
    g.sets = std::move(sets);
    return g;
}

unsigned long long GroundFamily::product_size() const {
    unsigned long long p = 1;
    for (const auto& s : sets) {
        if (p > std::numeric_limits<unsigned long long>::max() / s.size())
            return std::numeric_limits<unsigned long long>::max();
        p *= s.size();
    }
    return p;
}

std::string set_str(const FiniteGroup& g, const std::vector<ElementId>& xs) {
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += g.element_name(xs[i]);
    }
    return out + "}";
}

std::string set_str(const std::vector<ElementId>& xs) {
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(xs[i]);
    }
    return out + "}";
}

}  // namespace partdet
