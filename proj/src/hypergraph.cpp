#include "partdet/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "partdet/error.hpp"

namespace partdet {

SubsetFamily SubsetFamily::of(int k, std::vector<SubsetMask> members) {
    if (k < 1 || k > kMaxIndices)
        fail("BadIndexCount", "index count must be between 1 and " + std::to_string(kMaxIndices));
    const SubsetMask full = full_mask(k);
    for (SubsetMask m : members) {
        if (m == 0) fail("EmptyMember", "families may not contain the empty set");
        if ((m & ~full) != 0)
            fail("IndexOutOfRange", "member " + mask_str(m) + " uses indices beyond " + std::to_string(k));
    }
    std::sort(members.begin(), members.end());
    SubsetFamily f;
    f.k = k;
    f.members = std::move(members);
    return f;
}

int SubsetFamily::degree(int i) const {
    if (i < 1 || i > k) fail("IndexOutOfRange", "degree of index " + std::to_string(i));
    int d = 0;
    for (SubsetMask m : members)
        if (mask_has(m, i)) ++d;
    return d;
}

std::optional<int> SubsetFamily::regular_degree() const {
    if (members.empty()) return std::nullopt;
    int r = degree(1);
    if (r == 0) return std::nullopt;
    for (int i = 2; i <= k; ++i)
        if (degree(i) != r) return std::nullopt;
    return r;
}

int SubsetFamily::min_degree_over(SubsetMask s) const {
    int best = -1;
    for (int i : mask_indices(s)) {
        int d = degree(i);
        if (best < 0 || d < best) best = d;
    }
    if (best < 0) fail("EmptyMember", "min degree over the empty set");
    return best;
}

std::string SubsetFamily::str() const {
    std::string out;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ' ';
        out += mask_str(members[i]);
    }
    return out;
}

SubsetFamily SubsetFamily::all_subsets_of_size(int k, int m) {
    if (m < 1 || m > k) fail("BadSubsetSize", "subset size must lie in [1, k]");
    std::vector<SubsetMask> ms;
    for (SubsetMask s = 1; s < full_mask(k) + 1u; ++s)
        if (mask_size(s) == m) ms.push_back(s);
    return of(k, std::move(ms));
}

SubsetFamily SubsetFamily::leave_one_out(int k) {
    std::vector<SubsetMask> ms;
    for (int i = 1; i <= k; ++i) ms.push_back(full_mask(k) & ~(SubsetMask{1} << (i - 1)));
    return of(k, std::move(ms));
}

SubsetFamily SubsetFamily::singletons(int k) {
    std::vector<SubsetMask> ms;
    for (int i = 1; i <= k; ++i) ms.push_back(SubsetMask{1} << (i - 1));
    return of(k, std::move(ms));
}

FractionalCovering FractionalCovering::of(SubsetFamily family, std::vector<Rational> weights) {
    if (family.members.size() != weights.size())
        fail("WeightCountMismatch", "one weight per family member required");
    for (auto& w : weights) {
        w.canonicalize();
        if (w < 0) fail("NegativeWeight", "covering weights must be nonnegative");
    }
    bool partition = true;
    for (int i = 1; i <= family.k; ++i) {
        Rational cover = 0;
        for (std::size_t j = 0; j < family.members.size(); ++j)
            if (mask_has(family.members[j], i)) cover += weights[j];
        if (cover < 1)
            fail("NotACovering", "index " + std::to_string(i) + " is covered with weight " +
                                     rational_str(Rational(cover)) + " < 1");
        if (cover != 1) partition = false;
    }
    FractionalCovering c;
    c.family = std::move(family);
    c.weights = std::move(weights);
    c.is_partition = partition;
    return c;
}

Rational FractionalCovering::total_weight() const {
    Rational t = 0;
    for (const auto& w : weights) t += w;
    return t;
}

std::string FractionalCovering::str() const {
    std::string out;
    for (std::size_t i = 0; i < family.members.size(); ++i) {
        if (i) out += ' ';
        out += mask_str(family.members[i]) + ":" + rational_str(weights[i]);
    }
    return out;
}

FractionalCovering regular_covering(const SubsetFamily& c) {
    auto r = c.regular_degree();
    if (!r) fail("NotRegular", "family is not r-regular: " + c.str());
    std::vector<Rational> w(c.members.size(), Rational(1, *r));
    return FractionalCovering::of(c, std::move(w));
}

FractionalCovering degree_covering(const SubsetFamily& c) {
    std::vector<Rational> w;
    w.reserve(c.members.size());
    for (SubsetMask s : c.members) w.emplace_back(1, c.min_degree_over(s));
    return FractionalCovering::of(c, std::move(w));
}

namespace {

void pivot(std::vector<std::vector<Rational>>& t, std::vector<int>& basis, int row, int col) {
    const Rational p = t[row][col];
    for (auto& v : t[row]) v /= p;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (static_cast<int>(i) == row) continue;
        const Rational f = t[i][col];
        if (f == 0) continue;
        for (std::size_t j = 0; j < t[i].size(); ++j) t[i][j] -= f * t[row][j];
    }
    basis[row] = col;
}

// Minimizes cost^T over the current basic feasible tableau. Bland's rule on
// both the entering column (restricted to [0, cols)) and the leaving row, so
// the iteration cannot cycle.
Rational simplex_min(std::vector<std::vector<Rational>>& t, std::vector<int>& basis,
                     const std::vector<Rational>& cost, int cols) {
    const int rows = static_cast<int>(t.size());
    const int rhs = static_cast<int>(t[0].size()) - 1;
    while (true) {
        int enter = -1;
        for (int j = 0; j < cols && enter < 0; ++j) {
            Rational r = cost[j];
            for (int i = 0; i < rows; ++i)
                if (cost[basis[i]] != 0) r -= cost[basis[i]] * t[i][j];
            if (r < 0) enter = j;
        }
        if (enter < 0) break;
        int leave = -1;
        Rational best = 0;
        for (int i = 0; i < rows; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][rhs] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) fail("Unbounded", "covering objective is bounded below; tableau corrupt");
        pivot(t, basis, leave, enter);
    }
    Rational v = 0;
    for (int i = 0; i < rows; ++i)
        if (cost[basis[i]] != 0) v += cost[basis[i]] * t[i][rhs];
    return v;
}

}  // namespace

FractionalCovering min_covering_lp(const SubsetFamily& c) {
    SubsetMask covered = 0;
    for (SubsetMask m : c.members) covered |= m;
    if (covered != full_mask(c.k))
        fail("Infeasible", "no member contains index " +
                               std::to_string(mask_indices(full_mask(c.k) & ~covered).front()));

    std::vector<SubsetMask> distinct(c.members);
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const int n = static_cast<int>(distinct.size());
    const int k = c.k;
    const int ncols = n + 2 * k;  // weights, surplus, artificial

    std::vector<std::vector<Rational>> t(k, std::vector<Rational>(ncols + 1, Rational(0)));
    std::vector<int> basis(k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < n; ++j)
            if (mask_has(distinct[j], i + 1)) t[i][j] = 1;
        t[i][n + i] = -1;
        t[i][n + k + i] = 1;
        t[i][ncols] = 1;
        basis[i] = n + k + i;
    }

    std::vector<Rational> phase1(ncols, Rational(0));
    for (int j = n + k; j < ncols; ++j) phase1[j] = 1;
    if (simplex_min(t, basis, phase1, ncols) != 0)
        fail("Infeasible", "phase one of the covering LP did not reach zero");

    // Drive leftover artificials out of the basis where possible; a row with
    // no usable pivot is redundant and stays inert.
    for (int i = 0; i < k; ++i) {
        if (basis[i] < n + k) continue;
        for (int j = 0; j < n + k; ++j) {
            if (t[i][j] != 0) {
                pivot(t, basis, i, j);
                break;
            }
        }
    }

    std::vector<Rational> phase2(ncols, Rational(0));
    for (int j = 0; j < n; ++j) phase2[j] = 1;
    simplex_min(t, basis, phase2, n + k);

    std::vector<Rational> x(n, Rational(0));
    for (int i = 0; i < k; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][ncols];

    // Repeated members receive the optimal weight on their first instance.
    std::vector<Rational> weights;
    weights.reserve(c.members.size());
    std::size_t d = 0;
    for (std::size_t i = 0; i < c.members.size(); ++i) {
        if (i > 0 && c.members[i] == c.members[i - 1]) {
            weights.emplace_back(0);
        } else {
            weights.push_back(x[d++]);
        }
    }
    return FractionalCovering::of(c, std::move(weights));
}

long long compression_weight(const SubsetFamily& a) {
    long long w = 0;
    for (SubsetMask m : a.members) {
        long long sz = mask_size(m);
        w += sz * sz;
    }
    return w;
}

SubsetFamily elementary_compression(const SubsetFamily& a, int i, int j) {
    const int n = static_cast<int>(a.members.size());
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        fail("BadPosition", "compression needs two distinct member positions");
    const SubsetMask s = a.members[i], t = a.members[j];
    const SubsetMask meet = s & t, join = s | t;
    if (meet == s || meet == t)
        fail("NestedPair", "members " + mask_str(s) + " and " + mask_str(t) + " are nested");
    std::vector<SubsetMask> out;
    out.reserve(a.members.size());
    for (int p = 0; p < n; ++p)
        if (p != i && p != j) out.push_back(a.members[p]);
    out.push_back(join);
    if (meet != 0) out.push_back(meet);
    return SubsetFamily::of(a.k, std::move(out));
}

SubsetFamily minimal_multiset(const SubsetFamily& a) {
    int maxdeg = 0;
    std::vector<int> deg(a.k + 1, 0);
    for (int i = 1; i <= a.k; ++i) {
        deg[i] = a.degree(i);
        maxdeg = std::max(maxdeg, deg[i]);
    }
    std::vector<SubsetMask> out;
    for (int j = 1; j <= maxdeg; ++j) {
        SubsetMask m = 0;
        for (int i = 1; i <= a.k; ++i)
            if (deg[i] >= j) m |= SubsetMask{1} << (i - 1);
        if (m != 0) out.push_back(m);
    }
    if (out.empty()) fail("EmptyFamily", "minimal multiset of an empty family");
    return SubsetFamily::of(a.k, std::move(out));
}

SubsetFamily apply_compression_step(const SubsetFamily& a, const CompressionStep& step) {
    int i = -1, j = -1;
    for (int p = 0; p < static_cast<int>(a.members.size()); ++p) {
        if (i < 0 && a.members[p] == step.first) {
            i = p;
        } else if (j < 0 && a.members[p] == step.second) {
            j = p;
        }
    }
    if (i < 0 || j < 0)
        fail("BadStep", "family " + a.str() + " has no pair (" + mask_str(step.first) + ", " +
                            mask_str(step.second) + ")");
    return elementary_compression(a, i, j);
}

DominatesResult dominates(const SubsetFamily& a, const SubsetFamily& b, std::size_t budget) {
    DominatesResult res;
    if (a == b) {
        res.status = DominatesResult::Status::Yes;
        return res;
    }
    if (a.k != b.k) return res;

    // Every step preserves the total of |s| over members and strictly
    // increases the squared weight, so mismatches rule the target out.
    long long size_a = 0, size_b = 0;
    for (SubsetMask m : a.members) size_a += mask_size(m);
    for (SubsetMask m : b.members) size_b += mask_size(m);
    if (size_a != size_b) return res;
    const long long wb = compression_weight(b);
    if (compression_weight(a) >= wb) return res;

    std::map<SubsetFamily, std::pair<SubsetFamily, CompressionStep>> parent;
    std::deque<SubsetFamily> queue;
    std::size_t visited = 1;
    queue.push_back(a);

    while (!queue.empty()) {
        SubsetFamily cur = std::move(queue.front());
        queue.pop_front();
        const int n = static_cast<int>(cur.members.size());
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const SubsetMask s = cur.members[i], t = cur.members[j];
                const SubsetMask meet = s & t;
                if (meet == s || meet == t) continue;
                SubsetFamily child = elementary_compression(cur, i, j);
                if (compression_weight(child) > wb) continue;
                if (child == a || parent.count(child)) continue;
                parent.emplace(child, std::make_pair(cur, CompressionStep{s, t}));
                if (child == b) {
                    std::vector<CompressionStep> seq;
                    SubsetFamily at = child;
                    while (!(at == a)) {
                        auto it = parent.find(at);
                        seq.push_back(it->second.second);
                        at = it->second.first;
                    }
                    std::reverse(seq.begin(), seq.end());
                    res.status = DominatesResult::Status::Yes;
                    res.sequence = std::move(seq);
                    return res;
                }
                if (++visited > budget) {
                    res.status = DominatesResult::Status::BudgetExhausted;
                    return res;
                }
                queue.push_back(std::move(child));
            }
        }
    }
    return res;  // search space exhausted below the weight bound
}

}  // namespace partdet
