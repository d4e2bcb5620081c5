#include <doctest.h>

#include <random>
#include <set>

#include "partdet/entropy.hpp"
#include "partdet/error.hpp"
#include "partdet/inequalities.hpp"
#include "partdet/ringpoly.hpp"

using namespace partdet;

namespace {

template <typename Fn>
std::string thrown_code(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

std::vector<ElementId> random_subset(std::mt19937_64& rng, int n, int max_size) {
    std::vector<ElementId> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    std::shuffle(all.begin(), all.end(), rng);
    int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(n, max_size)));
    all.resize(static_cast<std::size_t>(size));
    std::sort(all.begin(), all.end());
    return all;
}

Marginal random_marginal(std::mt19937_64& rng, const std::vector<ElementId>& support) {
    std::vector<long> w(support.size());
    long total = 0;
    for (auto& x : w) {
        x = 1 + static_cast<long>(rng() % 4);
        total += x;
    }
    Marginal m;
    for (std::size_t i = 0; i < support.size(); ++i)
        m.emplace_back(support[i], Rational(w[i], total));
    return m;
}

SubsetFamily random_covering_family(std::mt19937_64& rng, int k) {
    const SubsetMask full = full_mask(k);
    std::set<SubsetMask> members;
    int count = 2 + static_cast<int>(rng() % 3);
    SubsetMask covered = 0;
    for (int i = 0; i < count; ++i) {
        SubsetMask m = static_cast<SubsetMask>(rng()) & full;
        if (m == 0) m = full;
        members.insert(m);
        covered |= m;
    }
    if (covered != full) members.insert(full);
    return SubsetFamily::of(k, {members.begin(), members.end()});
}

PDFunction sum_function(const FiniteGroup& g, std::vector<std::vector<ElementId>> grounds) {
    auto ground = GroundFamily::of(std::move(grounds), g.order());
    return PDFunction::abelian_linear(g, ground,
                                      std::vector<long long>(static_cast<std::size_t>(ground.k), 1));
}

// The first coordinate is invisible from every section except {1} itself,
// so (f_2, f_12) cannot recover f_1.
PDFunction hidden_coordinate_function() {
    auto ground = GroundFamily::of({{0, 1}, {0, 1}}, 2);
    auto eval = [](SubsetMask mask, const std::vector<ElementId>& t) {
        if (mask == 0b01) return Value::integer(static_cast<long>(t[0]));
        if (mask == 0b10) return Value::integer(0L);
        return Value::integer(static_cast<long>(t[1]));
    };
    return PDFunction::custom(ground, eval, "hidden-coordinate");
}

}  // namespace

TEST_CASE("ring polynomials parse, evaluate, and print") {
    auto z13 = FiniteRing::mod(13);

    auto p = parse_ring_poly("x1^2 - x2");
    CHECK(p.str() == "x1^2 - x2");
    CHECK(p.nvars == 2);
    CHECK(p.eval(z13, {3, 5}) == 4);

    auto sq = parse_ring_poly("(x1+x2)(x1+x2)");
    CHECK(sq.str() == "x1^2 + x1*x2 + x2*x1 + x2^2");
    CHECK(sq == (parse_ring_poly("x1") + parse_ring_poly("x2")).pow(2));

    CHECK(parse_ring_poly("x1x2 - x2x1").terms.size() == 2);
    CHECK(parse_ring_poly("x1 + x1").str() == "2*x1");
    CHECK(parse_ring_poly("x1 - x1").str() == "0");
    CHECK(parse_ring_poly("2(x1+x2)x1").str() == "2*x1^2 + 2*x2*x1");
    CHECK(parse_ring_poly("y1^2 - y2", 0).str('y') == "y1^2 - y2");

    auto z5 = FiniteRing::mod(5);
    CHECK(parse_ring_poly("3x1 + 2x2^2").eval(z5, {4, 3}) == 0);
    // negative coefficients wrap to the additive order
    CHECK(parse_ring_poly("-x1").eval(z5, {2}) == 3);

    CHECK(thrown_code([] { parse_ring_poly("5"); }) == "BadPolynomial");
    CHECK(thrown_code([] { parse_ring_poly("x1 +"); }) == "BadPolynomial");
    CHECK(thrown_code([] { parse_ring_poly("x0"); }) == "BadPolynomial");
    CHECK(thrown_code([] { parse_ring_poly("x3", 2); }) == "BadPolynomial");
    CHECK(thrown_code([] { parse_ring_poly("x1^0"); }) == "BadPolynomial");

    CHECK(thrown_code([&] { parse_ring_poly("x1x2").eval(z13, {1}); }) == "BadArity");
    RingPoly broken;
    broken.terms.push_back({1, {}});
    CHECK(thrown_code([&] { broken.eval(z13, {1}); }) == "BadMonomial");

    // the word order matters in a non-commutative ring
    auto m2 = FiniteRing::matrix_2x2(2);
    REQUIRE(!m2.commutative_mul());
    auto ab = parse_ring_poly("x1x2");
    auto ba = parse_ring_poly("x2x1");
    bool differs = false;
    for (ElementId a = 0; a < m2.order() && !differs; ++a)
        for (ElementId b = 0; b < m2.order() && !differs; ++b)
            differs = ab.eval(m2, {a, b}) != ba.eval(m2, {a, b});
    CHECK(differs);
}

TEST_CASE("verdicts serialize both lanes") {
    auto z2 = FiniteGroup::cyclic(2);
    auto v = check_naive_triple(z2, {0}, {0}, {0});
    CHECK(v.exact);
    CHECK(v.status == Status::Holds);
    auto j = v.to_json();
    CHECK(j.at("statement") == "naive-triple-bound");
    CHECK(j.at("status") == "holds");
    CHECK(j.at("lhs") == "1");
    CHECK(j.at("rhs") == "1");
    CHECK(j.contains("witness"));
    CHECK(j.contains("runtime_ms"));
    CHECK(v.summary().find("holds") != std::string::npos);
    CHECK(status_str(Status::Violated) == "violated");
    CHECK(status_str(Status::Inconclusive) == "inconclusive");
}

TEST_CASE("entropy submodularity holds for strongly determined sums") {
    std::mt19937_64 rng(20240811);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        auto g = FiniteGroup::cyclic(n);
        int k = 2 + static_cast<int>(rng() % 2);
        std::vector<std::vector<ElementId>> grounds;
        std::vector<Marginal> marginals;
        for (int i = 0; i < k; ++i) {
            grounds.push_back(random_subset(rng, n, 3));
            marginals.push_back(random_marginal(rng, grounds.back()));
        }
        auto f = sum_function(g, grounds);
        SubsetMask full = full_mask(k);
        SubsetMask s = static_cast<SubsetMask>(rng()) & full;
        SubsetMask t = static_cast<SubsetMask>(rng()) & full;
        auto v = check_entropy_submodularity(f, marginals, s, t);
        CHECK(v.status == Status::Holds);
        ++checked;
    }
    CHECK(checked == 60);

    // s == t forces equality
    auto z5 = FiniteGroup::cyclic(5);
    auto f = sum_function(z5, {{0, 1}, {0, 2}});
    std::vector<Marginal> ms = {uniform_on({0, 1}), uniform_on({0, 2})};
    auto v = check_entropy_submodularity(f, ms, 0b01, 0b01);
    CHECK(v.margin == doctest::Approx(0.0).epsilon(1e-12));

    auto bad = hidden_coordinate_function();
    std::vector<Marginal> bm = {uniform_on({0, 1}), uniform_on({0, 1})};
    CHECK(thrown_code([&] { check_entropy_submodularity(bad, bm, 0b01, 0b10); }) ==
          "NotStronglyPD");
}

TEST_CASE("information gap bound for determining pairs") {
    auto z5 = FiniteGroup::cyclic(5);
    auto f = sum_function(z5, {{0, 1}, {0, 2}});
    std::vector<Marginal> ms = {uniform_on({0, 1}), uniform_on({0, 2})};
    auto v = check_mutual_information(f, ms, 0b01, 0b10);
    CHECK(v.status == Status::Holds);
    // translation by an independent summand leaves the gap equal to the information
    CHECK(v.lhs_bits == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v.rhs_bits == doctest::Approx(1.0).epsilon(1e-9));

    std::mt19937_64 rng(20240812);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        auto g = FiniteGroup::cyclic(n);
        std::vector<std::vector<ElementId>> grounds = {random_subset(rng, n, 3),
                                                       random_subset(rng, n, 3),
                                                       random_subset(rng, n, 3)};
        std::vector<Marginal> marg;
        for (const auto& s : grounds) marg.push_back(random_marginal(rng, s));
        auto fs = sum_function(g, grounds);
        SubsetMask s = 1u << (rng() % 3);
        SubsetMask t = full_mask(3) & ~s;
        if (rng() % 2) t = 1u << (mask_indices(t)[rng() % 2] - 1);
        auto w = check_mutual_information(fs, marg, s, t);
        CHECK(w.status == Status::Holds);
    }

    auto bad = hidden_coordinate_function();
    std::vector<Marginal> bm = {uniform_on({0, 1}), uniform_on({0, 1})};
    CHECK(thrown_code([&] { check_mutual_information(bad, bm, 0b01, 0b10); }) == "NotPD");
    CHECK(thrown_code([&] { check_mutual_information(f, ms, 0b01, 0b01); }) == "BadMask");
    CHECK(thrown_code([&] { check_mutual_information(f, ms, 0b01, 0); }) == "BadMask");
}

TEST_CASE("compression chains only increase section entropy totals") {
    auto z5 = FiniteGroup::cyclic(5);
    auto f = sum_function(z5, {{0, 1}, {0, 2}, {0, 1, 4}});
    std::vector<Marginal> ms = {uniform_on({0, 1}), uniform_on({0, 2}),
                                uniform_on({0, 1, 4})};

    auto a = SubsetFamily::of(3, {0b011, 0b110});
    auto b = SubsetFamily::of(3, {0b010, 0b111});
    std::vector<CompressionStep> chain = {{0b011, 0b110}};
    auto v = check_compression_entropy(f, ms, a, b, chain);
    CHECK(v.status == Status::Holds);
    double step_total = 0;
    for (const auto& st : v.witness.at("steps")) step_total += st.at("margin_bits").get<double>();
    CHECK(step_total == doctest::Approx(v.margin).epsilon(1e-9));

    auto same = check_compression_entropy(f, ms, a, a, {});
    CHECK(same.margin == doctest::Approx(0.0));

    // longer chain: {1},{2},{3} -> {3},{1,2} -> {}, merge with {3}
    auto s3 = SubsetFamily::singletons(3);
    auto merged = SubsetFamily::of(3, {0b100, 0b011});
    auto final_fam = SubsetFamily::of(3, {0b111});
    std::vector<CompressionStep> chain2 = {{0b001, 0b010}, {0b011, 0b100}};
    // middle families produced by the steps drop empty intersections
    auto v2 = check_compression_entropy(f, ms, s3, final_fam, chain2);
    CHECK(v2.status == Status::Holds);
    CHECK(v2.witness.at("steps").size() == 2);

    CHECK(thrown_code([&] { check_compression_entropy(f, ms, a, b, {}); }) == "InvalidChain");
    CHECK(thrown_code([&] {
              check_compression_entropy(f, ms, a, b, {{0b001, 0b100}});
          }) == "InvalidChain");

    auto bad = hidden_coordinate_function();
    std::vector<Marginal> bm = {uniform_on({0, 1}), uniform_on({0, 1})};
    auto a2 = SubsetFamily::of(2, {0b01, 0b10});
    auto b2 = SubsetFamily::of(2, {0b11});
    CHECK(thrown_code([&] {
              check_compression_entropy(bad, bm, a2, b2, {{0b01, 0b10}});
          }) == "NotStronglyPD");
}

TEST_CASE("fractional covering entropy bound") {
    auto z5 = FiniteGroup::cyclic(5);
    auto f = sum_function(z5, {{0, 1}, {0, 2}, {0, 1, 4}});
    std::vector<Marginal> ms = {uniform_on({0, 1}), uniform_on({0, 2}),
                                uniform_on({0, 1, 4})};

    auto pairs = regular_covering(SubsetFamily::all_subsets_of_size(3, 2));
    auto v = check_entropy_upper_bound(f, ms, pairs);
    CHECK(v.status == Status::Holds);

    auto whole = FractionalCovering::of(SubsetFamily::of(3, {0b111}), {Rational(1)});
    auto eq = check_entropy_upper_bound(f, ms, whole);
    CHECK(eq.margin == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937_64 rng(20240813);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        auto g = FiniteGroup::cyclic(n);
        int k = 2 + static_cast<int>(rng() % 2);
        std::vector<std::vector<ElementId>> grounds;
        std::vector<Marginal> marg;
        for (int i = 0; i < k; ++i) {
            grounds.push_back(random_subset(rng, n, 3));
            marg.push_back(random_marginal(rng, grounds.back()));
        }
        auto fs = sum_function(g, grounds);
        auto covering = (rng() % 2) ? degree_covering(random_covering_family(rng, k))
                                    : min_covering_lp(random_covering_family(rng, k));
        auto w = check_entropy_upper_bound(fs, marg, covering);
        CHECK(w.status == Status::Holds);
    }
}

TEST_CASE("four coordinate averaging bound fails by a third of a bit per doubling") {
    auto one = check_entropy_counterexample_4sets(1);
    CHECK(one.status == Status::Holds);
    CHECK(one.margin == doctest::Approx(0.0));

    auto two = check_entropy_counterexample_4sets(2);
    CHECK(two.status == Status::Violated);
    CHECK(two.lhs_bits == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(two.rhs_bits == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    CHECK(two.margin == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));

    auto four = check_entropy_counterexample_4sets(4);
    CHECK(four.margin == doctest::Approx(-2.0 / 3.0).epsilon(1e-9));
    auto eight = check_entropy_counterexample_4sets(8);
    CHECK(eight.margin == doctest::Approx(-1.0).epsilon(1e-9));

    CHECK(thrown_code([] { check_entropy_counterexample_4sets(0); }) == "BadParameter");
}

TEST_CASE("pairwise conditional sums bound the joint for arbitrary dependence") {
    // independent uniform bits: both sides are 6 bits
    std::vector<Marginal> iid = {uniform_on({0, 1}), uniform_on({0, 1}), uniform_on({0, 1})};
    auto dist = product_distribution(iid);
    auto v = check_pairwise_conditional(dist);
    CHECK(v.lhs_bits == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(v.rhs_bits == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(v.status == Status::Holds);

    // two coordinates: the single pair term is the joint itself
    auto d2 = product_distribution({uniform_on({0, 1}), uniform_on({0, 1, 2})});
    auto v2 = check_pairwise_conditional(d2);
    CHECK(v2.margin == doctest::Approx(0.0).epsilon(1e-12));

    std::mt19937_64 rng(20240814);
    for (int trial = 0; trial < 60; ++trial) {
        int k = 2 + static_cast<int>(rng() % 3);
        std::vector<std::vector<ElementId>> supports;
        for (int i = 0; i < k; ++i) supports.push_back(random_subset(rng, 3, 2));
        auto ground = GroundFamily::of(supports, 3);
        std::vector<std::vector<ElementId>> tuples;
        for_each_tuple(ground, full_mask(k), 1000,
                       [&](const std::vector<ElementId>& x) { tuples.push_back(x); });
        std::map<std::vector<ElementId>, Rational> atoms;
        long total = 0;
        std::vector<long> w(tuples.size());
        for (auto& x : w) {
            x = static_cast<long>(rng() % 3);
            total += x;
        }
        if (total == 0) {
            w[0] = 1;
            total = 1;
        }
        for (std::size_t i = 0; i < tuples.size(); ++i)
            if (w[i] > 0) atoms[tuples[i]] = Rational(w[i], total);
        auto d = JointDistribution::from_atoms(ground, atoms);
        auto r = check_pairwise_conditional(d);
        CHECK(r.status == Status::Holds);
    }

    auto d1 = product_distribution({uniform_on({0, 1})});
    CHECK(thrown_code([&] { check_pairwise_conditional(d1); }) == "BadParameter");
}

TEST_CASE("covering bound on a restricted target set") {
    auto z5 = FiniteGroup::cyclic(5);
    auto f = sum_function(z5, {{0, 1}, {0, 2}, {0, 3}});
    auto pairs = regular_covering(SubsetFamily::all_subsets_of_size(3, 2));

    auto whole_image = compound_image(f, 0b111);
    REQUIRE(whole_image.size() == 5);
    auto v = check_set_main(f, whole_image, pairs);
    CHECK(v.status == Status::Holds);
    CHECK(v.lhs_int == 25);  // |Y|^2 after clearing the halves
    CHECK(v.rhs_int == 48);  // 4 * 4 * 3

    std::set<Value> zero = {Value::group(0)};
    auto vz = check_set_main(f, zero, pairs);
    CHECK(vz.lhs_int == 1);
    CHECK(vz.rhs_int == 4);  // sections 2 * 2 * 1

    std::set<Value> missing = {Value::group(0), Value::integer(99L)};
    CHECK(thrown_code([&] { check_set_main(f, missing, pairs); }) == "YNotInImage");
    CHECK(thrown_code([&] { check_set_main(f, {}, pairs); }) == "BadParameter");

    // ordered products hide interior factors, breaking determinedness
    auto d3 = FiniteGroup::dihedral(3);
    auto gp = PDFunction::group_product(d3, GroundFamily::of({{0, 3}, {1}, {0, 3}}, 6));
    auto split = FractionalCovering::of(SubsetFamily::of(3, {0b010, 0b101}),
                                        {Rational(1), Rational(1)});
    CHECK(thrown_code([&] {
              check_set_main(gp, compound_image(gp, 0b111), split);
          }) == "NotPD");

    std::mt19937_64 rng(20240815);
    int violations = 0;
    for (int trial = 0; trial < 220; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        auto g = FiniteGroup::cyclic(n);
        int k = 2 + static_cast<int>(rng() % 2);
        std::vector<std::vector<ElementId>> grounds;
        for (int i = 0; i < k; ++i) grounds.push_back(random_subset(rng, n, 3));
        auto fs = sum_function(g, grounds);
        auto covering = (rng() % 2) ? degree_covering(random_covering_family(rng, k))
                                    : min_covering_lp(random_covering_family(rng, k));
        auto image = compound_image(fs, full_mask(k));
        std::set<Value> ys;
        for (const Value& y : image)
            if (rng() % 2) ys.insert(y);
        if (ys.empty()) ys.insert(*image.begin());
        auto w = check_set_main(fs, ys, covering);
        if (w.status != Status::Holds) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("covering bound on full compound images") {
    auto z5 = FiniteGroup::cyclic(5);
    auto f = sum_function(z5, {{0, 1}, {0, 2}, {0, 3}});
    auto pairs = regular_covering(SubsetFamily::all_subsets_of_size(3, 2));
    auto v = check_compound_full(f, pairs);
    CHECK(v.status == Status::Holds);
    CHECK(v.lhs_int == 25);
    CHECK(v.rhs_int == 48);

    auto whole = FractionalCovering::of(SubsetFamily::of(3, {0b111}), {Rational(1)});
    auto eq = check_compound_full(f, whole);
    CHECK(eq.lhs_int == eq.rhs_int);
    CHECK(eq.status == Status::Holds);

    std::mt19937_64 rng(20240816);
    int violations = 0;
    for (int trial = 0; trial < 520; ++trial) {
        int n = 2 + static_cast<int>(rng() % 11);
        int k = 2 + static_cast<int>(rng() % 3);
        std::vector<std::vector<ElementId>> grounds;
        for (int i = 0; i < k; ++i) grounds.push_back(random_subset(rng, n, 3));
        PDFunction fs = [&] {
            switch (rng() % 3) {
                case 0: {
                    auto d = FiniteGroup::dihedral(3 + static_cast<int>(rng() % 3));
                    std::vector<std::vector<ElementId>> dg;
                    for (int i = 0; i < k; ++i) dg.push_back(random_subset(rng, d.order(), 3));
                    return PDFunction::interval_g(d, GroundFamily::of(dg, d.order()));
                }
                case 1:
                    return PDFunction::projection(
                        GroundFamily::of(std::vector<std::vector<ElementId>>(grounds), n));
                default:
                    return sum_function(FiniteGroup::cyclic(n), grounds);
            }
        }();
        auto covering = (rng() % 2) ? degree_covering(random_covering_family(rng, k))
                                    : min_covering_lp(random_covering_family(rng, k));
        auto w = check_compound_full(fs, covering);
        if (w.status != Status::Holds) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("projection bounds and the five point failure of submodularity") {
    auto v = projection_nonsubmodularity_example();
    CHECK(v.status == Status::Violated);
    CHECK(v.lhs_int == 10);  // 5 * 2
    CHECK(v.rhs_int == 9);   // 3 * 3
    CHECK(v.witness.at("size_union") == 5);
    CHECK(v.witness.at("size_intersection") == 2);
    CHECK(v.witness.at("size_s") == 3);
    CHECK(v.witness.at("size_t") == 3);

    const std::vector<std::vector<ElementId>> pts = {
        {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}};
    auto pairs = regular_covering(SubsetFamily::all_subsets_of_size(3, 2));
    auto pv = check_projection_bound(pts, 3, pairs);
    CHECK(pv.status == Status::Holds);
    CHECK(pv.lhs_int == 25);
    CHECK(pv.rhs_int == 36);  // 3 * 4 * 3

    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 100; ++trial) {
        std::set<std::vector<ElementId>> pset;
        int count = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < count; ++i)
            pset.insert({static_cast<ElementId>(rng() % 2), static_cast<ElementId>(rng() % 2),
                         static_cast<ElementId>(rng() % 2)});
        auto w = check_projection_bound({pset.begin(), pset.end()}, 3, pairs);
        CHECK(w.status == Status::Holds);
    }

    CHECK(thrown_code([&] { check_projection_bound({{0, 0}}, 3, pairs); }) == "BadParameter");
    CHECK(thrown_code([&] { check_projection_bound({}, 3, pairs); }) == "BadParameter");
}

TEST_CASE("abelian partition and regular sumset bounds") {
    auto z11 = FiniteGroup::cyclic(11);
    std::mt19937_64 rng(20240818);

    // one part, weight one: the bound collapses to |A+D| <= |A+B|
    auto single = FractionalCovering::of(SubsetFamily::of(1, {0b1}), {Rational(1)});
    std::vector<ElementId> b1 = {0, 1, 4};
    auto eq = check_abelian_sumset(z11, {0, 2}, {b1}, b1, single);
    CHECK(eq.status == Status::Holds);
    CHECK(eq.lhs_int == eq.rhs_int);

    for (int trial = 0; trial < 60; ++trial) {
        auto a = random_subset(rng, 11, 4);
        std::vector<std::vector<ElementId>> bs = {random_subset(rng, 11, 4),
                                                  random_subset(rng, 11, 4)};
        auto btotal = nary_sumset(z11, bs);
        std::vector<ElementId> d;
        for (ElementId e : btotal)
            if (rng() % 2) d.push_back(e);
        if (d.empty()) d.push_back(btotal[0]);
        auto split = FractionalCovering::of(SubsetFamily::of(2, {0b01, 0b10}),
                                            {Rational(1), Rational(1)});
        auto v = check_abelian_sumset(z11, a, bs, d, split);
        CHECK(v.status == Status::Holds);
    }

    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_subset(rng, 11, 3);
        std::vector<std::vector<ElementId>> bs = {random_subset(rng, 11, 3),
                                                  random_subset(rng, 11, 3),
                                                  random_subset(rng, 11, 3)};
        auto btotal = nary_sumset(z11, bs);
        std::vector<ElementId> d;
        for (ElementId e : btotal)
            if (rng() % 3 == 0) d.push_back(e);
        if (d.empty()) d.push_back(btotal[0]);
        auto pairs3 = regular_covering(SubsetFamily::all_subsets_of_size(3, 2));
        auto v = check_abelian_sumset(z11, a, bs, d, pairs3);
        CHECK(v.status == Status::Holds);
        auto r = check_regular_abelian(z11, a, bs, d, SubsetFamily::all_subsets_of_size(3, 2));
        CHECK(r.status == Status::Holds);
        // the cleared partition form and the integer regular form agree
        CHECK(v.lhs_int == r.lhs_int);
        CHECK(v.rhs_int == r.rhs_int);
    }

    auto d3 = FiniteGroup::dihedral(3);
    auto split = FractionalCovering::of(SubsetFamily::of(2, {0b01, 0b10}),
                                        {Rational(1), Rational(1)});
    CHECK(thrown_code([&] {
              check_abelian_sumset(d3, {0}, {{0}, {0}}, {0}, split);
          }) == "NotAbelian");

    auto lopsided = FractionalCovering::of(SubsetFamily::of(2, {0b01, 0b11}),
                                           {Rational(1, 2), Rational(1)});
    CHECK(thrown_code([&] {
              check_abelian_sumset(z11, {0}, {{0}, {0}}, {0}, lopsided);
          }) == "NotAPartition");

    CHECK(thrown_code([&] {
              check_abelian_sumset(z11, {0}, {{1}, {2}}, {5}, split);
          }) == "DNotInSumset");
    CHECK(thrown_code([&] {
              check_regular_abelian(z11, {0}, {{1}, {2}}, {5},
                                    SubsetFamily::of(2, {0b01, 0b10}));
          }) == "DNotInSumset");

    CHECK(thrown_code([&] {
              check_regular_abelian(z11, {0}, {{1}, {2}}, {3},
                                    SubsetFamily::of(2, {0b01, 0b11}));
          }) == "NotRegular");
}

TEST_CASE("interval maxima bound ordered sums in any group") {
    auto d3 = FiniteGroup::dihedral(3);
    std::vector<ElementId> s = {0, 3}, t = {1}, u = {0, 3};

    auto v = check_nonabelian(d3, {s, t, u});
    CHECK(v.status == Status::Holds);
    CHECK(v.lhs_int == 16);
    CHECK(v.rhs_int == 16);  // 2 * 4 * 2, met with equality
    std::map<std::pair<int, int>, std::size_t> table;
    for (const auto& row : v.witness.at("A_table"))
        table[{row.at("i").get<int>(), row.at("j").get<int>()}] = row.at("A").get<std::size_t>();
    CHECK(table[{1, 2}] == 2);
    CHECK(table[{2, 3}] == 2);
    CHECK(table[{1, 3}] == 4);

    auto naive = check_naive_triple(d3, s, t, u);
    CHECK(naive.status == Status::Violated);
    CHECK(naive.lhs_int == 16);
    CHECK(naive.rhs_int == 8);

    auto ruzsa = check_ruzsa_triple(d3, s, t, u);
    CHECK(ruzsa.status == Status::Holds);
    CHECK(ruzsa.lhs_int == ruzsa.rhs_int);

    // two sets: the bound is an identity
    auto two = check_nonabelian(d3, {{0, 1}, {2, 3}});
    CHECK(two.lhs_int == two.rhs_int);

    std::mt19937_64 rng(20240819);
    std::vector<FiniteGroup> groups;
    groups.push_back(FiniteGroup::cyclic(6));
    groups.push_back(FiniteGroup::dihedral(3));
    groups.push_back(FiniteGroup::dihedral(4));
    groups.push_back(FiniteGroup::quaternion());
    for (int trial = 0; trial < 60; ++trial) {
        const auto& g = groups[trial % groups.size()];
        int k = 2 + static_cast<int>(rng() % 2);
        std::vector<std::vector<ElementId>> xs;
        for (int i = 0; i < k; ++i) xs.push_back(random_subset(rng, g.order(), 3));
        auto w = check_nonabelian(g, xs);
        CHECK(w.status == Status::Holds);
        if (k == 3) {
            auto r = check_ruzsa_triple(g, xs[0], xs[1], xs[2]);
            CHECK(r.status == Status::Holds);
        }
    }

    CHECK(thrown_code([&] { check_nonabelian(d3, {s}); }) == "BadParameter");
    CHECK(thrown_code([&] {
              check_nonabelian(d3, {s, {0, 1}, u}, 1);
          }) == "MiddleEnumerationBudgetExceeded");
}

TEST_CASE("quadruple probe holds across abelian instances") {
    std::mt19937_64 rng(20240820);
    auto z7 = FiniteGroup::cyclic(7);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_subset(rng, 7, 3);
        auto t = random_subset(rng, 7, 3);
        auto u = random_subset(rng, 7, 3);
        auto v = random_subset(rng, 7, 3);
        auto w = check_ruzsa_quadruple(z7, s, t, u, v);
        CHECK(w.status == Status::Holds);
        CHECK(w.witness.at("note").get<std::string>().find("open problem") !=
              std::string::npos);
    }

    // non-abelian outcomes are recorded, not asserted
    auto d4 = FiniteGroup::dihedral(4);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_subset(rng, 8, 3);
        auto t = random_subset(rng, 8, 3);
        auto u = random_subset(rng, 8, 3);
        auto v = random_subset(rng, 8, 3);
        auto w = check_ruzsa_quadruple(d4, s, t, u, v);
        CHECK(w.exact);
        CHECK(w.status != Status::Inconclusive);
    }
}

namespace {

// y1^2 - y2 with y1 = x1 + x2 and y2 = x1x2 + x2x1; the combination on a
// single slot squares y1 or passes y2 through.
CompoundSpec square_difference_spec(const FiniteRing& r) {
    CompoundSpec spec;
    spec.m = 2;
    spec.inner = {parse_ring_poly("x1 + x2"), parse_ring_poly("x1x2 + x2x1")};
    spec.whole = parse_ring_poly("x1^2 + x2^2");
    const FiniteRing* rp = &r;
    spec.combine = [rp](SubsetMask mask, const std::vector<ElementId>& y) {
        if (mask == 0b01) return Value::ring(rp->mul(y[0], y[0]));
        if (mask == 0b10) return Value::ring(y[0]);
        return Value::ring(rp->add(rp->mul(y[0], y[0]), rp->neg(y[1])));
    };
    spec.label = "square-difference";
    return spec;
}

}  // namespace

TEST_CASE("compound polynomial bound through image combinations") {
    auto z13 = FiniteRing::mod(13);
    auto spec = square_difference_spec(z13);
    auto singles = FractionalCovering::of(SubsetFamily::of(2, {0b01, 0b10}),
                                          {Rational(1), Rational(1)});

    std::mt19937_64 rng(20240821);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_subset(rng, 13, 6);
        auto b = random_subset(rng, 13, 6);
        auto v = check_polynomial_compound(z13, spec, singles, {a, b});
        CHECK(v.status == Status::Holds);
        auto direct = check_sum_of_squares(z13, a, b);
        CHECK(direct.status == Status::Holds);
        CHECK(v.lhs_int == direct.lhs_int);
        CHECK(v.rhs_int == direct.rhs_int);
    }

    // a single slot carrying the whole polynomial is an identity
    CompoundSpec id;
    id.m = 1;
    id.inner = {parse_ring_poly("x1x2")};
    id.whole = parse_ring_poly("x1x2");
    id.combine = [](SubsetMask, const std::vector<ElementId>& y) { return Value::ring(y[0]); };
    id.label = "pass-through";
    auto one = FractionalCovering::of(SubsetFamily::of(1, {0b1}), {Rational(1)});
    auto veq = check_polynomial_compound(z13, id, one, {{1, 2, 3}, {0, 5}});
    CHECK(veq.lhs_int == veq.rhs_int);

    auto broken = spec;
    broken.whole = parse_ring_poly("x1^2");
    CHECK(thrown_code([&] {
              check_polynomial_compound(z13, broken, singles, {{0, 1}, {0, 1}});
          }) == "IdentityFailsAt");

    CompoundSpec opaque;
    opaque.m = 2;
    opaque.inner = {parse_ring_poly("x1"), parse_ring_poly("x2")};
    opaque.whole = parse_ring_poly("x1 + x2");
    const FiniteRing* rp = &z13;
    opaque.combine = [rp](SubsetMask mask, const std::vector<ElementId>& y) {
        if (mask == 0b11) return Value::ring(rp->add(y[0], y[1]));
        return Value::ring(0);
    };
    opaque.label = "blind-slots";
    CHECK(thrown_code([&] {
              check_polynomial_compound(z13, opaque, singles, {{0, 1}, {0, 1}});
          }) == "NotPD");
}

TEST_CASE("factor grouping bound over commutative rings") {
    auto z7 = FiniteRing::mod(7);
    std::vector<RingPoly> factors = {parse_ring_poly("x1 + x2"), parse_ring_poly("x2 + x3")};
    auto singles = FractionalCovering::of(SubsetFamily::of(2, {0b01, 0b10}),
                                          {Rational(1), Rational(1)});

    std::mt19937_64 rng(20240822);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<ElementId>> grounds = {random_subset(rng, 7, 3),
                                                       random_subset(rng, 7, 3),
                                                       random_subset(rng, 7, 3)};
        auto v = check_factorized(z7, factors, singles, grounds);
        CHECK(v.status == Status::Holds);
        CHECK(v.statement == "factorized-compound");
    }

    // the whole-mask factor runs over the unrestricted slot product, which
    // strictly contains the image of F here
    auto whole = FractionalCovering::of(SubsetFamily::of(2, {0b11}), {Rational(1)});
    auto eq = check_factorized(z7, factors, whole, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(eq.status == Status::Holds);
    CHECK(eq.lhs_int < eq.rhs_int);

    auto m2 = FiniteRing::matrix_2x2(2);
    CHECK(thrown_code([&] {
              check_factorized(m2, factors, singles, {{0, 1}, {0, 1}, {0, 1}});
          }) == "NotCommutative");
}

TEST_CASE("sum of squares cardinality instance") {
    auto z2 = FiniteRing::mod(2);
    auto v = check_sum_of_squares(z2, {0, 1}, {0, 1});
    CHECK(v.status == Status::Holds);
    CHECK(v.lhs_int == 2);
    CHECK(v.rhs_int == 2);

    auto z13 = FiniteRing::mod(13);
    std::mt19937_64 rng(20240823);
    for (int trial = 0; trial < 60; ++trial) {
        auto a = random_subset(rng, 13, 6);
        auto b = random_subset(rng, 13, 6);
        auto w = check_sum_of_squares(z13, a, b);
        CHECK(w.status == Status::Holds);

        // direct enumeration oracle
        std::set<ElementId> lhs, sq, cross;
        for (ElementId x : a)
            for (ElementId y : b) {
                lhs.insert(z13.add(z13.mul(x, x), z13.mul(y, y)));
                sq.insert(z13.mul(z13.add(x, y), z13.add(x, y)));
                cross.insert(z13.add(z13.mul(x, y), z13.mul(y, x)));
            }
        CHECK(w.lhs_int == BigInt(static_cast<unsigned long>(lhs.size())));
        CHECK(w.rhs_int == BigInt(static_cast<unsigned long>(sq.size() * cross.size())));
    }

    CHECK(thrown_code([&] { check_sum_of_squares(z2, {}, {0}); }) == "EmptyOperand");
}

TEST_CASE("lexicographic representatives pass the structural checks") {
    auto z5 = FiniteGroup::cyclic(5);
    auto f = sum_function(z5, {{0, 1}, {0, 2}, {0, 1, 4}});
    std::vector<SubsetMask> all;
    for (SubsetMask m = 1; m < 8; ++m) all.push_back(m);
    auto v = check_section_injectivity(f, all);
    CHECK(v.status == Status::Holds);
    CHECK(v.lhs_int == 0);
    for (const auto& row : v.witness.at("sections"))
        CHECK(row.at("section_determined").get<bool>());

    auto ground = GroundFamily::of({{0, 1, 2}, {0}}, 3);
    auto collapse = PDFunction::custom(
        ground,
        [](SubsetMask mask, const std::vector<ElementId>& t) {
            if (mask == 0b01) return Value::integer(static_cast<long>(t[0] % 2));
            if (mask == 0b10) return Value::integer(0L);
            return Value::integer(static_cast<long>(t[0]));
        },
        "keep-first-mod-2");
    CHECK(thrown_code([&] { check_section_injectivity(collapse, {0b01}); }) == "NotPD");
}

TEST_CASE("fiber weighted joint makes the image exactly uniform") {
    auto z6 = FiniteGroup::cyclic(6);
    auto f = sum_function(z6, {{0, 1}, {0, 2}});
    auto v = check_uniform_pushforward(f);
    CHECK(v.status == Status::Holds);
    CHECK(v.lhs_int == 0);
    CHECK(v.witness.at("H_bits").get<double>() ==
          doctest::Approx(v.witness.at("log2_image").get<double>()).epsilon(1e-12));
}
