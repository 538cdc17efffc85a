#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "fkg/json_io.hpp"
#include "fkg/verify.hpp"

using namespace fkg;

namespace {

Rational r(long p, long q = 1) {
    Rational x(p, q);
    x.canonicalize();
    return x;
}

std::array<Rational, 3> triple(const Rational& a, const Rational& b, const Rational& c) {
    return {a, b, c};
}

}  // namespace

TEST_CASE("generated instances satisfy their construction guarantees") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        InstanceGenConfig cfg;
        cfg.shape = seed % 2 == 0 ? LatticeShape({4, 4}) : LatticeShape({2, 2, 3});
        cfg.seed = seed;
        cfg.function_mode = seed % 3 == 0 ? FunctionMode::indicator_mixture : FunctionMode::increment_sum;
        const Instance inst = generate_instance(cfg, 3);
        CHECK(inst.measure.is_normalized());
        CHECK(is_mtp2(inst.measure));
        for (const LatticeFunction& f : inst.functions) {
            CHECK(is_increasing(f));
            CHECK(is_nonnegative(f));
        }
    }
}

TEST_CASE("identical seeds reproduce identical instances") {
    InstanceGenConfig cfg;
    cfg.shape = LatticeShape({3, 3});
    cfg.seed = 42;
    const Instance a = generate_instance(cfg, 4);
    const Instance b = generate_instance(cfg, 4);
    CHECK(a.measure.weights() == b.measure.weights());
    for (std::size_t i = 0; i < a.functions.size(); ++i)
        CHECK(a.functions[i].values() == b.functions[i].values());
}

TEST_CASE("uniform mode and trivial potentials") {
    InstanceGenConfig cfg;
    cfg.shape = LatticeShape({2, 2});
    cfg.seed = 3;
    cfg.measure_mode = MeasureMode::uniform;
    SplitMix64 rng(cfg.seed);
    const LatticeMeasure mu = generate_measure(rng, cfg);
    for (std::size_t i = 0; i < mu.size(); ++i) CHECK(mu.weight(i) == r(1, 4));

    // a pairwise potential with every interaction factor equal to 1 is a
    // product measure: it factorizes through its coordinate marginals
    const LatticeShape shape({3, 4});
    std::vector<Rational> w(shape.size());
    const std::array<Rational, 3> s0{r(1, 2), r(2), r(3, 5)};
    const std::array<Rational, 4> s1{r(1), r(1, 3), r(5), r(2, 7)};
    for (std::size_t rank = 0; rank < shape.size(); ++rank) {
        const LatticePoint p = point_at(shape, rank);
        w[rank] = s0[static_cast<std::size_t>(p.coords[0])] *
                  s1[static_cast<std::size_t>(p.coords[1])];
    }
    const LatticeMeasure product = LatticeMeasure(shape, w).normalized();
    CHECK(is_mtp2(product));
    const LatticeMeasure m0 = marginalize(product, CoordSubset::of(2, {0}));
    const LatticeMeasure m1 = marginalize(product, CoordSubset::of(2, {1}));
    for (std::size_t rank = 0; rank < shape.size(); ++rank) {
        const LatticePoint p = point_at(shape, rank);
        CHECK(product.weight(rank) ==
              m0.weight(static_cast<std::size_t>(p.coords[0])) *
                  m1.weight(static_cast<std::size_t>(p.coords[1])));
    }
}

TEST_CASE("sweep finds no violations for the conjugate kind") {
    InstanceGenConfig cfg;
    cfg.shape = LatticeShape({2, 2, 2});
    cfg.seed = 1;
    const SweepReport report = sweep(CumulantSpec::conjugate(3), cfg, 200);
    CHECK(report.trials == 200);
    CHECK(report.violations == 0);
    CHECK_FALSE(report.first_witness.has_value());
    CHECK(report.min_value >= 0);
}

TEST_CASE("sweep results do not depend on the worker count") {
    InstanceGenConfig cfg;
    cfg.shape = LatticeShape({2, 2});
    cfg.seed = 9;
    setenv("FKG_THREADS", "1", 1);
    const SweepReport one = sweep(CumulantSpec::conjugate(3), cfg, 60);
    setenv("FKG_THREADS", "4", 1);
    const SweepReport four = sweep(CumulantSpec::conjugate(3), cfg, 60);
    unsetenv("FKG_THREADS");
    CHECK(one.violations == four.violations);
    CHECK(one.min_value == four.min_value);
    CHECK(one.min_value_trial == four.min_value_trial);
}

TEST_CASE("plain third cumulant admits negative values under MTP2") {
    InstanceGenConfig cfg;
    cfg.shape = LatticeShape({2, 2, 2});
    cfg.seed = 2;
    const SweepReport report = sweep(CumulantSpec::cumulant(3), cfg, 400);
    REQUIRE(report.first_witness.has_value());
    const Witness& w = *report.first_witness;
    CHECK(w.value < 0);
    // replay: the stored instance reproduces the stored value exactly
    CHECK(evaluate_kappa(w.spec, w.measure, w.functions) == w.value);
    CHECK(is_mtp2(w.measure));
}

TEST_CASE("dropping nonnegativity breaks the conjugate inequality") {
    InstanceGenConfig cfg;
    cfg.shape = LatticeShape({2, 2});
    cfg.seed = 4;
    cfg.allow_negative_functions = true;
    const SweepReport report = sweep(CumulantSpec::conjugate(3), cfg, 400);
    REQUIRE(report.first_witness.has_value());
    CHECK(report.first_witness->value < 0);
    bool some_negative_value = false;
    for (const LatticeFunction& f : report.first_witness->functions)
        if (!is_nonnegative(f)) some_negative_value = true;
    CHECK(some_negative_value);
}

TEST_CASE("conditioning gap difference on the fixed parameter sets") {
    // frozen exact values; within this (supermodular) increment family the
    // difference never goes negative, see the witness test below for the
    // instance that actually flips the sign
    const Rational set_one = conditioning_gap_difference(
        triple(r(1), r(2), r(3)), triple(r(1), r(2), r(3)), triple(r(4), r(5), r(6)),
        triple(r(1, 10), r(2, 10), r(3, 10)));
    CHECK(set_one == r(231603, 3200));

    const Rational set_two = conditioning_gap_difference(
        triple(r(1), r(2), r(3)), triple(r(1), r(2), r(3)), triple(r(1), r(2), r(3)),
        triple(r(1), r(2), r(3)));
    CHECK(set_two == r(3884, 75));
    CHECK(set_two > 0);

    const Rational zeros = conditioning_gap_difference(
        triple(r(0), r(0), r(0)), triple(r(0), r(0), r(0)), triple(r(0), r(0), r(0)),
        triple(r(0), r(0), r(0)));
    CHECK(zeros == 0);

    CHECK_THROWS_AS(conditioning_gap_difference(triple(r(-1), r(0), r(0)), triple(r(0), r(0), r(0)),
                                                triple(r(0), r(0), r(0)), triple(r(0), r(0), r(0))),
                    std::invalid_argument);
}

TEST_CASE("the one-step gap is not monotone in the conditioning set") {
    const GapWitness w = gap_monotonicity_witness();
    CHECK(is_mtp2(w.measure));
    for (const LatticeFunction& f : w.functions) {
        CHECK(is_increasing(f));
        CHECK(is_nonnegative(f));
    }
    CHECK(w.gap_empty == r(5, 32));
    CHECK(w.gap_first == r(3, 16));
    CHECK(w.difference == r(-1, 32));
    CHECK(w.difference < 0);
    // re-evaluating the stored instance reproduces the stored values
    CHECK(inductive_gap(w.measure, w.functions[0], w.functions[1], w.functions[2],
                        CoordSubset::empty_set(2)) == w.gap_empty);
}

TEST_CASE("indicator case closed forms match the direct evaluation") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        InstanceGenConfig cfg;
        cfg.shape = LatticeShape({4, 4});
        cfg.seed = seed;
        SplitMix64 rng(seed);
        const LatticeMeasure mu = generate_measure(rng, cfg);

        for (int case_id = 1; case_id <= 6; ++case_id) {
            std::array<int, 3> a{}, sorted_b{};
            for (auto& x : a) x = static_cast<int>(rng.below(5));
            for (auto& x : sorted_b) x = static_cast<int>(rng.below(5));
            std::sort(a.begin(), a.end());
            std::sort(sorted_b.begin(), sorted_b.end());
            // place the sorted values into the pattern of the case
            IndicatorTriple t;
            t.a = a;
            switch (case_id) {
                case 1: t.b = {sorted_b[0], sorted_b[1], sorted_b[2]}; break;
                case 2: t.b = {sorted_b[0], sorted_b[2], sorted_b[1]}; break;
                case 3: t.b = {sorted_b[1], sorted_b[0], sorted_b[2]}; break;
                case 4: t.b = {sorted_b[2], sorted_b[0], sorted_b[1]}; break;
                case 5: t.b = {sorted_b[1], sorted_b[2], sorted_b[0]}; break;
                default: t.b = {sorted_b[2], sorted_b[1], sorted_b[0]}; break;
            }
            const Rational value = indicator_case_eval(mu, t, case_id);
            CHECK(value >= 0);  // MTP2 by construction
        }
    }
}

TEST_CASE("indicator case rejects inconsistent orderings") {
    const LatticeMeasure mu = LatticeMeasure::uniform(LatticeShape({3, 3}));
    IndicatorTriple t;
    t.a = {0, 1, 2};
    t.b = {2, 1, 0};  // case 6 pattern
    CHECK_THROWS_AS(indicator_case_eval(mu, t, 1), std::invalid_argument);
    t.a = {2, 1, 0};
    CHECK_THROWS_AS(indicator_case_eval(mu, t, 6), std::invalid_argument);
}

TEST_CASE("covariance split for indicator pairs") {
    SUBCASE("nested case") {
        const LatticeMeasure mu = LatticeMeasure::uniform(LatticeShape({3, 3}));
        const CovSplit s = indicator_cov_decomposition(mu, 1, 2, 1, 2);
        CHECK(s.nested);
        CHECK(s.cov == s.product_term);
    }
    SUBCASE("crossed case on a product measure has a vanishing determinant") {
        std::vector<Rational> w;
        const std::array<Rational, 3> px{r(1, 6), r(1, 2), r(1, 3)};
        const std::array<Rational, 3> py{r(1, 4), r(1, 4), r(1, 2)};
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x) w.push_back(px[static_cast<std::size_t>(x)] * py[static_cast<std::size_t>(y)]);
        const LatticeMeasure mu(LatticeShape({3, 3}), w);
        const CovSplit s = indicator_cov_decomposition(mu, 0, 2, 2, 1);
        CHECK_FALSE(s.nested);
        CHECK(s.determinant == 0);
        CHECK(s.cov == s.product_term);
    }
    SUBCASE("crossed case on random MTP2 grids") {
        for (std::uint64_t seed = 1; seed <= 15; ++seed) {
            InstanceGenConfig cfg;
            cfg.shape = LatticeShape({4, 3});
            cfg.seed = seed;
            SplitMix64 rng(seed);
            const LatticeMeasure mu = generate_measure(rng, cfg);
            const CovSplit s = indicator_cov_decomposition(mu, 1, 3, 2, 1);
            CHECK_FALSE(s.nested);
            CHECK(s.determinant >= 0);
            CHECK(s.product_term >= 0);
            CHECK(s.cov == s.product_term + s.determinant);
            CHECK(s.cov >= 0);
        }
    }
    SUBCASE("gate") {
        const LatticeMeasure mu = LatticeMeasure::uniform(LatticeShape({3, 3}));
        CHECK_THROWS_AS(indicator_cov_decomposition(mu, 2, 1, 0, 0), std::invalid_argument);
    }
}

TEST_CASE("coefficient threshold scan over the indicator class") {
    const IndicatorScanReport report = indicator_coefficient_scan(500, 7);
    CHECK(report.witness_value < 0);
    CHECK(report.witness_value == report.witness_bound);
    CHECK(report.witness_value == r(-589, 500000));
    CHECK(report.violations_at_c1_2 == 0);

    // c1 = 1 also falls to random search
    const auto found = indicator_violation_search(1, 2000, 11);
    REQUIRE(found.has_value());
    CHECK(found->value < 0);
    CHECK(evaluate_kappa(found->spec, found->measure, found->functions) == found->value);
}

TEST_CASE("coefficient box search rediscovers the conjugate vector") {
    const CoefficientSearchReport report = certificate_coefficient_search(3, 3);
    bool found_conjugate = false;
    for (const auto& coeffs : report.passing) {
        const CumulantSpec conj = CumulantSpec::conjugate(3);
        bool same = true;
        for (const auto& [lambda, c] : coeffs)
            if (c != conj.coefficient(lambda)) same = false;
        if (same) found_conjugate = true;
    }
    CHECK(found_conjugate);
    // every reported vector satisfies the zero-sum constraint and certifies
    for (const auto& coeffs : report.passing) {
        const CumulantSpec spec = CumulantSpec::custom(3, coeffs);
        CHECK(zero_sum(spec) == 0);
        CHECK(certify(spec).pass);
    }
}

TEST_CASE("witness JSON round trip replays exactly") {
    InstanceGenConfig cfg;
    cfg.shape = LatticeShape({2, 2, 2});
    cfg.seed = 2;
    const SweepReport report = sweep(CumulantSpec::cumulant(3), cfg, 400);
    REQUIRE(report.first_witness.has_value());
    const json j = witness_to_json(*report.first_witness);
    const Witness replayed = witness_from_json(j);
    CHECK(evaluate_kappa(replayed.spec, replayed.measure, replayed.functions) == replayed.value);
    CHECK(replayed.value == report.first_witness->value);
    // byte-stable serialization
    CHECK(witness_to_json(replayed).dump() == j.dump());
}
