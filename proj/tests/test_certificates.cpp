#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "fkg/certificates.hpp"
#include "fkg/generators.hpp"
#include "fkg/verify.hpp"

using namespace fkg;

namespace {

Rational r(long p, long q = 1) {
    Rational x(p, q);
    x.canonicalize();
    return x;
}

// exponent vector over (w1, w2, u1..um, v1..vm); indicator indices are 1-based
std::vector<int> expo(int m, int w1, int w2, std::initializer_list<int> us,
                      std::initializer_list<int> vs) {
    std::vector<int> e(static_cast<std::size_t>(2 + 2 * m), 0);
    e[0] = w1;
    e[1] = w2;
    for (int i : us) e[static_cast<std::size_t>(1 + i)] += 1;
    for (int i : vs) e[static_cast<std::size_t>(1 + m + i)] += 1;
    return e;
}

Rational random_rational(SplitMix64& rng, bool nonneg = true) {
    const long num = static_cast<long>(rng.below(12)) - (nonneg ? 0 : 5);
    const long den = 1 + static_cast<long>(rng.below(4));
    Rational x(num, den);
    x.canonicalize();
    return x;
}

}  // namespace

TEST_CASE("fiber polynomials match their displays at m=3") {
    const auto names = fiber_variables(3);

    {
        // (w1+w2)^2 (w1 u1u2u3 + w2 v1v2v3)
        Polynomial inner(names);
        inner.add_term(expo(3, 1, 0, {1, 2, 3}, {}), 1);
        inner.add_term(expo(3, 0, 1, {}, {1, 2, 3}), 1);
        const Polynomial wsum = Polynomial::variable(names, 0) + Polynomial::variable(names, 1);
        CHECK(build_p_poly(Partition({3}), 3) == wsum * wsum * inner);
    }

    {
        // product of the three linear fiber factors
        Polynomial expected = Polynomial::constant(names, 1);
        for (int i = 1; i <= 3; ++i) {
            Polynomial factor(names);
            factor.add_term(expo(3, 1, 0, {i}, {}), 1);
            factor.add_term(expo(3, 0, 1, {}, {i}), 1);
            expected = expected * factor;
        }
        CHECK(build_p_poly(Partition({1, 1, 1}), 3) == expected);
    }

    {
        // (w1+w2) * sum over the three pair|singleton splits
        Polynomial split_sum = Polynomial::zero(names);
        const std::array<std::array<int, 3>, 3> arrangements{{{1, 2, 3}, {1, 3, 2}, {2, 3, 1}}};
        for (const auto& arr : arrangements) {
            Polynomial pair(names), single(names);
            pair.add_term(expo(3, 1, 0, {arr[0], arr[1]}, {}), 1);
            pair.add_term(expo(3, 0, 1, {}, {arr[0], arr[1]}), 1);
            single.add_term(expo(3, 1, 0, {arr[2]}, {}), 1);
            single.add_term(expo(3, 0, 1, {}, {arr[2]}), 1);
            split_sum += pair * single;
        }
        const Polynomial wsum = Polynomial::variable(names, 0) + Polynomial::variable(names, 1);
        CHECK(build_p_poly(Partition({2, 1}), 3) == wsum * split_sum);
    }
}

TEST_CASE("pair fiber polynomial keeps its weight prefactor at m=2") {
    const auto names = fiber_variables(2);
    Polynomial inner(names);
    inner.add_term(expo(2, 1, 0, {1, 2}, {}), 1);
    inner.add_term(expo(2, 0, 1, {}, {1, 2}), 1);
    const Polynomial wsum = Polynomial::variable(names, 0) + Polynomial::variable(names, 1);
    CHECK(build_p_poly(Partition({2}), 2) == wsum * inner);
}

TEST_CASE("phi at m=2 factors as w1 w2 (u1-v1)(u2-v2)") {
    const auto names = fiber_variables(2);
    Polynomial expected(names);
    expected.add_term(expo(2, 1, 1, {1, 2}, {}), 1);
    expected.add_term(expo(2, 1, 1, {}, {1, 2}), 1);
    expected.add_term(expo(2, 1, 1, {1}, {2}), -1);
    expected.add_term(expo(2, 1, 1, {2}, {1}), -1);
    CHECK(build_phi(CumulantSpec::conjugate(2)) == expected);
}

TEST_CASE("phi collapses on the diagonal to the zero sum") {
    for (int m = 2; m <= 6; ++m) {
        const CumulantSpec spec = CumulantSpec::conjugate(m);
        Polynomial phi = build_phi(spec);
        const auto names = fiber_variables(m);
        for (int i = 0; i < m; ++i)
            phi = phi.substituted(static_cast<std::size_t>(2 + i),
                                  Polynomial::variable(names, static_cast<std::size_t>(2 + m + i)));
        Polynomial expected = Polynomial::constant(names, Rational(zero_sum(spec)));
        const Polynomial wsum = Polynomial::variable(names, 0) + Polynomial::variable(names, 1);
        for (int k = 0; k < m; ++k) expected = expected * wsum;
        std::vector<int> vs(static_cast<std::size_t>(2 + 2 * m), 0);
        for (int i = 0; i < m; ++i) vs[static_cast<std::size_t>(2 + m + i)] = 1;
        Polynomial vprod(names);
        vprod.add_term(vs, 1);
        CHECK(phi == expected * vprod);
        if (m <= 5) CHECK(phi.is_zero());
    }
}

TEST_CASE("shift certificate: m=2 expansion is exactly w1 w2 u1 u2") {
    const Certificate cert = certify(CumulantSpec::conjugate(2));
    CHECK(cert.pass);
    CHECK(cert.monomial_count == 1);
    Polynomial expected(fiber_variables(2));
    expected.add_term(expo(2, 1, 1, {1, 2}, {}), 1);
    CHECK(shifted_phi(CumulantSpec::conjugate(2)) == expected);
}

TEST_CASE("shift certificate: independently derived m=3 expansion") {
    //   w1 w2^2 (2 u1u2u3 + u1u2v3 + u1v2u3 + v1u2u3)
    // + w1^2 w2 (  u1u2u3 + u1u2v3 + u1v2u3 + v1u2u3)
    Polynomial expected(fiber_variables(3));
    expected.add_term(expo(3, 1, 2, {1, 2, 3}, {}), 2);
    expected.add_term(expo(3, 1, 2, {1, 2}, {3}), 1);
    expected.add_term(expo(3, 1, 2, {1, 3}, {2}), 1);
    expected.add_term(expo(3, 1, 2, {2, 3}, {1}), 1);
    expected.add_term(expo(3, 2, 1, {1, 2, 3}, {}), 1);
    expected.add_term(expo(3, 2, 1, {1, 2}, {3}), 1);
    expected.add_term(expo(3, 2, 1, {1, 3}, {2}), 1);
    expected.add_term(expo(3, 2, 1, {2, 3}, {1}), 1);
    CHECK(shifted_phi(CumulantSpec::conjugate(3)) == expected);

    const Certificate cert = certify(CumulantSpec::conjugate(3));
    CHECK(cert.pass);
    CHECK(cert.monomial_count == 8);
    CHECK(cert.offending.empty());
}

TEST_CASE("shift certificates pass through order five") {
    CHECK(certify(CumulantSpec::conjugate(4)).pass);
    CHECK(certify(CumulantSpec::conjugate(5)).pass);
}

TEST_CASE("certificate text is deterministic") {
    const Certificate a = certify(CumulantSpec::conjugate(3));
    const Certificate b = certify(CumulantSpec::conjugate(3));
    CHECK(a.text == b.text);
    CHECK_FALSE(a.text.empty());

    // pinned golden rendering of the order-2 certificate
    const Certificate two = certify(CumulantSpec::conjugate(2));
    CHECK(two.text == "variables: w1 w2 u1 u2 v1 v2\n1 1 1 1 0 0: 1\n");
}

TEST_CASE("numeric soundness spot check") {
    const Polynomial shifted = shifted_phi(CumulantSpec::conjugate(4));
    SplitMix64 rng(99);
    for (int k = 0; k < 50; ++k) {
        std::vector<Rational> point;
        for (std::size_t i = 0; i < shifted.nvars(); ++i) point.push_back(random_rational(rng));
        CHECK(shifted.evaluate(point) >= 0);
    }
}

TEST_CASE("bridge to the two-point chain") {
    // on a 2-chain with mu = (w2, w1)/(w1+w2) and f_i = (v_i, u_i),
    // Phi(u;v) = kappa'_m * (w1+w2)^m; this pins the split-sum rule for
    // the fiber polynomials at every order, not just the displayed ones
    const LatticeShape chain({2});
    for (int m = 2; m <= 6; ++m) {
        const Polynomial phi = build_phi(CumulantSpec::conjugate(m));
        SplitMix64 rng(100 + static_cast<std::uint64_t>(m));
        const int reps = m <= 3 ? 40 : 10;
        for (int k = 0; k < reps; ++k) {
            const Rational w1 = random_rational(rng) + r(1, 7);
            const Rational w2 = random_rational(rng) + r(1, 9);
            std::vector<Rational> point{w1, w2};
            std::vector<LatticeFunction> fs;
            std::vector<Rational> us, vs;
            for (int i = 0; i < m; ++i) {
                const Rational v = random_rational(rng);
                const Rational u = v + random_rational(rng);  // increasing on the chain
                us.push_back(u);
                vs.push_back(v);
                fs.emplace_back(chain, std::vector<Rational>{v, u});
            }
            point.insert(point.end(), us.begin(), us.end());
            point.insert(point.end(), vs.begin(), vs.end());

            const Rational total = w1 + w2;
            const LatticeMeasure mu(chain, {w2 / total, w1 / total});
            const Rational kappa = evaluate_kappa(CumulantSpec::conjugate(m), mu, fs);
            CHECK(phi.evaluate(point) == kappa * pow_rational(total, static_cast<unsigned long>(m)));
        }
    }
}

TEST_CASE("order-6 exploration: certificate passes although the zero sum does not vanish") {
    // recorded outcome, not a stated guarantee: the all-ones sum is 20 at
    // order 6, yet every coefficient of the shifted expansion stays
    // nonnegative, so the one-coordinate induction step goes through
    const Certificate cert = certify(CumulantSpec::conjugate(6));
    CHECK(cert.pass);
    CHECK(cert.monomial_count == 385);
    CHECK(zero_sum(CumulantSpec::conjugate(6)) == 20);

    // corroborating sweep at order 6
    InstanceGenConfig cfg;
    cfg.shape = LatticeShape({2, 2});
    cfg.seed = 61;
    const SweepReport rep = sweep(CumulantSpec::conjugate(6), cfg, 100);
    CHECK(rep.violations == 0);
    CHECK(rep.min_value >= 0);
}

TEST_CASE("duplicated-integrand polynomial identities") {
    const Polynomial j = duplicate_j_polynomial();

    // vanishes when all three points coincide
    {
        SplitMix64 rng(7);
        for (int k = 0; k < 20; ++k) {
            std::vector<Rational> point(9);
            for (int fj = 0; fj < 3; ++fj) {
                const Rational value = random_rational(rng);
                for (int x = 0; x < 3; ++x) point[static_cast<std::size_t>(fj * 3 + x)] = value;
            }
            CHECK(j.evaluate(point) == 0);
        }
    }

    // symmetric under permuting the three points
    {
        SplitMix64 rng(8);
        std::vector<Rational> point(9);
        for (auto& x : point) x = random_rational(rng);
        const Rational base = j.evaluate(point);
        const std::array<std::array<int, 3>, 6> perms{
            {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
        for (const auto& p : perms) {
            std::vector<Rational> permuted(9);
            for (int fj = 0; fj < 3; ++fj)
                for (int x = 0; x < 3; ++x)
                    permuted[static_cast<std::size_t>(fj * 3 + x)] =
                        point[static_cast<std::size_t>(fj * 3 + p[static_cast<std::size_t>(x)])];
            CHECK(j.evaluate(permuted) == base);
        }
    }

    // agrees with the twelve-product expansion on random assignments
    {
        SplitMix64 rng(9);
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<Rational> w(9);
            for (auto& x : w) x = random_rational(rng, false);
            auto f = [&](int fj, int xk) {
                return w[static_cast<std::size_t>((fj - 1) * 3 + (xk - 1))];
            };
            const Rational twelve =
                f(3, 1) * (f(1, 3) - f(1, 1)) * (f(2, 3) - f(2, 1)) +
                f(1, 3) * (f(2, 3) - f(2, 1)) * (f(3, 3) - f(3, 1)) +
                f(2, 1) * (f(1, 3) - f(1, 1)) * (f(3, 3) - f(3, 1)) +
                f(3, 1) * (f(1, 2) - f(1, 1)) * (f(2, 2) - f(2, 1)) +
                f(1, 2) * (f(2, 2) - f(2, 1)) * (f(3, 2) - f(3, 1)) +
                f(2, 1) * (f(1, 2) - f(1, 1)) * (f(3, 2) - f(3, 1)) +
                f(1, 3) * (f(2, 3) - f(2, 2)) * (f(3, 3) - f(3, 2)) +
                f(3, 2) * (f(1, 3) - f(1, 2)) * (f(2, 3) - f(2, 2)) +
                f(2, 3) * (f(1, 3) - f(1, 2)) * (f(3, 3) - f(3, 2)) +
                (f(1, 3) - f(1, 2)) * (f(2, 2) - f(2, 1)) * (f(3, 3) - f(3, 2)) +
                (f(1, 3) - f(1, 1)) * (f(2, 3) - f(2, 2)) * (f(3, 3) - f(3, 2)) +
                (f(1, 3) - f(1, 2)) * (f(2, 3) - f(2, 2)) * (f(3, 2) - f(3, 1));
            CHECK(j.evaluate(w) == twelve);
        }
    }
}

TEST_CASE("duplicate-variables certificate passes in the increment basis") {
    const Certificate cert = duplicate_variables_certificate();
    CHECK(cert.pass);
    CHECK(cert.offending.empty());
    CHECK(cert.monomial_count > 0);
}

TEST_CASE("triple sum of the symmetrized integrand recovers the third-order value") {
    const Polynomial j = duplicate_j_polynomial();
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        SplitMix64 rng(seed);
        const int len = 2 + static_cast<int>(rng.below(3));
        const LatticeShape chain({len});
        InstanceGenConfig cfg;
        cfg.shape = chain;
        cfg.seed = rng.next();
        const Instance inst = generate_instance(cfg, 3);

        Rational triple = 0;
        std::vector<Rational> point(9);
        for (std::size_t p = 0; p < chain.size(); ++p)
            for (std::size_t q = 0; q < chain.size(); ++q)
                for (std::size_t s = 0; s < chain.size(); ++s) {
                    for (int fj = 0; fj < 3; ++fj) {
                        const LatticeFunction& fn = inst.functions[static_cast<std::size_t>(fj)];
                        point[static_cast<std::size_t>(fj * 3 + 0)] = fn.value(p);
                        point[static_cast<std::size_t>(fj * 3 + 1)] = fn.value(q);
                        point[static_cast<std::size_t>(fj * 3 + 2)] = fn.value(s);
                    }
                    triple += inst.measure.weight(p) * inst.measure.weight(q) *
                              inst.measure.weight(s) * j.evaluate(point);
                }
        const Rational kappa =
            evaluate_kappa(CumulantSpec::conjugate(3), inst.measure, inst.functions);
        CHECK(triple == 6 * kappa);
    }
}

TEST_CASE("degenerate slice of passing certificates stays nonnegative") {
    for (int m = 2; m <= 5; ++m) {
        Polynomial shifted = shifted_phi(CumulantSpec::conjugate(m));
        const auto names = fiber_variables(m);
        for (int i = 0; i < m; ++i)
            shifted = shifted.substituted(static_cast<std::size_t>(2 + m + i),
                                          Polynomial::zero(names));
        for (const auto& [e, c] : shifted.terms()) {
            CHECK(c >= 0);
            // every surviving monomial carries both weights
            CHECK(e[0] >= 1);
            CHECK(e[1] >= 1);
        }
    }
}

TEST_CASE("upper-weight slice of phi collapses to the zero sum") {
    // setting w2 = 0 leaves sum_lambda c_lambda card(D(lambda)) * w1^m u1..um
    for (int m = 2; m <= 6; ++m) {
        const CumulantSpec spec = CumulantSpec::conjugate(m);
        const auto names = fiber_variables(m);
        const Polynomial sliced = build_phi(spec).substituted(1, Polynomial::zero(names));
        std::vector<int> e(static_cast<std::size_t>(2 + 2 * m), 0);
        e[0] = m;
        for (int i = 0; i < m; ++i) e[static_cast<std::size_t>(2 + i)] = 1;
        Polynomial expected(names);
        expected.add_term(e, Rational(zero_sum(spec)));
        CHECK(sliced == expected);
        if (m <= 5) CHECK(sliced.is_zero());
    }
}
