#include "fkg/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <stdexcept>

namespace fkg {

namespace {

int worker_count() {
    const char* env = std::getenv("FKG_THREADS");
    if (!env) return 1;
    const int n = std::atoi(env);
    return n >= 1 ? n : 1;
}

struct ChunkResult {
    int violations = 0;
    std::optional<Witness> first_witness;
    std::optional<Rational> min_value;
    std::uint64_t min_value_trial = 0;
};

ChunkResult run_chunk(const CumulantSpec& spec, const InstanceGenConfig& cfg, int trials,
                      int begin, int step) {
    ChunkResult out;
    for (int t = begin; t < trials; t += step) {
        InstanceGenConfig trial_cfg = cfg;
        trial_cfg.seed = SplitMix64::stream(cfg.seed, static_cast<std::uint64_t>(t)).next();
        const Instance inst = generate_instance(trial_cfg, spec.m());
        const Rational value = evaluate_kappa(spec, inst.measure, inst.functions);
        if (!out.min_value || value < *out.min_value ||
            (value == *out.min_value && static_cast<std::uint64_t>(t) < out.min_value_trial)) {
            out.min_value = value;
            out.min_value_trial = static_cast<std::uint64_t>(t);
        }
        if (value < 0) {
            ++out.violations;
            if (!out.first_witness || static_cast<std::uint64_t>(t) < out.first_witness->trial) {
                out.first_witness = Witness{"value >= 0 for " + spec.id(),
                                            spec,
                                            inst.measure,
                                            inst.functions,
                                            value,
                                            static_cast<std::uint64_t>(t),
                                            cfg.seed};
            }
        }
    }
    return out;
}

}  // namespace

SweepReport sweep(const CumulantSpec& spec, const InstanceGenConfig& cfg, int trials) {
    if (trials < 1)
        throw std::invalid_argument("In fkg::sweep: trials must be >= 1");
    const int workers = std::min(worker_count(), trials);
    std::vector<ChunkResult> chunks;
    if (workers == 1) {
        chunks.push_back(run_chunk(spec, cfg, trials, 0, 1));
    } else {
        std::vector<std::future<ChunkResult>> futures;
        futures.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            futures.push_back(std::async(std::launch::async, run_chunk, std::cref(spec),
                                         std::cref(cfg), trials, w, workers));
        for (auto& f : futures) chunks.push_back(f.get());
    }

    SweepReport report;
    report.trials = trials;
    for (const ChunkResult& c : chunks) {
        report.violations += c.violations;
        if (c.first_witness &&
            (!report.first_witness || c.first_witness->trial < report.first_witness->trial))
            report.first_witness = c.first_witness;
    }
    // deterministic min: smallest value, ties by lowest trial
    bool have_min = false;
    for (const ChunkResult& c : chunks) {
        if (!c.min_value) continue;
        if (!have_min || *c.min_value < report.min_value ||
            (*c.min_value == report.min_value && c.min_value_trial < report.min_value_trial)) {
            report.min_value = *c.min_value;
            report.min_value_trial = c.min_value_trial;
            have_min = true;
        }
    }
    return report;
}

Rational conditioning_gap_difference(const std::array<Rational, 3>& alpha,
                                     const std::array<Rational, 3>& beta,
                                     const std::array<Rational, 3>& gamma,
                                     const std::array<Rational, 3>& delta) {
    for (const auto* arr : {&alpha, &beta, &gamma, &delta})
        for (const Rational& x : *arr)
            if (x < 0)
                throw std::invalid_argument(
                    "In fkg::conditioning_gap_difference: parameters must be >= 0");

    const LatticeShape shape({2, 2});
    const LatticeMeasure mu(shape, {Rational(1, 2), Rational(1, 8), Rational(1, 8), Rational(1, 4)});
    std::vector<LatticeFunction> fs;
    for (int i = 0; i < 3; ++i) {
        const auto k = static_cast<std::size_t>(i);
        fs.emplace_back(shape, std::vector<Rational>{alpha[k], alpha[k] + beta[k],
                                                     alpha[k] + gamma[k],
                                                     alpha[k] + beta[k] + gamma[k] + delta[k]});
    }
    const Rational g_empty =
        inductive_gap(mu, fs[0], fs[1], fs[2], CoordSubset::empty_set(2));
    const Rational g_first =
        inductive_gap(mu, fs[0], fs[1], fs[2], CoordSubset::of(2, {0}));
    return g_empty - g_first;
}

GapWitness gap_monotonicity_witness() {
    const LatticeShape shape({2, 2});
    GapWitness w{LatticeMeasure::uniform(shape),
                 {LatticeFunction(shape, {Rational(0), Rational(0), Rational(1), Rational(1)}),
                  LatticeFunction(shape, {Rational(0), Rational(1), Rational(1), Rational(1)}),
                  LatticeFunction(shape, {Rational(0), Rational(1), Rational(1), Rational(1)})},
                 0,
                 0,
                 0};
    w.gap_empty = inductive_gap(w.measure, w.functions[0], w.functions[1], w.functions[2],
                                CoordSubset::empty_set(2));
    w.gap_first = inductive_gap(w.measure, w.functions[0], w.functions[1], w.functions[2],
                                CoordSubset::of(2, {0}));
    w.difference = w.gap_empty - w.gap_first;
    if (w.difference != Rational(-1, 32))
        throw std::logic_error("In fkg::gap_monotonicity_witness: frozen value drifted");
    return w;
}

LatticeFunction northeast_indicator(const LatticeShape& grid, int a, int b) {
    if (grid.dims() != 2)
        throw std::invalid_argument("In fkg::northeast_indicator: grid must have 2 coordinates");
    if (a < 0 || a > grid.chain_lengths()[0] || b < 0 || b > grid.chain_lengths()[1])
        throw std::invalid_argument("In fkg::northeast_indicator: threshold out of range");
    std::vector<Rational> values(grid.size(), Rational(0));
    for (std::size_t r = 0; r < grid.size(); ++r) {
        const LatticePoint p = point_at(grid, r);
        if (p.coords[0] >= a && p.coords[1] >= b) values[r] = 1;
    }
    return LatticeFunction(grid, std::move(values));
}

namespace {

// rho_ij = P(X1 >= a_i, X2 >= b_j)
Rational tail_probability(const LatticeMeasure& grid, int a, int b) {
    Rational sum = 0;
    for (std::size_t r = 0; r < grid.size(); ++r) {
        const LatticePoint p = point_at(grid.shape(), r);
        if (p.coords[0] >= a && p.coords[1] >= b) sum += grid.weight(r);
    }
    return sum;
}

bool case_ordering_holds(const std::array<int, 3>& b, int case_id) {
    switch (case_id) {
        case 1: return b[0] <= b[1] && b[1] <= b[2];
        case 2: return b[0] <= b[2] && b[2] <= b[1];
        case 3: return b[1] <= b[0] && b[0] <= b[2];
        case 4: return b[1] <= b[2] && b[2] <= b[0];
        case 5: return b[2] <= b[0] && b[0] <= b[1];
        case 6: return b[2] <= b[1] && b[1] <= b[0];
        default:
            throw std::invalid_argument("In fkg::indicator_case_eval: case must be 1..6");
    }
}

}  // namespace

Rational indicator_case_eval(const LatticeMeasure& grid, const IndicatorTriple& t, int case_id) {
    if (grid.shape().dims() != 2)
        throw std::invalid_argument("In fkg::indicator_case_eval: grid must have 2 coordinates");
    if (!grid.is_normalized())
        throw std::invalid_argument("In fkg::indicator_case_eval: measure is not normalized");
    if (!(t.a[0] <= t.a[1] && t.a[1] <= t.a[2]))
        throw std::invalid_argument("In fkg::indicator_case_eval: a-thresholds must be ascending");
    if (!case_ordering_holds(t.b, case_id))
        throw std::invalid_argument(
            "In fkg::indicator_case_eval: b-thresholds inconsistent with the requested case");

    auto rho = [&](int i, int j) {
        return tail_probability(grid, t.a[static_cast<std::size_t>(i - 1)],
                                t.b[static_cast<std::size_t>(j - 1)]);
    };
    Rational closed;
    switch (case_id) {
        case 1:
            closed = (Rational(2) - rho(1, 1)) * (Rational(1) - rho(2, 2)) * rho(3, 3);
            break;
        case 2:
            closed = (Rational(2) - rho(1, 1)) * (rho(3, 2) - rho(3, 3) * rho(2, 2));
            break;
        case 3:
            closed = rho(3, 3) * (Rational(1) - rho(2, 1) +
                                  (Rational(1) - rho(1, 1)) * (Rational(1) - rho(2, 2)));
            break;
        case 4:
            closed = (Rational(1) - rho(2, 2)) * (rho(3, 1) - rho(3, 3) * rho(1, 1)) + rho(3, 1) -
                     rho(2, 1) * rho(3, 3);
            break;
        case 5:
            closed = (Rational(1) - rho(1, 1)) * (rho(3, 2) - rho(3, 3) * rho(2, 2)) + rho(3, 2) -
                     rho(3, 1) * rho(2, 2);
            break;
        case 6:
            // middle term: E(f1f2f3) - E(f1f2) E(f3), nonnegative by the
            // second-order inequality
            closed = (Rational(1) - rho(2, 2)) * (rho(3, 1) - rho(3, 3) * rho(1, 1)) +
                     (rho(3, 1) - rho(2, 1) * rho(3, 3)) + rho(1, 1) * (rho(3, 3) - rho(3, 2));
            break;
        default:
            throw std::invalid_argument("In fkg::indicator_case_eval: case must be 1..6");
    }

    std::vector<LatticeFunction> fs;
    for (int j = 0; j < 3; ++j)
        fs.push_back(northeast_indicator(grid.shape(), t.a[static_cast<std::size_t>(j)],
                                         t.b[static_cast<std::size_t>(j)]));
    const Rational direct = evaluate_kappa(CumulantSpec::conjugate(3), grid, fs);
    if (closed != direct)
        throw std::logic_error(
            "In fkg::indicator_case_eval: closed form disagrees with the direct evaluation");
    return closed;
}

CovSplit indicator_cov_decomposition(const LatticeMeasure& grid, int a1, int a2, int b1, int b2) {
    if (grid.shape().dims() != 2)
        throw std::invalid_argument("In fkg::indicator_cov_decomposition: grid must have 2 coordinates");
    if (!grid.is_normalized())
        throw std::invalid_argument("In fkg::indicator_cov_decomposition: measure is not normalized");
    if (a1 > a2)
        throw std::invalid_argument("In fkg::indicator_cov_decomposition: requires a1 <= a2");

    const LatticeFunction f1 = northeast_indicator(grid.shape(), a1, b1);
    const LatticeFunction f2 = northeast_indicator(grid.shape(), a2, b2);
    const Rational e1 = expectation(grid, f1);
    const Rational e2 = expectation(grid, f2);
    const Rational e12 = expectation(grid, pointwise_product(f1, f2));

    CovSplit out;
    out.cov = e12 - e1 * e2;
    if (b1 <= b2) {
        out.nested = true;
        out.product_term = e2 * (Rational(1) - e1);
        out.determinant = 0;
        if (out.cov != out.product_term)
            throw std::logic_error(
                "In fkg::indicator_cov_decomposition: nested form disagrees with covariance");
        return out;
    }
    // b1 > b2: E(f1 f2) is the tail at (a2, b1); split off the joint-tail
    // determinant | rho(a1,b2) rho(a1,b1) ; rho(a2,b2) rho(a2,b1) |
    const Rational r11 = tail_probability(grid, a1, b1);
    const Rational r12 = tail_probability(grid, a1, b2);
    const Rational r21 = tail_probability(grid, a2, b1);
    const Rational r22 = tail_probability(grid, a2, b2);
    out.nested = false;
    out.product_term = r21 * (Rational(1) - r12);
    out.determinant = r12 * r21 - r11 * r22;
    if (out.product_term + out.determinant != out.cov)
        throw std::logic_error(
            "In fkg::indicator_cov_decomposition: split does not sum to the covariance");
    if (is_mtp2(grid) && out.determinant < 0)
        throw std::logic_error(
            "In fkg::indicator_cov_decomposition: negative determinant under an MTP2 measure");
    return out;
}

CumulantSpec c1_variant_spec(long c1) {
    std::map<Partition, Integer> coeffs;
    coeffs.emplace(Partition({3}), Integer(c1));
    coeffs.emplace(Partition({2, 1}), Integer(-1));
    coeffs.emplace(Partition({1, 1, 1}), Integer(3 - c1));
    return CumulantSpec::custom(3, std::move(coeffs));
}

namespace {

// product measure on a (3,3) grid from two chain marginals
LatticeMeasure product_grid_measure(const std::vector<Rational>& px,
                                    const std::vector<Rational>& py) {
    const LatticeShape shape({static_cast<int>(px.size()), static_cast<int>(py.size())});
    std::vector<Rational> w(shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r) {
        const LatticePoint p = point_at(shape, r);
        w[r] = px[static_cast<std::size_t>(p.coords[0])] * py[static_cast<std::size_t>(p.coords[1])];
    }
    return LatticeMeasure(shape, std::move(w));
}

}  // namespace

IndicatorScanReport indicator_coefficient_scan(int trials, std::uint64_t seed) {
    IndicatorScanReport report{
        // marginals (1/10, 8/10, 1/10): pi1 = pi2 = 81/100 > 1/2, pi3 = 1/100 > 0,
        // so the bound pi3 (1-pi1)(1-2 pi2) is negative and attained at c1 = 1
        product_grid_measure({Rational(1, 10), Rational(8, 10), Rational(1, 10)},
                             {Rational(1, 10), Rational(8, 10), Rational(1, 10)}),
        IndicatorTriple{{1, 1, 2}, {1, 1, 2}},
        Rational(0),
        Rational(0),
        trials,
        0};

    const LatticeMeasure& mu = report.witness_measure;
    if (!is_mtp2(mu))
        throw std::logic_error("In fkg::indicator_coefficient_scan: witness measure is not MTP2");
    const IndicatorTriple& t = report.witness_thresholds;
    std::vector<LatticeFunction> fs;
    for (int j = 0; j < 3; ++j)
        fs.push_back(northeast_indicator(mu.shape(), t.a[static_cast<std::size_t>(j)],
                                         t.b[static_cast<std::size_t>(j)]));
    report.witness_value = evaluate_kappa(c1_variant_spec(1), mu, fs);
    const Rational pi1 = expectation(mu, fs[0]);
    const Rational pi2 = expectation(mu, fs[1]);
    const Rational pi3 = expectation(mu, fs[2]);
    report.witness_bound = pi3 * (Rational(1) - pi1) * (Rational(1) - 2 * pi2);
    if (report.witness_value != report.witness_bound || report.witness_value >= 0)
        throw std::logic_error(
            "In fkg::indicator_coefficient_scan: witness does not attain a negative bound");

    const auto found = indicator_violation_search(2, trials, seed);
    report.violations_at_c1_2 = found ? 1 : 0;
    return report;
}

std::optional<Witness> indicator_violation_search(long c1, int trials, std::uint64_t seed) {
    const CumulantSpec spec = c1_variant_spec(c1);
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::stream(seed, static_cast<std::uint64_t>(t));
        InstanceGenConfig cfg;
        const int k1 = 2 + static_cast<int>(rng.below(3));
        const int k2 = 2 + static_cast<int>(rng.below(3));
        cfg.shape = LatticeShape({k1, k2});
        cfg.seed = rng.next();
        SplitMix64 mrng(cfg.seed);
        const LatticeMeasure mu = generate_measure(mrng, cfg);
        IndicatorTriple thr;
        for (int j = 0; j < 3; ++j) {
            thr.a[static_cast<std::size_t>(j)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(k1 + 1)));
            thr.b[static_cast<std::size_t>(j)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(k2 + 1)));
        }
        std::sort(thr.a.begin(), thr.a.end());
        std::vector<LatticeFunction> fs;
        for (int j = 0; j < 3; ++j)
            fs.push_back(northeast_indicator(mu.shape(), thr.a[static_cast<std::size_t>(j)],
                                             thr.b[static_cast<std::size_t>(j)]));
        const Rational value = evaluate_kappa(spec, mu, fs);
        if (value < 0)
            return Witness{"indicator-class value >= 0 at c1=" + std::to_string(c1),
                           spec,
                           mu,
                           std::move(fs),
                           value,
                           static_cast<std::uint64_t>(t),
                           seed};
    }
    return std::nullopt;
}

CoefficientSearchReport certificate_coefficient_search(int m, long box, int cap) {
    if (box < 1)
        throw std::invalid_argument("In fkg::certificate_coefficient_search: box must be >= 1");
    CoefficientSearchReport report;
    report.m = m;
    report.box = box;
    const auto partitions = enumerate_partitions(m);
    const std::size_t k = partitions.size();
    std::vector<Integer> counts;
    counts.reserve(k);
    for (const Partition& lambda : partitions) counts.push_back(split_count_of_type(lambda));

    std::vector<long> c(k, -box);
    while (true) {
        Integer zs = 0;
        bool all_zero = true;
        for (std::size_t i = 0; i < k; ++i) {
            zs += counts[i] * c[i];
            if (c[i] != 0) all_zero = false;
        }
        if (!all_zero && zs == 0) {
            std::map<Partition, Integer> coeffs;
            for (std::size_t i = 0; i < k; ++i) coeffs.emplace(partitions[i], Integer(c[i]));
            const CumulantSpec spec = CumulantSpec::custom(m, coeffs);
            if (certify(spec, cap).pass) {
                bool nonzero = true;
                for (std::size_t i = 0; i < k; ++i)
                    if (c[i] == 0) nonzero = false;
                report.passing.push_back(std::move(coeffs));
                report.all_nonzero.push_back(nonzero);
            }
        }
        // odometer
        std::size_t pos = 0;
        while (pos < k && c[pos] == box) {
            c[pos] = -box;
            ++pos;
        }
        if (pos == k) break;
        ++c[pos];
    }
    return report;
}

}  // namespace fkg
