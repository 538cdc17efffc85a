#include "fkg/generators.hpp"

#include <stdexcept>

namespace fkg {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
    if (n == 0)
        throw std::invalid_argument("In fkg::SplitMix64::below: empty range");
    return next() % n;
}

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 g(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
    g.next();
    g.next();
    return g;
}

namespace {

constexpr std::size_t kMagnitudeGuardBits = 4096;

Rational small_rational(SplitMix64& rng, int max_num, int min_num = 0) {
    const auto num = static_cast<long>(min_num) +
                     static_cast<long>(rng.below(static_cast<std::uint64_t>(max_num - min_num + 1)));
    const auto den = 1 + static_cast<long>(rng.below(3));
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// z >= 1 with a small fractional part
Rational potential_factor(SplitMix64& rng) {
    const auto num = static_cast<long>(rng.below(3));
    const auto den = 1 + static_cast<long>(rng.below(3));
    Rational r(num, den);
    r.canonicalize();
    return Rational(1) + r;
}

void check_magnitude(const Rational& w) {
    if (mpz_sizeinbase(w.get_num_mpz_t(), 2) > kMagnitudeGuardBits ||
        mpz_sizeinbase(w.get_den_mpz_t(), 2) > kMagnitudeGuardBits)
        throw std::overflow_error("In fkg::generate_measure: weight magnitude exceeds guard");
}

}  // namespace

LatticeMeasure generate_measure(SplitMix64& rng, const InstanceGenConfig& cfg) {
    const LatticeShape& shape = cfg.shape;
    switch (cfg.measure_mode) {
        case MeasureMode::uniform:
            return LatticeMeasure::uniform(shape);
        case MeasureMode::explicit_table:
            if (!cfg.explicit_measure)
                throw std::invalid_argument("In fkg::generate_measure: explicit mode without a measure");
            return cfg.explicit_measure->normalized();
        case MeasureMode::pairwise_potential:
            break;
    }

    const int n = shape.dims();
    std::vector<std::vector<Rational>> separable(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto& s = separable[static_cast<std::size_t>(i)];
        s.resize(static_cast<std::size_t>(shape.chain_lengths()[i]));
        for (Rational& v : s) v = small_rational(rng, cfg.value_bound, 1);
    }
    std::vector<std::vector<Rational>> z(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = potential_factor(rng);

    std::vector<Rational> weights(shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r) {
        const LatticePoint p = point_at(shape, r);
        Rational w = 1;
        for (int i = 0; i < n; ++i)
            w *= separable[static_cast<std::size_t>(i)][static_cast<std::size_t>(p.coords[i])];
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const auto exp =
                    static_cast<unsigned long>(p.coords[i]) * static_cast<unsigned long>(p.coords[j]);
                if (exp > 0)
                    w *= pow_rational(z[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], exp);
            }
        check_magnitude(w);
        weights[r] = std::move(w);
    }
    return LatticeMeasure(shape, std::move(weights)).normalized();
}

LatticeFunction generate_function(SplitMix64& rng, const InstanceGenConfig& cfg) {
    const LatticeShape& shape = cfg.shape;
    if (cfg.function_mode == FunctionMode::explicit_table)
        throw std::invalid_argument("In fkg::generate_function: explicit mode is resolved by the caller");

    std::vector<Rational> values(shape.size());
    if (cfg.function_mode == FunctionMode::increment_sum) {
        // rank order is a linear extension, so lower covers are already set
        const auto& lens = shape.chain_lengths();
        for (std::size_t r = 0; r < shape.size(); ++r) {
            Rational base = 0;
            const LatticePoint p = point_at(shape, r);
            std::size_t stride = 1;
            for (std::size_t i = 0; i < lens.size(); ++i) {
                if (p.coords[i] > 0) {
                    const Rational& below = values[r - stride];
                    if (below > base) base = below;
                }
                stride *= static_cast<std::size_t>(lens[i]);
            }
            values[r] = base + small_rational(rng, 3);
        }
    } else {  // indicator_mixture
        for (Rational& v : values) v = 0;
        const int pieces = 1 + static_cast<int>(rng.below(4));
        for (int k = 0; k < pieces; ++k) {
            const Rational c = small_rational(rng, cfg.value_bound);
            LatticePoint threshold;
            threshold.coords.resize(static_cast<std::size_t>(shape.dims()));
            for (int i = 0; i < shape.dims(); ++i)
                threshold.coords[static_cast<std::size_t>(i)] = static_cast<int>(
                    rng.below(static_cast<std::uint64_t>(shape.chain_lengths()[i])));
            for (std::size_t r = 0; r < shape.size(); ++r)
                if (leq(threshold, point_at(shape, r))) values[r] += c;
        }
    }

    if (cfg.allow_negative_functions) {
        const Rational shift = small_rational(rng, cfg.value_bound, 1);
        for (Rational& v : values) v -= shift;
    }
    return LatticeFunction(shape, std::move(values));
}

Instance generate_instance(const InstanceGenConfig& cfg, int nfunctions) {
    SplitMix64 rng(cfg.seed);
    LatticeMeasure mu = generate_measure(rng, cfg);
    std::vector<LatticeFunction> fs;
    if (cfg.function_mode == FunctionMode::explicit_table) {
        if (static_cast<int>(cfg.explicit_functions.size()) != nfunctions)
            throw std::invalid_argument("In fkg::generate_instance: wrong number of explicit functions");
        fs = cfg.explicit_functions;
    } else {
        fs.reserve(static_cast<std::size_t>(nfunctions));
        for (int k = 0; k < nfunctions; ++k) fs.push_back(generate_function(rng, cfg));
    }

    if (!is_mtp2(mu))
        throw std::logic_error("In fkg::generate_instance: constructed measure failed the MTP2 check");
    for (const LatticeFunction& f : fs) {
        if (!is_increasing(f))
            throw std::logic_error("In fkg::generate_instance: constructed function is not increasing");
        if (!cfg.allow_negative_functions && !is_nonnegative(f))
            throw std::logic_error("In fkg::generate_instance: constructed function takes a negative value");
    }
    return Instance{std::move(mu), std::move(fs)};
}

}  // namespace fkg
