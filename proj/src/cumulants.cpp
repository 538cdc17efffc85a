#include "fkg/cumulants.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace fkg {

std::string to_string(SpecKind kind) {
    switch (kind) {
        case SpecKind::cumulant: return "cumulant";
        case SpecKind::conjugate: return "conjugate";
        case SpecKind::custom: return "custom";
    }
    return "?";
}

Integer partition_coefficient(const Partition& lambda, SpecKind kind) {
    if (kind == SpecKind::custom)
        throw std::invalid_argument("In fkg::partition_coefficient: custom kind has no closed form");
    const int l = lambda.length();
    const int order = kind == SpecKind::cumulant ? l : lambda.conjugate().length();
    Integer c = factorial(static_cast<unsigned long>(order - 1));
    if (l % 2 == 0) c = -c;
    return c;
}

CumulantSpec::CumulantSpec(int m, SpecKind kind, std::map<Partition, Integer> coeffs)
    : m_(m), kind_(kind), coeffs_(std::move(coeffs)) {
    if (m < 1)
        throw std::invalid_argument("In fkg::CumulantSpec: m must be >= 1");
    const auto all = enumerate_partitions(m);
    if (coeffs_.size() != all.size())
        throw std::invalid_argument("In fkg::CumulantSpec: coefficient map must cover every partition of m");
    for (const Partition& lambda : all)
        if (!coeffs_.contains(lambda))
            throw std::invalid_argument("In fkg::CumulantSpec: missing coefficient for a partition of m");
}

CumulantSpec CumulantSpec::cumulant(int m) {
    std::map<Partition, Integer> coeffs;
    for (const Partition& lambda : enumerate_partitions(m))
        coeffs.emplace(lambda, partition_coefficient(lambda, SpecKind::cumulant));
    return CumulantSpec(m, SpecKind::cumulant, std::move(coeffs));
}

CumulantSpec CumulantSpec::conjugate(int m) {
    std::map<Partition, Integer> coeffs;
    for (const Partition& lambda : enumerate_partitions(m))
        coeffs.emplace(lambda, partition_coefficient(lambda, SpecKind::conjugate));
    return CumulantSpec(m, SpecKind::conjugate, std::move(coeffs));
}

CumulantSpec CumulantSpec::custom(int m, std::map<Partition, Integer> coeffs) {
    return CumulantSpec(m, SpecKind::custom, std::move(coeffs));
}

const Integer& CumulantSpec::coefficient(const Partition& lambda) const {
    const auto it = coeffs_.find(lambda);
    if (it == coeffs_.end())
        throw std::invalid_argument("In fkg::CumulantSpec::coefficient: not a partition of m");
    return it->second;
}

std::string CumulantSpec::id() const {
    return to_string(kind_) + " m=" + std::to_string(m_);
}

Rational evaluate_kappa(const CumulantSpec& spec, const LatticeMeasure& mu,
                        std::span<const LatticeFunction> fs) {
    const int m = spec.m();
    if (static_cast<int>(fs.size()) != m)
        throw std::invalid_argument("In fkg::evaluate_kappa: expected " + std::to_string(m) +
                                    " functions");
    for (const LatticeFunction& f : fs)
        if (!(f.shape() == mu.shape()))
            throw std::invalid_argument("In fkg::evaluate_kappa: shape mismatch");
    if (!mu.is_normalized())
        throw std::invalid_argument("In fkg::evaluate_kappa: measure is not normalized");

    // E(prod_{i in S} f_i) for every subset S, by peeling the lowest bit.
    const std::size_t nsub = std::size_t{1} << m;
    const std::size_t npts = mu.size();
    std::vector<std::vector<Rational>> prod(nsub);
    prod[0].assign(npts, Rational(1));
    std::vector<Rational> block_expect(nsub, Rational(0));
    for (std::size_t s = 1; s < nsub; ++s) {
        const int low = std::countr_zero(s);
        const std::vector<Rational>& base = prod[s & (s - 1)];
        const LatticeFunction& f = fs[static_cast<std::size_t>(low)];
        auto& cur = prod[s];
        cur.resize(npts);
        Rational e = 0;
        for (std::size_t r = 0; r < npts; ++r) {
            cur[r] = base[r] * f.value(r);
            e += mu.weight(r) * cur[r];
        }
        block_expect[s] = e;
    }

    Rational sum = 0;
    for (const auto& [lambda, c] : spec.coefficients()) {
        if (c == 0) continue;
        Rational type_sum = 0;
        for (const BlockSplit& split : splits_of_type(lambda, m)) {
            Rational term = 1;
            for (std::uint32_t block : split.blocks()) term *= block_expect[block];
            type_sum += term;
        }
        sum += Rational(c) * type_sum;
    }
    return sum;
}

Integer zero_sum(const CumulantSpec& spec) {
    Integer sum = 0;
    for (const auto& [lambda, c] : spec.coefficients())
        sum += split_count_of_type(lambda) * c;
    return sum;
}

void FormalMomentPolynomial::add_term(Key key, const Integer& coeff) {
    std::sort(key.begin(), key.end());
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        if (coeff != 0) terms_.emplace(std::move(key), coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

FormalMomentPolynomial FormalMomentPolynomial::substitute_one(int pos) const {
    const std::uint32_t bit = std::uint32_t{1} << pos;
    FormalMomentPolynomial out;
    for (const auto& [key, coeff] : terms_) {
        Key contracted;
        contracted.reserve(key.size());
        for (std::uint32_t mask : key) {
            const std::uint32_t reduced = mask & ~bit;
            if (reduced != 0) contracted.push_back(reduced);
        }
        out.add_term(std::move(contracted), coeff);
    }
    return out;
}

std::optional<Rational> FormalMomentPolynomial::proportional_to(
    const FormalMomentPolynomial& other) const {
    if (is_zero()) return Rational(0);
    if (other.is_zero()) return std::nullopt;
    if (terms_.size() != other.terms_.size()) return std::nullopt;
    std::optional<Rational> ratio;
    auto it = terms_.begin();
    auto jt = other.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (it->first != jt->first) return std::nullopt;
        Rational r = Rational(it->second) / Rational(jt->second);
        if (!ratio)
            ratio = r;
        else if (*ratio != r)
            return std::nullopt;
    }
    return ratio;
}

FormalMomentPolynomial formal_kappa(const CumulantSpec& spec, int cap) {
    FormalMomentPolynomial out;
    for (const auto& [lambda, c] : spec.coefficients()) {
        if (c == 0) continue;
        for (const BlockSplit& split : splits_of_type(lambda, cap))
            out.add_term(split.blocks(), c);
    }
    return out;
}

ReductionResult reduction_check(int m, SpecKind kind, int cap) {
    if (m < 3)
        throw std::invalid_argument("In fkg::reduction_check: m must be >= 3");
    if (m > cap)
        throw std::invalid_argument("In fkg::reduction_check: m exceeds cap");
    const CumulantSpec spec_m =
        kind == SpecKind::cumulant ? CumulantSpec::cumulant(m) : CumulantSpec::conjugate(m);
    const CumulantSpec spec_prev =
        kind == SpecKind::cumulant ? CumulantSpec::cumulant(m - 1) : CumulantSpec::conjugate(m - 1);
    const FormalMomentPolynomial contracted = formal_kappa(spec_m, cap).substitute_one(m - 1);
    const FormalMomentPolynomial prev = formal_kappa(spec_prev, cap);
    const auto d = contracted.proportional_to(prev);
    if (!d) return ReductionResult{false, Rational(0)};
    return ReductionResult{true, *d};
}

}  // namespace fkg
