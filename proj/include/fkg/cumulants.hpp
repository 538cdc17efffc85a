#ifndef FKG_CUMULANTS_HPP_
#define FKG_CUMULANTS_HPP_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fkg/lattice.hpp"
#include "fkg/partitions.hpp"

namespace fkg {

enum class SpecKind { cumulant, conjugate, custom };

std::string to_string(SpecKind kind);

// Coefficient of the partition lambda in the order-m alternating sum:
//   cumulant:  (-1)^(l(lambda)-1) (l(lambda) - 1)!
//   conjugate: (-1)^(l(lambda)-1) (l(lambda') - 1)!
Integer partition_coefficient(const Partition& lambda, SpecKind kind);

// A partition-indexed alternating sum of products of block expectations:
//   P(f_1..f_m) = sum_lambda c_lambda sum_{splits of type lambda}
//                 prod_{blocks S} E(prod_{i in S} f_i).
// kind = cumulant gives kappa_m, conjugate gives kappa'_m.
class CumulantSpec {
public:
    static CumulantSpec cumulant(int m);
    static CumulantSpec conjugate(int m);
    static CumulantSpec custom(int m, std::map<Partition, Integer> coeffs);

    int m() const { return m_; }
    SpecKind kind() const { return kind_; }
    const std::map<Partition, Integer>& coefficients() const { return coeffs_; }
    const Integer& coefficient(const Partition& lambda) const;
    std::string id() const;  // e.g. "conjugate m=3"

private:
    CumulantSpec(int m, SpecKind kind, std::map<Partition, Integer> coeffs);

    int m_;
    SpecKind kind_;
    std::map<Partition, Integer> coeffs_;  // keyed by every partition of m
};

// Exact evaluation on a lattice instance. Block expectations E(prod_{i in S} f_i)
// are cached per subset S, since the number of splits grows like Bell(m).
Rational evaluate_kappa(const CumulantSpec& spec, const LatticeMeasure& mu,
                        std::span<const LatticeFunction> fs);

// sum_lambda card(D(lambda)) c_lambda; equals the spec evaluated on all-ones
// functions against any normalized measure.
Integer zero_sum(const CumulantSpec& spec);

// Formal polynomial in expectation symbols E_S, S a nonempty subset of
// {0..m-1}: a map from multisets of subsets to integer coefficients. Carrier
// for the symbolic contraction check below.
class FormalMomentPolynomial {
public:
    using Key = std::vector<std::uint32_t>;  // sorted block masks

    void add_term(Key key, const Integer& coeff);
    const std::map<Key, Integer>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Substitutes f_pos = 1 (0-based): every symbol E_S contracts to
    // E_{S \ {pos}}, and E_{{pos}} itself becomes the constant 1.
    FormalMomentPolynomial substitute_one(int pos) const;

    // If *this == d * other for a single scalar d, returns d (0 when *this
    // is identically zero); nullopt otherwise.
    std::optional<Rational> proportional_to(const FormalMomentPolynomial& other) const;

private:
    std::map<Key, Integer> terms_;
};

FormalMomentPolynomial formal_kappa(const CumulantSpec& spec, int cap = kDefaultSplitCap);

struct ReductionResult {
    bool proportional = false;
    Rational factor = 0;  // the scalar d when proportional
};

// Symbolically substitutes f_m = 1 in the order-m sum and tests whether the
// contraction equals d times the order-(m-1) sum of the same kind.
ReductionResult reduction_check(int m, SpecKind kind, int cap = kDefaultSplitCap);

}  // namespace fkg

#endif  // FKG_CUMULANTS_HPP_
