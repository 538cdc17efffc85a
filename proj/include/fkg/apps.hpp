#ifndef FKG_APPS_HPP_
#define FKG_APPS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fkg/cumulants.hpp"
#include "fkg/lattice.hpp"

namespace fkg {

// Exact square rational matrix with the positivity checks needed by the
// submatrix-measure constructions.
class RationalMatrix {
public:
    RationalMatrix(int n, std::vector<Rational> entries);  // row-major
    static RationalMatrix identity(int n);

    int n() const { return n_; }
    const Rational& at(int i, int j) const { return entries_[index(i, j)]; }
    Rational& at(int i, int j) { return entries_[index(i, j)]; }

    bool is_symmetric() const;
    Rational det() const;  // exact, fraction-free elimination
    int rank() const;      // exact
    RationalMatrix principal_submatrix(const std::vector<int>& indices) const;

    // Sylvester: symmetric with positive leading principal minors.
    bool is_positive_definite() const;
    // Symmetric with every principal minor >= 0 (leading minors alone do
    // not decide semidefiniteness).
    bool is_positive_semidefinite() const;

private:
    std::size_t index(int i, int j) const;

    int n_;
    std::vector<Rational> entries_;
};

// Third-order inequality for Bernstein polynomials: builds the binomial
// measure mu(a) ~ x^|a| (1-x)^(n-|a|) on 2^A and f_j(a) = seq_j[|a|], and
// returns 2 B_n(f1 f2 f3) - [pair terms] + B_n f1 B_n f2 B_n f3 at x.
// Sequences hold the n+1 values f(k/n), k = 0..n, and must be nonnegative
// and increasing.
Rational bernstein_check(int n, const Rational& x, const std::vector<Rational>& f1,
                         const std::vector<Rational>& f2, const std::vector<Rational>& f3);

// Thrown when a log-convexity or triangle-property gate fails; carries the
// offending index/triple.
class gate_error : public std::invalid_argument {
public:
    gate_error(const std::string& message, std::vector<int> witness)
        : std::invalid_argument(message), witness_(std::move(witness)) {}
    const std::vector<int>& witness() const { return witness_; }

private:
    std::vector<int> witness_;
};

// Tchebycheff-type third-order sum inequality for a positive log-convex
// weight sequence (sum a_k = 1) and nonnegative increasing sequences
// alpha, beta, gamma; realized as the subset-size measure b_k = a_k / C(n,k)
// on 2^A.
Rational logconvex_check(const std::vector<Rational>& a, const std::vector<Rational>& alpha,
                         const std::vector<Rational>& beta, const std::vector<Rational>& gamma);

class FamilyOfSubsets {
public:
    enum class Closure { up, down, none };

    // members are bitmasks over {0..n-1}; the closure tag is verified.
    FamilyOfSubsets(int n, std::vector<std::uint32_t> members, Closure tag);

    int n() const { return n_; }
    Closure tag() const { return tag_; }
    const std::vector<std::uint32_t>& members() const { return members_; }
    std::size_t card() const { return members_.size(); }
    bool contains(std::uint32_t mask) const;

private:
    int n_;
    std::vector<std::uint32_t> members_;
    std::vector<char> lookup_;
    Closure tag_;
};

// Third-order correlation inequality for families of subsets (U1, U2 closed
// above, L closed below):
//   2^(2n) |U1 n U2| - 2^(2n+1) |U1 n U2 n L|
//   + 2^n (|U1 n U2||L| + |U1 n L||U2| + |U1||U2 n L|)
//   - 2^n |U1||U2| - |U1||U2||L|  >=  0.
// With U2 = 2^A this reduces to 2^n (|U| |L| - 2^n |U n L|) >= 0.
Integer kleitman_check(const FamilyOfSubsets& U1, const FamilyOfSubsets& U2,
                       const FamilyOfSubsets& L);

// Third-order inequality for Hadamard products against a triangle-property
// kernel R (R(i,j) R(k,k) = R(i,k) R(k,j) for k between i and j): returns
// 2 E_R(F1.F2.F3) - [pair terms] + E_R(F1) E_R(F2) E_R(F3), where
// E_R(F) = sum_ij R(i,j) F(i,j). R must be nonnegative and sum to 1; the
// F's must be nonnegative and increasing in both indices.
Rational triangle_hadamard_check(const RationalMatrix& R, const RationalMatrix& F1,
                                 const RationalMatrix& F2, const RationalMatrix& F3);

enum class PsdMeasureKind { rank, det };

struct PsdReport {
    PsdMeasureKind kind = PsdMeasureKind::rank;
    bool exact = true;    // false when the floating det^(-t) backend was used
    bool mtp2 = false;    // exact check (or tolerance check on the float path)
    Rational kappa3 = 0;  // exact path only
    double kappa3_float = 0.0;
    // eigenvalue special case: (sum w)(sum w lmin/lmax) - (sum w lmin)(sum w/lmax)
    bool eigen_example = false;
    double eigen_value = 0.0;
    std::string eigen_status;  // "pass" / "inconclusive" / "violation"
};

// Submatrix-measure construction: mu(a) ~ t^(n - rank M[a]) (M symmetric PSD)
// or mu(a) ~ det M[a]^(-t) (M symmetric positive definite). Asserts MTP2 and
// evaluates the third-order conjugate cumulant on the supplied functions
// over 2^A. The rank measure is exact for any rational t > 0; the det
// measure is exact when t is a positive integer and otherwise falls back to
// binary64 with relative tolerance 1e-9 (|value| below tolerance reports
// "inconclusive", never "pass").
PsdReport psd_measure_check(const RationalMatrix& M, const Rational& t, PsdMeasureKind kind,
                            const std::vector<LatticeFunction>& fs, bool eigen_example = false);

// Jacobi eigenvalue range of a symmetric matrix, binary64. Used only by the
// eigenvalue special case above.
std::pair<double, double> symmetric_eigen_range(const RationalMatrix& M);

// Ranking model: a uniformly random total order of players a_0..a_{m-1},
// b_0..b_{n-1}. Relations are (loser, winner) pairs over player ids, a-team
// first: id(a_i) = i, id(b_j) = m + j.
struct RankingReport {
    Rational p_given_theta;
    Rational p_given_theta_prime;
    bool monotone = false;  // P(a1 < b1 | theta u theta'') >= P(a1 < b1 | theta)
    unsigned long matches_theta = 0;
    unsigned long matches_theta_prime = 0;
};

// Exact by enumeration of all (m+n)! orders; requires m + n <= 8. theta must
// stay within teams; theta2 must point from the a-team to the b-team.
RankingReport ranking_monotonicity(int m, int n, const std::vector<std::pair<int, int>>& theta,
                                   const std::vector<std::pair<int, int>>& theta2);

// Conditional triple expression for events A1..A4 (each an intersection of
// a_i < b_j relations), with pi(A) = P(A0 n A4 n A) / P(A0 n A4) and A0 the
// full within-team orders:
//   2 pi(123) - [pi(12)pi(3) + pi(13)pi(2) + pi(1)pi(23)] + pi(1)pi(2)pi(3)
//   - 2 [ pi(12)-pi(1)pi(2) + pi(13)-pi(1)pi(3) + pi(23)-pi(2)pi(3) ]  <=  0.
Rational ranking_triple_expression(int m, int n,
                                   const std::vector<std::vector<std::pair<int, int>>>& events);

// Higher-order log-concavity bound for exchangeable MTP2 measures: with
// c_k = P(X_1 <= a, ..., X_k <= a) and c_0 = 1,
//   2 c_{m+2}/c_{m-1} - 3 (c_{m+1}/c_{m-1})(c_m/c_{m-1}) + (c_m/c_{m-1})^3
//   - 6 [ c_{m+1}/c_{m-1} - (c_m/c_{m-1})^2 ]  <=  0,   1 <= m <= n-2.
// mu must be invariant under coordinate permutations (checked via adjacent
// transpositions) and MTP2.
Rational exchangeable_bound_check(const LatticeMeasure& mu, int a_threshold, int m);

// Exact c_k(a) = P(X_1 <= a, ..., X_k <= a); exposed for the tests.
Rational lower_orthant_probability(const LatticeMeasure& mu, int a_threshold, int k);

}  // namespace fkg

#endif  // FKG_APPS_HPP_
