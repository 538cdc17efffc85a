#ifndef FKG_VERIFY_HPP_
#define FKG_VERIFY_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fkg/certificates.hpp"
#include "fkg/cumulants.hpp"
#include "fkg/generators.hpp"
#include "fkg/lattice.hpp"

namespace fkg {

// A violated (or attained) claim together with the exact instance that
// produces it; re-evaluating the instance reproduces `value` exactly.
struct Witness {
    std::string claim;
    CumulantSpec spec;
    LatticeMeasure measure;
    std::vector<LatticeFunction> functions;
    Rational value;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
};

struct SweepReport {
    int trials = 0;
    int violations = 0;
    std::optional<Witness> first_witness;  // lowest trial index, if any
    Rational min_value;
    std::uint64_t min_value_trial = 0;
};

// Evaluates the spec over `trials` independently generated instances.
// Per-trial streams are derived from (cfg.seed, trial), so the outcome is
// independent of execution order; worker count comes from FKG_THREADS
// (default 1) and does not affect the result.
SweepReport sweep(const CumulantSpec& spec, const InstanceGenConfig& cfg, int trials);

// g(empty) - g({first coordinate}) for the fixed 2x2 instance with measure
// (1/2, 1/8, 1/8, 1/4) and functions built from the increment table
//   f_i(0,0) = alpha_i            f_i(1,0) = alpha_i + beta_i
//   f_i(0,1) = alpha_i + gamma_i  f_i(1,1) = alpha_i + beta_i + gamma_i + delta_i.
// Takes both signs across parameter choices: the one-step gap is not
// monotone in the conditioning set.
Rational conditioning_gap_difference(const std::array<Rational, 3>& alpha,
                                     const std::array<Rational, 3>& beta,
                                     const std::array<Rational, 3>& gamma,
                                     const std::array<Rational, 3>& delta);

// The one-step gap is genuinely non-monotone in the conditioning set: on the
// uniform 2x2 measure with f1 = (0,0,1,1) and f2 = f3 = (0,1,1,1) (all
// nonnegative increasing), g(empty) = 5/32 < g({first coordinate}) = 3/16.
// Returns that instance together with the exact difference -1/32.
struct GapWitness {
    LatticeMeasure measure;
    std::vector<LatticeFunction> functions;
    Rational gap_empty;
    Rational gap_first;
    Rational difference;
};
GapWitness gap_monotonicity_witness();

// Northeast indicator on a 2-coordinate grid: 1 iff x1 >= a and x2 >= b.
// Thresholds may equal the chain length (identically zero function).
LatticeFunction northeast_indicator(const LatticeShape& grid, int a, int b);

struct IndicatorTriple {
    std::array<int, 3> a;  // must be ascending
    std::array<int, 3> b;  // ordering selects the case, see below
};

// Closed forms for kappa'_3 on three northeast indicators, by ordering case
// of (b1,b2,b3) given a1 <= a2 <= a3 (rho_ij = P(X1 >= a_i, X2 >= b_j)):
//   1: b1<=b2<=b3  (2-r11)(1-r22) r33
//   2: b1<=b3<=b2  (2-r11)(r32 - r33 r22)
//   3: b2<=b1<=b3  r33 [1 - r21 + (1-r11)(1-r22)]
//   4: b2<=b3<=b1  (1-r22)(r31 - r33 r11) + r31 - r21 r33
//   5: b3<=b1<=b2  (1-r11)(r32 - r33 r22) + r32 - r31 r22
//   6: b3<=b2<=b1  (1-r22)(r31 - r33 r11) + r33 (1-r21) + r11 (r33 - r32)
// Evaluates the requested case and checks it against the direct partition-sum
// evaluation, which must agree exactly for any normalized measure.
Rational indicator_case_eval(const LatticeMeasure& grid, const IndicatorTriple& t, int case_id);

// Covariance of two northeast indicators with a1 <= a2, split into the
// always-nonnegative product term plus a 2x2 determinant of joint tails;
// the determinant is nonnegative whenever the grid measure is MTP2.
struct CovSplit {
    Rational cov;
    Rational product_term;
    Rational determinant;  // zero in the nested case b1 <= b2
    bool nested = false;
};
CovSplit indicator_cov_decomposition(const LatticeMeasure& grid, int a1, int a2, int b1, int b2);

// Coefficient variant c1*E(f1f2f3) - [sum of pair terms] + (3-c1)*prod E(f_i)
// (the c2 = 1 normalization of c1 - 3 c2 + c3 = 0).
CumulantSpec c1_variant_spec(long c1);

struct IndicatorScanReport {
    // explicit nested-threshold instance attaining the lower bound
    // pi3 (1 - pi1)(1 - 2 pi2) with a negative value at c1 = 1
    LatticeMeasure witness_measure;
    IndicatorTriple witness_thresholds;
    Rational witness_value;
    Rational witness_bound;
    // randomized search over all six threshold orderings at c1 = 2
    int trials = 0;
    int violations_at_c1_2 = 0;
};
IndicatorScanReport indicator_coefficient_scan(int trials, std::uint64_t seed);

// Randomized search for a negative value of the c1 variant over northeast
// indicator triples on MTP2 grid measures (all orderings).
std::optional<Witness> indicator_violation_search(long c1, int trials, std::uint64_t seed);

struct CoefficientSearchReport {
    int m = 0;
    long box = 0;
    std::vector<std::map<Partition, Integer>> passing;  // zero_sum == 0 and certificate passes
    std::vector<bool> all_nonzero;                      // per passing vector
};

// Exhaustive box search over integer coefficient vectors with |c_lambda| <= box
// satisfying the all-ones zero sum, keeping those whose shift expansion has
// no negative monomial. The all-zero vector is skipped.
CoefficientSearchReport certificate_coefficient_search(int m, long box,
                                                       int cap = kDefaultCertifyCap);

}  // namespace fkg

#endif  // FKG_VERIFY_HPP_
