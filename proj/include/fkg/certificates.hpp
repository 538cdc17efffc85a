#ifndef FKG_CERTIFICATES_HPP_
#define FKG_CERTIFICATES_HPP_

#include <string>
#include <utility>
#include <vector>

#include "fkg/cumulants.hpp"
#include "fkg/polynomial.hpp"

namespace fkg {

inline constexpr int kDefaultCertifyCap = 7;

// Pass/fail record of a monomial-nonnegativity inspection.
struct Certificate {
    std::string spec_id;
    int m = 0;
    bool pass = false;
    std::size_t monomial_count = 0;
    std::vector<std::pair<std::vector<int>, Rational>> offending;  // negative coefficients
    std::string text;  // canonical rendering of the inspected polynomial
};

// Variable list for the two-point-fiber polynomials: w1, w2, u1..um, v1..vm.
// w1 weighs the upper point of the fiber, w2 the lower; u_i/v_i are the
// function values there.
std::shared_ptr<const std::vector<std::string>> fiber_variables(int m);

// p_lambda(u;v) = (w1+w2)^(m-l(lambda)) * sum over splits of type lambda of
// prod over blocks S of (w1 prod_{i in S} u_i + w2 prod_{i in S} v_i).
Polynomial build_p_poly(const Partition& lambda, int m, int cap = kDefaultCertifyCap);

// Phi(u;v) = sum_lambda c_lambda p_lambda(u;v). Its (u=v) diagonal collapses
// to zero_sum(spec) * (w1+w2)^m * v1...vm.
Polynomial build_phi(const CumulantSpec& spec, int cap = kDefaultCertifyCap);

// Substitutes u_i <- u_i + v_i into Phi and inspects every monomial
// coefficient; passes iff none is negative.
Certificate certify(const CumulantSpec& spec, int cap = kDefaultCertifyCap);
Polynomial shifted_phi(const CumulantSpec& spec, int cap = kDefaultCertifyCap);

// Duplicate-variables route for the third-order inequality on a chain.
// Point-value basis: variables f{j}x{k} = f_j(x_k), j,k = 1..3.
std::shared_ptr<const std::vector<std::string>> point_value_variables();
// Increment basis for the chamber x1 <= x2 <= x3: f_j(x1) = v_j,
// f_j(x2) = v_j + d_j, f_j(x3) = v_j + d_j + e_j with d_j, e_j >= 0.
std::shared_ptr<const std::vector<std::string>> increment_variables();

// J = sum over the 6 permutations tau of the duplicated integrand
//   I(y1,y2,y3) = 2 f1(y1)f2(y1)f3(y1)
//                 - [f1(y1)f2(y1)f3(y2) + f1(y1)f2(y2)f3(y1) + f1(y2)f2(y1)f3(y1)]
//                 + f1(y1)f2(y2)f3(y3)
// in the point-value basis; kappa'_3 = (1/3!) * triple sum of J against mu^3.
Polynomial duplicate_j_polynomial();

// J rewritten in the increment basis.
Polynomial duplicate_j_increment_basis();

// Certificate that every coefficient of J in the increment basis is >= 0.
Certificate duplicate_variables_certificate();

}  // namespace fkg

#endif  // FKG_CERTIFICATES_HPP_
