#include "fkg/certificates.hpp"

#include <array>
#include <stdexcept>

namespace fkg {

std::shared_ptr<const std::vector<std::string>> fiber_variables(int m) {
    std::vector<std::string> names{"w1", "w2"};
    for (int i = 1; i <= m; ++i) names.push_back("u" + std::to_string(i));
    for (int i = 1; i <= m; ++i) names.push_back("v" + std::to_string(i));
    return Polynomial::make_names(std::move(names));
}

namespace {

Certificate inspect(const Polynomial& poly, std::string spec_id, int m) {
    Certificate cert;
    cert.spec_id = std::move(spec_id);
    cert.m = m;
    cert.monomial_count = poly.terms().size();
    for (const auto& [e, c] : poly.terms())
        if (c < 0) cert.offending.emplace_back(e, c);
    cert.pass = cert.offending.empty();
    cert.text = poly.canonical_text();
    return cert;
}

}  // namespace

Polynomial build_p_poly(const Partition& lambda, int m, int cap) {
    if (lambda.weight() != m)
        throw std::invalid_argument("In fkg::build_p_poly: |lambda| != m");
    if (m > cap)
        throw std::invalid_argument("In fkg::build_p_poly: m exceeds cap");
    const auto names = fiber_variables(m);
    const Polynomial w1 = Polynomial::variable(names, 0);
    const Polynomial w2 = Polynomial::variable(names, 1);

    Polynomial split_sum = Polynomial::zero(names);
    for (const BlockSplit& split : splits_of_type(lambda, cap)) {
        Polynomial term = Polynomial::constant(names, 1);
        for (std::uint32_t block : split.blocks()) {
            std::vector<int> ue(names->size(), 0), ve(names->size(), 0);
            ue[0] = 1;  // w1
            ve[1] = 1;  // w2
            for (int i = 0; i < m; ++i) {
                if ((block >> i) & 1u) {
                    ue[static_cast<std::size_t>(2 + i)] = 1;
                    ve[static_cast<std::size_t>(2 + m + i)] = 1;
                }
            }
            Polynomial factor(names);
            factor.add_term(ue, 1);
            factor.add_term(ve, 1);
            term = term * factor;
        }
        split_sum += term;
    }

    Polynomial prefactor = Polynomial::constant(names, 1);
    const Polynomial w_sum = w1 + w2;
    for (int k = 0; k < m - lambda.length(); ++k) prefactor = prefactor * w_sum;
    return prefactor * split_sum;
}

Polynomial build_phi(const CumulantSpec& spec, int cap) {
    const int m = spec.m();
    if (m > cap)
        throw std::invalid_argument("In fkg::build_phi: m exceeds cap");
    Polynomial phi = Polynomial::zero(fiber_variables(m));
    for (const auto& [lambda, c] : spec.coefficients()) {
        if (c == 0) continue;
        phi += build_p_poly(lambda, m, cap) * Rational(c);
    }
    return phi;
}

Polynomial shifted_phi(const CumulantSpec& spec, int cap) {
    const int m = spec.m();
    Polynomial phi = build_phi(spec, cap);
    const auto names = fiber_variables(m);
    for (int i = 0; i < m; ++i) {
        const std::size_t ui = static_cast<std::size_t>(2 + i);
        const std::size_t vi = static_cast<std::size_t>(2 + m + i);
        phi = phi.substituted(ui, Polynomial::variable(names, ui) + Polynomial::variable(names, vi));
    }
    return phi;
}

Certificate certify(const CumulantSpec& spec, int cap) {
    return inspect(shifted_phi(spec, cap), spec.id(), spec.m());
}

std::shared_ptr<const std::vector<std::string>> point_value_variables() {
    std::vector<std::string> names;
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) names.push_back("f" + std::to_string(j) + "x" + std::to_string(k));
    return Polynomial::make_names(std::move(names));
}

std::shared_ptr<const std::vector<std::string>> increment_variables() {
    std::vector<std::string> names;
    for (int j = 1; j <= 3; ++j) names.push_back("v" + std::to_string(j));
    for (int j = 1; j <= 3; ++j) names.push_back("d" + std::to_string(j));
    for (int j = 1; j <= 3; ++j) names.push_back("e" + std::to_string(j));
    return Polynomial::make_names(std::move(names));
}

namespace {

// f_j evaluated at point y_k (1-based), in the point-value basis.
Polynomial fj_at(const std::shared_ptr<const std::vector<std::string>>& names, int j, int k) {
    return Polynomial::variable(names, static_cast<std::size_t>((j - 1) * 3 + (k - 1)));
}

Polynomial duplicated_integrand(const std::shared_ptr<const std::vector<std::string>>& names,
                                const std::array<int, 3>& y) {
    Polynomial out = fj_at(names, 1, y[0]) * fj_at(names, 2, y[0]) * fj_at(names, 3, y[0]) * Rational(2);
    out -= fj_at(names, 1, y[0]) * fj_at(names, 2, y[0]) * fj_at(names, 3, y[1]);
    out -= fj_at(names, 1, y[0]) * fj_at(names, 2, y[1]) * fj_at(names, 3, y[0]);
    out -= fj_at(names, 1, y[1]) * fj_at(names, 2, y[0]) * fj_at(names, 3, y[0]);
    out += fj_at(names, 1, y[0]) * fj_at(names, 2, y[1]) * fj_at(names, 3, y[2]);
    return out;
}

}  // namespace

Polynomial duplicate_j_polynomial() {
    const auto names = point_value_variables();
    Polynomial j = Polynomial::zero(names);
    const std::array<std::array<int, 3>, 6> perms{
        {{1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}}};
    for (const auto& perm : perms) j += duplicated_integrand(names, perm);
    return j;
}

Polynomial duplicate_j_increment_basis() {
    const Polynomial j = duplicate_j_polynomial();
    const auto inc = increment_variables();
    // rebuild over the increment variable list, substituting
    // f_j(x1) = v_j, f_j(x2) = v_j + d_j, f_j(x3) = v_j + d_j + e_j
    Polynomial out = Polynomial::zero(inc);
    std::array<Polynomial, 9> repl{
        Polynomial::zero(inc), Polynomial::zero(inc), Polynomial::zero(inc),
        Polynomial::zero(inc), Polynomial::zero(inc), Polynomial::zero(inc),
        Polynomial::zero(inc), Polynomial::zero(inc), Polynomial::zero(inc)};
    for (int j = 0; j < 3; ++j) {
        const Polynomial v = Polynomial::variable(inc, static_cast<std::size_t>(j));
        const Polynomial d = Polynomial::variable(inc, static_cast<std::size_t>(3 + j));
        const Polynomial e = Polynomial::variable(inc, static_cast<std::size_t>(6 + j));
        repl[static_cast<std::size_t>(j * 3 + 0)] = v;
        repl[static_cast<std::size_t>(j * 3 + 1)] = v + d;
        repl[static_cast<std::size_t>(j * 3 + 2)] = v + d + e;
    }
    for (const auto& [exp, coeff] : j.terms()) {
        Polynomial term = Polynomial::constant(inc, coeff);
        for (std::size_t i = 0; i < exp.size(); ++i)
            for (int k = 0; k < exp[i]; ++k) term = term * repl[i];
        out += term;
    }
    return out;
}

Certificate duplicate_variables_certificate() {
    return inspect(duplicate_j_increment_basis(), "duplicate-variables m=3", 3);
}

}  // namespace fkg
