#include "fkg/rational.hpp"

#include <cctype>

namespace fkg {

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t to) {
    if (from >= to) return false;
    for (std::size_t i = from; i < to; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
    const std::size_t slash = text.find('/');
    const std::string num = slash == std::string::npos ? text : text.substr(0, slash);
    const std::string den = slash == std::string::npos ? std::string("1") : text.substr(slash + 1);

    std::size_t num_start = 0;
    if (!num.empty() && num[0] == '-') num_start = 1;
    if (!all_digits(num, num_start, num.size())) return std::nullopt;
    if (!all_digits(den, 0, den.size())) return std::nullopt;

    Integer p(num, 10);
    Integer q(den, 10);
    if (q == 0) return std::nullopt;
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    Rational canonical = r;
    canonical.canonicalize();
    return canonical.get_str();
}

std::string to_string(const Integer& z) {
    return z.get_str();
}

Rational pow_rational(const Rational& base, unsigned long exp) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
    // base is canonical, so num^e / den^e already is in lowest terms
    return out;
}

Integer factorial(unsigned long n) {
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

Integer binomial(unsigned long n, unsigned long k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

}  // namespace fkg
