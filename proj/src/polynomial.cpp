#include "fkg/polynomial.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fkg {

bool GradedLexLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    const int da = std::accumulate(a.begin(), a.end(), 0);
    const int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

Polynomial::Polynomial(std::shared_ptr<const std::vector<std::string>> names)
    : names_(std::move(names)) {
    if (!names_)
        throw std::invalid_argument("In fkg::Polynomial: null variable list");
}

std::shared_ptr<const std::vector<std::string>> Polynomial::make_names(
    std::vector<std::string> names) {
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

Polynomial Polynomial::zero(std::shared_ptr<const std::vector<std::string>> names) {
    return Polynomial(std::move(names));
}

Polynomial Polynomial::constant(std::shared_ptr<const std::vector<std::string>> names,
                                const Rational& c) {
    Polynomial p(std::move(names));
    p.add_term(std::vector<int>(p.nvars(), 0), c);
    return p;
}

Polynomial Polynomial::variable(std::shared_ptr<const std::vector<std::string>> names,
                                std::size_t index) {
    Polynomial p(std::move(names));
    if (index >= p.nvars())
        throw std::invalid_argument("In fkg::Polynomial::variable: index out of range");
    std::vector<int> e(p.nvars(), 0);
    e[index] = 1;
    p.add_term(e, 1);
    return p;
}

void Polynomial::add_term(const std::vector<int>& exponents, const Rational& coeff) {
    if (exponents.size() != nvars())
        throw std::invalid_argument("In fkg::Polynomial::add_term: exponent arity mismatch");
    if (coeff == 0) return;
    auto it = terms_.find(exponents);
    if (it == terms_.end()) {
        terms_.emplace(exponents, coeff);
        return;
    }
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, coeff] : terms_) coeff *= c;
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial out = *this;
    out += o;
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial out = *this;
    out -= o;
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial out(names_);
    std::vector<int> e(nvars());
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial out = *this;
    out *= c;
    return out;
}

Polynomial Polynomial::substituted(std::size_t index, const Polynomial& replacement) const {
    Polynomial out(names_);
    for (const auto& [e, c] : terms_) {
        const int power = e[index];
        if (power == 0) {
            out.add_term(e, c);
            continue;
        }
        std::vector<int> base = e;
        base[index] = 0;
        Polynomial piece(names_);
        piece.add_term(base, c);
        for (int k = 0; k < power; ++k) piece = piece * replacement;
        out += piece;
    }
    return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars())
        throw std::invalid_argument("In fkg::Polynomial::evaluate: point arity mismatch");
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term *= pow_rational(point[i], static_cast<unsigned long>(e[i]));
        sum += term;
    }
    return sum;
}

std::string Polynomial::pretty(const std::vector<int>& exponents) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] == 0) continue;
        if (!first) os << ' ';
        first = false;
        os << (*names_)[i];
        if (exponents[i] > 1) os << '^' << exponents[i];
    }
    if (first) os << '1';
    return os.str();
}

std::string Polynomial::canonical_text() const {
    std::ostringstream os;
    os << "variables:";
    for (const std::string& n : *names_) os << ' ' << n;
    os << '\n';
    for (const auto& [e, c] : terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) os << ' ';
            os << e[i];
        }
        os << ": " << to_string(c) << '\n';
    }
    return os.str();
}

}  // namespace fkg
