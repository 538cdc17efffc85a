#ifndef FKG_POLYNOMIAL_HPP_
#define FKG_POLYNOMIAL_HPP_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fkg/rational.hpp"

namespace fkg {

// Graded-lexicographic monomial order: lower total degree first, then
// lexicographic on the exponent vector. Fixes the iteration order of every
// polynomial, so expansions and certificate text are deterministic.
struct GradedLexLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

// Sparse exact-coefficient polynomial in a fixed list of named variables.
// Zero coefficients are never stored.
class Polynomial {
public:
    using Terms = std::map<std::vector<int>, Rational, GradedLexLess>;

    explicit Polynomial(std::shared_ptr<const std::vector<std::string>> names);

    static std::shared_ptr<const std::vector<std::string>> make_names(
        std::vector<std::string> names);
    static Polynomial zero(std::shared_ptr<const std::vector<std::string>> names);
    static Polynomial constant(std::shared_ptr<const std::vector<std::string>> names,
                               const Rational& c);
    static Polynomial variable(std::shared_ptr<const std::vector<std::string>> names,
                               std::size_t index);

    std::size_t nvars() const { return names_->size(); }
    const std::vector<std::string>& names() const { return *names_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const std::vector<int>& exponents, const Rational& coeff);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& c);
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    // Replaces variable `index` by `replacement` (a polynomial over the same
    // variable list) everywhere it occurs.
    Polynomial substituted(std::size_t index, const Polynomial& replacement) const;

    Rational evaluate(std::span<const Rational> point) const;

    // One "e_0 e_1 ... e_{n-1}: coefficient" line per monomial in graded-lex
    // order, preceded by a header naming the variables.
    std::string canonical_text() const;
    std::string pretty(const std::vector<int>& exponents) const;  // e.g. "w1^2 u1 v3"

private:
    std::shared_ptr<const std::vector<std::string>> names_;
    Terms terms_;
};

}  // namespace fkg

#endif  // FKG_POLYNOMIAL_HPP_
