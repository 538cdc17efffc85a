#ifndef FKG_LATTICE_HPP_
#define FKG_LATTICE_HPP_

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fkg/rational.hpp"

namespace fkg {

// Finite distributive lattices as products of chains. A shape (c_0,...,c_{n-1})
// is the grid {0..c_0-1} x ... x {0..c_{n-1}-1} under the componentwise order;
// all chains of length 2 gives the Boolean lattice 2^A. The empty shape is the
// one-point lattice (needed as the target of marginalizing onto no coordinates).
//
// Points are addressed by mixed-radix rank with coordinate 0 least significant:
//   rank(x) = sum_i x_i * prod_{j<i} c_j
// Serialized weight/value tables follow this order.

inline constexpr std::size_t kDefaultSizeCap = std::size_t{1} << 20;

class LatticeShape {
public:
    LatticeShape() = default;
    explicit LatticeShape(std::vector<int> chain_lengths,
                          std::size_t size_cap = kDefaultSizeCap);

    static LatticeShape boolean(int n, std::size_t size_cap = kDefaultSizeCap);

    const std::vector<int>& chain_lengths() const { return chain_lengths_; }
    int dims() const { return static_cast<int>(chain_lengths_.size()); }
    std::size_t size() const { return size_; }

    bool operator==(const LatticeShape& o) const { return chain_lengths_ == o.chain_lengths_; }

private:
    std::vector<int> chain_lengths_;
    std::size_t size_ = 1;
};

struct LatticePoint {
    std::vector<int> coords;

    bool operator==(const LatticePoint& o) const { return coords == o.coords; }
};

std::size_t rank_of(const LatticeShape& shape, const LatticePoint& p);
LatticePoint point_at(const LatticeShape& shape, std::size_t rank);

// Componentwise partial order.
bool leq(const LatticePoint& p, const LatticePoint& q);

// (componentwise max, componentwise min). Throws on arity mismatch.
std::pair<LatticePoint, LatticePoint> join_meet(const LatticePoint& p, const LatticePoint& q);

// Subset of the coordinate axes {0..n-1}.
class CoordSubset {
public:
    CoordSubset() = default;
    CoordSubset(int dims, std::uint32_t bits);
    static CoordSubset empty_set(int dims) { return CoordSubset(dims, 0); }
    static CoordSubset full_set(int dims);
    static CoordSubset of(int dims, const std::vector<int>& members);

    int dims() const { return dims_; }
    std::uint32_t bits() const { return bits_; }
    bool contains(int i) const { return (bits_ >> i) & 1u; }
    int count() const;
    CoordSubset complement() const;
    std::vector<int> members() const;

    bool operator==(const CoordSubset& o) const = default;

private:
    std::uint32_t bits_ = 0;
    int dims_ = 0;
};

class LatticeMeasure {
public:
    LatticeMeasure(LatticeShape shape, std::vector<Rational> weights);

    static LatticeMeasure uniform(const LatticeShape& shape);

    const LatticeShape& shape() const { return shape_; }
    std::size_t size() const { return weights_.size(); }
    const Rational& weight(std::size_t rank) const { return weights_.at(rank); }
    const Rational& weight(const LatticePoint& p) const { return weights_[rank_of(shape_, p)]; }
    const std::vector<Rational>& weights() const { return weights_; }

    const Rational& total() const { return total_; }
    bool is_normalized() const { return total_ == 1; }
    LatticeMeasure normalized() const;  // throws if total mass is zero
    bool in_support(std::size_t rank) const { return weights_[rank] != 0; }

private:
    LatticeShape shape_;
    std::vector<Rational> weights_;
    Rational total_;
};

class LatticeFunction {
public:
    LatticeFunction(LatticeShape shape, std::vector<Rational> values);

    static LatticeFunction constant(const LatticeShape& shape, const Rational& value);

    const LatticeShape& shape() const { return shape_; }
    std::size_t size() const { return values_.size(); }
    const Rational& value(std::size_t rank) const { return values_.at(rank); }
    const Rational& value(const LatticePoint& p) const { return values_[rank_of(shape_, p)]; }
    const std::vector<Rational>& values() const { return values_; }

private:
    LatticeShape shape_;
    std::vector<Rational> values_;
};

LatticeFunction pointwise_product(const LatticeFunction& f, const LatticeFunction& g);

// f(p) <= f(q) for every covering pair p <. q (covers suffice by transitivity).
bool is_increasing(const LatticeFunction& f);
bool is_nonnegative(const LatticeFunction& f);

// Exact check of mu(p v q) mu(p ^ q) >= mu(p) mu(q) over all unordered pairs;
// comparable pairs hold with equality and are skipped.
bool is_mtp2(const LatticeMeasure& mu);

// Exact sum mu(p) f(p); requires mu normalized and matching shapes.
Rational expectation(const LatticeMeasure& mu, const LatticeFunction& f);

// Marginal of mu onto the coordinates in B (B = empty gives the one-point
// measure, B = full gives mu back). Requires mu normalized.
LatticeMeasure marginalize(const LatticeMeasure& mu, const CoordSubset& B);

// Conditional expectation of f given the B-coordinates, defined only on the
// support of the marginal; evaluation off the support throws.
class ConditionalFunction {
public:
    ConditionalFunction(LatticeShape shape, std::vector<Rational> values,
                        std::vector<char> defined);

    const LatticeShape& shape() const { return shape_; }
    std::size_t size() const { return values_.size(); }
    bool defined(std::size_t rank) const { return defined_[rank] != 0; }
    const Rational& at(std::size_t rank) const;
    const Rational& at(const LatticePoint& p) const { return at(rank_of(shape_, p)); }

private:
    LatticeShape shape_;
    std::vector<Rational> values_;
    std::vector<char> defined_;
};

ConditionalFunction condition(const LatticeFunction& f, const LatticeMeasure& mu,
                              const CoordSubset& B);

// Increasing over every comparable pair within the given support mask
// (cover-chains may leave the support, so all pairs are compared).
bool is_increasing_on_support(const ConditionalFunction& f);

// Exact value of
//   2 E_B((f1 f2 f3)_B)
//   - [E_B((f1 f2)_B f3_B) + E_B((f1 f3)_B f2_B) + E_B(f1_B (f2 f3)_B)]
//   + E_B(f1_B f2_B f3_B),
// the one-step quantity of the conditional-expectation induction. Nonnegative
// when mu is normalized MTP2 and the f_i are nonnegative increasing; at
// B = empty it equals the third-order conjugate cumulant, at B = full it is 0.
enum class HypothesisCheck { enforce, skip };

// Thrown with the specific hypothesis that failed, so deliberate probes
// outside the hypotheses can distinguish causes.
class precondition_error : public std::domain_error {
public:
    precondition_error(std::string which, const std::string& message)
        : std::domain_error(message), which_(std::move(which)) {}
    const std::string& which() const { return which_; }

private:
    std::string which_;
};

class off_support_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

Rational inductive_gap(const LatticeMeasure& mu, const LatticeFunction& f1,
                       const LatticeFunction& f2, const LatticeFunction& f3,
                       const CoordSubset& B,
                       HypothesisCheck check = HypothesisCheck::enforce);

}  // namespace fkg

#endif  // FKG_LATTICE_HPP_
