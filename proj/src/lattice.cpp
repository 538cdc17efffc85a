#include "fkg/lattice.hpp"

#include <algorithm>
#include <bit>

namespace fkg {

LatticeShape::LatticeShape(std::vector<int> chain_lengths, std::size_t size_cap)
    : chain_lengths_(std::move(chain_lengths)) {
    if (chain_lengths_.size() > 32)
        throw std::invalid_argument("In fkg::LatticeShape: more than 32 coordinates");
    size_ = 1;
    for (int len : chain_lengths_) {
        if (len < 2)
            throw std::invalid_argument("In fkg::LatticeShape: every chain length must be >= 2");
        if (size_ > size_cap / static_cast<std::size_t>(len))
            throw std::invalid_argument("In fkg::LatticeShape: total size exceeds cap");
        size_ *= static_cast<std::size_t>(len);
    }
}

LatticeShape LatticeShape::boolean(int n, std::size_t size_cap) {
    return LatticeShape(std::vector<int>(static_cast<std::size_t>(n), 2), size_cap);
}

std::size_t rank_of(const LatticeShape& shape, const LatticePoint& p) {
    const auto& lens = shape.chain_lengths();
    if (p.coords.size() != lens.size())
        throw std::invalid_argument("In fkg::rank_of: point arity does not match shape");
    std::size_t rank = 0;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < lens.size(); ++i) {
        if (p.coords[i] < 0 || p.coords[i] >= lens[i])
            throw std::invalid_argument("In fkg::rank_of: coordinate out of range");
        rank += stride * static_cast<std::size_t>(p.coords[i]);
        stride *= static_cast<std::size_t>(lens[i]);
    }
    return rank;
}

LatticePoint point_at(const LatticeShape& shape, std::size_t rank) {
    if (rank >= shape.size())
        throw std::invalid_argument("In fkg::point_at: rank out of range");
    LatticePoint p;
    p.coords.resize(shape.chain_lengths().size());
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        const auto len = static_cast<std::size_t>(shape.chain_lengths()[i]);
        p.coords[i] = static_cast<int>(rank % len);
        rank /= len;
    }
    return p;
}

bool leq(const LatticePoint& p, const LatticePoint& q) {
    if (p.coords.size() != q.coords.size())
        throw std::invalid_argument("In fkg::leq: point arities differ");
    for (std::size_t i = 0; i < p.coords.size(); ++i)
        if (p.coords[i] > q.coords[i]) return false;
    return true;
}

std::pair<LatticePoint, LatticePoint> join_meet(const LatticePoint& p, const LatticePoint& q) {
    if (p.coords.size() != q.coords.size())
        throw std::invalid_argument("In fkg::join_meet: point arities differ");
    LatticePoint join = p, meet = p;
    for (std::size_t i = 0; i < p.coords.size(); ++i) {
        join.coords[i] = std::max(p.coords[i], q.coords[i]);
        meet.coords[i] = std::min(p.coords[i], q.coords[i]);
    }
    return {join, meet};
}

CoordSubset::CoordSubset(int dims, std::uint32_t bits) : bits_(bits), dims_(dims) {
    if (dims < 0 || dims > 32)
        throw std::invalid_argument("In fkg::CoordSubset: dims out of range");
    if (dims < 32 && (bits >> dims) != 0)
        throw std::invalid_argument("In fkg::CoordSubset: bits outside coordinate range");
}

CoordSubset CoordSubset::full_set(int dims) {
    const std::uint32_t bits =
        dims >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << dims) - 1);
    return CoordSubset(dims, bits);
}

CoordSubset CoordSubset::of(int dims, const std::vector<int>& members) {
    std::uint32_t bits = 0;
    for (int i : members) {
        if (i < 0 || i >= dims)
            throw std::invalid_argument("In fkg::CoordSubset::of: member out of range");
        bits |= std::uint32_t{1} << i;
    }
    return CoordSubset(dims, bits);
}

int CoordSubset::count() const { return std::popcount(bits_); }

CoordSubset CoordSubset::complement() const {
    return CoordSubset(dims_, full_set(dims_).bits() ^ bits_);
}

std::vector<int> CoordSubset::members() const {
    std::vector<int> out;
    for (int i = 0; i < dims_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

LatticeMeasure::LatticeMeasure(LatticeShape shape, std::vector<Rational> weights)
    : shape_(std::move(shape)), weights_(std::move(weights)), total_(0) {
    if (weights_.size() != shape_.size())
        throw std::invalid_argument("In fkg::LatticeMeasure: weight table size does not match shape");
    for (const Rational& w : weights_) {
        if (w < 0)
            throw std::invalid_argument("In fkg::LatticeMeasure: negative weight");
        total_ += w;
    }
}

LatticeMeasure LatticeMeasure::uniform(const LatticeShape& shape) {
    return LatticeMeasure(
        shape, std::vector<Rational>(shape.size(),
                                     Rational(1, static_cast<unsigned long>(shape.size()))));
}

LatticeMeasure LatticeMeasure::normalized() const {
    if (total_ == 0)
        throw std::invalid_argument("In fkg::LatticeMeasure::normalized: total mass is zero");
    if (is_normalized()) return *this;
    std::vector<Rational> scaled(weights_);
    for (Rational& w : scaled) w /= total_;
    return LatticeMeasure(shape_, std::move(scaled));
}

LatticeFunction::LatticeFunction(LatticeShape shape, std::vector<Rational> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
    if (values_.size() != shape_.size())
        throw std::invalid_argument("In fkg::LatticeFunction: value table size does not match shape");
}

LatticeFunction LatticeFunction::constant(const LatticeShape& shape, const Rational& value) {
    return LatticeFunction(shape, std::vector<Rational>(shape.size(), value));
}

LatticeFunction pointwise_product(const LatticeFunction& f, const LatticeFunction& g) {
    if (!(f.shape() == g.shape()))
        throw std::invalid_argument("In fkg::pointwise_product: shape mismatch");
    std::vector<Rational> values(f.size());
    for (std::size_t r = 0; r < values.size(); ++r) values[r] = f.value(r) * g.value(r);
    return LatticeFunction(f.shape(), std::move(values));
}

bool is_increasing(const LatticeFunction& f) {
    const auto& lens = f.shape().chain_lengths();
    std::size_t stride = 1;
    for (std::size_t i = 0; i < lens.size(); ++i) {
        const auto len = static_cast<std::size_t>(lens[i]);
        for (std::size_t r = 0; r < f.size(); ++r) {
            const std::size_t coord = (r / stride) % len;
            if (coord + 1 < len && f.value(r) > f.value(r + stride)) return false;
        }
        stride *= len;
    }
    return true;
}

bool is_nonnegative(const LatticeFunction& f) {
    for (std::size_t r = 0; r < f.size(); ++r)
        if (f.value(r) < 0) return false;
    return true;
}

bool is_mtp2(const LatticeMeasure& mu) {
    const LatticeShape& shape = mu.shape();
    const std::size_t n = mu.size();
    std::vector<LatticePoint> pts;
    pts.reserve(n);
    for (std::size_t r = 0; r < n; ++r) pts.push_back(point_at(shape, r));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (leq(pts[a], pts[b]) || leq(pts[b], pts[a])) continue;
            auto [join, meet] = join_meet(pts[a], pts[b]);
            const Rational lhs = mu.weight(join) * mu.weight(meet);
            const Rational rhs = mu.weight(a) * mu.weight(b);
            if (lhs < rhs) return false;
        }
    }
    return true;
}

Rational expectation(const LatticeMeasure& mu, const LatticeFunction& f) {
    if (!(mu.shape() == f.shape()))
        throw std::invalid_argument("In fkg::expectation: shape mismatch");
    if (!mu.is_normalized())
        throw std::invalid_argument("In fkg::expectation: measure is not normalized");
    Rational sum = 0;
    for (std::size_t r = 0; r < mu.size(); ++r) sum += mu.weight(r) * f.value(r);
    return sum;
}

namespace {

// Maps a full-lattice rank to the rank of its projection onto B.
struct Projection {
    LatticeShape sub_shape;
    std::vector<std::size_t> project;  // full rank -> sub rank

    Projection(const LatticeShape& shape, const CoordSubset& B) {
        std::vector<int> sub_lens;
        for (int i : B.members()) sub_lens.push_back(shape.chain_lengths()[i]);
        sub_shape = LatticeShape(std::move(sub_lens));
        project.resize(shape.size());
        const auto members = B.members();
        for (std::size_t r = 0; r < shape.size(); ++r) {
            const LatticePoint p = point_at(shape, r);
            LatticePoint q;
            q.coords.reserve(members.size());
            for (int i : members) q.coords.push_back(p.coords[i]);
            project[r] = rank_of(sub_shape, q);
        }
    }
};

}  // namespace

LatticeMeasure marginalize(const LatticeMeasure& mu, const CoordSubset& B) {
    if (B.dims() != mu.shape().dims())
        throw std::invalid_argument("In fkg::marginalize: subset dims do not match shape");
    if (!mu.is_normalized())
        throw std::invalid_argument("In fkg::marginalize: measure is not normalized");
    const Projection proj(mu.shape(), B);
    std::vector<Rational> weights(proj.sub_shape.size(), Rational(0));
    for (std::size_t r = 0; r < mu.size(); ++r) weights[proj.project[r]] += mu.weight(r);
    return LatticeMeasure(proj.sub_shape, std::move(weights));
}

ConditionalFunction::ConditionalFunction(LatticeShape shape, std::vector<Rational> values,
                                         std::vector<char> defined)
    : shape_(std::move(shape)), values_(std::move(values)), defined_(std::move(defined)) {
    if (values_.size() != shape_.size() || defined_.size() != shape_.size())
        throw std::invalid_argument("In fkg::ConditionalFunction: table size does not match shape");
}

const Rational& ConditionalFunction::at(std::size_t rank) const {
    if (rank >= values_.size())
        throw std::invalid_argument("In fkg::ConditionalFunction::at: rank out of range");
    if (!defined_[rank])
        throw off_support_error(
            "In fkg::ConditionalFunction::at: evaluation off the support of the marginal");
    return values_[rank];
}

ConditionalFunction condition(const LatticeFunction& f, const LatticeMeasure& mu,
                              const CoordSubset& B) {
    if (!(mu.shape() == f.shape()))
        throw std::invalid_argument("In fkg::condition: shape mismatch");
    if (B.dims() != mu.shape().dims())
        throw std::invalid_argument("In fkg::condition: subset dims do not match shape");
    if (!mu.is_normalized())
        throw std::invalid_argument("In fkg::condition: measure is not normalized");
    const Projection proj(mu.shape(), B);
    std::vector<Rational> num(proj.sub_shape.size(), Rational(0));
    std::vector<Rational> den(proj.sub_shape.size(), Rational(0));
    for (std::size_t r = 0; r < mu.size(); ++r) {
        num[proj.project[r]] += mu.weight(r) * f.value(r);
        den[proj.project[r]] += mu.weight(r);
    }
    std::vector<Rational> values(num.size(), Rational(0));
    std::vector<char> defined(num.size(), 0);
    for (std::size_t r = 0; r < num.size(); ++r) {
        if (den[r] != 0) {
            values[r] = num[r] / den[r];
            defined[r] = 1;
        }
    }
    return ConditionalFunction(proj.sub_shape, std::move(values), std::move(defined));
}

bool is_increasing_on_support(const ConditionalFunction& f) {
    const std::size_t n = f.size();
    std::vector<LatticePoint> pts;
    pts.reserve(n);
    for (std::size_t r = 0; r < n; ++r) pts.push_back(point_at(f.shape(), r));
    for (std::size_t a = 0; a < n; ++a) {
        if (!f.defined(a)) continue;
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b || !f.defined(b)) continue;
            if (leq(pts[a], pts[b]) && f.at(a) > f.at(b)) return false;
        }
    }
    return true;
}

Rational inductive_gap(const LatticeMeasure& mu, const LatticeFunction& f1,
                       const LatticeFunction& f2, const LatticeFunction& f3,
                       const CoordSubset& B, HypothesisCheck check) {
    const LatticeFunction* fs[3] = {&f1, &f2, &f3};
    for (const LatticeFunction* f : fs)
        if (!(f->shape() == mu.shape()))
            throw precondition_error("shape", "In fkg::inductive_gap: shape mismatch");
    if (!mu.is_normalized())
        throw precondition_error("normalized", "In fkg::inductive_gap: measure is not normalized");
    if (check == HypothesisCheck::enforce) {
        if (!is_mtp2(mu))
            throw precondition_error("mtp2", "In fkg::inductive_gap: measure is not MTP2");
        for (int i = 0; i < 3; ++i) {
            if (!is_nonnegative(*fs[i]))
                throw precondition_error(
                    "nonnegative", "In fkg::inductive_gap: f" + std::to_string(i + 1) +
                                       " takes a negative value");
            if (!is_increasing(*fs[i]))
                throw precondition_error("increasing", "In fkg::inductive_gap: f" +
                                                           std::to_string(i + 1) +
                                                           " is not increasing");
        }
    }

    const LatticeMeasure muB = marginalize(mu, B);
    const ConditionalFunction c123 = condition(pointwise_product(pointwise_product(f1, f2), f3), mu, B);
    const ConditionalFunction c12 = condition(pointwise_product(f1, f2), mu, B);
    const ConditionalFunction c13 = condition(pointwise_product(f1, f3), mu, B);
    const ConditionalFunction c23 = condition(pointwise_product(f2, f3), mu, B);
    const ConditionalFunction c1 = condition(f1, mu, B);
    const ConditionalFunction c2 = condition(f2, mu, B);
    const ConditionalFunction c3 = condition(f3, mu, B);

    Rational gap = 0;
    for (std::size_t r = 0; r < muB.size(); ++r) {
        if (!muB.in_support(r)) continue;
        Rational term = 2 * c123.at(r);
        term -= c12.at(r) * c3.at(r);
        term -= c13.at(r) * c2.at(r);
        term -= c1.at(r) * c23.at(r);
        term += c1.at(r) * c2.at(r) * c3.at(r);
        gap += muB.weight(r) * term;
    }
    return gap;
}

}  // namespace fkg
