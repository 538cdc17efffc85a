#include "fkg/apps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace fkg {

RationalMatrix::RationalMatrix(int n, std::vector<Rational> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n < 0)
        throw std::invalid_argument("In fkg::RationalMatrix: negative dimension");
    if (entries_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
        throw std::invalid_argument("In fkg::RationalMatrix: entry count does not match dimension");
}

RationalMatrix RationalMatrix::identity(int n) {
    std::vector<Rational> e(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] = 1;
    return RationalMatrix(n, std::move(e));
}

std::size_t RationalMatrix::index(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw std::invalid_argument("In fkg::RationalMatrix: index out of range");
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
}

bool RationalMatrix::is_symmetric() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

Rational RationalMatrix::det() const {
    if (n_ == 0) return 1;  // empty principal submatrix
    std::vector<Rational> a = entries_;
    const int n = n_;
    Rational sign = 1;
    Rational result = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row) {
            if (a[static_cast<std::size_t>(row) * n + col] != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * n + j],
                          a[static_cast<std::size_t>(col) * n + j]);
            sign = -sign;
        }
        const Rational& p = a[static_cast<std::size_t>(col) * n + col];
        result *= p;
        for (int row = col + 1; row < n; ++row) {
            const Rational factor = a[static_cast<std::size_t>(row) * n + col] / p;
            if (factor == 0) continue;
            for (int j = col; j < n; ++j)
                a[static_cast<std::size_t>(row) * n + j] -=
                    factor * a[static_cast<std::size_t>(col) * n + j];
        }
    }
    return sign * result;
}

int RationalMatrix::rank() const {
    std::vector<Rational> a = entries_;
    const int n = n_;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pivot = -1;
        for (int row = rank; row < n; ++row) {
            if (a[static_cast<std::size_t>(row) * n + col] != 0) {
                pivot = row;
                break;
            }
        }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < n; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * n + j],
                          a[static_cast<std::size_t>(rank) * n + j]);
        const Rational p = a[static_cast<std::size_t>(rank) * n + col];
        for (int row = rank + 1; row < n; ++row) {
            const Rational factor = a[static_cast<std::size_t>(row) * n + col] / p;
            if (factor == 0) continue;
            for (int j = col; j < n; ++j)
                a[static_cast<std::size_t>(row) * n + j] -=
                    factor * a[static_cast<std::size_t>(rank) * n + j];
        }
        ++rank;
    }
    return rank;
}

RationalMatrix RationalMatrix::principal_submatrix(const std::vector<int>& indices) const {
    const int k = static_cast<int>(indices.size());
    std::vector<Rational> e;
    e.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(k));
    for (int i : indices)
        for (int j : indices) e.push_back(at(i, j));
    return RationalMatrix(k, std::move(e));
}

bool RationalMatrix::is_positive_definite() const {
    if (!is_symmetric()) return false;
    std::vector<int> idx;
    for (int k = 1; k <= n_; ++k) {
        idx.resize(static_cast<std::size_t>(k));
        std::iota(idx.begin(), idx.end(), 0);
        if (principal_submatrix(idx).det() <= 0) return false;
    }
    return true;
}

bool RationalMatrix::is_positive_semidefinite() const {
    if (!is_symmetric()) return false;
    const std::uint32_t full = (std::uint32_t{1} << n_) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < n_; ++i)
            if ((mask >> i) & 1u) idx.push_back(i);
        if (principal_submatrix(idx).det() < 0) return false;
    }
    return true;
}

namespace {

void require_nonneg_increasing(const std::vector<Rational>& seq, const char* where) {
    if (seq.empty())
        throw std::invalid_argument(std::string("In fkg::") + where + ": empty sequence");
    if (seq.front() < 0)
        throw std::invalid_argument(std::string("In fkg::") + where + ": sequence takes a negative value");
    for (std::size_t k = 1; k < seq.size(); ++k)
        if (seq[k] < seq[k - 1])
            throw std::invalid_argument(std::string("In fkg::") + where + ": sequence is not increasing");
}

Rational kappa3_on_boolean_by_size(const std::vector<Rational>& size_weights,
                                   const std::vector<Rational>& f1,
                                   const std::vector<Rational>& f2,
                                   const std::vector<Rational>& f3) {
    // measure and functions depend only on |a|; build the full 2^A instance
    const int n = static_cast<int>(size_weights.size()) - 1;
    const LatticeShape shape = LatticeShape::boolean(n);
    std::vector<Rational> weights(shape.size());
    std::vector<Rational> v1(shape.size()), v2(shape.size()), v3(shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r) {
        const auto size = static_cast<std::size_t>(std::popcount(r));
        weights[r] = size_weights[size];
        v1[r] = f1[size];
        v2[r] = f2[size];
        v3[r] = f3[size];
    }
    const LatticeMeasure mu = LatticeMeasure(shape, std::move(weights)).normalized();
    const std::vector<LatticeFunction> fs{LatticeFunction(shape, std::move(v1)),
                                          LatticeFunction(shape, std::move(v2)),
                                          LatticeFunction(shape, std::move(v3))};
    return evaluate_kappa(CumulantSpec::conjugate(3), mu, fs);
}

}  // namespace

Rational bernstein_check(int n, const Rational& x, const std::vector<Rational>& f1,
                         const std::vector<Rational>& f2, const std::vector<Rational>& f3) {
    if (n < 1)
        throw std::invalid_argument("In fkg::bernstein_check: n must be >= 1");
    if (x < 0 || x > 1)
        throw std::invalid_argument("In fkg::bernstein_check: x must lie in [0, 1]");
    for (const auto* f : {&f1, &f2, &f3}) {
        if (static_cast<int>(f->size()) != n + 1)
            throw std::invalid_argument("In fkg::bernstein_check: sequences need n+1 values");
        require_nonneg_increasing(*f, "bernstein_check");
    }
    std::vector<Rational> size_weights(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        size_weights[static_cast<std::size_t>(k)] =
            pow_rational(x, static_cast<unsigned long>(k)) *
            pow_rational(Rational(1) - x, static_cast<unsigned long>(n - k));
    // binomial weights already sum to 1; normalization below is a no-op guard
    return kappa3_on_boolean_by_size(size_weights, f1, f2, f3);
}

Rational logconvex_check(const std::vector<Rational>& a, const std::vector<Rational>& alpha,
                         const std::vector<Rational>& beta, const std::vector<Rational>& gamma) {
    const int n = static_cast<int>(a.size()) - 1;
    if (n < 1)
        throw std::invalid_argument("In fkg::logconvex_check: need at least two weights");
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] <= 0)
            throw std::invalid_argument("In fkg::logconvex_check: weights must be positive");
    for (std::size_t k = 1; k + 1 < a.size(); ++k)
        if (a[k] * a[k] > a[k - 1] * a[k + 1])
            throw gate_error("In fkg::logconvex_check: log-convexity fails at k=" + std::to_string(k),
                             {static_cast<int>(k)});
    Rational total = 0;
    for (const Rational& w : a) total += w;
    if (total != 1)
        throw std::invalid_argument("In fkg::logconvex_check: weights must sum to 1");
    for (const auto* f : {&alpha, &beta, &gamma}) {
        if (f->size() != a.size())
            throw std::invalid_argument("In fkg::logconvex_check: sequence lengths differ");
        require_nonneg_increasing(*f, "logconvex_check");
    }
    std::vector<Rational> size_weights(a.size());
    for (int k = 0; k <= n; ++k)
        size_weights[static_cast<std::size_t>(k)] =
            a[static_cast<std::size_t>(k)] /
            Rational(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)));
    return kappa3_on_boolean_by_size(size_weights, alpha, beta, gamma);
}

FamilyOfSubsets::FamilyOfSubsets(int n, std::vector<std::uint32_t> members, Closure tag)
    : n_(n), members_(std::move(members)), tag_(tag) {
    if (n < 0 || n > 20)
        throw std::invalid_argument("In fkg::FamilyOfSubsets: ground set size out of range");
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    lookup_.assign(std::size_t{1} << n, 0);
    for (std::uint32_t m : members_) {
        if ((m & ~full) != 0)
            throw std::invalid_argument("In fkg::FamilyOfSubsets: member outside the ground set");
        if (lookup_[m])
            throw std::invalid_argument("In fkg::FamilyOfSubsets: duplicate member");
        lookup_[m] = 1;
    }
    std::sort(members_.begin(), members_.end());
    for (std::uint32_t m : members_) {
        for (int i = 0; i < n; ++i) {
            const std::uint32_t bit = std::uint32_t{1} << i;
            if (tag_ == Closure::up && !(m & bit) && !lookup_[m | bit])
                throw std::invalid_argument("In fkg::FamilyOfSubsets: family is not closed above");
            if (tag_ == Closure::down && (m & bit) && !lookup_[m & ~bit])
                throw std::invalid_argument("In fkg::FamilyOfSubsets: family is not closed below");
        }
    }
}

bool FamilyOfSubsets::contains(std::uint32_t mask) const {
    return mask < lookup_.size() && lookup_[mask] != 0;
}

Integer kleitman_check(const FamilyOfSubsets& U1, const FamilyOfSubsets& U2,
                       const FamilyOfSubsets& L) {
    const int n = U1.n();
    if (U2.n() != n || L.n() != n)
        throw std::invalid_argument("In fkg::kleitman_check: ground sets differ");
    if (U1.tag() != FamilyOfSubsets::Closure::up || U2.tag() != FamilyOfSubsets::Closure::up)
        throw std::invalid_argument("In fkg::kleitman_check: U1 and U2 must be closed above");
    if (L.tag() != FamilyOfSubsets::Closure::down)
        throw std::invalid_argument("In fkg::kleitman_check: L must be closed below");

    Integer u1 = 0, u2 = 0, l = 0, u12 = 0, u1l = 0, u2l = 0, u12l = 0;
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    for (std::uint32_t m = 0;; ++m) {
        const bool in1 = U1.contains(m), in2 = U2.contains(m), inl = L.contains(m);
        u1 += in1;
        u2 += in2;
        l += inl;
        u12 += in1 && in2;
        u1l += in1 && inl;
        u2l += in2 && inl;
        u12l += in1 && in2 && inl;
        if (m == full) break;
    }
    Integer pow_n = 1, pow_2n = 1;
    mpz_ui_pow_ui(pow_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
    mpz_ui_pow_ui(pow_2n.get_mpz_t(), 2, static_cast<unsigned long>(2 * n));
    return pow_2n * u12 - 2 * pow_2n * u12l + pow_n * (u12 * l + u1l * u2 + u1 * u2l) -
           pow_n * u1 * u2 - u1 * u2 * l;
}

Rational triangle_hadamard_check(const RationalMatrix& R, const RationalMatrix& F1,
                                 const RationalMatrix& F2, const RationalMatrix& F3) {
    const int n = R.n();
    if (F1.n() != n || F2.n() != n || F3.n() != n)
        throw std::invalid_argument("In fkg::triangle_hadamard_check: dimension mismatch");
    Rational total = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (R.at(i, j) < 0)
                throw std::invalid_argument("In fkg::triangle_hadamard_check: R has a negative entry");
            total += R.at(i, j);
        }
    if (total != 1)
        throw std::invalid_argument("In fkg::triangle_hadamard_check: R must sum to 1");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = std::min(i, j); k <= std::max(i, j); ++k)
                if (R.at(i, j) * R.at(k, k) != R.at(i, k) * R.at(k, j))
                    throw gate_error(
                        "In fkg::triangle_hadamard_check: triangle property fails at (i,k,j)=(" +
                            std::to_string(i) + "," + std::to_string(k) + "," + std::to_string(j) + ")",
                        {i, k, j});
    for (const RationalMatrix* F : {&F1, &F2, &F3}) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (F->at(i, j) < 0)
                    throw std::invalid_argument(
                        "In fkg::triangle_hadamard_check: matrix function takes a negative value");
                if (i + 1 < n && F->at(i, j) > F->at(i + 1, j))
                    throw std::invalid_argument(
                        "In fkg::triangle_hadamard_check: matrix function not increasing in the row index");
                if (j + 1 < n && F->at(i, j) > F->at(i, j + 1))
                    throw std::invalid_argument(
                        "In fkg::triangle_hadamard_check: matrix function not increasing in the column index");
            }
    }

    auto er = [&](auto&& value) {
        Rational sum = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sum += R.at(i, j) * value(i, j);
        return sum;
    };
    const Rational e123 = er([&](int i, int j) -> Rational { return F1.at(i, j) * F2.at(i, j) * F3.at(i, j); });
    const Rational e12 = er([&](int i, int j) -> Rational { return F1.at(i, j) * F2.at(i, j); });
    const Rational e13 = er([&](int i, int j) -> Rational { return F1.at(i, j) * F3.at(i, j); });
    const Rational e23 = er([&](int i, int j) -> Rational { return F2.at(i, j) * F3.at(i, j); });
    const Rational e1 = er([&](int i, int j) -> Rational { return F1.at(i, j); });
    const Rational e2 = er([&](int i, int j) -> Rational { return F2.at(i, j); });
    const Rational e3 = er([&](int i, int j) -> Rational { return F3.at(i, j); });
    return 2 * e123 - (e12 * e3 + e13 * e2 + e1 * e23) + e1 * e2 * e3;
}

std::pair<double, double> symmetric_eigen_range(const RationalMatrix& M) {
    const int n = M.n();
    if (n == 0) return {0.0, 0.0};
    std::vector<double> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i) * n + j] = M.at(i, j).get_d();
    // cyclic Jacobi sweeps
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::abs(a[static_cast<std::size_t>(p) * n + q]);
        if (off < 1e-14) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[static_cast<std::size_t>(p) * n + q];
                if (std::abs(apq) < 1e-18) continue;
                const double app = a[static_cast<std::size_t>(p) * n + p];
                const double aqq = a[static_cast<std::size_t>(q) * n + q];
                const double theta = 0.5 * std::atan2(2 * apq, aqq - app);
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    const double akp = a[static_cast<std::size_t>(k) * n + p];
                    const double akq = a[static_cast<std::size_t>(k) * n + q];
                    a[static_cast<std::size_t>(k) * n + p] = c * akp - s * akq;
                    a[static_cast<std::size_t>(k) * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[static_cast<std::size_t>(p) * n + k];
                    const double aqk = a[static_cast<std::size_t>(q) * n + k];
                    a[static_cast<std::size_t>(p) * n + k] = c * apk - s * aqk;
                    a[static_cast<std::size_t>(q) * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    double lo = a[0], hi = a[0];
    for (int i = 1; i < n; ++i) {
        const double d = a[static_cast<std::size_t>(i) * n + i];
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    return {lo, hi};
}

namespace {

// Eigenvalue special case. The empty set carries measure (det M[] = 1) but
// no spectrum; its lambda_min and 1/lambda_max terms are taken as 0, so only
// the normalizing sum sees it. The restriction of lambda_min and 1/lambda_max
// to nonempty subsets is decreasing by eigenvalue interlacing, and nonempty
// subsets alone are not a lattice, so a negative value is a reportable
// outcome rather than an impossibility.
void fill_eigen_report(const RationalMatrix& M, const std::vector<std::vector<int>>& index_sets,
                       const std::vector<double>& w, PsdReport& report) {
    report.eigen_example = true;
    double sw = 0, swratio = 0, swmin = 0, swinvmax = 0;
    for (std::size_t r = 0; r < w.size(); ++r) {
        sw += w[r];
        if (index_sets[r].empty()) continue;
        const auto [lmin, lmax] = symmetric_eigen_range(M.principal_submatrix(index_sets[r]));
        swratio += w[r] * (lmin / lmax);
        swmin += w[r] * lmin;
        swinvmax += w[r] / lmax;
    }
    const double value = sw * swratio - swmin * swinvmax;
    const double scale = std::max({std::abs(sw * swratio), std::abs(swmin * swinvmax), 1e-300});
    report.eigen_value = value;
    if (std::abs(value) / scale < 1e-9)
        report.eigen_status = "inconclusive";
    else
        report.eigen_status = value > 0 ? "pass" : "violation";
}

}  // namespace

PsdReport psd_measure_check(const RationalMatrix& M, const Rational& t, PsdMeasureKind kind,
                            const std::vector<LatticeFunction>& fs, bool eigen_example) {
    const int n = M.n();
    if (n < 1 || n > 16)
        throw std::invalid_argument("In fkg::psd_measure_check: dimension out of range");
    if (t <= 0)
        throw std::invalid_argument("In fkg::psd_measure_check: t must be > 0");
    if (kind == PsdMeasureKind::rank && !M.is_positive_semidefinite())
        throw std::invalid_argument("In fkg::psd_measure_check: rank kind needs a PSD matrix");
    if (kind == PsdMeasureKind::det && !M.is_positive_definite())
        throw std::invalid_argument("In fkg::psd_measure_check: det kind needs a positive definite matrix");

    PsdReport report;
    report.kind = kind;
    const bool t_integral = t.get_den() == 1;
    report.exact = kind == PsdMeasureKind::rank || t_integral;

    const LatticeShape shape = LatticeShape::boolean(n);
    std::vector<std::vector<int>> index_sets(shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r)
        for (int i = 0; i < n; ++i)
            if ((r >> i) & 1u) index_sets[r].push_back(i);

    if (report.exact) {
        std::vector<Rational> weights(shape.size());
        for (std::size_t r = 0; r < shape.size(); ++r) {
            const RationalMatrix sub = M.principal_submatrix(index_sets[r]);
            if (kind == PsdMeasureKind::rank) {
                weights[r] = pow_rational(t, static_cast<unsigned long>(n - sub.rank()));
            } else {
                const Rational d = sub.det();
                weights[r] = Rational(1) / pow_rational(d, t.get_num().get_ui());
            }
        }
        const LatticeMeasure mu = LatticeMeasure(shape, std::move(weights)).normalized();
        report.mtp2 = is_mtp2(mu);
        if (!fs.empty()) {
            if (fs.size() != 3)
                throw std::invalid_argument("In fkg::psd_measure_check: expected three functions");
            report.kappa3 = evaluate_kappa(CumulantSpec::conjugate(3), mu, fs);
            report.kappa3_float = report.kappa3.get_d();
        }
        if (eigen_example) {
            std::vector<double> w(shape.size());
            for (std::size_t r = 0; r < shape.size(); ++r) w[r] = mu.weight(r).get_d();
            fill_eigen_report(M, index_sets, w, report);
        }
        return report;
    }

    // floating det^(-t) backend
    const double td = t.get_d();
    std::vector<double> w(shape.size());
    for (std::size_t r = 0; r < shape.size(); ++r) {
        const Rational d = M.principal_submatrix(index_sets[r]).det();
        w[r] = std::pow(d.get_d(), -td);
    }
    double total = 0;
    for (double x : w) total += x;
    for (double& x : w) x /= total;
    // MTP2 with relative tolerance
    report.mtp2 = true;
    for (std::size_t p = 0; p < shape.size() && report.mtp2; ++p)
        for (std::size_t q = p + 1; q < shape.size(); ++q) {
            const std::size_t join = p | q, meet = p & q;
            if (join == p || join == q) continue;
            const double lhs = w[join] * w[meet], rhs = w[p] * w[q];
            if (lhs - rhs < -1e-9 * std::max(std::abs(lhs), std::abs(rhs))) {
                report.mtp2 = false;
                break;
            }
        }
    if (!fs.empty()) {
        if (fs.size() != 3)
            throw std::invalid_argument("In fkg::psd_measure_check: expected three functions");
        auto ef = [&](auto&& value) {
            double s = 0;
            for (std::size_t r = 0; r < shape.size(); ++r) s += w[r] * value(r);
            return s;
        };
        auto v = [&](const LatticeFunction& f, std::size_t r) { return f.value(r).get_d(); };
        const double e123 = ef([&](std::size_t r) { return v(fs[0], r) * v(fs[1], r) * v(fs[2], r); });
        const double e12 = ef([&](std::size_t r) { return v(fs[0], r) * v(fs[1], r); });
        const double e13 = ef([&](std::size_t r) { return v(fs[0], r) * v(fs[2], r); });
        const double e23 = ef([&](std::size_t r) { return v(fs[1], r) * v(fs[2], r); });
        const double e1 = ef([&](std::size_t r) { return v(fs[0], r); });
        const double e2 = ef([&](std::size_t r) { return v(fs[1], r); });
        const double e3 = ef([&](std::size_t r) { return v(fs[2], r); });
        report.kappa3_float = 2 * e123 - (e12 * e3 + e13 * e2 + e1 * e23) + e1 * e2 * e3;
    }
    if (eigen_example) fill_eigen_report(M, index_sets, w, report);
    return report;
}

namespace {

unsigned long count_orders(int players, const std::vector<std::pair<int, int>>& relations,
                           const std::vector<std::pair<int, int>>& extra,
                           bool also_a1_below_b1, int m) {
    std::vector<int> rank(static_cast<std::size_t>(players));
    std::iota(rank.begin(), rank.end(), 0);
    unsigned long count = 0;
    do {
        bool ok = true;
        for (const auto& [lo, hi] : relations)
            if (rank[static_cast<std::size_t>(lo)] > rank[static_cast<std::size_t>(hi)]) {
                ok = false;
                break;
            }
        if (ok)
            for (const auto& [lo, hi] : extra)
                if (rank[static_cast<std::size_t>(lo)] > rank[static_cast<std::size_t>(hi)]) {
                    ok = false;
                    break;
                }
        if (ok && also_a1_below_b1 && rank[0] > rank[static_cast<std::size_t>(m)]) ok = false;
        if (ok) ++count;
    } while (std::next_permutation(rank.begin(), rank.end()));
    return count;
}

void validate_relations(int m, int n, const std::vector<std::pair<int, int>>& theta,
                        const std::vector<std::pair<int, int>>& theta2) {
    const int players = m + n;
    for (const auto& [lo, hi] : theta) {
        if (lo < 0 || lo >= players || hi < 0 || hi >= players || lo == hi)
            throw std::invalid_argument("In fkg::ranking_monotonicity: relation out of range");
        const bool lo_b = lo >= m, hi_b = hi >= m;
        if (lo_b != hi_b)
            throw std::invalid_argument(
                "In fkg::ranking_monotonicity: theta must stay within a team");
    }
    for (const auto& [lo, hi] : theta2) {
        if (lo < 0 || lo >= m || hi < m || hi >= players)
            throw std::invalid_argument(
                "In fkg::ranking_monotonicity: theta'' must point from the a-team to the b-team");
    }
}

}  // namespace

RankingReport ranking_monotonicity(int m, int n, const std::vector<std::pair<int, int>>& theta,
                                   const std::vector<std::pair<int, int>>& theta2) {
    if (m < 1 || n < 1 || m + n > 8)
        throw std::invalid_argument("In fkg::ranking_monotonicity: need 1 <= m, n and m+n <= 8");
    validate_relations(m, n, theta, theta2);
    const int players = m + n;
    const std::vector<std::pair<int, int>> none;

    RankingReport report;
    report.matches_theta = count_orders(players, theta, none, false, m);
    if (report.matches_theta == 0)
        throw std::invalid_argument("In fkg::ranking_monotonicity: theta is contradictory");
    const unsigned long theta_and_event = count_orders(players, theta, none, true, m);
    report.p_given_theta =
        Rational(static_cast<long>(theta_and_event), static_cast<long>(report.matches_theta));

    report.matches_theta_prime = count_orders(players, theta, theta2, false, m);
    if (report.matches_theta_prime == 0)
        throw std::invalid_argument("In fkg::ranking_monotonicity: theta' is contradictory");
    const unsigned long prime_and_event = count_orders(players, theta, theta2, true, m);
    report.p_given_theta_prime =
        Rational(static_cast<long>(prime_and_event), static_cast<long>(report.matches_theta_prime));

    report.p_given_theta.canonicalize();
    report.p_given_theta_prime.canonicalize();
    report.monotone = report.p_given_theta_prime >= report.p_given_theta;
    return report;
}

Rational ranking_triple_expression(int m, int n,
                                   const std::vector<std::vector<std::pair<int, int>>>& events) {
    if (m < 1 || n < 1 || m + n > 8)
        throw std::invalid_argument("In fkg::ranking_triple_expression: need 1 <= m, n and m+n <= 8");
    if (events.size() != 4)
        throw std::invalid_argument("In fkg::ranking_triple_expression: need events A1..A4");
    for (const auto& ev : events)
        for (const auto& [lo, hi] : ev)
            if (lo < 0 || lo >= m || hi < m || hi >= m + n)
                throw std::invalid_argument(
                    "In fkg::ranking_triple_expression: events must intersect a_i < b_j relations");

    // A0: full orders within both teams
    std::vector<std::pair<int, int>> base;
    for (int i = 0; i + 1 < m; ++i) base.emplace_back(i, i + 1);
    for (int j = 0; j + 1 < n; ++j) base.emplace_back(m + j, m + j + 1);
    base.insert(base.end(), events[3].begin(), events[3].end());

    const int players = m + n;
    const std::vector<std::pair<int, int>> none;
    const unsigned long denom = count_orders(players, base, none, false, m);
    if (denom == 0)
        throw std::invalid_argument("In fkg::ranking_triple_expression: conditioning event is empty");

    auto pi = [&](std::initializer_list<int> which) {
        std::vector<std::pair<int, int>> rel = base;
        for (int w : which)
            rel.insert(rel.end(), events[static_cast<std::size_t>(w)].begin(),
                       events[static_cast<std::size_t>(w)].end());
        const unsigned long c = count_orders(players, rel, none, false, m);
        Rational r(static_cast<long>(c), static_cast<long>(denom));
        r.canonicalize();
        return r;
    };

    const Rational p1 = pi({0}), p2 = pi({1}), p3 = pi({2});
    const Rational p12 = pi({0, 1}), p13 = pi({0, 2}), p23 = pi({1, 2});
    const Rational p123 = pi({0, 1, 2});
    return 2 * p123 - (p12 * p3 + p13 * p2 + p1 * p23) + p1 * p2 * p3 -
           2 * ((p12 - p1 * p2) + (p13 - p1 * p3) + (p23 - p2 * p3));
}

Rational lower_orthant_probability(const LatticeMeasure& mu, int a_threshold, int k) {
    if (k == 0) return 1;
    Rational sum = 0;
    for (std::size_t r = 0; r < mu.size(); ++r) {
        const LatticePoint p = point_at(mu.shape(), r);
        bool inside = true;
        for (int i = 0; i < k; ++i)
            if (p.coords[static_cast<std::size_t>(i)] > a_threshold) {
                inside = false;
                break;
            }
        if (inside) sum += mu.weight(r);
    }
    return sum;
}

Rational exchangeable_bound_check(const LatticeMeasure& mu, int a_threshold, int m) {
    const int n = mu.shape().dims();
    if (n < 3)
        throw std::invalid_argument("In fkg::exchangeable_bound_check: need at least 3 coordinates");
    for (int i = 1; i < n; ++i)
        if (mu.shape().chain_lengths()[i] != mu.shape().chain_lengths()[0])
            throw std::invalid_argument(
                "In fkg::exchangeable_bound_check: exchangeability needs equal chain lengths");
    if (a_threshold < 0 || a_threshold >= mu.shape().chain_lengths()[0])
        throw std::invalid_argument("In fkg::exchangeable_bound_check: threshold out of range");
    if (m < 1 || m > n - 2)
        throw std::invalid_argument("In fkg::exchangeable_bound_check: need 1 <= m <= n-2");
    if (!mu.is_normalized())
        throw std::invalid_argument("In fkg::exchangeable_bound_check: measure is not normalized");

    // invariance under adjacent transpositions generates full symmetry
    for (int i = 0; i + 1 < n; ++i) {
        for (std::size_t r = 0; r < mu.size(); ++r) {
            LatticePoint p = point_at(mu.shape(), r);
            std::swap(p.coords[static_cast<std::size_t>(i)], p.coords[static_cast<std::size_t>(i + 1)]);
            if (mu.weight(r) != mu.weight(p))
                throw std::invalid_argument(
                    "In fkg::exchangeable_bound_check: measure is not exchangeable");
        }
    }
    if (!is_mtp2(mu))
        throw std::invalid_argument("In fkg::exchangeable_bound_check: measure is not MTP2");

    const Rational c_m1 = lower_orthant_probability(mu, a_threshold, m - 1);
    if (c_m1 == 0)
        throw std::invalid_argument("In fkg::exchangeable_bound_check: conditioning event has mass 0");
    const Rational p = lower_orthant_probability(mu, a_threshold, m) / c_m1;
    const Rational q = lower_orthant_probability(mu, a_threshold, m + 1) / c_m1;
    const Rational r = lower_orthant_probability(mu, a_threshold, m + 2) / c_m1;
    return 2 * r - 3 * q * p + p * p * p - 6 * (q - p * p);
}

}  // namespace fkg
