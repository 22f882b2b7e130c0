#include "opnorm/core.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace opnorm {

NormParams::NormParams(double r_, double p_) : r(r_), p(p_) {
    if (!(p_ > 1.0) || !(r_ >= p_) || !std::isfinite(r_)) {
        throw DomainError("NormParams: need 1 < p <= r < inf, got r=" + std::to_string(r_) +
                          " p=" + std::to_string(p_));
    }
    r_star = r_ / (r_ - 1.0);
}

SymMatrix::SymMatrix(int n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
    if (n <= 0) throw DomainError("SymMatrix: dimension must be positive");
    if (a_.size() != static_cast<size_t>(n) * n) {
        throw DimensionError("SymMatrix: entry buffer size does not match n*n");
    }
    for (int i = 0; i < n_; ++i) {
        for (int j = i; j < n_; ++j) {
            double x = a_[static_cast<size_t>(i) * n_ + j];
            if (!(x >= 0.0)) throw DomainError("SymMatrix: negative or NaN entry");
            if (x != a_[static_cast<size_t>(j) * n_ + i]) {
                throw DomainError("SymMatrix: entries are not symmetric");
            }
        }
    }
    zero_diagonal_ = true;
    for (int i = 0; i < n_; ++i) {
        if (a_[static_cast<size_t>(i) * n_ + i] != 0.0) {
            zero_diagonal_ = false;
            break;
        }
    }
}

SymMatrix SymMatrix::zero(int n) { return SymMatrix(n, std::vector<double>(static_cast<size_t>(n) * n, 0.0)); }

SymMatrix SymMatrix::identity(int n) {
    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i) * n + i] = 1.0;
    return SymMatrix(n, std::move(a));
}

SymMatrix SymMatrix::mean_matrix(int n, double mu) {
    if (!(mu >= 0.0)) throw DomainError("mean_matrix: mu must be nonnegative");
    std::vector<double> a(static_cast<size_t>(n) * n, mu);
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i) * n + i] = 0.0;
    return SymMatrix(n, std::move(a));
}

SymMatrix SymMatrix::adjacency(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n || j >= n) throw DimensionError("adjacency: vertex out of range");
        a[static_cast<size_t>(i) * n + j] = 1.0;
        a[static_cast<size_t>(j) * n + i] = 1.0;
    }
    return SymMatrix(n, std::move(a));
}

double SymMatrix::row_sum(int i) const {
    double s = 0.0;
    const double* row = a_.data() + static_cast<size_t>(i) * n_;
    for (int j = 0; j < n_; ++j) s += row[j];
    return s;
}

double SymMatrix::max_entry() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, x);
    return m;
}

bool SymMatrix::is_zero() const { return max_entry() == 0.0; }

void SymMatrix::offdiag_moments(double& mean, double& var) const {
    double s = 0.0, s2 = 0.0;
    long cnt = 0;
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            double x = (*this)(i, j);
            s += x;
            s2 += x * x;
            ++cnt;
        }
    }
    if (cnt == 0) {
        mean = 0.0;
        var = 0.0;
        return;
    }
    mean = s / cnt;
    var = s2 / cnt - mean * mean;
    if (var < 0.0) var = 0.0;
}

double CenteredMatrix::row_sum(int i) const {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += (*this)(i, j);
    return s;
}

double psi(double q, double t) {
    if (!(q >= 1.0)) throw DomainError("psi: q must be >= 1");
    if (t == 0.0) return 0.0;
    double sgn = t > 0.0 ? 1.0 : -1.0;
    if (q == 1.0) return sgn;
    if (q == 2.0) return t;
    return sgn * std::pow(std::abs(t), q - 1.0);
}

Vec big_psi(double q, const Vec& x) {
    Vec y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = psi(q, x[i]);
    return y;
}

double lq_norm(double q, const Vec& x) {
    if (!(q >= 1.0)) throw DomainError("lq_norm: q must be >= 1");
    double m = 0.0;
    for (double t : x) m = std::max(m, std::abs(t));
    if (m == 0.0) return 0.0;
    if (q == 1.0) {
        double s = 0.0;
        for (double t : x) s += std::abs(t);
        return s;
    }
    double s = 0.0;
    if (q == 2.0) {
        for (double t : x) {
            double u = t / m;
            s += u * u;
        }
    } else {
        for (double t : x) {
            if (t != 0.0) s += std::pow(std::abs(t) / m, q);
        }
    }
    return m * std::pow(s, 1.0 / q);
}

double linf_norm(const Vec& x) {
    double m = 0.0;
    for (double t : x) m = std::max(m, std::abs(t));
    return m;
}

double holder_conjugate(double r) {
    if (!(r > 1.0)) throw DomainError("holder_conjugate: r must be > 1");
    return r / (r - 1.0);
}

double v_norm(double r, const Vec& v, const Vec& x) {
    if (v.size() != x.size()) throw DimensionError("v_norm: size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        if (!(v[i] > 0.0)) throw DomainError("v_norm: weights must be strictly positive");
        double w = (r == 2.0) ? 1.0 : std::pow(v[i], r - 2.0);
        s += w * x[i] * x[i];
    }
    return std::sqrt(s);
}

Vec matvec(const SymMatrix& A, const Vec& x) {
    const int n = A.n();
    if (x.size() != static_cast<size_t>(n)) throw DimensionError("matvec: dimension mismatch");
    Vec y(n, 0.0);
    const double* a = A.data().data();
    for (int i = 0; i < n; ++i) {
        const double* row = a + static_cast<size_t>(i) * n;
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vec matvec(const CenteredMatrix& A, const Vec& x) {
    const int n = A.n;
    if (x.size() != static_cast<size_t>(n)) throw DimensionError("matvec: dimension mismatch");
    Vec y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* row = A.a.data() + static_cast<size_t>(i) * n;
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

double dot(const Vec& x, const Vec& y) {
    if (x.size() != y.size()) throw DimensionError("dot: size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

}  // namespace opnorm
