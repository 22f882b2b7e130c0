#include "opnorm/oracle.hpp"

#include <cmath>

#include "opnorm/rng.hpp"

namespace opnorm {

namespace {

constexpr double kPi = 3.14159265358979323846;

double objective(const SymMatrix& A, const NormParams& params, const Vec& x) {
    double nx = lq_norm(params.r, x);
    if (nx == 0.0) return 0.0;
    return lq_norm(params.p, matvec(A, x)) / nx;
}

// Gradient of ||Ax||_p / ||x||_r on the unit r-sphere.
Vec objective_gradient(const SymMatrix& A, const NormParams& params, const Vec& x, double fx) {
    Vec ax = matvec(A, x);
    double nax = lq_norm(params.p, ax);
    Vec g(x.size(), 0.0);
    if (nax == 0.0) return g;
    for (double& t : ax) t = psi(params.p, t);
    Vec atp = matvec(A, ax);
    double scale = std::pow(nax, 1.0 - params.p);
    for (size_t i = 0; i < x.size(); ++i) {
        g[i] = scale * atp[i] - fx * psi(params.r, x[i]);
    }
    return g;
}

void clamp_normalize(double r, Vec& x) {
    for (double& t : x) {
        if (t < 0.0) t = 0.0;
    }
    double nx = lq_norm(r, x);
    if (nx > 0.0) {
        for (double& t : x) t /= nx;
    }
}

bool lex_less(const Vec& a, const Vec& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// Backtracking ascent on the nonnegative part of the r-sphere. Returns true
// when the projected-gradient linf norm dropped below tol.
bool ascend(const SymMatrix& A, const NormParams& params, Vec& x, double& fx, double tol,
            int max_iter) {
    fx = objective(A, params, x);
    double trial = 1.0;  // persistent trial step; grows on success so flat
                         // landscapes (r close to p) are still traversed
    for (int it = 0; it < max_iter; ++it) {
        Vec g = objective_gradient(A, params, x, fx);
        double gmax = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i] <= 0.0 && g[i] < 0.0) g[i] = 0.0;  // active nonnegativity constraint
            gmax = std::max(gmax, std::abs(g[i]));
        }
        if (gmax < tol) return true;
        double step = trial;
        bool moved = false;
        while (step > 1e-18) {
            Vec xn = x;
            for (size_t i = 0; i < x.size(); ++i) xn[i] += step * g[i];
            clamp_normalize(params.r, xn);
            if (lq_norm(params.r, xn) > 0.0) {
                double fn = objective(A, params, xn);
                double advance = 0.0;  // Armijo margin along the actual move
                for (size_t i = 0; i < x.size(); ++i) advance += g[i] * (xn[i] - x[i]);
                if (fn > fx + 0.1 * advance && fn > fx) {
                    x = std::move(xn);
                    fx = fn;
                    moved = true;
                    trial = std::min(step * 2.0, 1e8);
                    break;
                }
            }
            step *= 0.5;
        }
        if (!moved) return gmax < tol * 100.0;  // stalled at numerical precision
    }
    return false;
}

}  // namespace

OracleResult maximize_grid(const SymMatrix& A, const NormParams& params, int resolution) {
    const int n = A.n();
    if (n > 3) throw DomainError("maximize_grid: n must be <= 3");
    if (resolution < 1000) throw DomainError("maximize_grid: resolution must be >= 1000");

    OracleResult best;
    best.method = OracleMethod::grid;

    auto consider = [&](const Vec& x) {
        double v = objective(A, params, x);
        if (v > best.value || (v == best.value && (best.argmax.empty() || lex_less(x, best.argmax)))) {
            best.value = v;
            best.argmax = x;
        }
    };

    if (n == 1) {
        best.argmax = {1.0};
        best.value = A(0, 0);
        return best;
    }
    if (n == 2) {
        for (int k = 0; k < resolution; ++k) {
            double th = 0.5 * kPi * k / (resolution - 1);
            Vec x = {std::cos(th), std::sin(th)};
            clamp_normalize(params.r, x);
            consider(x);
        }
    } else {
        for (int k = 0; k < resolution; ++k) {
            double th = 0.5 * kPi * k / (resolution - 1);
            double st = std::sin(th), ct = std::cos(th);
            for (int l = 0; l < resolution; ++l) {
                double ph = 0.5 * kPi * l / (resolution - 1);
                Vec x = {st * std::cos(ph), st * std::sin(ph), ct};
                clamp_normalize(params.r, x);
                consider(x);
            }
        }
    }

    // one local polish from the best grid point
    Vec x = best.argmax;
    double fx = best.value;
    ascend(A, params, x, fx, 1e-12, 200);
    if (fx > best.value) {
        best.value = fx;
        best.argmax = x;
    }
    // re-evaluate so value and argmax agree exactly
    best.value = objective(A, params, best.argmax);
    return best;
}

OracleResult maximize_multistart(const SymMatrix& A, const NormParams& params, int starts,
                                 double tol) {
    const int n = A.n();
    if (n > 12) throw DomainError("maximize_multistart: n must be <= 12");
    if (starts < 20) throw DomainError("maximize_multistart: starts must be >= 20");

    OracleResult best;
    best.method = OracleMethod::multistart_gradient;
    bool any_converged = false;
    for (int s = 0; s < starts; ++s) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = 0.1 + uniform01(0x6f7261636cull, s, i);
        clamp_normalize(params.r, x);
        double fx = 0.0;
        bool ok = ascend(A, params, x, fx, tol, 5000);
        if (!ok) continue;
        any_converged = true;
        if (fx > best.value || (fx == best.value && (best.argmax.empty() || lex_less(x, best.argmax)))) {
            best.value = fx;
            best.argmax = x;
        }
    }
    if (!any_converged) throw ConvergenceError("maximize_multistart: no start converged");
    best.value = objective(A, params, best.argmax);
    return best;
}

OracleResult maximize_quadratic_form(const SymMatrix& A, double r, int starts, double tol) {
    const int n = A.n();
    if (!(r >= 1.0)) throw DomainError("maximize_quadratic_form: r must be >= 1");

    auto quad = [&](const Vec& x) { return dot(x, matvec(A, x)); };

    OracleResult best;
    best.method = OracleMethod::multistart_gradient;
    bool any_converged = false;
    for (int s = 0; s < starts; ++s) {
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = 0.1 + uniform01(0x71666f726dull, s, i);
        clamp_normalize(r, x);
        double hx = quad(x);
        bool converged = false;
        double trial = 1.0;
        for (int it = 0; it < 5000; ++it) {
            Vec ax = matvec(A, x);
            Vec g(n);
            double gmax = 0.0;
            for (int i = 0; i < n; ++i) {
                g[i] = 2.0 * ax[i] - 2.0 * hx * psi(r, x[i]);
                if (x[i] <= 0.0 && g[i] < 0.0) g[i] = 0.0;
                gmax = std::max(gmax, std::abs(g[i]));
            }
            if (gmax < tol) {
                converged = true;
                break;
            }
            double step = trial;
            bool moved = false;
            while (step > 1e-18) {
                Vec xn = x;
                for (int i = 0; i < n; ++i) xn[i] += step * g[i];
                clamp_normalize(r, xn);
                double hn = quad(xn);
                double advance = 0.0;
                for (int i = 0; i < n; ++i) advance += g[i] * (xn[i] - x[i]);
                if (hn > hx + 0.1 * advance && hn > hx) {
                    x = std::move(xn);
                    hx = hn;
                    moved = true;
                    trial = std::min(step * 2.0, 1e8);
                    break;
                }
                step *= 0.5;
            }
            if (!moved) {
                converged = gmax < tol * 100.0;
                break;
            }
        }
        if (!converged) continue;
        any_converged = true;
        if (hx > best.value || (hx == best.value && (best.argmax.empty() || lex_less(x, best.argmax)))) {
            best.value = hx;
            best.argmax = x;
        }
    }
    if (!any_converged) throw ConvergenceError("maximize_quadratic_form: no start converged");
    best.value = quad(best.argmax);
    return best;
}

AnalyticNorm analytic_norm(AnalyticKind kind, int n, double mu, const NormParams& params) {
    if (n < 1) throw DomainError("analytic_norm: n must be >= 1");
    double scale = std::pow(static_cast<double>(n), 1.0 / params.p - 1.0 / params.r);
    AnalyticNorm out;
    switch (kind) {
        case AnalyticKind::perm:
            out.value = scale;
            out.lower_bound = false;
            return out;
        case AnalyticKind::mean_matrix:
            if (!(mu > 0.0)) throw DomainError("analytic_norm: mean_matrix needs mu > 0");
            out.value = mu * (n - 1) * scale;
            out.lower_bound = !(params.r == 2.0 && params.p == 2.0);
            return out;
    }
    throw DomainError("analytic_norm: invalid kind");
}

}  // namespace opnorm
