#include "opnorm/ensembles.hpp"

#include <cmath>

#include "opnorm/rng.hpp"

namespace opnorm {

namespace {

constexpr uint64_t kOffdiagStream = 0;
constexpr uint64_t kDiagStream = 1;

double table_mean(const SupportTable& t) {
    double m = 0.0;
    for (auto [v, p] : t) m += v * p;
    return m;
}

double table_variance(const SupportTable& t, double mean) {
    double s = 0.0;
    for (auto [v, p] : t) s += (v - mean) * (v - mean) * p;
    return s;
}

void validate_table(const SupportTable& t) {
    if (t.empty()) throw DomainError("custom_iid: empty support table");
    double total = 0.0;
    for (auto [v, p] : t) {
        if (!(v >= 0.0)) throw DomainError("custom_iid: support values must be nonnegative");
        if (!(p >= 0.0)) throw DomainError("custom_iid: probabilities must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("custom_iid: probabilities must sum to 1");
}

}  // namespace

Family family_from_string(const std::string& s) {
    if (s == "er") return Family::er;
    if (s == "bernoulli_scaled") return Family::bernoulli_scaled;
    if (s == "uniform") return Family::uniform;
    if (s == "exponential") return Family::exponential;
    if (s == "custom_iid") return Family::custom_iid;
    throw DomainError("unknown ensemble family '" + s + "'");
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::er: return "er";
        case Family::bernoulli_scaled: return "bernoulli_scaled";
        case Family::uniform: return "uniform";
        case Family::exponential: return "exponential";
        case Family::custom_iid: return "custom_iid";
    }
    return "?";
}

EnsembleSpec EnsembleSpec::normalized() const {
    EnsembleSpec s = *this;
    if (s.n <= 0) throw DomainError("EnsembleSpec: n must be positive");
    switch (s.family) {
        case Family::er: {
            if (!(s.mu > 0.0 && s.mu < 1.0)) {
                throw DomainError("er: mu must lie in (0,1) so the entry variance is positive");
            }
            double v = s.mu * (1.0 - s.mu);
            if (s.sigma2 >= 0.0 && std::abs(s.sigma2 - v) > 1e-12 * std::max(1.0, v)) {
                throw DomainError("er: sigma2 is determined by mu(1-mu)");
            }
            s.sigma2 = v;
            break;
        }
        case Family::bernoulli_scaled: {
            if (!(s.mu > 0.0) || !(s.sigma2 > 0.0)) {
                throw DomainError("bernoulli_scaled: need mu > 0 and sigma2 > 0");
            }
            break;
        }
        case Family::uniform: {
            if (!(s.mu > 0.0) || !(s.sigma2 >= 0.0)) throw DomainError("uniform: need mu > 0, sigma2 >= 0");
            if (s.mu - std::sqrt(3.0 * s.sigma2) < 0.0) {
                throw DomainError("uniform: mu - sqrt(3 sigma2) < 0 would give negative support");
            }
            break;
        }
        case Family::exponential: {
            if (!(s.mu > 0.0)) throw DomainError("exponential: mu must be positive");
            double v = s.mu * s.mu;
            if (s.sigma2 >= 0.0 && std::abs(s.sigma2 - v) > 1e-12 * std::max(1.0, v)) {
                throw DomainError("exponential: sigma2 is forced to mu^2");
            }
            s.sigma2 = v;
            break;
        }
        case Family::custom_iid: {
            validate_table(s.table);
            double m = table_mean(s.table);
            if (!(m > 0.0)) throw DomainError("custom_iid: table mean must be positive");
            s.mu = m;
            s.sigma2 = table_variance(s.table, m);
            break;
        }
    }
    if (s.profile) {
        if (s.family != Family::bernoulli_scaled && s.family != Family::uniform) {
            throw DomainError("variance profile requires a family with a free variance "
                              "(bernoulli_scaled or uniform)");
        }
        if (s.profile->size() != static_cast<size_t>(s.n) * s.n) {
            throw DimensionError("profile grid size does not match n*n");
        }
        for (int i = 0; i < s.n; ++i) {
            for (int j = i + 1; j < s.n; ++j) {
                double m = (*s.profile)[static_cast<size_t>(i) * s.n + j];
                if (!(m > 0.0)) throw DomainError("profile multipliers must be positive");
                if (m != (*s.profile)[static_cast<size_t>(j) * s.n + i]) {
                    throw DomainError("profile grid must be symmetric");
                }
            }
        }
    }
    if (s.diagonal) {
        if (s.diagonal->family == Family::custom_iid) {
            validate_table(s.diagonal->table);
            s.diagonal->mean = table_mean(s.diagonal->table);
            s.diagonal->variance = table_variance(s.diagonal->table, s.diagonal->mean);
        } else if (!(s.diagonal->mean > 0.0)) {
            throw DomainError("diagonal law: mean must be positive");
        }
    }
    return s;
}

double draw_value(Family family, double mu, double sd, const SupportTable& table, double u) {
    switch (family) {
        case Family::er:
            return u < mu ? 1.0 : 0.0;
        case Family::bernoulli_scaled: {
            // b * Bernoulli(q) with bq = mu, b^2 q(1-q) = sd^2
            double q = mu * mu / (mu * mu + sd * sd);
            double b = mu / q;
            return u < q ? b : 0.0;
        }
        case Family::uniform: {
            double half = std::sqrt(3.0) * sd;
            return mu - half + 2.0 * half * u;
        }
        case Family::exponential:
            return -mu * std::log1p(-u);
        case Family::custom_iid: {
            double acc = 0.0;
            for (auto [v, p] : table) {
                acc += p;
                if (u < acc) return v;
            }
            return table.back().first;
        }
    }
    throw DomainError("draw_value: unknown family");
}

SymMatrix sample(const EnsembleSpec& raw) {
    EnsembleSpec spec = raw.normalized();
    const int n = spec.n;
    const double sd = std::sqrt(spec.sigma2);
    std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            uint64_t counter = static_cast<uint64_t>(i) * n + j;
            double u = uniform01(spec.seed, kOffdiagStream, counter);
            double s = sd;
            if (spec.profile) s *= (*spec.profile)[static_cast<size_t>(i) * n + j];
            double v = draw_value(spec.family, spec.mu, s, spec.table, u);
            a[static_cast<size_t>(i) * n + j] = v;
            a[static_cast<size_t>(j) * n + i] = v;
        }
    }
    if (spec.diagonal) {
        const DiagonalLaw& d = *spec.diagonal;
        double dsd = std::sqrt(d.variance);
        for (int i = 0; i < n; ++i) {
            double u = uniform01(spec.seed, kDiagStream, static_cast<uint64_t>(i));
            a[static_cast<size_t>(i) * n + i] = draw_value(d.family, d.mean, dsd, d.table, u);
        }
    }
    return SymMatrix(n, std::move(a));
}

CenteredMatrix center(const SymMatrix& A, double mu) {
    if (!(mu > 0.0)) throw DomainError("center: mu must be positive");
    const int n = A.n();
    CenteredMatrix C;
    C.n = n;
    C.a.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            C.a[static_cast<size_t>(i) * n + j] = A(i, j) - (i == j ? 0.0 : mu);
        }
    }
    return C;
}

double epsilon_n(int n, double mu, double K) {
    if (n < 2) throw DomainError("epsilon_n: n must be >= 2");
    if (!(mu > 0.0)) throw DomainError("epsilon_n: mu must be positive");
    if (!(K >= 1.0)) throw DomainError("epsilon_n: K must be >= 1");
    return std::sqrt(5.0 * K * std::log(static_cast<double>(n)) / (n * mu));
}

}  // namespace opnorm
