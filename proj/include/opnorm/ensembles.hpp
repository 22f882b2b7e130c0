#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opnorm/core.hpp"

namespace opnorm {

enum class Family { er, bernoulli_scaled, uniform, exponential, custom_iid };

Family family_from_string(const std::string& s);
std::string family_to_string(Family f);

// Finite support/probability table for custom_iid: (value, probability).
using SupportTable = std::vector<std::pair<double, double>>;

struct DiagonalLaw {
    Family family = Family::exponential;
    double mean = 0.0;      // zeta_n
    double variance = 0.0;  // rho_n^2
    SupportTable table;     // for custom_iid
};

struct EnsembleSpec {
    Family family = Family::er;
    int n = 0;
    double mu = 0.0;      // entry mean
    double sigma2 = -1.0; // entry variance; < 0 means "derive from the family"
    // Optional symmetric n*n grid of multipliers m_ij > 0 applied to the
    // entry standard deviation: sd(i,j) = m_ij * sqrt(sigma2). Only families
    // with a free variance accept a profile.
    std::optional<std::vector<double>> profile;
    std::optional<DiagonalLaw> diagonal;
    SupportTable table;  // for custom_iid
    uint64_t seed = 0;

    // Throws DomainError on invalid parameterizations and fills in the
    // family-determined sigma2 (er: mu(1-mu); exponential: mu^2; custom_iid:
    // from the table).
    EnsembleSpec normalized() const;
};

/// Symmetric nonnegative sample; a deterministic function of the
/// EnsembleSpec fields (seed included), independent of evaluation order.
SymMatrix sample(const EnsembleSpec& spec);

/// A - mu*J + mu*I. The result may have negative entries.
CenteredMatrix center(const SymMatrix& A, double mu);

/// sqrt(5 K log(n) / (n mu)); log is the natural logarithm.
double epsilon_n(int n, double mu, double K);

// Scalar draw from a family with mean mu and standard deviation sd, driven by
// a single uniform u in [0,1). Exposed for the moment-matching tests.
double draw_value(Family family, double mu, double sd, const SupportTable& table, double u);

}  // namespace opnorm
