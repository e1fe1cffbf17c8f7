#pragma once

#include "fiegarch/spec.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fiegarch {

/// E|Z| for the standard Gaussian, used by the in-sample recursion.
inline constexpr double kGaussianAbsMean = 0.79788456080286535588;  // sqrt(2/pi)

/// In-sample volatility and residuals for a given spec.
struct Reconstruction {
    std::vector<double> sigma2;
    std::vector<double> z;
    std::vector<double> g;  ///< g(z_t) with the centring constant used
};

/// sigma_1^2 = e^omega and, for t >= 2,
///   ln sigma_t^2 = omega + sum_{k=0}^{t-2} lambda_k g(z_{t-1-k}),  z_t = x_t / sigma_t,
/// i.e. g and x vanish before the sample. lambda is truncated at m = n.
/// `abs_mean` centres |z| inside g.
Reconstruction reconstruct(const FiegarchSpec& spec, std::span<const double> series,
                           double abs_mean = kGaussianAbsMean);

/// Gaussian quasi log-likelihood built on `reconstruct`. Throws
/// InsufficientData when n < p + q + 5 and NumericOverflow when a variance
/// leaves the representable range.
double loglik(const FiegarchSpec& spec, std::span<const double> series);

struct InfoCriteria {
    double aic = 0.0;
    double bic = 0.0;
    double hqc = 0.0;
};

InfoCriteria info_criteria(double loglik, std::size_t num_params, std::size_t n);

struct FitOptions {
    std::size_t p = 0;
    std::size_t q = 0;
    /// Starting point; when unset, defaults derived from the data are used.
    const FiegarchSpec* init = nullptr;
    /// Further candidate starts (for example the true parameters in tests).
    std::vector<FiegarchSpec> extra_starts;
    double d_lower = -0.99;
    double d_upper = 0.499;
    double root_margin = 1e-3;
    int restarts = 3;
    int max_iterations = 3000;
    double simplex_tolerance = 1e-7;
    std::uint64_t seed = 0x5eed;
    bool compute_stderr = true;
};

struct FitResult {
    FiegarchSpec spec_hat;
    double loglik = 0.0;
    std::vector<double> std_errors;  ///< order d, omega, theta, gamma, alpha..., beta...
    bool hessian_ok = false;
    bool converged = false;
    int iterations = 0;
    std::vector<double> sigma2_hat;
    std::vector<double> z_hat;
    InfoCriteria ic;
    ValidityReport validity;
};

/// Default start: d = 0.25, theta = gamma = 0.1, alpha = beta = 0 and
/// omega from the mean of ln x_t^2.
FiegarchSpec default_start(std::span<const double> series, std::size_t p, std::size_t q);

inline constexpr std::size_t kMinObservationsPerParameter = 10;

/// Maximizes `loglik` with a restarted simplex search. Throws
/// InsufficientData below kMinObservationsPerParameter observations per
/// free parameter.
FitResult fit(std::span<const double> series, const FitOptions& options);

/// Parameter vector in the order (d, omega, theta, gamma, alpha, beta).
std::vector<double> to_vector(const FiegarchSpec& spec);
FiegarchSpec from_vector(std::span<const double> v, std::size_t p, std::size_t q);

/// Standard errors from a central-difference Hessian of the log-likelihood.
/// Returns false (and NaN errors) when the negated Hessian is not positive definite.
bool hessian_stderr(const FiegarchSpec& spec, std::span<const double> series, std::vector<double>& out);

struct McStats {
    std::vector<double> mean;
    std::vector<double> sd;
    std::vector<double> bias;
    std::vector<double> mae;
    std::vector<double> mse;
};

/// Column-wise summaries of `estimates` (one row per replication). sd uses
/// divisor re.
McStats mc_stats(const std::vector<std::vector<double>>& estimates, std::span<const double> truth);

}  // namespace fiegarch
