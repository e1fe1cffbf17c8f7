#pragma once

#include "fiegarch/coeffs.hpp"
#include "fiegarch/innovations.hpp"
#include "fiegarch/spec.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fiegarch {

/// Var g(Z) = theta^2 + gamma^2 - (gamma E|Z|)^2 + 2 theta gamma E(Z|Z|).
double shock_variance(const FiegarchSpec& spec, const MomentFunctionals& f);

/// Cov(g(Z), ln Z^2).
double shock_log_covariance(const FiegarchSpec& spec, const MomentFunctionals& f);

struct ModelMoments {
    double shock_variance = 0.0;
    double shock_log_covariance = 0.0;
    double log_square_variance = 0.0;  ///< Var(ln Z^2)
    double kurtosis = 0.0;    ///< NaN unless requested
    double asymmetry = 0.0;   ///< NaN unless requested
    std::size_t m = 0;
};

ModelMoments model_moments(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t m = kDefaultTruncation,
                           bool with_shape = false);

/// Autocovariances of ln sigma_t^2 at lags 0..maxlag, lambda truncated at m.
/// Throws NonStationary for d >= 0.5.
std::vector<double> acvf_ln_sigma2(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t maxlag,
                                   std::size_t m = kDefaultTruncation);

/// Autocovariances of ln X_t^2 at lags 0..maxlag.
std::vector<double> acvf_ln_x2(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t maxlag,
                               std::size_t m = kDefaultTruncation);

/// Spectral density of ln sigma_t^2 (closed form). Frequencies in (0, pi];
/// zero is accepted only when d <= 0.
std::vector<double> spectral_density_ln_sigma2(const FiegarchSpec& spec, const InnovationDist& dist,
                                               std::span<const double> freqs);

/// Spectral density of ln X_t^2; the lambda transform is a truncated sum of m terms.
std::vector<double> spectral_density_ln_x2(const FiegarchSpec& spec, const InnovationDist& dist,
                                           std::span<const double> freqs, std::size_t m = kDefaultTruncation);

/// Autocovariances of the noise driving beta(B)(1-B)^d (ln X_t^2 - mean),
/// lags 0..maxlag, with phi truncated at m. Requires |d| < 0.5.
std::vector<double> arfima_innovation_acvf(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t maxlag,
                                           std::size_t m = kDefaultTruncation);

/// E X^4 / (E X^2)^2, infinite product truncated at m (with early stop).
double kurtosis(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t m = kDefaultTruncation);

/// E X^3 / (E X^2)^{3/2}.
double asymmetry(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t m = kDefaultTruncation);

/// sum_k ln E exp(c * lambda_k g(Z)) over the given coefficients, stopping
/// early after 100 consecutive terms below 1e-14 in magnitude.
double log_mgf_product(double c, std::span<const double> impulse, const FiegarchSpec& spec,
                       const InnovationDist& dist);

}  // namespace fiegarch
