#pragma once

#include "fiegarch/coeffs.hpp"
#include "fiegarch/innovations.hpp"
#include "fiegarch/spec.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace fiegarch {

/// omega + sum_{k=0}^{n-1} lambda_{k+h-1} g_{n-k} for h = 1..H, where
/// g_history holds g(z_1), ..., g(z_n) (most recent last). When `lambda` is
/// null a table of length n + H is computed.
std::vector<double> forecast_ln_sigma2(const FiegarchSpec& spec, std::span<const double> g_history, std::size_t horizon,
                                       const CoefficientTable* impulse = nullptr);

struct VarianceForecast {
    std::vector<double> plain;      ///< exp of the log forecast
    std::vector<double> corrected;  ///< second-order corrected forecast
};

/// corrected_h = plain_h (1 + v / 2 sum_{k=0}^{h-2} lambda_k^2) with v the shock
/// variance; corrected_1 = plain_1.
VarianceForecast forecast_sigma2(const FiegarchSpec& spec, std::span<const double> g_history, std::size_t horizon,
                              double shock_variance, const CoefficientTable* impulse = nullptr);

struct MseForecast {
    std::vector<double> ln_sigma2;
    std::vector<double> ln_x2;
};

/// Forecast mean square errors for h = 1..H. Without `n_history` the
/// infinite-history formulas apply; with it, the tail sum over lags
/// n+h-1..m is added. Throws NonStationary for d >= 0.5.
MseForecast forecast_mse(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t horizon,
                         std::optional<std::size_t> n_history = std::nullopt, std::size_t m = kDefaultTruncation);

/// Long-horizon limits of the plain and corrected predictors.
double limit_plain(const FiegarchSpec& spec);
double limit_corrected(const FiegarchSpec& spec, double shock_variance, std::size_t m = kDefaultTruncation);

struct XForecast {
    std::vector<double> x_hat;   ///< always zero
    std::vector<double> x2_hat;  ///< equals the sigma^2 forecast
};

XForecast forecast_x(const FiegarchSpec& spec, std::span<const double> g_history, std::size_t horizon,
                     double shock_variance);

struct ForecastErrors {
    double mae = 0.0;
    double mpe = 0.0;  ///< infinite when some actual value is zero
    double max_ae = 0.0;
    std::vector<bool> zero_actual;
    std::size_t zero_count = 0;
};

/// e = predicted - actual; mae = mean |e|, mpe = mean |e| / actual, max_ae = max |e|.
ForecastErrors forecast_errors(std::span<const double> actual, std::span<const double> predicted);

/// Complete forecast for a fitted model and its data.
struct ForecastResult {
    std::size_t horizon = 0;
    std::vector<double> ln_sigma2_hat;
    std::vector<double> sigma2_plain;
    std::vector<double> sigma2_corrected;
    std::vector<double> mse_ln_sigma2;
    std::vector<double> mse_ln_x2;
    double limit_plain = 0.0;
    double limit_corrected = 0.0;
    double shock_variance_hat = 0.0;  ///< from residual sample moments
    double abs_mean_hat = 0.0;        ///< mean |z_t| of the residuals
    std::vector<double> z_hat;
};

/// Residuals from the in-sample recursion, sigma_g^2 and E|Z| replaced by
/// residual sample moments, then plain and corrected forecasts for h = 1..H. The MSE
/// columns use the theoretical formulas for `dist` with the finite-history
/// tail and truncation `m`.
ForecastResult forecast_from_data(const FiegarchSpec& spec, std::span<const double> series, std::size_t horizon,
                                  const InnovationDist& dist = InnovationDist::gaussian(),
                                  std::size_t m = kDefaultTruncation);

}  // namespace fiegarch
