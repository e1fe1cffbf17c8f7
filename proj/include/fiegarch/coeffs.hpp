#pragma once

#include "fiegarch/spec.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fiegarch {

enum class CoefKind { Difference, FractionalSum, InverseLag, Impulse, FilteredDifference };

const char* to_string(CoefKind kind) noexcept;

/// Truncated power-series expansion, values[0..m].
struct CoefficientTable {
    CoefKind kind = CoefKind::Difference;
    double d = 0.0;
    std::vector<double> values;
    std::size_t m = 0;
    std::uint64_t spec_hash = 0;

    [[nodiscard]] double operator[](std::size_t k) const { return values[k]; }
    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] std::span<const double> span() const noexcept { return values; }
};

/// Default truncation for theory-side sums.
inline constexpr std::size_t kDefaultTruncation = 50'000;

/// Coefficients of (1 - z)^d.
CoefficientTable difference_coeffs(double d, std::size_t m);

/// Coefficients of (1 - z)^{-d}.
CoefficientTable fractional_sum_coeffs(double d, std::size_t m);

/// Coefficients of 1 / beta(z). Throws RootInsideDisk when beta has a root
/// in the closed unit disk.
CoefficientTable inverse_lag_coeffs(std::span<const double> beta, std::size_t m);

/// Coefficients of beta(z) (1 - z)^d.
CoefficientTable filtered_difference_coeffs(std::span<const double> beta, double d, std::size_t m);

enum class WeightMethod {
    /// O(m^2) recurrence lambda_k = a_k - sum_{i<k} lambda_i phi_{k-i}.
    Recurrence,
    /// O(m (p+q)): divide the pi-series by beta, then multiply by alpha.
    Factored,
};

/// Coefficients of alpha(z) / beta(z) * (1 - z)^{-d}.
CoefficientTable impulse_weights(const FiegarchSpec& spec, std::size_t m,
                               WeightMethod method = WeightMethod::Recurrence);

/// Independent check of impulse_weights: explicit triple convolution of the
/// alpha, 1/beta and pi series. O(m^2 p); intended for tests.
CoefficientTable impulse_weights_oracle(const FiegarchSpec& spec, std::size_t m);

/// Large-k approximation alpha(1) / (beta(1) Gamma(d) k^{1-d}).
/// Throws GammaPole for d in {0, -1, -2, ...}.
double impulse_weight_asymptote(const FiegarchSpec& spec, std::size_t k);

struct WeightQuotients {
    double impulse = 0.0;
    double q1 = 0.0;  ///< lambda_k / k^d
    double q2 = 0.0;  ///< lambda_k / asymptote(k)
};

/// Quotients at lag k using a precomputed lambda table (k <= table.m).
WeightQuotients weight_quotients(const FiegarchSpec& spec, const CoefficientTable& impulse, std::size_t k);

}  // namespace fiegarch
