#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fiegarch {

/**
 * Parameters of a FIEGARCH(p,d,q) model.
 *
 * The lag polynomials follow the sign convention
 *   alpha(z) = 1 - sum_i alpha[i-1] z^i,   beta(z) = 1 - sum_j beta[j-1] z^j,
 * so `alpha` and `beta` hold the coefficients of lags 1..p and 1..q.
 */
struct FiegarchSpec {
    double d = 0.0;
    double omega = 0.0;
    double theta = 0.0;
    double gamma = 0.0;
    std::vector<double> alpha;
    std::vector<double> beta;

    [[nodiscard]] std::size_t p() const noexcept { return alpha.size(); }
    [[nodiscard]] std::size_t q() const noexcept { return beta.size(); }

    /// Number of free parameters (d, omega, theta, gamma, alpha, beta).
    [[nodiscard]] std::size_t num_params() const noexcept { return 4 + p() + q(); }

    [[nodiscard]] bool all_finite() const noexcept;

    bool operator==(const FiegarchSpec&) const = default;
};

/// Stable identifier of a spec, used to tag coefficient tables.
std::uint64_t spec_hash(const FiegarchSpec& spec) noexcept;

/// Named parameter sets M1..M6 used throughout the simulation study.
std::optional<FiegarchSpec> preset(std::string_view name);
std::vector<std::string> preset_names();

/// Coefficients 1, -c[0], -c[1], ... of the polynomial 1 - sum c_i z^i,
/// evaluated at a complex point.
std::complex<double> eval_lag_polynomial(std::span<const double> coefs, std::complex<double> z);

/// Roots of 1 - sum_i c[i-1] z^i via the companion matrix. Trailing zero
/// coefficients lower the degree.
std::vector<std::complex<double>> lag_polynomial_roots(std::span<const double> coefs);

inline constexpr double kRootTolerance = 1e-8;
inline constexpr double kCommonRootTolerance = 1e-7;

struct ValidityReport {
    bool finite = true;
    bool weakly_stationary = false;  ///< d < 0.5
    bool strictly_valid = false;     ///< finite, beta stable and d < 0.5
    bool invertible = false;         ///< -1 < d < 0.5 and alpha roots outside the closed disk
    bool beta_stable = false;        ///< all beta roots have modulus > 1 + kRootTolerance
    bool alpha_outside_disk = false;
    bool common_roots_flag = false;  ///< warning only
    double min_beta_root_modulus = 0.0;

    /// Every precondition for simulation and population moments holds.
    [[nodiscard]] bool ok() const noexcept { return strictly_valid; }
};

ValidityReport validate(const FiegarchSpec& spec);

std::string describe(const FiegarchSpec& spec);

}  // namespace fiegarch
