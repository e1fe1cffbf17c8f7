#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fiegarch {

struct FiegarchSpec;

enum class Family { Gaussian, Ged };

/// Standardized (mean 0, variance 1) innovation law.
struct InnovationDist {
    Family family = Family::Gaussian;
    double nu = 2.0;  ///< GED tail-thickness; ignored for Gaussian

    static InnovationDist gaussian() { return {Family::Gaussian, 2.0}; }
    static InnovationDist ged(double nu) { return {Family::Ged, nu}; }

    [[nodiscard]] bool symmetric() const noexcept { return true; }
    /// Moment results for the process need nu > 1; smaller values are allowed
    /// but flagged here.
    [[nodiscard]] bool moment_conditions_hold() const noexcept { return family == Family::Gaussian || nu > 1.0; }

    bool operator==(const InnovationDist&) const = default;
};

std::string describe(const InnovationDist& dist);

/// Parses "gaussian", "normal" or "ged:<nu>". Throws Error(Usage).
InnovationDist parse_distribution(const std::string& text);

/// GED scale constant so the law has unit variance (1 for the Gaussian).
double ged_scale(double nu);

double density(const InnovationDist& dist, double z);
double cdf(const InnovationDist& dist, double z);

/// n i.i.d. standardized draws, reproducible from (dist, n, seed).
std::vector<double> sample(const InnovationDist& dist, std::size_t n, std::uint64_t seed);

/// Expectations of functions of Z that the moment and forecast formulas use.
struct MomentFunctionals {
    double abs_mean = 0.0;     ///< E|Z|
    double signed_square_mean = 0.0;     ///< E(Z|Z|)
    double third_moment = 0.0;       ///< E(Z^3)
    double fourth_moment = 0.0;       ///< E(Z^4)
    double log_square_mean = 0.0;     ///< E(ln Z^2)
    double log_square_variance = 0.0;     ///< Var(ln Z^2)
    double signed_log_square_mean = 0.0;    ///< E(Z ln Z^2)
    double abs_log_square_mean = 0.0;  ///< E(|Z| ln Z^2)

    /// E[(ln Z^2)^2]
    [[nodiscard]] double log_square_second_moment() const noexcept { return log_square_variance + log_square_mean * log_square_mean; }
};

/// Integrates each functional against the density. Results are cached per
/// distribution. Throws QuadratureFailure.
const MomentFunctionals& moment_functionals(const InnovationDist& dist);

/// Adaptive integral of h(z) f(z) over the real line. Throws QuadratureFailure
/// if the error estimate exceeds `abs_tol`.
double expectation(const InnovationDist& dist, const std::function<double(double)>& h, double abs_tol = 1e-10);

/// theta z + gamma (|z| - abs_mean)
inline double news_impact(double z, double theta, double gamma, double abs_mean) noexcept {
    return theta * z + gamma * ((z < 0 ? -z : z) - abs_mean);
}

/// E exp(c g(Z)) using the spec's theta and gamma and the exact E|Z|.
/// Throws DivergentIntegral when the integral is infinite.
double shock_mgf(double c, const FiegarchSpec& spec, const InnovationDist& dist);

/// Closed form of shock_mgf for Gaussian innovations.
double shock_mgf_gaussian(double c, double theta, double gamma);

}  // namespace fiegarch
