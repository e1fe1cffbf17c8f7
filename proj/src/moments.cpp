#include "fiegarch/moments.hpp"

#include "fiegarch/errors.hpp"
#include "fiegarch/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace fiegarch {

namespace {

void require_stationary(const FiegarchSpec& spec) {
    if (!(spec.d < 0.5)) throw Error(ErrorKind::NonStationary, "ln sigma^2 is not stationary for d >= 0.5");
}

}  // namespace

double shock_variance(const FiegarchSpec& spec, const MomentFunctionals& f) {
    const double gm = spec.gamma * f.abs_mean;
    return spec.theta * spec.theta + spec.gamma * spec.gamma - gm * gm + 2.0 * spec.theta * spec.gamma * f.signed_square_mean;
}

double shock_log_covariance(const FiegarchSpec& spec, const MomentFunctionals& f) {
    return spec.theta * f.signed_log_square_mean + spec.gamma * (f.abs_log_square_mean - f.abs_mean * f.log_square_mean);
}

ModelMoments model_moments(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t m, bool with_shape) {
    const auto& f = moment_functionals(dist);
    ModelMoments out;
    out.shock_variance = shock_variance(spec, f);
    out.shock_log_covariance = shock_log_covariance(spec, f);
    out.log_square_variance = f.log_square_variance;
    out.m = m;
    out.kurtosis = std::numeric_limits<double>::quiet_NaN();
    out.asymmetry = std::numeric_limits<double>::quiet_NaN();
    if (with_shape) {
        out.kurtosis = kurtosis(spec, dist, m);
        out.asymmetry = asymmetry(spec, dist, m);
    }
    return out;
}

std::vector<double> acvf_ln_sigma2(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t maxlag,
                                   std::size_t m) {
    require_stationary(spec);
    const auto impulse = impulse_weights(spec, m, WeightMethod::Factored);
    auto out = kernels::omp::lagged_products(impulse.span(), maxlag);
    const double sg = shock_variance(spec, moment_functionals(dist));
    for (double& v : out) v *= sg;
    return out;
}

std::vector<double> acvf_ln_x2(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t maxlag,
                               std::size_t m) {
    require_stationary(spec);
    const auto& f = moment_functionals(dist);
    const auto impulse = impulse_weights(spec, m, WeightMethod::Factored);
    auto out = kernels::omp::lagged_products(impulse.span(), maxlag);
    const double sg = shock_variance(spec, f);
    const double kc = shock_log_covariance(spec, f);
    for (std::size_t h = 0; h <= maxlag; ++h) {
        out[h] *= sg;
        if (h == 0) out[h] += f.log_square_variance;
        else if (h - 1 <= impulse.m) out[h] += impulse[h - 1] * kc;
    }
    return out;
}

std::vector<double> spectral_density_ln_sigma2(const FiegarchSpec& spec, const InnovationDist& dist,
                                               std::span<const double> freqs) {
    require_stationary(spec);
    const double sg = shock_variance(spec, moment_functionals(dist));
    std::vector<double> out(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        const double w = freqs[j];
        if (w == 0.0 && spec.d > 0.0) throw Error(ErrorKind::Usage, "spectral density has a pole at frequency 0");
        const std::complex<double> z = std::polar(1.0, -w);
        const double ratio = std::norm(eval_lag_polynomial(spec.alpha, z)) / std::norm(eval_lag_polynomial(spec.beta, z));
        const double frac = std::pow(2.0 * std::abs(std::sin(0.5 * w)), -2.0 * spec.d);
        out[j] = sg / (2.0 * std::numbers::pi) * ratio * frac;
    }
    return out;
}

std::vector<double> spectral_density_ln_x2(const FiegarchSpec& spec, const InnovationDist& dist,
                                           std::span<const double> freqs, std::size_t m) {
    auto out = spectral_density_ln_sigma2(spec, dist, freqs);
    const auto& f = moment_functionals(dist);
    const double kc = shock_log_covariance(spec, f);
    if (kc != 0.0) {
        const auto impulse = impulse_weights(spec, m, WeightMethod::Factored);
        const auto transform = kernels::omp::fourier_sums(impulse.span(), freqs);
        for (std::size_t j = 0; j < freqs.size(); ++j) {
            out[j] += kc / std::numbers::pi * (std::polar(1.0, -freqs[j]) * transform[j]).real();
        }
    }
    for (double& v : out) v += f.log_square_variance / (2.0 * std::numbers::pi);
    return out;
}

std::vector<double> arfima_innovation_acvf(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t maxlag,
                                           std::size_t m) {
    if (!(std::abs(spec.d) < 0.5)) throw Error(ErrorKind::NonStationary, "requires |d| < 0.5");
    const auto& f = moment_functionals(dist);
    const double sg = shock_variance(spec, f);
    const double kc = shock_log_covariance(spec, f);
    const double sl = f.log_square_variance;

    // eps_t = sum_i a_i g(Z_{t-1-i}) + sum_j phi_j (ln Z_{t-j}^2 - E ln Z^2),
    // with a_0 = 1 and a_i = -alpha_i.
    std::vector<double> a(spec.p() + 1);
    a[0] = 1.0;
    for (std::size_t i = 0; i < spec.p(); ++i) a[i + 1] = -spec.alpha[i];
    const auto phi = filtered_difference_coeffs(spec.beta, spec.d, m).values;
    const auto phi_products = kernels::omp::lagged_products(phi, maxlag);
    auto phi_at = [&](std::size_t k) { return k < phi.size() ? phi[k] : 0.0; };

    std::vector<double> out(maxlag + 1, 0.0);
    for (std::size_t h = 0; h <= maxlag; ++h) {
        double gg = 0.0;
        for (std::size_t i = h; i < a.size(); ++i) gg += a[i] * a[i - h];
        double cross = 0.0;
        for (std::size_t i = (h == 0 ? 0 : h - 1); i < a.size(); ++i) cross += a[i] * phi_at(i + 1 - h);
        for (std::size_t i = 0; i < a.size(); ++i) cross += a[i] * phi_at(i + h + 1);
        out[h] = sg * gg + kc * cross + sl * phi_products[h];
    }
    return out;
}

double log_mgf_product(double c, std::span<const double> impulse, const FiegarchSpec& spec,
                       const InnovationDist& dist) {
    const bool gaussian = dist.family == Family::Gaussian;
    double total = 0.0;
    int small_run = 0;
    for (const double lk : impulse) {
        const double arg = c * lk;
        const double term = std::log(gaussian ? shock_mgf_gaussian(arg, spec.theta, spec.gamma)
                                              : shock_mgf(arg, spec, dist));
        total += term;
        small_run = std::abs(term) < 1e-14 ? small_run + 1 : 0;
        if (small_run >= 100) break;
    }
    return total;
}

double kurtosis(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t m) {
    require_stationary(spec);
    const auto impulse = impulse_weights(spec, m, WeightMethod::Factored);
    const double log_ratio =
        log_mgf_product(2.0, impulse.span(), spec, dist) - 2.0 * log_mgf_product(1.0, impulse.span(), spec, dist);
    return moment_functionals(dist).fourth_moment * std::exp(log_ratio);
}

double asymmetry(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t m) {
    require_stationary(spec);
    const double mz3 = moment_functionals(dist).third_moment;
    if (mz3 == 0.0) return 0.0;
    const auto impulse = impulse_weights(spec, m, WeightMethod::Factored);
    const double log_ratio =
        log_mgf_product(1.5, impulse.span(), spec, dist) - 1.5 * log_mgf_product(1.0, impulse.span(), spec, dist);
    return mz3 * std::exp(log_ratio);
}

}  // namespace fiegarch
