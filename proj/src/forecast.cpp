#include "fiegarch/forecast.hpp"

#include "fiegarch/errors.hpp"
#include "fiegarch/estimate.hpp"
#include "fiegarch/kernels.hpp"
#include "fiegarch/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fiegarch {

namespace {

const CoefficientTable& ensure_weights(const FiegarchSpec& spec, std::size_t needed, const CoefficientTable* given,
                                      CoefficientTable& storage) {
    if (given != nullptr && given->size() >= needed) return *given;
    storage = impulse_weights(spec, needed == 0 ? 0 : needed - 1, WeightMethod::Factored);
    return storage;
}

// running[j] = sum_{k=0}^{j} lambda_k^2
std::vector<double> cumulative_squares(std::span<const double> impulse) {
    std::vector<double> out(impulse.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < impulse.size(); ++k) {
        acc += impulse[k] * impulse[k];
        out[k] = acc;
    }
    return out;
}

}  // namespace

std::vector<double> forecast_ln_sigma2(const FiegarchSpec& spec, std::span<const double> g_history, std::size_t horizon,
                                       const CoefficientTable* impulse) {
    if (g_history.empty()) throw Error(ErrorKind::InsufficientData, "forecast needs a nonempty history");
    CoefficientTable storage;
    const auto& imp = ensure_weights(spec, g_history.size() + horizon, impulse, storage);
    auto out = kernels::omp::shifted_history_sums(imp.span(), g_history, horizon);
    for (double& v : out) v += spec.omega;
    return out;
}

VarianceForecast forecast_sigma2(const FiegarchSpec& spec, std::span<const double> g_history, std::size_t horizon,
                              double shock_variance, const CoefficientTable* impulse) {
    CoefficientTable storage;
    const auto& imp = ensure_weights(spec, g_history.size() + horizon, impulse, storage);
    const auto ln = forecast_ln_sigma2(spec, g_history, horizon, &imp);
    const auto cum = cumulative_squares(imp.span().subspan(0, horizon));

    VarianceForecast out;
    out.plain.resize(horizon);
    out.corrected.resize(horizon);
    for (std::size_t h = 1; h <= horizon; ++h) {
        out.plain[h - 1] = std::exp(ln[h - 1]);
        const double factor = h == 1 ? 1.0 : 1.0 + 0.5 * shock_variance * cum[h - 2];
        out.corrected[h - 1] = out.plain[h - 1] * factor;
    }
    return out;
}

MseForecast forecast_mse(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t horizon,
                         std::optional<std::size_t> n_history, std::size_t m) {
    if (!(spec.d < 0.5)) throw Error(ErrorKind::NonStationary, "forecast MSE requires d < 0.5");
    const auto& f = moment_functionals(dist);
    const double sg = shock_variance(spec, f);
    const std::size_t table_len = std::max(m + 1, horizon);
    const auto impulse = impulse_weights(spec, table_len - 1, WeightMethod::Factored);
    const auto cum = cumulative_squares(impulse.span());
    const double total = cum[m];

    MseForecast out;
    out.ln_sigma2.resize(horizon);
    out.ln_x2.resize(horizon);
    for (std::size_t h = 1; h <= horizon; ++h) {
        double v = h == 1 ? 0.0 : sg * cum[h - 2];
        if (n_history) {
            const std::size_t first = *n_history + h - 1;
            if (first >= 1 && first <= m) v += sg * (total - cum[first - 1]);
            else if (first == 0) v += sg * total;
        }
        out.ln_sigma2[h - 1] = v;
        out.ln_x2[h - 1] = v + f.log_square_second_moment();
    }
    return out;
}

double limit_plain(const FiegarchSpec& spec) { return std::exp(spec.omega); }

double limit_corrected(const FiegarchSpec& spec, double shock_variance, std::size_t m) {
    const auto impulse = impulse_weights(spec, m, WeightMethod::Factored);
    double acc = 0.0;
    for (double v : impulse.values) acc += v * v;
    return std::exp(spec.omega) * (1.0 + 0.5 * shock_variance * acc);
}

XForecast forecast_x(const FiegarchSpec& spec, std::span<const double> g_history, std::size_t horizon,
                     double shock_variance) {
    XForecast out;
    out.x_hat.assign(horizon, 0.0);
    out.x2_hat = forecast_sigma2(spec, g_history, horizon, shock_variance).corrected;
    return out;
}

ForecastErrors forecast_errors(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size() || actual.empty()) {
        throw Error(ErrorKind::Usage, "forecast error measures need equal, nonempty windows");
    }
    ForecastErrors out;
    out.zero_actual.assign(actual.size(), false);
    double sum_abs = 0.0;
    double sum_pct = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = std::abs(predicted[i] - actual[i]);
        sum_abs += e;
        out.max_ae = std::max(out.max_ae, e);
        if (actual[i] == 0.0) {
            out.zero_actual[i] = true;
            ++out.zero_count;
        } else {
            sum_pct += e / actual[i];
        }
    }
    const double n = static_cast<double>(actual.size());
    out.mae = sum_abs / n;
    out.mpe = out.zero_count > 0 ? std::numeric_limits<double>::infinity() : sum_pct / n;
    return out;
}

ForecastResult forecast_from_data(const FiegarchSpec& spec, std::span<const double> series, std::size_t horizon,
                                  const InnovationDist& dist, std::size_t m) {
    const std::size_t n = series.size();
    if (n == 0) throw Error(ErrorKind::InsufficientData, "forecast needs a nonempty history");
    const auto rec = reconstruct(spec, series);

    double mean_abs = 0.0;
    double mean_zabs = 0.0;
    for (double z : rec.z) {
        mean_abs += std::abs(z);
        mean_zabs += z * std::abs(z);
    }
    mean_abs /= static_cast<double>(n);
    mean_zabs /= static_cast<double>(n);

    MomentFunctionals sample_moments;
    sample_moments.abs_mean = mean_abs;
    sample_moments.signed_square_mean = mean_zabs;
    const double sg_hat = shock_variance(spec, sample_moments);

    std::vector<double> g(n);
    for (std::size_t t = 0; t < n; ++t) g[t] = news_impact(rec.z[t], spec.theta, spec.gamma, mean_abs);

    const auto impulse = impulse_weights(spec, n + horizon, WeightMethod::Factored);
    ForecastResult out;
    out.horizon = horizon;
    out.ln_sigma2_hat = forecast_ln_sigma2(spec, g, horizon, &impulse);
    const auto sig = forecast_sigma2(spec, g, horizon, sg_hat, &impulse);
    out.sigma2_plain = sig.plain;
    out.sigma2_corrected = sig.corrected;
    out.shock_variance_hat = sg_hat;
    out.abs_mean_hat = mean_abs;
    out.z_hat = rec.z;

    if (spec.d < 0.5 && validate(spec).beta_stable) {
        const auto mse = forecast_mse(spec, dist, horizon, n, std::max(m, n + horizon));
        out.mse_ln_sigma2 = mse.ln_sigma2;
        out.mse_ln_x2 = mse.ln_x2;
        out.limit_corrected = limit_corrected(spec, shock_variance(spec, moment_functionals(dist)), m);
    } else {
        out.mse_ln_sigma2.assign(horizon, std::numeric_limits<double>::quiet_NaN());
        out.mse_ln_x2.assign(horizon, std::numeric_limits<double>::quiet_NaN());
        out.limit_corrected = std::numeric_limits<double>::quiet_NaN();
    }
    out.limit_plain = limit_plain(spec);
    return out;
}

}  // namespace fiegarch
