#include "fiegarch/diagnostics.hpp"

#include "fiegarch/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

namespace fiegarch {

namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

double mean_of(std::span<const double> y) {
    double s = 0.0;
    for (double v : y) s += v;
    return s / static_cast<double>(y.size());
}

}  // namespace

Periodogram periodogram(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 4) throw Error(ErrorKind::InsufficientData, "periodogram needs at least 4 observations");
    const double mean = mean_of(series);

    std::unique_ptr<double, decltype(&fftw_free)> in(fftw_alloc_real(n), &fftw_free);
    std::unique_ptr<fftw_complex, decltype(&fftw_free)> out(fftw_alloc_complex(n / 2 + 1), &fftw_free);
    fftw_plan plan = nullptr;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE);
    }
    for (std::size_t t = 0; t < n; ++t) in.get()[t] = series[t] - mean;
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }

    const std::size_t m = (n - 1) / 2;
    Periodogram p;
    p.freqs.resize(m);
    p.values.resize(m);
    const double scale = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));
    for (std::size_t k = 1; k <= m; ++k) {
        const double re = out.get()[k][0];
        const double im = out.get()[k][1];
        p.freqs[k - 1] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        p.values[k - 1] = (re * re + im * im) * scale;
    }
    return p;
}

double ks_critical_value(double alpha) {
    if (alpha == 0.05) return 1.36;
    if (alpha == 0.01) return 1.63;
    throw Error(ErrorKind::Usage, "significance level must be 0.05 or 0.01");
}

KsSpectralReport ks_spectral_test(std::span<const double> series,
                                  const std::function<std::vector<double>(std::span<const double>)>& spectral_density,
                                  double alpha) {
    KsSpectralReport r;
    r.alpha = alpha;
    r.critical = ks_critical_value(alpha);

    const auto pg = periodogram(series);
    const std::size_t m = pg.values.size();
    if (m < 2) throw Error(ErrorKind::InsufficientData, "too few Fourier frequencies for the test");
    const auto f = spectral_density(pg.freqs);
    if (f.size() != m) throw Error(ErrorKind::Usage, "spectral density returned the wrong number of values");

    std::vector<double> ratio(m);
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        if (!(f[k] > 0.0) || !std::isfinite(f[k])) {
            std::ostringstream os;
            os << "spectral density is not positive at frequency " << pg.freqs[k];
            throw Error(ErrorKind::NonPositiveDensity, os.str());
        }
        ratio[k] = pg.values[k] / f[k];
        total += ratio[k];
    }

    r.c.resize(m);
    r.lower.resize(m);
    r.upper.resize(m);
    const double band = r.critical / std::sqrt(static_cast<double>(m - 1));
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        acc += ratio[i];
        r.c[i] = total > 0.0 ? acc / total : static_cast<double>(i + 1) / static_cast<double>(m);
        const double centre = static_cast<double>(i) / static_cast<double>(m - 1);
        r.lower[i] = centre - band;
        r.upper[i] = centre + band;
    }
    r.c[m - 1] = 1.0;
    // C is constant on [i, i+1) while both lines rise, so the step can only
    // leave the band through the upper line at x = i or the lower line as x
    // approaches i + 1 (an open end, only for i < m).
    for (std::size_t i = 0; i < m; ++i) {
        const double centre = static_cast<double>(i) / static_cast<double>(m - 1);
        r.max_deviation = std::max(r.max_deviation, std::abs(r.c[i] - centre));
        const bool above = r.c[i] > r.upper[i];
        const bool below = i + 1 < m && r.c[i] < static_cast<double>(i + 1) / static_cast<double>(m - 1) - band;
        if (!r.first_exit_index && (above || below)) r.first_exit_index = i + 1;
    }
    r.reject = r.first_exit_index.has_value();
    return r;
}

std::vector<double> sample_acvf(std::span<const double> series, std::size_t maxlag) {
    const std::size_t n = series.size();
    if (n <= maxlag) throw Error(ErrorKind::InsufficientData, "series is shorter than the requested lag");
    const double mean = mean_of(series);
    std::vector<double> out(maxlag + 1, 0.0);
    for (std::size_t h = 0; h <= maxlag; ++h) {
        double s = 0.0;
        for (std::size_t t = 0; t + h < n; ++t) s += (series[t] - mean) * (series[t + h] - mean);
        out[h] = s / static_cast<double>(n);
    }
    return out;
}

namespace {

std::optional<double> standardized_moment(std::span<const double> y, int order) {
    if (y.size() < 2) return std::nullopt;
    const double mean = mean_of(y);
    double m2 = 0.0;
    double mk = 0.0;
    for (double v : y) {
        const double d = v - mean;
        m2 += d * d;
        mk += std::pow(d, order);
    }
    const double n = static_cast<double>(y.size());
    m2 /= n;
    mk /= n;
    if (!(m2 > 0.0)) return std::nullopt;
    return mk / std::pow(m2, 0.5 * order);
}

}  // namespace

std::optional<double> sample_kurtosis(std::span<const double> series) { return standardized_moment(series, 4); }

std::optional<double> sample_asymmetry(std::span<const double> series) { return standardized_moment(series, 3); }

}  // namespace fiegarch
