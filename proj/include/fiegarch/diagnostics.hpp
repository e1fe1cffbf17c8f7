#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fiegarch {

struct Periodogram {
    std::vector<double> freqs;   ///< 2 pi k / n, k = 1..floor((n-1)/2)
    std::vector<double> values;  ///< |sum_t (y_t - mean) e^{-i w t}|^2 / (2 pi n)
};

/// Periodogram at the positive Fourier frequencies, computed with FFTW.
/// Throws InsufficientData for n < 4.
Periodogram periodogram(std::span<const double> series);

/// Critical value of the cumulative-periodogram test (1.36 or 1.63).
double ks_critical_value(double alpha);

struct KsSpectralReport {
    std::vector<double> c;      ///< Y_1..Y_m, Y_m = 1
    std::vector<double> lower;  ///< (x-1)/(m-1) - k/sqrt(m-1)
    std::vector<double> upper;  ///< (x-1)/(m-1) + k/sqrt(m-1)
    double alpha = 0.05;
    double critical = 1.36;
    bool reject = false;
    std::optional<std::size_t> first_exit_index;  ///< 1-based x of the first exit
    double max_deviation = 0.0;                   ///< max_x |Y_x - (x-1)/(m-1)|
};

/// Cumulative ratio of periodogram to `spectral_density` at the Fourier
/// frequencies against Kolmogorov-Smirnov bands. Throws NonPositiveDensity.
KsSpectralReport ks_spectral_test(std::span<const double> series,
                                  const std::function<std::vector<double>(std::span<const double>)>& spectral_density,
                                  double alpha = 0.05);

/// Biased (divisor n) autocovariances at lags 0..maxlag.
std::vector<double> sample_acvf(std::span<const double> series, std::size_t maxlag);

/// Moment-ratio kurtosis; nullopt when the sample variance is zero.
std::optional<double> sample_kurtosis(std::span<const double> series);
std::optional<double> sample_asymmetry(std::span<const double> series);

}  // namespace fiegarch
