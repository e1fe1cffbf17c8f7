#include "fiegarch/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fiegarch::kernels {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    assert(a.size() == b.size());
    const std::size_t n = a.size();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    for (; i < n; ++i) s0 += a[i] * b[i];
    return (s0 + s1) + (s2 + s3);
}

double dot_reversed(std::span<const double> a, std::span<const double> b) noexcept {
    assert(a.size() == b.size());
    const std::size_t n = a.size();
    const double* rb = b.data() + n;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += a[i] * rb[-1 - static_cast<std::ptrdiff_t>(i)];
        s1 += a[i + 1] * rb[-2 - static_cast<std::ptrdiff_t>(i)];
        s2 += a[i + 2] * rb[-3 - static_cast<std::ptrdiff_t>(i)];
        s3 += a[i + 3] * rb[-4 - static_cast<std::ptrdiff_t>(i)];
    }
    for (; i < n; ++i) s0 += a[i] * rb[-1 - static_cast<std::ptrdiff_t>(i)];
    return (s0 + s1) + (s2 + s3);
}

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_threads(int n) noexcept {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

namespace {

// Exact exp(-i k w) at the start of every chunk, rotations within it.
constexpr std::size_t kResync = 256;

std::complex<double> fourier_sum_one(std::span<const double> c, double w) {
    const std::complex<double> step = std::polar(1.0, -w);
    std::complex<double> acc = 0.0;
    for (std::size_t start = 0; start < c.size(); start += kResync) {
        std::complex<double> e = std::polar(1.0, -w * static_cast<double>(start));
        std::complex<double> part = 0.0;
        const std::size_t stop = std::min(c.size(), start + kResync);
        for (std::size_t k = start; k < stop; ++k) {
            part += c[k] * e;
            e *= step;
        }
        acc += part;
    }
    return acc;
}

}  // namespace

namespace serial {

std::vector<double> series_recurrence(std::span<const double> base, std::span<const double> weights) {
    const std::size_t len = base.size();
    assert(weights.size() >= len);
    std::vector<double> out(len, 0.0);
    if (len == 0) return out;
    out[0] = base[0];
    for (std::size_t k = 1; k < len; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) s += out[i] * weights[k - i];
        out[k] = base[k] + s;
    }
    return out;
}

std::vector<double> causal_filter(std::span<const double> coefs, std::span<const double> input) {
    const std::size_t len = coefs.size();
    if (len == 0 || input.size() < len) return {};
    const std::size_t n = input.size() - len + 1;
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        double s = 0.0;
        for (std::size_t k = 0; k < len; ++k) s += coefs[k] * input[t + len - 1 - k];
        out[t] = s;
    }
    return out;
}

std::vector<double> lagged_products(std::span<const double> c, std::size_t maxlag) {
    std::vector<double> out(maxlag + 1, 0.0);
    for (std::size_t h = 0; h <= maxlag && h < c.size(); ++h) {
        double s = 0.0;
        for (std::size_t k = 0; k + h < c.size(); ++k) s += c[k] * c[k + h];
        out[h] = s;
    }
    return out;
}

std::vector<std::complex<double>> fourier_sums(std::span<const double> c, std::span<const double> freqs) {
    std::vector<std::complex<double>> out(freqs.size());
    for (std::size_t j = 0; j < freqs.size(); ++j) {
        std::complex<double> s = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * std::polar(1.0, -freqs[j] * static_cast<double>(k));
        out[j] = s;
    }
    return out;
}

std::vector<double> shifted_history_sums(std::span<const double> c, std::span<const double> history,
                                         std::size_t horizon) {
    const std::size_t n = history.size();
    assert(c.size() + 1 >= n + horizon);
    std::vector<double> out(horizon, 0.0);
    for (std::size_t h = 1; h <= horizon; ++h) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += c[k + h - 1] * history[n - 1 - k];
        out[h - 1] = s;
    }
    return out;
}

}  // namespace serial

namespace omp {

std::vector<double> series_recurrence(std::span<const double> base, std::span<const double> weights) {
    const std::size_t len = base.size();
    assert(weights.size() >= len);
    std::vector<double> out(len, 0.0);
    if (len == 0) return out;
    const std::size_t m = len - 1;

    // With wrev[j] = weights[m - j], weights[k - i] = wrev[m - k + i], so the
    // sum over i < k is a forward dot product of out[0..k) and wrev[m-k ..).
    std::vector<double> wrev(len);
    for (std::size_t j = 0; j <= m; ++j) wrev[j] = weights[m - j];

    std::vector<double> partial((len + kReductionBlock - 1) / kReductionBlock + 1, 0.0);
    out[0] = base[0];
    for (std::size_t k = 1; k <= m; ++k) {
        const std::size_t offset = m - k;
        const std::size_t nblocks = (k + kReductionBlock - 1) / kReductionBlock;
        const auto nb = static_cast<std::ptrdiff_t>(nblocks);
#pragma omp parallel for schedule(static) if (nblocks > 4)
        for (std::ptrdiff_t b = 0; b < nb; ++b) {
            const std::size_t lo = static_cast<std::size_t>(b) * kReductionBlock;
            const std::size_t hi = std::min(k, lo + kReductionBlock);
            partial[static_cast<std::size_t>(b)] =
                dot(std::span<const double>(out.data() + lo, hi - lo),
                    std::span<const double>(wrev.data() + offset + lo, hi - lo));
        }
        double s = 0.0;
        for (std::size_t b = 0; b < nblocks; ++b) s += partial[b];
        out[k] = base[k] + s;
    }
    return out;
}

std::vector<double> causal_filter(std::span<const double> coefs, std::span<const double> input) {
    const std::size_t len = coefs.size();
    if (len == 0 || input.size() < len) return {};
    const std::size_t n = input.size() - len + 1;
    std::vector<double> out(n);
    const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t t = 0; t < nn; ++t) {
        const auto ut = static_cast<std::size_t>(t);
        out[ut] = dot_reversed(coefs, input.subspan(ut, len));
    }
    return out;
}

std::vector<double> lagged_products(std::span<const double> c, std::size_t maxlag) {
    std::vector<double> out(maxlag + 1, 0.0);
    const std::size_t top = std::min(maxlag + 1, c.size());
    const auto nt = static_cast<std::ptrdiff_t>(top);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t h = 0; h < nt; ++h) {
        const auto uh = static_cast<std::size_t>(h);
        const std::size_t len = c.size() - uh;
        out[uh] = dot(c.subspan(0, len), c.subspan(uh, len));
    }
    return out;
}

std::vector<std::complex<double>> fourier_sums(std::span<const double> c, std::span<const double> freqs) {
    std::vector<std::complex<double>> out(freqs.size());
    const auto nf = static_cast<std::ptrdiff_t>(freqs.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t j = 0; j < nf; ++j) {
        out[static_cast<std::size_t>(j)] = fourier_sum_one(c, freqs[static_cast<std::size_t>(j)]);
    }
    return out;
}

std::vector<double> shifted_history_sums(std::span<const double> c, std::span<const double> history,
                                         std::size_t horizon) {
    const std::size_t n = history.size();
    assert(c.size() + 1 >= n + horizon);
    std::vector<double> out(horizon, 0.0);
    const auto nh = static_cast<std::ptrdiff_t>(horizon);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t h = 0; h < nh; ++h) {
        const auto uh = static_cast<std::size_t>(h);
        out[uh] = dot_reversed(c.subspan(uh, n), history);
    }
    return out;
}

}  // namespace omp

}  // namespace fiegarch::kernels
