#pragma once

// Data-parallel inner loops. Every kernel exists twice: a serial reference
// that tests compare against, and an OpenMP version used by the library.
//
// The serial versions are plain single-accumulator loops. The OpenMP versions
// use unrolled dot products and split long reductions into fixed-size blocks
// whose partial sums are combined in block order, so their results do not
// depend on the number of threads. The two variants agree to rounding error.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fiegarch::kernels {

/// Block length of the deterministic blocked reduction.
inline constexpr std::size_t kReductionBlock = 4096;

/// Sequential dot product with four interleaved accumulators.
double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// Dot product of `a` with `b` read backwards: sum_i a[i] * b[b.size()-1-i].
double dot_reversed(std::span<const double> a, std::span<const double> b) noexcept;

namespace serial {

/// Power-series division recurrence
///   out[0] = base[0],  out[k] = base[k] + sum_{i<k} out[i] * weights[k-i],
/// for k = 1..m with m = base.size()-1. `weights` must have size >= m+1.
std::vector<double> series_recurrence(std::span<const double> base, std::span<const double> weights);

/// out[t] = sum_{k<L} coefs[k] * input[t + L - 1 - k], t = 0..input.size()-L.
std::vector<double> causal_filter(std::span<const double> coefs, std::span<const double> input);

/// out[h] = sum_{k=0}^{m-h} c[k] c[k+h] for h = 0..maxlag, m = c.size()-1.
std::vector<double> lagged_products(std::span<const double> c, std::size_t maxlag);

/// out[j] = sum_k c[k] exp(-i k freqs[j]).
std::vector<std::complex<double>> fourier_sums(std::span<const double> c, std::span<const double> freqs);

/// out[h-1] = sum_{k=0}^{n-1} c[k+h-1] * history[n-1-k], h = 1..horizon.
/// Requires c.size() >= n + horizon - 1.
std::vector<double> shifted_history_sums(std::span<const double> c, std::span<const double> history,
                                         std::size_t horizon);

}  // namespace serial

namespace omp {

std::vector<double> series_recurrence(std::span<const double> base, std::span<const double> weights);
std::vector<double> causal_filter(std::span<const double> coefs, std::span<const double> input);
std::vector<double> lagged_products(std::span<const double> c, std::size_t maxlag);
std::vector<std::complex<double>> fourier_sums(std::span<const double> c, std::span<const double> freqs);
std::vector<double> shifted_history_sums(std::span<const double> c, std::span<const double> history,
                                         std::size_t horizon);

}  // namespace omp

/// Number of OpenMP threads kernels will use (1 when built without OpenMP).
int max_threads() noexcept;
void set_threads(int n) noexcept;

}  // namespace fiegarch::kernels
