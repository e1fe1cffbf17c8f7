// Serial reference kernels against their OpenMP versions on inputs shaped
// like the real workloads (lambda tables, long shock histories).

#include "fiegarch/coeffs.hpp"
#include "fiegarch/kernels.hpp"
#include "fiegarch/spec.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

using namespace fiegarch;
namespace k = fiegarch::kernels;

namespace {

std::vector<double> shocks(std::size_t n) {
    std::mt19937_64 gen(1);
    std::normal_distribution<double> nd;
    std::vector<double> v(n);
    for (auto& x : v) x = nd(gen);
    return v;
}

// The lambda recurrence inputs for M4: base = alpha, weights = -phi.
struct RecurrenceInput {
    std::vector<double> base, weights;
    explicit RecurrenceInput(std::size_t m) : base(m + 1, 0.0) {
        const auto spec = *preset("M4");
        base[0] = 1.0;
        const auto phi = filtered_difference_coeffs(spec.beta, spec.d, m);
        weights.resize(m + 1);
        weights[0] = 0.0;
        for (std::size_t i = 1; i <= m; ++i) weights[i] = -phi[i];
    }
};

template <auto Fn>
void recurrence(benchmark::State& state) {
    const RecurrenceInput in(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Fn(in.base, in.weights));
}

template <auto Fn>
void filter(benchmark::State& state) {
    const auto impulse = impulse_weights(*preset("M4"), static_cast<std::size_t>(state.range(0)) - 1, WeightMethod::Factored);
    const auto g = shocks(impulse.size() + 2000 - 1);
    for (auto _ : state) benchmark::DoNotOptimize(Fn(impulse.span(), g));
}

template <auto Fn>
void lagged(benchmark::State& state) {
    const auto impulse = impulse_weights(*preset("M4"), static_cast<std::size_t>(state.range(0)), WeightMethod::Factored);
    for (auto _ : state) benchmark::DoNotOptimize(Fn(impulse.span(), 200));
}

template <auto Fn>
void fourier(benchmark::State& state) {
    const auto impulse = impulse_weights(*preset("M4"), static_cast<std::size_t>(state.range(0)), WeightMethod::Factored);
    std::vector<double> w(999);
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = 2.0 * M_PI * static_cast<double>(j + 1) / 2000.0;
    for (auto _ : state) benchmark::DoNotOptimize(Fn(impulse.span(), w));
}

template <auto Fn>
void history(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto impulse = impulse_weights(*preset("M4"), n + 50, WeightMethod::Factored);
    const auto g = shocks(n);
    for (auto _ : state) benchmark::DoNotOptimize(Fn(impulse.span(), g, 50));
}

}  // namespace

BENCHMARK(recurrence<k::serial::series_recurrence>)->Name("series_recurrence/serial")->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(recurrence<k::omp::series_recurrence>)->Name("series_recurrence/omp")->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(filter<k::serial::causal_filter>)->Name("causal_filter/serial")->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(filter<k::omp::causal_filter>)->Name("causal_filter/omp")->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(lagged<k::serial::lagged_products>)->Name("lagged_products/serial")->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(lagged<k::omp::lagged_products>)->Name("lagged_products/omp")->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(fourier<k::serial::fourier_sums>)->Name("fourier_sums/serial")->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(fourier<k::omp::fourier_sums>)->Name("fourier_sums/omp")->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(history<k::serial::shifted_history_sums>)->Name("shifted_history_sums/serial")->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(history<k::omp::shifted_history_sums>)->Name("shifted_history_sums/omp")->Arg(50000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
