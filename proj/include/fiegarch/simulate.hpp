#pragma once

#include "fiegarch/innovations.hpp"
#include "fiegarch/spec.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fiegarch {

inline constexpr std::size_t kDefaultBurnIn = 50'000;

/// A simulated path. `z` holds the m_burn pre-sample innovations followed by
/// the N in-sample ones, so z[m_burn + t] drives x[t].
struct Path {
    std::vector<double> x;
    std::vector<double> sigma2;
    std::vector<double> ln_sigma2;
    std::vector<double> z;
    FiegarchSpec spec;
    InnovationDist dist;
    std::uint64_t seed = 0;
    std::size_t m_burn = 0;

    [[nodiscard]] std::size_t size() const noexcept { return x.size(); }
};

/// ln sigma_t^2 = omega + sum_{k<m_burn} lambda_k g(z_{t-1-k}), x_t = sigma_t z_t.
/// Throws NonStationary for d >= 0.5 and RootInsideDisk for unstable beta.
Path simulate_path(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t n, std::size_t m_burn,
                   std::uint64_t seed);

/// ln sigma^2 recomputed from the stored innovations with the same kernel
/// that produced the path.
std::vector<double> recompute_ln_sigma2(const Path& path);

}  // namespace fiegarch
