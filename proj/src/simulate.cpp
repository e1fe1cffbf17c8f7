#include "fiegarch/simulate.hpp"

#include "fiegarch/coeffs.hpp"
#include "fiegarch/errors.hpp"
#include "fiegarch/kernels.hpp"

#include <cmath>

namespace fiegarch {

namespace {

std::vector<double> log_variance(const FiegarchSpec& spec, const InnovationDist& dist, std::span<const double> z,
                                 std::size_t n, std::size_t m_burn) {
    const auto impulse = impulse_weights(spec, m_burn - 1, WeightMethod::Factored);
    const double mu = moment_functionals(dist).abs_mean;

    // g over z[0 .. m_burn + n - 2]; the last innovation never feeds back.
    std::vector<double> g(m_burn + n - 1);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = news_impact(z[i], spec.theta, spec.gamma, mu);

    auto ln_s2 = kernels::omp::causal_filter(impulse.span(), g);
    for (double& v : ln_s2) v += spec.omega;
    return ln_s2;
}

}  // namespace

Path simulate_path(const FiegarchSpec& spec, const InnovationDist& dist, std::size_t n, std::size_t m_burn,
                   std::uint64_t seed) {
    if (!(spec.d < 0.5)) throw Error(ErrorKind::NonStationary, "simulation requires d < 0.5");
    if (m_burn == 0) throw Error(ErrorKind::Usage, "burn-in length must be at least 1");
    if (n == 0) throw Error(ErrorKind::Usage, "path length must be at least 1");

    Path path;
    path.spec = spec;
    path.dist = dist;
    path.seed = seed;
    path.m_burn = m_burn;
    path.z = sample(dist, n + m_burn, seed);
    path.ln_sigma2 = log_variance(spec, dist, path.z, n, m_burn);

    path.sigma2.resize(n);
    path.x.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        path.sigma2[t] = std::exp(path.ln_sigma2[t]);
        if (!(path.sigma2[t] > 0.0) || !std::isfinite(path.sigma2[t])) {
            throw Error(ErrorKind::NumericOverflow, "simulated variance left the representable range");
        }
        path.x[t] = std::sqrt(path.sigma2[t]) * path.z[m_burn + t];
    }
    return path;
}

std::vector<double> recompute_ln_sigma2(const Path& path) {
    return log_variance(path.spec, path.dist, path.z, path.size(), path.m_burn);
}

}  // namespace fiegarch
