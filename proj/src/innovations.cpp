#include "fiegarch/innovations.hpp"

#include "fiegarch/errors.hpp"
#include "fiegarch/rng.hpp"
#include "fiegarch/spec.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <utility>

namespace fiegarch {

std::string describe(const InnovationDist& dist) {
    if (dist.family == Family::Gaussian) return "gaussian";
    std::ostringstream os;
    os << "ged:" << dist.nu;
    return os.str();
}

InnovationDist parse_distribution(const std::string& text) {
    if (text == "gaussian" || text == "normal") return InnovationDist::gaussian();
    if (text.rfind("ged:", 0) == 0) {
        try {
            std::size_t used = 0;
            const double nu = std::stod(text.substr(4), &used);
            if (used == text.size() - 4 && nu > 0.0 && std::isfinite(nu)) return InnovationDist::ged(nu);
        } catch (const std::exception&) {
        }
    }
    throw Error(ErrorKind::Usage, "unknown distribution '" + text + "' (expected gaussian or ged:<nu>)");
}

double ged_scale(double nu) {
    return std::sqrt(std::pow(2.0, -2.0 / nu) * std::exp(std::lgamma(1.0 / nu) - std::lgamma(3.0 / nu)));
}

namespace {

// Log-density constants, computed once per evaluation loop.
struct DensityKernel {
    double nu = 2.0;
    double scale = 1.0;
    double log_norm = 0.0;

    explicit DensityKernel(const InnovationDist& dist) {
        if (dist.family == Family::Gaussian) {
            log_norm = -0.5 * std::log(2.0 * std::numbers::pi);
            return;
        }
        nu = dist.nu;
        scale = ged_scale(nu);
        log_norm = std::log(nu) - std::log(scale) - (1.0 + 1.0 / nu) * std::numbers::ln2 - std::lgamma(1.0 / nu);
    }

    double operator()(double z) const {
        if (nu == 2.0 && scale == 1.0) return std::exp(log_norm - 0.5 * z * z);
        return std::exp(log_norm - 0.5 * std::pow(std::abs(z) / scale, nu));
    }
};

}  // namespace

double density(const InnovationDist& dist, double z) { return DensityKernel(dist)(z); }

double cdf(const InnovationDist& dist, double z) {
    if (dist.family == Family::Gaussian) return 0.5 * std::erfc(-z / std::numbers::sqrt2);
    const double scale = ged_scale(dist.nu);
    const double half = 0.5 * boost::math::gamma_p(1.0 / dist.nu, 0.5 * std::pow(std::abs(z) / scale, dist.nu));
    return z >= 0 ? 0.5 + half : 0.5 - half;
}

std::vector<double> sample(const InnovationDist& dist, std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> out(n);
    if (dist.family == Family::Gaussian) {
        boost::random::normal_distribution<double> normal(0.0, 1.0);
        for (auto& v : out) v = normal(rng);
        return out;
    }
    const double nu = dist.nu;
    const double scale = ged_scale(nu);
    boost::random::gamma_distribution<double> gamma(1.0 / nu, 1.0);
    for (auto& v : out) {
        const double w = gamma(rng);
        const double magnitude = scale * std::pow(2.0 * w, 1.0 / nu);
        v = (rng() >> 63) ? -magnitude : magnitude;
    }
    return out;
}

namespace {

// Point beyond which the density times `h` is negligible.
double tail_cutoff(const InnovationDist& dist, const std::function<double(double)>& sym) {
    const double nu = dist.family == Family::Gaussian ? 2.0 : dist.nu;
    const double scale = dist.family == Family::Gaussian ? 1.0 : ged_scale(nu);
    double t = scale * std::pow(90.0, 1.0 / nu);
    for (int i = 0; i < 200; ++i) {
        const double v = std::abs(sym(t));
        if (std::isfinite(v) && v < 1e-18) break;
        t *= 1.25;
    }
    return t;
}

}  // namespace

double expectation(const InnovationDist& dist, const std::function<double(double)>& h, double abs_tol) {
    // Both families are symmetric, so integrate [h(z) + h(-z)] f(z) over z > 0.
    // The first unit interval goes to tanh-sinh, which tolerates the integrable
    // endpoint singularity of ln z^2; the tail goes to adaptive Gauss-Kronrod.
    const DensityKernel f(dist);
    auto sym = [&](double z) { return (h(z) + h(-z)) * f(z); };
    const double cutoff = tail_cutoff(dist, sym);

    boost::math::quadrature::tanh_sinh<double> ts;
    double err_head = 0.0;
    const double head = ts.integrate(sym, 0.0, 1.0, 1e-14, &err_head);

    double err_tail = 0.0;
    const double tail =
        boost::math::quadrature::gauss_kronrod<double, 15>::integrate(sym, 1.0, cutoff, 30, 1e-14, &err_tail);

    const double total = head + tail;
    const double err = err_head * std::abs(head) + err_tail * std::abs(tail);
    if (!std::isfinite(total) || err > abs_tol) {
        std::ostringstream os;
        os << "quadrature for " << describe(dist) << " did not reach tolerance " << abs_tol << " (estimate " << err
           << ")";
        throw Error(ErrorKind::QuadratureFailure, os.str());
    }
    return total;
}

namespace {

MomentFunctionals compute_functionals(const InnovationDist& dist) {
    auto lnz2 = [](double z) { return 2.0 * std::log(std::abs(z)); };
    MomentFunctionals f;
    f.abs_mean = expectation(dist, [](double z) { return std::abs(z); });
    f.fourth_moment = expectation(dist, [](double z) { return z * z * z * z; });
    f.log_square_mean = expectation(dist, lnz2);
    const double e = f.log_square_mean;
    f.log_square_variance = expectation(dist, [&](double z) {
        const double u = 2.0 * std::log(std::abs(z)) - e;
        return u * u;
    });
    f.abs_log_square_mean = expectation(dist, [&](double z) { return std::abs(z) * lnz2(z); });
    // Symmetric laws: odd functionals vanish identically.
    f.signed_square_mean = 0.0;
    f.third_moment = 0.0;
    f.signed_log_square_mean = 0.0;
    return f;
}

}  // namespace

const MomentFunctionals& moment_functionals(const InnovationDist& dist) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, MomentFunctionals> cache;
    const auto key = std::make_pair(static_cast<int>(dist.family), dist.family == Family::Gaussian ? 0.0 : dist.nu);
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute_functionals(dist)).first;
    return it->second;
}

double shock_mgf_gaussian(double c, double theta, double gamma) {
    const double mu = std::sqrt(2.0 / std::numbers::pi);
    const double a = c * theta;
    const double b = c * gamma;
    const boost::math::normal_distribution<double> n01;
    const double up = a + b;
    const double down = b - a;
    return std::exp(-c * gamma * mu) * (std::exp(0.5 * up * up) * boost::math::cdf(n01, up) +
                                        std::exp(0.5 * down * down) * boost::math::cdf(n01, down));
}

double shock_mgf(double c, const FiegarchSpec& spec, const InnovationDist& dist) {
    if (c == 0.0 || (spec.theta == 0.0 && spec.gamma == 0.0)) return 1.0;
    const double slope_pos = c * (spec.theta + spec.gamma);
    const double slope_neg = c * (spec.gamma - spec.theta);
    if (dist.family == Family::Ged && dist.nu <= 1.0) {
        const double limit = dist.nu < 1.0 ? 0.0 : 1.0 / (2.0 * ged_scale(dist.nu));
        const bool diverges = dist.nu < 1.0 ? (slope_pos > limit || slope_neg > limit)
                                            : (slope_pos >= limit || slope_neg >= limit);
        if (diverges) {
            throw Error(ErrorKind::DivergentIntegral,
                        "E exp(c g(Z)) is infinite for " + describe(dist) + " at this c");
        }
    }
    const double mu = moment_functionals(dist).abs_mean;
    const double value = expectation(
        dist, [&](double z) { return std::exp(c * news_impact(z, spec.theta, spec.gamma, mu)); },
        1e-10 * std::max(1.0, std::exp(std::abs(c) * (std::abs(spec.theta) + std::abs(spec.gamma)))));
    if (!std::isfinite(value)) throw Error(ErrorKind::NumericOverflow, "moment generating function overflowed");
    return value;
}

}  // namespace fiegarch
