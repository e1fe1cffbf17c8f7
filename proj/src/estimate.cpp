#include "fiegarch/estimate.hpp"

#include "fiegarch/coeffs.hpp"
#include "fiegarch/errors.hpp"
#include "fiegarch/innovations.hpp"
#include "fiegarch/kernels.hpp"
#include "fiegarch/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <boost/random/normal_distribution.hpp>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace fiegarch {

Reconstruction reconstruct(const FiegarchSpec& spec, std::span<const double> series, double abs_mean) {
    const std::size_t n = series.size();
    Reconstruction r;
    r.sigma2.resize(n);
    r.z.resize(n);
    r.g.resize(n);
    if (n == 0) return r;

    const auto impulse = impulse_weights(spec, n, WeightMethod::Factored);
    const std::span<const double> imp = impulse.span();
    const std::span<const double> g = r.g;
    for (std::size_t t = 0; t < n; ++t) {
        const double ln_s2 = spec.omega + kernels::dot_reversed(imp.subspan(0, t), g.subspan(0, t));
        if (!(ln_s2 < 700.0 && ln_s2 > -700.0)) {
            std::ostringstream os;
            os << "log-variance " << ln_s2 << " at t=" << t + 1 << " is outside the representable range";
            throw Error(ErrorKind::NumericOverflow, os.str());
        }
        r.sigma2[t] = std::exp(ln_s2);
        r.z[t] = series[t] / std::sqrt(r.sigma2[t]);
        r.g[t] = news_impact(r.z[t], spec.theta, spec.gamma, abs_mean);
    }
    return r;
}

namespace {

void require_length(std::size_t n, std::size_t p, std::size_t q) {
    if (n < p + q + 5) {
        std::ostringstream os;
        os << "insufficient data: " << n << " observations, need at least " << p + q + 5;
        throw Error(ErrorKind::InsufficientData, os.str());
    }
}

}  // namespace

double loglik(const FiegarchSpec& spec, std::span<const double> series) {
    const std::size_t n = series.size();
    require_length(n, spec.p(), spec.q());
    const auto r = reconstruct(spec, series);
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) acc += std::log(r.sigma2[t]) + series[t] * series[t] / r.sigma2[t];
    return -0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi) - 0.5 * acc;
}

InfoCriteria info_criteria(double ll, std::size_t num_params, std::size_t n) {
    const double k = static_cast<double>(num_params);
    const double nn = static_cast<double>(n);
    return {-2.0 * ll + 2.0 * k, -2.0 * ll + k * std::log(nn), -2.0 * ll + 2.0 * k * std::log(std::log(nn))};
}

std::vector<double> to_vector(const FiegarchSpec& spec) {
    std::vector<double> v{spec.d, spec.omega, spec.theta, spec.gamma};
    v.insert(v.end(), spec.alpha.begin(), spec.alpha.end());
    v.insert(v.end(), spec.beta.begin(), spec.beta.end());
    return v;
}

FiegarchSpec from_vector(std::span<const double> v, std::size_t p, std::size_t q) {
    if (v.size() != 4 + p + q) throw Error(ErrorKind::Usage, "parameter vector has the wrong length");
    FiegarchSpec s;
    s.d = v[0];
    s.omega = v[1];
    s.theta = v[2];
    s.gamma = v[3];
    s.alpha.assign(v.begin() + 4, v.begin() + 4 + static_cast<std::ptrdiff_t>(p));
    s.beta.assign(v.begin() + 4 + static_cast<std::ptrdiff_t>(p), v.end());
    return s;
}

FiegarchSpec default_start(std::span<const double> series, std::size_t p, std::size_t q) {
    double sum = 0.0;
    std::size_t used = 0;
    for (double x : series) {
        if (x != 0.0 && std::isfinite(x)) {
            sum += std::log(x * x);
            ++used;
        }
    }
    if (used == 0) throw Error(ErrorKind::InsufficientData, "series has no nonzero observations");
    FiegarchSpec s;
    s.d = 0.25;
    s.theta = 0.1;
    s.gamma = 0.1;
    // E ln Z^2 for the Gaussian is -(euler + ln 2).
    s.omega = sum / static_cast<double>(used) + std::numbers::egamma + std::numbers::ln2;
    s.alpha.assign(p, 0.0);
    s.beta.assign(q, 0.0);
    return s;
}

namespace {

constexpr double kPenalty = 1e10;

// Unconstrained coordinates: d goes through a logistic map onto its box, the
// remaining parameters are used as they are.
struct Objective {
    std::span<const double> series;
    std::size_t p;
    std::size_t q;
    double d_lower;
    double d_upper;
    double root_margin;
    long evaluations = 0;

    [[nodiscard]] double d_from(double u) const { return d_lower + (d_upper - d_lower) / (1.0 + std::exp(-u)); }
    [[nodiscard]] double u_from(double d) const {
        const double t = std::clamp((d - d_lower) / (d_upper - d_lower), 1e-9, 1.0 - 1e-9);
        return std::log(t / (1.0 - t));
    }

    [[nodiscard]] FiegarchSpec spec_from(std::span<const double> u) const {
        std::vector<double> v(u.begin(), u.end());
        v[0] = d_from(u[0]);
        return from_vector(v, p, q);
    }

    [[nodiscard]] std::vector<double> coords_from(const FiegarchSpec& s) const {
        auto v = to_vector(s);
        v[0] = u_from(s.d);
        return v;
    }

    double operator()(std::span<const double> u) {
        ++evaluations;
        for (double x : u) {
            if (!std::isfinite(x)) return kPenalty * 10.0;
        }
        const FiegarchSpec s = spec_from(u);
        if (!s.beta.empty()) {
            double rmin = std::numeric_limits<double>::infinity();
            for (const auto& r : lag_polynomial_roots(s.beta)) rmin = std::min(rmin, std::abs(r));
            if (rmin <= 1.0 + root_margin) return kPenalty * (2.0 + (1.0 + root_margin - rmin));
        }
        try {
            const double ll = loglik(s, series);
            return std::isfinite(ll) ? -ll : kPenalty;
        } catch (const Error&) {
            return kPenalty;
        }
    }
};

double gsl_objective(const gsl_vector* x, void* params) {
    auto* obj = static_cast<Objective*>(params);
    return (*obj)(std::span<const double>(x->data, x->size));
}

struct SimplexOutcome {
    std::vector<double> u;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
};

SimplexOutcome run_simplex(Objective& obj, const std::vector<double>& start, const FitOptions& opt) {
    const std::size_t n = start.size();
    gsl_multimin_function fn{&gsl_objective, n, &obj};
    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(n), &gsl_vector_free);
    std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(n), &gsl_vector_free);
    for (std::size_t i = 0; i < n; ++i) {
        gsl_vector_set(x.get(), i, start[i]);
        gsl_vector_set(step.get(), i, i == 0 ? 0.5 : 0.1);
    }
    std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), &gsl_multimin_fminimizer_free);
    gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get());

    SimplexOutcome out;
    for (int it = 0; it < opt.max_iterations; ++it) {
        out.iterations = it + 1;
        if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
        const double size = gsl_multimin_fminimizer_size(s.get());
        if (gsl_multimin_test_size(size, opt.simplex_tolerance) == GSL_SUCCESS) {
            out.converged = true;
            break;
        }
    }
    const gsl_vector* best = gsl_multimin_fminimizer_x(s.get());
    out.u.assign(best->data, best->data + n);
    out.value = gsl_multimin_fminimizer_minimum(s.get());
    return out;
}

}  // namespace

bool hessian_stderr(const FiegarchSpec& spec, std::span<const double> series, std::vector<double>& out) {
    const auto eta = to_vector(spec);
    const std::size_t k = eta.size();
    out.assign(k, std::numeric_limits<double>::quiet_NaN());

    auto f = [&](const std::vector<double>& v) { return loglik(from_vector(v, spec.p(), spec.q()), series); };
    std::vector<double> h(k);
    for (std::size_t i = 0; i < k; ++i) h[i] = 1e-4 * (1.0 + std::abs(eta[i]));

    Eigen::MatrixXd info(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    try {
        const double f0 = f(eta);
        for (std::size_t i = 0; i < k; ++i) {
            auto up = eta;
            auto dn = eta;
            up[i] += h[i];
            dn[i] -= h[i];
            const double second = (f(up) - 2.0 * f0 + f(dn)) / (h[i] * h[i]);
            info(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = -second;
            for (std::size_t j = 0; j < i; ++j) {
                auto pp = eta, pm = eta, mp = eta, mm = eta;
                pp[i] += h[i], pp[j] += h[j];
                pm[i] += h[i], pm[j] -= h[j];
                mp[i] -= h[i], mp[j] += h[j];
                mm[i] -= h[i], mm[j] -= h[j];
                const double cross = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h[i] * h[j]);
                info(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = -cross;
                info(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = -cross;
            }
        }
    } catch (const Error&) {
        return false;
    }
    if (!info.allFinite()) return false;

    const Eigen::LLT<Eigen::MatrixXd> llt(info);
    if (llt.info() != Eigen::Success) return false;
    const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(info.rows(), info.cols()));
    for (std::size_t i = 0; i < k; ++i) {
        const double var = cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
        if (!(var > 0.0)) {
            out.assign(k, std::numeric_limits<double>::quiet_NaN());
            return false;
        }
        out[i] = std::sqrt(var);
    }
    return true;
}

FitResult fit(std::span<const double> series, const FitOptions& options) {
    const std::size_t need = kMinObservationsPerParameter * (4 + options.p + options.q);
    if (series.size() < need) {
        std::ostringstream os;
        os << "insufficient data: " << series.size() << " observations, a FIEGARCH(" << options.p << ",d," << options.q
           << ") fit needs at least " << need;
        throw Error(ErrorKind::InsufficientData, os.str());
    }

    Objective obj{series, options.p, options.q, options.d_lower, options.d_upper, options.root_margin};

    std::vector<FiegarchSpec> starts;
    if (options.init != nullptr) starts.push_back(*options.init);
    else starts.push_back(default_start(series, options.p, options.q));
    for (const auto& s : options.extra_starts) {
        if (s.p() == options.p && s.q() == options.q) starts.push_back(s);
    }

    SimplexOutcome best;
    best.value = std::numeric_limits<double>::infinity();
    int iterations = 0;
    for (const auto& s : starts) {
        auto run = run_simplex(obj, obj.coords_from(s), options);
        iterations += run.iterations;
        if (run.value < best.value) best = std::move(run);
    }

    CounterRng rng(options.seed);
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    for (int r = 0; r < options.restarts; ++r) {
        auto start = best.u;
        for (std::size_t i = 0; i < start.size(); ++i) start[i] += (i == 0 ? 0.3 : 0.05) * normal(rng);
        auto run = run_simplex(obj, start, options);
        iterations += run.iterations;
        if (run.value < best.value) best = std::move(run);
    }

    FitResult res;
    res.spec_hat = obj.spec_from(best.u);
    res.converged = best.converged && best.value < kPenalty;
    res.iterations = iterations;
    res.validity = validate(res.spec_hat);
    if (!(best.value < kPenalty)) {
        throw Error(ErrorKind::NumericOverflow, "no admissible parameter value found");
    }
    res.loglik = loglik(res.spec_hat, series);
    const auto rec = reconstruct(res.spec_hat, series);
    res.sigma2_hat = rec.sigma2;
    res.z_hat = rec.z;
    res.ic = info_criteria(res.loglik, res.spec_hat.num_params(), series.size());
    if (options.compute_stderr) {
        res.hessian_ok = hessian_stderr(res.spec_hat, series, res.std_errors);
    } else {
        res.std_errors.assign(res.spec_hat.num_params(), std::numeric_limits<double>::quiet_NaN());
    }
    return res;
}

McStats mc_stats(const std::vector<std::vector<double>>& estimates, std::span<const double> truth) {
    const std::size_t k = truth.size();
    const double re = static_cast<double>(estimates.size());
    if (estimates.size() < 2) throw Error(ErrorKind::InsufficientData, "need at least two replications");
    McStats st;
    st.mean.assign(k, 0.0);
    st.sd.assign(k, 0.0);
    st.bias.assign(k, 0.0);
    st.mae.assign(k, 0.0);
    st.mse.assign(k, 0.0);
    for (const auto& row : estimates) {
        if (row.size() != k) throw Error(ErrorKind::Usage, "estimate row has the wrong length");
        for (std::size_t i = 0; i < k; ++i) {
            const double e = row[i] - truth[i];
            st.mean[i] += row[i];
            st.bias[i] += e;
            st.mae[i] += std::abs(e);
            st.mse[i] += e * e;
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        st.mean[i] /= re;
        st.bias[i] /= re;
        st.mae[i] /= re;
        st.mse[i] /= re;
    }
    for (const auto& row : estimates) {
        for (std::size_t i = 0; i < k; ++i) st.sd[i] += (row[i] - st.mean[i]) * (row[i] - st.mean[i]);
    }
    for (std::size_t i = 0; i < k; ++i) st.sd[i] = std::sqrt(st.sd[i] / re);
    return st;
}

}  // namespace fiegarch
