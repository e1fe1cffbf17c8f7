#include "fiegarch/coeffs.hpp"

#include "fiegarch/errors.hpp"
#include "fiegarch/kernels.hpp"

#include <cmath>
#include <sstream>

namespace fiegarch {

const char* to_string(CoefKind kind) noexcept {
    switch (kind) {
        case CoefKind::Difference: return "difference";
        case CoefKind::FractionalSum: return "fractional_sum";
        case CoefKind::InverseLag: return "inverse_lag";
        case CoefKind::Impulse: return "impulse";
        case CoefKind::FilteredDifference: return "filtered_difference";
    }
    return "unknown";
}

namespace {

CoefficientTable make_table(CoefKind kind, double d, std::vector<double> values, std::uint64_t hash = 0) {
    CoefficientTable t;
    t.kind = kind;
    t.d = d;
    t.m = values.size() - 1;
    t.values = std::move(values);
    t.spec_hash = hash;
    return t;
}

void require_beta_stable(std::span<const double> beta) {
    if (beta.empty()) return;
    for (const auto& r : lag_polynomial_roots(beta)) {
        if (std::abs(r) <= 1.0 + kRootTolerance) {
            std::ostringstream os;
            os << "beta polynomial has a root of modulus " << std::abs(r) << " inside the closed unit disk";
            throw Error(ErrorKind::RootInsideDisk, os.str());
        }
    }
}

// 1 / beta(z) applied to a series: out_k = in_k + sum_{j=1}^{q} beta_j out_{k-j}.
std::vector<double> divide_by_beta(std::span<const double> beta, std::vector<double> series) {
    for (std::size_t k = 1; k < series.size(); ++k) {
        double s = series[k];
        const std::size_t top = std::min(beta.size(), k);
        for (std::size_t j = 1; j <= top; ++j) s += beta[j - 1] * series[k - j];
        series[k] = s;
    }
    return series;
}

// alpha(z) applied to a series: out_k = in_k - sum_{i=1}^{p} alpha_i in_{k-i}.
std::vector<double> multiply_by_alpha(std::span<const double> alpha, std::span<const double> series) {
    std::vector<double> out(series.begin(), series.end());
    for (std::size_t k = 1; k < out.size(); ++k) {
        const std::size_t top = std::min(alpha.size(), k);
        for (std::size_t i = 1; i <= top; ++i) out[k] -= alpha[i - 1] * series[k - i];
    }
    return out;
}

}  // namespace

CoefficientTable difference_coeffs(double d, std::size_t m) {
    std::vector<double> v(m + 1);
    v[0] = 1.0;
    for (std::size_t k = 1; k <= m; ++k) {
        const double kk = static_cast<double>(k);
        v[k] = v[k - 1] * (kk - 1.0 - d) / kk;
    }
    return make_table(CoefKind::Difference, d, std::move(v));
}

CoefficientTable fractional_sum_coeffs(double d, std::size_t m) {
    auto t = difference_coeffs(-d, m);
    t.kind = CoefKind::FractionalSum;
    t.d = d;
    return t;
}

CoefficientTable inverse_lag_coeffs(std::span<const double> beta, std::size_t m) {
    require_beta_stable(beta);
    std::vector<double> impulse(m + 1, 0.0);
    impulse[0] = 1.0;
    return make_table(CoefKind::InverseLag, 0.0, divide_by_beta(beta, std::move(impulse)));
}

CoefficientTable filtered_difference_coeffs(std::span<const double> beta, double d, std::size_t m) {
    const auto delta = difference_coeffs(d, m);
    std::vector<double> v(delta.values);
    for (std::size_t k = 1; k <= m; ++k) {
        const std::size_t top = std::min(beta.size(), k);
        for (std::size_t j = 1; j <= top; ++j) v[k] -= beta[j - 1] * delta.values[k - j];
    }
    return make_table(CoefKind::FilteredDifference, d, std::move(v));
}

CoefficientTable impulse_weights(const FiegarchSpec& spec, std::size_t m, WeightMethod method) {
    require_beta_stable(spec.beta);
    const std::uint64_t hash = spec_hash(spec);

    if (method == WeightMethod::Factored) {
        auto v = divide_by_beta(spec.beta, fractional_sum_coeffs(spec.d, m).values);
        return make_table(CoefKind::Impulse, spec.d, multiply_by_alpha(spec.alpha, v), hash);
    }

    // lambda(z) phi(z) = alpha(z) with phi = beta(z)(1-z)^d and phi_0 = 1, so
    // lambda_k = a_k + sum_{i<k} lambda_i c_{k-i} where c_n = -phi_n.
    std::vector<double> base(m + 1, 0.0);
    base[0] = 1.0;
    for (std::size_t i = 1; i <= std::min(spec.p(), m); ++i) base[i] = -spec.alpha[i - 1];

    auto weights = filtered_difference_coeffs(spec.beta, spec.d, m).values;
    for (double& w : weights) w = -w;

    return make_table(CoefKind::Impulse, spec.d, kernels::omp::series_recurrence(base, weights), hash);
}

CoefficientTable impulse_weights_oracle(const FiegarchSpec& spec, std::size_t m) {
    require_beta_stable(spec.beta);
    const auto pi = fractional_sum_coeffs(spec.d, m).values;
    const auto f = inverse_lag_coeffs(spec.beta, m).values;

    // h = pi * f, then lambda = a * h with a_0 = 1, a_i = -alpha_i.
    std::vector<double> h(m + 1, 0.0);
    for (std::size_t k = 0; k <= m; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j <= k; ++j) s += pi[k - j] * f[j];
        h[k] = s;
    }
    std::vector<double> impulse(m + 1, 0.0);
    for (std::size_t k = 0; k <= m; ++k) {
        double s = h[k];
        for (std::size_t i = 1; i <= std::min(spec.p(), k); ++i) s -= spec.alpha[i - 1] * h[k - i];
        impulse[k] = s;
    }
    return make_table(CoefKind::Impulse, spec.d, std::move(impulse), spec_hash(spec));
}

double impulse_weight_asymptote(const FiegarchSpec& spec, std::size_t k) {
    if (k == 0) throw Error(ErrorKind::Usage, "asymptote requires k >= 1");
    if (spec.d <= 0.0 && spec.d == std::nearbyint(spec.d)) {
        throw Error(ErrorKind::GammaPole, "Gamma(d) has a pole at non-positive integer d");
    }
    const double alpha1 = eval_lag_polynomial(spec.alpha, 1.0).real();
    const double beta1 = eval_lag_polynomial(spec.beta, 1.0).real();
    return alpha1 / (beta1 * std::tgamma(spec.d) * std::pow(static_cast<double>(k), 1.0 - spec.d));
}

WeightQuotients weight_quotients(const FiegarchSpec& spec, const CoefficientTable& impulse, std::size_t k) {
    if (k > impulse.m) throw Error(ErrorKind::Usage, "lag exceeds the coefficient table");
    WeightQuotients q;
    q.impulse = impulse[k];
    q.q1 = q.impulse / std::pow(static_cast<double>(k), spec.d);
    q.q2 = q.impulse / impulse_weight_asymptote(spec, k);
    return q;
}

}  // namespace fiegarch
