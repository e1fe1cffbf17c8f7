// Acceptance checks. Each criterion prints exactly one PASS or FAIL line;
// supporting numbers go to lines starting with "  ".
//
//   acceptance              run criteria 1-5, 7, 8
//   acceptance --only N     run criterion N (6 is only run this way)

#include "fiegarch/coeffs.hpp"
#include "fiegarch/diagnostics.hpp"
#include "fiegarch/errors.hpp"
#include "fiegarch/estimate.hpp"
#include "fiegarch/forecast.hpp"
#include "fiegarch/kernels.hpp"
#include "fiegarch/moments.hpp"
#include "fiegarch/montecarlo.hpp"
#include "fiegarch/rng.hpp"
#include "fiegarch/simulate.hpp"

#include <CLI11.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace fiegarch;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
};

class Notes {
public:
    template <typename... Args>
    void line(const char* fmt, Args... args) {
        char buf[512];
        std::snprintf(buf, sizeof buf, fmt, args...);
        std::printf("  %s\n", buf);
    }
};

Notes notes;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------
// 1. lambda table

struct LambdaRow {
    const char* model;
    std::array<double, 8> impulse, q1, q2;
};

constexpr std::array<std::size_t, 8> kTableLags{10, 100, 1000, 5000, 10000, 25000, 50000, 100000};

const std::array<LambdaRow, 6> kLambdaTable{{
    {"M1",
     {0.26537, 0.07167, 0.02015, 0.00830, 0.00567, 0.00342, 0.00234, 0.00160},
     {0.09426, 0.00904, 0.00090, 0.00018, 0.00009, 0.00004, 0.00002, 0.00001},
     {1.04410, 1.00173, 1.00017, 1.00003, 1.00002, 1.00001, 1.00000, 1.00000}},
    {"M2",
     {-0.09039, 0.01450, 0.00251, 0.00074, 0.00043, 0.00022, 0.00013, 0.00008},
     {-0.05212, 0.00482, 0.00048, 0.00010, 0.00005, 0.00002, 0.00001, 0.00000},
     {-1.08434, 1.00292, 1.00027, 1.00005, 1.00003, 1.00001, 1.00001, 1.00000}},
    {"M3",
     {0.31434, 0.07844, 0.02106, 0.00843, 0.00568, 0.00337, 0.00227, 0.00153},
     {0.11647, 0.01077, 0.00107, 0.00021, 0.00011, 0.00004, 0.00002, 0.00001},
     {1.08789, 1.00576, 1.00056, 1.00011, 1.00006, 1.00002, 1.00001, 1.00001}},
    {"M4",
     {0.36874, 0.06738, 0.01517, 0.00539, 0.00345, 0.00192, 0.00123, 0.00079},
     {0.16178, 0.01297, 0.00128, 0.00026, 0.00013, 0.00005, 0.00003, 0.00001},
     {1.26414, 1.01350, 1.00129, 1.00026, 1.00013, 1.00005, 1.00003, 1.00001}},
    {"M5",
     {0.12291, 0.03897, 0.01207, 0.00531, 0.00373, 0.00234, 0.00164, 0.00115},
     {0.03977, 0.00408, 0.00041, 0.00008, 0.00004, 0.00002, 0.00001, 0.00000},
     {0.97189, 0.99720, 0.99972, 0.99994, 0.99997, 0.99999, 0.99999, 1.00000}},
    {"M6",
     {0.05472, 0.01599, 0.00435, 0.00174, 0.00117, 0.00070, 0.00047, 0.00032},
     {0.02027, 0.00219, 0.00022, 0.00004, 0.00002, 0.00001, 0.00000, 0.00000},
     {0.91632, 0.99192, 0.99919, 0.99984, 0.99992, 0.99997, 0.99998, 0.99999}},
}};

// Printed to five decimals, so half a unit in the last place plus rounding slack.
constexpr double kTableTol = 5e-6 + 1e-12;

Outcome criterion1() {
    const auto t0 = std::chrono::steady_clock::now();
    int misses = 0, cells = 0;
    double worst = 0.0;
    for (const auto& row : kLambdaTable) {
        const auto spec = *preset(row.model);
        const auto impulse = impulse_weights(spec, 100000, WeightMethod::Recurrence);
        if (impulse[0] != 1.0) ++misses;
        for (std::size_t j = 0; j < kTableLags.size(); ++j) {
            const auto q = weight_quotients(spec, impulse, kTableLags[j]);
            const std::array<std::pair<double, double>, 3> pairs{
                {{q.impulse, row.impulse[j]}, {q.q1, row.q1[j]}, {q.q2, row.q2[j]}}};
            const char* labels[3] = {"lambda", "Q1", "Q2"};
            for (int c = 0; c < 3; ++c) {
                ++cells;
                const double diff = std::abs(pairs[c].first - pairs[c].second);
                worst = std::max(worst, diff);
                if (diff > kTableTol) {
                    ++misses;
                    notes.line("%s %s(k=%zu): computed %.7f, table %.5f", row.model, labels[c], kTableLags[j],
                               pairs[c].first, pairs[c].second);
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << cells - misses << "/" << cells << " cells within 5e-6, worst |diff| " << worst << ", " << secs << " s at m=100000";
    return {misses == 0 && secs < 60.0, os.str()};
}

// ---------------------------------------------------------------------------
// 2. moment functionals

Outcome criterion2() {
    struct Row {
        InnovationDist dist;
        std::array<double, 6> expected;  // E|Z|, E|Z|lnZ^2, E lnZ^2, Var lnZ^2, sigma_g^2, K
    };
    const std::array<Row, 2> rows{{
        {InnovationDist::gaussian(), {0.7979, 0.0925, -1.2704, 4.9348, 0.0559, 0.3088}},
        {InnovationDist::ged(1.5), {0.7674, 0.0975, -1.4545, 5.4469, 0.0596, 0.3389}},
    }};
    const auto spec = *preset("M4");
    bool ok = true;
    double worst = 0.0;
    for (const auto& r : rows) {
        const auto& f = moment_functionals(r.dist);
        const std::array<double, 6> got{f.abs_mean, f.abs_log_square_mean, f.log_square_mean, f.log_square_variance, shock_variance(spec, f), shock_log_covariance(spec, f)};
        notes.line("%s: %.7f %.7f %.7f %.7f %.7f %.7f", describe(r.dist).c_str(), got[0], got[1], got[2], got[3],
                   got[4], got[5]);
        for (std::size_t i = 0; i < 6; ++i) {
            const double diff = std::abs(got[i] - r.expected[i]);
            worst = std::max(worst, diff);
            if (diff > 5e-5 + 1e-12) ok = false;
        }
    }
    std::ostringstream os;
    os << "12 values by quadrature, worst |diff| " << worst << " (tolerance 5e-5)";
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// 3. kurtosis of M4 with Gaussian noise

Outcome criterion3() {
    const auto spec = *preset("M4");
    const auto dist = InnovationDist::gaussian();
    const double k50 = kurtosis(spec, dist, 50000);
    const double target = 5.6733;
    for (std::size_t m : {60000u, 70000u, 100000u, 200000u}) {
        notes.line("informational: m=%zu gives %.6f", m, kurtosis(spec, dist, m));
    }
    std::ostringstream os;
    os << "m=50000 gives " << k50 << ", target " << target << " +/- 1e-3 (diff " << k50 - target << ")";
    return {std::abs(k50 - target) <= 1e-3, os.str()};
}

// ---------------------------------------------------------------------------
// 4. predictor limits

Outcome criterion4() {
    const std::array<double, 6> l1{0.1392, 0.1323, 0.1252, 0.0728, 0.2760, 0.1252};
    const std::array<double, 6> l2{0.1775, 0.1431, 0.1581, 0.0919, 0.2966, 0.1298};
    const auto dist = InnovationDist::ged(1.5);
    int misses = 0;
    const auto names = preset_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto spec = *preset(names[i]);
        const double sg = shock_variance(spec, moment_functionals(dist));
        const double a = 100.0 * limit_plain(spec);
        const double b = 100.0 * limit_corrected(spec, sg, 50000);
        const double b100 = 100.0 * limit_corrected(spec, sg, 100000);
        const bool ok_a = std::abs(a - l1[i]) <= 5e-5 + 1e-12;
        const bool ok_b = std::abs(b - l2[i]) <= 5e-5 + 1e-12;
        misses += (ok_a ? 0 : 1) + (ok_b ? 0 : 1);
        notes.line("%s: L1*100 %.6f (table %.4f)%s  L2*100 %.6f (table %.4f)%s  [informational m=100000: %.6f]",
                   names[i].c_str(), a, l1[i], ok_a ? "" : " MISS", b, l2[i], ok_b ? "" : " MISS", b100);
    }
    std::ostringstream os;
    os << 12 - misses << "/12 limits within 5e-5 at m=50000 (sigma_g^2 from GED(1.5))";
    return {misses == 0, os.str()};
}

// ---------------------------------------------------------------------------
// 5. recurrence against the convolution oracle

std::vector<double> poly_from_roots(const std::vector<std::complex<double>>& roots) {
    // prod (1 - z / r) = 1 - c1 z - c2 z^2 - ...; returns c.
    std::vector<std::complex<double>> poly{1.0};
    for (const auto& r : roots) {
        std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i] += poly[i];
            next[i + 1] -= poly[i] / r;
        }
        poly = next;
    }
    std::vector<double> c;
    for (std::size_t i = 1; i < poly.size(); ++i) c.push_back(-poly[i].real());
    return c;
}

std::vector<double> random_stable_coefs(std::mt19937_64& gen, std::size_t order) {
    std::uniform_real_distribution<double> modulus(1.2, 4.0);
    std::uniform_real_distribution<double> angle(0.0, M_PI);
    std::bernoulli_distribution sign;
    std::vector<std::complex<double>> roots;
    while (roots.size() < order) {
        if (order - roots.size() >= 2 && sign(gen)) {
            const auto r = std::polar(modulus(gen), angle(gen));
            roots.push_back(r);
            roots.push_back(std::conj(r));
        } else {
            roots.emplace_back(sign(gen) ? modulus(gen) : -modulus(gen), 0.0);
        }
    }
    return poly_from_roots(roots);
}

Outcome criterion5() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 gen(20240601);
    std::uniform_int_distribution<std::size_t> order(0, 4);
    std::uniform_real_distribution<double> dd(-0.9, 0.49);
    std::uniform_real_distribution<double> small(-0.5, 0.5);
    double worst = 0.0;
    int checked = 0;
    while (checked < 100) {
        FiegarchSpec s;
        s.d = dd(gen);
        s.omega = small(gen);
        s.theta = small(gen);
        s.gamma = small(gen);
        s.alpha = random_stable_coefs(gen, order(gen));
        s.beta = random_stable_coefs(gen, order(gen));
        if (!validate(s).ok()) continue;
        const auto rec = impulse_weights(s, 500, WeightMethod::Recurrence);
        const auto orc = impulse_weights_oracle(s, 500);
        for (std::size_t k = 0; k <= 500; ++k) worst = std::max(worst, std::abs(rec[k] - orc[k]));
        ++checked;
    }
    const double secs = seconds_since(t0);
    std::ostringstream os;
    os << "100 random specs, k<=500, max |recursive - oracle| = " << worst << ", " << secs << " s";
    return {worst <= 1e-10 && secs < 60.0, os.str()};
}

// ---------------------------------------------------------------------------
// 6. scaled Monte Carlo for M4

Outcome criterion6() {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.models = {{"M4", *preset("M4")}};
    cfg.replications = 50;
    cfg.sample_sizes = {2000};
    cfg.origin = 2000;
    cfg.forecasts = false;
    cfg.jobs = kernels::max_threads();
    const auto report = run_experiment(cfg);
    const auto& st = report.models.front().subsamples.front();
    if (st.successes < 2) return {false, "fewer than two successful fits"};
    const double mean_d = st.params.mean[0];
    const double sd_d = st.params.sd[0];
    notes.line("successes %zu, failures %zu, seed %llu, dist %s", st.successes, st.failures,
               static_cast<unsigned long long>(cfg.seed), describe(cfg.dist).c_str());
    const auto names = parameter_names(cfg.models.front().spec);
    for (std::size_t i = 0; i < names.size(); ++i) {
        notes.line("%-6s mean %.4f sd %.4f bias %.4f mse %.4f", names[i].c_str(), st.params.mean[i], st.params.sd[i],
                   st.params.bias[i], st.params.mse[i]);
    }
    const bool ok_mean = std::abs(mean_d - 0.2950) <= 0.06;
    const bool ok_sd = sd_d >= 0.1338 / 2.0 && sd_d <= 0.1338 * 2.0;
    std::ostringstream os;
    os << "mean d_hat " << mean_d << " (0.2950 +/- 0.06), sd " << sd_d << " (within x2 of 0.1338), "
       << seconds_since(t0) << " s";
    return {ok_mean && ok_sd, os.str()};
}

// ---------------------------------------------------------------------------
// 7. empirical forecast MSE

Outcome criterion7() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = *preset("M4");
    const auto dist = InnovationDist::gaussian();
    const std::size_t burn = 50000, horizon = 5, reps = 1000;
    const double mu = moment_functionals(dist).abs_mean;
    const auto impulse = impulse_weights(spec, burn + horizon, WeightMethod::Factored);

    std::vector<double> sq(horizon, 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
        // In-sample index 0 is the forecast origin; indices 1..H are the continuation.
        const auto path = simulate_path(spec, dist, horizon + 1, burn, derive_seed(7007, r));
        std::vector<double> g(burn + 1);
        for (std::size_t i = 0; i <= burn; ++i) g[i] = news_impact(path.z[i], spec.theta, spec.gamma, mu);
        const auto fc = forecast_ln_sigma2(spec, g, horizon, &impulse);
        for (std::size_t h = 1; h <= horizon; ++h) {
            const double e = path.ln_sigma2[h] - fc[h - 1];
            sq[h - 1] += e * e;
        }
    }
    const auto theory = forecast_mse(spec, dist, horizon);
    bool ok = true;
    std::ostringstream os;
    for (std::size_t h : {2u, 5u}) {
        const double emp = sq[h - 1] / static_cast<double>(reps);
        const double rel = emp / theory.ln_sigma2[h - 1] - 1.0;
        ok = ok && std::abs(rel) <= 0.10;
        os << "h=" << h << ": empirical " << emp << " vs " << theory.ln_sigma2[h - 1] << " (rel " << rel << "); ";
    }
    notes.line("h=1 empirical %.3e (theory 0)", sq[0] / static_cast<double>(reps));
    os << reps << " continuations, " << seconds_since(t0) << " s";
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// 8. property suites

struct Property {
    std::string name;
    std::function<bool()> check;
};

bool prop_jensen() {
    for (const auto& name : preset_names()) {
        const auto spec = *preset(name);
        const auto dist = InnovationDist::ged(1.5);
        const auto g = sample(dist, 3000, 5);
        std::vector<double> gv(g.size());
        const double mu = moment_functionals(dist).abs_mean;
        for (std::size_t i = 0; i < g.size(); ++i) gv[i] = news_impact(g[i], spec.theta, spec.gamma, mu);
        const auto sf = forecast_sigma2(spec, gv, 100, shock_variance(spec, moment_functionals(dist)));
        for (std::size_t h = 0; h < 100; ++h) {
            if (!(sf.plain[h] <= sf.corrected[h])) return false;
        }
        if (sf.plain[0] != sf.corrected[0]) return false;
    }
    return true;
}

bool prop_mse_monotone() {
    for (const auto& name : preset_names()) {
        const auto spec = *preset(name);
        for (auto dist : {InnovationDist::gaussian(), InnovationDist::ged(1.5)}) {
            const auto mse = forecast_mse(spec, dist, 200);
            if (mse.ln_sigma2[0] != 0.0) return false;
            for (std::size_t h = 1; h < 200; ++h) {
                if (mse.ln_sigma2[h] < mse.ln_sigma2[h - 1] || mse.ln_x2[h] < mse.ln_x2[h - 1]) return false;
            }
        }
    }
    return true;
}

bool prop_acvf_decomposition() {
    for (const auto& name : preset_names()) {
        const auto spec = *preset(name);
        for (auto dist : {InnovationDist::gaussian(), InnovationDist::ged(1.5)}) {
            const double a = acvf_ln_sigma2(spec, dist, 0, 20000)[0];
            const double b = acvf_ln_x2(spec, dist, 0, 20000)[0];
            const double v = moment_functionals(dist).log_square_variance;
            if (std::abs(b - (a + v)) > 1e-12 * std::abs(b)) return false;
        }
    }
    return true;
}

bool prop_spectral_inversion() {
    // Specs whose lambda^2 tail beyond m = 10^6 is far below the tolerance.
    std::vector<FiegarchSpec> specs{*preset("M2"), *preset("M4"), *preset("M6")};
    specs[1].d = -0.3;
    specs[2].d = 0.1;
    const auto dist = InnovationDist::ged(1.5);
    boost::math::quadrature::tanh_sinh<double> ts;
    for (const auto& spec : specs) {
        auto f = [&](double w) {
            const double arr[1] = {w};
            return spectral_density_ln_sigma2(spec, dist, arr)[0];
        };
        const double integral = 2.0 * ts.integrate(f, 0.0, M_PI);
        const double gamma0 = acvf_ln_sigma2(spec, dist, 0, 1000000)[0];
        const double rel = std::abs(integral / gamma0 - 1.0);
        notes.line("spectral inversion d=%.4f: integral %.8f, acvf(0) %.8f, rel %.2e", spec.d, integral, gamma0, rel);
        if (rel > 1e-3) return false;
    }
    return true;
}

bool prop_parseval() {
    for (std::size_t n : {257u, 1000u, 2001u}) {
        const auto path = simulate_path(*preset("M4"), InnovationDist::gaussian(), n, 5000, n);
        std::vector<double> y(n);
        for (std::size_t t = 0; t < n; ++t) y[t] = std::log(path.x[t] * path.x[t]);
        const auto pg = periodogram(y);
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double v : y) var += (v - mean) * (v - mean);
        var /= static_cast<double>(n);
        double total = 0.0;
        for (double v : pg.values) {
            if (v < 0.0) return false;
            total += v;
        }
        total *= 2.0 * (2.0 * M_PI / static_cast<double>(n));
        // Even n leaves out the Nyquist ordinate, which is O(1/n) of the total.
        if (std::abs(total - var) > 10.0 * var / static_cast<double>(n)) return false;
    }
    return true;
}

bool prop_difference_identity() {
    for (double d : {-0.9, -0.3, 0.2391, 0.3578, 0.49}) {
        const std::size_t m = 2000;
        const auto a = difference_coeffs(d, m);
        const auto b = fractional_sum_coeffs(d, m);
        for (std::size_t k = 0; k <= m; ++k) {
            double s = 0.0;
            for (std::size_t i = 0; i <= k; ++i) s += a[i] * b[k - i];
            if (std::abs(s - (k == 0 ? 1.0 : 0.0)) > 1e-12) return false;
        }
    }
    return true;
}

bool prop_seed_determinism() {
    const auto spec = *preset("M1");
    const int saved = kernels::max_threads();
    kernels::set_threads(1);
    const auto a = simulate_path(spec, InnovationDist::ged(1.5), 1000, 20000, 31337);
    kernels::set_threads(4);
    const auto b = simulate_path(spec, InnovationDist::ged(1.5), 1000, 20000, 31337);
    kernels::set_threads(saved);
    const auto c = simulate_path(spec, InnovationDist::ged(1.5), 1000, 20000, 31338);
    return a.x == b.x && a.sigma2 == b.sigma2 && a.z == b.z && a.x != c.x;
}

bool prop_ks_size() {
    const auto spec = *preset("M4");
    const auto dist = InnovationDist::gaussian();
    const std::size_t n = 2000, burn = 50000;
    // The simulator truncates lambda at `burn` terms, so the density uses the same truncation.
    auto density = [&](std::span<const double> w) { return spectral_density_ln_x2(spec, dist, w, burn - 1); };
    const std::size_t mfreq = (n - 1) / 2;
    std::vector<double> freqs(mfreq);
    for (std::size_t k = 0; k < mfreq; ++k) freqs[k] = 2.0 * M_PI * static_cast<double>(k + 1) / static_cast<double>(n);
    const auto f_cached = density(freqs);
    auto cached = [&](std::span<const double> w) {
        if (w.size() != f_cached.size()) return density(w);
        return f_cached;
    };
    int rejections = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto path = simulate_path(spec, dist, n, burn, derive_seed(4242, seed));
        std::vector<double> y(n);
        for (std::size_t t = 0; t < n; ++t) y[t] = std::log(path.x[t] * path.x[t]);
        if (ks_spectral_test(y, cached, 0.05).reject) ++rejections;
    }
    notes.line("KS size: %d/100 rejections at alpha=0.05 (limit 10)", rejections);
    return rejections <= 10;
}

Outcome criterion8() {
    const std::vector<Property> props{
        {"jensen ordering", prop_jensen},
        {"MSE monotone, MSE(1)=0", prop_mse_monotone},
        {"acvf ln X^2 decomposition", prop_acvf_decomposition},
        {"spectral inversion", prop_spectral_inversion},
        {"periodogram Parseval", prop_parseval},
        {"difference identity", prop_difference_identity},
        {"seed determinism", prop_seed_determinism},
        {"KS size", prop_ks_size},
    };
    int passed = 0;
    std::string failed;
    for (const auto& p : props) {
        bool ok = false;
        try {
            ok = p.check();
        } catch (const std::exception& e) {
            notes.line("%s threw: %s", p.name.c_str(), e.what());
        }
        notes.line("%s: %s", p.name.c_str(), ok ? "ok" : "violated");
        if (ok) {
            ++passed;
        } else {
            failed += (failed.empty() ? "" : ", ") + p.name;
        }
    }
    std::ostringstream os;
    os << passed << "/" << props.size() << " properties hold";
    if (!failed.empty()) os << " (violated: " << failed << ")";
    return {passed == static_cast<int>(props.size()), os.str()};
}

const std::map<int, std::pair<const char*, Outcome (*)()>> kCriteria{
    {1, {"lambda coefficient fixtures", criterion1}},
    {2, {"moment functional fixtures", criterion2}},
    {3, {"kurtosis fixture", criterion3}},
    {4, {"predictor limits", criterion4}},
    {5, {"recursion vs convolution oracle", criterion5}},
    {6, {"scaled Monte Carlo, M4", criterion6}},
    {7, {"forecast MSE law", criterion7}},
    {8, {"property suites", criterion8}},
};

bool run(int id) {
    const auto& [title, fn] = kCriteria.at(id);
    Outcome out;
    try {
        out = fn();
    } catch (const std::exception& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d (%s): %s\n", out.pass ? "PASS" : "FAIL", id, title, out.summary.c_str());
    std::fflush(stdout);
    return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, 8));
    CLI11_PARSE(app, argc, argv);

    bool all_ok = true;
    if (only != 0) {
        all_ok = run(only);
    } else {
        for (const auto& [id, entry] : kCriteria) {
            if (id == 6) continue;
            all_ok = run(id) && all_ok;
        }
    }
    return all_ok ? 0 : 1;
}
