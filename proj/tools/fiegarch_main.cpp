// Command-line front end: coeffs, simulate, fit, forecast, diagnose, montecarlo.

#include "fiegarch/coeffs.hpp"
#include "fiegarch/diagnostics.hpp"
#include "fiegarch/errors.hpp"
#include "fiegarch/estimate.hpp"
#include "fiegarch/forecast.hpp"
#include "fiegarch/io.hpp"
#include "fiegarch/kernels.hpp"
#include "fiegarch/moments.hpp"
#include "fiegarch/montecarlo.hpp"
#include "fiegarch/simulate.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace fiegarch;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    int jobs = 1;
};

struct SpecOptions {
    std::string preset;
    std::optional<double> d, omega, theta, gamma;
    std::vector<double> alpha, beta;
    std::optional<std::size_t> p, q;
    std::string model_file;

    void attach(CLI::App* cmd, bool with_model_file) {
        cmd->add_option("--preset", preset, "Named parameter set M1..M6");
        cmd->add_option("--d", d, "Fractional differencing parameter");
        cmd->add_option("--omega", omega, "Log-variance level");
        cmd->add_option("--theta", theta, "Sign (leverage) coefficient");
        cmd->add_option("--gamma", gamma, "Magnitude coefficient");
        cmd->add_option("--alpha", alpha, "alpha_1..alpha_p")->delimiter(',');
        cmd->add_option("--beta", beta, "beta_1..beta_q")->delimiter(',');
        cmd->add_option("--p", p, "Order p (checked against --alpha)");
        cmd->add_option("--q", q, "Order q (checked against --beta)");
        if (with_model_file) cmd->add_option("--model", model_file, "Fit report or key=value parameter file");
    }

    FiegarchSpec resolve() const {
        FiegarchSpec s;
        if (!model_file.empty()) {
            s = spec_from_key_values(parse_key_values(read_text_file(model_file), model_file), model_file);
        } else if (!preset.empty()) {
            const auto found = fiegarch::preset(preset);
            if (!found) throw Error(ErrorKind::Usage, "unknown preset '" + preset + "'");
            s = *found;
        }
        if (d) s.d = *d;
        if (omega) s.omega = *omega;
        if (theta) s.theta = *theta;
        if (gamma) s.gamma = *gamma;
        if (!alpha.empty()) s.alpha = alpha;
        if (!beta.empty()) s.beta = beta;
        if (p && *p != s.p()) {
            if (*p == 0 || !alpha.empty()) throw Error(ErrorKind::Usage, "--p does not match the number of alpha values");
            throw Error(ErrorKind::Usage, "--p needs --alpha with that many values");
        }
        if (q && *q != s.q()) {
            if (*q == 0 || !beta.empty()) throw Error(ErrorKind::Usage, "--q does not match the number of beta values");
            throw Error(ErrorKind::Usage, "--q needs --beta with that many values");
        }
        if (!s.all_finite()) throw Error(ErrorKind::Usage, "parameters must be finite");
        return s;
    }
};

fs::path output_path(const GlobalOptions& g, const std::string& name) {
    fs::create_directories(g.out_dir);
    return fs::path(g.out_dir) / name;
}

void write_text(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    if (!out) throw Error(ErrorKind::Usage, "cannot write '" + p.string() + "'");
    out << content;
}

void require_valid(const FiegarchSpec& spec) {
    const auto v = validate(spec);
    if (!v.beta_stable) throw Error(ErrorKind::RootInsideDisk, "beta polynomial has a root inside the closed unit disk");
    if (!v.weakly_stationary) throw Error(ErrorKind::NonStationary, "d must be below 0.5");
    if (v.common_roots_flag) std::cerr << "warning: alpha and beta polynomials share a root\n";
}

// --- coeffs --------------------------------------------------------------

struct CoeffsCmd {
    SpecOptions spec;
    std::string ks = "0,10,100,1000,5000,10000,25000,50000,100000";
    std::optional<std::size_t> m;

    void run(const GlobalOptions& g, bool write_file) const {
        const auto s = spec.resolve();
        const auto lags = parse_index_list(ks);
        std::size_t top = 0;
        for (auto k : lags) top = std::max(top, k);
        const std::size_t trunc = m.value_or(top);
        if (trunc < top) throw Error(ErrorKind::Usage, "--m is smaller than the largest requested k");
        const auto impulse = impulse_weights(s, trunc);

        std::ostringstream os;
        os << "k,weight,q1,q2\n";
        const bool pole = s.d <= 0.0 && s.d == std::nearbyint(s.d);
        for (auto k : lags) {
            os << k << "," << format_double(impulse[k]);
            if (k == 0 || pole) {
                os << ",nan,nan\n";
            } else {
                const auto q = weight_quotients(s, impulse, k);
                os << "," << format_double(q.q1) << "," << format_double(q.q2) << "\n";
            }
        }
        std::cout << os.str();
        if (write_file) write_text(output_path(g, "coeffs.csv"), os.str());
    }
};

// --- simulate ------------------------------------------------------------

struct SimulateCmd {
    SpecOptions spec;
    std::size_t n = 2000;
    std::size_t m_burn = kDefaultBurnIn;
    std::string dist = "ged:1.5";
    std::string file = "simulated.csv";

    void run(const GlobalOptions& g) const {
        const auto s = spec.resolve();
        require_valid(s);
        const auto path = simulate_path(s, parse_distribution(dist), n, m_burn, g.seed);
        std::ostringstream os;
        os << "t,x,sigma2\n";
        for (std::size_t t = 0; t < path.size(); ++t) {
            os << t + 1 << "," << format_double17(path.x[t]) << "," << format_double17(path.sigma2[t]) << "\n";
        }
        const auto out = output_path(g, file);
        write_text(out, os.str());
        std::cerr << "wrote " << out.string() << " (" << n << " rows)\n";
    }
};

// --- fit -----------------------------------------------------------------

struct FitCmd {
    std::string data;
    std::string column;
    std::size_t p = 0;
    std::size_t q = 0;
    std::string file = "fit.txt";

    void run(const GlobalOptions& g) const {
        const auto x = read_csv_column(data, column.empty() ? std::nullopt : std::optional<std::string>(column));
        FitOptions opt;
        opt.p = p;
        opt.q = q;
        opt.seed = g.seed;
        const auto res = fit(x, opt);
        const auto report = format_fit_report(res, x.size());
        write_text(output_path(g, file), report);
        std::cout << report;
        if (!res.converged) std::cerr << "warning: optimizer stopped before meeting its tolerance\n";
        if (!res.hessian_ok) std::cerr << "warning: Hessian not positive definite; standard errors unavailable\n";
    }
};

// --- forecast ------------------------------------------------------------

struct ForecastCmd {
    SpecOptions spec;
    std::string data;
    std::string column;
    std::size_t horizon = 50;
    std::string dist = "gaussian";
    std::size_t m = kDefaultTruncation;
    std::string file = "forecast.csv";

    void run(const GlobalOptions& g) const {
        const auto s = spec.resolve();
        const auto v = validate(s);
        if (!v.beta_stable) throw Error(ErrorKind::RootInsideDisk, "beta polynomial has a root inside the closed unit disk");
        const auto x = read_csv_column(data, column.empty() ? std::nullopt : std::optional<std::string>(column));
        if (x.empty()) throw Error(ErrorKind::InsufficientData, "no observations in '" + data + "'");
        if (horizon == 0) throw Error(ErrorKind::Usage, "--horizon must be positive");
        const auto fc = forecast_from_data(s, x, horizon, parse_distribution(dist), m);

        std::ostringstream os;
        os << "h,ln_sigma2_hat,sigma2_check,sigma2_tilde,mse_ln_sigma2,mse_ln_x2\n";
        for (std::size_t h = 0; h < horizon; ++h) {
            os << h + 1 << "," << format_double(fc.ln_sigma2_hat[h]) << "," << format_double(fc.sigma2_plain[h]) << ","
               << format_double(fc.sigma2_corrected[h]) << "," << format_double(fc.mse_ln_sigma2[h]) << ","
               << format_double(fc.mse_ln_x2[h]) << "\n";
        }
        write_text(output_path(g, file), os.str());
        std::cout << "limit_plain=" << format_double(fc.limit_plain) << "\n"
                  << "limit_corrected=" << format_double(fc.limit_corrected) << "\n"
                  << "shock_variance_hat=" << format_double(fc.shock_variance_hat) << "\n"
                  << "abs_mean_hat=" << format_double(fc.abs_mean_hat) << "\n";
    }
};

// --- diagnose ------------------------------------------------------------

struct DiagnoseCmd {
    SpecOptions spec;
    std::string data;
    std::string column;
    std::size_t maxlag = 100;
    std::string dist = "gaussian";
    double alpha = 0.05;
    std::string target = "ln_x2";
    std::size_t m = kDefaultTruncation;

    void run(const GlobalOptions& g) const {
        const auto x = read_csv_column(data, column.empty() ? std::nullopt : std::optional<std::string>(column));
        const bool volatility = target == "ln_sigma2";
        if (!volatility && target != "ln_x2") throw Error(ErrorKind::Usage, "--target must be ln_x2 or ln_sigma2");
        if (x.size() < 4) throw Error(ErrorKind::InsufficientData, "need at least 4 observations");
        // ln_x2 reads returns, ln_sigma2 reads a variance column such as simulate's sigma2.
        std::vector<double> y;
        y.reserve(x.size());
        for (double v : x) {
            if (volatility ? v <= 0.0 : v == 0.0) {
                throw Error(ErrorKind::Usage, "log undefined for a value of " + format_double(v));
            }
            y.push_back(volatility ? std::log(v) : std::log(v * v));
        }
        const auto pg = periodogram(y);
        {
            std::ostringstream os;
            os << "k,freq,periodogram\n";
            for (std::size_t k = 0; k < pg.values.size(); ++k) {
                os << k + 1 << "," << format_double(pg.freqs[k]) << "," << format_double(pg.values[k]) << "\n";
            }
            write_text(output_path(g, "periodogram.csv"), os.str());
        }
        {
            const auto acvf = sample_acvf(y, std::min(maxlag, y.size() - 1));
            std::ostringstream os;
            os << "lag,acvf,acf\n";
            for (std::size_t h = 0; h < acvf.size(); ++h) {
                os << h << "," << format_double(acvf[h]) << ","
                   << format_double(acvf[0] > 0 ? acvf[h] / acvf[0] : std::nan("")) << "\n";
            }
            write_text(output_path(g, "acvf.csv"), os.str());
        }

        std::ostringstream rep;
        const auto kurt = sample_kurtosis(x);
        const auto asym = sample_asymmetry(x);
        rep << "n=" << x.size() << "\n";
        rep << "series=" << target << "\n";
        rep << "sample_kurtosis_input=" << (kurt ? format_double(*kurt) : "undefined") << "\n";
        rep << "sample_asymmetry_input=" << (asym ? format_double(*asym) : "undefined") << "\n";

        const bool have_model = !spec.model_file.empty() || !spec.preset.empty() || spec.d.has_value();
        if (have_model) {
            const auto s = spec.resolve();
            require_valid(s);
            const auto innov = parse_distribution(dist);
            auto density = [&](std::span<const double> w) {
                return volatility ? spectral_density_ln_sigma2(s, innov, w) : spectral_density_ln_x2(s, innov, w, m);
            };
            const auto ks = ks_spectral_test(y, density, alpha);
            const std::size_t mm = ks.c.size();
            std::ostringstream cp;
            cp << "x,c,lower,upper\n";
            for (std::size_t i = 0; i < mm; ++i) {
                cp << i + 1 << "," << format_double(ks.c[i]) << "," << format_double(ks.lower[i]) << ","
                   << format_double(ks.upper[i]) << "\n";
            }
            write_text(output_path(g, "cpgram.csv"), cp.str());
            rep << "model=" << describe(s) << "\n";
            rep << "dist=" << describe(innov) << "\n";
            rep << "level=" << alpha << "\n";
            rep << "critical_value=" << ks.critical << "\n";
            rep << "frequencies=" << mm << "\n";
            rep << "band_half_width=" << format_double(ks.critical / std::sqrt(static_cast<double>(mm - 1))) << "\n";
            rep << "max_deviation=" << format_double(ks.max_deviation) << "\n";
            rep << "first_exit=" << (ks.first_exit_index ? std::to_string(*ks.first_exit_index) : "none") << "\n";
            rep << "verdict=" << (ks.reject ? "rejected" : "not rejected") << "\n";
        } else {
            rep << "verdict=untested (no model given)\n";
        }
        write_text(output_path(g, "ks_report.txt"), rep.str());
        std::cout << rep.str();
    }
};

// --- montecarlo ----------------------------------------------------------

struct MonteCarloCmd {
    std::string config_file;
    std::vector<std::string> presets;
    std::optional<std::size_t> replications, m_burn, origin, horizon;
    std::string sizes;
    std::string dist;
    bool no_forecasts = false;

    void run(const GlobalOptions& g, bool seed_given, bool jobs_given) const {
        ExperimentConfig cfg;
        if (!config_file.empty()) {
            cfg = parse_experiment_config(read_text_file(config_file), config_file);
        } else {
            cfg.models.clear();
        }
        if (!presets.empty()) {
            cfg.models.clear();
            for (const auto& name : presets) {
                const auto p = fiegarch::preset(name);
                if (!p) throw Error(ErrorKind::Usage, "unknown preset '" + name + "'");
                cfg.models.push_back({name, *p});
            }
        }
        if (cfg.models.empty()) throw Error(ErrorKind::Usage, "give --config or --preset");
        if (replications) cfg.replications = *replications;
        if (m_burn) cfg.m_burn = *m_burn;
        if (origin) cfg.origin = *origin;
        if (horizon) cfg.horizon = *horizon;
        if (!sizes.empty()) cfg.sample_sizes = parse_index_list(sizes);
        if (!dist.empty()) cfg.dist = parse_distribution(dist);
        if (no_forecasts) cfg.forecasts = false;
        if (seed_given || config_file.empty()) cfg.seed = g.seed;
        if (jobs_given || config_file.empty()) cfg.jobs = g.jobs;
        if (cfg.replications < 2) throw Error(ErrorKind::Usage, "--replications must be at least 2");
        for (auto n : cfg.sample_sizes) {
            if (n > cfg.origin) throw Error(ErrorKind::Usage, "sample size exceeds the forecast origin");
        }
        for (const auto& m : cfg.models) require_valid(m.spec);

        const auto report = run_experiment(cfg);
        const auto files = write_experiment_report(report, g.out_dir);
        for (const auto& mr : report.models) {
            for (const auto& st : mr.subsamples) {
                std::cout << mr.name << " n=" << st.n << " successes=" << st.successes << " failures=" << st.failures;
                if (st.successes >= 2) {
                    std::cout << " mean_d=" << format_fixed(st.params.mean[0], 4)
                              << " sd_d=" << format_fixed(st.params.sd[0], 4);
                }
                std::cout << "\n";
            }
        }
        for (const auto& f : files) std::cerr << "wrote " << f << "\n";
    }
};

int exit_code_for(const Error& e) { return e.is_numeric() ? 3 : 2; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FIEGARCH(p,d,q) toolkit: coefficients, simulation, estimation, forecasting, diagnostics"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    GlobalOptions g;
    auto* seed_opt = app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
    app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
    auto* jobs_opt = app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

    CoeffsCmd coeffs;
    auto* c_coeffs = app.add_subcommand("coeffs", "Impulse weights of the log variance with their growth quotients");
    coeffs.spec.attach(c_coeffs, false);
    c_coeffs->add_option("--k", coeffs.ks, "Comma-separated lags")->capture_default_str();
    c_coeffs->add_option("--m", coeffs.m, "Truncation order (default: largest k)");

    SimulateCmd simulate;
    auto* c_sim = app.add_subcommand("simulate", "Simulate a path; writes t,x,sigma2");
    simulate.spec.attach(c_sim, true);
    c_sim->add_option("--n", simulate.n, "Path length")->capture_default_str();
    c_sim->add_option("--m-burn", simulate.m_burn, "Pre-sample length")->capture_default_str();
    c_sim->add_option("--dist", simulate.dist, "gaussian or ged:<nu>")->capture_default_str();
    c_sim->add_option("--file", simulate.file, "Output file name")->capture_default_str();

    FitCmd fitc;
    auto* c_fit = app.add_subcommand("fit", "Quasi-maximum-likelihood fit of a return series");
    c_fit->add_option("--data", fitc.data, "CSV file")->required();
    c_fit->add_option("--column", fitc.column, "Column name or 0-based index");
    c_fit->add_option("--p", fitc.p, "Order p")->capture_default_str();
    c_fit->add_option("--q", fitc.q, "Order q")->capture_default_str();
    c_fit->add_option("--file", fitc.file, "Report file name")->capture_default_str();

    ForecastCmd forecast;
    auto* c_fc = app.add_subcommand("forecast", "h-step volatility forecasts with mean square errors");
    forecast.spec.attach(c_fc, true);
    c_fc->add_option("--data", forecast.data, "CSV history")->required();
    c_fc->add_option("--column", forecast.column, "Column name or 0-based index");
    c_fc->add_option("--horizon", forecast.horizon, "Forecast horizon H")->capture_default_str();
    c_fc->add_option("--dist", forecast.dist, "Innovation law for the MSE columns")->capture_default_str();
    c_fc->add_option("--m", forecast.m, "Truncation for limits and MSE tails")->capture_default_str();
    c_fc->add_option("--file", forecast.file, "Output file name")->capture_default_str();

    DiagnoseCmd diagnose;
    auto* c_diag = app.add_subcommand("diagnose", "Periodogram, ACVF and cumulative-periodogram test");
    diagnose.spec.attach(c_diag, true);
    c_diag->add_option("--data", diagnose.data, "CSV series")->required();
    c_diag->add_option("--column", diagnose.column, "Column name or 0-based index");
    c_diag->add_option("--maxlag", diagnose.maxlag, "Largest ACVF lag")->capture_default_str();
    c_diag->add_option("--dist", diagnose.dist, "Innovation law of the model")->capture_default_str();
    c_diag->add_option("--level", diagnose.alpha, "Significance level, 0.05 or 0.01")->capture_default_str();
    c_diag->add_option("--target", diagnose.target, "ln_x2 (column holds returns) or ln_sigma2 (column holds variances)")
        ->capture_default_str();
    c_diag->add_option("--m", diagnose.m, "Truncation of the impulse-weight transform")->capture_default_str();

    MonteCarloCmd mc;
    auto* c_mc = app.add_subcommand("montecarlo", "Estimation and forecast study over replications");
    c_mc->add_option("--config", mc.config_file, "key=value experiment file");
    c_mc->add_option("--preset", mc.presets, "Preset models")->delimiter(',');
    c_mc->add_option("--replications", mc.replications, "Replications per model");
    c_mc->add_option("--n", mc.sizes, "Comma-separated sub-sample sizes");
    c_mc->add_option("--m-burn", mc.m_burn, "Pre-sample length");
    c_mc->add_option("--origin", mc.origin, "Forecast origin N");
    c_mc->add_option("--horizon", mc.horizon, "Forecast horizon");
    c_mc->add_option("--dist", mc.dist, "gaussian or ged:<nu>");
    c_mc->add_flag("--no-forecasts", mc.no_forecasts, "Skip the forecast part");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    kernels::set_threads(g.jobs);
    try {
        if (c_coeffs->parsed()) coeffs.run(g, app.count("--out") > 0);
        else if (c_sim->parsed()) simulate.run(g);
        else if (c_fit->parsed()) fitc.run(g);
        else if (c_fc->parsed()) forecast.run(g);
        else if (c_diag->parsed()) diagnose.run(g);
        else if (c_mc->parsed()) mc.run(g, seed_opt->count() > 0, jobs_opt->count() > 0);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
