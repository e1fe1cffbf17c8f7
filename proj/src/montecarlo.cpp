#include "fiegarch/montecarlo.hpp"

#include "fiegarch/errors.hpp"
#include "fiegarch/forecast.hpp"
#include "fiegarch/io.hpp"
#include "fiegarch/rng.hpp"
#include "fiegarch/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fiegarch {

namespace {

std::vector<double> numbers_or_empty(const std::string& text) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), [](char c) { return c == ' ' || c == '\t'; }), t.end());
    if (t.empty()) return {};
    return parse_number_list(t);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(value, &used);
        if (used == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::Parse, "bad integer for '" + key + "': " + value);
}

}  // namespace

FiegarchSpec parse_inline_spec(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(text);
    while (std::getline(is, cur, ';')) parts.push_back(cur);
    while (parts.size() < 3) parts.emplace_back();
    if (parts.size() > 3) throw Error(ErrorKind::Parse, "inline spec has more than three ';' groups: " + text);
    const auto head = numbers_or_empty(parts[0]);
    if (head.size() != 4) throw Error(ErrorKind::Parse, "inline spec needs d,omega,theta,gamma: " + text);
    FiegarchSpec s{head[0], head[1], head[2], head[3], numbers_or_empty(parts[1]), numbers_or_empty(parts[2])};
    if (!s.all_finite()) throw Error(ErrorKind::Parse, "inline spec has non-finite values: " + text);
    return s;
}

ExperimentConfig parse_experiment_config(const std::string& text, const std::string& origin) {
    const auto kv = parse_key_values(text, origin);
    ExperimentConfig cfg;
    cfg.models.clear();
    for (const auto& [key, value] : kv) {
        if (key == "models") {
            std::istringstream is(value);
            std::string name;
            while (std::getline(is, name, ',')) {
                name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
                if (name.empty()) continue;
                const auto p = preset(name);
                if (!p) throw Error(ErrorKind::Parse, origin + ": unknown preset '" + name + "'");
                cfg.models.push_back({name, *p});
            }
        } else if (key.rfind("model.", 0) == 0) {
            cfg.models.push_back({key.substr(6), parse_inline_spec(value)});
        } else if (key == "replications") {
            cfg.replications = parse_u64(key, value);
        } else if (key == "n") {
            cfg.sample_sizes = parse_index_list(value);
        } else if (key == "m_burn") {
            cfg.m_burn = parse_u64(key, value);
        } else if (key == "origin") {
            cfg.origin = parse_u64(key, value);
        } else if (key == "horizon") {
            cfg.horizon = parse_u64(key, value);
        } else if (key == "seed") {
            cfg.seed = parse_u64(key, value);
        } else if (key == "jobs") {
            cfg.jobs = static_cast<int>(parse_u64(key, value));
        } else if (key == "dist") {
            cfg.dist = parse_distribution(value);
        } else if (key == "forecasts") {
            cfg.forecasts = value == "true" || value == "1" || value == "yes";
        } else {
            throw Error(ErrorKind::Parse, origin + ": unknown key '" + key + "'");
        }
    }
    if (cfg.models.empty()) throw Error(ErrorKind::Usage, origin + ": no models given");
    if (cfg.replications < 2) throw Error(ErrorKind::Usage, origin + ": replications must be at least 2");
    if (cfg.sample_sizes.empty()) throw Error(ErrorKind::Usage, origin + ": no sample sizes given");
    for (auto n : cfg.sample_sizes) {
        if (n > cfg.origin) throw Error(ErrorKind::Usage, origin + ": sample size exceeds the forecast origin");
    }
    if (cfg.m_burn == 0) throw Error(ErrorKind::Usage, origin + ": m_burn must be positive");
    return cfg;
}

std::uint64_t replication_seed(std::uint64_t base, std::size_t model, std::size_t rep) {
    return derive_seed(base, model, rep);
}

std::vector<std::string> parameter_names(const FiegarchSpec& spec) {
    std::vector<std::string> names{"d", "omega", "theta", "gamma"};
    for (std::size_t i = 0; i < spec.p(); ++i) names.push_back("alpha" + std::to_string(i + 1));
    for (std::size_t j = 0; j < spec.q(); ++j) names.push_back("beta" + std::to_string(j + 1));
    return names;
}

namespace {

struct SubsampleOutcome {
    bool ok = false;
    std::vector<double> estimate;
    std::vector<double> corrected;
    std::vector<double> plain;
};

struct TaskOutcome {
    std::vector<double> sigma2_future;
    std::vector<double> x2_future;
    std::vector<SubsampleOutcome> subsamples;
};

TaskOutcome run_task(const ExperimentConfig& cfg, std::size_t model, std::size_t rep) {
    const auto& truth = cfg.models[model].spec;
    const std::uint64_t seed = replication_seed(cfg.seed, model, rep);
    const std::size_t horizon = cfg.forecasts ? cfg.horizon : 0;
    const auto path = simulate_path(truth, cfg.dist, cfg.origin + horizon, cfg.m_burn, seed);

    TaskOutcome out;
    for (std::size_t h = 0; h < horizon; ++h) {
        out.sigma2_future.push_back(path.sigma2[cfg.origin + h]);
        out.x2_future.push_back(path.x[cfg.origin + h] * path.x[cfg.origin + h]);
    }
    for (std::size_t s = 0; s < cfg.sample_sizes.size(); ++s) {
        const std::size_t n = cfg.sample_sizes[s];
        const std::span<const double> window(path.x.data() + (cfg.origin - n), n);
        SubsampleOutcome sub;
        try {
            FitOptions opt;
            opt.p = truth.p();
            opt.q = truth.q();
            opt.seed = derive_seed(seed, 1000 + s);
            opt.compute_stderr = false;
            const auto res = fit(window, opt);
            if (res.converged) {
                sub.estimate = to_vector(res.spec_hat);
                if (horizon > 0) {
                    const auto fc = forecast_from_data(res.spec_hat, window, horizon, cfg.dist, n + horizon);
                    sub.corrected = fc.sigma2_corrected;
                    sub.plain = fc.sigma2_plain;
                }
                sub.ok = true;
            }
        } catch (const Error&) {
            sub.ok = false;
        }
        out.subsamples.push_back(std::move(sub));
    }
    return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    const std::size_t n_models = cfg.models.size();
    const std::size_t re = cfg.replications;
    const std::size_t n_tasks = n_models * re;
    std::vector<std::optional<TaskOutcome>> tasks(n_tasks);
    std::vector<std::string> errors(n_tasks);

    const auto nt = static_cast<std::ptrdiff_t>(n_tasks);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, cfg.jobs))
    for (std::ptrdiff_t i = 0; i < nt; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            tasks[idx] = run_task(cfg, idx / re, idx % re);
        } catch (const std::exception& e) {
            errors[idx] = e.what();
        }
    }

    ExperimentReport report;
    report.config = cfg;
    const std::size_t horizon = cfg.forecasts ? cfg.horizon : 0;
    for (std::size_t mi = 0; mi < n_models; ++mi) {
        ModelReport mr;
        mr.name = cfg.models[mi].name;
        mr.truth = cfg.models[mi].spec;
        const auto truth = to_vector(mr.truth);
        for (std::size_t s = 0; s < cfg.sample_sizes.size(); ++s) {
            SubsampleStats st;
            st.n = cfg.sample_sizes[s];
            st.mean_sigma2.assign(horizon, 0.0);
            st.mean_x2.assign(horizon, 0.0);
            st.mean_corrected.assign(horizon, 0.0);
            st.mean_plain.assign(horizon, 0.0);
            st.mse_corrected_sigma2.assign(horizon, 0.0);
            st.mse_corrected_x2.assign(horizon, 0.0);
            std::vector<std::vector<double>> estimates;
            for (std::size_t r = 0; r < re; ++r) {
                const auto& task = tasks[mi * re + r];
                if (!task || !task->subsamples[s].ok) {
                    ++st.failures;
                    continue;
                }
                const auto& sub = task->subsamples[s];
                estimates.push_back(sub.estimate);
                for (std::size_t h = 0; h < horizon; ++h) {
                    st.mean_sigma2[h] += task->sigma2_future[h];
                    st.mean_x2[h] += task->x2_future[h];
                    st.mean_corrected[h] += sub.corrected[h];
                    st.mean_plain[h] += sub.plain[h];
                    const double es = sub.corrected[h] - task->sigma2_future[h];
                    const double ex = sub.corrected[h] - task->x2_future[h];
                    st.mse_corrected_sigma2[h] += es * es;
                    st.mse_corrected_x2[h] += ex * ex;
                }
            }
            st.successes = estimates.size();
            const double k = static_cast<double>(std::max<std::size_t>(1, st.successes));
            for (auto* v : {&st.mean_sigma2, &st.mean_x2, &st.mean_corrected, &st.mean_plain, &st.mse_corrected_sigma2,
                            &st.mse_corrected_x2}) {
                for (double& x : *v) x /= k;
            }
            if (estimates.size() >= 2) st.params = mc_stats(estimates, truth);
            mr.subsamples.push_back(std::move(st));
        }
        report.models.push_back(std::move(mr));
    }
    return report;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content, std::vector<std::string>& written) {
    std::ofstream out(p);
    if (!out) throw Error(ErrorKind::Usage, "cannot write '" + p.string() + "'");
    out << content;
    written.push_back(p.string());
}

}  // namespace

std::vector<std::string> write_experiment_report(const ExperimentReport& report, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    std::vector<std::string> written;
    const auto& cfg = report.config;

    for (const auto& mr : report.models) {
        const auto names = parameter_names(mr.truth);
        const auto truth = to_vector(mr.truth);
        for (const auto& st : mr.subsamples) {
            const std::string stem = mr.name + "_n" + std::to_string(st.n);

            // Parameter statistics, full precision and rounded to 4 decimals.
            for (const bool rounded : {false, true}) {
                auto fmt = [&](double v) { return rounded ? format_fixed(v, 4) : format_double(v); };
                std::ostringstream os;
                os << "parameter,truth,mean,sd,bias,mae,mse,successes,failures\n";
                for (std::size_t i = 0; i < names.size(); ++i) {
                    os << names[i] << "," << fmt(truth[i]);
                    if (st.successes >= 2) {
                        os << "," << fmt(st.params.mean[i]) << "," << fmt(st.params.sd[i]) << ","
                           << fmt(st.params.bias[i]) << "," << fmt(st.params.mae[i]) << "," << fmt(st.params.mse[i]);
                    } else {
                        os << ",nan,nan,nan,nan,nan";
                    }
                    os << "," << st.successes << "," << st.failures << "\n";
                }
                write_file(fs::path(dir) / (stem + (rounded ? "_params_rounded.csv" : "_params.csv")), os.str(),
                           written);
            }

            if (!cfg.forecasts) continue;
            // Forecast statistics; column suffixes name the scaling constants.
            for (const bool rounded : {false, true}) {
                auto fmt = [&](double v) { return rounded ? format_fixed(v, 4) : format_double(v); };
                std::ostringstream os;
                os << "h,sigma2_x1e2,x2_x1e2,corrected_x1e2,plain_x1e2,mse_sigma2_x1e4,mse_x2_x1e4,successes,failures\n";
                for (std::size_t h = 0; h < st.mean_sigma2.size(); ++h) {
                    os << h + 1 << "," << fmt(1e2 * st.mean_sigma2[h]) << "," << fmt(1e2 * st.mean_x2[h]) << ","
                       << fmt(1e2 * st.mean_corrected[h]) << "," << fmt(1e2 * st.mean_plain[h]) << ","
                       << fmt(1e4 * st.mse_corrected_sigma2[h]) << "," << fmt(1e4 * st.mse_corrected_x2[h]) << ","
                       << st.successes << "," << st.failures << "\n";
                }
                write_file(fs::path(dir) / (stem + (rounded ? "_forecast_rounded.csv" : "_forecast.csv")), os.str(),
                           written);
            }
        }
    }

    std::ostringstream os;
    os << "replications=" << cfg.replications << "\n";
    os << "m_burn=" << cfg.m_burn << "\norigin=" << cfg.origin << "\nhorizon=" << cfg.horizon << "\n";
    os << "seed=" << cfg.seed << "\ndist=" << describe(cfg.dist) << "\n";
    os << "n=";
    for (std::size_t i = 0; i < cfg.sample_sizes.size(); ++i) os << (i ? "," : "") << cfg.sample_sizes[i];
    os << "\n";
    for (const auto& mr : report.models) os << "model." << mr.name << "=" << describe(mr.truth) << "\n";
    write_file(fs::path(dir) / "experiment.txt", os.str(), written);
    return written;
}

}  // namespace fiegarch
