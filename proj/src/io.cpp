#include "fiegarch/io.hpp"

#include "fiegarch/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fiegarch {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_double17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_fixed(double v, int decimals) {
    if (!std::isfinite(v)) return format_double(v);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::optional<double> to_number(const std::string& s) {
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (*first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        if (s == "nan" || s == "NaN") return std::nan("");
        return std::nullopt;
    }
    return v;
}

[[noreturn]] void parse_fail(const std::string& origin, std::size_t line, const std::string& msg) {
    std::ostringstream os;
    os << origin << ":" << line << ": " << msg;
    throw Error(ErrorKind::Parse, os.str());
}

}  // namespace

std::vector<double> read_csv_column(const std::string& path, const std::optional<std::string>& column) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");

    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> col;
    bool first_data_row = true;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto fields = split(t, ',');

        if (first_data_row) {
            first_data_row = false;
            bool numeric = true;
            for (const auto& f : fields) numeric = numeric && to_number(f).has_value();
            if (!numeric) {
                if (column) {
                    for (std::size_t i = 0; i < fields.size(); ++i) {
                        if (fields[i] == *column) col = i;
                    }
                    if (!col) {
                        if (const auto idx = to_number(*column); idx && *idx >= 0 && *idx == std::floor(*idx)) {
                            col = static_cast<std::size_t>(*idx);
                        } else {
                            parse_fail(path, lineno, "no column named '" + *column + "'");
                        }
                    }
                } else if (fields.size() == 1) {
                    col = 0;
                } else {
                    parse_fail(path, lineno, "several columns present; choose one with --column");
                }
                continue;
            }
        }
        if (!col) {
            if (column) {
                const auto idx = to_number(*column);
                if (!idx || *idx < 0 || *idx != std::floor(*idx)) {
                    parse_fail(path, lineno, "file has no header, so --column must be a 0-based index");
                }
                col = static_cast<std::size_t>(*idx);
            } else if (fields.size() == 1) {
                col = 0;
            } else {
                parse_fail(path, lineno, "several columns present; choose one with --column");
            }
        }
        if (*col >= fields.size()) parse_fail(path, lineno, "row has too few columns");
        const auto v = to_number(fields[*col]);
        if (!v || !std::isfinite(*v)) parse_fail(path, lineno, "not a finite number: '" + fields[*col] + "'");
        out.push_back(*v);
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::map<std::string, std::string> parse_key_values(const std::string& text, const std::string& origin) {
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) parse_fail(origin, lineno, "expected key=value");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) parse_fail(origin, lineno, "empty key");
        kv[key] = trim(t.substr(eq + 1));
    }
    return kv;
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    if (trim(text).empty()) return out;
    for (const auto& f : split(text, ',')) {
        const auto v = to_number(f);
        if (!v) throw Error(ErrorKind::Usage, "not a number: '" + f + "'");
        out.push_back(*v);
    }
    return out;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (double v : parse_number_list(text)) {
        if (v < 0 || v != std::floor(v)) throw Error(ErrorKind::Usage, "expected a nonnegative integer list");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::string format_fit_report(const FitResult& fit, std::size_t n) {
    const auto& s = fit.spec_hat;
    std::ostringstream os;
    os << "# FIEGARCH(" << s.p() << ",d," << s.q() << ") quasi-maximum-likelihood fit\n";
    os << "n=" << n << "\n";
    os << "p=" << s.p() << "\nq=" << s.q() << "\n";
    os << "d=" << format_double(s.d) << "\n";
    os << "omega=" << format_double(s.omega) << "\n";
    os << "theta=" << format_double(s.theta) << "\n";
    os << "gamma=" << format_double(s.gamma) << "\n";
    for (std::size_t i = 0; i < s.p(); ++i) os << "alpha" << i + 1 << "=" << format_double(s.alpha[i]) << "\n";
    for (std::size_t j = 0; j < s.q(); ++j) os << "beta" << j + 1 << "=" << format_double(s.beta[j]) << "\n";

    std::vector<std::string> names{"d", "omega", "theta", "gamma"};
    for (std::size_t i = 0; i < s.p(); ++i) names.push_back("alpha" + std::to_string(i + 1));
    for (std::size_t j = 0; j < s.q(); ++j) names.push_back("beta" + std::to_string(j + 1));
    for (std::size_t i = 0; i < names.size() && i < fit.std_errors.size(); ++i) {
        os << "stderr_" << names[i] << "=" << format_double(fit.std_errors[i]) << "\n";
    }
    os << "hessian_positive_definite=" << (fit.hessian_ok ? "true" : "false") << "\n";
    os << "loglik=" << format_double(fit.loglik) << "\n";
    os << "aic=" << format_double(fit.ic.aic) << "\n";
    os << "bic=" << format_double(fit.ic.bic) << "\n";
    os << "hqc=" << format_double(fit.ic.hqc) << "\n";
    os << "converged=" << (fit.converged ? "true" : "false") << "\n";
    os << "iterations=" << fit.iterations << "\n";
    os << "weakly_stationary=" << (fit.validity.weakly_stationary ? "true" : "false") << "\n";
    os << "beta_stable=" << (fit.validity.beta_stable ? "true" : "false") << "\n";
    os << "invertible=" << (fit.validity.invertible ? "true" : "false") << "\n";
    os << "common_roots_flag=" << (fit.validity.common_roots_flag ? "true" : "false") << "\n";
    return os.str();
}

FiegarchSpec spec_from_key_values(const std::map<std::string, std::string>& kv, const std::string& origin) {
    auto number = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) throw Error(ErrorKind::Parse, origin + ": missing key '" + key + "'");
        const auto v = to_number(it->second);
        if (!v || !std::isfinite(*v)) throw Error(ErrorKind::Parse, origin + ": bad value for '" + key + "'");
        return *v;
    };
    auto count = [&](const std::string& key) -> std::size_t {
        if (kv.find(key) == kv.end()) return 0;
        const double v = number(key);
        if (v < 0 || v != std::floor(v)) throw Error(ErrorKind::Parse, origin + ": '" + key + "' must be an integer");
        return static_cast<std::size_t>(v);
    };
    FiegarchSpec s;
    s.d = number("d");
    s.omega = number("omega");
    s.theta = number("theta");
    s.gamma = number("gamma");
    const std::size_t p = count("p");
    const std::size_t q = count("q");
    for (std::size_t i = 1; i <= p; ++i) s.alpha.push_back(number("alpha" + std::to_string(i)));
    for (std::size_t j = 1; j <= q; ++j) s.beta.push_back(number("beta" + std::to_string(j)));
    return s;
}

}  // namespace fiegarch
