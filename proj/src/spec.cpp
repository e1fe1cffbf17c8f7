#include "fiegarch/spec.hpp"

#include "fiegarch/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

namespace fiegarch {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Usage: return "usage";
        case ErrorKind::InsufficientData: return "insufficient data";
        case ErrorKind::RootInsideDisk: return "root inside unit disk";
        case ErrorKind::GammaPole: return "gamma pole";
        case ErrorKind::QuadratureFailure: return "quadrature failure";
        case ErrorKind::DivergentIntegral: return "divergent integral";
        case ErrorKind::NonStationary: return "non-stationary";
        case ErrorKind::NumericOverflow: return "numeric overflow";
        case ErrorKind::NonPositiveDensity: return "non-positive density";
        case ErrorKind::Parse: return "parse error";
    }
    return "unknown";
}

bool FiegarchSpec::all_finite() const noexcept {
    auto fin = [](double v) { return std::isfinite(v); };
    return fin(d) && fin(omega) && fin(theta) && fin(gamma) &&
           std::all_of(alpha.begin(), alpha.end(), fin) && std::all_of(beta.begin(), beta.end(), fin);
}

namespace {

// FNV-1a over the raw bytes of every field, with the orders mixed in.
std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= bytes[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::uint64_t spec_hash(const FiegarchSpec& spec) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const std::array<double, 4> head{spec.d, spec.omega, spec.theta, spec.gamma};
    h = fnv1a(h, head.data(), sizeof(double) * head.size());
    const std::uint64_t p = spec.p();
    const std::uint64_t q = spec.q();
    h = fnv1a(h, &p, sizeof p);
    h = fnv1a(h, spec.alpha.data(), sizeof(double) * spec.alpha.size());
    h = fnv1a(h, &q, sizeof q);
    h = fnv1a(h, spec.beta.data(), sizeof(double) * spec.beta.size());
    return h;
}

std::optional<FiegarchSpec> preset(std::string_view name) {
    if (name == "M1") return FiegarchSpec{0.4495, -6.5769, -0.1245, 0.3662, {-1.1190, -0.7619}, {-0.6195}};
    if (name == "M2")
        return FiegarchSpec{0.2391, -6.6278, -0.0456, 0.3963, {}, {0.2289, 0.1941, 0.4737, -0.4441}};
    if (name == "M3") return FiegarchSpec{0.4312, -6.6829, -0.1095, 0.3376, {}, {0.5454}};
    if (name == "M4") return FiegarchSpec{0.3578, -7.2247, -0.1661, 0.2792, {}, {0.6860}};
    if (name == "M5") return FiegarchSpec{0.4900, -5.8927, -0.0215, 0.3700, {0.1409}, {-0.1611}};
    if (name == "M6") return FiegarchSpec{0.4312, -6.6829, -0.1095, 0.3376, {0.5454}, {}};
    return std::nullopt;
}

std::vector<std::string> preset_names() { return {"M1", "M2", "M3", "M4", "M5", "M6"}; }

std::complex<double> eval_lag_polynomial(std::span<const double> coefs, std::complex<double> z) {
    // Horner on 1 - c1 z - c2 z^2 - ...
    std::complex<double> acc = 0.0;
    for (std::size_t i = coefs.size(); i-- > 0;) {
        acc = (acc - coefs[i]) * z;
    }
    return 1.0 + acc;
}

std::vector<std::complex<double>> lag_polynomial_roots(std::span<const double> coefs) {
    std::size_t degree = coefs.size();
    while (degree > 0 && coefs[degree - 1] == 0.0) --degree;
    if (degree == 0) return {};

    // Polynomial a_0 + a_1 z + ... + a_n z^n with a_0 = 1, a_i = -c_i.
    // Monic form divides by a_n; companion matrix has the last column -a_i/a_n.
    const double lead = -coefs[degree - 1];
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree),
                                                      static_cast<Eigen::Index>(degree));
    for (std::size_t i = 1; i < degree; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    for (std::size_t i = 0; i < degree; ++i) {
        const double a_i = (i == 0) ? 1.0 : -coefs[i - 1];
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(degree - 1)) = -a_i / lead;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    std::vector<std::complex<double>> roots;
    roots.reserve(degree);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        roots.push_back(solver.eigenvalues()[i]);
    }
    return roots;
}

namespace {

double min_modulus(const std::vector<std::complex<double>>& roots) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : roots) m = std::min(m, std::abs(r));
    return m;
}

}  // namespace

ValidityReport validate(const FiegarchSpec& spec) {
    ValidityReport report;
    report.finite = spec.all_finite();
    if (!report.finite) {
        report.min_beta_root_modulus = std::numeric_limits<double>::quiet_NaN();
        return report;
    }

    const auto beta_roots = lag_polynomial_roots(spec.beta);
    const auto alpha_roots = lag_polynomial_roots(spec.alpha);
    report.min_beta_root_modulus = min_modulus(beta_roots);
    report.beta_stable = report.min_beta_root_modulus > 1.0 + kRootTolerance;
    report.alpha_outside_disk = min_modulus(alpha_roots) > 1.0 + kRootTolerance;

    for (const auto& a : alpha_roots) {
        for (const auto& b : beta_roots) {
            if (std::abs(a - b) < kCommonRootTolerance) report.common_roots_flag = true;
        }
    }

    report.weakly_stationary = spec.d < 0.5;
    report.strictly_valid = report.beta_stable && report.weakly_stationary;
    report.invertible = spec.d > -1.0 && spec.d < 0.5 && report.alpha_outside_disk;
    return report;
}

std::string describe(const FiegarchSpec& spec) {
    std::ostringstream os;
    os.precision(6);
    os << "FIEGARCH(" << spec.p() << ",d," << spec.q() << ") d=" << spec.d << " omega=" << spec.omega
       << " theta=" << spec.theta << " gamma=" << spec.gamma;
    for (std::size_t i = 0; i < spec.p(); ++i) os << " alpha" << i + 1 << "=" << spec.alpha[i];
    for (std::size_t j = 0; j < spec.q(); ++j) os << " beta" << j + 1 << "=" << spec.beta[j];
    return os.str();
}

}  // namespace fiegarch
