#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fiegarch/errors.hpp"
#include "fiegarch/innovations.hpp"
#include "fiegarch/spec.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <cmath>
#include <numeric>

using namespace fiegarch;

namespace {

// |Z| = s (2W)^(1/nu), W ~ Gamma(1/nu, 1), s = ged_scale(nu).
struct GedClosedForm {
    double abs_mean, fourth_moment, log_square_mean, log_square_variance, abs_log_square_mean;
};

GedClosedForm ged_closed_form(double nu) {
    const double a = 1.0 / nu;
    const double s = std::sqrt(std::pow(2.0, -2.0 / nu) * std::tgamma(a) / std::tgamma(3.0 * a));
    const double base = 2.0 * std::log(s) + 2.0 / nu * std::log(2.0);
    GedClosedForm c{};
    c.abs_mean = s * std::pow(2.0, a) * std::tgamma(2.0 * a) / std::tgamma(a);
    c.fourth_moment = std::pow(s, 4) * std::pow(2.0, 4.0 * a) * std::tgamma(5.0 * a) / std::tgamma(a);
    c.log_square_mean = base + 2.0 / nu * boost::math::digamma(a);
    c.log_square_variance = 4.0 / (nu * nu) * boost::math::trigamma(a);
    c.abs_log_square_mean = c.abs_mean * (base + 2.0 / nu * boost::math::digamma(2.0 * a));
    return c;
}

}  // namespace

TEST_CASE("functionals match closed forms across tail indices") {
    for (double nu : {1.2, 1.5, 2.0, 3.0}) {
        CAPTURE(nu);
        const auto& f = moment_functionals(InnovationDist::ged(nu));
        const auto c = ged_closed_form(nu);
        CHECK(f.abs_mean == doctest::Approx(c.abs_mean).epsilon(1e-9));
        CHECK(f.fourth_moment == doctest::Approx(c.fourth_moment).epsilon(1e-9));
        CHECK(f.log_square_mean == doctest::Approx(c.log_square_mean).epsilon(1e-9));
        CHECK(f.log_square_variance == doctest::Approx(c.log_square_variance).epsilon(1e-9));
        CHECK(f.abs_log_square_mean == doctest::Approx(c.abs_log_square_mean).epsilon(1e-8));
        CHECK(f.signed_square_mean == 0.0);
        CHECK(f.third_moment == 0.0);
        CHECK(f.signed_log_square_mean == 0.0);
    }
}

TEST_CASE("Gaussian functionals") {
    const auto& f = moment_functionals(InnovationDist::gaussian());
    CHECK(f.abs_mean == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-12));
    CHECK(f.fourth_moment == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(f.log_square_mean == doctest::Approx(-0.5772156649015329 - std::log(2.0)).epsilon(1e-9));
    CHECK(f.log_square_variance == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-9));
    CHECK(f.log_square_second_moment() == doctest::Approx(f.log_square_variance + f.log_square_mean * f.log_square_mean));
}

TEST_CASE("GED with nu = 2 is the Gaussian") {
    const auto g = InnovationDist::gaussian();
    const auto e = InnovationDist::ged(2.0);
    CHECK(ged_scale(2.0) == doctest::Approx(1.0));
    for (double z : {-3.0, -0.5, 0.0, 1.0, 2.5}) {
        CHECK(density(e, z) == doctest::Approx(density(g, z)).epsilon(1e-13));
        CHECK(cdf(e, z) == doctest::Approx(cdf(g, z)).epsilon(1e-13));
    }
    CHECK(cdf(g, 1.0) == doctest::Approx(0.5 * std::erfc(-1.0 / std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("densities are standardized") {
    for (auto dist : {InnovationDist::gaussian(), InnovationDist::ged(0.8), InnovationDist::ged(1.5), InnovationDist::ged(4.0)}) {
        CAPTURE(describe(dist));
        CHECK(expectation(dist, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(expectation(dist, [](double z) { return z * z; }) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(expectation(dist, [](double z) { return z; })) < 1e-12);
        CHECK(cdf(dist, 0.0) == doctest::Approx(0.5));
        CHECK(cdf(dist, 1.3) + cdf(dist, -1.3) == doctest::Approx(1.0));
    }
}

TEST_CASE("sampling is reproducible and matches the law") {
    for (auto dist : {InnovationDist::gaussian(), InnovationDist::ged(1.5)}) {
        const auto a = sample(dist, 200000, 42);
        const auto b = sample(dist, 200000, 42);
        const auto c = sample(dist, 200000, 43);
        CHECK(a == b);
        CHECK(a != c);
        const double n = static_cast<double>(a.size());
        const double mean = std::accumulate(a.begin(), a.end(), 0.0) / n;
        double m2 = 0, m4 = 0, mabs = 0;
        for (double z : a) {
            m2 += z * z;
            m4 += z * z * z * z;
            mabs += std::abs(z);
        }
        m2 /= n;
        m4 /= n;
        mabs /= n;
        const auto& f = moment_functionals(dist);
        CHECK(std::abs(mean) < 0.01);
        CHECK(m2 == doctest::Approx(1.0).epsilon(0.01));
        CHECK(mabs == doctest::Approx(f.abs_mean).epsilon(0.005));
        CHECK(m4 == doctest::Approx(f.fourth_moment).epsilon(0.05));

        // Kolmogorov distance against the cdf at a few points.
        for (double q : {-1.5, -0.5, 0.0, 0.7, 2.0}) {
            const double frac = static_cast<double>(std::count_if(a.begin(), a.end(), [q](double z) { return z <= q; })) / n;
            CHECK(std::abs(frac - cdf(dist, q)) < 0.005);
        }
    }
}

TEST_CASE("moment generating function of g") {
    const auto spec = *preset("M4");
    const auto g = InnovationDist::gaussian();
    for (double c : {-2.0, -0.5, 0.0, 0.3, 1.0, 2.0}) {
        CHECK(shock_mgf(c, spec, g) == doctest::Approx(shock_mgf_gaussian(c, spec.theta, spec.gamma)).epsilon(1e-10));
    }
    CHECK(shock_mgf(0.0, spec, InnovationDist::ged(1.5)) == doctest::Approx(1.0));
    // E g(Z) = 0, so the mgf has zero slope at the origin.
    const double h = 1e-4;
    const auto e = InnovationDist::ged(1.5);
    CHECK(std::abs((shock_mgf(h, spec, e) - shock_mgf(-h, spec, e)) / (2 * h)) < 1e-6);
}

TEST_CASE("heavy tails make the mgf diverge") {
    const auto spec = *preset("M4");
    try {
        (void)shock_mgf(1.0, spec, InnovationDist::ged(0.8));
        FAIL("expected DivergentIntegral");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivergentIntegral);
    }
}

TEST_CASE("distribution parsing") {
    CHECK(parse_distribution("gaussian") == InnovationDist::gaussian());
    CHECK(parse_distribution("normal") == InnovationDist::gaussian());
    CHECK(parse_distribution("ged:1.5") == InnovationDist::ged(1.5));
    for (const char* bad : {"", "ged", "ged:-1", "ged:abc", "student:5"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS((void)parse_distribution(bad), Error);
    }
}

TEST_CASE("g transform") {
    CHECK(news_impact(1.0, 0.5, 2.0, 0.8) == doctest::Approx(0.5 + 2.0 * 0.2));
    CHECK(news_impact(-1.0, 0.5, 2.0, 0.8) == doctest::Approx(-0.5 + 2.0 * 0.2));
}
