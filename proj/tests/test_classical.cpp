#include <doctest.h>

#include <cmath>
#include <vector>

#include "attractoscope/classical/dmkrm.hpp"
#include "attractoscope/classical/dpdds.hpp"
#include "attractoscope/diagnostics.hpp"
#include "attractoscope/errors.hpp"

using namespace attractoscope;
using namespace attractoscope::classical;

namespace {

// Plain bisection on a sign change, independent of the library.
template <class F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double sample_variance(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_CASE("dmkrm free rotation") {
    DmkrmParams p;
    p.k = 0.0;
    p.gamma = 1.0;
    p.hbar_eff = 0.019;
    const PhasePoint s{1.0, 2.0 * p.tau()};
    const auto out = dmkrm_step(s, p, nullptr);
    CHECK(out.p / p.tau() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(out.x == doctest::Approx(1.038).epsilon(1e-14));
}

TEST_CASE("dmkrm fixed point from a bracketing root of the kick force") {
    DmkrmParams p;
    auto force = [](double x) { return std::sin(x) + 0.5 * std::sin(2.0 * x + kPi / 2.0); };
    const double x_star = wrap_angle(bisect(force, -1.0, 0.0));
    CHECK(std::sin(x_star) == doctest::Approx((1.0 - std::sqrt(3.0)) / 2.0).epsilon(1e-12));
    for (double gamma : {0.0, 0.3, 0.7, 1.0}) {
        p.gamma = gamma;
        const auto out = dmkrm_step({x_star, 0.0}, p, nullptr);
        CHECK(std::abs(out.p) < 1e-14);
        CHECK(std::abs(angle_difference(out.x, x_star)) < 1e-14);
    }
}

TEST_CASE("dmkrm conserves momentum at gamma = 1 with k = 0 and contracts otherwise") {
    DmkrmParams p;
    p.k = 0.0;
    p.gamma = 1.0;
    PhasePoint s{0.4, 1.7};
    for (int i = 0; i < 100; ++i) s = dmkrm_step(s, p, nullptr);
    CHECK(s.p == 1.7);
    p.gamma = 0.35;
    for (double p0 : {-3.0, 0.2, 2.5}) {
        const auto out = dmkrm_step({1.0, p0}, p, nullptr);
        CHECK(std::abs(out.p) == doctest::Approx(0.35 * std::abs(p0)).epsilon(1e-15));
    }
}

TEST_CASE("dmkrm period-3 cycle at k = 2.6, gamma = 0.7") {
    DmkrmParams p;
    p.k = 2.6;
    p.gamma = 0.7;
    for (std::uint64_t i = 0; i < 5; ++i) {
        const auto orbit = dmkrm_orbit(Ensemble::uniform_member(3, i), p, 4900, 128);
        CHECK(detect_period(orbit) == std::optional<std::size_t>(3));
    }
}

TEST_CASE("dmkrm pure damping ensemble collapses to p = 0") {
    DmkrmParams p;
    p.k = 0.0;
    p.gamma = 0.5;
    const auto e = Ensemble::uniform(9, 1000);
    const auto r = dmkrm_evolve_ensemble(e, p, 5000);
    CHECK(r.diverged.empty());
    CHECK(participation_ratio(r.histogram) == doctest::Approx(1.0 / 729.0));
    for (const auto& pt : r.final_state.points) CHECK(std::abs(pt.p) < 1e-12);
}

TEST_CASE("dmkrm noise raises eta at the period-3 cell") {
    DmkrmParams p;
    const auto e = Ensemble::uniform(1, 2000);
    const double quiet = participation_ratio(dmkrm_evolve_ensemble(e, p, 2000).histogram);
    p.noise = true;
    const double noisy = participation_ratio(dmkrm_evolve_ensemble(e, p, 2000).histogram);
    CHECK(quiet < 10.0 / 729.0);
    CHECK(noisy > 0.05);
}

TEST_CASE("dmkrm seeded determinism and partition independence") {
    DmkrmParams p;
    p.noise = true;
    const auto e = Ensemble::uniform(42, 300);
    const auto a = dmkrm_evolve_ensemble(e, p, 500, 1);
    const auto b = dmkrm_evolve_ensemble(Ensemble::uniform(42, 300), p, 500, 3);
    REQUIRE(a.final_state.points.size() == b.final_state.points.size());
    for (std::size_t i = 0; i < a.final_state.points.size(); ++i) CHECK(a.final_state.points[i] == b.final_state.points[i]);
    GridSpec g{64, 64, -kPi, kPi};
    const auto ca = dmkrm_accumulate(5, 200, p, 300, 50, g, 1);
    const auto cb = dmkrm_accumulate(5, 200, p, 300, 50, g, 4);
    CHECK(std::equal(ca.counts().begin(), ca.counts().end(), cb.counts().begin()));
}

TEST_CASE("ensemble regeneration from a seed is identical") {
    const auto a = Ensemble::uniform(17, 100);
    const auto b = Ensemble::uniform(17, 100);
    CHECK(a.points == b.points);
    for (const auto& pt : a.points) {
        CHECK(pt.x >= 0.0);
        CHECK(pt.x < kTwoPi);
        CHECK(std::abs(pt.p) <= kPi);
    }
    CHECK(a.points[5] == Ensemble::uniform_member(17, 5));
}

TEST_CASE("dmkrm diffusion law with k = 0, gamma = 1") {
    DmkrmParams p;
    p.k = 0.0;
    p.gamma = 1.0;
    p.hbar_eff = 0.02;
    p.noise = true;
    const std::size_t n = 20000;
    const std::uint64_t steps = 50;
    std::vector<double> ps(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto noise = dmkrm_member_noise(p, 3, i);
        PhasePoint s{0.0, 0.0};
        for (std::uint64_t t = 0; t < steps; ++t) s = dmkrm_step(s, p, &noise, t);
        ps[i] = s.p;
    }
    const double expect = p.hbar_eff * static_cast<double>(steps);
    CHECK(std::abs(sample_variance(ps) / expect - 1.0) < 4.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("dmkrm with zero-variance noise matches the noiseless path exactly") {
    DmkrmParams p;
    GaussianNoise zero(make_engine(1, Stream::noise, 0), 0.0);
    PhasePoint a{1.0, 0.3}, b{1.0, 0.3};
    for (int i = 0; i < 1000; ++i) {
        a = dmkrm_step(a, p, nullptr);
        b = dmkrm_step(b, p, &zero);
    }
    CHECK(a == b);
}

TEST_CASE("dmkrm divergence is an error") {
    DmkrmParams p;
    p.gamma = 1.0;
    CHECK_THROWS_AS(dmkrm_step({0.0, 2e6}, p, nullptr, 7), DivergenceError);
    CHECK_THROWS_AS(dmkrm_step({0.0, std::nan("")}, p, nullptr), DivergenceError);
    p.gamma = 1.5;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("dpdds force examples") {
    DpddsParams p;
    p.A = 0.0;
    p.k = 0.0;
    CHECK(dpdds_force(0.0, 0.3, p) == doctest::Approx(0.0));
    CHECK(dpdds_force(kPi / 2.0, 0.3, p) == doctest::Approx(-1.0));
    p.A = 0.5;
    p.phi_a = kPi / 2.0;
    CHECK(dpdds_force(0.0, 1.1, p) == doctest::Approx(-1.0));
}

TEST_CASE("dpdds force is minus the gradient of the potential") {
    DpddsParams p;
    p.k = 2.6;
    const double h = 1e-5;
    for (double x : {-2.0, 0.1, 0.9, 3.0, 5.5})
        for (double t : {0.0, 1.3, 4.0}) {
            const double fd = -(dpdds_potential(x + h, t, p) - dpdds_potential(x - h, t, p)) / (2 * h);
            CHECK(dpdds_force(x, t, p) == doctest::Approx(fd).epsilon(1e-8));
            const double ft = (dpdds_potential(x, t + h, p) - dpdds_potential(x, t - h, p)) / (2 * h);
            CHECK(dpdds_potential_time_derivative(x, t, p) == doctest::Approx(ft).epsilon(1e-8));
        }
}

TEST_CASE("dpdds damped pendulum relaxes to rest") {
    DpddsParams p;
    p.k = 0.0;
    p.A = 0.0;
    p.Gamma = 0.5;
    p.steps_per_period = 200;
    std::uint64_t step = 0;
    auto s = dpdds_advance_periods({0.3, 0.1, 0.0}, p, 30, nullptr, step);
    CHECK(std::abs(s.x) < 1e-8);
    CHECK(std::abs(s.v) < 1e-8);
    CHECK(step == 30 * 200);
    CHECK(s.t == doctest::Approx(30 * kTwoPi).epsilon(1e-15));
}

TEST_CASE("dpdds rk4 stroboscopic error scales as dt^4") {
    DpddsParams p;
    p.k = 2.6;
    p.Gamma = 0.06;
    auto run = [&](std::size_t n) {
        p.steps_per_period = n;
        std::uint64_t step = 0;
        return dpdds_advance_periods({0.7, 0.2, 0.0}, p, 10, nullptr, step);
    };
    const auto a = run(800), b = run(1600), c = run(3200);
    const double e1 = std::hypot(a.x - b.x, a.v - b.v);
    const double e2 = std::hypot(b.x - c.x, b.v - c.v);
    const double ratio = e1 / e2;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("dpdds heun is second order") {
    DpddsParams p;
    p.k = 2.6;
    p.integrator = Integrator::heun;
    auto run = [&](std::size_t n) {
        p.steps_per_period = n;
        std::uint64_t step = 0;
        return dpdds_advance_periods({0.7, 0.2, 0.0}, p, 5, nullptr, step);
    };
    const auto a = run(400), b = run(800), c = run(1600);
    const double ratio = std::hypot(a.x - b.x, a.v - b.v) / std::hypot(b.x - c.x, b.v - c.v);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("stochastic heun diffusion law with zero force and friction") {
    DpddsParams p;
    p.hbar_eff = 0.041;
    p.steps_per_period = 100;
    p.noise = true;
    const std::size_t n = 20000;
    const std::size_t steps = 300;
    std::vector<double> ps(n);
    auto zero = [](double, double, double) { return 0.0; };
    for (std::size_t i = 0; i < n; ++i) {
        auto noise = dpdds_member_noise(p, 8, i);
        DpddsState s{0.0, 0.0, 0.0};
        for (std::size_t j = 0; j < steps; ++j) s = heun_step(s, zero, p.dt(), noise());
        ps[i] = p.mass * s.v;
    }
    const double t = p.dt() * static_cast<double>(steps);
    CHECK(std::abs(sample_variance(ps) / (p.hbar_eff * t) - 1.0) < 4.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("dpdds member noise has the Wiener increment scale") {
    DpddsParams p;
    p.mass = 2.0;
    auto noise = dpdds_member_noise(p, 1, 0);
    CHECK(noise.sigma() == doctest::Approx(std::sqrt(p.hbar_eff * p.dt()) / 2.0));
}

TEST_CASE("dpdds zero-variance noise matches deterministic heun") {
    DpddsParams p;
    p.steps_per_period = 200;
    GaussianNoise zero(make_engine(1, Stream::noise, 0), 0.0);
    DpddsState a{1.0, 0.2, 0.0}, b = a;
    auto q = p;
    q.integrator = Integrator::heun;
    for (int i = 0; i < 500; ++i) {
        a = dpdds_step(a, q, nullptr);
        b = dpdds_step(b, q, &zero);
    }
    CHECK(a.x == b.x);
    CHECK(a.v == b.v);
}

TEST_CASE("dpdds period-1 cycle at k = 2.6, Gamma = 0.06") {
    DpddsParams p;
    const auto orbit = dpdds_orbit(Ensemble::uniform_member(1, 0), p, 1500, 128);
    CHECK(detect_period(orbit) == std::optional<std::size_t>(1));
}

TEST_CASE("dpdds static relaxation puts samples at potential minima") {
    DpddsParams p;
    p.k = 0.0;
    p.Gamma = 0.18;
    p.steps_per_period = 100;
    const auto r = dpdds_stroboscopic_evolve(Ensemble::uniform(2, 60), p, 150, 5);
    const double eta = participation_ratio(r.histogram);
    CHECK(eta <= 2.0 / 729.0 + 1e-12);
    for (const auto& pt : r.samples) {
        CHECK(std::abs(pt.p) < 1e-6);
        CHECK(std::abs(dpdds_force(pt.x, 0.0, p)) < 1e-6);
    }
}

TEST_CASE("dpdds stroboscopic evolution is deterministic across thread counts") {
    DpddsParams p;
    p.noise = true;
    p.steps_per_period = 100;
    const auto e = Ensemble::uniform(4, 12);
    const auto a = dpdds_stroboscopic_evolve(e, p, 20, 5, 1);
    const auto b = dpdds_stroboscopic_evolve(e, p, 20, 5, 3);
    CHECK(a.samples == b.samples);
}
