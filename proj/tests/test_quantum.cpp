#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "attractoscope/classical/dmkrm.hpp"
#include "attractoscope/diagnostics.hpp"
#include "attractoscope/errors.hpp"
#include "attractoscope/quantum/basis.hpp"
#include "attractoscope/quantum/dissipator.hpp"
#include "attractoscope/quantum/evolution.hpp"
#include "attractoscope/quantum/fourier.hpp"
#include "attractoscope/quantum/husimi.hpp"
#include "attractoscope/quantum/operators.hpp"
#include "attractoscope/quantum/state.hpp"
#include "attractoscope/quantum/state_io.hpp"
#include "attractoscope/quantum/trajectory.hpp"

using namespace attractoscope;
using namespace attractoscope::quantum;

namespace {

// Random full-rank density matrix A A† / tr.
DensityMatrix random_state(const MomentumBasis& basis, unsigned seed) {
    std::mt19937_64 eng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    const auto N = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd a(N, N);
    for (Eigen::Index i = 0; i < N; ++i)
        for (Eigen::Index j = 0; j < N; ++j) a(i, j) = cplx(n(eng), n(eng));
    Eigen::MatrixXcd rho = a * a.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(basis, rho);
}

double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a - b).cwiseAbs().maxCoeff(); }

// ⟨p²/2m⟩ + ⟨1 - cos x⟩ for the pendulum.
double pendulum_energy(const DensityMatrix& s, double mass) {
    const auto pops = s.populations();
    double kin = 0.0;
    for (std::size_t i = 0; i < pops.size(); ++i) kin += pops[i] * s.basis().momentum(i) * s.basis().momentum(i);
    return kin / (2.0 * mass) + 1.0 - s.mean_exp_ix().real();
}

}  // namespace

TEST_CASE("basis construction and coverage rule") {
    MomentumBasis b(415, 0.019);
    CHECK(b.half() == 207);
    CHECK(b.momentum(b.index(0)) == 0.0);
    CHECK(b.momentum(b.index(3)) == doctest::Approx(3 * 0.019));
    CHECK_THROWS_AS(MomentumBasis(414, 0.019), ConfigError);
    CHECK_THROWS_AS(MomentumBasis(301, 0.019), ConfigError);
    CHECK_THROWS_AS(MomentumBasis(101, -0.1), ConfigError);
    const auto c = MomentumBasis::covering(0.0, 0.019);
    CHECK(c.size() % 2 == 1);
    CHECK(static_cast<double>(c.size()) >= 1.25 * kTwoPi / 0.019);
    const auto wide = MomentumBasis::covering(9.0, 0.019);
    CHECK(wide.p_max() >= 9.0);
}

TEST_CASE("fourier transform is unitary and diagonalizes position") {
    MomentumBasis b(45, 0.2);
    FourierTransform f(b);
    const auto s = random_state(b, 1);
    Eigen::MatrixXcd rho = s.rho();
    f.to_position(rho);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
    f.to_momentum(rho);
    CHECK(max_abs_diff(rho, s.rho()) < 1e-12);

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(45);
    psi(b.index(2)) = 1.0;
    f.to_position(psi);
    for (Eigen::Index j = 0; j < 45; ++j) CHECK(std::abs(std::abs(psi(j)) - 1.0 / std::sqrt(45.0)) < 1e-13);
}

TEST_CASE("kick unitary: k = 0 is identity and k, -k cancel") {
    MomentumBasis b(135, 0.1);
    classical::DmkrmParams p;
    p.hbar_eff = 0.1;
    p.k = 0.0;
    for (const auto& u : build_kick_unitary(p, b).phases) CHECK(std::abs(u - cplx(1.0, 0.0)) < 1e-15);
    p.k = 2.6;
    const auto plus = build_kick_unitary(p, b);
    p.k = -2.6;
    const auto minus = build_kick_unitary(p, b);
    for (std::size_t j = 0; j < b.size(); ++j) CHECK(std::abs(plus.phases[j] * minus.phases[j] - 1.0) < 1e-12);
}

TEST_CASE("kick moves a coherent packet by the classical kick") {
    MomentumBasis b(1125, 0.019);
    classical::DmkrmParams p;
    p.hbar_eff = 0.019;
    const double x0 = 1.1;
    auto s = DensityMatrix::coherent(b, x0, 0.0);
    FourierTransform f(b);
    f.to_position(s.rho());
    conjugate_diagonal(s.rho(), build_kick_unitary(p, b).phases);
    f.to_momentum(s.rho());
    const double expected = classical::dmkrm_kick(x0, p);
    CHECK(s.mean_momentum() == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("free unitary is a pure phase on momentum eigenstates") {
    MomentumBasis b(45, 0.2);
    const auto u = build_free_unitary(b);
    auto s = DensityMatrix::level(b, 4);
    const auto before = s.populations();
    conjugate_diagonal(s.rho(), u.phases);
    const auto after = s.populations();
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-14));
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(std::abs(u.phases[i]) - 1.0) < 1e-15);
    const double n = 4.0;
    CHECK(std::arg(u.phases[b.index(4)]) == doctest::Approx(std::remainder(-0.2 * n * n / 2.0, kTwoPi)));
}

TEST_CASE("free unitary tends to identity as tau -> 0") {
    MomentumBasis b(9001, 1e-3);
    const auto u = build_free_unitary(b);
    CHECK(std::abs(u.phases[b.index(1)] - 1.0) < 1e-3);
    CHECK(std::abs(u.phases[b.index(-2)] - 1.0) < 3e-3);
}

TEST_CASE("dissipator: ground state is dark and rate 0 is identity") {
    MomentumBasis b(45, 0.2);
    DissipatorSpec spec{LadderKind::dmkrm, 0.3, 1e-3};
    auto g = DensityMatrix::level(b, 0);
    dissipative_substep(g, spec);
    CHECK(max_abs_diff(g.rho(), DensityMatrix::level(b, 0).rho()) < 1e-15);
    const auto s = random_state(b, 2);
    auto t = s;
    dissipative_substep(t, DissipatorSpec{LadderKind::dpdds, 0.0, 1e-3});
    CHECK(max_abs_diff(t.rho(), s.rho()) < 1e-15);
}

TEST_CASE("dissipator: substep bound is enforced") {
    MomentumBasis b(45, 0.2);
    DissipatorSpec spec{LadderKind::dmkrm, 1.0, 1.0};
    auto s = DensityMatrix::level(b, 3);
    try {
        dissipative_substep(s, spec);
        FAIL("expected an error");
    } catch (const ComputeError& e) {
        CHECK(std::string(e.what()).find("substep too coarse") != std::string::npos);
    }
    const auto ok = make_dissipator(LadderKind::dmkrm, 1.0, 1.0, b);
    CHECK(ok.rate * static_cast<double>(b.half()) * ok.dt_sub <= kKrausValidityBound + 1e-15);
}

TEST_CASE("dissipator: populations flow to n = 0 from both signs") {
    MomentumBasis b(45, 0.2);
    const auto spec = make_dissipator(LadderKind::dmkrm, 0.5, 1.0, b);
    for (long n0 : {-6L, 6L}) {
        auto s = DensityMatrix::level(b, n0);
        dissipate(s, spec, substeps_for(0.5, 1.0, b));
        const auto pops = s.populations();
        double beyond = 0.0;
        for (std::size_t i = 0; i < pops.size(); ++i)
            if (std::abs(b.level(i)) > 6 || b.level(i) * n0 < 0) beyond += pops[i];
        CHECK(beyond < 1e-15);
        CHECK(std::abs(s.mean_level()) < 6.0);
        CHECK(s.hermiticity_error() == 0.0);
    }
}

TEST_CASE("line-wise dissipate equals repeated reference substeps") {
    MomentumBasis b(31, 0.25);
    for (auto kind : {LadderKind::dmkrm, LadderKind::dpdds}) {
        const auto spec = make_dissipator(kind, 0.4, 1.0, b);
        const auto count = substeps_for(0.4, 1.0, b);
        auto fast = random_state(b, 3);
        auto ref = fast;
        dissipate(fast, spec, count);
        for (std::size_t i = 0; i < count; ++i) dissipative_substep(ref, spec);
        CHECK(max_abs_diff(fast.rho(), ref.rho()) < 1e-12);
    }
}

TEST_CASE("Ehrenfest decay of the mean level over unit time") {
    MomentumBasis b(81, 0.1);
    for (double gamma : {0.7, 0.3}) {
        const double rate = -std::log(gamma);
        const auto spec = make_dissipator(LadderKind::dmkrm, rate, 1.0, b);
        for (long n0 : {10L, -10L}) {
            auto s = DensityMatrix::level(b, n0);
            dissipate(s, spec, substeps_for(rate, 1.0, b));
            CHECK(s.mean_level() == doctest::Approx(gamma * static_cast<double>(n0)).epsilon(0.01));
        }
    }
}

TEST_CASE("Kraus set completeness within the quadratic bound") {
    MomentumBasis b(61, 0.15);
    for (auto kind : {LadderKind::dmkrm, LadderKind::dpdds}) {
        const auto spec = make_dissipator(kind, 0.36, 1.0, b);
        const auto ops = kraus_operators(b, spec);
        REQUIRE(ops.size() == 3);
        const double nmax = static_cast<double>(b.half());
        const double bound = 10.0 * spec.rate * spec.rate * nmax * nmax * spec.dt_sub * spec.dt_sub;
        CHECK(kraus_completeness_residual(ops) < bound);
        // First-order agreement of C0 with 1 - ½ Σ C†C.
        Eigen::MatrixXd first = Eigen::MatrixXd::Identity(61, 61);
        first -= 0.5 * (ops[1].transpose() * ops[1] + ops[2].transpose() * ops[2]);
        CHECK((ops[0] - first).cwiseAbs().maxCoeff() < bound);
    }
}

TEST_CASE("kicked period keeps trace, positivity and purity") {
    const double hbar = 0.1;
    auto b = MomentumBasis::covering(6.0, hbar);
    classical::DmkrmParams p;
    p.hbar_eff = hbar;
    DmkrmPropagator prop(p, b);
    auto s = DensityMatrix::uniform_mixture(b, kPi);
    for (int i = 0; i < 20; ++i) {
        const auto log = prop.period(s);
        CHECK(std::abs(s.trace() - 1.0) < 1e-9);
        CHECK(log.purity <= 1.0 + 1e-9);
        CHECK(s.hermiticity_error() < 1e-12);
        if (i % 5 == 4) CHECK(s.min_eigenvalue() >= -1e-8);
    }
}

TEST_CASE("gamma = 1, k = 0 leaves populations invariant") {
    MomentumBasis b(81, 0.1);
    classical::DmkrmParams p;
    p.hbar_eff = 0.1;
    p.gamma = 1.0;
    p.k = 0.0;
    auto s = random_state(b, 4);
    const auto before = s.populations();
    s = dmkrm_quantum_period(s, p);
    const auto after = s.populations();
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-10));
}

TEST_CASE("quantum kicked map rejects gamma = 0 and mismatched hbar") {
    MomentumBasis b(81, 0.1);
    classical::DmkrmParams p;
    p.hbar_eff = 0.1;
    p.gamma = 0.0;
    CHECK_THROWS_AS(DmkrmPropagator(p, b), ConfigError);
    p.gamma = 0.7;
    p.hbar_eff = 0.2;
    CHECK_THROWS_AS(DmkrmPropagator(p, b), ConfigError);
}

TEST_CASE("truncation guard raises on edge population") {
    MomentumBasis b(81, 0.1);
    auto s = DensityMatrix::level(b, 40);
    CHECK_THROWS_AS(s.check_truncation(), ComputeError);
    DensityMatrix::level(b, 0).check_truncation();
}

TEST_CASE("Ehrenfest correspondence of a packet on the period-2 cycle") {
    const double hbar = 0.027;
    classical::DmkrmParams p;
    p.k = 7.2;
    p.gamma = 0.3;
    p.hbar_eff = hbar;
    const auto orbit = classical::dmkrm_orbit(Ensemble::uniform_member(3, 0), p, 2000, 6);
    auto b = MomentumBasis::covering(9.0, hbar);
    DmkrmPropagator prop(p, b);
    auto s = DensityMatrix::coherent(b, orbit[0].x, orbit[0].p);
    const double tol = 2.0 * std::sqrt(hbar);
    for (std::size_t t = 1; t <= 5; ++t) {
        prop.period(s);
        CHECK(std::abs(s.mean_momentum() - orbit[t].p) < tol);
        CHECK(std::abs(angle_difference(s.mean_position(), orbit[t].x)) < tol);
    }
}

TEST_CASE("driven pendulum energy is conserved to second order in dt") {
    const double hbar = 0.1;
    auto b = MomentumBasis::covering(5.0, hbar);
    classical::DpddsParams p;
    p.hbar_eff = hbar;
    p.Gamma = 0.0;
    p.k = 0.0;
    p.A = 0.0;
    const auto start = DensityMatrix::coherent(b, 1.2, 0.5);
    const double e0 = pendulum_energy(start, p.mass);
    auto drift = [&](std::size_t n) {
        p.steps_per_period = n;
        DpddsPropagator prop(p, b);
        auto s = start;
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            prop.step(s, p.dt() * static_cast<double>(i));
            worst = std::max(worst, std::abs(pendulum_energy(s, p.mass) - e0));
        }
        return worst;
    };
    const double e1 = drift(50), e2 = drift(100);
    CHECK(e1 / e2 > 3.4);
    CHECK(e1 / e2 < 4.6);
}

TEST_CASE("fused driven period equals individual steps") {
    const double hbar = 0.2;
    MomentumBasis b(63, hbar);
    classical::DpddsParams p;
    p.hbar_eff = hbar;
    p.steps_per_period = 40;
    DpddsPropagator prop(p, b);
    auto a = DensityMatrix::coherent(b, 1.0, 0.3);
    auto c = a;
    prop.period(a, 0.0);
    for (std::size_t i = 0; i < 40; ++i) prop.step(c, p.dt() * static_cast<double>(i));
    c.renormalize();
    CHECK(max_abs_diff(a.rho(), c.rho()) < 1e-10);
}

TEST_CASE("driven ladder mean momentum follows friction") {
    const double hbar = 0.1;
    MomentumBasis b(101, hbar);
    const double Gamma = 0.18;
    const auto spec = make_dissipator(LadderKind::dpdds, Gamma, 1.0, b);
    auto s = DensityMatrix::level(b, 20);
    dissipate(s, spec, substeps_for(Gamma, 1.0, b));
    CHECK(s.mean_momentum() == doctest::Approx(20 * hbar * std::exp(-Gamma)).epsilon(0.01));
}

TEST_CASE("husimi of a coherent state peaks at its centre") {
    const double hbar = 0.05;
    auto b = MomentumBasis::covering(0.0, hbar);
    const auto s = DensityMatrix::coherent(b, 2.0, 0.6);
    GridSpec g{90, 90, -kPi, kPi};
    const auto h = husimi(s, g, MomentumFold::window);
    std::size_t best = 0;
    for (std::size_t i = 1; i < h.weights().size(); ++i)
        if (h.weights()[i] > h.weights()[best]) best = i;
    CHECK(std::abs(g.x_center(best % g.nx) - 2.0) <= g.cell_width_x());
    CHECK(std::abs(g.p_center(best / g.nx) - 0.6) <= g.cell_width_p());
    double total = 0.0;
    for (double w : h.weights()) {
        CHECK(w >= 0.0);
        total += w;
    }
    CHECK(total * g.cell_area() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(husimi_value(s, 2.0, 0.6) > husimi_value(s, 2.5, 0.6));
}

TEST_CASE("husimi of a momentum eigenstate is an x-uniform ridge") {
    const double hbar = 0.05;
    auto b = MomentumBasis::covering(0.0, hbar);
    const auto s = DensityMatrix::level(b, 12);
    GridSpec g{60, 120, -kPi, kPi};
    const auto h = husimi(s, g, MomentumFold::window);
    const std::size_t ridge = *g.cell_of({0.0, 12 * hbar}) / g.nx;
    for (std::size_t ip = 0; ip < g.np; ++ip) {
        const double row0 = h.at(0, ip);
        for (std::size_t ix = 1; ix < g.nx; ++ix) CHECK(std::abs(h.at(ix, ip) - row0) <= 1e-10 * h.max_weight());
        CHECK(row0 <= h.at(0, ridge));
    }
}

TEST_CASE("husimi of the maximally mixed state is flat") {
    const double hbar = 0.05;
    auto b = MomentumBasis::covering(0.0, hbar);
    const auto n = static_cast<Eigen::Index>(b.size());
    DensityMatrix s(b, Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n));
    GridSpec g{40, 40, -kPi, kPi};
    const auto h = husimi(s, g, MomentumFold::window);
    double lo = h.weights()[0], hi = lo;
    for (double w : h.weights()) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    CHECK((hi - lo) / hi < 1e-3);
}

TEST_CASE("momentum distribution of ground state and full mixture") {
    // A level spreads over ħ, so the delta case needs ħ below the bin width.
    const double hbar = 0.008;
    auto b = MomentumBasis::covering(0.0, hbar);
    const auto g = momentum_distribution(DensityMatrix::level(b, 0), 729, MomentumFold::window);
    CHECK(participation_ratio(g.histogram) == doctest::Approx(1.0 / 729.0).epsilon(1e-12));
    std::vector<double> mixture(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (std::abs(b.momentum(i)) <= kPi) mixture[i] = 1.0;
    const auto u = rebin_populations(b, mixture, 729, MomentumFold::window);
    CHECK(participation_ratio(u.histogram) > 0.99);
    CHECK_FALSE(u.escaping);
    CHECK(u.window_population > 0.99);
}

TEST_CASE("population leaving the window is flagged") {
    MomentumBasis b(1001, 0.019);
    std::vector<double> pops(b.size(), 0.0);
    pops[b.index(0)] = 0.5;
    pops[b.index(400)] = 0.5;
    const auto w = rebin_populations(b, pops, 729, MomentumFold::window);
    CHECK(w.escaping);
    CHECK(w.window_population == doctest::Approx(0.5));
    const auto f = rebin_populations(b, pops, 729, MomentumFold::fold);
    CHECK_FALSE(f.escaping);
    CHECK(f.window_population == doctest::Approx(1.0));
}

TEST_CASE("state dump round trip") {
    MomentumBasis b(21, 0.4);
    const auto s = random_state(b, 5);
    std::stringstream ss;
    write_state(ss, s);
    const auto back = read_state(ss);
    CHECK(back.basis() == b);
    CHECK(max_abs_diff(back.rho(), s.rho()) == 0.0);
}

TEST_CASE("trajectory and density-matrix engines agree on a 15-level system") {
    const double hbar = 0.6;
    MomentumBasis b(15, hbar);
    classical::DmkrmParams p;
    p.hbar_eff = hbar;
    p.k = 0.6;
    p.gamma = 0.7;
    DmkrmPropagator prop(p, b);
    auto rho = DensityMatrix::uniform_mixture(b, kPi);
    for (int i = 0; i < 10; ++i) prop.period(rho);
    TrajectoryBundle bundle(b, 4000, 77, kPi);
    bundle.evolve_dmkrm(p, 10);
    const auto exact = rho.populations();
    const auto mc = bundle.populations();
    const auto err = bundle.population_standard_errors();
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(mc[i] - exact[i]) <= 3.0 * err[i] + 1e-12);
}

TEST_CASE("trajectory bundle is independent of thread count") {
    MomentumBasis b(15, 0.6);
    classical::DmkrmParams p;
    p.hbar_eff = 0.6;
    p.k = 0.6;
    TrajectoryBundle a(b, 50, 3, kPi), c(b, 50, 3, kPi);
    a.evolve_dmkrm(p, 5, 1);
    c.evolve_dmkrm(p, 5, 3);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a.state(i) - c.state(i)).norm() == 0.0);
}
