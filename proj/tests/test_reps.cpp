#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "phasespace/hermite.hpp"
#include "phasespace/reps.hpp"
#include "test_support.hpp"

using namespace phasespace;
using testutil::seeded_rng;
using testutil::std_axis;

namespace {
PhasePoint random_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  return PhasePoint(u(rng), u(rng));
}
}  // namespace

TEST_CASE("schroedinger representation: identity, central phase, unitarity") {
  const AxisGrid ax = std_axis();
  const double hbar = 1.0;
  auto rng = seeded_rng(101);
  ConfigWave psi = random_hermite_combo(ax, hbar, 4, rng);

  SUBCASE("identity element acts as the identity") {
    ConfigWave out = t_sch_apply(heisenberg_identity(1), psi);
    double maxdiff = 0;
    for (std::size_t j = 0; j < psi.size(); ++j)
      maxdiff = std::max(maxdiff, std::abs(out.values[j] - psi.values[j]));
    CHECK(maxdiff < 1e-14);
  }

  SUBCASE("pure action coordinate gives the global phase e^{i t0/hbar}") {
    const double t0 = 0.73;
    GroupElement g(PhasePoint(0.0, 0.0), t0);
    ConfigWave out = t_sch_apply(g, psi);
    const Complex ph = std::polar(1.0, t0 / hbar);
    double maxdiff = 0;
    for (std::size_t j = 0; j < psi.size(); ++j)
      maxdiff = std::max(maxdiff, std::abs(out.values[j] - ph * psi.values[j]));
    CHECK(maxdiff < 1e-12);
  }

  SUBCASE("unitary for random group elements") {
    for (int t = 0; t < 10; ++t) {
      GroupElement g(random_point(rng, 2.0), 0.31 * t);
      ConfigWave out = t_sch_apply(g, psi);
      CHECK(std::abs(norm(out) - norm(psi)) < 1e-12);
    }
  }

  SUBCASE("explicit phase-and-shift form at a lattice-commensurate offset") {
    // g = ((x0, p0), 0) with x0 = one grid step: compare against the direct
    // construction e^{i(p0 x - p0 x0/2)/hbar} psi(x - x0)
    const double x0 = ax.spacing(), p0 = 1.25;
    GroupElement g(PhasePoint(x0, p0), 0.0);
    ConfigWave out = t_sch_apply(g, psi);
    const std::size_t N = ax.n_points;
    double maxdiff = 0;
    for (std::size_t j = 0; j < N; ++j) {
      const double x = ax.point(j);
      const Complex want =
          std::polar(1.0, (p0 * x - 0.5 * p0 * x0) / hbar) * psi.values[(j + N - 1) % N];
      maxdiff = std::max(maxdiff, std::abs(out.values[j] - want));
    }
    CHECK(maxdiff < 1e-12);
  }
}

TEST_CASE("phase-space representation: identity, phase factor, unitarity") {
  const AxisGrid ax = std_axis();
  const double hbar = 1.0;
  auto rng = seeded_rng(103);
  Window phi = gaussian_window({ax}, hbar);
  ConfigWave psi0 = gaussian_state({ax}, hbar);
  PhaseWave Psi = v_phi(psi0, phi);

  SUBCASE("identity element acts as the identity") {
    PhaseWave out = t_ph_apply(heisenberg_identity(1), Psi);
    double maxdiff = 0;
    for (std::size_t j = 0; j < Psi.size(); ++j)
      maxdiff = std::max(maxdiff, std::abs(out.values[j] - Psi.values[j]));
    CHECK(maxdiff < 1e-14);
  }

  SUBCASE("unitary for random group elements") {
    for (int t = 0; t < 10; ++t) {
      GroupElement g(random_point(rng, 2.0), 0.17 * t);
      PhaseWave out = t_ph_apply(g, Psi);
      CHECK(std::abs(norm(out) - norm(Psi)) < 1e-12);
    }
  }

  SUBCASE("phase factor at a lattice-commensurate offset is e^{-i sigma(z,z0)/(2 hbar)}") {
    const double x0 = 2.0 * ax.spacing(), p0 = -3.0 * ax.spacing();
    GroupElement g(PhasePoint(x0, p0), 0.0);
    PhaseWave out = t_ph_apply(g, Psi);
    const std::size_t N = ax.n_points;
    double maxdiff = 0;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t l = 0; l < N; ++l) {
        const double x = ax.point(i), p = ax.point(l);
        const double sig = p * x0 - p0 * x;
        const std::size_t src = ((i + N - 2) % N) * N + (l + 3) % N;
        const Complex want = std::polar(1.0, -sig / (2.0 * hbar)) * Psi.values[src];
        maxdiff = std::max(maxdiff, std::abs(out.values[i * N + l] - want));
      }
    }
    CHECK(maxdiff < 1e-12);
  }
}

TEST_CASE("composition law: the group law absorbs the twist") {
  const AxisGrid ax = std_axis();
  const double hbar = 1.0;
  auto rng = seeded_rng(107);
  Window phi = gaussian_window({ax}, hbar);
  PhaseWave Psi = v_phi(gaussian_state({ax}, hbar), phi);

  SUBCASE("h = identity gives zero residual") {
    GroupElement g(random_point(rng, 2.0), 0.4);
    CHECK(rep_composition_residual(g, heisenberg_identity(1), Psi) < 1e-12);
  }

  SUBCASE("random pairs with |z| <= 2, both representations") {
    ConfigWave psi = random_hermite_combo(ax, hbar, 4, rng);
    for (int t = 0; t < 10; ++t) {
      GroupElement g(random_point(rng, std::sqrt(2.0)), 0.2 * t);
      GroupElement h(random_point(rng, std::sqrt(2.0)), -0.1 * t);
      CHECK(rep_composition_residual(g, h, Psi) < 1e-9);
      CHECK(rep_composition_residual_sch(g, h, psi) < 1e-9);
    }
  }

  SUBCASE("g composed with its inverse is the identity") {
    GroupElement g(random_point(rng, 2.0), 0.9);
    PhaseWave out = t_ph_apply(g, t_ph_apply(heisenberg_inverse(g), Psi));
    CHECK(norm(difference(out, Psi)) / norm(Psi) < 1e-9);
  }

  SUBCASE("z-only operators compose with the multiplier e^{i sigma(z0,z1)/(2 hbar)}") {
    GroupElement g(random_point(rng, std::sqrt(2.0)), 0.0);
    GroupElement h(random_point(rng, std::sqrt(2.0)), 0.0);
    PhaseWave lhs = t_ph_apply(g, t_ph_apply(h, Psi));
    GroupElement sum(g.z + h.z, 0.0);
    PhaseWave rhs = scaled(t_ph_apply(sum, Psi),
                           std::polar(1.0, symplectic_form(g.z, h.z) / (2.0 * hbar)));
    CHECK(norm(difference(lhs, rhs)) / norm(Psi) < 1e-9);
  }
}

TEST_CASE("intertwining: T_ph(z0) V_phi = V_phi T_sch(z0)") {
  const AxisGrid ax = std_axis();
  const double hbar = 1.0;
  auto rng = seeded_rng(109);
  Window phi = gaussian_window({ax}, hbar);

  SUBCASE("zero offset gives zero residual") {
    ConfigWave psi = random_hermite_combo(ax, hbar, 4, rng);
    CHECK(intertwine_residual(PhasePoint(0.0, 0.0), psi, phi) < 1e-12);
  }

  SUBCASE("fixed probe point") {
    ConfigWave phi0 = gaussian_state({ax}, hbar);
    CHECK(intertwine_residual(PhasePoint(1.0, 1.0), phi0, phi) < 1e-8);
  }

  SUBCASE("20 random offsets with |z0| <= 2 on random states") {
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
      ConfigWave psi = random_hermite_combo(ax, hbar, 4, rng);
      PhasePoint z0 = random_point(rng, std::sqrt(2.0));
      worst = std::max(worst, intertwine_residual(z0, psi, phi));
    }
    CHECK(worst < 1e-7);
  }
}
