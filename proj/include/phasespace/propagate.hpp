#pragma once

// Time propagation of the two Schroedinger equations
//
//   configuration space: i hbar d psi/dt = H(x, -i hbar d_x) psi
//   phase space:         i hbar d Psi/dt = H(x/2 + i hbar d_p,
//                                            p/2 - i hbar d_x) Psi
//
// for polynomial Hamiltonians, with the generator built by poly_to_operator.
// The integrator is fixed-step classical Runge-Kutta 4; the step count is
// round(t_final/dt) with the step adjusted to land on t_final exactly. The
// norm is monitored every step and drift beyond 1e-6 aborts the run. For
// separable H = K(p) + V(x) a Strang split-step path is provided and must
// agree with RK4.
//
// The translation Hamiltonian H_{z0} = sigma(z, z0) = x0.p - p0.x generates
// the exact flow
//   Psi(t)(z) = e^{-i sigma(z,z0) t/(2 hbar)} Psi0(z - t z0),
// which serves as the convergence oracle for the integrator.

#include <cmath>
#include <utility>
#include <vector>

#include "phasespace/core.hpp"
#include "phasespace/fft.hpp"
#include "phasespace/operator_poly.hpp"
#include "phasespace/poly.hpp"

namespace phasespace {

// (phi, phi') of the straight-line translation: phi(z,t) = p0.x t - t^2/2 p0.x0
// from the action form p dx - H dt, and phi'(z,t) = -sigma(z,z0) t / 2 from
// its symmetrized variant (p dx - x dp)/2 - H dt.
inline std::pair<double, double> action_phases(const PhasePoint& z, const PhasePoint& z0,
                                               double t) {
  require(z.dim() == z0.dim(), "action_phases: dimension mismatch");
  double p0x = 0, p0x0 = 0;
  for (std::size_t j = 0; j < z.dim(); ++j) {
    p0x += z0.p[j] * z.x[j];
    p0x0 += z0.p[j] * z0.x[j];
  }
  const double phi = p0x * t - 0.5 * t * t * p0x0;
  const double phi_prime = -0.5 * symplectic_form(z, z0) * t;
  return {phi, phi_prime};
}

// H_{z0} = sigma(z, z0) = x0.p - p0.x as a degree-1 polynomial symbol.
inline PolySymbol translation_hamiltonian(const PhasePoint& z0, double hbar) {
  const std::size_t n = z0.dim();
  PolySymbol h(n, hbar);
  for (std::size_t j = 0; j < n; ++j) {
    PolySymbol::Key kx(2 * n, 0), kp(2 * n, 0);
    kx[j] = 1;
    kp[n + j] = 1;
    h.add_term(kp, Complex{z0.x[j], 0.0});
    h.add_term(kx, Complex{-z0.p[j], 0.0});
  }
  return h;
}

// Exact flow of H_{z0}; errors out if the translated tails wrap around the
// periodic boundary above 1e-12 of the peak.
inline PhaseWave translation_flow_exact(const PhasePoint& z0, double t, const PhaseWave& Psi0) {
  const std::size_t n = Psi0.dim_n();
  require(z0.dim() == n, "translation_flow_exact: dimension mismatch");
  std::vector<double> offset(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    offset[j] = t * z0.x[j];
    offset[n + j] = t * z0.p[j];
  }

  // aliasing guard: inspect the boundary band that the shift wraps
  double peak = 0;
  for (const auto& v : Psi0.values) peak = std::max(peak, std::abs(v));
  if (peak > 0) {
    const auto shape = grid_shape(Psi0.grid);
    double band_max = 0;
    for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
      for (std::size_t a = 0; a < 2 * n; ++a) {
        const std::size_t width =
            static_cast<std::size_t>(std::ceil(std::abs(offset[a]) / Psi0.grid[a].spacing())) + 1;
        if (idx[a] < width || idx[a] + width >= shape[a])
          band_max = std::max(band_max, std::abs(Psi0.values[flat]));
      }
    });
    if (band_max > 1e-12 * peak)
      throw std::runtime_error(
          "translation_flow_exact: shifted tails wrap the periodic boundary above 1e-12");
  }

  PhaseWave out = fourier_shift(Psi0, offset);
  const auto shape = grid_shape(out.grid);
  const double hbar = Psi0.hbar;
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    long double s = 0;
    for (std::size_t j = 0; j < n; ++j)
      s += static_cast<long double>(out.grid[n + j].point(idx[n + j])) * z0.x[j] -
           static_cast<long double>(z0.p[j]) * out.grid[j].point(idx[j]);
    out.values[flat] *= cis(-s * t / (2.0L * hbar));
  });
  return out;
}

template <class Wave>
struct EvolutionResult {
  Wave final_state;
  std::vector<double> times;   // strictly increasing, starting at 0
  std::vector<double> norms;   // discrete L^2 norm at each time
  std::vector<std::pair<double, Wave>> snapshots;
};

namespace detail {

template <class Wave>
EvolutionResult<Wave> rk4_evolve(const GridOperator& gen, const Wave& w0, double t_final,
                                 double dt, double snapshot_interval) {
  require(dt > 0 && t_final > 0, "evolve: dt and t_final must be positive");
  const std::size_t steps = static_cast<std::size_t>(std::llround(t_final / dt));
  require(steps >= 1, "evolve: t_final shorter than one step");
  const double h = t_final / static_cast<double>(steps);
  const double hbar = w0.hbar;

  EvolutionResult<Wave> result;
  result.times.push_back(0.0);
  const double norm0 = norm(w0);
  result.norms.push_back(norm0);

  Wave w = w0;
  const Complex minus_i_over_hbar{0.0, -1.0 / hbar};
  double next_snap = snapshot_interval;
  for (std::size_t s = 0; s < steps; ++s) {
    Wave k1 = gen.apply(w);
    for (auto& v : k1.values) v *= minus_i_over_hbar;
    Wave y = axpy(Complex{0.5 * h, 0.0}, k1, w);
    Wave k2 = gen.apply(y);
    for (auto& v : k2.values) v *= minus_i_over_hbar;
    y = axpy(Complex{0.5 * h, 0.0}, k2, w);
    Wave k3 = gen.apply(y);
    for (auto& v : k3.values) v *= minus_i_over_hbar;
    y = axpy(Complex{h, 0.0}, k3, w);
    Wave k4 = gen.apply(y);
    for (auto& v : k4.values) v *= minus_i_over_hbar;
    for (std::size_t i = 0; i < w.values.size(); ++i)
      w.values[i] += h / 6.0 * (k1.values[i] + 2.0 * k2.values[i] + 2.0 * k3.values[i] +
                                k4.values[i]);

    const double t = static_cast<double>(s + 1) * h;
    const double nw = norm(w);
    result.times.push_back(t);
    result.norms.push_back(nw);
    if (norm0 > 0 && std::abs(nw - norm0) / norm0 > 1e-6)
      throw std::runtime_error("evolve: norm drift exceeded 1e-6 (step too large)");
    if (snapshot_interval > 0 && (t >= next_snap - 0.5 * h || s + 1 == steps)) {
      if (t >= next_snap - 0.5 * h) next_snap += snapshot_interval;
      result.snapshots.push_back({t, w});
    }
  }
  result.final_state = std::move(w);
  return result;
}

}  // namespace detail

// i hbar d psi/dt = H(x, -i hbar d_x) psi by RK4.
inline EvolutionResult<ConfigWave> evolve_config(const PolySymbol& H, const ConfigWave& psi0,
                                                 double t_final, double dt,
                                                 double snapshot_interval = 0.1) {
  require(H.dim_n() == psi0.dim_n(), "evolve_config: dimension mismatch");
  require(H.hbar() == psi0.hbar, "evolve_config: hbar mismatch");
  const GridOperator gen = poly_to_operator(H, RepLabel::Schroedinger);
  return detail::rk4_evolve(gen, psi0, t_final, dt, snapshot_interval);
}

// i hbar d Psi/dt = H(x/2 + i hbar d_p, p/2 - i hbar d_x) Psi by RK4.
inline EvolutionResult<PhaseWave> evolve_phase(const PolySymbol& H, const PhaseWave& Psi0,
                                               double t_final, double dt,
                                               double snapshot_interval = 0.1) {
  require(H.dim_n() == Psi0.dim_n(), "evolve_phase: dimension mismatch");
  require(H.hbar() == Psi0.hbar, "evolve_phase: hbar mismatch");
  const GridOperator gen = poly_to_operator(H, RepLabel::PhaseSpace);
  return detail::rk4_evolve(gen, Psi0, t_final, dt, snapshot_interval);
}

// Strang split-step path for separable H = K(p) + V(x); must agree with the
// RK4 path. Throws if H has mixed x-p terms.
inline EvolutionResult<ConfigWave> evolve_config_splitstep(const PolySymbol& H,
                                                           const ConfigWave& psi0, double t_final,
                                                           double dt,
                                                           double snapshot_interval = 0.1) {
  const std::size_t n = psi0.dim_n();
  require(H.dim_n() == n, "evolve_config_splitstep: dimension mismatch");
  require(H.hbar() == psi0.hbar, "evolve_config_splitstep: hbar mismatch");
  const double hbar = psi0.hbar;

  PolySymbol V(n, hbar), K(n, hbar);
  for (const auto& [key, c] : H.terms()) {
    bool has_x = false, has_p = false;
    for (std::size_t j = 0; j < n; ++j) {
      has_x = has_x || key[j] > 0;
      has_p = has_p || key[n + j] > 0;
    }
    require(!(has_x && has_p),
            "evolve_config_splitstep: separable Hamiltonian K(p) + V(x) required");
    if (has_p)
      K.add_term(key, c);
    else
      V.add_term(key, c);
  }

  require(dt > 0 && t_final > 0, "evolve: dt and t_final must be positive");
  const std::size_t steps = static_cast<std::size_t>(std::llround(t_final / dt));
  require(steps >= 1, "evolve: t_final shorter than one step");
  const double h = t_final / static_cast<double>(steps);

  const auto shape = grid_shape(psi0.grid);
  // e^{-i V(x) h/(2 hbar)} on the grid, e^{-i K(hbar k) h/hbar} on the
  // frequency lattice
  std::vector<Complex> halfkick(psi0.size()), drift(psi0.size());
  std::vector<double> x(n), p(n), zero(n, 0.0);
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    for (std::size_t j = 0; j < n; ++j) x[j] = psi0.grid[j].point(idx[j]);
    halfkick[flat] = cis(static_cast<long double>(-V.eval(x, zero).real() * h / (2.0 * hbar)));
    for (std::size_t j = 0; j < n; ++j) p[j] = hbar * axis_freq(psi0.grid[j], idx[j]);
    drift[flat] = cis(static_cast<long double>(-K.eval(zero, p).real() * h / hbar));
  });

  EvolutionResult<ConfigWave> result;
  result.times.push_back(0.0);
  const double norm0 = norm(psi0);
  result.norms.push_back(norm0);
  ConfigWave w = psi0;
  double next_snap = snapshot_interval;
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] *= halfkick[i];
    fftn(w.values, shape, -1);
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] *= drift[i];
    fftn(w.values, shape, +1);
    for (std::size_t i = 0; i < w.values.size(); ++i) w.values[i] *= halfkick[i];

    const double t = static_cast<double>(s + 1) * h;
    const double nw = norm(w);
    result.times.push_back(t);
    result.norms.push_back(nw);
    if (norm0 > 0 && std::abs(nw - norm0) / norm0 > 1e-6)
      throw std::runtime_error("evolve: norm drift exceeded 1e-6 (step too large)");
    if (snapshot_interval > 0 && (t >= next_snap - 0.5 * h || s + 1 == steps)) {
      if (t >= next_snap - 0.5 * h) next_snap += snapshot_interval;
      result.snapshots.push_back({t, w});
    }
  }
  result.final_state = std::move(w);
  return result;
}

}  // namespace phasespace
