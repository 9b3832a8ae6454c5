#pragma once

// The Schroedinger and phase-space representations of the Heisenberg group.
//
//   T_sch(z0, t0) psi(x) = e^{i t0/hbar} e^{i(p0.x - p0.x0/2)/hbar} psi(x - x0)
//   T_ph(z0, t0) Psi(z)  = e^{i t0/hbar} e^{-i sigma(z, z0)/(2 hbar)} Psi(z - z0)
//
// Both are unitary and satisfy T(g) T(h) = T(g h) with the Heisenberg group
// law; the operators at t0 = 0 compose with the multiplier e^{i sigma(z0,z1)/(2 hbar)}:
// T(z0) T(z1) = e^{i sigma(z0,z1)/(2 hbar)} T(z0 + z1). Translations by
// off-lattice offsets go through the band-limited Fourier shift.

#include <cmath>
#include <vector>

#include "phasespace/core.hpp"
#include "phasespace/fft.hpp"
#include "phasespace/wavepacket.hpp"

namespace phasespace {

inline ConfigWave t_sch_apply(const GroupElement& g, const ConfigWave& psi) {
  require(g.z.dim() == psi.dim_n(), "t_sch_apply: dimension mismatch");
  ConfigWave out = fourier_shift(psi, g.z.x);
  const auto shape = grid_shape(out.grid);
  const double hbar = psi.hbar;
  double px0 = 0;
  for (std::size_t a = 0; a < g.z.dim(); ++a) px0 += g.z.p[a] * g.z.x[a];
  const Complex global = cis(static_cast<long double>((g.t - 0.5 * px0) / hbar));
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    long double ph = 0;
    for (std::size_t a = 0; a < g.z.dim(); ++a)
      ph += static_cast<long double>(g.z.p[a]) * out.grid[a].point(idx[a]);
    out.values[flat] *= global * cis(ph / hbar);
  });
  return out;
}

inline PhaseWave t_ph_apply(const GroupElement& g, const PhaseWave& Psi) {
  const std::size_t n = Psi.dim_n();
  require(g.z.dim() == n, "t_ph_apply: dimension mismatch");
  std::vector<double> offset(2 * n);
  for (std::size_t a = 0; a < n; ++a) {
    offset[a] = g.z.x[a];
    offset[n + a] = g.z.p[a];
  }
  PhaseWave out = fourier_shift(Psi, offset);
  const auto shape = grid_shape(out.grid);
  const double hbar = Psi.hbar;
  const Complex global = cis(static_cast<long double>(g.t / hbar));
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    // sigma(z, z0) = p.x0 - p0.x
    long double s = 0;
    for (std::size_t a = 0; a < n; ++a)
      s += static_cast<long double>(out.grid[n + a].point(idx[n + a])) * g.z.x[a] -
           static_cast<long double>(g.z.p[a]) * out.grid[a].point(idx[a]);
    out.values[flat] *= global * cis(-s / (2.0L * hbar));
  });
  return out;
}

// || T_ph(g) T_ph(h) Psi - T_ph(g h) Psi || / ||Psi||; the group law absorbs
// the composition multiplier, so the residual vanishes in the continuum.
inline double rep_composition_residual(const GroupElement& g, const GroupElement& h,
                                       const PhaseWave& Psi) {
  const double nP = norm(Psi);
  if (nP == 0.0) return 0.0;
  const PhaseWave lhs = t_ph_apply(g, t_ph_apply(h, Psi));
  const PhaseWave rhs = t_ph_apply(heisenberg_multiply(g, h), Psi);
  return norm(difference(lhs, rhs)) / nP;
}

// Same residual for the Schroedinger representation.
inline double rep_composition_residual_sch(const GroupElement& g, const GroupElement& h,
                                           const ConfigWave& psi) {
  const double np = norm(psi);
  if (np == 0.0) return 0.0;
  const ConfigWave lhs = t_sch_apply(g, t_sch_apply(h, psi));
  const ConfigWave rhs = t_sch_apply(heisenberg_multiply(g, h), psi);
  return norm(difference(lhs, rhs)) / np;
}

// || T_ph(z0) V_phi psi - V_phi T_sch(z0) psi || / ||psi||, both operators at
// t0 = 0. Together with the isometry of V_phi this is the numerical witness
// that the two representations are unitarily equivalent.
inline double intertwine_residual(const PhasePoint& z0, const ConfigWave& psi,
                                  const Window& phi) {
  const double np = norm(psi);
  if (np == 0.0) return 0.0;
  const GroupElement g(z0, 0.0);
  const PhaseWave lhs = t_ph_apply(g, v_phi(psi, phi));
  const PhaseWave rhs = v_phi(t_sch_apply(g, psi), phi);
  return norm(difference(lhs, rhs)) / np;
}

}  // namespace phasespace
