#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.
// The oracles evaluate the defining integrals by naive quadrature loops so
// they share no code path with the chirp/FFT implementations they check.

#include <complex>
#include <random>
#include <vector>

#include "phasespace/core.hpp"
#include "phasespace/hermite.hpp"

namespace testutil {

using phasespace::AxisGrid;
using phasespace::Complex;
using phasespace::ConfigWave;
using phasespace::PhasePoint;
using phasespace::PhaseWave;

inline AxisGrid std_axis(std::size_t n = 128, double half = 12.0) {
  return AxisGrid(n, -half, half);
}

inline std::mt19937_64 seeded_rng(std::uint64_t seed = 20240829ULL) {
  return std::mt19937_64(seed);
}

// (2 pi hbar)^{-n} sum_{z'} e^{-i sigma(z,z')/hbar} a(z') dz'^{2n}, naive loops
inline Complex oracle_symplectic_fourier_at(const PhaseWave& a, const PhasePoint& z) {
  const std::size_t n = a.dim_n();
  const auto shape = phasespace::grid_shape(a.grid);
  Complex sum{0.0, 0.0};
  phasespace::for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    double sig = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double xp = a.grid[j].point(idx[j]);
      const double pp = a.grid[n + j].point(idx[n + j]);
      sig += z.p[j] * xp - pp * z.x[j];
    }
    sum += std::polar(1.0, -sig / a.hbar) * a.values[flat];
  });
  const double c =
      std::pow(2.0 * phasespace::kPi * a.hbar, -static_cast<double>(n)) * a.weight();
  return sum * c;
}

// Wigner-Moyal value at x-label m and momentum value p for n = 1, with the
// same y-sampling convention as the library (y = 2(j - N/2) dx, cyclic
// indices).
inline Complex oracle_wigner_at(const ConfigWave& psi, const ConfigWave& phi, std::size_t m,
                                double p) {
  const AxisGrid& g = psi.grid[0];
  const std::size_t N = g.n_points;
  const double dx = g.spacing();
  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < N; ++j) {
    const double y = 2.0 * (static_cast<double>(j) - static_cast<double>(N) / 2.0) * dx;
    const std::size_t ip = (m + j + N - N / 2) % N;
    const std::size_t iq = (m + N + N / 2 - j) % N;
    sum += std::polar(1.0, -p * y / psi.hbar) * psi.values[ip] * phi.values[iq];
  }
  return sum * (2.0 * dx) / (2.0 * phasespace::kPi * psi.hbar);
}

// U_phi value at grid labels (m, l) for n = 1, naive quadrature.
inline Complex oracle_u_phi_at(const ConfigWave& psi, const ConfigWave& phi, std::size_t m,
                               std::size_t l) {
  const AxisGrid& g = psi.grid[0];
  const std::size_t N = g.n_points;
  const double x = g.point(m), p = g.point(l);
  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < N; ++j) {
    const double xp = g.point(j);
    const std::size_t iphi = (m + N - j + N / 2) % N;  // phi at (x_m - x_j)
    sum += std::polar(1.0, p * (x - xp) / psi.hbar) * phi.values[iphi] * psi.values[j];
  }
  return sum * g.spacing() / std::sqrt(2.0 * phasespace::kPi * psi.hbar);
}

}  // namespace testutil
