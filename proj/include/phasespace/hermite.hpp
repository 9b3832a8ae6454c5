#pragma once

// Gaussian and Hermite oscillator states used as grid-resolved test material
// and as seeds for the verification suites. h_k is the k-th eigenstate of
// (x^2 - hbar^2 d^2/dx^2)/2 with eigenvalue (k + 1/2) hbar, normalized in
// L^2; on the default grids the states decay below 1e-14 at the boundary.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "phasespace/core.hpp"

namespace phasespace {

// phi_0(x) = (pi hbar)^{-n/4} e^{-|x|^2 / (2 hbar)}
inline ConfigWave gaussian_state(const std::vector<AxisGrid>& axes, double hbar) {
  ConfigWave w(axes, hbar);
  const auto shape = grid_shape(axes);
  const double c = std::pow(kPi * hbar, -0.25 * static_cast<double>(axes.size()));
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    double r2 = 0;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const double x = axes[a].point(idx[a]);
      r2 += x * x;
    }
    w.values[flat] = c * std::exp(-r2 / (2.0 * hbar));
  });
  return w;
}

// Physicists' Hermite polynomial H_k by recurrence.
inline double hermite_poly(unsigned k, double u) {
  double hkm1 = 0.0, hk = 1.0;
  for (unsigned j = 0; j < k; ++j) {
    const double hkp1 = 2.0 * u * hk - 2.0 * static_cast<double>(j) * hkm1;
    hkm1 = hk;
    hk = hkp1;
  }
  return hk;
}

// Normalized 1-D oscillator eigenstate h_k.
inline ConfigWave hermite_state(const AxisGrid& axis, double hbar, unsigned k) {
  ConfigWave w({axis}, hbar);
  double kfact = 1.0;
  for (unsigned j = 2; j <= k; ++j) kfact *= static_cast<double>(j);
  const double c = std::pow(kPi * hbar, -0.25) / std::sqrt(std::pow(2.0, k) * kfact);
  const double rs = 1.0 / std::sqrt(hbar);
  for (std::size_t j = 0; j < axis.n_points; ++j) {
    const double x = axis.point(j);
    w.values[j] = c * hermite_poly(k, x * rs) * std::exp(-x * x / (2.0 * hbar));
  }
  return w;
}

// Seeded random combination of h_0..h_kmax, normalized. The same seed always
// yields the same state, which keeps suite reports reproducible.
inline ConfigWave random_hermite_combo(const AxisGrid& axis, double hbar, unsigned kmax,
                                       std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ConfigWave w({axis}, hbar);
  for (unsigned k = 0; k <= kmax; ++k) {
    const Complex c{dist(rng), dist(rng)};
    ConfigWave hk = hermite_state(axis, hbar, k);
    for (std::size_t j = 0; j < w.size(); ++j) w.values[j] += c * hk.values[j];
  }
  const double nw = norm(w);
  for (auto& v : w.values) v /= nw;
  return w;
}

// Seeded random band-limited phase-space wave: a combination of products
// of Hermite states along every axis of the 2n-dimensional grid.
inline PhaseWave random_phase_combo(const std::vector<AxisGrid>& axes, double hbar, unsigned kmax,
                                    std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::uniform_int_distribution<unsigned> pick(0, kmax);
  PhaseWave w(axes, hbar);
  const auto shape = grid_shape(axes);
  std::vector<std::vector<std::vector<Complex>>> tables(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) {
    tables[a].resize(kmax + 1);
    for (unsigned k = 0; k <= kmax; ++k) {
      ConfigWave hk = hermite_state(axes[a], hbar, k);
      tables[a][k].assign(hk.values.begin(), hk.values.end());
    }
  }
  const unsigned n_terms = 6;
  for (unsigned t = 0; t < n_terms; ++t) {
    const Complex c{dist(rng), dist(rng)};
    std::vector<unsigned> ks(axes.size());
    for (auto& k : ks) k = pick(rng);
    for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
      Complex prod = c;
      for (std::size_t a = 0; a < axes.size(); ++a) prod *= tables[a][ks[a]][idx[a]];
      w.values[flat] += prod;
    });
  }
  const double nw = norm(w);
  for (auto& v : w.values) v /= nw;
  return w;
}

}  // namespace phasespace
