#pragma once

// The wavepacket (windowed wavefunction) transform machinery.
//
//   W(psi, phibar)(x,p) = (2 pi hbar)^{-n} int e^{-i p.y/hbar}
//                           psi(x + y/2) phi(x - y/2) d^n y
//   U_phi psi(z) = (2 pi hbar)^{-n/2} int e^{i p.(x-x')/hbar} phi(x-x') psi(x') d^n x'
//   V_phi psi(z) = e^{-i p.x/(2 hbar)} U_phi psi(z)
//                = (pi hbar / 2)^{n/2} W(psi, phibar)(z/2)
//
// Note the window phi enters the Wigner-Moyal integral unconjugated; the
// textbook auto-Wigner function of psi is W(psi, conj(psi)).
//
// Discretization notes:
//   * the y-integral is sampled at y = 2(j - N/2) dx, so both psi(x + y/2)
//     and phi(x - y/2) land exactly on the grid (cyclic indexing); the
//     half-argument values W(z/2) needed by V_phi are produced the same way
//     on a half-spaced output grid (wigner_moyal_half), never by
//     interpolation,
//   * v_phi_adjoint is the exact conjugate-transpose of the discretized
//     v_phi with respect to the weighted discrete inner products, so the
//     reconstruction identity V* V = I and the projector P = V V* hold at
//     the discrete level up to quadrature error,
//   * the momentum axes of every phase-space argument must equal the
//     position axes (the transforms map the grid onto itself).

#include <cmath>
#include <utility>
#include <vector>

#include "phasespace/core.hpp"
#include "phasespace/fft.hpp"
#include "phasespace/hermite.hpp"

namespace phasespace {

// Normalized window function phi.
struct Window {
  ConfigWave wave;

  explicit Window(ConfigWave w) : wave(std::move(w)) {
    const double nw = norm(wave);
    require(std::abs(nw - 1.0) <= 1e-10, "Window: wave must be normalized to 1 within 1e-10");
  }
};

// Standard Gaussian window phi_0(x) = (pi hbar)^{-n/4} e^{-|x|^2/(2 hbar)}.
inline Window gaussian_window(const std::vector<AxisGrid>& axes, double hbar) {
  return Window(gaussian_state(axes, hbar));
}

namespace detail {

inline void check_window_grid(const ConfigWave& psi, const Window& phi, const char* who) {
  check_same_grid(psi, phi.wave, who);
}

inline void check_phase_grid(const PhaseWave& Psi, const std::vector<AxisGrid>& xaxes,
                             const char* who) {
  require(Psi.grid.size() == 2 * xaxes.size(), std::string(who) + ": phase grid rank mismatch");
  for (std::size_t a = 0; a < xaxes.size(); ++a) {
    require(Psi.grid[a] == xaxes[a], std::string(who) + ": position axis mismatch");
    require(Psi.grid[a + xaxes.size()] == xaxes[a],
            std::string(who) + ": momentum axis must equal the position axis");
  }
}

// phi resampled so that phiShift[k] = phi[(k + N/2) mod N] per axis; with
// this layout phiShift[(m - j) mod N] = phi((x_m - x_j)) as a grid value.
inline std::vector<Complex> centered_window(const ConfigWave& phi) {
  const auto shape = grid_shape(phi.grid);
  std::vector<Complex> out(phi.values.size());
  std::vector<std::size_t> strides(shape.size(), 1);
  for (std::size_t a = shape.size(); a-- > 1;) strides[a - 1] = strides[a] * shape[a];
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    std::size_t src = 0;
    for (std::size_t a = 0; a < shape.size(); ++a)
      src += ((idx[a] + shape[a] / 2) % shape[a]) * strides[a];
    out[flat] = phi.values[src];
  });
  return out;
}

// e^{s i p_l x_j / hbar} tables, one per axis pair.
inline std::vector<std::vector<Complex>> phase_tables(const std::vector<AxisGrid>& axes,
                                                      double hbar, double s) {
  std::vector<std::vector<Complex>> t(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const std::size_t n = axes[a].n_points;
    t[a].resize(n * n);
    for (std::size_t l = 0; l < n; ++l) {
      const long double pl = axes[a].point(l);
      for (std::size_t j = 0; j < n; ++j)
        t[a][l * n + j] = cis(static_cast<long double>(s) * pl *
                              static_cast<long double>(axes[a].point(j)) / hbar);
    }
  }
  return t;
}

}  // namespace detail

// U_phi psi on the phase grid [x-axes, x-axes].
inline PhaseWave u_phi(const ConfigWave& psi, const Window& phi) {
  detail::check_window_grid(psi, phi, "u_phi");
  const auto& xaxes = psi.grid;
  const std::size_t n = xaxes.size();
  const auto xshape = grid_shape(xaxes);
  const std::size_t xtot = grid_size(xaxes);

  PhaseWave out(phase_axes(xaxes), psi.hbar);

  std::vector<Complex> phiHat = detail::centered_window(phi.wave);
  fftn(phiHat, xshape, -1);
  const auto fwd = detail::phase_tables(xaxes, psi.hbar, -1.0);  // e^{-i p x / hbar}
  const double w = std::pow(2.0 * kPi * psi.hbar, -0.5 * static_cast<double>(n)) *
                   grid_weight(xaxes);

  std::vector<Complex> g(xtot);
  std::vector<std::size_t> lidx(n, 0);
  const std::size_t ptot = xtot;
  for (std::size_t lflat = 0; lflat < ptot; ++lflat) {
    // g_j = e^{-i p_l . x_j / hbar} psi_j
    for_each_index(xshape, [&](const std::vector<std::size_t>& j, std::size_t f) {
      Complex ph{1.0, 0.0};
      for (std::size_t a = 0; a < n; ++a) ph *= fwd[a][lidx[a] * xshape[a] + j[a]];
      g[f] = ph * psi.values[f];
    });
    // cyclic convolution with the window
    fftn(g, xshape, -1);
    for (std::size_t i = 0; i < xtot; ++i) g[i] *= phiHat[i];
    fftn(g, xshape, +1);
    // prefactor and e^{+i p_l . x_m / hbar}
    for_each_index(xshape, [&](const std::vector<std::size_t>& m, std::size_t f) {
      Complex ph{w, 0.0};
      for (std::size_t a = 0; a < n; ++a) ph *= std::conj(fwd[a][lidx[a] * xshape[a] + m[a]]);
      out.values[f * ptot + lflat] = ph * g[f];
    });
    for (std::size_t a = n; a-- > 0;) {
      if (++lidx[a] < xshape[a]) break;
      lidx[a] = 0;
    }
  }
  return out;
}

// Exact discrete adjoint of u_phi.
inline ConfigWave u_phi_adjoint(const PhaseWave& Psi, const Window& phi) {
  const auto& xaxes = phi.wave.grid;
  detail::check_phase_grid(Psi, xaxes, "u_phi_adjoint");
  require(Psi.hbar == phi.wave.hbar, "u_phi_adjoint: hbar mismatch");
  const std::size_t n = xaxes.size();
  const auto xshape = grid_shape(xaxes);
  const std::size_t xtot = grid_size(xaxes);

  std::vector<Complex> phiHat = detail::centered_window(phi.wave);
  fftn(phiHat, xshape, -1);
  const auto fwd = detail::phase_tables(xaxes, Psi.hbar, -1.0);
  const double w = std::pow(2.0 * kPi * Psi.hbar, -0.5 * static_cast<double>(n)) *
                   grid_weight(xaxes);
  // ratio of phase-space to configuration quadrature weights
  double wp = 1.0;
  for (std::size_t a = 0; a < n; ++a) wp *= xaxes[a].spacing();

  ConfigWave out(xaxes, Psi.hbar);
  std::vector<Complex> g(xtot);
  std::vector<std::size_t> lidx(n, 0);
  for (std::size_t lflat = 0; lflat < xtot; ++lflat) {
    // conj of the output phase, applied to the slice Psi(., l)
    for_each_index(xshape, [&](const std::vector<std::size_t>& m, std::size_t f) {
      Complex ph{w, 0.0};
      for (std::size_t a = 0; a < n; ++a) ph *= fwd[a][lidx[a] * xshape[a] + m[a]];
      g[f] = ph * Psi.values[f * xtot + lflat];
    });
    // adjoint of cyclic convolution = correlation with the conjugate window
    fftn(g, xshape, -1);
    for (std::size_t i = 0; i < xtot; ++i) g[i] *= std::conj(phiHat[i]);
    fftn(g, xshape, +1);
    // conj of the input phase, then accumulate over l
    for_each_index(xshape, [&](const std::vector<std::size_t>& j, std::size_t f) {
      Complex ph{1.0, 0.0};
      for (std::size_t a = 0; a < n; ++a) ph *= std::conj(fwd[a][lidx[a] * xshape[a] + j[a]]);
      out.values[f] += ph * g[f];
    });
    for (std::size_t a = n; a-- > 0;) {
      if (++lidx[a] < xshape[a]) break;
      lidx[a] = 0;
    }
  }
  for (auto& v : out.values) v *= wp;
  return out;
}

namespace detail {

// multiplies a phase wave by e^{s i p.x/(2 hbar)} pointwise
inline void half_phase_inplace(PhaseWave& Psi, double s) {
  const std::size_t n = Psi.dim_n();
  std::vector<AxisGrid> xaxes(Psi.grid.begin(), Psi.grid.begin() + n);
  const auto tables = phase_tables(xaxes, 2.0 * Psi.hbar, s);
  const auto shape = grid_shape(Psi.grid);
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    Complex ph{1.0, 0.0};
    for (std::size_t a = 0; a < n; ++a)
      ph *= tables[a][idx[n + a] * shape[a] + idx[a]];
    Psi.values[flat] *= ph;
  });
}

}  // namespace detail

// V_phi psi(z) = e^{-i p.x/(2 hbar)} U_phi psi(z); an isometry onto a closed
// subspace of phase-space L^2.
inline PhaseWave v_phi(const ConfigWave& psi, const Window& phi) {
  PhaseWave out = u_phi(psi, phi);
  detail::half_phase_inplace(out, -1.0);
  return out;
}

// Exact discrete adjoint of v_phi; V* V = I up to quadrature error.
inline ConfigWave v_phi_adjoint(const PhaseWave& Psi, const Window& phi) {
  PhaseWave tmp = Psi;
  detail::half_phase_inplace(tmp, +1.0);
  return u_phi_adjoint(tmp, phi);
}

// Orthogonal projection P = V_phi V_phi* onto the range of V_phi.
inline PhaseWave project_range(const PhaseWave& Psi, const Window& phi) {
  return v_phi(v_phi_adjoint(Psi, phi), phi);
}

// ---------------------------------------------------------------------------
// Wigner-Moyal transform
// ---------------------------------------------------------------------------

// Momentum grid dual to the y-sampling of the Wigner integral: the y step is
// 2 dx, so the conjugate momentum lattice has spacing pi hbar/(N dx) and the
// window [-pi hbar/(2 dx), pi hbar/(2 dx)). On this grid e^{-i p y/hbar} runs
// over exact roots of unity and the momentum marginal identity
// sum_l W dl = psi(x) phi(x) holds at the discrete level.
inline AxisGrid wigner_momentum_axis(const AxisGrid& xaxis, double hbar) {
  const double half = kPi * hbar / (2.0 * xaxis.spacing());
  return AxisGrid(xaxis.n_points, -half, half);
}

// W(psi, phibar) on the grid [x-axes, dual momentum axes]. phi enters
// unconjugated; pass conj(psi) as phi for the usual auto-Wigner function.
inline PhaseWave wigner_moyal(const ConfigWave& psi, const ConfigWave& phi) {
  check_same_grid(psi, phi, "wigner_moyal");
  const auto& xaxes = psi.grid;
  const std::size_t n = xaxes.size();
  const auto xshape = grid_shape(xaxes);
  const std::size_t xtot = grid_size(xaxes);
  const double hbar = psi.hbar;

  std::vector<AxisGrid> zaxes = xaxes;
  for (std::size_t a = 0; a < n; ++a) zaxes.push_back(wigner_momentum_axis(xaxes[a], hbar));
  PhaseWave out(zaxes, hbar);

  // per-axis plans for sum_j e^{-2 i theta l j} ..., theta = dp dx / hbar
  std::vector<ChirpPlan> plans;
  std::vector<std::vector<Complex>> pre(n), post(n);
  double weight = std::pow(2.0 * kPi * hbar, -static_cast<double>(n));
  for (std::size_t a = 0; a < n; ++a) {
    const AxisGrid& gx = xaxes[a];
    const AxisGrid& gp = zaxes[n + a];
    const std::size_t N = gx.n_points;
    const long double th =
        static_cast<long double>(gp.spacing()) * static_cast<long double>(gx.spacing()) / hbar;
    const long double c = static_cast<long double>(N) / 2.0L;
    plans.emplace_back(N, N, -2.0L * th, 0.0L);
    pre[a].resize(N);
    post[a].resize(N);
    for (std::size_t j = 0; j < N; ++j)
      pre[a][j] = cis(-2.0L * static_cast<long double>(gp.lo) * gx.spacing() *
                      (static_cast<long double>(j) - c) / hbar);
    for (std::size_t l = 0; l < N; ++l)
      post[a][l] = cis(2.0L * th * static_cast<long double>(l) * c);
    weight *= 2.0 * gx.spacing();  // y-quadrature step is 2 dx
  }

  std::vector<Complex> row(xtot), chout;
  std::vector<std::size_t> midx(n, 0);
  for (std::size_t mflat = 0; mflat < xtot; ++mflat) {
    // row_j = psi[(m + j - N/2) mod] phi[(m - j + N/2) mod]
    for_each_index(xshape, [&](const std::vector<std::size_t>& j, std::size_t f) {
      std::size_t ip = 0, iq = 0;
      for (std::size_t a = 0; a < n; ++a) {
        const std::size_t N = xshape[a];
        ip = ip * N + (midx[a] + j[a] + N - N / 2) % N;
        iq = iq * N + (midx[a] + N + N / 2 - j[a]) % N;
      }
      row[f] = psi.values[ip] * phi.values[iq];
    });
    for (std::size_t a = 0; a < n; ++a) {
      transform_lines(row, xshape, a, [&](std::vector<Complex>& line) {
        chout.resize(line.size());
        for (std::size_t j = 0; j < line.size(); ++j) line[j] *= pre[a][j];
        plans[a].apply(line.data(), chout.data());
        for (std::size_t l = 0; l < line.size(); ++l) line[l] = post[a][l] * chout[l];
      });
    }
    for (std::size_t i = 0; i < xtot; ++i) out.values[mflat * xtot + i] = weight * row[i];
    for (std::size_t a = n; a-- > 0;) {
      if (++midx[a] < xshape[a]) break;
      midx[a] = 0;
    }
  }
  return out;
}

// W(psi, phibar)(z/2) evaluated on a half-spaced output grid and stored at
// the standard grid labels: result(m, l) = W(x_m/2, p_l/2). This is the
// half-argument evaluation entering V_phi.
inline PhaseWave wigner_moyal_half(const ConfigWave& psi, const ConfigWave& phi) {
  check_same_grid(psi, phi, "wigner_moyal_half");
  const auto& xaxes = psi.grid;
  const std::size_t n = xaxes.size();
  const auto xshape = grid_shape(xaxes);
  const std::size_t xtot = grid_size(xaxes);
  const double hbar = psi.hbar;

  PhaseWave out(phase_axes(xaxes), hbar);

  std::vector<ChirpPlan> plans;
  std::vector<std::vector<Complex>> pre(n);
  double weight = std::pow(2.0 * kPi * hbar, -static_cast<double>(n));
  for (std::size_t a = 0; a < n; ++a) {
    const AxisGrid& g = xaxes[a];
    const std::size_t N = g.n_points;
    const long double th = static_cast<long double>(g.spacing()) * g.spacing() / hbar;
    plans.emplace_back(N, N, -th, 0.0L);
    pre[a].resize(N);
    for (std::size_t k = 0; k < N; ++k)
      pre[a][k] = cis(-static_cast<long double>(g.lo) * g.spacing() *
                      static_cast<long double>(k) / hbar);
    weight *= 2.0 * g.spacing();
  }

  std::vector<Complex> row(xtot), chout;
  std::vector<std::size_t> midx(n, 0);
  for (std::size_t mflat = 0; mflat < xtot; ++mflat) {
    // with y_k = (2k - m - N/2) dx: psi index k, phi index (m - k + N/2) mod
    for_each_index(xshape, [&](const std::vector<std::size_t>& k, std::size_t f) {
      std::size_t iq = 0;
      Complex ph{1.0, 0.0};
      for (std::size_t a = 0; a < n; ++a) {
        const std::size_t N = xshape[a];
        iq = iq * N + (midx[a] + N + N / 2 - k[a]) % N;
        ph *= pre[a][k[a]];
      }
      row[f] = ph * psi.values[f] * phi.values[iq];
    });
    for (std::size_t a = 0; a < n; ++a) {
      const AxisGrid& g = xaxes[a];
      const std::size_t N = g.n_points;
      const long double th = static_cast<long double>(g.spacing()) * g.spacing() / hbar;
      const long double mc = static_cast<long double>(midx[a]) + static_cast<long double>(N) / 2.0L;
      transform_lines(row, xshape, a, [&](std::vector<Complex>& line) {
        chout.resize(N);
        plans[a].apply(line.data(), chout.data());
        for (std::size_t l = 0; l < N; ++l) {
          // e^{ i (m + N/2) (theta l + lo dx / hbar) / 2 }
          const Complex p = cis(mc * (th * static_cast<long double>(l) +
                                      static_cast<long double>(g.lo) * g.spacing() / hbar) / 2.0L);
          line[l] = p * chout[l];
        }
      });
    }
    for (std::size_t i = 0; i < xtot; ++i) out.values[mflat * xtot + i] = weight * row[i];
    for (std::size_t a = n; a-- > 0;) {
      if (++midx[a] < xshape[a]) break;
      midx[a] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

// Residuals of the phase-space quantization rules
//   (x/2 + i hbar d_p) V psi = V (x psi)
//   (p/2 - i hbar d_x) V psi = V (-i hbar d_x psi),
// summed over axes, relative to |psi|. Derivatives are spectral.
inline std::pair<double, double> quantization_residual(const ConfigWave& psi, const Window& phi) {
  const double npsi = norm(psi);
  if (npsi == 0.0) return {0.0, 0.0};
  const std::size_t n = psi.dim_n();
  const double hbar = psi.hbar;
  const PhaseWave V = v_phi(psi, phi);
  const auto zshape = grid_shape(V.grid);

  double r1sq = 0, r2sq = 0;
  for (std::size_t a = 0; a < n; ++a) {
    // (x_a/2 + i hbar d_{p_a}) V - V(x_a psi)
    PhaseWave lhs = spectral_derivative_axis(V, n + a);
    for (auto& v : lhs.values) v *= Complex{0.0, hbar};
    for_each_index(zshape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
      lhs.values[flat] += 0.5 * V.grid[a].point(idx[a]) * V.values[flat];
    });
    ConfigWave xpsi = psi;
    for_each_index(grid_shape(psi.grid), [&](const std::vector<std::size_t>& idx, std::size_t flat) {
      xpsi.values[flat] *= psi.grid[a].point(idx[a]);
    });
    const PhaseWave rhs = v_phi(xpsi, phi);
    double acc = 0;
    for (std::size_t i = 0; i < lhs.values.size(); ++i) acc += std::norm(lhs.values[i] - rhs.values[i]);
    r1sq += acc * lhs.weight();

    // (p_a/2 - i hbar d_{x_a}) V - V(-i hbar d_{x_a} psi)
    PhaseWave lhs2 = spectral_derivative_axis(V, a);
    for (auto& v : lhs2.values) v *= Complex{0.0, -hbar};
    for_each_index(zshape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
      lhs2.values[flat] += 0.5 * V.grid[n + a].point(idx[n + a]) * V.values[flat];
    });
    ConfigWave dpsi = spectral_derivative_axis(psi, a);
    for (auto& v : dpsi.values) v *= Complex{0.0, -hbar};
    const PhaseWave rhs2 = v_phi(dpsi, phi);
    double acc2 = 0;
    for (std::size_t i = 0; i < lhs2.values.size(); ++i)
      acc2 += std::norm(lhs2.values[i] - rhs2.values[i]);
    r2sq += acc2 * lhs2.weight();
  }
  return {std::sqrt(r1sq) / npsi, std::sqrt(r2sq) / npsi};
}

// Wirtinger residuals testing membership in the range of V_{phi_0} (n = 1).
// With z = x + i p, elements of the range satisfy
//   d/dz ( e^{|z|^2/(4 hbar)} Psi(z) ) = 0,
// i.e. e^{|z|^2/(4 hbar)} Psi is anti-analytic (a function of zbar alone);
// the first component of the returned pair is that residual. Both residuals
// are relative L^2 norms over the sub-domain where |Psi| exceeds 1e-8 of its
// peak; outside it the exponential weight amplifies the noise floor of the
// spectral derivative past any useful signal. The derivatives are expanded
// by the product rule, so only Psi itself is differentiated spectrally.
inline std::pair<double, double> bargmann_residual(const PhaseWave& Psi) {
  require(Psi.dim_n() == 1, "bargmann_residual: only n = 1 is supported");
  const double hbar = Psi.hbar;
  double peak = 0;
  for (const auto& v : Psi.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return {0.0, 0.0};

  const PhaseWave dx = spectral_derivative_axis(Psi, 0);
  const PhaseWave dp = spectral_derivative_axis(Psi, 1);
  const auto shape = grid_shape(Psi.grid);

  const double mask_floor = 1e-8 * peak;
  double nz = 0, nzb = 0, na = 0;
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    if (std::abs(Psi.values[flat]) <= mask_floor) return;
    const double x = Psi.grid[0].point(idx[0]);
    const double p = Psi.grid[1].point(idx[1]);
    const Complex z{x, p};
    const double w = std::exp((x * x + p * p) / (4.0 * hbar));
    const Complex ddz = 0.5 * (dx.values[flat] - Complex{0.0, 1.0} * dp.values[flat]);
    const Complex ddzb = 0.5 * (dx.values[flat] + Complex{0.0, 1.0} * dp.values[flat]);
    const Complex rz = w * (ddz + std::conj(z) / (4.0 * hbar) * Psi.values[flat]);
    const Complex rzb = w * (ddzb + z / (4.0 * hbar) * Psi.values[flat]);
    nz += std::norm(rz);
    nzb += std::norm(rzb);
    na += std::norm(w * Psi.values[flat]);
  });
  if (na == 0.0) return {0.0, 0.0};
  return {std::sqrt(nz / na), std::sqrt(nzb / na)};
}

}  // namespace phasespace
