#pragma once

// Spectral transform machinery: an in-place radix-2 FFT, Bluestein chirp
// transforms for Fourier sums whose frequencies do not land on the DFT
// lattice, band-limited translation (Fourier shift), spectral derivatives,
// and the symplectic Fourier transform
//
//   F_sigma a(z) = (2 pi hbar)^{-n} integral e^{-i sigma(z,z')/hbar} a(z') d^{2n}z'.
//
// The discrete F_sigma evaluates the uniform-grid quadrature of the defining
// integral at the grid's own sample points. Because the grid spacing is not
// commensurate with 2 pi hbar / L in general, the per-axis sums are chirp
// sums S_l = sum_j e^{i theta l j} g_j with irrational theta; they are done
// exactly (to roundoff) with Bluestein's factorization
//   l j = [l^2 + j^2 - (l-j)^2] / 2
// which turns the sum into a zero-padded circular convolution.
//
// All functions are pure; scratch buffers are per invocation.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "phasespace/core.hpp"

namespace phasespace {

// e^{i phi} with long-double argument reduction; phases in the chirp sums
// reach a few hundred radians and plain double reduction would cost digits.
inline Complex cis(long double phi) {
  constexpr long double two_pi = 6.283185307179586476925286766559L;
  long double r = std::fmod(phi, two_pi);
  return Complex(static_cast<double>(std::cos(r)), static_cast<double>(std::sin(r)));
}

// ---------------------------------------------------------------------------
// Radix-2 FFT
// ---------------------------------------------------------------------------

// In-place power-of-two FFT. dir = -1: forward (e^{-2 pi i jk/N}), dir = +1:
// inverse without the 1/N factor.
inline void fft_pow2(Complex* a, std::size_t n, int dir) {
  if (n < 2) return;
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const long double ang = dir * 2.0L * 3.14159265358979323846264338328L / static_cast<long double>(len);
    const Complex wlen = cis(ang);
    for (std::size_t i = 0; i < n; i += len) {
      Complex w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        Complex u = a[i + k];
        Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

inline void fft_forward(std::vector<Complex>& a) { fft_pow2(a.data(), a.size(), -1); }

inline void fft_inverse(std::vector<Complex>& a) {
  fft_pow2(a.data(), a.size(), +1);
  const double s = 1.0 / static_cast<double>(a.size());
  for (auto& v : a) v *= s;
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// ---------------------------------------------------------------------------
// Bluestein chirp transform
// ---------------------------------------------------------------------------

// Evaluates S_l = sum_{j=0}^{n_in-1} e^{i theta (l - c_out) j} g_j for
// l = 0..n_out-1. The chirp kernel FFT is precomputed once per plan, so a
// plan can be reused across many rows of a multi-dimensional transform.
class ChirpPlan {
 public:
  ChirpPlan(std::size_t n_in, std::size_t n_out, long double theta, long double c_out)
      : n_in_(n_in), n_out_(n_out), m_(next_pow2(n_in + n_out - 1)) {
    chirp_in_.resize(n_in_);
    for (std::size_t j = 0; j < n_in_; ++j)
      chirp_in_[j] = cis(theta * static_cast<long double>(j) * static_cast<long double>(j) / 2.0L);
    prefac_.resize(n_out_);
    for (std::size_t l = 0; l < n_out_; ++l) {
      const long double lm = static_cast<long double>(l) - c_out;
      prefac_[l] = cis(theta * lm * lm / 2.0L);
    }
    // kernel b(k) = e^{-i theta (k - c_out)^2 / 2} for k = l - j in
    // [-(n_in-1), n_out-1], laid out circularly in an M-point buffer
    kernel_fft_.assign(m_, Complex{0.0, 0.0});
    for (std::ptrdiff_t k = -static_cast<std::ptrdiff_t>(n_in_ - 1);
         k <= static_cast<std::ptrdiff_t>(n_out_ - 1); ++k) {
      const long double km = static_cast<long double>(k) - c_out;
      const std::size_t idx = static_cast<std::size_t>((k + static_cast<std::ptrdiff_t>(m_)) %
                                                       static_cast<std::ptrdiff_t>(m_));
      kernel_fft_[idx] = cis(-theta * km * km / 2.0L);
    }
    fft_pow2(kernel_fft_.data(), m_, -1);
  }

  std::size_t n_in() const { return n_in_; }
  std::size_t n_out() const { return n_out_; }

  void apply(const Complex* in, Complex* out) const {
    std::vector<Complex> buf(m_, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < n_in_; ++j) buf[j] = in[j] * chirp_in_[j];
    fft_pow2(buf.data(), m_, -1);
    for (std::size_t i = 0; i < m_; ++i) buf[i] *= kernel_fft_[i];
    fft_pow2(buf.data(), m_, +1);
    const double s = 1.0 / static_cast<double>(m_);
    for (std::size_t l = 0; l < n_out_; ++l) out[l] = prefac_[l] * buf[l] * s;
  }

 private:
  std::size_t n_in_, n_out_, m_;
  std::vector<Complex> chirp_in_;
  std::vector<Complex> prefac_;
  std::vector<Complex> kernel_fft_;
};

// ---------------------------------------------------------------------------
// Per-axis line traversal for row-major nd arrays
// ---------------------------------------------------------------------------

// Gathers every 1-D line along `axis`, calls fn on the contiguous copy, and
// scatters the result back. fn may resize nothing; lines keep their length.
template <class F>
inline void transform_lines(std::vector<Complex>& v, const std::vector<std::size_t>& shape,
                            std::size_t axis, F&& fn) {
  const std::size_t n = shape[axis];
  std::size_t stride = 1;
  for (std::size_t a = axis + 1; a < shape.size(); ++a) stride *= shape[a];
  const std::size_t block = stride * n;
  std::vector<Complex> line(n);
  for (std::size_t base = 0; base < v.size(); base += block) {
    for (std::size_t off = 0; off < stride; ++off) {
      Complex* p = v.data() + base + off;
      for (std::size_t k = 0; k < n; ++k) line[k] = p[k * stride];
      fn(line);
      for (std::size_t k = 0; k < n; ++k) p[k * stride] = line[k];
    }
  }
}

// Multiplies v element-wise by the product of per-axis factor vectors
// (factors[a] empty means "skip axis a").
inline void apply_axis_factors(std::vector<Complex>& v, const std::vector<std::size_t>& shape,
                               const std::vector<std::vector<Complex>>& factors) {
  for (std::size_t a = 0; a < shape.size(); ++a) {
    if (factors[a].empty()) continue;
    transform_lines(v, shape, a, [&](std::vector<Complex>& line) {
      for (std::size_t k = 0; k < line.size(); ++k) line[k] *= factors[a][k];
    });
  }
}

inline void fftn(std::vector<Complex>& v, const std::vector<std::size_t>& shape, int dir) {
  for (std::size_t a = 0; a < shape.size(); ++a) {
    transform_lines(v, shape, a, [&](std::vector<Complex>& line) {
      fft_pow2(line.data(), line.size(), dir);
      if (dir == +1) {
        const double s = 1.0 / static_cast<double>(line.size());
        for (auto& c : line) c *= s;
      }
    });
  }
}

// Signed DFT angular frequency (rad per coordinate unit) of bin m on an axis.
inline double axis_freq(const AxisGrid& g, std::size_t m) {
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(g.n_points / 2);
  std::ptrdiff_t ms = static_cast<std::ptrdiff_t>(m);
  if (ms >= half) ms -= static_cast<std::ptrdiff_t>(g.n_points);
  return 2.0 * kPi * static_cast<double>(ms) / g.length();
}

// ---------------------------------------------------------------------------
// Band-limited translation and spectral derivatives
// ---------------------------------------------------------------------------

// f(. - offset) through phase multiplication in the transform domain; exact
// on the discrete (trigonometric-polynomial) representation, periodic wrap.
inline void fourier_shift_values(std::vector<Complex>& v, const std::vector<AxisGrid>& axes,
                                 const std::vector<double>& offset) {
  require(offset.size() == axes.size(), "fourier_shift: offset length mismatch");
  const auto shape = grid_shape(axes);
  fftn(v, shape, -1);
  std::vector<std::vector<Complex>> factors(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) {
    factors[a].resize(axes[a].n_points);
    for (std::size_t m = 0; m < axes[a].n_points; ++m)
      factors[a][m] = cis(static_cast<long double>(-axis_freq(axes[a], m)) *
                          static_cast<long double>(offset[a]));
  }
  apply_axis_factors(v, shape, factors);
  fftn(v, shape, +1);
}

template <class Wave>
inline Wave fourier_shift(const Wave& f, const std::vector<double>& offset) {
  Wave r = f;
  fourier_shift_values(r.values, r.grid, offset);
  return r;
}

// Mixed spectral derivative d^{orders} f, one order entry per axis. Odd
// orders zero the Nyquist bin of their axis.
inline void spectral_derivative_values(std::vector<Complex>& v, const std::vector<AxisGrid>& axes,
                                       const std::vector<unsigned>& orders) {
  require(orders.size() == axes.size(), "spectral_derivative: order length mismatch");
  const auto shape = grid_shape(axes);
  fftn(v, shape, -1);
  std::vector<std::vector<Complex>> factors(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) {
    if (orders[a] == 0) continue;
    factors[a].resize(axes[a].n_points);
    for (std::size_t m = 0; m < axes[a].n_points; ++m) {
      if (m == axes[a].n_points / 2 && orders[a] % 2 == 1) {
        factors[a][m] = Complex{0.0, 0.0};
        continue;
      }
      Complex ik{0.0, axis_freq(axes[a], m)};
      Complex f{1.0, 0.0};
      for (unsigned o = 0; o < orders[a]; ++o) f *= ik;
      factors[a][m] = f;
    }
  }
  apply_axis_factors(v, shape, factors);
  fftn(v, shape, +1);
}

template <class Wave>
inline Wave spectral_derivative(const Wave& f, const std::vector<unsigned>& orders) {
  Wave r = f;
  spectral_derivative_values(r.values, r.grid, orders);
  return r;
}

template <class Wave>
inline Wave spectral_derivative_axis(const Wave& f, std::size_t axis, unsigned order = 1) {
  std::vector<unsigned> orders(f.grid.size(), 0);
  orders[axis] = order;
  return spectral_derivative(f, orders);
}

// ---------------------------------------------------------------------------
// Symplectic Fourier transform
// ---------------------------------------------------------------------------

namespace detail {

// Raw quadrature sum T(z) = sum_{z'} e^{-i sigma(z, z')/hbar_eff} v[z'],
// evaluated at the points of out_axes, without quadrature weights or the
// (2 pi hbar)^{-n} prefactor. Axis point counts must match pairwise (the
// per-axis chirp transforms are length preserving). Output axes are in
// standard (x..., p...) order.
inline std::vector<Complex> symplectic_kernel_sum(const std::vector<Complex>& v,
                                                  const std::vector<AxisGrid>& axes,
                                                  const std::vector<AxisGrid>& out_axes,
                                                  double hbar_eff) {
  const std::size_t rank = axes.size();
  require(rank % 2 == 0, "symplectic transform: grid must have 2n axes");
  require(out_axes.size() == rank, "symplectic transform: output grid rank mismatch");
  const std::size_t n = rank / 2;
  for (std::size_t j = 0; j < rank; ++j)
    require(axes[j].n_points == out_axes[j].n_points,
            "symplectic transform: output axis point counts must match the input");
  const auto shape = grid_shape(axes);
  std::vector<Complex> work = v;

  // sigma(z, z') = p.x' - p'.x, so an input x_j axis transforms with kernel
  // e^{-i p x'/hbar} (indexed afterwards by p_j) and an input p_j axis with
  // e^{ i x p'/hbar} (indexed afterwards by x_j).
  for (std::size_t a = 0; a < rank; ++a) {
    const bool is_x = a < n;
    const AxisGrid& gin = axes[a];
    const AxisGrid& gout = is_x ? out_axes[a + n] : out_axes[a - n];
    const std::size_t nin = gin.n_points, nout = gout.n_points;
    const long double sgn = is_x ? -1.0L : 1.0L;
    const long double hb = static_cast<long double>(hbar_eff);
    const long double din = gin.spacing(), dout = gout.spacing();
    const long double lin = gin.lo, lout = gout.lo;
    const long double theta = sgn * dout * din / hb;

    std::vector<Complex> pre(nin), post(nout);
    for (std::size_t m = 0; m < nin; ++m)
      pre[m] = cis(sgn * lout * din * static_cast<long double>(m) / hb);
    for (std::size_t l = 0; l < nout; ++l)
      post[l] = cis(sgn * (lout * lin + static_cast<long double>(l) * dout * lin) / hb);

    ChirpPlan plan(nin, nout, theta, 0.0L);
    std::vector<Complex> out(nout);
    transform_lines(work, shape, a, [&](std::vector<Complex>& line) {
      for (std::size_t m = 0; m < nin; ++m) line[m] *= pre[m];
      plan.apply(line.data(), out.data());
      for (std::size_t l = 0; l < nout; ++l) line[l] = post[l] * out[l];
    });
  }

  // after the per-axis passes, slot j holds p_j and slot n+j holds x_j;
  // swap the two blocks back to standard order
  std::vector<Complex> result(work.size());
  std::vector<std::size_t> strides(rank, 1);
  for (std::size_t a = rank - 1; a-- > 0;) strides[a] = strides[a + 1] * shape[a + 1];
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    std::size_t src = 0;
    for (std::size_t j = 0; j < n; ++j) src += idx[n + j] * strides[j] + idx[j] * strides[n + j];
    result[flat] = work[src];
  });
  return result;
}

}  // namespace detail

// F_sigma a(z) = (2 pi hbar)^{-n} integral e^{-i sigma(z,z')/hbar} a(z') d^{2n}z',
// an involution that preserves the L^2 norm. Output samples live on the input
// grid itself (the per-axis chirp sums are evaluated at the grid points, and
// the position/momentum axis blocks are swapped back into standard order);
// this requires each position axis to equal its momentum partner. The
// quadrature resolves the kernel oscillation when pi hbar / dx >= half-width
// per axis; the default grids satisfy this.
inline PhaseWave symplectic_fourier(const PhaseWave& a) {
  require(a.grid.size() >= 2 && a.grid.size() % 2 == 0,
          "symplectic_fourier: input must live on a 2n-dimensional phase-space grid");
  const std::size_t n = a.dim_n();
  for (std::size_t j = 0; j < n; ++j)
    require(a.grid[j] == a.grid[n + j],
            "symplectic_fourier: position axis must equal its momentum partner");
  PhaseWave out = a;
  out.values = detail::symplectic_kernel_sum(a.values, a.grid, a.grid, a.hbar);
  const double c = std::pow(2.0 * kPi * a.hbar, -static_cast<double>(n)) * grid_weight(a.grid);
  for (auto& v : out.values) v *= c;
  return out;
}

// Reciprocal (DFT-dual) axis: same point count, spacing 2 pi hbar / L. On the
// dual lattice the transform kernels run over exact roots of unity, which
// makes the Heisenberg-Weyl integral reconstruction exact for the unit
// symbol.
inline AxisGrid dual_axis(const AxisGrid& g, double hbar) {
  const double half = kPi * hbar / g.spacing();
  return AxisGrid(g.n_points, -half, half);
}

// ---------------------------------------------------------------------------
// Band-limited 2x upsampling (spectral zero padding)
// ---------------------------------------------------------------------------

// Doubles every axis; even output indices reproduce the input samples for
// band-limited data. Nyquist bins are split symmetrically.
inline void fourier_upsample2_values(std::vector<Complex>& v, std::vector<AxisGrid>& axes) {
  for (std::size_t a = 0; a < axes.size(); ++a) {
    auto shape = grid_shape(axes);
    const std::size_t n = shape[a];
    std::size_t stride = 1;
    for (std::size_t b = a + 1; b < axes.size(); ++b) stride *= shape[b];
    const std::size_t block = stride * n;
    std::vector<Complex> out(v.size() * 2);
    const std::size_t ostride = stride, oblock = stride * 2 * n;
    std::vector<Complex> line(n), oline(2 * n);
    for (std::size_t base = 0, obase = 0; base < v.size(); base += block, obase += oblock) {
      for (std::size_t off = 0; off < stride; ++off) {
        const Complex* p = v.data() + base + off;
        for (std::size_t k = 0; k < n; ++k) line[k] = p[k * stride];
        fft_pow2(line.data(), n, -1);
        std::fill(oline.begin(), oline.end(), Complex{0.0, 0.0});
        for (std::size_t m = 0; m < n; ++m) {
          if (m < n / 2)
            oline[m] = line[m];
          else if (m == n / 2) {
            oline[n / 2] = 0.5 * line[m];
            oline[2 * n - n / 2] = 0.5 * line[m];
          } else
            oline[2 * n - (n - m)] = line[m];
        }
        fft_pow2(oline.data(), 2 * n, +1);
        Complex* q = out.data() + obase + off;
        const double s = 1.0 / static_cast<double>(n);  // 2x from length, 1/(2n) from inverse
        for (std::size_t k = 0; k < 2 * n; ++k) q[k * ostride] = oline[k] * s;
      }
    }
    v = std::move(out);
    axes[a] = AxisGrid(2 * n, axes[a].lo, axes[a].hi);
  }
}

}  // namespace phasespace
