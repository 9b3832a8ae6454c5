#pragma once

// Core types for phase-space quantum mechanics on uniform periodic grids:
// phase points z = (x, p), Heisenberg group elements (z, t), sampled waves
// on configuration space (psi) and on phase space (Psi), the symplectic form
// sigma(z, z') = p.x' - p'.x, and the discrete L^2 inner products.
//
// Conventions used throughout the library:
//   * every axis is a uniform periodic grid with a power-of-two point count;
//     points are x_j = lo + j*dx, j = 0..N-1, with dx = (hi - lo)/N and the
//     right endpoint excluded (periodic identification),
//   * quadrature weight is the uniform product of spacings dx^dim,
//   * hbar is a runtime parameter carried by every wave; operations reject
//     mismatched hbar,
//   * phase-space grids store the n position axes first, then the n momentum
//     axes, in row-major order (axis 0 slowest).

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace phasespace {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// ---------------------------------------------------------------------------
// Phase points and Heisenberg group elements
// ---------------------------------------------------------------------------

struct PhasePoint {
  std::vector<double> x;
  std::vector<double> p;

  PhasePoint() = default;
  PhasePoint(std::vector<double> x_, std::vector<double> p_)
      : x(std::move(x_)), p(std::move(p_)) {
    require(x.size() == p.size() && !x.empty(),
            "PhasePoint: x and p must have equal nonzero length");
  }
  // n = 1 convenience
  PhasePoint(double x0, double p0) : x{x0}, p{p0} {}

  std::size_t dim() const { return x.size(); }

  PhasePoint operator+(const PhasePoint& o) const {
    require(dim() == o.dim(), "PhasePoint: dimension mismatch");
    PhasePoint r = *this;
    for (std::size_t j = 0; j < dim(); ++j) {
      r.x[j] += o.x[j];
      r.p[j] += o.p[j];
    }
    return r;
  }
  PhasePoint operator-() const {
    PhasePoint r = *this;
    for (auto& v : r.x) v = -v;
    for (auto& v : r.p) v = -v;
    return r;
  }
  PhasePoint scaled(double s) const {
    PhasePoint r = *this;
    for (auto& v : r.x) v *= s;
    for (auto& v : r.p) v *= s;
    return r;
  }
  double norm() const {
    double s = 0;
    for (double v : x) s += v * v;
    for (double v : p) s += v * v;
    return std::sqrt(s);
  }
};

// sigma(z, z') = p.x' - p'.x
inline double symplectic_form(const PhasePoint& z, const PhasePoint& z2) {
  require(z.dim() == z2.dim(), "symplectic_form: dimension mismatch");
  double s = 0;
  for (std::size_t j = 0; j < z.dim(); ++j)
    s += z.p[j] * z2.x[j] - z2.p[j] * z.x[j];
  return s;
}

// Heisenberg group element (z, t); t is the action coordinate.
struct GroupElement {
  PhasePoint z;
  double t = 0.0;

  GroupElement() = default;
  GroupElement(PhasePoint z_, double t_) : z(std::move(z_)), t(t_) {}
};

// (z,t)(z',t') = (z + z', t + t' + sigma(z,z')/2)
inline GroupElement heisenberg_multiply(const GroupElement& g, const GroupElement& h) {
  return GroupElement(g.z + h.z, g.t + h.t + 0.5 * symplectic_form(g.z, h.z));
}

inline GroupElement heisenberg_inverse(const GroupElement& g) {
  return GroupElement(-g.z, -g.t);
}

inline GroupElement heisenberg_identity(std::size_t n) {
  return GroupElement(PhasePoint(std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)), 0.0);
}

// Which representation of the Heisenberg group an operator acts through:
// the Schroedinger representation on configuration-space functions or the
// phase-space representation on the range of the wavepacket transform.
enum class RepLabel { Schroedinger, PhaseSpace };

// ---------------------------------------------------------------------------
// Grids
// ---------------------------------------------------------------------------

struct AxisGrid {
  std::size_t n_points = 0;
  double lo = 0.0;
  double hi = 0.0;

  AxisGrid() = default;
  AxisGrid(std::size_t n, double lo_, double hi_) : n_points(n), lo(lo_), hi(hi_) {
    require(n_points >= 2 && std::has_single_bit(n_points),
            "AxisGrid: n_points must be a power of two >= 2");
    require(hi > lo, "AxisGrid: hi must exceed lo");
  }

  double spacing() const { return (hi - lo) / static_cast<double>(n_points); }
  double length() const { return hi - lo; }
  double point(std::size_t j) const { return lo + static_cast<double>(j) * spacing(); }

  bool operator==(const AxisGrid& o) const {
    return n_points == o.n_points && lo == o.lo && hi == o.hi;
  }
  bool operator!=(const AxisGrid& o) const { return !(*this == o); }
};

inline std::size_t grid_size(const std::vector<AxisGrid>& axes) {
  std::size_t s = 1;
  for (const auto& a : axes) s *= a.n_points;
  return s;
}

inline std::vector<std::size_t> grid_shape(const std::vector<AxisGrid>& axes) {
  std::vector<std::size_t> s;
  s.reserve(axes.size());
  for (const auto& a : axes) s.push_back(a.n_points);
  return s;
}

inline double grid_weight(const std::vector<AxisGrid>& axes) {
  double w = 1;
  for (const auto& a : axes) w *= a.spacing();
  return w;
}

// ---------------------------------------------------------------------------
// Sampled waves
// ---------------------------------------------------------------------------

namespace detail {

struct WaveData {
  std::vector<AxisGrid> grid;
  std::vector<Complex> values;  // row-major, axis 0 slowest
  double hbar = 1.0;

  WaveData() = default;
  WaveData(std::vector<AxisGrid> g, double hb)
      : grid(std::move(g)), values(grid_size(grid), Complex{0.0, 0.0}), hbar(hb) {
    require(hbar > 0, "wave: hbar must be positive");
  }

  std::size_t size() const { return values.size(); }
  double weight() const { return grid_weight(grid); }
};

}  // namespace detail

// Complex wave sampled on an n-dimensional position grid.
struct ConfigWave : detail::WaveData {
  ConfigWave() = default;
  ConfigWave(std::vector<AxisGrid> g, double hb) : WaveData(std::move(g), hb) {}
  std::size_t dim_n() const { return grid.size(); }
};

// Complex wave (or sampled symbol) on a 2n-dimensional phase-space grid,
// n position axes followed by n momentum axes.
struct PhaseWave : detail::WaveData {
  PhaseWave() = default;
  PhaseWave(std::vector<AxisGrid> g, double hb) : WaveData(std::move(g), hb) {
    require(grid.size() % 2 == 0, "PhaseWave: grid must have 2n axes");
  }
  std::size_t dim_n() const { return grid.size() / 2; }
};

// Phase-space grid built from a position grid; by default the momentum axes
// copy the position axes.
inline std::vector<AxisGrid> phase_axes(const std::vector<AxisGrid>& xaxes) {
  std::vector<AxisGrid> g = xaxes;
  g.insert(g.end(), xaxes.begin(), xaxes.end());
  return g;
}

template <class Wave>
inline void check_same_grid(const Wave& f, const Wave& g, const char* who) {
  require(f.grid.size() == g.grid.size(), std::string(who) + ": grid rank mismatch");
  for (std::size_t a = 0; a < f.grid.size(); ++a)
    require(f.grid[a] == g.grid[a], std::string(who) + ": grid mismatch");
  require(f.hbar == g.hbar, std::string(who) + ": hbar mismatch");
}

// Discrete L^2 pairing with uniform weights: sum conj(f) g dx^dim.
template <class Wave>
inline Complex inner_product(const Wave& f, const Wave& g) {
  check_same_grid(f, g, "inner_product");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < f.values.size(); ++i)
    s += std::conj(f.values[i]) * g.values[i];
  return s * f.weight();
}

template <class Wave>
inline double norm(const Wave& f) {
  double s = 0;
  for (const auto& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.weight());
}

template <class Wave>
inline double rel_l2_error(const Wave& f, const Wave& g) {
  check_same_grid(f, g, "rel_l2_error");
  double num = 0, den = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    num += std::norm(f.values[i] - g.values[i]);
    den += std::norm(g.values[i]);
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num * f.weight());
}

// Linear combinations; grids must match.
template <class Wave>
inline Wave axpy(Complex alpha, const Wave& x, const Wave& y) {
  check_same_grid(x, y, "axpy");
  Wave r = y;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += alpha * x.values[i];
  return r;
}

template <class Wave>
inline Wave scaled(const Wave& x, Complex alpha) {
  Wave r = x;
  for (auto& v : r.values) v *= alpha;
  return r;
}

template <class Wave>
inline Wave difference(const Wave& a, const Wave& b) {
  return axpy<Wave>(Complex{-1.0, 0.0}, b, a);
}

// Odometer over a row-major shape; calls fn(index_vector, flat_index).
template <class F>
inline void for_each_index(const std::vector<std::size_t>& shape, F&& fn) {
  std::vector<std::size_t> idx(shape.size(), 0);
  std::size_t total = 1;
  for (auto s : shape) total *= s;
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(idx, flat);
    for (std::size_t a = shape.size(); a-- > 0;) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
}

}  // namespace phasespace
