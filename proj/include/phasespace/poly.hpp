#pragma once

// Exact polynomial symbols a(x, p) with complex coefficients, indexed by the
// multi-degree (alpha over position axes, beta over momentum axes). These
// feed the series star product and the Weyl-ordered operator construction,
// and can be sampled onto phase-space grids (with a smooth cutoff, since a
// polynomial is not integrable on its own).

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "phasespace/core.hpp"

namespace phasespace {

class PolySymbol {
 public:
  // key: 2n exponents, x-degrees first then p-degrees
  using Key = std::vector<unsigned>;
  using TermMap = std::map<Key, Complex>;

  PolySymbol(std::size_t n, double hbar) : n_(n), hbar_(hbar) {
    require(n_ >= 1, "PolySymbol: dimension must be >= 1");
    require(hbar_ > 0, "PolySymbol: hbar must be positive");
  }

  static PolySymbol constant(std::size_t n, double hbar, Complex c) {
    PolySymbol s(n, hbar);
    if (c != Complex{0.0, 0.0}) s.terms_[Key(2 * n, 0)] = c;
    return s;
  }
  // x_j (axis < n) or p_{j-n} (axis >= n)
  static PolySymbol coordinate(std::size_t n, double hbar, std::size_t axis) {
    require(axis < 2 * n, "PolySymbol::coordinate: axis out of range");
    PolySymbol s(n, hbar);
    Key k(2 * n, 0);
    k[axis] = 1;
    s.terms_[k] = Complex{1.0, 0.0};
    return s;
  }

  std::size_t dim_n() const { return n_; }
  double hbar() const { return hbar_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add_term(const Key& k, Complex c) {
    require(k.size() == 2 * n_, "PolySymbol::add_term: key length mismatch");
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (c != Complex{0.0, 0.0}) terms_[k] = c;
    } else {
      it->second += c;
      if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
    }
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [k, c] : terms_) {
      unsigned t = 0;
      for (unsigned e : k) t += e;
      d = std::max(d, t);
    }
    return d;
  }

  PolySymbol operator+(const PolySymbol& o) const {
    check_compatible(o);
    PolySymbol r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
  }
  PolySymbol operator-(const PolySymbol& o) const {
    check_compatible(o);
    PolySymbol r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
  }
  PolySymbol operator*(const PolySymbol& o) const {
    check_compatible(o);
    PolySymbol r(n_, hbar_);
    for (const auto& [ka, ca] : terms_)
      for (const auto& [kb, cb] : o.terms_) {
        Key k(2 * n_);
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
        r.add_term(k, ca * cb);
      }
    return r;
  }
  PolySymbol scaled(Complex s) const {
    PolySymbol r(n_, hbar_);
    if (s == Complex{0.0, 0.0}) return r;
    for (const auto& [k, c] : terms_) r.terms_[k] = c * s;
    return r;
  }
  PolySymbol conjugated() const {
    PolySymbol r(n_, hbar_);
    for (const auto& [k, c] : terms_) r.terms_[k] = std::conj(c);
    return r;
  }

  // d/d(axis); axis < n differentiates x_axis, otherwise p_{axis-n}
  PolySymbol derivative(std::size_t axis) const {
    require(axis < 2 * n_, "PolySymbol::derivative: axis out of range");
    PolySymbol r(n_, hbar_);
    for (const auto& [k, c] : terms_) {
      if (k[axis] == 0) continue;
      Key kk = k;
      kk[axis] -= 1;
      r.add_term(kk, c * static_cast<double>(k[axis]));
    }
    return r;
  }

  Complex eval(const std::vector<double>& x, const std::vector<double>& p) const {
    require(x.size() == n_ && p.size() == n_, "PolySymbol::eval: dimension mismatch");
    Complex s{0.0, 0.0};
    for (const auto& [k, c] : terms_) {
      double mono = 1.0;
      for (std::size_t a = 0; a < n_; ++a)
        for (unsigned e = 0; e < k[a]; ++e) mono *= x[a];
      for (std::size_t a = 0; a < n_; ++a)
        for (unsigned e = 0; e < k[n_ + a]; ++e) mono *= p[a];
      s += c * mono;
    }
    return s;
  }

  Complex eval(const PhasePoint& z) const { return eval(z.x, z.p); }

  // Largest coefficient magnitude, as a scale for tolerance checks.
  double coeff_scale() const {
    double s = 0;
    for (const auto& [k, c] : terms_) s = std::max(s, std::abs(c));
    return s;
  }

  std::string to_string() const;

 private:
  void check_compatible(const PolySymbol& o) const {
    require(n_ == o.n_, "PolySymbol: dimension mismatch");
    require(hbar_ == o.hbar_, "PolySymbol: hbar mismatch");
  }

  std::size_t n_;
  double hbar_;
  TermMap terms_;
};

// Max |coeff difference|, with missing keys counted as zero.
inline double coeff_distance(const PolySymbol& a, const PolySymbol& b) {
  double d = 0;
  for (const auto& [k, c] : a.terms()) {
    auto it = b.terms().find(k);
    const Complex cb = it == b.terms().end() ? Complex{0.0, 0.0} : it->second;
    d = std::max(d, std::abs(c - cb));
  }
  for (const auto& [k, c] : b.terms())
    if (a.terms().find(k) == a.terms().end()) d = std::max(d, std::abs(c));
  return d;
}

inline std::string PolySymbol::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.real();
    if (c.imag() >= 0)
      os << "+" << c.imag() << "i)";
    else
      os << c.imag() << "i)";
    for (std::size_t a = 0; a < n_; ++a) {
      if (k[a] == 0) continue;
      os << "*x" << (n_ > 1 ? std::to_string(a + 1) : "");
      if (k[a] > 1) os << "^" << k[a];
    }
    for (std::size_t a = 0; a < n_; ++a) {
      if (k[n_ + a] == 0) continue;
      os << "*p" << (n_ > 1 ? std::to_string(a + 1) : "");
      if (k[n_ + a] > 1) os << "^" << k[n_ + a];
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Sampling with a smooth cutoff
// ---------------------------------------------------------------------------

// C-infinity partition-of-unity step: 1 for t <= 0, 0 for t >= 1.
inline double smooth_step_down(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - t));
  const double b = std::exp(-1.0 / t);
  return a / (a + b);
}

// Separable cutoff, exactly 1 on [-flat, flat] per axis and exactly 0 at the
// grid boundary; flat defaults to half the axis half-width.
inline double cutoff_value(const std::vector<AxisGrid>& axes,
                           const std::vector<std::size_t>& idx, double flat_fraction,
                           double outer_fraction) {
  double w = 1.0;
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const double half = 0.5 * axes[a].length();
    const double r1 = flat_fraction * half;
    const double r2 = outer_fraction * half;
    const double u = std::abs(axes[a].point(idx[a]));
    w *= smooth_step_down((u - r1) / (r2 - r1));
  }
  return w;
}

// Samples the polynomial onto a phase grid, multiplied by the smooth cutoff
// (flat on the inner half-domain by default). Pure polynomials are not
// integrable; all integral-path comparisons are restricted to the flat part.
inline PhaseWave sample_with_cutoff(const PolySymbol& a, const std::vector<AxisGrid>& zaxes,
                                    double flat_fraction = 0.5, double outer_fraction = 0.95) {
  require(zaxes.size() == 2 * a.dim_n(), "sample_with_cutoff: grid rank mismatch");
  PhaseWave w(zaxes, a.hbar());
  const auto shape = grid_shape(zaxes);
  const std::size_t n = a.dim_n();
  std::vector<double> x(n), p(n);
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = zaxes[j].point(idx[j]);
      p[j] = zaxes[n + j].point(idx[n + j]);
    }
    w.values[flat] = a.eval(x, p) * cutoff_value(zaxes, idx, flat_fraction, outer_fraction);
  });
  return w;
}

// Samples the polynomial exactly (no cutoff).
inline PhaseWave sample_plain(const PolySymbol& a, const std::vector<AxisGrid>& zaxes) {
  require(zaxes.size() == 2 * a.dim_n(), "sample_plain: grid rank mismatch");
  PhaseWave w(zaxes, a.hbar());
  const auto shape = grid_shape(zaxes);
  const std::size_t n = a.dim_n();
  std::vector<double> x(n), p(n);
  for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = zaxes[j].point(idx[j]);
      p[j] = zaxes[n + j].point(idx[n + j]);
    }
    w.values[flat] = a.eval(x, p);
  });
  return w;
}

}  // namespace phasespace
