#pragma once

// Exact differential-operator realization of Weyl-ordered polynomial
// symbols. A GridOperator is a finite sum of normal-ordered terms
//
//   c * (coordinate monomial q^gamma) * (mixed derivative d^delta)
//
// over the axes of a sampled wave (configuration or phase grid). Composition
// normal-orders products with the per-axis rule
//
//   d^d (q^m f) = sum_r C(d,r) m!/(m-r)! q^{m-r} d^{d-r} f.
//
// poly_to_operator maps a polynomial symbol a(x,p) to the Weyl (fully
// symmetrized) operator under
//   Schroedinger:  x_j -> x_j,                p_j -> -i hbar d/dx_j
//   PhaseSpace:    x_j -> x_j/2 + i hbar d/dp_j,  p_j -> p_j/2 - i hbar d/dx_j
// using McCoy's identity Weyl(x^a p^b) = 2^{-a} sum_k C(a,k) X^k P^b X^{a-k},
// which factorizes over axes. Derivatives are applied spectrally, one
// forward FFT per application and one inverse FFT per distinct derivative
// multi-index.

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "phasespace/core.hpp"
#include "phasespace/fft.hpp"
#include "phasespace/poly.hpp"

namespace phasespace {

class GridOperator {
 public:
  using Key = std::vector<unsigned>;               // exponents per axis
  using TermKey = std::pair<Key, Key>;             // (gamma, delta)
  using TermMap = std::map<TermKey, Complex>;

  explicit GridOperator(std::size_t dims) : dims_(dims) {}

  static GridOperator identity(std::size_t dims) {
    GridOperator op(dims);
    op.terms_[{Key(dims, 0), Key(dims, 0)}] = Complex{1.0, 0.0};
    return op;
  }
  static GridOperator zero(std::size_t dims) { return GridOperator(dims); }
  static GridOperator coordinate(std::size_t dims, std::size_t axis, Complex c = {1.0, 0.0}) {
    GridOperator op(dims);
    Key g(dims, 0);
    g[axis] = 1;
    op.terms_[{g, Key(dims, 0)}] = c;
    return op;
  }
  static GridOperator derivative(std::size_t dims, std::size_t axis, Complex c = {1.0, 0.0}) {
    GridOperator op(dims);
    Key d(dims, 0);
    d[axis] = 1;
    op.terms_[{Key(dims, 0), d}] = c;
    return op;
  }

  std::size_t dims() const { return dims_; }
  const TermMap& terms() const { return terms_; }

  void add_term(const Key& gamma, const Key& delta, Complex c) {
    auto it = terms_.find({gamma, delta});
    if (it == terms_.end()) {
      if (c != Complex{0.0, 0.0}) terms_[{gamma, delta}] = c;
    } else {
      it->second += c;
      if (it->second == Complex{0.0, 0.0}) terms_.erase(it);
    }
  }

  GridOperator operator+(const GridOperator& o) const {
    require(dims_ == o.dims_, "GridOperator: dimension mismatch");
    GridOperator r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k.first, k.second, c);
    return r;
  }
  GridOperator scaled(Complex s) const {
    GridOperator r(dims_);
    if (s == Complex{0.0, 0.0}) return r;
    for (const auto& [k, c] : terms_) r.terms_[k] = c * s;
    return r;
  }

  // this o rhs (apply rhs first)
  GridOperator compose(const GridOperator& rhs) const {
    require(dims_ == rhs.dims_, "GridOperator::compose: dimension mismatch");
    GridOperator r(dims_);
    for (const auto& [ka, ca] : terms_) {
      const Key& g1 = ka.first;
      const Key& d1 = ka.second;
      for (const auto& [kb, cb] : rhs.terms_) {
        const Key& g2 = kb.first;
        const Key& d2 = kb.second;
        // normal-order d^{d1} q^{g2} axis by axis
        std::vector<std::pair<TermKey, double>> partial{{{Key(dims_, 0), Key(dims_, 0)}, 1.0}};
        for (std::size_t a = 0; a < dims_; ++a) {
          std::vector<std::pair<TermKey, double>> next;
          const unsigned d = d1[a], m = g2[a];
          for (unsigned rr = 0; rr <= std::min(d, m); ++rr) {
            double coef = 1.0;
            for (unsigned i = 0; i < rr; ++i)
              coef *= static_cast<double>(d - i) * static_cast<double>(m - i) /
                      static_cast<double>(i + 1);
            for (const auto& [tk, tc] : partial) {
              TermKey nk = tk;
              nk.first[a] = g1[a] + (m - rr);
              nk.second[a] = (d - rr) + d2[a];
              next.push_back({nk, tc * coef});
            }
          }
          partial = std::move(next);
        }
        for (const auto& [tk, tc] : partial) r.add_term(tk.first, tk.second, ca * cb * tc);
      }
    }
    return r;
  }

  GridOperator pow(unsigned k) const {
    GridOperator r = identity(dims_);
    for (unsigned i = 0; i < k; ++i) r = r.compose(*this);
    return r;
  }

  // Applies the operator to a sampled wave. One forward FFT; one inverse FFT
  // per distinct derivative multi-index.
  template <class Wave>
  Wave apply(const Wave& f) const {
    require(f.grid.size() == dims_, "GridOperator::apply: grid rank mismatch");
    const auto shape = grid_shape(f.grid);
    Wave out = f;
    for (auto& v : out.values) v = Complex{0.0, 0.0};
    if (terms_.empty()) return out;

    std::vector<Complex> spectrum = f.values;
    fftn(spectrum, shape, -1);

    // group terms by derivative multi-index
    std::map<Key, std::vector<std::pair<Key, Complex>>> by_delta;
    for (const auto& [k, c] : terms_) by_delta[k.second].push_back({k.first, c});

    // coordinate tables
    std::vector<std::vector<double>> coords(dims_);
    for (std::size_t a = 0; a < dims_; ++a) {
      coords[a].resize(shape[a]);
      for (std::size_t j = 0; j < shape[a]; ++j) coords[a][j] = f.grid[a].point(j);
    }

    std::vector<Complex> work;
    for (const auto& [delta, monos] : by_delta) {
      work = spectrum;
      bool any = false;
      for (std::size_t a = 0; a < dims_; ++a) any = any || delta[a] > 0;
      if (any) {
        std::vector<std::vector<Complex>> factors(dims_);
        for (std::size_t a = 0; a < dims_; ++a) {
          if (delta[a] == 0) continue;
          factors[a].resize(shape[a]);
          for (std::size_t m = 0; m < shape[a]; ++m) {
            if (m == shape[a] / 2 && delta[a] % 2 == 1) {
              factors[a][m] = Complex{0.0, 0.0};
              continue;
            }
            Complex ik{0.0, axis_freq(f.grid[a], m)};
            Complex fac{1.0, 0.0};
            for (unsigned o = 0; o < delta[a]; ++o) fac *= ik;
            factors[a][m] = fac;
          }
        }
        apply_axis_factors(work, shape, factors);
      }
      fftn(work, shape, +1);
      for_each_index(shape, [&](const std::vector<std::size_t>& idx, std::size_t flat) {
        Complex acc{0.0, 0.0};
        for (const auto& [gamma, c] : monos) {
          double mono = 1.0;
          for (std::size_t a = 0; a < dims_; ++a)
            for (unsigned e = 0; e < gamma[a]; ++e) mono *= coords[a][idx[a]];
          acc += c * mono;
        }
        out.values[flat] += acc * work[flat];
      });
    }
    return out;
  }

 private:
  std::size_t dims_;
  TermMap terms_;
};

// ---------------------------------------------------------------------------
// Weyl-ordered quantization of polynomial symbols
// ---------------------------------------------------------------------------

namespace detail {

inline double binomial(unsigned n, unsigned k) {
  double b = 1.0;
  for (unsigned i = 0; i < k; ++i)
    b *= static_cast<double>(n - i) / static_cast<double>(i + 1);
  return b;
}

// Weyl-ordered X^a P^b for one symbol axis, by McCoy's identity.
inline GridOperator weyl_monomial_1axis(const GridOperator& X, const GridOperator& P,
                                        unsigned a, unsigned b) {
  GridOperator sum = GridOperator::zero(X.dims());
  const GridOperator pb = P.pow(b);
  for (unsigned k = 0; k <= a; ++k) {
    GridOperator t = X.pow(k).compose(pb).compose(X.pow(a - k));
    sum = sum + t.scaled(Complex{binomial(a, k) / std::pow(2.0, a), 0.0});
  }
  return sum;
}

}  // namespace detail

// Exact differential-operator realization of the Weyl-ordered symbol on the
// chosen representation space (n grid axes for Schroedinger, 2n for
// PhaseSpace).
inline GridOperator poly_to_operator(const PolySymbol& a, RepLabel target) {
  const std::size_t n = a.dim_n();
  const double hbar = a.hbar();
  const std::size_t dims = target == RepLabel::Schroedinger ? n : 2 * n;

  // atoms per symbol axis j
  std::vector<GridOperator> X, P;
  for (std::size_t j = 0; j < n; ++j) {
    if (target == RepLabel::Schroedinger) {
      X.push_back(GridOperator::coordinate(dims, j));
      P.push_back(GridOperator::derivative(dims, j, Complex{0.0, -hbar}));
    } else {
      GridOperator xj = GridOperator::coordinate(dims, j, Complex{0.5, 0.0}) +
                        GridOperator::derivative(dims, n + j, Complex{0.0, hbar});
      GridOperator pj = GridOperator::coordinate(dims, n + j, Complex{0.5, 0.0}) +
                        GridOperator::derivative(dims, j, Complex{0.0, -hbar});
      X.push_back(xj);
      P.push_back(pj);
    }
  }

  GridOperator op = GridOperator::zero(dims);
  for (const auto& [key, coeff] : a.terms()) {
    GridOperator term = GridOperator::identity(dims);
    for (std::size_t j = 0; j < n; ++j) {
      const unsigned ax = key[j], bp = key[n + j];
      if (ax == 0 && bp == 0) continue;
      term = term.compose(detail::weyl_monomial_1axis(X[j], P[j], ax, bp));
    }
    op = op + term.scaled(coeff);
  }
  return op;
}

}  // namespace phasespace
