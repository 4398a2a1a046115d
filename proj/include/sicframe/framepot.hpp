#pragma once

// Frame potentials F1, F2, the SIC distance f of an arbitrary N^2-vector set,
// and f_H for Weyl-Heisenberg orbits (direct and reduced forms).

#include <span>
#include <vector>

#include "sicframe/heisenberg.hpp"
#include "sicframe/numcore.hpp"

namespace sicframe {

struct FrameReport {
  double f1 = 0.0;
  double f2 = 0.0;
  double f = 0.0;
  int n_vectors = 0;
  int dim = 0;
};

namespace detail {

inline int common_dim(std::span<const CVector> vectors) {
  if (vectors.empty()) throw CountError("empty vector set");
  const auto dim = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw DimensionError(dim_mismatch(v.size(), dim));
  }
  return static_cast<int>(dim);
}

inline void require_sic_count(std::span<const CVector> vectors, int dim) {
  const auto expected = static_cast<std::size_t>(dim) * dim;
  if (vectors.size() != expected) {
    throw CountError("expected N^2 = " + std::to_string(expected) + " vectors, got " +
                     std::to_string(vectors.size()));
  }
}

}  // namespace detail

/// F_t = sum_{I,J} |<psi_I|psi_J>|^{2t}, diagonal included. t must be 1 or 2.
inline double frame_potential(std::span<const CVector> vectors, int t) {
  if (t != 1 && t != 2) throw UnsupportedError("frame potential order must be 1 or 2");
  detail::common_dim(vectors);
  double sum = 0.0;
  for (std::size_t p = 0; p < vectors.size(); ++p) {
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      const double o = std::norm(inner(vectors[p], vectors[r]));
      sum += t == 1 ? o : o * o;
    }
  }
  return sum;
}

/// f = 1/2 sum_{I != J} (|<psi_I|psi_J>|^2 - 1/(N+1))^2 for N^2 vectors in C^N.
inline double f_general(std::span<const CVector> vectors) {
  const int n = detail::common_dim(vectors);
  detail::require_sic_count(vectors, n);
  const double target = 1.0 / (n + 1);
  double sum = 0.0;
  for (std::size_t p = 0; p < vectors.size(); ++p) {
    for (std::size_t r = 0; r < vectors.size(); ++r) {
      if (p == r) continue;
      const double d = std::norm(inner(vectors[p], vectors[r])) - target;
      sum += d * d;
    }
  }
  return 0.5 * sum;
}

inline FrameReport frame_report(std::span<const CVector> vectors) {
  FrameReport rep;
  rep.dim = detail::common_dim(vectors);
  rep.n_vectors = static_cast<int>(vectors.size());
  rep.f1 = frame_potential(vectors, 1);
  rep.f2 = frame_potential(vectors, 2);
  rep.f = f_general(vectors);
  return rep;
}

/// f_H from its definition: (N^2/2) sum_{(i,j) != (0,0)} (|<psi0|D_ij psi0>|^2 - 1/(N+1))^2.
inline double f_H_direct(const HWGroup& g, const CVector& fiducial) {
  if (fiducial.size() != g.dim()) throw DimensionError(dim_mismatch(fiducial.size(), g.dim()));
  const CVector psi = require_unit(fiducial);
  const int n = g.dim();
  const double target = 1.0 / (n + 1);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == 0 && j == 0) continue;
      const double d = std::norm(inner(psi, g.apply({i, j}, psi))) - target;
      sum += d * d;
    }
  }
  return 0.5 * n * n * sum;
}

namespace detail {

/// S_ik = sum_a conj(Z_a) conj(Z_{a+k-i}) Z_{a+k} Z_{a-i}, row-major in (i, k).
inline std::vector<Complex> reduced_sums(const CVector& z) {
  const int n = static_cast<int>(z.size());
  std::vector<Complex> s(static_cast<std::size_t>(n) * n);
  const CVector zc = z.conjugate();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      Complex acc = 0.0;
      for (int a = 0; a < n; ++a) {
        acc += zc(a) * zc(mod(a + k - i, n)) * z(mod(a + k, n)) * z(mod(a - i, n));
      }
      s[static_cast<std::size_t>(i) * n + k] = acc;
    }
  }
  return s;
}

}  // namespace detail

/// f_H = (N^3/2)(sum_{i,k} |S_ik|^2 - 2/(N+1)), O(N^3).
inline double f_H_fast(const CVector& fiducial) {
  const CVector z = require_unit(fiducial);
  const int n = static_cast<int>(z.size());
  double sigma = 0.0;
  for (const Complex& s : detail::reduced_sums(z)) sigma += std::norm(s);
  return 0.5 * n * n * n * (sigma - 2.0 / (n + 1));
}

/// Wirtinger gradient dF/dconj(Z_c) of the reduced form, Z and conj(Z)
/// independent. The real gradient on R^{2N} is 2*(Re g, Im g).
/// No unit-norm check: the search evaluates it slightly off the sphere.
inline CVector f_H_gradient(const CVector& z) {
  const int n = static_cast<int>(z.size());
  if (n < 1) throw DimensionError("empty fiducial");
  const auto s = detail::reduced_sums(z);
  const CVector zc = z.conjugate();
  CVector grad = CVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex sik = s[static_cast<std::size_t>(i) * n + k];
      const Complex sik_c = std::conj(sik);
      for (int c = 0; c < n; ++c) {
        const Complex ds = zc(mod(c + k - i, n)) * z(mod(c + k, n)) * z(mod(c - i, n)) +
                           zc(mod(c - k + i, n)) * z(mod(c + i, n)) * z(mod(c - k, n));
        const Complex ds_c = z(mod(c - k, n)) * z(mod(c - i, n)) * zc(mod(c - k - i, n)) +
                             z(mod(c + i, n)) * z(mod(c + k, n)) * zc(mod(c + i + k, n));
        grad(c) += ds * sik_c + sik * ds_c;
      }
    }
  }
  return 0.5 * n * n * n * grad;
}

/// Component of a real gradient direction tangent to the unit sphere at psi.
inline CVector tangent_projection(const CVector& psi, const CVector& v) {
  return v - real_inner(psi, v) * psi;
}

/// Riemannian gradient of f_H on the unit sphere of R^{2N}.
inline CVector f_H_tangent_gradient(const CVector& psi) {
  return tangent_projection(psi, 2.0 * f_H_gradient(psi));
}

}  // namespace sicframe
