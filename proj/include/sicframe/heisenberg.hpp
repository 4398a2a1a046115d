#pragma once

#include <string>
#include <vector>

#include "sicframe/numcore.hpp"

namespace sicframe {

/// Group label (i, j) of D_ij = tau^i sigma^j. Arithmetic is mod N.
struct OrbitIndex {
  int i = 0;
  int j = 0;
  bool operator==(const OrbitIndex&) const = default;
};

/// Weyl-Heisenberg group in dimension N: clock sigma|a> = q^a|a>, shift
/// tau|a> = |a+1>, q = exp(2 pi i / N).
class HWGroup {
 public:
  explicit HWGroup(int dim) : dim_(dim) {
    if (dim < 2) throw UnsupportedDimensionError("HWGroup: dimension must be >= 2");
    sigma_ = CMatrix::Zero(dim, dim);
    tau_ = CMatrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) {
      sigma_(a, a) = root_of_unity(a, dim);
      tau_(mod(a + 1, dim), a) = 1.0;
    }
  }

  int dim() const { return dim_; }
  Complex q() const { return root_of_unity(1, dim_); }
  const CMatrix& sigma() const { return sigma_; }
  const CMatrix& tau() const { return tau_; }

  OrbitIndex reduce(OrbitIndex idx) const { return {mod(idx.i, dim_), mod(idx.j, dim_)}; }

  /// Row-major position of (i, j) in an orbit.
  int linear(OrbitIndex idx) const {
    const auto r = reduce(idx);
    return r.i * dim_ + r.j;
  }

  /// (D_ij psi)_a = q^{(a-i) j} psi_{a-i}, without forming the matrix.
  CVector apply(OrbitIndex idx, const CVector& psi) const {
    if (psi.size() != dim_) throw DimensionError(dim_mismatch(psi.size(), dim_));
    const auto [i, j] = reduce(idx);
    CVector out(dim_);
    for (int a = 0; a < dim_; ++a) {
      const int b = mod(a - i, dim_);
      out(a) = root_of_unity(static_cast<std::int64_t>(b) * j, dim_) * psi(b);
    }
    return out;
  }

 private:
  int dim_;
  CMatrix sigma_;
  CMatrix tau_;
};

/// D_ij = tau^i sigma^j, with no additional phase convention.
inline CMatrix displacement(const HWGroup& g, OrbitIndex idx) {
  const int n = g.dim();
  const auto [i, j] = g.reduce(idx);
  CMatrix d = CMatrix::Zero(n, n);
  for (int b = 0; b < n; ++b) {
    d(mod(b + i, n), b) = root_of_unity(static_cast<std::int64_t>(b) * j, n);
  }
  return d;
}

/// All N^2 vectors D_ij |psi0>, row-major in (i, j).
inline std::vector<CVector> orbit(const HWGroup& g, const CVector& fiducial) {
  if (fiducial.size() != g.dim()) throw DimensionError(dim_mismatch(fiducial.size(), g.dim()));
  const CVector psi = require_unit(fiducial);
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(g.dim()) * g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = 0; j < g.dim(); ++j) out.push_back(g.apply({i, j}, psi));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Clifford elements

enum class CliffordKind { Parity, ZaunerPermutation7 };

struct CliffordElement {
  int dim = 0;
  CMatrix matrix;
  int order = 1;
  CliffordKind kind = CliffordKind::Parity;
};

inline CMatrix permutation_matrix(int dim, auto&& image) {
  CMatrix p = CMatrix::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) p(image(a), a) = 1.0;
  return p;
}

/// Parity A|a> = |-a mod N> for odd N. Its +1/-1 eigenspaces have
/// dimensions n and n-1 where N = 2n-1.
inline CliffordElement parity_operator(int dim) {
  if (dim < 3 || dim % 2 == 0) {
    throw UnsupportedDimensionError("parity operator needs odd N >= 3, got " + std::to_string(dim));
  }
  return {dim, permutation_matrix(dim, [dim](int a) { return mod(-a, dim); }), 2, CliffordKind::Parity};
}

/// Order-3 permutation U|a> = |2a mod 7> in dimension 7.
inline CliffordElement zauner7_operator() {
  return {7, permutation_matrix(7, [](int a) { return mod(2 * a, 7); }), 3,
          CliffordKind::ZaunerPermutation7};
}

/// Finds the displacement that U D_ij U^dag is proportional to. Returns false
/// if no D_kl matches, i.e. |tr(D_kl^dag V)| != N for every (k, l).
inline bool conjugated_index(const HWGroup& g, const CMatrix& u, OrbitIndex idx, OrbitIndex& out,
                             double tol = 1e-10) {
  const CMatrix v = u * displacement(g, idx) * u.adjoint();
  const double n = g.dim();
  for (int k = 0; k < g.dim(); ++k) {
    for (int l = 0; l < g.dim(); ++l) {
      const Complex overlap = (displacement(g, {k, l}).adjoint() * v).trace();
      if (std::abs(std::abs(overlap) - n) <= tol * n) {
        out = {k, l};
        return true;
      }
    }
  }
  return false;
}

}  // namespace sicframe
