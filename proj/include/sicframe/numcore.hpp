#pragma once

// Dense complex vectors, Fubini-Study sampling, exact moments and the small
// amount of threading shared by the rest of the library.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "sicframe/errors.hpp"

namespace sicframe {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Tolerance for accepting a vector as unit length.
inline constexpr double kUnitTolerance = 1e-12;

inline std::string dim_mismatch(Eigen::Index a, Eigen::Index b) {
  return "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b);
}

/// <u|v> = sum_a conj(u_a) v_a
inline Complex inner(const CVector& u, const CVector& v) {
  if (u.size() != v.size()) throw DimensionError(dim_mismatch(u.size(), v.size()));
  return u.dot(v);  // Eigen conjugates the left operand
}

/// Real part of <u|v>: the Euclidean inner product on R^{2N}.
inline double real_inner(const CVector& u, const CVector& v) {
  return inner(u, v).real();
}

inline bool is_unit(const CVector& v, double tol = kUnitTolerance) {
  return std::abs(v.squaredNorm() - 1.0) <= tol;
}

/// Returns v rescaled to unit norm. Throws NormError when v is further than
/// `tol` from the unit sphere; anything inside the tolerance is renormalized.
inline CVector require_unit(const CVector& v, double tol = kUnitTolerance) {
  if (v.size() == 0) throw DimensionError("empty vector");
  const double n2 = v.squaredNorm();
  if (!(std::abs(n2 - 1.0) <= tol)) {
    throw NormError("vector is not unit: |v|^2 = " + std::to_string(n2));
  }
  return v / std::sqrt(n2);
}

inline CVector basis_vector(Eigen::Index dim, Eigen::Index a) {
  CVector e = CVector::Zero(dim);
  e(a) = 1.0;
  return e;
}

inline Complex root_of_unity(std::int64_t k, std::int64_t n) {
  const std::int64_t r = ((k % n) + n) % n;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n));
}

inline constexpr int mod(int a, int n) { return ((a % n) + n) % n; }

// ---------------------------------------------------------------------------
// Random streams

struct SeedPair {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  bool operator==(const SeedPair&) const = default;
};

/// Independently seeded pseudo-random stream. Each worker owns one; the pair
/// (seed, stream) fully determines the sequence.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) : ids_{seed, stream} {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x5eed5eedu};
    engine_.seed(seq);
  }

  double gaussian() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  SeedPair ids() const { return ids_; }

 private:
  SeedPair ids_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Fubini-Study random unit vector: 2*dim standard normals taken as real and
/// imaginary parts, then normalized.
inline CVector sample_fs(Eigen::Index dim, RngStream& rng) {
  if (dim < 1) throw DimensionError("sample_fs: dim must be >= 1");
  CVector v(dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    v(a) = Complex(re, im);
  }
  const double n = v.norm();
  if (n == 0.0) return basis_vector(dim, 0);
  return v / n;
}

// ---------------------------------------------------------------------------
// Exact moments

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "p/q" in lowest terms; integers print as "p/1".
inline std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

/// Key of a Fubini-Study moment <prod_a |Z_a|^{2 m_a}> in dimension `dim`.
/// Exponents beyond the end of the list are zero.
struct MomentKey {
  int dim = 1;
  std::vector<int> exponents;

  int total_degree() const {
    int m = 0;
    for (int e : exponents) m += e;
    return m;
  }
};

/// <prod_a |Z_a|^{2 m_a}>_FS = (d-1)! prod_a m_a! / (d-1+M)!, M = sum m_a.
inline Rational fs_moment(const MomentKey& key) {
  if (key.dim < 1) throw DimensionError("fs_moment: dim must be >= 1");
  if (static_cast<int>(key.exponents.size()) > key.dim) {
    // Only trailing zeros may exceed the dimension.
    for (std::size_t a = static_cast<std::size_t>(key.dim); a < key.exponents.size(); ++a) {
      if (key.exponents[a] != 0) throw DimensionError("fs_moment: more exponents than dim");
    }
  }
  BigInt num = factorial(static_cast<unsigned>(key.dim - 1));
  for (int e : key.exponents) {
    if (e < 0) throw DimensionError("fs_moment: negative exponent");
    num *= factorial(static_cast<unsigned>(e));
  }
  const BigInt den = factorial(static_cast<unsigned>(key.dim - 1 + key.total_degree()));
  return Rational(num, den);
}

// ---------------------------------------------------------------------------
// Q(alpha), alpha = exp(2 pi i / 3)

/// Element a + b*alpha of the cyclotomic field Q(alpha), alpha^2 = -1 - alpha.
struct QAlpha {
  Rational a = 0;
  Rational b = 0;

  static QAlpha alpha() { return {0, 1}; }

  /// zeta^k for zeta = exp(i pi / 3) = 1 + alpha.
  static QAlpha zeta6(int k) {
    switch (mod(k, 6)) {
      case 0: return {1, 0};
      case 1: return {1, 1};
      case 2: return {0, 1};
      case 3: return {-1, 0};
      case 4: return {-1, -1};
      default: return {0, -1};
    }
  }

  QAlpha& operator+=(const QAlpha& o) {
    a += o.a;
    b += o.b;
    return *this;
  }
  friend QAlpha operator+(QAlpha x, const QAlpha& y) { return x += y; }
  friend QAlpha operator*(const QAlpha& x, const QAlpha& y) {
    // (a + b al)(c + d al) = ac + (ad + bc) al + bd al^2, al^2 = -1 - al
    const Rational bd = x.b * y.b;
    return {x.a * y.a - bd, x.a * y.b + x.b * y.a - bd};
  }
  friend QAlpha operator*(const Rational& s, const QAlpha& x) { return {s * x.a, s * x.b}; }
  bool operator==(const QAlpha&) const = default;

  bool is_rational() const { return b == 0; }

  Complex to_complex() const {
    const Complex al = root_of_unity(1, 3);
    return to_double(a) + to_double(b) * al;
  }
};

// ---------------------------------------------------------------------------
// Threading

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs task(k) for k in [0, n_tasks) on up to `threads` workers. Tasks are
/// claimed dynamically; callers write into per-task slots so results never
/// depend on scheduling.
template <class Task>
void parallel_for(std::size_t n_tasks, unsigned threads, Task&& task) {
  const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(n_tasks, 1));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n_tasks; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t k = next++; k < n_tasks; k = next++) task(k);
      } catch (...) {
        errors[w] = std::current_exception();
        next = n_tasks;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace sicframe
