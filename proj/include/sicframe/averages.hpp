#pragma once

// Fubini-Study averages of f and f_H. Exact values come from closed forms or
// from a monomial-enumeration oracle; Monte Carlo estimates cross-check them.

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sicframe/framepot.hpp"
#include "sicframe/numcore.hpp"
#include "sicframe/subspace.hpp"

namespace sicframe {

enum class AverageMethod { Analytic, ExactOracle, MonteCarlo };

inline std::string_view to_string(AverageMethod m) {
  switch (m) {
    case AverageMethod::Analytic: return "analytic";
    case AverageMethod::ExactOracle: return "exact";
    case AverageMethod::MonteCarlo: return "mc";
  }
  return "analytic";
}

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long n_samples = 0;
  SeedPair seed;
};

struct AverageResult {
  double value = 0.0;
  std::optional<Rational> exact;
  AverageMethod method = AverageMethod::Analytic;
  SpaceLabel space = SpaceLabel::Full;
  int dim = 0;
  std::optional<McEstimate> mc;
};

inline AverageResult make_exact_result(const Rational& r, AverageMethod method, SpaceLabel space, int dim) {
  return {to_double(r), r, method, space, dim, std::nullopt};
}

// ---------------------------------------------------------------------------
// Closed forms

/// <f> = (N^2/2)(N-1)/(N+1).
inline AverageResult analytic_avg_f(int dim) {
  if (dim < 2) throw UnsupportedDimensionError("N must be >= 2");
  const Rational n = dim;
  return make_exact_result(n * n / 2 * (n - 1) / (n + 1), AverageMethod::Analytic, SpaceLabel::Full, dim);
}

/// Odd N: (N^2/2) N(N-1)/((N+2)(N+1)); even N: (N^2/2) N^2/((N+3)(N+1)).
inline AverageResult analytic_avg_fH(int dim) {
  if (dim < 2) throw UnsupportedDimensionError("N must be >= 2");
  const Rational n = dim;
  const Rational r = dim % 2 == 1 ? Rational(n * n / 2 * n * (n - 1) / ((n + 2) * (n + 1)))
                                  : Rational(n * n / 2 * n * n / ((n + 3) * (n + 1)));
  return make_exact_result(r, AverageMethod::Analytic, SpaceLabel::Full, dim);
}

/// Closed-form subspace averages. Covered cases: H+/H- for odd N > 3, H+ for
/// N = 3, and the three order-3 eigenspaces for N = 7.
inline AverageResult analytic_avg_fH_subspace(SpaceLabel label, int dim) {
  if (label == SpaceLabel::Full) return analytic_avg_fH(dim);
  const Rational n = dim;
  std::optional<Rational> r;
  switch (label) {
    case SpaceLabel::HPlus:
    case SpaceLabel::HMinus:
      if (dim > 3 && dim % 2 == 1) {
        r = n * n * n * (n - 1) / ((n + 3) * (n + 1));
      } else if (dim == 3 && label == SpaceLabel::HPlus) {
        r = Rational(81, 40);
      }
      break;
    case SpaceLabel::Zauner1:
      if (dim == 7) r = Rational(151 * 343, 5 * 81 * 8);
      break;
    case SpaceLabel::ZaunerAlpha:
    case SpaceLabel::ZaunerAlphaSq:
      if (dim == 7) r = Rational(37 * 343, 5 * 27 * 8);
      break;
    default:
      break;
  }
  if (!r) {
    throw NotTabulatedError("no closed form for space " + std::string(to_string(label)) + " at N = " +
                            std::to_string(dim) + "; use the exact method");
  }
  return make_exact_result(*r, AverageMethod::Analytic, label, dim);
}

/// <f> from the single-overlap reduction N^2(N^2-1)/2 <(t - 1/(N+1))^2>,
/// t = |Z_0|^2, with <t> and <t^2> taken from fs_moment.
inline AverageResult moment_avg_f(int dim) {
  if (dim < 2) throw UnsupportedDimensionError("N must be >= 2");
  const Rational n = dim;
  const Rational t1 = fs_moment({dim, {1}});
  const Rational t2 = fs_moment({dim, {2}});
  const Rational c = Rational(1) / (n + 1);
  const Rational spread = t2 - 2 * c * t1 + c * c;
  return make_exact_result(n * n * (n * n - 1) / 2 * spread, AverageMethod::ExactOracle, SpaceLabel::Full, dim);
}

// ---------------------------------------------------------------------------
// Monomial expansion of Sigma = sum_{i,k} |S_ik|^2

/// One term of |S_ik|^2 = sum_{a,b} S_ik(a) conj(S_ik(b)):
///   Z_{a+k} Z_{a-i} Z_b Z_{b+k-i} * conj(Z_a Z_{a+k-i} Z_{b+k} Z_{b-i}).
struct SigmaTerm {
  std::array<int, 4> z;
  std::array<int, 4> zbar;
};

/// prod_a Z_a^{m_a} conj(Z_a)^{n_a} with a scalar coefficient.
struct MonomialPattern {
  std::map<int, int> z_exponents;
  std::map<int, int> zbar_exponents;
  Complex coefficient = 1.0;

  bool phase_balanced() const { return z_exponents == zbar_exponents; }
};

inline MonomialPattern to_pattern(const SigmaTerm& t) {
  MonomialPattern p;
  for (int a : t.z) ++p.z_exponents[a];
  for (int a : t.zbar) ++p.zbar_exponents[a];
  return p;
}

/// Visits every term with first index fixed to `i`, in (k, a, b) order.
template <class Visit>
void for_each_sigma_term(int dim, int i, Visit&& visit) {
  const int n = dim;
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        visit(SigmaTerm{{mod(a + k, n), mod(a - i, n), b, mod(b + k - i, n)},
                        {a, mod(a + k - i, n), mod(b + k, n), mod(b - i, n)}});
      }
    }
  }
}

template <class Visit>
void for_each_sigma_term(int dim, Visit&& visit) {
  for (int i = 0; i < dim; ++i) for_each_sigma_term(dim, i, visit);
}

namespace detail {

inline SubspaceEmbedding identity_embedding(int dim) {
  std::vector<SubspaceEmbedding::Row> rows(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) rows[static_cast<std::size_t>(a)] = EmbeddingRow{a, 1, 0};
  return SubspaceEmbedding(dim, dim, std::move(rows), SpaceLabel::Full);
}

/// Result of substituting Z_a = c_a x_col(a) into one sigma term.
struct Substituted {
  bool vanishes = false;   // a row hit the zero part of the embedding
  bool balanced = false;   // x and conj(x) exponents agree column by column
  std::vector<int> exponents;  // per column, valid when balanced
  Rational modulus_sq = 1;     // product of |c|^2 over all eight factors
  int phase6 = 0;
};

inline Substituted substitute(const SubspaceEmbedding& e, const SigmaTerm& t) {
  Substituted out;
  Substituted zero;
  zero.vanishes = true;
  const auto d = static_cast<std::size_t>(e.sub_dim());
  std::vector<int> zc(d, 0), zbc(d, 0);
  for (int a : t.z) {
    const auto& row = e.rows()[static_cast<std::size_t>(a)];
    if (!row) return zero;
    ++zc[static_cast<std::size_t>(row->column)];
    out.modulus_sq *= row->modulus_sq;
    out.phase6 += row->phase6;
  }
  for (int a : t.zbar) {
    const auto& row = e.rows()[static_cast<std::size_t>(a)];
    if (!row) return zero;
    ++zbc[static_cast<std::size_t>(row->column)];
    out.modulus_sq *= row->modulus_sq;
    out.phase6 -= row->phase6;
  }
  out.phase6 = mod(out.phase6, 6);
  out.balanced = zc == zbc;
  out.exponents = std::move(zc);
  return out;
}

inline bool exact_sqrt(const Rational& r, Rational& root) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  root = Rational(rn, rd);
  return true;
}

/// Exact <Sigma> restricted to the block of first index i, split by the
/// power of zeta = exp(i pi / 3) carried by each term.
inline std::array<Rational, 6> sigma_block(const SubspaceEmbedding& e, int i,
                                           std::map<std::vector<int>, Rational>& moment_cache) {
  std::array<Rational, 6> acc{};
  for_each_sigma_term(e.ambient_dim(), i, [&](const SigmaTerm& t) {
    auto s = substitute(e, t);
    if (s.vanishes || !s.balanced) return;
    Rational magnitude;
    if (!exact_sqrt(s.modulus_sq, magnitude)) {
      throw UnsupportedSubspaceError("embedding coefficients do not give a rational term magnitude");
    }
    auto it = moment_cache.find(s.exponents);
    if (it == moment_cache.end()) {
      it = moment_cache.emplace(s.exponents, fs_moment({e.sub_dim(), s.exponents})).first;
    }
    acc[static_cast<std::size_t>(s.phase6)] += magnitude * it->second;
  });
  return acc;
}

}  // namespace detail

/// Exact <Sigma> in Q(alpha) over the full space (space == nullptr) or a
/// monomial subspace. Blocks are reduced in index order, so the result does
/// not depend on `threads`.
inline QAlpha exact_avg_sigma(int dim, const SubspaceEmbedding* space, unsigned threads = 1) {
  if (dim < 2) throw UnsupportedDimensionError("N must be >= 2");
  const SubspaceEmbedding e = space ? *space : detail::identity_embedding(dim);
  if (e.ambient_dim() != dim) throw DimensionError(dim_mismatch(e.ambient_dim(), dim));

  std::vector<std::array<Rational, 6>> blocks(static_cast<std::size_t>(dim));
  parallel_for(static_cast<std::size_t>(dim), threads, [&](std::size_t i) {
    std::map<std::vector<int>, Rational> cache;
    blocks[i] = detail::sigma_block(e, static_cast<int>(i), cache);
  });

  QAlpha total;
  for (const auto& block : blocks) {
    for (int p = 0; p < 6; ++p) total += block[static_cast<std::size_t>(p)] * QAlpha::zeta6(p);
  }
  return total;
}

/// Exact <f_H> = (N^3/2)(<Sigma> - 2/(N+1)).
inline AverageResult exact_avg_fH(int dim, const SubspaceEmbedding* space = nullptr, unsigned threads = 1) {
  const QAlpha sigma = exact_avg_sigma(dim, space, threads);
  if (!sigma.is_rational()) {
    throw Error("exact average has a non-rational alpha component: " + to_string(sigma.b));
  }
  const Rational n = dim;
  const Rational r = n * n * n / 2 * (sigma.a - Rational(2) / (n + 1));
  return make_exact_result(r, AverageMethod::ExactOracle, space ? space->label() : SpaceLabel::Full, dim);
}

inline AverageResult exact_avg_fH(int dim, const std::optional<SubspaceEmbedding>& space, unsigned threads = 1) {
  return exact_avg_fH(dim, space ? &*space : nullptr, threads);
}

/// Number of surviving (phase-balanced) terms of Sigma, keyed by the sorted
/// exponent signature, e.g. {2,1,1} for |Z_1|^4 |Z_2|^2 |Z_3|^2.
inline std::map<std::vector<int>, long> pattern_type_counts(int dim, const SubspaceEmbedding* space = nullptr) {
  const SubspaceEmbedding e = space ? *space : detail::identity_embedding(dim);
  std::map<std::vector<int>, long> counts;
  for_each_sigma_term(dim, [&](const SigmaTerm& t) {
    auto s = detail::substitute(e, t);
    if (s.vanishes || !s.balanced) return;
    std::vector<int> sig;
    for (int m : s.exponents) {
      if (m > 0) sig.push_back(m);
    }
    std::sort(sig.rbegin(), sig.rend());
    ++counts[sig];
  });
  return counts;
}

// ---------------------------------------------------------------------------
// Monte Carlo

/// Samples per shard. Shards, not threads, own RNG streams: shard k uses
/// stream k, and shard statistics are merged in shard order.
inline constexpr long kMcShardSize = 4096;

/// Generic sharded estimator of E[sample(rng)].
template <class Sample>
McEstimate mc_estimate(long n_samples, std::uint64_t seed, unsigned threads, Sample&& sample) {
  if (n_samples < 2) throw Error("Monte Carlo needs at least 2 samples");
  const long n_shards = (n_samples + kMcShardSize - 1) / kMcShardSize;
  struct Moments {
    long n = 0;
    double mean = 0.0;
    double m2 = 0.0;
  };
  std::vector<Moments> shards(static_cast<std::size_t>(n_shards));
  parallel_for(static_cast<std::size_t>(n_shards), threads, [&](std::size_t k) {
    RngStream rng(seed, k);
    const long begin = static_cast<long>(k) * kMcShardSize;
    const long count = std::min(kMcShardSize, n_samples - begin);
    Moments m;
    for (long s = 0; s < count; ++s) {
      const double x = sample(rng);
      ++m.n;
      const double delta = x - m.mean;
      m.mean += delta / m.n;
      m.m2 += delta * (x - m.mean);
    }
    shards[k] = m;
  });

  Moments total;
  for (const auto& m : shards) {
    if (m.n == 0) continue;
    const long n = total.n + m.n;
    const double delta = m.mean - total.mean;
    total.mean += delta * m.n / n;
    total.m2 += m.m2 + delta * delta * static_cast<double>(total.n) * m.n / n;
    total.n = n;
  }
  const double variance = total.m2 / static_cast<double>(total.n - 1);
  return {total.mean, std::sqrt(variance / static_cast<double>(total.n)), total.n, {seed, 0}};
}

/// Monte Carlo <f_H> over the full space or a subspace.
inline McEstimate mc_avg(int dim, const SubspaceEmbedding* space, long n_samples, std::uint64_t seed,
                         unsigned threads = 1) {
  if (n_samples < 100) throw Error("mc_avg needs at least 100 samples");
  if (dim < 2) throw UnsupportedDimensionError("N must be >= 2");
  if (space && space->ambient_dim() != dim) throw DimensionError(dim_mismatch(space->ambient_dim(), dim));
  return mc_estimate(n_samples, seed, threads, [&](RngStream& rng) {
    const CVector psi = space ? sample_subspace(*space, rng) : sample_fs(dim, rng);
    return f_H_fast(psi);
  });
}

inline McEstimate mc_avg(int dim, const std::optional<SubspaceEmbedding>& space, long n_samples,
                         std::uint64_t seed, unsigned threads = 1) {
  return mc_avg(dim, space ? &*space : nullptr, n_samples, seed, threads);
}

/// Monte Carlo <f> via N^2(N^2-1)/2 <(|<e_0|psi>|^2 - 1/(N+1))^2>.
inline McEstimate mc_avg_f(int dim, long n_samples, std::uint64_t seed, unsigned threads = 1) {
  if (n_samples < 100) throw Error("mc_avg_f needs at least 100 samples");
  if (dim < 2) throw UnsupportedDimensionError("N must be >= 2");
  const double n = dim;
  const double scale = n * n * (n * n - 1) / 2;
  return mc_estimate(n_samples, seed, threads, [&](RngStream& rng) {
    const CVector psi = sample_fs(dim, rng);
    const double d = std::norm(psi(0)) - 1.0 / (n + 1);
    return scale * d * d;
  });
}

inline AverageResult to_result(const McEstimate& est, SpaceLabel space, int dim) {
  return {est.mean, std::nullopt, AverageMethod::MonteCarlo, space, dim, est};
}

}  // namespace sicframe
