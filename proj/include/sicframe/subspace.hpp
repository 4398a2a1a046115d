#pragma once

// Monomial isometric embeddings C^d -> C^N of Clifford eigenspaces.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sicframe/numcore.hpp"

namespace sicframe {

enum class SpaceLabel { Full, HPlus, HMinus, Zauner1, ZaunerAlpha, ZaunerAlphaSq, Custom };

inline std::string_view to_string(SpaceLabel label) {
  switch (label) {
    case SpaceLabel::Full: return "full";
    case SpaceLabel::HPlus: return "hplus";
    case SpaceLabel::HMinus: return "hminus";
    case SpaceLabel::Zauner1: return "zauner1";
    case SpaceLabel::ZaunerAlpha: return "zauner-alpha";
    case SpaceLabel::ZaunerAlphaSq: return "zauner-alpha2";
    case SpaceLabel::Custom: return "custom";
  }
  return "custom";
}

inline std::optional<SpaceLabel> parse_space_label(std::string_view s) {
  for (auto l : {SpaceLabel::Full, SpaceLabel::HPlus, SpaceLabel::HMinus, SpaceLabel::Zauner1,
                 SpaceLabel::ZaunerAlpha, SpaceLabel::ZaunerAlphaSq}) {
    if (s == to_string(l)) return l;
  }
  return std::nullopt;
}

/// One nonzero row of an embedding: Z_row = sqrt(modulus_sq) * zeta^phase6 * x_column,
/// zeta = exp(i pi / 3). Keeping the coefficient in this form lets averages be
/// computed exactly in Q(alpha).
struct EmbeddingRow {
  int column = 0;
  Rational modulus_sq = 1;
  int phase6 = 0;

  Complex coefficient() const {
    return std::sqrt(to_double(modulus_sq)) * root_of_unity(phase6, 6);
  }
};

class SubspaceEmbedding {
 public:
  using Row = std::optional<EmbeddingRow>;

  /// Validates the isometry E^dag E = I exactly: every column receives total
  /// weight 1. Off-diagonal entries vanish because each row is monomial.
  SubspaceEmbedding(int ambient_dim, int sub_dim, std::vector<Row> rows, SpaceLabel label)
      : ambient_dim_(ambient_dim), sub_dim_(sub_dim), rows_(std::move(rows)), label_(label) {
    if (sub_dim < 1 || ambient_dim < sub_dim) throw DimensionError("invalid embedding dimensions");
    if (static_cast<int>(rows_.size()) != ambient_dim) {
      throw DimensionError("embedding needs one row per ambient coordinate");
    }
    std::vector<Rational> weight(static_cast<std::size_t>(sub_dim), Rational(0));
    for (const auto& row : rows_) {
      if (!row) continue;
      if (row->column < 0 || row->column >= sub_dim) throw DimensionError("row column out of range");
      if (row->modulus_sq <= 0) throw UnsupportedSubspaceError("row coefficient must be nonzero");
      weight[static_cast<std::size_t>(row->column)] += row->modulus_sq;
    }
    for (const auto& w : weight) {
      if (w != 1) throw UnsupportedSubspaceError("embedding is not an isometry");
    }
  }

  int ambient_dim() const { return ambient_dim_; }
  int sub_dim() const { return sub_dim_; }
  SpaceLabel label() const { return label_; }
  const std::vector<Row>& rows() const { return rows_; }

  CMatrix matrix() const {
    CMatrix e = CMatrix::Zero(ambient_dim_, sub_dim_);
    for (int a = 0; a < ambient_dim_; ++a) {
      if (const auto& row = rows_[static_cast<std::size_t>(a)]) e(a, row->column) = row->coefficient();
    }
    return e;
  }

 private:
  int ambient_dim_;
  int sub_dim_;
  std::vector<Row> rows_;
  SpaceLabel label_;
};

/// Parity eigenspaces for odd N = 2n-1:
///   H+ : Z_0 = x_0, Z_k = Z_{N-k} = x_k / sqrt2       (dim n)
///   H- : Z_0 = 0,   Z_k = -Z_{N-k} = x_k / sqrt2      (dim n-1)
/// In H- the coordinate x_k is stored at column k-1.
inline std::pair<SubspaceEmbedding, SubspaceEmbedding> build_parity_subspaces(int dim) {
  if (dim < 3 || dim % 2 == 0) {
    throw UnsupportedDimensionError("parity subspaces need odd N >= 3, got " + std::to_string(dim));
  }
  const int n = (dim + 1) / 2;
  const Rational half(1, 2);
  std::vector<SubspaceEmbedding::Row> plus(static_cast<std::size_t>(dim));
  std::vector<SubspaceEmbedding::Row> minus(static_cast<std::size_t>(dim));
  plus[0] = EmbeddingRow{0, 1, 0};
  for (int k = 1; k < n; ++k) {
    plus[static_cast<std::size_t>(k)] = EmbeddingRow{k, half, 0};
    plus[static_cast<std::size_t>(dim - k)] = EmbeddingRow{k, half, 0};
    minus[static_cast<std::size_t>(k)] = EmbeddingRow{k - 1, half, 0};
    minus[static_cast<std::size_t>(dim - k)] = EmbeddingRow{k - 1, half, 3};
  }
  return {SubspaceEmbedding(dim, n, std::move(plus), SpaceLabel::HPlus),
          SubspaceEmbedding(dim, n - 1, std::move(minus), SpaceLabel::HMinus)};
}

/// Eigenspaces of U|a> = |2a mod 7> for eigenvalues 1, alpha, alpha^2 with
/// alpha = exp(2 pi i / 3):
///   H_1     : (sqrt3 x0, x1, x1, x2, x1, x2, x2) / sqrt3
///   H_alpha : (0, x1, al^2 x1, x2, al x1, al x2, al^2 x2) / sqrt3
///   H_al^2  : complex conjugate of H_alpha
struct Zauner7Subspaces {
  SubspaceEmbedding one;
  SubspaceEmbedding alpha;
  SubspaceEmbedding alpha_sq;
};

inline Zauner7Subspaces build_zauner7_subspaces() {
  const Rational third(1, 3);
  // alpha^k = zeta^{2k}
  auto row = [&](int col, int alpha_power) { return EmbeddingRow{col, third, mod(2 * alpha_power, 6)}; };

  std::vector<SubspaceEmbedding::Row> one(7), al(7), al2(7);
  one[0] = EmbeddingRow{0, 1, 0};
  for (int a : {1, 2, 4}) one[static_cast<std::size_t>(a)] = row(1, 0);
  for (int a : {3, 5, 6}) one[static_cast<std::size_t>(a)] = row(2, 0);

  const std::array<int, 7> alpha_power = {0, 0, 2, 0, 1, 1, 2};
  for (int a : {1, 2, 4}) {
    al[static_cast<std::size_t>(a)] = row(0, alpha_power[static_cast<std::size_t>(a)]);
    al2[static_cast<std::size_t>(a)] = row(0, -alpha_power[static_cast<std::size_t>(a)]);
  }
  for (int a : {3, 5, 6}) {
    al[static_cast<std::size_t>(a)] = row(1, alpha_power[static_cast<std::size_t>(a)]);
    al2[static_cast<std::size_t>(a)] = row(1, -alpha_power[static_cast<std::size_t>(a)]);
  }
  return {SubspaceEmbedding(7, 3, std::move(one), SpaceLabel::Zauner1),
          SubspaceEmbedding(7, 2, std::move(al), SpaceLabel::ZaunerAlpha),
          SubspaceEmbedding(7, 2, std::move(al2), SpaceLabel::ZaunerAlphaSq)};
}

/// The embedding for a named space, or nullopt for the full space.
inline std::optional<SubspaceEmbedding> make_space(SpaceLabel label, int dim) {
  switch (label) {
    case SpaceLabel::Full:
      return std::nullopt;
    case SpaceLabel::HPlus:
    case SpaceLabel::HMinus: {
      if (dim < 3 || dim % 2 == 0) {
        throw UnsupportedSubspaceError(std::string(to_string(label)) + " requires odd N >= 3");
      }
      auto [plus, minus] = build_parity_subspaces(dim);
      return label == SpaceLabel::HPlus ? plus : minus;
    }
    case SpaceLabel::Zauner1:
    case SpaceLabel::ZaunerAlpha:
    case SpaceLabel::ZaunerAlphaSq: {
      if (dim != 7) throw UnsupportedSubspaceError(std::string(to_string(label)) + " requires N = 7");
      auto z = build_zauner7_subspaces();
      if (label == SpaceLabel::Zauner1) return z.one;
      return label == SpaceLabel::ZaunerAlpha ? z.alpha : z.alpha_sq;
    }
    case SpaceLabel::Custom:
      break;
  }
  throw UnsupportedSubspaceError("custom spaces cannot be built by label");
}

inline CVector embed(const SubspaceEmbedding& e, const CVector& x) {
  if (x.size() != e.sub_dim()) throw DimensionError(dim_mismatch(x.size(), e.sub_dim()));
  CVector z = CVector::Zero(e.ambient_dim());
  for (int a = 0; a < e.ambient_dim(); ++a) {
    if (const auto& row = e.rows()[static_cast<std::size_t>(a)]) z(a) = row->coefficient() * x(row->column);
  }
  return z;
}

/// Pullback E^dag v of an ambient vector to subspace coordinates.
inline CVector pullback(const SubspaceEmbedding& e, const CVector& v) {
  if (v.size() != e.ambient_dim()) throw DimensionError(dim_mismatch(v.size(), e.ambient_dim()));
  CVector x = CVector::Zero(e.sub_dim());
  for (int a = 0; a < e.ambient_dim(); ++a) {
    if (const auto& row = e.rows()[static_cast<std::size_t>(a)]) x(row->column) += std::conj(row->coefficient()) * v(a);
  }
  return x;
}

inline CVector sample_subspace(const SubspaceEmbedding& e, RngStream& rng) {
  return embed(e, sample_fs(e.sub_dim(), rng));
}

}  // namespace sicframe
