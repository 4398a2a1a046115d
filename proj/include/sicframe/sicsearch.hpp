#pragma once

// Multi-restart search for extrema of f_H on the unit sphere, optionally
// restricted to a subspace.

#include <deque>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "sicframe/framepot.hpp"
#include "sicframe/heisenberg.hpp"
#include "sicframe/subspace.hpp"

namespace sicframe {

enum class SearchMode { Minimize, Maximize };

struct SearchConfig {
  int dim = 2;
  SpaceLabel space = SpaceLabel::Full;
  SearchMode mode = SearchMode::Minimize;
  int restarts = 50;
  int max_iters = 3000;
  double tol_value = 1e-10;
  double tol_grad = 1e-9;
  std::uint64_t seed = 1;
  int lbfgs_memory = 8;
};

struct RestartRecord {
  int restart = 0;
  double value = 0.0;
};

struct SearchResult {
  double best_value = 0.0;
  CVector best_vector;
  bool converged = false;
  int restarts_used = 0;
  int iterations = 0;  // total over all restarts run
  int best_restart = 0;
  double best_gradient_norm = 0.0;
  std::vector<RestartRecord> history;
};

struct SicCheck {
  bool is_sic = false;
  double max_deviation = 0.0;
};

/// max_{I != J} | |<psi_I|psi_J>|^2 - 1/(N+1) | over the orbit of `fiducial`.
/// By covariance only the overlaps with psi_0 need to be formed.
inline SicCheck verify_sic(const CVector& fiducial, double tol) {
  const HWGroup g(static_cast<int>(fiducial.size()));
  const CVector psi = require_unit(fiducial);
  const double target = 1.0 / (g.dim() + 1);
  double worst = 0.0;
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = 0; j < g.dim(); ++j) {
      if (i == 0 && j == 0) continue;
      worst = std::max(worst, std::abs(std::norm(inner(psi, g.apply({i, j}, psi))) - target));
    }
  }
  return {worst <= tol, worst};
}

namespace detail {

/// f_H (times sign) as a function of subspace coordinates x on the unit sphere.
class SearchObjective {
 public:
  SearchObjective(int dim, std::optional<SubspaceEmbedding> space, double sign)
      : dim_(dim), space_(std::move(space)), sign_(sign) {}

  int coord_dim() const { return space_ ? space_->sub_dim() : dim_; }

  CVector ambient(const CVector& x) const { return space_ ? embed(*space_, x) : x; }

  double value(const CVector& x) const { return sign_ * f_H_fast(ambient(x)); }

  double sign() const { return sign_; }

  /// Riemannian gradient in x coordinates (real inner product on R^{2d}).
  CVector gradient(const CVector& x) const {
    CVector g = 2.0 * f_H_gradient(ambient(x));
    if (space_) g = pullback(*space_, g);
    return tangent_projection(x, sign_ * g);
  }

 private:
  int dim_;
  std::optional<SubspaceEmbedding> space_;
  double sign_;
};

struct LocalResult {
  CVector x;
  double value = 0.0;   // signed objective
  double grad_norm = 0.0;
  int iterations = 0;
};

/// Limited-memory quasi-Newton descent on the sphere: two-loop direction,
/// Armijo backtracking, renormalization as retraction, and projection as the
/// vector transport for stored pairs. Accepted steps never increase the
/// objective when minimizing, and raise it by at most rounding when maximizing.
inline LocalResult descend(const SearchObjective& obj, CVector x, const SearchConfig& cfg,
                           double stop_value) {
  struct Pair {
    CVector s, y;
    double rho;
  };
  std::deque<Pair> memory;
  double f = obj.value(x);
  CVector g = obj.gradient(x);
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    const double gnorm = g.norm();
    if (gnorm <= cfg.tol_grad || f <= stop_value) break;

    // Two-loop recursion.
    CVector q = g;
    std::vector<double> alpha(memory.size());
    for (std::size_t m = memory.size(); m-- > 0;) {
      alpha[m] = memory[m].rho * real_inner(memory[m].s, q);
      q -= alpha[m] * memory[m].y;
    }
    if (!memory.empty()) {
      const auto& last = memory.back();
      q *= real_inner(last.s, last.y) / last.y.squaredNorm();
    } else {
      q *= std::min(1.0, 0.1 / gnorm);
    }
    for (std::size_t m = 0; m < memory.size(); ++m) {
      const double beta = memory[m].rho * real_inner(memory[m].y, q);
      q += (alpha[m] - beta) * memory[m].s;
    }
    CVector p = tangent_projection(x, -q);
    double slope = real_inner(g, p);
    if (!(slope < -1e-12 * gnorm * p.norm())) {
      memory.clear();
      p = -std::min(1.0, 0.1 / gnorm) * g;
      slope = real_inner(g, p);
    }

    double t = 1.0;
    bool accepted = false;
    CVector x_new;
    double f_new = f;
    for (int bt = 0; bt < 60; ++bt, t *= 0.5) {
      x_new = x + t * p;
      x_new /= x_new.norm();
      f_new = obj.value(x_new);
      if (f_new <= f + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
    }
    CVector g_new;
    if (!accepted || f_new >= f) {
      // The decrease is below the resolution of f. Take the full step if the
      // gradient shrinks and f does not rise (for maximization: by more than
      // rounding); otherwise we are done.
      x_new = x + p;
      x_new /= x_new.norm();
      f_new = obj.value(x_new);
      const double slack = obj.sign() < 0 ? 16 * std::numeric_limits<double>::epsilon() * std::abs(f) : 0.0;
      if (f_new > f + slack) break;
      g_new = obj.gradient(x_new);
      if (!(g_new.norm() < gnorm)) break;
    } else {
      g_new = obj.gradient(x_new);
    }

    CVector s = tangent_projection(x_new, x_new - x);
    CVector y = g_new - tangent_projection(x_new, g);
    const double sy = real_inner(s, y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      memory.push_back({std::move(s), std::move(y), 1.0 / sy});
      if (static_cast<int>(memory.size()) > cfg.lbfgs_memory) memory.pop_front();
    }
    x = std::move(x_new);
    f = f_new;
    g = g_new;
  }
  return {std::move(x), f, g.norm(), it};
}

}  // namespace detail

/// Runs restarts from Fubini-Study random points in batches of fixed size.
/// Restart r owns RNG stream r. Minimize stops after the first batch that
/// contains a restart with f_H <= tol_value.
inline SearchResult search(const SearchConfig& cfg, unsigned threads = 1) {
  if (cfg.restarts < 1) throw Error("restarts must be >= 1");
  if (!(cfg.tol_value > 0) || !(cfg.tol_grad > 0)) throw Error("tolerances must be positive");
  if (cfg.dim < 2) throw UnsupportedDimensionError("N must be >= 2");
  auto space = make_space(cfg.space, cfg.dim);
  const bool minimize = cfg.mode == SearchMode::Minimize;
  const detail::SearchObjective obj(cfg.dim, space, minimize ? 1.0 : -1.0);
  // Keep polishing below tol_value; the stopping rule is then the gradient.
  const double stop_value = minimize ? 0.0 : -std::numeric_limits<double>::infinity();

  constexpr int kBatch = 8;
  std::vector<detail::LocalResult> runs;
  SearchResult res;
  for (int start = 0; start < cfg.restarts; start += kBatch) {
    const int count = std::min(kBatch, cfg.restarts - start);
    std::vector<detail::LocalResult> batch(static_cast<std::size_t>(count));
    parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t k) {
      RngStream rng(cfg.seed, static_cast<std::uint64_t>(start) + k);
      batch[k] = detail::descend(obj, sample_fs(obj.coord_dim(), rng), cfg, stop_value);
    });
    bool hit = false;
    for (auto& r : batch) {
      const double fh = minimize ? r.value : -r.value;
      hit = hit || (minimize && fh <= cfg.tol_value);
      runs.push_back(std::move(r));
    }
    if (hit) break;
  }

  std::size_t best = 0;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    res.history.push_back({static_cast<int>(k), minimize ? runs[k].value : -runs[k].value});
    res.iterations += runs[k].iterations;
    if (runs[k].value < runs[best].value) best = k;
  }
  res.restarts_used = static_cast<int>(runs.size());
  res.best_restart = static_cast<int>(best);
  res.best_vector = obj.ambient(runs[best].x);
  res.best_vector /= res.best_vector.norm();
  res.best_value = f_H_fast(res.best_vector);
  res.best_gradient_norm = runs[best].grad_norm;
  res.converged = minimize ? res.best_value <= cfg.tol_value : res.best_gradient_norm <= cfg.tol_grad;
  return res;
}

}  // namespace sicframe
