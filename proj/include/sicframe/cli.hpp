#pragma once

// Command implementations behind the sicframe executable. Each command writes
// its JSON (or CSV) record to `out`, diagnostics to `err`, and returns the
// process exit code.

#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>

#include "sicframe/averages.hpp"
#include "sicframe/framepot.hpp"
#include "sicframe/heisenberg.hpp"
#include "sicframe/records.hpp"
#include "sicframe/sicsearch.hpp"
#include "sicframe/subspace.hpp"

namespace sicframe::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kUnsupported = 3 };

inline std::uint64_t seed_from_env(std::optional<std::uint64_t> flag, std::uint64_t fallback = 1) {
  if (flag) return *flag;
  if (const char* s = std::getenv("SICFRAME_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

/// Runs `body` and maps library exceptions to exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const NormError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const UnsupportedSubspaceError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const NotTabulatedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const UnsupportedDimensionError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

// ---------------------------------------------------------------------------
// eval

struct EvalOptions {
  std::string vector_path;
};

inline JsonValue eval_report(const CVector& fiducial) {
  const HWGroup g(static_cast<int>(fiducial.size()));
  const auto vectors = orbit(g, fiducial);
  const double fh = f_H_fast(fiducial);
  auto o = JsonValue::object();
  o.set("dim", g.dim())
      .set("f_H", fh < 0.0 && fh >= -1e-10 ? 0.0 : fh)
      .set("F1", frame_potential(vectors, 1))
      .set("F2", frame_potential(vectors, 2))
      .set("sic_deviation", verify_sic(fiducial, 0.0).max_deviation);
  return o;
}

inline int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const VectorFile vf = read_vector_file(opt.vector_path);
    if (vf.dim < 2) throw ParseError("dimension must be >= 2");
    if (vf.renormalized) err << "warning: input vector renormalized\n";
    out << eval_report(vf.entries).dump() << '\n';
    return int{kOk};
  });
}

// ---------------------------------------------------------------------------
// average

struct AverageOptions {
  int dim = 2;
  std::string space = "full";
  std::string method = "exact";
  std::string quantity = "fH";  // "fH" or "f"
  long samples = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

inline AverageResult run_average(const AverageOptions& opt) {
  const auto label = parse_space_label(opt.space);
  if (!label) throw ParseError("unknown space '" + opt.space + "'");
  if (opt.dim < 2) throw ParseError("dimension must be >= 2");
  if (opt.quantity != "fH" && opt.quantity != "f") throw ParseError("quantity must be fH or f");
  if (opt.method != "analytic" && opt.method != "exact" && opt.method != "mc") {
    throw ParseError("method must be analytic, exact or mc");
  }
  if (opt.method == "mc" && opt.samples < 100) throw ParseError("--samples must be >= 100");
  const std::uint64_t seed = seed_from_env(opt.seed);

  if (opt.quantity == "f") {
    if (*label != SpaceLabel::Full) throw UnsupportedSubspaceError("f is only averaged over the full space");
    if (opt.method == "analytic") return analytic_avg_f(opt.dim);
    if (opt.method == "exact") return moment_avg_f(opt.dim);
    return to_result(mc_avg_f(opt.dim, opt.samples, seed, opt.threads), SpaceLabel::Full, opt.dim);
  }

  const auto space = make_space(*label, opt.dim);
  if (opt.method == "analytic") return analytic_avg_fH_subspace(*label, opt.dim);
  if (opt.method == "exact") return exact_avg_fH(opt.dim, space, opt.threads);
  return to_result(mc_avg(opt.dim, space, opt.samples, seed, opt.threads), *label, opt.dim);
}

inline int cmd_average(const AverageOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << to_json(run_average(opt)).dump() << '\n';
    return int{kOk};
  });
}

// ---------------------------------------------------------------------------
// search

struct SearchOptions {
  int dim = 2;
  std::string space = "full";
  std::string mode = "min";
  int restarts = 50;
  int max_iters = 3000;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  unsigned threads = 0;
};

inline SearchConfig to_config(const SearchOptions& opt) {
  const auto label = parse_space_label(opt.space);
  if (!label) throw ParseError("unknown space '" + opt.space + "'");
  if (opt.dim < 2) throw ParseError("dimension must be >= 2");
  if (opt.mode != "min" && opt.mode != "max") throw ParseError("mode must be min or max");
  if (opt.restarts < 1 || opt.max_iters < 1) throw ParseError("restarts and max-iters must be positive");
  SearchConfig cfg;
  cfg.dim = opt.dim;
  cfg.space = *label;
  cfg.mode = opt.mode == "min" ? SearchMode::Minimize : SearchMode::Maximize;
  cfg.restarts = opt.restarts;
  cfg.max_iters = opt.max_iters;
  cfg.seed = seed_from_env(opt.seed);
  return cfg;
}

inline int cmd_search(const SearchOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SearchConfig cfg = to_config(opt);
    const SearchResult res = search(cfg, opt.threads);
    auto rec = JsonValue::object();
    rec.set("dim", cfg.dim)
        .set("space", to_string(cfg.space))
        .set("mode", opt.mode)
        .set("seed", static_cast<unsigned long long>(cfg.seed))
        .set("sic_deviation", verify_sic(res.best_vector, 0.0).max_deviation)
        .set("result", to_json(res));
    if (!opt.out_path.empty()) {
      write_vector_file(opt.out_path, res.best_vector,
                        std::string(to_string(cfg.space)) + "-" + opt.mode + "-N" + std::to_string(cfg.dim));
    }
    out << rec.dump() << '\n';
    return int{kOk};
  });
}

// ---------------------------------------------------------------------------
// table

struct TableOptions {
  int dim = 7;
  long samples = 10000;  // Monte Carlo cross-check of the Average row; 0 disables
  std::optional<std::uint64_t> seed;
  int restarts = 16;
  unsigned threads = 0;
  std::string format = "json";
};

struct TableCell {
  std::optional<double> value;
  std::optional<Rational> exact;
  std::string source;  // "exact", "search", "identity", "unavailable"
  bool soft = false;
  std::optional<McEstimate> mc;
};

struct Table {
  int dim = 0;
  std::vector<std::string> columns;
  std::vector<std::string> rows;
  std::vector<std::vector<TableCell>> cells;
};

inline Table build_table(const TableOptions& opt) {
  if (opt.dim < 2) throw ParseError("dimension must be >= 2");
  const int n = opt.dim;
  const std::uint64_t seed = seed_from_env(opt.seed);
  const std::vector<std::pair<std::string, SpaceLabel>> spaces = {
      {"f_H", SpaceLabel::Full},      {"f_H(H+)", SpaceLabel::HPlus},  {"f_H(H-)", SpaceLabel::HMinus},
      {"f_H(H1)", SpaceLabel::Zauner1}, {"f_H(Halpha)", SpaceLabel::ZaunerAlpha}};

  Table t;
  t.dim = n;
  t.columns = {"f"};
  for (const auto& s : spaces) t.columns.push_back(s.first);
  const bool full_table = n == 7;
  t.rows = full_table ? std::vector<std::string>{"Min", "Average", "Max"} : std::vector<std::string>{"Average"};

  auto available = [&](SpaceLabel l) {
    try {
      make_space(l, n);
      return true;
    } catch (const UnsupportedSubspaceError&) {
      return false;
    }
  };

  auto searched = [&](SpaceLabel l, SearchMode mode) {
    SearchConfig cfg;
    cfg.dim = n;
    cfg.space = l;
    cfg.mode = mode;
    cfg.restarts = opt.restarts;
    cfg.seed = seed;
    const auto r = search(cfg, opt.threads);
    const double v = mode == SearchMode::Minimize && r.best_value < 0.0 && r.best_value >= -1e-10 ? 0.0 : r.best_value;
    return TableCell{v, std::nullopt, "search", true, std::nullopt};
  };

  // Average row.
  std::vector<TableCell> avg;
  {
    const Rational f = moment_avg_f(n).exact.value();
    TableCell c{to_double(f), f, "exact", false, std::nullopt};
    if (opt.samples > 0) c.mc = mc_avg_f(n, std::max(opt.samples, 100L), seed, opt.threads);
    avg.push_back(c);
  }
  for (const auto& [name, label] : spaces) {
    if (!available(label)) {
      avg.push_back({std::nullopt, std::nullopt, "unavailable", false, std::nullopt});
      continue;
    }
    const auto space = make_space(label, n);
    const Rational r = exact_avg_fH(n, space, opt.threads).exact.value();
    TableCell c{to_double(r), r, "exact", false, std::nullopt};
    if (opt.samples > 0) c.mc = mc_avg(n, space, std::max(opt.samples, 100L), seed, opt.threads);
    avg.push_back(c);
  }

  if (!full_table) {
    t.cells.push_back(std::move(avg));
    return t;
  }

  std::vector<TableCell> lo, hi;
  for (const auto& [name, label] : spaces) {
    lo.push_back(searched(label, SearchMode::Minimize));
    hi.push_back(searched(label, SearchMode::Maximize));
  }
  // f over unrestricted N^2-vector sets: its minimum is reached on a SIC
  // orbit, so it shares the f_H minimum; the maximum is the coincident set.
  lo.insert(lo.begin(), lo.front());
  std::vector<CVector> same(static_cast<std::size_t>(n) * n, basis_vector(n, 0));
  hi.insert(hi.begin(), TableCell{f_general(same), std::nullopt, "identity", false, std::nullopt});

  t.cells = {std::move(lo), std::move(avg), std::move(hi)};
  return t;
}

inline JsonValue to_json(const Table& t) {
  auto cols = JsonValue::array();
  for (const auto& c : t.columns) cols.push(c);
  auto rows = JsonValue::array();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    auto cells = JsonValue::array();
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const auto& cell = t.cells[r][c];
      auto o = JsonValue::object();
      o.set("column", t.columns[c])
          .set("value", cell.value ? JsonValue(*cell.value) : JsonValue())
          .set("exact", cell.exact ? JsonValue(to_string(*cell.exact)) : JsonValue())
          .set("source", cell.source)
          .set("soft", cell.soft);
      if (cell.mc) o.set("mc_mean", cell.mc->mean).set("mc_std_error", cell.mc->std_error);
      cells.push(std::move(o));
    }
    auto row = JsonValue::object();
    row.set("row", t.rows[r]).set("cells", std::move(cells));
    rows.push(std::move(row));
  }
  auto o = JsonValue::object();
  o.set("dim", t.dim).set("columns", std::move(cols)).set("rows", std::move(rows));
  return o;
}

/// One line per row; unavailable entries print as "?".
inline std::string to_csv(const Table& t) {
  std::string s = "row";
  for (const auto& c : t.columns) s += "," + c;
  s += '\n';
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    s += t.rows[r];
    for (const auto& cell : t.cells[r]) s += "," + (cell.value ? JsonValue::format_double(*cell.value) : "?");
    s += '\n';
  }
  return s;
}

inline int cmd_table(const TableOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.format != "json" && opt.format != "csv") throw ParseError("format must be json or csv");
    const Table t = build_table(opt);
    if (opt.format == "csv") {
      out << to_csv(t);
    } else {
      out << to_json(t).dump() << '\n';
    }
    return int{kOk};
  });
}

}  // namespace sicframe::cli
