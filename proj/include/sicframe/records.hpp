#pragma once

// Stable JSON records and the vector file format.
//
// Output uses a small ordered emitter so field order is fixed and doubles are
// always printed with 17 significant digits; input is parsed with
// nlohmann/json.

#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sicframe/averages.hpp"
#include "sicframe/numcore.hpp"
#include "sicframe/sicsearch.hpp"

namespace sicframe {

/// Ordered JSON value for output. Objects keep insertion order.
class JsonValue {
 public:
  using Object = std::vector<std::pair<std::string, JsonValue>>;
  using Array = std::vector<JsonValue>;

  JsonValue() : v_(nullptr) {}
  JsonValue(std::nullptr_t) : v_(nullptr) {}
  JsonValue(bool b) : v_(b) {}
  JsonValue(int i) : v_(static_cast<long long>(i)) {}
  JsonValue(long i) : v_(static_cast<long long>(i)) {}
  JsonValue(long long i) : v_(i) {}
  JsonValue(unsigned long long i) : v_(static_cast<long long>(i)) {}
  JsonValue(unsigned long i) : v_(static_cast<long long>(i)) {}
  JsonValue(double d) : v_(d) {}
  JsonValue(const char* s) : v_(std::string(s)) {}
  JsonValue(std::string s) : v_(std::move(s)) {}
  JsonValue(std::string_view s) : v_(std::string(s)) {}
  JsonValue(Array a) : v_(std::move(a)) {}
  JsonValue(Object o) : v_(std::move(o)) {}

  static JsonValue object() { return JsonValue(Object{}); }
  static JsonValue array() { return JsonValue(Array{}); }

  JsonValue& set(std::string key, JsonValue value) {
    std::get<Object>(v_).emplace_back(std::move(key), std::move(value));
    return *this;
  }
  JsonValue& push(JsonValue value) {
    std::get<Array>(v_).push_back(std::move(value));
    return *this;
  }

  void write(std::ostream& os, int indent = 2, int depth = 0) const {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, std::nullptr_t>) {
            os << "null";
          } else if constexpr (std::is_same_v<T, bool>) {
            os << (x ? "true" : "false");
          } else if constexpr (std::is_same_v<T, long long>) {
            os << x;
          } else if constexpr (std::is_same_v<T, double>) {
            os << format_double(x);
          } else if constexpr (std::is_same_v<T, std::string>) {
            os << nlohmann::json(x).dump();
          } else if constexpr (std::is_same_v<T, Array>) {
            if (x.empty()) {
              os << "[]";
              return;
            }
            // Arrays of scalars stay on one line.
            const bool flat = std::all_of(x.begin(), x.end(), [](const JsonValue& e) { return e.is_scalar(); });
            os << '[';
            for (std::size_t k = 0; k < x.size(); ++k) {
              if (k) os << (flat ? ", " : ",");
              if (!flat) os << nl << pad;
              x[k].write(os, indent, depth + 1);
            }
            if (!flat) os << nl << close_pad;
            os << ']';
          } else {
            if (x.empty()) {
              os << "{}";
              return;
            }
            os << '{';
            for (std::size_t k = 0; k < x.size(); ++k) {
              if (k) os << ',';
              os << nl << pad << nlohmann::json(x[k].first).dump() << ": ";
              x[k].second.write(os, indent, depth + 1);
            }
            os << nl << close_pad << '}';
          }
        },
        v_);
  }

  std::string dump(int indent = 2) const {
    std::ostringstream os;
    write(os, indent);
    return os.str();
  }

  static std::string format_double(double d) {
    if (!std::isfinite(d)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    std::string s(buf);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
  }

 private:
  bool is_scalar() const {
    return !std::holds_alternative<Array>(v_) && !std::holds_alternative<Object>(v_);
  }

  std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> v_;
};

inline JsonValue to_json(const AverageResult& r) {
  auto o = JsonValue::object();
  o.set("dim", r.dim)
      .set("space", to_string(r.space))
      .set("method", to_string(r.method))
      .set("value", r.value)
      .set("exact", r.exact ? JsonValue(to_string(*r.exact)) : JsonValue())
      .set("std_error", r.mc ? JsonValue(r.mc->std_error) : JsonValue())
      .set("n_samples", r.mc ? JsonValue(r.mc->n_samples) : JsonValue())
      .set("seed", r.mc ? JsonValue(JsonValue::Array{JsonValue(static_cast<unsigned long long>(r.mc->seed.seed)),
                                                     JsonValue(static_cast<unsigned long long>(r.mc->seed.stream))})
                        : JsonValue());
  return o;
}

inline JsonValue vector_entries(const CVector& v) {
  auto arr = JsonValue::array();
  for (Eigen::Index a = 0; a < v.size(); ++a) {
    arr.push(JsonValue(JsonValue::Array{JsonValue(v(a).real()), JsonValue(v(a).imag())}));
  }
  return arr;
}

inline JsonValue to_json(const SearchResult& r) {
  auto history = JsonValue::array();
  for (const auto& h : r.history) {
    history.push(JsonValue(JsonValue::Array{JsonValue(h.restart), JsonValue(h.value)}));
  }
  auto o = JsonValue::object();
  o.set("best_value", r.best_value)
      .set("converged", r.converged)
      .set("restarts_used", r.restarts_used)
      .set("iterations", r.iterations)
      .set("best_restart", r.best_restart)
      .set("gradient_norm", r.best_gradient_norm)
      .set("best_vector", vector_entries(r.best_vector))
      .set("history", std::move(history));
  return o;
}

// ---------------------------------------------------------------------------
// Vector files: {"dim": N, "entries": [[re, im], ...], "label": "..."}

struct VectorFile {
  int dim = 0;
  CVector entries;
  std::string label;
  bool renormalized = false;  // input was off the unit sphere by more than 1e-12
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses a vector file. Accepts vectors within 1e-9 of unit norm and
/// renormalizes them; `renormalized` is set when the drift exceeded 1e-12.
inline VectorFile parse_vector_file(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw ParseError("vector file needs \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer()) throw ParseError("\"dim\" must be an integer");
  VectorFile out;
  out.dim = j["dim"].get<int>();
  if (out.dim < 1) throw ParseError("\"dim\" must be positive");
  const auto& entries = j["entries"];
  if (!entries.is_array() || static_cast<int>(entries.size()) != out.dim) {
    throw ParseError("\"entries\" must be an array of length dim");
  }
  out.entries.resize(out.dim);
  for (int a = 0; a < out.dim; ++a) {
    const auto& e = entries[static_cast<std::size_t>(a)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("each entry must be [re, im]");
    }
    out.entries(a) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError("\"label\" must be a string");
    out.label = j["label"].get<std::string>();
  }
  const double n2 = out.entries.squaredNorm();
  if (!(std::abs(n2 - 1.0) <= 1e-9)) {
    throw ParseError("vector is not unit: |v|^2 = " + JsonValue::format_double(n2));
  }
  out.renormalized = std::abs(n2 - 1.0) > kUnitTolerance;
  out.entries /= std::sqrt(n2);
  return out;
}

inline VectorFile read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return parse_vector_file(std::string(std::istreambuf_iterator<char>(in), {}));
}

inline JsonValue to_json(const VectorFile& v) {
  auto o = JsonValue::object();
  o.set("dim", v.dim).set("entries", vector_entries(v.entries));
  if (!v.label.empty()) o.set("label", v.label);
  return o;
}

inline void write_vector_file(const std::string& path, const CVector& v, const std::string& label) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json(VectorFile{static_cast<int>(v.size()), v, label, false}).dump() << '\n';
}

}  // namespace sicframe
