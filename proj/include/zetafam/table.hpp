#pragma once

// Experiment tables and their CSV / JSON serialisation.  Floats are written
// with 12 significant digits; missing values are empty CSV cells and JSON
// nulls.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

namespace zetafam {

inline std::string format_double(double x) {
  if (!std::isfinite(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string format_optional(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

struct ExperimentRow {
  std::string field_id;
  std::string abs_disc;           // decimal, arbitrary size; empty for synthetic rows
  std::optional<double> genus;
  std::optional<double> measured;
  std::optional<double> prediction;
  std::vector<std::string> flags;
  /// Extra per-row statistics (JSON only), e.g. a second measured/prediction pair.
  std::map<std::string, double> aux;

  /// measured - prediction, when both exist.
  std::optional<double> residual() const {
    if (measured && prediction) return *measured - *prediction;
    return std::nullopt;
  }

  bool has_flag(const std::string& f) const {
    return std::any_of(flags.begin(), flags.end(), [&](const std::string& g) { return g == f || g.rfind(f + ":", 0) == 0; });
  }
};

struct TableMetadata {
  std::string theorem;  // tvz, main1, main2, ek
  std::string family;
  std::string s;        // evaluation point, empty when not applicable
  std::uint64_t X = 0;
  std::uint64_t N = 0;
  std::optional<double> family_prediction;
  unsigned excluded = 0;  // rows removed from the statistic (near zeros, degenerate fields)
  unsigned failed = 0;    // rows whose evaluation raised
  std::vector<std::string> notes;
};

class ExperimentTable {
 public:
  TableMetadata metadata;

  const std::vector<ExperimentRow>& rows() const { return rows_; }

  void add(ExperimentRow row) { rows_.push_back(std::move(row)); }

  /// Orders rows by genus (rows without genus last), then |D| numerically, then id.
  void sort_by_genus() {
    auto key = [](const ExperimentRow& r) {
      return std::make_tuple(r.genus ? 0 : 1, r.genus.value_or(0.0), r.abs_disc.size(), r.abs_disc, r.field_id);
    };
    std::stable_sort(rows_.begin(), rows_.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  }

  bool sorted_by_genus() const {
    for (std::size_t i = 1; i < rows_.size(); ++i) {
      const auto& a = rows_[i - 1];
      const auto& b = rows_[i];
      if (!b.genus) continue;
      if (!a.genus || *a.genus > *b.genus) return false;
    }
    return true;
  }

  /// Last row that carries a residual.
  std::optional<double> terminal_residual() const {
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it)
      if (auto r = it->residual()) return r;
    return std::nullopt;
  }

  std::vector<double> measured_values() const {
    std::vector<double> v;
    for (const auto& r : rows_)
      if (r.measured) v.push_back(*r.measured);
    return v;
  }

  static constexpr const char* kCsvHeader = "field_id,abs_disc,genus,measured,prediction,residual,flags";

  std::string to_csv() const {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const auto& r : rows_) {
      std::string flags;
      for (std::size_t i = 0; i < r.flags.size(); ++i) flags += (i ? ";" : "") + r.flags[i];
      os << csv_escape(r.field_id) << ',' << r.abs_disc << ',' << format_optional(r.genus) << ','
         << format_optional(r.measured) << ',' << format_optional(r.prediction) << ',' << format_optional(r.residual())
         << ',' << csv_escape(flags) << '\n';
    }
    return os.str();
  }

  nlohmann::ordered_json to_json() const {
    using nlohmann::ordered_json;
    ordered_json meta;
    meta["theorem"] = metadata.theorem;
    meta["family"] = metadata.family;
    meta["s"] = metadata.s.empty() ? ordered_json() : ordered_json(metadata.s);
    meta["X"] = metadata.X;
    meta["N"] = metadata.N;
    meta["rows"] = rows_.size();
    meta["family_prediction"] = number(metadata.family_prediction);
    meta["excluded"] = metadata.excluded;
    meta["failed"] = metadata.failed;
    meta["notes"] = metadata.notes;
    ordered_json rows = ordered_json::array();
    for (const auto& r : rows_) {
      ordered_json j;
      j["field_id"] = r.field_id;
      j["abs_disc"] = r.abs_disc.empty() ? ordered_json() : ordered_json(r.abs_disc);
      j["genus"] = number(r.genus);
      j["measured"] = number(r.measured);
      j["prediction"] = number(r.prediction);
      j["residual"] = number(r.residual());
      j["flags"] = r.flags;
      if (!r.aux.empty()) {
        ordered_json aux;
        for (const auto& [k, v] : r.aux) aux[k] = number(v);
        j["aux"] = aux;
      }
      rows.push_back(std::move(j));
    }
    ordered_json out;
    out["metadata"] = std::move(meta);
    out["rows"] = std::move(rows);
    return out;
  }

 private:
  static std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }

  // Numbers go through the same 12-digit rounding as the CSV.
  static nlohmann::ordered_json number(const std::optional<double>& x) {
    if (!x || !std::isfinite(*x)) return nullptr;
    return std::stod(format_double(*x));
  }

  std::vector<ExperimentRow> rows_;
};

}  // namespace zetafam
