#include "superclose/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "superclose/config.hpp"
#include "superclose/tables.hpp"
#include "format.hpp"

#ifndef SUPERCLOSE_VERSION_STRING
#define SUPERCLOSE_VERSION_STRING "0.0.0+unknown"
#endif

namespace superclose {

const char* version_string() noexcept { return SUPERCLOSE_VERSION_STRING; }

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.passed; });
}

namespace {

std::string timestamp_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void add_common_metadata(Report& r) {
  r.metadata.insert(r.metadata.begin(), {"generated", timestamp_utc()});
  r.metadata.insert(r.metadata.begin(), {"version", version_string()});
}

void fill_levels(Report& r, const StudyResult& s) {
  r.levels.clear();
  r.h_ratios.clear();
  for (const StudyRow& row : s.rows) {
    r.levels.push_back(row.level);
    r.h_ratios.push_back(row.h_ratio);
  }
}

ReportColumn study_column(const StudyResult& s, std::size_t norm, std::string header,
                          std::string key) {
  ReportColumn c;
  c.header = std::move(header);
  c.key = std::move(key);
  c.values = s.values(norm);
  for (const StudyRow& row : s.rows) c.orders.push_back(row.orders.at(norm));
  if (norm < s.predicted_orders.size()) c.predicted_order = s.predicted_orders[norm];
  return c;
}

void add_predictions(Report& r, const StudyResult& s, const std::string& prefix) {
  if (s.sigma) r.predictions.emplace_back(prefix + "sigma", *s.sigma);
  if (s.sigma_prime) r.predictions.emplace_back(prefix + "sigma'", *s.sigma_prime);
}

void add_monotonicity_notes(Report& r, const StudyResult& s, const std::string& prefix) {
  for (std::size_t j = 0; j < s.monotone.size(); ++j) {
    if (!s.monotone[j]) {
      r.notes.push_back(prefix + s.config.norms[j].label() +
                        " values are not strictly decreasing across levels");
    }
  }
}

ReportCheck order_check(const std::string& name, std::optional<double> observed, double target,
                        double tol) {
  ReportCheck c;
  c.name = name;
  if (!observed) {
    c.passed = false;
    c.detail = "no observed order";
    return c;
  }
  c.passed = std::abs(*observed - target) <= tol;
  c.detail = "final order " + fmt_fixed(*observed) + ", expected " + fmt_fixed(target, 3) +
             " +/- " + fmt_fixed(tol, 3);
  return c;
}

}  // namespace

Report run_table(int id) {
  const TableSpec& spec = table_spec(id);
  std::vector<StudyResult> results;
  double seconds = 0.0;
  for (const StudyConfig& cfg : spec.studies) {
    results.push_back(run_projection_study(cfg));
    seconds += results.back().seconds;
  }

  Report r;
  r.title = "Table " + std::to_string(id) + ": " + spec.caption;
  for (std::size_t i = 0; i < spec.studies.size(); ++i) {
    r.metadata.emplace_back("config " + spec.studies[i].name, echo_config(spec.studies[i]));
  }
  add_common_metadata(r);
  fill_levels(r, results.front());

  for (const GoldenColumn& g : spec.columns) {
    const StudyResult& s = results.at(g.study);
    require(s.rows.size() == r.levels.size(), "table studies must share the level count");
    r.columns.push_back(study_column(s, g.norm, g.header, g.key));
    const ReportColumn& col = r.columns.back();

    if (g.value_tolerance > 0.0) {
      ReportCheck c;
      c.name = "table " + std::to_string(id) + " " + g.header + " values";
      c.passed = true;
      double worst = 0.0;
      int worst_level = 0;
      for (std::size_t k = 0; k < col.values.size(); ++k) {
        const int level = static_cast<int>(k);
        if (!g.checked_levels.empty() &&
            std::find(g.checked_levels.begin(), g.checked_levels.end(), level) ==
                g.checked_levels.end()) {
          continue;
        }
        const double rel = std::abs(col.values[k] - g.printed.at(k)) / g.printed.at(k);
        if (rel >= worst) {
          worst = rel;
          worst_level = level;
        }
        if (!(rel <= g.value_tolerance)) c.passed = false;
      }
      c.detail = "worst relative deviation " + fmt_fixed(100.0 * worst, 3) + "% at h0/h=" +
                 fmt_double(r.h_ratios.at(worst_level)) + " (" +
                 fmt_sci(col.values.at(worst_level)) + " vs printed " +
                 fmt_sci(g.printed.at(worst_level)) + "), tolerance " +
                 fmt_fixed(100.0 * g.value_tolerance, 1) + "%";
      r.checks.push_back(std::move(c));
    }
    r.checks.push_back(order_check("table " + std::to_string(id) + " " + g.header + " order",
                                   s.final_order(g.norm), g.order_target, g.order_tolerance));
  }
  if (spec.runtime_limit_seconds > 0.0) {
    ReportCheck c;
    c.name = "table " + std::to_string(id) + " runtime";
    c.passed = seconds < spec.runtime_limit_seconds;
    c.detail = fmt_fixed(seconds, 2) + " s, limit " + fmt_fixed(spec.runtime_limit_seconds, 0) + " s";
    r.checks.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    const std::string prefix = results.size() > 1 ? spec.studies[i].name + " " : "";
    add_predictions(r, results[i], prefix);
    add_monotonicity_notes(r, results[i], prefix);
  }
  return r;
}

Report study_report(const StudyResult& s) {
  Report r;
  r.title = "Study: " + s.config.name;
  r.metadata.emplace_back("config", echo_config(s.config));
  add_common_metadata(r);
  fill_levels(r, s);
  for (std::size_t j = 0; j < s.config.norms.size(); ++j) {
    const std::string label = s.config.norms[j].label();
    r.columns.push_back(study_column(s, j, label, label));
  }
  add_predictions(r, s, "");
  add_monotonicity_notes(r, s, "");
  return r;
}

Report regularity_report(const RegularityResult& res) {
  Report r;
  r.title = "Regularity counterexample: u = x^(2-1/p) - x, p = " + fmt_double(res.p);
  r.metadata.emplace_back("config", echo_config(res.study.config));
  add_common_metadata(r);
  fill_levels(r, res.study);
  r.columns.push_back(study_column(res.study, 0, "L2", "L2"));
  r.columns.push_back(study_column(res.study, 1, "H1", "H1"));
  r.columns[0].predicted_order = res.rate_l2;
  r.columns[1].predicted_order = res.rate_h1;
  r.predictions.emplace_back("rate L2 (5/2 - 1/p)", res.rate_l2);
  r.predictions.emplace_back("rate H1 (3/2 - 1/p)", res.rate_h1);
  r.checks.push_back(order_check("regularity L2 order", res.study.final_order(0), res.rate_l2, 0.05));
  r.checks.push_back(order_check("regularity H1 order", res.study.final_order(1), res.rate_h1, 0.05));
  add_monotonicity_notes(r, res.study, "");
  return r;
}

namespace {

/// Differences below this are dominated by roundoff in the two projections.
constexpr double kNoiseFloor = 1e-10;

/// Passes when the last order measured above the noise floor is at least
/// predicted - 0.1, or when the difference vanishes entirely (a_h⁺ = a_h on
/// identical meshes).
ReportCheck floor_check(const std::string& name, const StudyResult& s, std::size_t norm) {
  ReportCheck c;
  c.name = name;
  const std::vector<double> v = s.values(norm);
  const double largest = *std::max_element(v.begin(), v.end());
  if (largest < kNoiseFloor) {
    c.passed = true;
    c.detail = "difference at solver noise (max " + fmt_sci(largest) + ")";
    return c;
  }
  std::optional<double> observed;
  std::size_t row = 0;
  for (std::size_t i = 1; i < s.rows.size(); ++i) {
    if (v[i - 1] < kNoiseFloor || v[i] < kNoiseFloor) break;
    observed = s.rows[i].orders.at(norm);
    row = i;
  }
  const auto predicted = s.predicted_orders.at(norm);
  if (!observed || !predicted) {
    c.passed = false;
    c.detail = "no observed or predicted order above the noise floor";
    return c;
  }
  c.passed = *observed >= *predicted - 0.1;
  c.detail = "order " + fmt_fixed(*observed) + " at level " + std::to_string(row) + ", floor " +
             fmt_fixed(*predicted - 0.1);
  if (row + 1 < s.rows.size()) c.detail += " (later levels below " + fmt_sci(kNoiseFloor) + ")";
  return c;
}

}  // namespace

Report perturbed_form_report(const PerturbedFormResult& res) {
  Report r;
  const std::string d =
      res.delta.is_infinite() ? std::string("inf") : fmt_double(res.delta.value());
  r.title = "Perturbed form: a_h = stiffness, a_h+ = stiffness + h^delta mass, delta = " + d;
  r.metadata.emplace_back("config identical", echo_config(res.identical.config));
  r.metadata.emplace_back("config nearby", echo_config(res.nearby.config));
  add_common_metadata(r);
  fill_levels(r, res.identical);
  r.columns.push_back(study_column(res.identical, 0, "identical H1", "identical_H1"));
  r.columns.push_back(study_column(res.identical, 1, "identical L2", "identical_L2"));
  r.columns.push_back(study_column(res.nearby, 0, "nearby H1", "nearby_H1"));
  r.columns.push_back(study_column(res.nearby, 1, "nearby L2", "nearby_L2"));
  add_predictions(r, res.identical, "identical ");
  add_predictions(r, res.nearby, "nearby ");
  r.checks.push_back(floor_check("identical meshes H1 order", res.identical, 0));
  r.checks.push_back(floor_check("identical meshes L2 order", res.identical, 1));
  r.checks.push_back(floor_check("nearby meshes H1 order", res.nearby, 0));
  r.checks.push_back(floor_check("nearby meshes L2 order", res.nearby, 1));
  return r;
}

std::string render_text(const Report& r, bool with_metadata) {
  std::ostringstream o;
  o << r.title << "\n";
  if (with_metadata) {
    for (const auto& [key, value] : r.metadata) {
      if (value.find('\n') == std::string::npos) {
        o << "  " << key << ": " << value << "\n";
        continue;
      }
      o << "  " << key << ":\n";
      std::istringstream lines(value);
      std::string line;
      while (std::getline(lines, line)) o << "    " << line << "\n";
    }
  }
  o << "\n";

  constexpr int kValueWidth = 13;
  constexpr int kOrderWidth = 8;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-8s", "h0/h");
  o << buf;
  for (const ReportColumn& c : r.columns) {
    std::snprintf(buf, sizeof buf, "  %*s  %*s", kValueWidth, c.header.c_str(), kOrderWidth, "Order");
    o << buf;
  }
  o << "\n";
  for (std::size_t i = 0; i < r.row_count(); ++i) {
    std::snprintf(buf, sizeof buf, "%-8s", fmt_fixed(r.h_ratios[i], 0).c_str());
    o << buf;
    for (const ReportColumn& c : r.columns) {
      const std::string order = c.orders[i] ? fmt_fixed(*c.orders[i]) : std::string("-");
      std::snprintf(buf, sizeof buf, "  %*s  %*s", kValueWidth, fmt_sci(c.values[i]).c_str(),
                    kOrderWidth, order.c_str());
      o << buf;
    }
    o << "\n";
  }

  bool any_prediction = !r.predictions.empty();
  for (const ReportColumn& c : r.columns) any_prediction = any_prediction || c.predicted_order;
  if (any_prediction) {
    o << "\npredicted:\n";
    for (const auto& [name, value] : r.predictions) o << "  " << name << " = " << fmt_fixed(value) << "\n";
    for (const ReportColumn& c : r.columns) {
      if (c.predicted_order) o << "  order " << c.header << " = " << fmt_fixed(*c.predicted_order) << "\n";
    }
  }
  if (!r.notes.empty()) {
    o << "\nnotes:\n";
    for (const std::string& n : r.notes) o << "  " << n << "\n";
  }
  if (!r.checks.empty()) {
    o << "\nchecks:\n";
    for (const ReportCheck& c : r.checks) {
      o << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
    }
    o << "\nresult: " << (r.passed() ? "PASS" : "FAIL") << "\n";
  }
  return o.str();
}

void write_csv(std::ostream& out, const Report& r) {
  out << "level,h_ratio";
  for (const ReportColumn& c : r.columns) out << "," << c.key << "," << c.key << "_order";
  out << "\n";
  for (std::size_t i = 0; i < r.row_count(); ++i) {
    out << r.levels[i] << "," << fmt_double(r.h_ratios[i]);
    for (const ReportColumn& c : r.columns) {
      out << "," << fmt_double(c.values[i]) << ",";
      if (c.orders[i]) out << fmt_double(*c.orders[i]);
    }
    out << "\n";
  }
}

void write_csv_file(const std::string& path, const Report& r) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot open `" + path + "` for writing");
  write_csv(out, r);
  out.flush();
  if (!out) fail(ErrorCode::io_error, "failed writing `" + path + "`");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::parse_error, "csv: missing header");
  if (!line.empty() && line.back() == '\r') fail(ErrorCode::parse_error, "csv: CRLF line ending");
  t.header = split_fields(line);
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != t.header.size()) {
      fail(ErrorCode::parse_error, "csv line " + std::to_string(lineno) + ": expected " +
                                       std::to_string(t.header.size()) + " fields");
    }
    std::vector<std::optional<double>> row;
    for (const std::string& f : fields) {
      if (f.empty()) {
        row.emplace_back();
        continue;
      }
      try {
        std::size_t used = 0;
        const double v = std::stod(f, &used);
        if (used != f.size()) throw std::invalid_argument(f);
        row.emplace_back(v);
      } catch (const std::exception&) {
        fail(ErrorCode::parse_error, "csv line " + std::to_string(lineno) + ": bad number `" + f + "`");
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace superclose
