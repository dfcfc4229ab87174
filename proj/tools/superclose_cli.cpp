// Command-line front end. Talks to the library through the C interface only.
//
// Exit status: 0 all checks passed, 1 a golden-value or rate check failed,
// 2 usage or input error, 3 runtime failure inside the library.

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "superclose/superclose.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

struct Options {
  std::string csv;
  bool quiet = false;
};

bool is_input_error(sc_status s) {
  return s == SC_INVALID_ARGUMENT || s == SC_PARSE_ERROR || s == SC_IO_ERROR;
}

int report_error(const char* what, sc_status s) {
  std::fprintf(stderr, "error: %s: %s (%s)\n", what, sc_last_error(), sc_status_name(s));
  return is_input_error(s) ? kExitUsage : kExitFailure;
}

/// Prints, writes CSV, and maps the report's checks to an exit status.
int finish(sc_report* report, const Options& opt) {
  if (!opt.quiet) {
    char* text = nullptr;
    if (sc_status s = sc_report_render_text(report, 1, &text); s != SC_OK) {
      sc_report_free(report);
      return report_error("render", s);
    }
    std::fputs(text, stdout);
    sc_string_free(text);
  }
  if (!opt.csv.empty()) {
    if (sc_status s = sc_report_write_csv(report, opt.csv.c_str()); s != SC_OK) {
      sc_report_free(report);
      return report_error("csv", s);
    }
  }
  int passed = 0;
  sc_report_passed(report, &passed);
  sc_report_free(report);
  return passed ? kExitPass : kExitMismatch;
}

double parse_extended(const std::string& text, const char* name) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError(name, "expected a number or `inf`, got `" + text + "`");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Supercloseness of orthogonal projections onto nearby finite element spaces"};
  app.set_version_flag("--version", std::string(sc_version()));
  app.require_subcommand(1);

  Options opt;
  app.add_option("--csv", opt.csv, "Write the result table as CSV to this path");
  app.add_flag("--quiet,-q", opt.quiet, "Suppress the text report");

  int table_id = 0;
  auto* table = app.add_subcommand("table", "Reproduce one of the six shipped convergence tables");
  table->add_option("id", table_id, "Table number (1-6)")->required()->check(CLI::Range(1, 6));
  table->fallthrough();

  std::string config_path;
  auto* study = app.add_subcommand("study", "Run a study described by a key = value config file");
  study->add_option("config", config_path, "Config file")->required();
  study->fallthrough();

  std::string gamma_s, eta_s = "inf", delta_s = "inf";
  int mu = 0, nu = 0, s_order = 0, r = 2, dim = 1;
  std::optional<double> q;
  auto* predict = app.add_subcommand("predict", "Evaluate the predicted superconvergence orders");
  predict->add_option("--gamma", gamma_s, "Differing region has measure O(h^gamma)")->required();
  predict->add_option("--eta", eta_s, "Integrability of u, in [2, inf]");
  predict->add_option("--delta", delta_s, "Form perturbation exponent, or inf");
  predict->add_option("--mu", mu, "Perturbation bound exponent on v");
  predict->add_option("--nu", nu, "Perturbation bound exponent on w");
  predict->add_option("--s", s_order, "Sobolev order of the form (0 or 1)")->required();
  predict->add_option("--r", r, "Polynomial degree + 1")->required();
  predict->add_option("--q", q, "Integrability of w in the perturbation bound");
  predict->add_option("--d", dim, "Spatial dimension for the q restriction");
  predict->fallthrough();

  double p = 0.0;
  int reg_levels = 8;
  auto* regularity = app.add_subcommand("regularity", "Run the u = x^(2-1/p) - x counterexample");
  regularity->add_option("--p", p, "Exponent p > 2")->required();
  regularity->add_option("--levels", reg_levels, "Refinement levels (>= 2)")->check(CLI::Range(2, 14));
  regularity->fallthrough();

  std::string pf_delta = "1";
  int pf_levels = 6;
  auto* perturbed = app.add_subcommand("perturbed", "Compare a_h = stiffness with a_h + h^delta mass");
  perturbed->add_option("--delta", pf_delta, "Perturbation exponent, or inf");
  perturbed->add_option("--levels", pf_levels, "Refinement levels (>= 2)")->check(CLI::Range(2, 12));
  perturbed->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  sc_report* report = nullptr;
  if (*table) {
    if (sc_status s = sc_report_run_table(table_id, &report); s != SC_OK) return report_error("table", s);
    return finish(report, opt);
  }
  if (*study) {
    if (sc_status s = sc_report_run_study_file(config_path.c_str(), &report); s != SC_OK) {
      return report_error("study", s);
    }
    return finish(report, opt);
  }
  if (*regularity) {
    if (!(p > 2.0) || !std::isfinite(p)) {
      std::fprintf(stderr, "error: --p must satisfy 2 < p < inf\n");
      return kExitUsage;
    }
    if (sc_status s = sc_report_run_regularity(p, reg_levels, &report); s != SC_OK) {
      return report_error("regularity", s);
    }
    return finish(report, opt);
  }
  try {
    if (*perturbed) {
      const double d = parse_extended(pf_delta, "--delta");
      if (sc_status s = sc_report_run_perturbed_form(d, std::isinf(d), pf_levels, &report); s != SC_OK) {
        return report_error("perturbed", s);
      }
      return finish(report, opt);
    }

    sc_rate_inputs in{};
    in.gamma = parse_extended(gamma_s, "--gamma");
    in.eta = parse_extended(eta_s, "--eta");
    const double delta = parse_extended(delta_s, "--delta");
    in.delta_infinite = std::isinf(delta);
    in.delta = in.delta_infinite ? 0.0 : delta;
    in.mu = mu;
    in.nu = nu;
    in.s = s_order;
    in.r = r;
    in.has_q = q.has_value();
    in.q = q.value_or(2.0);
    in.dimension = dim;
    sc_rate_outputs out{};
    if (sc_status s = sc_predict(&in, &out); s != SC_OK) return report_error("predict", s);
    std::printf("sigma = %.6g\n", out.sigma);
    if (out.has_sigma_prime) std::printf("sigma' = %.6g\n", out.sigma_prime);
    std::printf("order (s = %d norm) r - s + sigma = %.6g\n", s_order, out.order_s);
    if (out.has_sigma_prime) std::printf("order (L2 norm) r + sigma' = %.6g\n", out.order_l2);
    return kExitPass;
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
