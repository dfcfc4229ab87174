// Acceptance runner. Prints one PASS/FAIL line per criterion, preceded by the
// individual checks. Usage: acceptance [criterion...]  (default: all, 1-9).
// Exit status 0 iff every selected criterion passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "superclose/clipping.hpp"
#include "superclose/norms.hpp"
#include "superclose/projection.hpp"
#include "superclose/report.hpp"
#include "superclose/study.hpp"
#include "superclose/theory.hpp"

using namespace superclose;

namespace {

class Criterion {
 public:
  void check(bool ok, const std::string& what) {
    std::printf("  [%s] %s\n", ok ? "ok" : "xx", what.c_str());
    passed_ = passed_ && ok;
  }
  bool passed() const { return passed_; }

 private:
  bool passed_ = true;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

struct ValueSpec {
  std::size_t column;
  std::string label;
  std::vector<double> printed;
  double rel_tol;                 ///< 0: no value check
  std::optional<std::size_t> only_level;
  double order;
  double order_tol;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_table(Criterion& c, int id, const std::vector<ValueSpec>& specs,
                 std::optional<double> runtime_limit) {
  const auto t0 = std::chrono::steady_clock::now();
  const Report r = run_table(id);
  const double elapsed = seconds_since(t0);
  for (const ValueSpec& s : specs) {
    const ReportColumn& col = r.columns.at(s.column);
    if (s.rel_tol > 0.0) {
      double worst = 0.0;
      std::size_t at = 0;
      for (std::size_t k = 0; k < s.printed.size(); ++k) {
        if (s.only_level && *s.only_level != k) continue;
        const double rel = std::abs(col.values.at(k) - s.printed[k]) / s.printed[k];
        if (rel >= worst) {
          worst = rel;
          at = k;
        }
      }
      c.check(worst <= s.rel_tol,
              s.label + fmt(" values: worst relative error %.3f%% (tolerance %.1f%%)", 100 * worst,
                            100 * s.rel_tol) +
                  fmt(", %.4e vs printed %.4e", col.values.at(at), s.printed[at]));
    }
    const std::optional<double> o = col.orders.back();
    c.check(o && std::abs(*o - s.order) <= s.order_tol,
            s.label + fmt(" finest order %.4f (target %.3f +- %.3f)", o.value_or(NAN), s.order,
                          s.order_tol));
  }
  if (runtime_limit) {
    c.check(elapsed < *runtime_limit, fmt("runtime %.2f s (limit %.0f s)", elapsed, *runtime_limit));
  }
}

bool criterion_1() {
  Criterion c;
  check_table(c, 1,
              {{0, "affine",
                {3.2150e-03, 5.6505e-04, 9.9837e-05, 1.7645e-05, 3.1189e-06, 5.5132e-07},
                0.005, {}, 2.50, 0.02},
               {1, "quadratic",
                {1.2843e-04, 1.0676e-05, 9.1277e-07, 7.9301e-08, 6.9484e-09, 6.1146e-10},
                0.01, {}, 3.51, 0.03}},
              10.0);
  return c.passed();
}

bool criterion_2() {
  Criterion c;
  check_table(c, 2,
              {{0, "affine H1",
                {1.4451e-01, 5.1203e-02, 1.8081e-02, 6.3851e-03, 2.2558e-03, 7.9723e-04}, 0.01,
                {}, 1.50, 0.02},
               {1, "quadratic H1",
                {7.4390e-03, 1.2835e-03, 2.2408e-04, 3.9364e-05, 6.9369e-06, 1.2243e-06}, 0.01,
                {}, 2.50, 0.02}},
              {});
  return c.passed();
}

bool criterion_3() {
  Criterion c;
  check_table(c, 3,
              {{0, "affine L2",
                {3.4546e-03, 6.1937e-04, 1.1019e-04, 1.9537e-05, 3.4587e-06, 6.1186e-07}, 0.01,
                {}, 2.50, 0.02},
               {1, "quadratic L2",
                {1.7770e-04, 1.5493e-05, 1.3576e-06, 1.1943e-07, 1.0530e-08, 9.2955e-10}, 0.01,
                {}, 3.50, 0.03}},
              {});
  return c.passed();
}

bool criterion_4() {
  Criterion c;
  check_table(c, 4,
              {{0, "2-D affine L2", {6.3533e-03, 7.5614e-04, 8.8718e-05, 1.1020e-05, 1.3781e-06},
                0.02, 4, 3.00, 0.05}},
              120.0);
  return c.passed();
}

bool criterion_5() {
  Criterion c;
  check_table(c, 5,
              {{0, "2-D elliptic H1", {}, 0.0, {}, 2.00, 0.05},
               {1, "2-D elliptic L2", {}, 0.0, {}, 2.99, 0.05}},
              {});
  return c.passed();
}

bool criterion_6() {
  Criterion c;
  check_table(c, 6,
              {{0, "band L2-projection L2", {}, 0.0, {}, 2.475, 0.05},
               {1, "band elliptic H1", {}, 0.0, {}, 1.473, 0.05},
               {2, "band elliptic L2", {}, 0.0, {}, 2.495, 0.05}},
              {});
  return c.passed();
}

bool criterion_7() {
  Criterion c;
  const RegularityResult r = run_regularity_study(4.0, 8);
  const auto l2 = r.study.final_order(0);
  const auto h1 = r.study.final_order(1);
  c.check(l2 && std::abs(*l2 - 2.25) <= 0.05,
          fmt("p=4 L2 order over the last two levels %.4f (target 2.25 +- 0.05)", l2.value_or(NAN)));
  c.check(h1 && std::abs(*h1 - 1.25) <= 0.05,
          fmt("p=4 H1 order over the last two levels %.4f (target 1.25 +- 0.05)", h1.value_or(NAN)));
  return c.passed();
}

// ---- criterion 8: properties ----

FunctionSpec as_spec(const FeFunction& f) {
  FunctionSpec u;
  u.name = "discrete";
  u.dimension = f.space().dimension();
  u.value = [&f](const Vec2& x) { return evaluate(f, x).value; };
  u.gradient = [&f](const Vec2& x) { return evaluate(f, x).gradient; };
  return u;
}

std::shared_ptr<const Mesh> uniform(int dim, int n) {
  return std::make_shared<const Mesh>(dim == 1 ? build_uniform_interval(n) : build_uniform_square(n));
}

struct PairSetup {
  std::shared_ptr<const Mesh> a, b;
  MeshPair pair;
};

PairSetup perturbed_pair(int dim, int n, bool band) {
  auto a = uniform(dim, n);
  const double h = a->h();
  auto b = std::make_shared<const Mesh>(
      band ? perturb_boundary_band(*a, h / std::sqrt(2.0), {h / 4, 0.0})
           : perturb_node_nearest(*a, dim == 1 ? Vec2{0.25, 0.0} : Vec2{0.25, 0.25}, {h / 4, 0.0}));
  MeshPair p = classify_pair(a, b, band ? 1.0 : dim);
  return {a, b, std::move(p)};
}

FeFunction random_function(std::shared_ptr<const FeSpace> s, std::mt19937& rng, double density) {
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::bernoulli_distribution keep(density);
  std::vector<double> c(s->num_dofs(), 0.0);
  for (int dof : s->free_dofs()) {
    if (keep(rng)) c[dof] = val(rng);
  }
  return FeFunction(std::move(s), std::move(c));
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

bool criterion_8() {
  Criterion c;
  const std::vector<BilinearFormSpec> forms{BilinearFormSpec::mass(), BilinearFormSpec::stiffness()};

  {
    double worst_orth = 0.0, worst_idem = 0.0;
    for (int dim : {1, 2}) {
      for (int degree : {1, 2}) {
        auto s = std::make_shared<const FeSpace>(uniform(dim, dim == 1 ? 16 : 4), degree, true);
        const FunctionSpec u = functions::sine_product(dim);
        for (const BilinearFormSpec& form : forms) {
          const FeFunction r = project(s, form, u);
          for (int dof : s->free_dofs()) {
            std::vector<double> e(s->num_dofs(), 0.0);
            e[dof] = 1.0;
            const FeFunction w(s, e);
            worst_orth = std::max(worst_orth, std::abs(form_value(form, r, w) - form_value(form, u, w)));
          }
          const FeFunction rr = project(s, form, as_spec(r));
          worst_idem = std::max(worst_idem, max_abs_diff(rr.coeffs(), r.coeffs()));
        }
      }
    }
    c.check(worst_orth <= 1e-10, fmt("Galerkin orthogonality max |a(r_h u - u, w_h)| = %.2e (<= 1e-10)", worst_orth));
    c.check(worst_idem <= 1e-11, fmt("projector idempotence max |r_h r_h u - r_h u| = %.2e (<= 1e-11)", worst_idem));
  }

  {
    double worst = 0.0;
    for (int n : {8, 16, 32, 64}) {
      auto s = std::make_shared<const FeSpace>(uniform(1, n), 1, true);
      const FunctionSpec u = functions::sine_product(1);
      const FeFunction r = project(s, BilinearFormSpec::stiffness(), u);
      worst = std::max(worst, max_abs_diff(r.coeffs(), interpolate_nodal(s, u).coeffs()));
    }
    c.check(worst <= 1e-11, fmt("1-D elliptic projection vs nodal interpolant max difference %.2e (<= 1e-11)", worst));
  }

  {
    std::mt19937 rng(20240501);
    bool idempotent = true;
    double worst_p1 = 0.0, worst_p2 = 0.0;
    for (const auto& [dim, band] : {std::pair{1, false}, std::pair{2, false}, std::pair{2, true}}) {
      for (int n : {8, 16}) {
        const PairSetup ps = perturbed_pair(dim, n, band);
        for (int degree : {1, 2}) {
          auto sa = std::make_shared<const FeSpace>(ps.a, degree, true);
          auto sb = std::make_shared<const FeSpace>(ps.b, degree, true);
          const SharedDofMap map(ps.pair, sa, sb);
          for (int trial = 0; trial < 10; ++trial) {
            for (const auto& sp : {sa, sb}) {
              const FeFunction f = random_function(sp, rng, 1.0);
              const FeFunction p = intersection_project(map, f);
              idempotent = idempotent && intersection_project(map, p).coeffs() == p.coeffs();
              const double sup_f = sobolev_norm(f, NormSpec{0, kInfinity, {}});
              if (degree == 1) {
                worst_p1 = std::max(worst_p1, sobolev_norm(p, NormSpec{0, kInfinity, {}}) / sup_f);
              } else {
                double cmax = 0.0;
                for (double v : p.coeffs()) cmax = std::max(cmax, std::abs(v));
                worst_p2 = std::max(worst_p2, cmax / sup_f);
              }
            }
          }
        }
      }
    }
    c.check(idempotent, "pi_h idempotence: pi_h pi_h f == pi_h f bit for bit");
    c.check(worst_p1 <= 1.0 + 1e-12,
            fmt("pi_h L-inf stability (P1) max ||pi_h f||/||f|| = %.15f (<= 1 + 1e-12)", worst_p1));
    c.check(worst_p2 <= 1.0 + 1e-12,
            fmt("pi_h coefficient bound (P2) max |c|/||f|| = %.15f (<= 1 + 1e-12)", worst_p2));
  }

  {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dens(0.05, 0.6);
    double worst = 0.0;
    int functions_tested = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const int dim = trial % 2 ? 2 : 1;
      const int degree = trial % 4 < 2 ? 1 : 2;
      auto s = std::make_shared<const FeSpace>(uniform(dim, dim == 1 ? 16 : 6), degree, true);
      std::optional<FeFunction> drawn;
      double supp = 0.0;
      while (supp == 0.0) {
        drawn = random_function(s, rng, dens(rng));
        supp = support_measure(*drawn);
      }
      const FeFunction& f = *drawn;
      ++functions_tested;
      for (int k : {0, 1}) {
        const std::vector<double> c2 = component_norms(f, k, 2.0);
        for (double eta : {4.0, kInfinity}) {
          const std::vector<double> ce = component_norms(f, k, eta);
          const double factor = std::pow(supp, 0.5 - (std::isinf(eta) ? 0.0 : 1.0 / eta));
          for (std::size_t i = 0; i < c2.size(); ++i) {
            if (c2[i] == 0.0) continue;
            worst = std::max(worst, c2[i] / (factor * ce[i]));
          }
        }
      }
    }
    c.check(functions_tested == 200 && worst <= 1.01,
            fmt("Hoelder/support inequality on %.0f random functions: max ratio %.6f (<= 1.01)",
                functions_tested, worst));
  }

  {
    double worst = 0.0;
    for (int n : {4, 8, 16}) {
      for (bool band : {false, true}) {
        const PairSetup ps = perturbed_pair(2, n, band);
        for (std::size_t ka = 0; ka < ps.a->num_elements(); ++ka) {
          const ElementGeometry ga = ps.a->geometry(ka);
          const Polygon pa{ga.vertices[0], ga.vertices[1], ga.vertices[2]};
          double covered = 0.0;
          for (std::size_t kb = 0; kb < ps.b->num_elements(); ++kb) {
            const ElementGeometry gb = ps.b->geometry(kb);
            const Polygon piece = clip_convex(pa, {gb.vertices[0], gb.vertices[1], gb.vertices[2]});
            if (!piece.empty()) covered += signed_area(piece);
          }
          worst = std::max(worst, std::abs(covered - ga.measure));
        }
      }
    }
    c.check(worst <= 1e-10, fmt("clipping area conservation max defect %.2e (<= 1e-10)", worst));
  }

  {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
      RateInputs in;
      in.s = 1;
      in.r = 2 + static_cast<int>(uni(rng) * 3);
      in.gamma = 4.0 * uni(rng);
      in.eta = uni(rng) < 0.2 ? kInfinity : 2.0 + 20.0 * uni(rng);
      in.delta = uni(rng) < 0.2 ? Delta::infinite() : Delta::finite(4.0 * uni(rng));
      in.mu = uni(rng) < 0.5 ? 0 : 1;
      in.nu = uni(rng) < 0.5 ? 0 : 1;
      if (predicted_sigma_prime(in) > predicted_sigma(in)) ++violations;
    }
    c.check(violations == 0, fmt("sigma' <= sigma on 10000 random inputs (%.0f violations)", violations));
  }
  return c.passed();
}

bool criterion_9() {
  Criterion c;
  constexpr double kNoiseFloor = 1e-10;
  for (double delta : {0.0, 1.0, 2.0}) {
    const PerturbedFormResult r = run_perturbed_form_study(Delta::finite(delta), 6);
    // r = 2, s = 1, mu = nu = 0, identical meshes: r - 1 + (delta + 2)/2.
    const double predicted = 1.0 + (delta + 2.0) / 2.0;
    const std::vector<double> v = r.identical.values(0);
    std::optional<double> order;
    std::size_t level = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i - 1] < kNoiseFloor || v[i] < kNoiseFloor) break;
      order = r.identical.rows[i].orders[0];
      level = i;
    }
    c.check(order && *order >= predicted - 0.1,
            fmt("delta=%.0f H1 order %.4f at level ", delta, order.value_or(NAN)) +
                std::to_string(level) + fmt(" (floor %.2f)", predicted - 0.1));
  }
  return c.passed();
}

struct Entry {
  int id;
  const char* title;
  std::function<bool()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Entry> all{
      {1, "1-D L2-projection table", criterion_1},
      {2, "1-D elliptic projection, H1", criterion_2},
      {3, "1-D elliptic projection, L2", criterion_3},
      {4, "2-D L2-projection, gamma = 2", criterion_4},
      {5, "2-D elliptic projection, gamma = 2", criterion_5},
      {6, "2-D boundary band, gamma = 1", criterion_6},
      {7, "regularity counterexample p = 4", criterion_7},
      {8, "property suite", criterion_8},
      {9, "perturbed-form study", criterion_9},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (id < 1 || id > static_cast<int>(all.size())) {
      std::fprintf(stderr, "unknown criterion `%s`\n", argv[i]);
      return 2;
    }
    selected.push_back(id);
  }
  if (selected.empty()) {
    for (const Entry& e : all) selected.push_back(e.id);
  }

  bool ok = true;
  for (int id : selected) {
    const Entry& e = all[id - 1];
    bool passed = false;
    try {
      passed = e.run();
    } catch (const std::exception& ex) {
      std::printf("  [xx] exception: %s\n", ex.what());
    }
    std::printf("%s criterion %d: %s\n", passed ? "PASS" : "FAIL", e.id, e.title);
    std::fflush(stdout);
    ok = ok && passed;
  }
  return ok ? 0 : 1;
}
