#include "superclose/study.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <memory>

#include "superclose/function_spec.hpp"
#include "superclose/space.hpp"
#include "format.hpp"

namespace superclose {

std::string to_string(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::identical: return "identical";
    case PerturbationKind::single_node: return "single_node";
    case PerturbationKind::boundary_band: return "boundary_band";
    case PerturbationKind::shifted_second_node: return "shifted_second_node";
  }
  return "?";
}

double Perturbation::nominal_gamma(int dimension) const {
  switch (kind) {
    case PerturbationKind::identical: return kInfinity;
    case PerturbationKind::single_node: return dimension;
    case PerturbationKind::boundary_band:
    case PerturbationKind::shifted_second_node: return 1.0;
  }
  return 0.0;
}

void StudyConfig::validate() const {
  require(dimension == 1 || dimension == 2, "dimension must be 1 or 2");
  require(degree == 1 || degree == 2, "degree must be 1 or 2");
  require(levels >= 2, "levels must be >= 2");
  require(n0 >= 2, "n0 must be >= 2");
  require(!norms.empty(), "at least one norm is required");
  for (const NormSpec& n : norms) {
    n.validate();
    require(n.eta == 2.0 && !n.region, "study norms must be unrestricted W^{s,2} norms");
  }
  require(perturbation.fraction >= 0.0, "perturbation fraction must be >= 0");
  if (perturbation.kind == PerturbationKind::boundary_band) {
    require(dimension == 2, "boundary_band perturbation requires dimension 2");
  }
  if (perturbation.kind == PerturbationKind::shifted_second_node) {
    require(dimension == 1, "shifted_second_node perturbation requires dimension 1");
  }
  for (const NormSpec& n : norms) require(n.s <= 1, "norm order must be 0 or 1");
  solver.validate();
  (void)functions::by_name(u, dimension);
}

RateInputs StudyConfig::rate_inputs() const {
  RateInputs in = rates;
  in.s = std::max(form.order(), plus_form().order());
  in.r = degree + 1;
  in.dimension = dimension;
  return in;
}

MeshPair build_study_pair(const StudyConfig& cfg, int n) {
  auto a = std::make_shared<const Mesh>(cfg.dimension == 1 ? build_uniform_interval(n)
                                                           : build_uniform_square(n));
  const double h = a->h();
  const Vec2 shift{cfg.perturbation.fraction * h, 0.0};
  std::shared_ptr<const Mesh> b;
  switch (cfg.perturbation.kind) {
    case PerturbationKind::identical:
      b = std::make_shared<const Mesh>(*a);
      break;
    case PerturbationKind::single_node:
      b = std::make_shared<const Mesh>(perturb_node_nearest(*a, cfg.perturbation.point, shift));
      break;
    case PerturbationKind::boundary_band:
      b = std::make_shared<const Mesh>(perturb_boundary_band(*a, h / std::sqrt(2.0), shift));
      break;
    case PerturbationKind::shifted_second_node:
      b = std::make_shared<const Mesh>(perturb_node_nearest(*a, Vec2{h, 0.0}, shift));
      break;
  }
  return classify_pair(a, b, cfg.perturbation.nominal_gamma(cfg.dimension));
}

namespace {

StudyRow run_level(const StudyConfig& cfg, const FunctionSpec& u, int level) {
  const int n = cfg.n0 << level;
  const MeshPair pair = build_study_pair(cfg, n);
  auto sa = std::make_shared<const FeSpace>(pair.mesh_a_ptr(), cfg.degree, true);
  auto sb = std::make_shared<const FeSpace>(pair.mesh_b_ptr(), cfg.degree, true);
  const FeFunction ra = project(sa, cfg.form, u, cfg.solver);
  const FeFunction rb = project(sb, cfg.plus_form(), u, cfg.solver);

  const SharedDofMap map(pair, sa, sb);
  const FeFunction pa = intersection_project(map, ra);
  const FeFunction pb = intersection_project(map, rb);
  std::vector<double> da(ra.coeffs()), db(rb.coeffs());
  for (std::size_t i = 0; i < da.size(); ++i) da[i] -= pa.coeffs()[i];
  for (std::size_t i = 0; i < db.size(); ++i) db[i] -= pb.coeffs()[i];
  const FeFunction defect_a(sa, std::move(da));
  const FeFunction defect_b(sb, std::move(db));

  StudyRow row;
  row.level = level;
  row.n = n;
  row.h = std::max(pair.mesh_a().h(), pair.mesh_b().h());
  row.differing_measure = pair.differing_region_measure();
  for (const NormSpec& spec : cfg.norms) {
    row.values.push_back(cross_mesh_norm({ra, rb, pair}, spec));
    row.naive_bounds.push_back(sobolev_norm_exact_diff(rb, u, spec) +
                               sobolev_norm_exact_diff(ra, u, spec));
    row.projector_defects.push_back(cross_mesh_norm({defect_a, defect_b, pair}, spec));
  }
  return row;
}

}  // namespace

std::vector<double> StudyResult::values(std::size_t norm) const {
  std::vector<double> v;
  for (const StudyRow& r : rows) v.push_back(r.values.at(norm));
  return v;
}

std::vector<double> StudyResult::h_values() const {
  std::vector<double> v;
  for (const StudyRow& r : rows) v.push_back(r.h);
  return v;
}

std::optional<double> StudyResult::final_order(std::size_t norm) const {
  if (rows.empty()) return std::nullopt;
  return rows.back().orders.at(norm);
}

StudyResult run_projection_study(const StudyConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const FunctionSpec u = functions::by_name(cfg.u, cfg.dimension);

  StudyResult result;
  result.config = cfg;
  for (int k = 0; k < cfg.levels; ++k) result.rows.push_back(run_level(cfg, u, k));

  const std::size_t m = cfg.norms.size();
  for (StudyRow& r : result.rows) {
    // h scales exactly with 1/n for every recipe; n/n0 avoids rounding noise.
    r.h_ratio = static_cast<double>(r.n) / cfg.n0;
    r.orders.assign(m, std::nullopt);
  }
  result.monotone.assign(m, true);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
      const StudyRow& prev = result.rows[i - 1];
      StudyRow& cur = result.rows[i];
      if (!(cur.values[j] < prev.values[j])) result.monotone[j] = false;
      if (prev.values[j] > 0.0 && cur.values[j] > 0.0) {
        const std::array<double, 2> hs{prev.h, cur.h};
        const std::array<double, 2> vs{prev.values[j], cur.values[j]};
        cur.orders[j] = observed_orders(hs, vs).front();
      }
    }
  }

  const RateInputs in = cfg.rate_inputs();
  if (in.violations().empty()) {
    result.sigma = predicted_sigma(in);
    if (in.s == 1) result.sigma_prime = predicted_sigma_prime(in);
    for (const NormSpec& spec : cfg.norms) {
      if (spec.s == in.s || (spec.s == 0 && in.s == 1)) {
        result.predicted_orders.push_back(predicted_order(in, spec.s));
      } else {
        result.predicted_orders.push_back(std::nullopt);
      }
    }
  } else {
    result.predicted_orders.assign(m, std::nullopt);
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

StudyConfig regularity_config(const std::string& u, int levels) {
  StudyConfig cfg;
  cfg.name = "regularity";
  cfg.dimension = 1;
  cfg.degree = 1;
  cfg.form = BilinearFormSpec::stiffness();
  cfg.perturbation = Perturbation::shifted_second_node(0.5);
  cfg.u = u;
  cfg.n0 = 8;
  cfg.levels = levels;
  cfg.norms = {NormSpec::l2(), NormSpec::h1()};
  cfg.rates.gamma = 1.0;
  return cfg;
}

RegularityResult run_regularity_study(double p, int levels) {
  require(p > 2.0 && std::isfinite(p), "regularity study requires 2 < p < inf");
  RegularityResult r;
  r.p = p;
  r.rate_l2 = 2.5 - 1.0 / p;
  r.rate_h1 = 1.5 - 1.0 / p;
  r.study = run_projection_study(regularity_config("power:" + fmt_double(p), levels));
  return r;
}

PerturbedFormResult run_perturbed_form_study(Delta delta, int levels, int degree) {
  StudyConfig cfg;
  cfg.dimension = 1;
  cfg.degree = degree;
  cfg.form = BilinearFormSpec::stiffness();
  cfg.form_plus = BilinearFormSpec::perturbed(BilinearFormSpec::stiffness(), delta,
                                              BilinearFormSpec::mass());
  cfg.u = "sin";
  cfg.n0 = 8;
  cfg.levels = levels;
  cfg.norms = {NormSpec::h1(), NormSpec::l2()};
  cfg.rates.delta = delta;
  cfg.rates.mu = 0;
  cfg.rates.nu = 0;
  cfg.rates.q = 2.0;

  PerturbedFormResult out;
  out.delta = delta;

  StudyConfig same = cfg;
  same.name = "perturbed_form_identical";
  same.perturbation = Perturbation::identical();
  same.rates.gamma = kInfinity;
  out.identical = run_projection_study(same);

  StudyConfig near = cfg;
  near.name = "perturbed_form_nearby";
  near.perturbation = Perturbation::single_node({0.25, 0.0}, 0.25);
  near.rates.gamma = 1.0;
  out.nearby = run_projection_study(near);
  return out;
}

}  // namespace superclose
