#include "superclose/tables.hpp"

#include <array>
#include <string>

namespace superclose {

namespace {

StudyConfig one_d(int degree, BilinearFormSpec form, std::vector<NormSpec> norms) {
  StudyConfig c;
  c.name = "1d_" + to_string(form.kind) + "_p" + std::to_string(degree);
  c.dimension = 1;
  c.degree = degree;
  c.form = std::move(form);
  c.perturbation = Perturbation::single_node({0.25, 0.0}, 0.25);
  c.u = "sin";
  c.n0 = 8;
  c.levels = 6;
  c.norms = std::move(norms);
  c.rates.gamma = 1.0;
  return c;
}

StudyConfig two_d(BilinearFormSpec form, Perturbation pert, int levels, std::vector<NormSpec> norms) {
  StudyConfig c;
  c.name = "2d_" + to_string(form.kind) + "_" + to_string(pert.kind);
  c.dimension = 2;
  c.degree = 1;
  c.form = std::move(form);
  c.perturbation = pert;
  c.u = "sin";
  c.n0 = 4;
  c.levels = levels;
  c.norms = std::move(norms);
  c.rates.gamma = pert.nominal_gamma(2);
  return c;
}

GoldenColumn column(std::string header, std::string key, std::size_t study, std::size_t norm,
                    std::vector<double> printed, double value_tol, double order,
                    double order_tol) {
  GoldenColumn g;
  g.header = std::move(header);
  g.key = std::move(key);
  g.study = study;
  g.norm = norm;
  g.printed = std::move(printed);
  g.value_tolerance = value_tol;
  g.order_target = order;
  g.order_tolerance = order_tol;
  return g;
}

std::array<TableSpec, kTableCount> build_tables() {
  const auto mass = BilinearFormSpec::mass();
  const auto stiff = BilinearFormSpec::stiffness();
  const auto node2d = Perturbation::single_node({0.25, 0.25}, 0.25);
  const auto band = Perturbation::boundary_band(0.25);
  std::array<TableSpec, kTableCount> t;

  t[0].id = 1;
  t[0].caption = "L2-supercloseness of L2-projections, 1-D, nearby meshes (gamma = 1)";
  t[0].studies = {one_d(1, mass, {NormSpec::l2()}), one_d(2, mass, {NormSpec::l2()})};
  t[0].columns = {
      column("L2 (r=2)", "L2_r2", 0, 0,
             {3.2150e-03, 5.6505e-04, 9.9837e-05, 1.7645e-05, 3.1189e-06, 5.5132e-07}, 0.005,
             2.50, 0.02),
      column("L2 (r=3)", "L2_r3", 1, 0,
             {1.2843e-04, 1.0676e-05, 9.1277e-07, 7.9301e-08, 6.9484e-09, 6.1146e-10}, 0.01,
             3.51, 0.03)};
  t[0].runtime_limit_seconds = 10.0;

  t[1].id = 2;
  t[1].caption = "H1-supercloseness of elliptic projections, 1-D, nearby meshes (gamma = 1)";
  t[1].studies = {one_d(1, stiff, {NormSpec::h1()}), one_d(2, stiff, {NormSpec::h1()})};
  t[1].columns = {
      column("H1 (r=2)", "H1_r2", 0, 0,
             {1.4451e-01, 5.1203e-02, 1.8081e-02, 6.3851e-03, 2.2558e-03, 7.9723e-04}, 0.01,
             1.50, 0.02),
      column("H1 (r=3)", "H1_r3", 1, 0,
             {7.4390e-03, 1.2835e-03, 2.2408e-04, 3.9364e-05, 6.9369e-06, 1.2243e-06}, 0.01,
             2.50, 0.02)};

  t[2].id = 3;
  t[2].caption = "L2-supercloseness of elliptic projections, 1-D, nearby meshes (gamma = 1)";
  t[2].studies = {one_d(1, stiff, {NormSpec::l2()}), one_d(2, stiff, {NormSpec::l2()})};
  t[2].columns = {
      column("L2 (r=2)", "L2_r2", 0, 0,
             {3.4546e-03, 6.1937e-04, 1.1019e-04, 1.9537e-05, 3.4587e-06, 6.1186e-07}, 0.01,
             2.50, 0.02),
      column("L2 (r=3)", "L2_r3", 1, 0,
             {1.7770e-04, 1.5493e-05, 1.3576e-06, 1.1943e-07, 1.0530e-08, 9.2955e-10}, 0.01,
             3.50, 0.03)};

  t[3].id = 4;
  t[3].caption = "L2-supercloseness of L2-projections, 2-D, nearby meshes (gamma = 2)";
  t[3].studies = {two_d(mass, node2d, 5, {NormSpec::l2()})};
  t[3].columns = {column("L2 (r=2)", "L2_r2", 0, 0,
                         {6.3533e-03, 7.5614e-04, 8.8718e-05, 1.1020e-05, 1.3781e-06}, 0.02,
                         3.00, 0.05)};
  t[3].columns[0].checked_levels = {4};
  t[3].runtime_limit_seconds = 120.0;

  t[4].id = 5;
  t[4].caption = "H1- and L2-supercloseness of elliptic projections, 2-D, nearby meshes (gamma = 2)";
  t[4].studies = {two_d(stiff, node2d, 5, {NormSpec::h1(), NormSpec::l2()})};
  t[4].columns = {
      column("H1 (r=2)", "H1_r2", 0, 0,
             {2.1441e-01, 4.7374e-02, 1.1359e-02, 2.8114e-03, 7.0176e-04}, 0.0, 2.00, 0.05),
      column("L2 (r=2)", "L2_r2", 0, 1,
             {6.6386e-03, 7.8678e-04, 9.6370e-05, 1.2033e-05, 1.5106e-06}, 0.0, 2.99, 0.05)};

  t[5].id = 6;
  t[5].caption = "L2-projection and elliptic projection supercloseness, 2-D, boundary band (gamma = 1)";
  t[5].studies = {two_d(mass, band, 6, {NormSpec::l2()}),
                  two_d(stiff, band, 6, {NormSpec::h1(), NormSpec::l2()})};
  t[5].columns = {
      column("L2 proj. L2", "mass_L2_r2", 0, 0,
             {2.2504e-02, 4.8445e-03, 1.0019e-03, 1.9159e-04, 3.5132e-05, 6.3195e-06}, 0.0,
             2.475, 0.05),
      column("elliptic H1", "stiffness_H1_r2", 1, 0,
             {5.4318e-01, 2.8504e-01, 1.2522e-01, 4.8674e-02, 1.7931e-02, 6.4595e-03}, 0.0,
             1.473, 0.05),
      column("elliptic L2", "stiffness_L2_r2", 1, 1,
             {1.9864e-02, 4.8794e-03, 1.0528e-03, 1.9842e-04, 3.5671e-05, 6.3290e-06}, 0.0,
             2.495, 0.05)};
  return t;
}

}  // namespace

const TableSpec& table_spec(int id) {
  static const std::array<TableSpec, kTableCount> tables = build_tables();
  require(id >= 1 && id <= kTableCount,
          "unknown table id " + std::to_string(id) + " (expected 1.." +
              std::to_string(kTableCount) + ")");
  return tables[static_cast<std::size_t>(id - 1)];
}

}  // namespace superclose
