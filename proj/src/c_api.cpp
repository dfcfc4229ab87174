#include "superclose/superclose.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "superclose/config.hpp"
#include "superclose/function_spec.hpp"
#include "superclose/mesh.hpp"
#include "superclose/norms.hpp"
#include "superclose/projection.hpp"
#include "superclose/report.hpp"
#include "superclose/theory.hpp"

using namespace superclose;

struct sc_report {
  Report report;
};
struct sc_mesh {
  std::shared_ptr<const Mesh> mesh;
};
struct sc_pair {
  MeshPair pair;
};
struct sc_space {
  std::shared_ptr<const FeSpace> space;
};
struct sc_function {
  FeFunction f;
};

namespace {

thread_local std::string g_last_error;

sc_status set_error(sc_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

sc_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return SC_INVALID_ARGUMENT;
    case ErrorCode::degenerate_mesh: return SC_DEGENERATE_MESH;
    case ErrorCode::out_of_domain: return SC_OUT_OF_DOMAIN;
    case ErrorCode::coercivity_violation: return SC_COERCIVITY_VIOLATION;
    case ErrorCode::solver_failure: return SC_SOLVER_FAILURE;
    case ErrorCode::geometry_failure: return SC_GEOMETRY_FAILURE;
    case ErrorCode::parse_error: return SC_PARSE_ERROR;
    case ErrorCode::io_error: return SC_IO_ERROR;
  }
  return SC_INTERNAL_ERROR;
}

template <class F>
sc_status guarded(F&& body) {
  try {
    body();
    return SC_OK;
  } catch (const Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(SC_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(SC_INTERNAL_ERROR, e.what());
  } catch (...) {
    return set_error(SC_INTERNAL_ERROR, "unknown exception");
  }
}

#define SC_REQUIRE_ARG(cond, what) \
  if (!(cond)) return set_error(SC_INVALID_ARGUMENT, what)

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sc_status make_report(sc_report** out, Report (*build)(const void*), const void* arg) {
  SC_REQUIRE_ARG(out, "output pointer is null");
  *out = nullptr;
  return guarded([&] { *out = new sc_report{build(arg)}; });
}

const ReportColumn* column_at(const sc_report* r, std::size_t c) {
  return c < r->report.columns.size() ? &r->report.columns[c] : nullptr;
}

}  // namespace

extern "C" {

const char* sc_version(void) { return version_string(); }

const char* sc_last_error(void) { return g_last_error.c_str(); }

const char* sc_status_name(sc_status status) {
  switch (status) {
    case SC_OK: return "ok";
    case SC_INTERNAL_ERROR: return "internal error";
    default: break;
  }
  if (status >= SC_INVALID_ARGUMENT && status <= SC_IO_ERROR) {
    return to_string(static_cast<ErrorCode>(status));
  }
  return "unknown status";
}

void sc_string_free(char* s) { std::free(s); }

sc_status sc_predict(const sc_rate_inputs* in, sc_rate_outputs* out) {
  SC_REQUIRE_ARG(in && out, "null argument");
  return guarded([&] {
    RateInputs r;
    r.gamma = in->gamma;
    r.eta = in->eta;
    if (in->delta_infinite) {
      r.delta = Delta::infinite();
    } else {
      require(std::isfinite(in->delta) && in->delta >= 0.0,
              "invalid rate inputs: delta must be >= 0 (or set delta_infinite)");
      r.delta = Delta::finite(in->delta);
    }
    r.mu = in->mu;
    r.nu = in->nu;
    r.s = in->s;
    r.r = in->r;
    r.dimension = in->dimension;
    if (in->has_q) r.q = in->q;
    r.validate();
    sc_rate_outputs o{};
    o.sigma = predicted_sigma(r);
    o.order_s = predicted_order(r, r.s);
    if (r.s == 1) {
      o.has_sigma_prime = 1;
      o.sigma_prime = predicted_sigma_prime(r);
      o.order_l2 = predicted_order(r, 0);
    }
    *out = o;
  });
}

sc_status sc_report_run_table(int id, sc_report** out) {
  return make_report(out, [](const void* a) { return run_table(*static_cast<const int*>(a)); }, &id);
}

sc_status sc_report_run_study_file(const char* path, sc_report** out) {
  SC_REQUIRE_ARG(path, "path is null");
  return make_report(
      out,
      [](const void* a) {
        return study_report(run_projection_study(load_study_config(static_cast<const char*>(a))));
      },
      path);
}

sc_status sc_report_run_study_text(const char* text, sc_report** out) {
  SC_REQUIRE_ARG(text, "text is null");
  return make_report(
      out,
      [](const void* a) {
        return study_report(run_projection_study(parse_study_config_text(static_cast<const char*>(a))));
      },
      text);
}

sc_status sc_report_run_regularity(double p, int levels, sc_report** out) {
  struct Args {
    double p;
    int levels;
  } args{p, levels};
  return make_report(
      out,
      [](const void* a) {
        const auto* x = static_cast<const Args*>(a);
        return regularity_report(run_regularity_study(x->p, x->levels));
      },
      &args);
}

sc_status sc_report_run_perturbed_form(double delta, int delta_infinite, int levels,
                                       sc_report** out) {
  struct Args {
    double delta;
    int infinite;
    int levels;
  } args{delta, delta_infinite, levels};
  return make_report(
      out,
      [](const void* a) {
        const auto* x = static_cast<const Args*>(a);
        require(x->infinite || (std::isfinite(x->delta) && x->delta >= 0.0),
                "delta must be >= 0");
        require(x->levels >= 2, "levels must be >= 2");
        const Delta d = x->infinite ? Delta::infinite() : Delta::finite(x->delta);
        return perturbed_form_report(run_perturbed_form_study(d, x->levels));
      },
      &args);
}

void sc_report_free(sc_report* report) { delete report; }

sc_status sc_report_shape(const sc_report* r, size_t* rows, size_t* columns) {
  SC_REQUIRE_ARG(r && rows && columns, "null argument");
  *rows = r->report.row_count();
  *columns = r->report.columns.size();
  return SC_OK;
}

sc_status sc_report_h_ratio(const sc_report* r, size_t row, double* out) {
  SC_REQUIRE_ARG(r && out, "null argument");
  SC_REQUIRE_ARG(row < r->report.row_count(), "row index out of range");
  *out = r->report.h_ratios[row];
  return SC_OK;
}

sc_status sc_report_value(const sc_report* r, size_t row, size_t column, double* out) {
  SC_REQUIRE_ARG(r && out, "null argument");
  const ReportColumn* c = column_at(r, column);
  SC_REQUIRE_ARG(c, "column index out of range");
  SC_REQUIRE_ARG(row < c->values.size(), "row index out of range");
  *out = c->values[row];
  return SC_OK;
}

sc_status sc_report_order(const sc_report* r, size_t row, size_t column, double* order,
                          int* has_order) {
  SC_REQUIRE_ARG(r && order && has_order, "null argument");
  const ReportColumn* c = column_at(r, column);
  SC_REQUIRE_ARG(c, "column index out of range");
  SC_REQUIRE_ARG(row < c->orders.size(), "row index out of range");
  *has_order = c->orders[row].has_value();
  *order = c->orders[row].value_or(0.0);
  return SC_OK;
}

sc_status sc_report_column_key(const sc_report* r, size_t column, const char** out) {
  SC_REQUIRE_ARG(r && out, "null argument");
  const ReportColumn* c = column_at(r, column);
  SC_REQUIRE_ARG(c, "column index out of range");
  *out = c->key.c_str();
  return SC_OK;
}

sc_status sc_report_predicted_order(const sc_report* r, size_t column, double* order,
                                    int* has_order) {
  SC_REQUIRE_ARG(r && order && has_order, "null argument");
  const ReportColumn* c = column_at(r, column);
  SC_REQUIRE_ARG(c, "column index out of range");
  *has_order = c->predicted_order.has_value();
  *order = c->predicted_order.value_or(0.0);
  return SC_OK;
}

sc_status sc_report_check_count(const sc_report* r, size_t* out) {
  SC_REQUIRE_ARG(r && out, "null argument");
  *out = r->report.checks.size();
  return SC_OK;
}

sc_status sc_report_check(const sc_report* r, size_t index, const char** name, int* passed,
                          const char** detail) {
  SC_REQUIRE_ARG(r && name && passed && detail, "null argument");
  SC_REQUIRE_ARG(index < r->report.checks.size(), "check index out of range");
  const ReportCheck& c = r->report.checks[index];
  *name = c.name.c_str();
  *passed = c.passed;
  *detail = c.detail.c_str();
  return SC_OK;
}

sc_status sc_report_passed(const sc_report* r, int* passed) {
  SC_REQUIRE_ARG(r && passed, "null argument");
  *passed = r->report.passed();
  return SC_OK;
}

sc_status sc_report_render_text(const sc_report* r, int with_metadata, char** out) {
  SC_REQUIRE_ARG(r && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = duplicate(render_text(r->report, with_metadata != 0)); });
}

sc_status sc_report_write_csv(const sc_report* r, const char* path) {
  SC_REQUIRE_ARG(r && path, "null argument");
  return guarded([&] { write_csv_file(path, r->report); });
}

sc_status sc_mesh_uniform(int dimension, int n, sc_mesh** out) {
  SC_REQUIRE_ARG(out, "output pointer is null");
  *out = nullptr;
  return guarded([&] {
    require(dimension == 1 || dimension == 2, "dimension must be 1 or 2");
    auto m = std::make_shared<const Mesh>(dimension == 1 ? build_uniform_interval(n)
                                                         : build_uniform_square(n));
    *out = new sc_mesh{std::move(m)};
  });
}

sc_status sc_mesh_perturb_node(const sc_mesh* mesh, double px, double py, double dx, double dy,
                               sc_mesh** out) {
  SC_REQUIRE_ARG(mesh && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_shared<const Mesh>(perturb_node_nearest(*mesh->mesh, {px, py}, {dx, dy}));
    *out = new sc_mesh{std::move(m)};
  });
}

sc_status sc_mesh_perturb_band(const sc_mesh* mesh, double band, double dx, double dy,
                               sc_mesh** out) {
  SC_REQUIRE_ARG(mesh && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto m = std::make_shared<const Mesh>(perturb_boundary_band(*mesh->mesh, band, {dx, dy}));
    *out = new sc_mesh{std::move(m)};
  });
}

sc_status sc_mesh_info(const sc_mesh* mesh, int* dimension, size_t* nodes, size_t* elements,
                       double* h) {
  SC_REQUIRE_ARG(mesh, "mesh is null");
  if (dimension) *dimension = mesh->mesh->dimension();
  if (nodes) *nodes = mesh->mesh->num_nodes();
  if (elements) *elements = mesh->mesh->num_elements();
  if (h) *h = mesh->mesh->h();
  return SC_OK;
}

sc_status sc_mesh_write(const sc_mesh* mesh, const char* path) {
  SC_REQUIRE_ARG(mesh && path, "null argument");
  return guarded([&] {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io_error, std::string("cannot open `") + path + "` for writing");
    write_mesh(out, *mesh->mesh);
  });
}

void sc_mesh_free(sc_mesh* mesh) { delete mesh; }

sc_status sc_pair_create(const sc_mesh* a, const sc_mesh* b, double gamma, sc_pair** out) {
  SC_REQUIRE_ARG(a && b && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new sc_pair{classify_pair(a->mesh, b->mesh, gamma)}; });
}

sc_status sc_pair_differing_measure(const sc_pair* pair, double* out) {
  SC_REQUIRE_ARG(pair && out, "null argument");
  *out = pair->pair.differing_region_measure();
  return SC_OK;
}

void sc_pair_free(sc_pair* pair) { delete pair; }

sc_status sc_space_create(const sc_mesh* mesh, int degree, sc_space** out) {
  SC_REQUIRE_ARG(mesh && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new sc_space{std::make_shared<const FeSpace>(mesh->mesh, degree, true)};
  });
}

sc_status sc_space_num_dofs(const sc_space* space, size_t* out) {
  SC_REQUIRE_ARG(space && out, "null argument");
  *out = space->space->num_dofs();
  return SC_OK;
}

void sc_space_free(sc_space* space) { delete space; }

sc_status sc_project(const sc_space* space, sc_form form, const char* u, sc_function** out) {
  SC_REQUIRE_ARG(space && u && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    BilinearFormSpec f;
    switch (form) {
      case SC_FORM_MASS: f = BilinearFormSpec::mass(); break;
      case SC_FORM_STIFFNESS: f = BilinearFormSpec::stiffness(); break;
      default: fail(ErrorCode::invalid_argument, "unknown form");
    }
    const FunctionSpec spec = functions::by_name(u, space->space->dimension());
    *out = new sc_function{project(space->space, f, spec)};
  });
}

sc_status sc_function_coefficients(const sc_function* f, const double** data, size_t* n) {
  SC_REQUIRE_ARG(f && data && n, "null argument");
  *data = f->f.coeffs().data();
  *n = f->f.coeffs().size();
  return SC_OK;
}

sc_status sc_function_write(const sc_function* f, const char* path) {
  SC_REQUIRE_ARG(f && path, "null argument");
  return guarded([&] {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::io_error, std::string("cannot open `") + path + "` for writing");
    write_function(out, f->f);
  });
}

void sc_function_free(sc_function* f) { delete f; }

sc_status sc_cross_mesh_norm(const sc_pair* pair, const sc_function* f_a, const sc_function* f_b,
                             int s, double* out) {
  SC_REQUIRE_ARG(pair && f_a && f_b && out, "null argument");
  return guarded([&] {
    require(s == 0 || s == 1, "s must be 0 or 1");
    *out = cross_mesh_norm({f_a->f, f_b->f, pair->pair}, NormSpec{s, 2.0, {}});
  });
}

}  // extern "C"
