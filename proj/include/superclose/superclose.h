/* C interface to the superclose library.
 *
 * Every fallible call returns an sc_status; on failure sc_last_error() holds a
 * message for the calling thread until its next failing call. Objects are
 * opaque handles released with the matching *_free function (NULL is
 * accepted). Strings returned through `char**` are owned by the caller and
 * released with sc_string_free; `const char*` results are borrowed from the
 * handle they came from.
 */
#ifndef SUPERCLOSE_H
#define SUPERCLOSE_H

#include <stddef.h>

#if defined(SC_BUILDING_LIBRARY)
#define SC_API __attribute__((visibility("default")))
#else
#define SC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_INVALID_ARGUMENT = 1,
  SC_DEGENERATE_MESH = 2,
  SC_OUT_OF_DOMAIN = 3,
  SC_COERCIVITY_VIOLATION = 4,
  SC_SOLVER_FAILURE = 5,
  SC_GEOMETRY_FAILURE = 6,
  SC_PARSE_ERROR = 7,
  SC_IO_ERROR = 8,
  SC_INTERNAL_ERROR = 100
} sc_status;

SC_API const char* sc_version(void);
SC_API const char* sc_last_error(void);
SC_API const char* sc_status_name(sc_status status);
SC_API void sc_string_free(char* s);

/* ---- rate predictors ---- */

typedef struct sc_rate_inputs {
  double gamma;
  double eta;          /* may be INFINITY */
  double delta;        /* ignored when delta_infinite != 0 */
  int delta_infinite;
  int mu;
  int nu;
  int s;
  int r;
  int has_q;           /* when nonzero, q is checked against `dimension` */
  double q;
  int dimension;
} sc_rate_inputs;

typedef struct sc_rate_outputs {
  double sigma;
  double order_s;          /* r - s + sigma */
  int has_sigma_prime;     /* s == 1 */
  double sigma_prime;
  double order_l2;         /* r + sigma' */
} sc_rate_outputs;

/* SC_INVALID_ARGUMENT lists every violated constraint in sc_last_error(). */
SC_API sc_status sc_predict(const sc_rate_inputs* in, sc_rate_outputs* out);

/* ---- reports ---- */

typedef struct sc_report sc_report;

SC_API sc_status sc_report_run_table(int id, sc_report** out);
SC_API sc_status sc_report_run_study_file(const char* path, sc_report** out);
SC_API sc_status sc_report_run_study_text(const char* text, sc_report** out);
SC_API sc_status sc_report_run_regularity(double p, int levels, sc_report** out);
SC_API sc_status sc_report_run_perturbed_form(double delta, int delta_infinite, int levels,
                                              sc_report** out);
SC_API void sc_report_free(sc_report* report);

SC_API sc_status sc_report_shape(const sc_report* report, size_t* rows, size_t* columns);
SC_API sc_status sc_report_h_ratio(const sc_report* report, size_t row, double* out);
SC_API sc_status sc_report_value(const sc_report* report, size_t row, size_t column, double* out);
/* *has_order is 0 at level 0. */
SC_API sc_status sc_report_order(const sc_report* report, size_t row, size_t column,
                                 double* order, int* has_order);
SC_API sc_status sc_report_column_key(const sc_report* report, size_t column, const char** out);
SC_API sc_status sc_report_predicted_order(const sc_report* report, size_t column,
                                           double* order, int* has_order);
SC_API sc_status sc_report_check_count(const sc_report* report, size_t* out);
SC_API sc_status sc_report_check(const sc_report* report, size_t index, const char** name,
                                 int* passed, const char** detail);
/* *passed = 1 iff every check passed. */
SC_API sc_status sc_report_passed(const sc_report* report, int* passed);
SC_API sc_status sc_report_render_text(const sc_report* report, int with_metadata, char** out);
SC_API sc_status sc_report_write_csv(const sc_report* report, const char* path);

/* ---- meshes, spaces, functions ---- */

typedef struct sc_mesh sc_mesh;
typedef struct sc_pair sc_pair;
typedef struct sc_space sc_space;
typedef struct sc_function sc_function;

typedef enum sc_form { SC_FORM_MASS = 0, SC_FORM_STIFFNESS = 1 } sc_form;

/* Uniform mesh of (0,1) or (0,1)^2 with n subdivisions per direction. */
SC_API sc_status sc_mesh_uniform(int dimension, int n, sc_mesh** out);
SC_API sc_status sc_mesh_perturb_node(const sc_mesh* mesh, double px, double py, double dx,
                                      double dy, sc_mesh** out);
SC_API sc_status sc_mesh_perturb_band(const sc_mesh* mesh, double band_distance, double dx,
                                      double dy, sc_mesh** out);
SC_API sc_status sc_mesh_info(const sc_mesh* mesh, int* dimension, size_t* nodes,
                              size_t* elements, double* h);
SC_API sc_status sc_mesh_write(const sc_mesh* mesh, const char* path);
SC_API void sc_mesh_free(sc_mesh* mesh);

SC_API sc_status sc_pair_create(const sc_mesh* a, const sc_mesh* b, double gamma, sc_pair** out);
SC_API sc_status sc_pair_differing_measure(const sc_pair* pair, double* out);
SC_API void sc_pair_free(sc_pair* pair);

/* Lagrange space of the given degree with homogeneous Dirichlet conditions. */
SC_API sc_status sc_space_create(const sc_mesh* mesh, int degree, sc_space** out);
SC_API sc_status sc_space_num_dofs(const sc_space* space, size_t* out);
SC_API void sc_space_free(sc_space* space);

/* Projection of a named function ("sin", "x", "quadratic", "zero", "power:<p>"). */
SC_API sc_status sc_project(const sc_space* space, sc_form form, const char* u,
                            sc_function** out);
SC_API sc_status sc_function_coefficients(const sc_function* f, const double** data, size_t* n);
SC_API sc_status sc_function_write(const sc_function* f, const char* path);
SC_API void sc_function_free(sc_function* f);

/* ||f_a - f_b||_{s,2}; f_a must live on the pair's first mesh, f_b on the second. */
SC_API sc_status sc_cross_mesh_norm(const sc_pair* pair, const sc_function* f_a,
                                    const sc_function* f_b, int s, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SUPERCLOSE_H */
