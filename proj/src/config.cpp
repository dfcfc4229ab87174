#include "superclose/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "format.hpp"

namespace superclose {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

class Parser {
 public:
  Parser(std::map<std::string, Entry> entries, std::string source)
      : entries_(std::move(entries)), source_(std::move(source)) {}

  [[noreturn]] void error(const std::string& key, const std::string& what) const {
    const auto it = entries_.find(key);
    const std::string where =
        it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
    fail(ErrorCode::parse_error, where + ": key `" + key + "`: " + what);
  }

  std::optional<std::string> raw(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second.value;
  }

  double number(const std::string& key, const std::string& text) const {
    if (text == "inf" || text == "infinity") return kInfinity;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || std::isnan(v)) {
      error(key, "expected a number, got `" + text + "`");
    }
    return v;
  }

  std::optional<double> number(const std::string& key) const {
    const auto r = raw(key);
    if (!r) return std::nullopt;
    return number(key, *r);
  }

  std::optional<int> integer(const std::string& key) const {
    const auto r = raw(key);
    if (!r) return std::nullopt;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(r->data(), r->data() + r->size(), v);
    if (ec != std::errc{} || ptr != r->data() + r->size()) {
      error(key, "expected an integer, got `" + *r + "`");
    }
    return v;
  }

  std::optional<Vec2> vector(const std::string& key) const {
    const auto r = raw(key);
    if (!r) return std::nullopt;
    const auto parts = split_list(*r);
    if (parts.empty() || parts.size() > 2) error(key, "expected `x` or `x, y`");
    Vec2 v{number(key, parts[0]), 0.0};
    if (parts.size() == 2) v.y = number(key, parts[1]);
    return v;
  }

 private:
  std::map<std::string, Entry> entries_;
  std::string source_;
};

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "name", "dimension", "degree", "form", "base", "kappa", "velocity", "perturbation", "point",
      "fraction", "u", "n0", "levels", "norms", "gamma", "eta", "delta", "mu", "nu", "q"};
  return keys;
}

BilinearFormSpec simple_form(const Parser& p, const std::string& key, const std::string& name,
                             double kappa, Vec2 velocity) {
  if (name == "mass") return BilinearFormSpec::mass();
  if (name == "stiffness") return BilinearFormSpec::stiffness();
  if (name == "adr") {
    VectorField v;
    if (velocity.x != 0.0 || velocity.y != 0.0) v = [velocity](const Vec2&) { return velocity; };
    return BilinearFormSpec::adr(kappa, v);
  }
  p.error(key, "unknown form `" + name + "` (expected mass, stiffness, adr or perturbed)");
}

NormSpec parse_norm(const Parser& p, const std::string& token) {
  if (token == "L2" || token == "l2") return NormSpec::l2();
  if (token == "H1" || token == "h1") return NormSpec::h1();
  p.error("norms", "unknown norm `" + token + "` (expected L2 or H1)");
}

}  // namespace

StudyConfig parse_study_config(std::istream& in, const std::string& source) {
  std::map<std::string, Entry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno);
    if (eq == std::string::npos) {
      fail(ErrorCode::parse_error, where + ": expected `key = value`, got `" + line + "`");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorCode::parse_error, where + ": missing key");
    bool known = false;
    for (const auto& k : known_keys()) known = known || k == key;
    if (!known) fail(ErrorCode::parse_error, where + ": key `" + key + "`: unknown key");
    if (value.empty()) fail(ErrorCode::parse_error, where + ": key `" + key + "`: empty value");
    if (entries.count(key)) {
      fail(ErrorCode::parse_error, where + ": key `" + key + "`: duplicate (first set on line " +
                                       std::to_string(entries[key].line) + ")");
    }
    entries[key] = {value, lineno};
  }
  const Parser p(std::move(entries), source);

  StudyConfig c;
  if (auto v = p.raw("name")) c.name = *v;
  if (auto v = p.integer("dimension")) {
    if (*v != 1 && *v != 2) p.error("dimension", "must be 1 or 2");
    c.dimension = *v;
  }
  if (auto v = p.integer("degree")) {
    if (*v != 1 && *v != 2) p.error("degree", "must be 1 or 2");
    c.degree = *v;
  }
  const double kappa = p.number("kappa").value_or(1.0);
  if (kappa < 0.0) p.error("kappa", "must be >= 0");
  const Vec2 velocity = p.vector("velocity").value_or(Vec2{});

  std::optional<Delta> delta;
  if (auto d = p.number("delta")) {
    if (*d < 0.0) p.error("delta", "must be >= 0 or inf");
    delta = std::isinf(*d) ? Delta::infinite() : Delta::finite(*d);
  }

  const std::string form = p.raw("form").value_or("mass");
  if (form == "perturbed") {
    const std::string base = p.raw("base").value_or("stiffness");
    if (base == "perturbed") p.error("base", "base form cannot itself be perturbed");
    c.form = simple_form(p, "base", base, kappa, velocity);
    if (!delta) p.error("delta", "required when form = perturbed");
    c.form_plus = BilinearFormSpec::perturbed(c.form, *delta, BilinearFormSpec::mass());
  } else {
    if (p.raw("base")) p.error("base", "only valid with form = perturbed");
    c.form = simple_form(p, "form", form, kappa, velocity);
  }

  const std::string pert = p.raw("perturbation").value_or("identical");
  const double fraction = p.number("fraction").value_or(0.25);
  if (!(fraction >= 0.0 && fraction < 1.0)) p.error("fraction", "must be in [0, 1)");
  if (pert == "identical" || pert == "none") {
    c.perturbation = Perturbation::identical();
  } else if (pert == "single_node") {
    const Vec2 def = c.dimension == 1 ? Vec2{0.25, 0.0} : Vec2{0.25, 0.25};
    c.perturbation = Perturbation::single_node(p.vector("point").value_or(def), fraction);
  } else if (pert == "boundary_band") {
    if (c.dimension != 2) p.error("perturbation", "boundary_band requires dimension = 2");
    c.perturbation = Perturbation::boundary_band(fraction);
  } else if (pert == "shifted_second_node") {
    if (c.dimension != 1) p.error("perturbation", "shifted_second_node requires dimension = 1");
    c.perturbation = Perturbation::shifted_second_node(p.raw("fraction") ? fraction : 0.5);
  } else {
    p.error("perturbation", "unknown perturbation `" + pert +
                                "` (expected identical, single_node, boundary_band or "
                                "shifted_second_node)");
  }
  if (p.raw("point") && c.perturbation.kind != PerturbationKind::single_node) {
    p.error("point", "only valid with perturbation = single_node");
  }

  if (auto v = p.raw("u")) {
    try {
      (void)functions::by_name(*v, c.dimension);
    } catch (const Error& e) {
      p.error("u", e.what());
    }
    c.u = *v;
  }
  if (auto v = p.integer("n0")) {
    if (*v < 2) p.error("n0", "must be >= 2");
    c.n0 = *v;
  }
  if (auto v = p.integer("levels")) {
    if (*v < 2) p.error("levels", "must be >= 2 (orders need two levels)");
    if (*v > 12) p.error("levels", "must be <= 12");
    c.levels = *v;
  }
  if (auto v = p.raw("norms")) {
    c.norms.clear();
    for (const auto& tok : split_list(*v)) c.norms.push_back(parse_norm(p, tok));
    if (c.norms.empty()) p.error("norms", "empty list");
  }

  c.rates.gamma = p.number("gamma").value_or(c.perturbation.nominal_gamma(c.dimension));
  if (!(c.rates.gamma >= 0.0)) p.error("gamma", "must be >= 0");
  c.rates.eta = p.number("eta").value_or(kInfinity);
  if (!(c.rates.eta >= 2.0)) p.error("eta", "must be in [2, inf]");
  c.rates.delta = delta.value_or(Delta::infinite());
  const int s = std::max(c.form.order(), c.plus_form().order());
  for (const char* key : {"mu", "nu"}) {
    if (auto v = p.integer(key)) {
      if (*v < 0 || *v > s) p.error(key, "must be in {0, ..., s} with s = " + std::to_string(s));
      (std::string(key) == "mu" ? c.rates.mu : c.rates.nu) = *v;
    }
  }
  if (auto v = p.number("q")) {
    c.rates.q = *v;
    c.rates.dimension = c.dimension;
    if (!q_restriction_satisfied(c.dimension, c.rates.nu, *v) || *v < 1.0) {
      p.error("q", "violates the embedding restriction for this dimension and nu");
    }
  }
  try {
    c.validate();
  } catch (const Error& e) {
    fail(ErrorCode::parse_error, source + ": " + e.what());
  }
  return c;
}

StudyConfig parse_study_config_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  return parse_study_config(in, source);
}

StudyConfig load_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open config file `" + path + "`");
  return parse_study_config(in, path);
}

namespace {

std::string form_name(const BilinearFormSpec& f) { return to_string(f.kind); }

std::string number_text(double v) { return std::isinf(v) ? "inf" : fmt_double(v); }

}  // namespace

std::string echo_config(const StudyConfig& c) {
  std::ostringstream o;
  o << "name = " << c.name << "\n";
  o << "dimension = " << c.dimension << "\n";
  o << "degree = " << c.degree << "\n";
  const BilinearFormSpec* base = &c.form;
  if (c.form_plus && c.form_plus->kind == FormKind::perturbed) {
    o << "form = perturbed\n";
    o << "base = " << form_name(c.form) << "\n";
  } else {
    o << "form = " << form_name(c.form) << "\n";
  }
  if (base->kind == FormKind::adr) {
    o << "kappa = " << fmt_double(base->kappa) << "\n";
    const Vec2 v = base->velocity ? base->velocity(Vec2{}) : Vec2{};
    o << "velocity = " << fmt_double(v.x) << ", " << fmt_double(v.y) << "\n";
  }
  o << "perturbation = " << to_string(c.perturbation.kind) << "\n";
  if (c.perturbation.kind == PerturbationKind::single_node) {
    o << "point = " << fmt_double(c.perturbation.point.x);
    if (c.dimension == 2) o << ", " << fmt_double(c.perturbation.point.y);
    o << "\n";
  }
  if (c.perturbation.kind != PerturbationKind::identical) {
    o << "fraction = " << fmt_double(c.perturbation.fraction) << "\n";
  }
  o << "u = " << c.u << "\n";
  o << "n0 = " << c.n0 << "\n";
  o << "levels = " << c.levels << "\n";
  o << "norms = ";
  for (std::size_t i = 0; i < c.norms.size(); ++i) o << (i ? ", " : "") << c.norms[i].label();
  o << "\n";
  o << "gamma = " << number_text(c.rates.gamma) << "\n";
  o << "eta = " << number_text(c.rates.eta) << "\n";
  o << "delta = "
    << (c.rates.delta.is_infinite() ? std::string("inf") : fmt_double(c.rates.delta.value()))
    << "\n";
  o << "mu = " << c.rates.mu << "\n";
  o << "nu = " << c.rates.nu << "\n";
  if (c.rates.q) o << "q = " << number_text(*c.rates.q) << "\n";
  return o.str();
}

}  // namespace superclose
