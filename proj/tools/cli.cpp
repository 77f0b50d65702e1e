#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "sewkit/certify.hpp"
#include "sewkit/errors.hpp"
#include "sewkit/knitting.hpp"
#include "sewkit/models.hpp"

namespace sewkit::cli {

namespace {

using json = nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt_num(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

// A JSON value together with its pointer, for diagnostics.
class Node {
 public:
  Node(const json& j, std::string ptr) : j_(&j), ptr_(std::move(ptr)) {}

  const json& raw() const { return *j_; }
  const std::string& ptr() const { return ptr_; }
  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(ptr_.empty() ? "/" : ptr_, what); }

  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

  Node at(const char* key) const {
    if (!j_->is_object()) fail("expected an object");
    if (!j_->contains(key)) throw ConfigError(ptr_ + "/" + key, "missing required field");
    return Node((*j_)[key], ptr_ + "/" + key);
  }
  Node at(std::size_t i) const {
    if (!j_->is_array() || i >= j_->size()) fail("expected an array with index " + std::to_string(i));
    return Node((*j_)[i], ptr_ + "/" + std::to_string(i));
  }
  std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  double number() const {
    if (!j_->is_number()) fail("expected a number");
    return j_->get<double>();
  }
  double number(const char* key, double fallback) const { return has(key) ? at(key).number() : fallback; }
  double number(const char* key) const { return at(key).number(); }

  std::int64_t integer(const char* key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    Node n = at(key);
    if (!n.raw().is_number_integer()) n.fail("expected an integer");
    return n.raw().get<std::int64_t>();
  }

  std::size_t count(const char* key, std::size_t fallback, std::size_t min = 1) const {
    const auto v = integer(key, static_cast<std::int64_t>(fallback));
    if (v < static_cast<std::int64_t>(min)) at(key).fail("must be at least " + std::to_string(min));
    return static_cast<std::size_t>(v);
  }

  bool boolean(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    Node n = at(key);
    if (!n.raw().is_boolean()) n.fail("expected true or false");
    return n.raw().get<bool>();
  }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }
  std::string string(const char* key) const { return at(key).string(); }
  std::string string(const char* key, const std::string& fallback) const {
    return has(key) ? at(key).string() : fallback;
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
    return out;
  }

  Point point() const {
    const auto v = numbers();
    if (v.empty() || v.size() > Point::max_dim) fail("expected a point with 1 to 8 coordinates");
    return Point(std::span<const double>(v));
  }

  void allow(std::initializer_list<const char*> keys) const {
    if (!j_->is_object()) fail("expected an object");
    for (const auto& [k, _] : j_->items()) {
      bool known = false;
      for (const char* key : keys) known = known || k == key;
      if (!known) throw ConfigError(ptr_ + "/" + k, "unknown field");
    }
  }

 private:
  const json* j_;
  std::string ptr_;
};

ScalarFunction parse_function(const Node& n) {
  const std::string kind = n.string("kind");
  if (kind == "sin" || kind == "cos") {
    n.allow({"kind", "amplitude", "frequency", "phase"});
    const double a = n.number("amplitude", 1.0);
    const double w = n.number("frequency", 1.0);
    const double p = n.number("phase", 0.0);
    return kind == "sin" ? ScalarFunction::sine(a, w, p) : ScalarFunction::cosine(a, w, p);
  }
  if (kind == "poly") {
    n.allow({"kind", "coeffs", "radius"});
    return ScalarFunction::polynomial(n.at("coeffs").numbers(), n.number("radius", 1.0));
  }
  if (kind == "exp") {
    n.allow({"kind", "rate", "radius"});
    return ScalarFunction::exponential(n.number("rate"), n.number("radius", 1.0));
  }
  if (kind == "power") {
    n.allow({"kind", "alpha"});
    return ScalarFunction::power(n.number("alpha"));
  }
  n.at("kind").fail("unknown function kind '" + kind + "' (sin, cos, poly, exp, power)");
}

FlowModelPtr parse_interval_model(const Node& n) {
  const std::string name = n.string("name");
  if (name == "euler") {
    n.allow({"name", "A", "b", "probe_radius", "probes_per_axis", "horizon"});
    const Node A = n.at("A");
    const std::size_t d = A.size();
    if (d == 0 || d > Point::max_dim) A.fail("A must be a non-empty square matrix of size <= 8");
    std::vector<double> flat;
    for (std::size_t i = 0; i < d; ++i) {
      const auto row = A.at(i).numbers();
      if (row.size() != d) A.at(i).fail("row length must equal the number of rows");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    std::vector<double> b = n.has("b") ? n.at("b").numbers() : std::vector<double>(d, 0.0);
    if (b.size() != d) n.at("b").fail("b must have one entry per row of A");
    EulerOptions opt;
    opt.probe_radius = n.number("probe_radius", opt.probe_radius);
    opt.probes_per_axis = n.count("probes_per_axis", opt.probes_per_axis);
    opt.horizon = n.number("horizon", opt.horizon);
    return make_linear_euler(std::move(flat), std::move(b), d, opt);
  }
  if (name == "additive") {
    n.allow({"name", "h"});
    const Node h = n.at("h");
    std::vector<ScalarFunction> fs;
    for (std::size_t i = 0; i < h.size(); ++i) fs.push_back(parse_function(h.at(i)));
    if (fs.empty()) h.fail("need at least one component");
    return make_riemann_additive(std::move(fs));
  }
  if (name == "young") {
    n.allow({"name", "x", "y", "alpha", "beta"});
    return make_young(parse_function(n.at("x")), parse_function(n.at("y")), n.number("alpha"),
                      n.number("beta"));
  }
  n.at("name").fail("unknown interval model '" + name + "' (euler, additive, young)");
}

PairModelPtr parse_pair_model(const Node& n) {
  const std::string name = n.string("name");
  if (name == "flat_connection") {
    n.allow({"name", "rule", "r0", "fiber_probes"});
    const std::string rule = n.string("rule", "exact_segment");
    ConnectionRule r;
    if (rule == "exact_segment") r = ConnectionRule::exact_segment;
    else if (rule == "midpoint") r = ConnectionRule::midpoint;
    else n.at("rule").fail("unknown rule '" + rule + "' (exact_segment, midpoint)");
    return make_flat_connection(r, n.number("r0", 0.5), n.count("fiber_probes", 8, 2));
  }
  if (name == "lifted") {
    n.allow({"name", "model"});
    return lift_to_parameter_space(parse_interval_model(n.at("model")));
  }
  n.at("name").fail("unknown parameter-space model '" + name + "' (flat_connection, lifted)");
}

LipPath parse_path(const Node& n, const std::string& base_dir) {
  const std::string kind = n.string("kind");
  if (kind == "polyline") {
    n.allow({"kind", "points", "breakpoints"});
    const Node pts = n.at("points");
    std::vector<Point> p;
    for (std::size_t i = 0; i < pts.size(); ++i) p.push_back(pts.at(i).point());
    if (p.size() < 2) pts.fail("need at least two points");
    if (n.has("breakpoints")) return LipPath(n.at("breakpoints").numbers(), std::move(p));
    return LipPath::polyline(std::move(p));
  }
  if (kind == "arc" || kind == "ellipse_arc" || kind == "circle") {
    n.allow({"kind", "center", "radius", "rx", "ry", "theta0", "theta1", "turns", "segments"});
    const Point c = n.has("center") ? n.at("center").point() : Point{0.0, 0.0};
    const double r = n.number("radius", 1.0);
    const double rx = n.number("rx", r);
    const double ry = n.number("ry", r);
    double t0 = n.number("theta0", 0.0);
    double t1 = 0.0;
    if (kind == "circle") t1 = t0 + 2.0 * std::numbers::pi * n.number("turns", 1.0);
    else t1 = n.number("theta1");
    return LipPath::ellipse_arc(c, rx, ry, t0, t1, n.count("segments", 64));
  }
  if (kind == "csv") {
    n.allow({"kind", "file"});
    std::string file = n.string("file");
    if (!file.empty() && file[0] != '/' && !base_dir.empty()) file = base_dir + "/" + file;
    std::ifstream in(file);
    if (!in) n.at("file").fail("cannot open '" + file + "'");
    return read_path_csv(in);
  }
  n.at("kind").fail("unknown path kind '" + kind + "' (polyline, arc, ellipse_arc, circle, csv)");
}

Homotopy parse_homotopy(const Node& n, const std::string& base_dir) {
  const std::string kind = n.string("kind");
  if (kind == "ellipse_family") {
    n.allow({"kind", "ry0", "ry1", "upper", "segments", "knee"});
    return ellipse_family(n.number("ry0", 1.0), n.number("ry1"), n.boolean("upper", true),
                          n.count("segments", 64), n.number("knee", 0.5));
  }
  if (kind == "linear") {
    n.allow({"kind", "from", "to"});
    return linear_homotopy(parse_path(n.at("from"), base_dir), parse_path(n.at("to"), base_dir));
  }
  n.at("kind").fail("unknown homotopy kind '" + kind + "' (ellipse_family, linear)");
}

SewOptions parse_sew_options(const Node& root) {
  SewOptions o;
  o.tol = root.number("tol", o.tol);
  if (!(o.tol > 0.0)) root.at("tol").fail("must be positive");
  o.max_level = static_cast<int>(root.integer("max_level", o.max_level));
  o.min_level = static_cast<int>(root.integer("min_level", o.min_level));
  if (o.min_level < 0 || o.max_level < o.min_level || o.max_level > 40)
    root.fail("need 0 <= min_level <= max_level <= 40");
  if (root.has("reference")) o.reference = root.at("reference").point();
  return o;
}

struct Outcome {
  std::string csv;
  std::string summary;
  bool violated = false;
};

Outcome sew_experiment(const Node& root) {
  root.allow({"experiment", "model", "interval", "tol", "max_level", "min_level", "reference", "output"});
  const auto m = parse_interval_model(root.at("model"));
  const Node iv = root.at("interval");
  if (iv.size() != 2) iv.fail("expected [s, t]");
  const double s = iv.at(std::size_t{0}).number();
  const double t = iv.at(std::size_t{1}).number();
  SewOptions o = parse_sew_options(root);
  if (o.reference && o.reference->dim() != m->space_at(t)->dim())
    root.at("reference").fail("dimension does not match the model");

  Outcome out;
  SewCertificate cert;
  try {
    cert = sew(m, s, t, o).certificate;
  } catch (const NonConvergence& e) {
    cert = e.certificate();
    out.violated = true;
    out.summary = std::string(e.what()) + "\n";
  }
  std::ostringstream csv;
  csv << "level,mesh,successive_distance,bound,value\n";
  for (const auto& r : cert.level_log)
    csv << r.level << ',' << num(r.mesh) << ',' << opt_num(r.successive_distance) << ','
        << opt_num(r.bound) << ',' << num(r.value) << '\n';
  out.csv = csv.str();
  for (const auto& v : cert.violations) out.summary += "violation: " + v + "\n";
  out.violated = out.violated || !cert.bounds_hold();
  std::ostringstream sum;
  sum << "model " << m->name() << " on [" << num(s) << ", " << num(t) << "]: "
      << (cert.converged ? "converged" : "not converged") << " at level " << cert.final_level
      << ", value " << (cert.level_log.empty() ? std::string("-") : num(cert.level_log.back().value))
      << "\nK = " << num(cert.K) << ", C' = " << num(cert.C_prime) << ", d(mu, composite) = "
      << (cert.mu_flow_distance ? num(*cert.mu_flow_distance) + " <= " + num(cert.claimed_bound)
                                : std::string("undefined (interval exceeds the model step)"))
      << ", tail ~ "
      << num(cert.tail_estimate) << (cert.conditional_on_declared_g ? " (conditional on declared g)" : "")
      << "\n";
  out.summary += sum.str();
  return out;
}

Outcome holonomy_experiment(const Node& root, const std::string& base_dir) {
  root.allow({"experiment", "model", "path", "tol", "max_level", "min_level", "reference", "output"});
  const auto m = parse_pair_model(root.at("model"));
  const LipPath g = parse_path(root.at("path"), base_dir);
  const SewOptions o = parse_sew_options(root);
  Outcome out;
  std::optional<HolonomyResult> h;
  SewCertificate cert;
  try {
    h = holonomy(m, g, o);
    cert = h->sewn.certificate;
  } catch (const NonConvergence& e) {
    cert = e.certificate();
    out.violated = true;
    out.summary = std::string(e.what()) + "\n";
  } catch (const sewkit::DomainError& e) {
    root.at("path").fail(e.what());
  }
  std::ostringstream csv;
  csv << "level,mesh,successive_distance,bound,value,angle\n";
  for (std::size_t i = 0; i < cert.level_log.size(); ++i) {
    const auto& r = cert.level_log[i];
    const bool last = i + 1 == cert.level_log.size();
    csv << r.level << ',' << num(r.mesh) << ',' << opt_num(r.successive_distance) << ','
        << opt_num(r.bound) << ',' << num(r.value) << ','
        << (last && h ? opt_num(h->angle) : std::string()) << '\n';
  }
  out.csv = csv.str();
  for (const auto& v : cert.violations) out.summary += "violation: " + v + "\n";
  out.violated = out.violated || !cert.bounds_hold();
  if (h) {
    out.summary += "holonomy of " + m->name() + " along a path of length " + num(g.length()) +
                   ": level " + std::to_string(cert.final_level);
    if (h->angle) out.summary += ", accumulated angle " + num(*h->angle);
    out.summary += "\n";
  }
  return out;
}

Outcome knit_experiment(const Node& root, const std::string& base_dir) {
  root.allow({"experiment", "model", "homotopy", "ks", "separation", "tol", "max_level", "min_level",
              "reference", "output"});
  const auto m = parse_pair_model(root.at("model"));
  const Homotopy H = parse_homotopy(root.at("homotopy"), base_dir);
  std::vector<std::size_t> ks;
  if (root.has("ks")) {
    const Node n = root.at("ks");
    for (std::size_t i = 0; i < n.size(); ++i) {
      const double k = n.at(i).number();
      if (!(k >= 2 && k == std::floor(k) && k <= 4096)) n.at(i).fail("k must be an integer in [2, 4096]");
      ks.push_back(static_cast<std::size_t>(k));
    }
  } else {
    ks = {8, 16, 32, 64};
  }
  Outcome out;
  std::ostringstream csv;
  csv << "row,k,measured,bound,rate,net_mesh\n";
  double previous = -1.0;
  for (std::size_t k : ks) {
    HomotopyNet net = [&] {
      try {
        return build_net(H, k);
      } catch (const sewkit::Error& e) {
        root.at("homotopy").fail(e.what());
      }
    }();
    KnitComparison c;
    try {
      c = knit_compare(net, m);
    } catch (const ModeError& e) {
      root.at("model").fail(e.what());
    }
    const std::string rate =
        previous > 0.0 && c.measured > 0.0 ? num(previous / c.measured) : std::string();
    csv << "knit," << k << ',' << num(c.measured) << ',' << num(c.bound) << ',' << rate << ','
        << num(net.mesh()) << '\n';
    if (!c.holds()) {
      out.violated = true;
      out.summary += "violation: k = " + std::to_string(k) + " measured " + num(c.measured) +
                     " exceeds bound " + num(c.bound) + "\n";
    }
    previous = c.measured;
  }
  if (root.has("separation")) {
    const Node sep = root.at("separation");
    sep.allow({"a", "b", "expected", "tol"});
    const SewOptions o = parse_sew_options(root);
    const auto ha = holonomy(m, parse_path(sep.at("a"), base_dir), o);
    const auto hb = holonomy(m, parse_path(sep.at("b"), base_dir), o);
    if (!ha.angle || !hb.angle) sep.fail("model has no angle summary");
    const double expected = sep.number("expected", 2.0 * std::numbers::pi);
    const double tol = sep.number("tol", 1e-6);
    const double diff = *ha.angle - *hb.angle;
    const double miss = std::abs(std::abs(diff) - expected);
    csv << "holonomy_a,," << num(*ha.angle) << ",,,\n";
    csv << "holonomy_b,," << num(*hb.angle) << ",,,\n";
    csv << "separation,," << num(miss) << ',' << num(tol) << ",,\n";
    out.summary += "class separation: angle difference " + num(diff) + " (expected " + num(expected) +
                   ")\n";
    if (!(miss <= tol)) {
      out.violated = true;
      out.summary += "violation: separation off by " + num(miss) + "\n";
    }
  }
  out.csv = csv.str();
  out.summary += "knitting comparison of " + m->name() + " over " + std::to_string(ks.size()) +
                 " nets, homotopy Lipschitz norm " + num(H.ell) + "\n";
  return out;
}

Outcome certify_experiment(const Node& root, std::uint64_t seed) {
  root.allow({"experiment", "model", "mode", "samples", "interval", "expect_eps", "eps_tol", "output"});
  const std::string mode = root.string("mode", "three_point");
  const std::size_t n = root.count("samples", 40, 20);
  FitReport report;
  if (mode == "three_point") {
    const auto m = parse_interval_model(root.at("model"));
    double s0 = 0.0, t0 = 1.0;
    if (root.has("interval")) {
      const Node iv = root.at("interval");
      if (iv.size() != 2) iv.fail("expected [s, t]");
      s0 = iv.at(std::size_t{0}).number();
      t0 = iv.at(std::size_t{1}).number();
    }
    report = fit_three_point(m, default_three_point_samples(s0, t0, n, seed));
  } else if (mode == "four_point") {
    const auto m = parse_pair_model(root.at("model"));
    report = fit_strong_four_point(m, default_four_point_samples(m, n, seed));
  } else {
    root.at("mode").fail("unknown mode '" + mode + "' (three_point, four_point)");
  }
  Outcome out;
  std::ostringstream csv;
  write_fit_csv(csv, report);
  out.csv = csv.str();
  if (report.exact) {
    out.summary = report.note + "\n";
  } else {
    out.summary = "eps_hat = " + num(report.eps_hat) + ", C_hat = " + num(report.c_hat) + " from " +
                  std::to_string(report.used) + " samples (rms residual " + num(report.rms_residual) +
                  ")\n";
    if (!report.note.empty()) out.summary += report.note + "\n";
  }
  if (report.bound_violations > 0) {
    out.violated = true;
    out.summary += "violation: " + std::to_string(report.bound_violations) +
                   " samples exceed the declared bound\n";
  }
  if (root.has("expect_eps")) {
    const double want = root.number("expect_eps");
    const double tol = root.number("eps_tol", 0.15);
    if (!(std::abs(report.eps_hat - want) <= tol)) {
      out.violated = true;
      out.summary += "violation: eps_hat differs from expected " + num(want) + "\n";
    }
  }
  return out;
}

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

int run(const RunOptions& options, std::ostream& out, std::ostream& log) {
  try {
    const json doc = load(options.config_path);
    const Node root(doc, "");
    if (!doc.is_object()) root.fail("config must be a JSON object");
    std::string experiment = root.string("experiment", options.experiment.value_or(""));
    if (experiment.empty()) root.fail("missing field 'experiment'");
    if (options.experiment && *options.experiment != experiment)
      root.at("experiment").fail("config is for '" + experiment + "', not '" + *options.experiment + "'");
    const auto slash = options.config_path.find_last_of('/');
    const std::string base_dir = slash == std::string::npos ? "" : options.config_path.substr(0, slash);

    Outcome result;
    try {
      if (experiment == "sew") result = sew_experiment(root);
      else if (experiment == "holonomy") result = holonomy_experiment(root, base_dir);
      else if (experiment == "knit") result = knit_experiment(root, base_dir);
      else if (experiment == "certify") result = certify_experiment(root, options.seed);
      else root.at("experiment").fail("unknown experiment '" + experiment + "' (sew, knit, holonomy, certify)");
    } catch (const InadmissibleRegularity& e) {
      root.at("model").fail(e.what());
    }

    std::ostream* summary = &log;
    if (root.has("output")) {
      const std::string path = root.string("output");
      std::ofstream file(path, std::ios::binary);
      if (!file) root.at("output").fail("cannot write '" + path + "'");
      file << result.csv;
      if (!options.quiet) log << "wrote " << path << "\n";
    } else {
      out << result.csv;
    }
    if (!options.quiet) *summary << result.summary;
    return result.violated ? kBoundViolation : kOk;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const sewkit::Error& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  }
}

int main(int argc, char** argv) {
  CLI::App app{"sewkit: sewing and knitting of approximate flows"};
  app.require_subcommand(1);
  RunOptions options;
  for (const char* name : {"sew", "knit", "holonomy", "certify", "run"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "run" ? "run the experiment named in the config"
                                                                     : std::string("run a ") + name + " experiment");
    sub->add_option("--config", options.config_path, "JSON experiment file")->required();
    sub->add_option("--seed", options.seed, "seed for randomized sample sets");
    sub->add_flag("--quiet", options.quiet, "suppress the summary");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  const std::string sub = app.get_subcommands().front()->get_name();
  if (sub != "run") options.experiment = sub;
  return run(options, std::cout, std::cerr);
}

}  // namespace sewkit::cli
