#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>

#include "config.hpp"
#include "spaceform/cli.hpp"
#include "spaceform/integrability.hpp"
#include "spaceform/io.hpp"
#include "spaceform/liegroup.hpp"
#include "spaceform/twistor.hpp"

namespace spaceform::cli {

namespace {

const std::initializer_list<const char*> kTopKeys = {"case", "L0",        "grid",      "data",  "tolerance",
                                                     "reconstruct", "construct", "export", "group"};

Config open(const Options& o) {
  Config c = Config::load(o.config);
  allow_keys(c.doc, kTopKeys, "config");
  return c;
}

double tolerance(const Options& o, const Config& c, const Grid& g) {
  if (o.tolerance) return *o.tolerance;
  if (auto t = get_optional_number(c.doc, "tolerance", "config")) return *t;
  const double h = g.h();
  return std::max(1e-8, 10.0 * h * h);
}

std::filesystem::path out_dir(const Options& o) {
  std::filesystem::path p(o.out);
  std::filesystem::create_directories(p);
  return p;
}

json location(const GridLocation& l) { return {{"i", l.i}, {"j", l.j}, {"u", l.u}, {"v", l.v}}; }

json located_max(const Field& f, const Grid& g) {
  const std::size_t k = f.argmax_abs();
  return {{"max", std::abs(f[k])}, {"argmax", location(g.location(k))}};
}

void write_json(const std::filesystem::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  out << j.dump(2) << '\n';
}

void log_max(std::ostream& log, const char* name, const Field& f, const Grid& g, double tol) {
  const std::size_t k = f.argmax_abs();
  log << name << ": max " << io::format_number(std::abs(f[k])) << " at " << describe(g.location(k))
      << (std::abs(f[k]) <= tol ? " (ok)" : " (above tolerance)") << '\n';
}

io::Table single(const Grid& g, std::initializer_list<std::pair<const char*, const Field*>> cols) {
  io::Table t;
  t.grid = g;
  for (const auto& [n, f] : cols) {
    t.names.emplace_back(n);
    t.columns.push_back(*f);
  }
  return t;
}

json gcr_block(const GcrResiduals& r) {
  json j = located_max(r.pointwise_max(), r.grid);
  j["gauss"] = r.gauss.max_abs();
  j["codazzi"] = {r.codazzi[0].max_abs(), r.codazzi[1].max_abs(), r.codazzi[2].max_abs(), r.codazzi[3].max_abs()};
  j["ricci"] = r.ricci.max_abs();
  return j;
}

void write_gcr(const std::filesystem::path& p, const GcrResiduals& r) {
  io::write_table(p, single(r.grid, {{"gauss", &r.gauss},
                                     {"codazzi1", &r.codazzi[0]},
                                     {"codazzi2", &r.codazzi[1]},
                                     {"codazzi3", &r.codazzi[2]},
                                     {"codazzi4", &r.codazzi[3]},
                                     {"ricci", &r.ricci}}));
}

}  // namespace

int resolve_threads(std::optional<int> flag) {
  if (flag) {
    if (*flag < 1) throw ConfigError("--threads must be ≥ 1");
    return *flag;
  }
  if (const char* env = std::getenv("SPACEFORM_THREADS"); env && *env) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1) throw ConfigError("SPACEFORM_THREADS must be a positive integer");
    return static_cast<int>(n);
  }
  return 1;
}

int run_check(const Options& o, std::ostream& log) {
  const Config c = open(o);
  const FundamentalData d = load_data(c, require(c.doc, "data", "config"), "data");
  const double tol = tolerance(o, c, d.grid);
  const GcrResiduals gcr = gcr_residuals(d, o.threads);
  const Field lax = lax_residual(d, o.threads);
  const EquivalenceReport eq = equivalence_check(d, o.threads);
  const auto dir = out_dir(o);
  write_gcr(dir / "gcr_residuals.csv", gcr);
  io::write_table(dir / "lax_residual.csv", single(d.grid, {{"lax", &lax}}));
  io::write_table(dir / "equivalence.csv", single(d.grid, {{"combination", &eq.combination}}));
  const Field gmax = gcr.pointwise_max();
  log_max(log, "gcr", gmax, d.grid, tol);
  log_max(log, "lax", lax, d.grid, tol);
  log_max(log, "equivalence", eq.combination, d.grid, tol);
  const bool pass = gmax.max_abs() <= tol && lax.max_abs() <= tol && eq.max_combination <= tol;
  write_json(dir / "check_report.json", {{"case", case_name(d.surface_case())},
                                         {"L0", d.model.L0},
                                         {"tolerance", tol},
                                         {"gcr", gcr_block(gcr)},
                                         {"lax", located_max(lax, d.grid)},
                                         {"equivalence", located_max(eq.combination, d.grid)},
                                         {"pass", pass}});
  return pass ? kOk : kToleranceFailure;
}

int run_twistor(const Options& o, std::ostream& log) {
  const Config c = open(o);
  const FundamentalData d = load_data(c, require(c.doc, "data", "config"), "data");
  const double tol = tolerance(o, c, d.grid);
  const auto dir = out_dir(o);
  const TwistorInvariants inv = twistor_invariants(d);
  io::write_table(dir / "twistor.csv", io::twistor_table(inv));
  const DegeneracyReport deg = degeneracy_report(d);
  const CurvatureResidual cr = curvature_residual(d, o.threads);
  Field curv(d.grid);
  for (std::size_t k = 0; k < d.grid.size(); ++k) curv[k] = std::max(cr.max_entry[0][k], cr.max_entry[1][k]);
  io::write_table(dir / "degeneracy.csv",
                  single(d.grid, {{"curvature_defect", &deg.curvature_defect},
                                  {"normal_curvature", &deg.normal_curvature},
                                  {"curvature_residual", &curv}}));
  json rep = {{"case", case_name(d.surface_case())},
              {"L0", d.model.L0},
              {"tolerance", tol},
              {"nondegenerate", deg.nondegenerate},
              {"degenerate", deg.degenerate},
              {"min_abs_delta", deg.min_abs_delta},
              {"max_curvature_defect", deg.max_curvature_defect},
              {"max_normal_curvature", deg.max_normal_curvature},
              {"curvature_residual", located_max(curv, d.grid)}};
  if (d.surface_case() == SurfaceCase::LorentzSpace) {
    rep["delbar_residual"] = delbar_residual(d).max_abs;
    const LinearDependence ld = linear_dependence_check(d);
    rep["all_dependent"] = ld.all_dependent;
  }
  log << "twistor lift: " << (deg.nondegenerate ? "nondegenerate" : deg.degenerate ? "degenerate" : "mixed")
      << ", min |Δ| " << io::format_number(deg.min_abs_delta) << '\n';
  log_max(log, "curvature identity", curv, d.grid, tol);
  const bool pass = curv.max_abs() <= tol;
  rep["pass"] = pass;
  write_json(dir / "twistor_report.json", rep);
  return pass ? kOk : kToleranceFailure;
}

int run_reconstruct(const Options& o, std::ostream& log) {
  const Config c = open(o);
  const FundamentalData d = load_data(c, require(c.doc, "data", "config"), "data");
  const double tol = tolerance(o, c, d.grid);
  IntegrationOptions opt;
  opt.threads = o.threads;
  if (c.doc.contains("reconstruct")) {
    const json& r = c.doc.at("reconstruct");
    allow_keys(r, {"transposed_path", "project_every", "init_tolerance"}, "reconstruct");
    if (r.contains("transposed_path")) {
      if (!r.at("transposed_path").is_boolean()) throw ConfigError("reconstruct.transposed_path must be a boolean");
      opt.transposed_path = r.at("transposed_path").get<bool>();
    }
    if (auto p = get_optional_number(r, "project_every", "reconstruct")) {
      if (*p < 0) throw ConfigError("reconstruct.project_every must be ≥ 0");
      opt.project_every = static_cast<std::size_t>(*p);
    }
    if (auto t = get_optional_number(r, "init_tolerance", "reconstruct")) opt.init_tolerance = *t;
  }
  const FrameIntegration fi = integrate_frame(d, canonical_initial_frame(d.model, d.lambda()[0]), opt);
  const auto dir = out_dir(o);
  io::write_frames(dir / "frames", fi.frames);
  const FundamentalData back = extract_fundamental(fi.frames, d.model);
  io::write_table(dir / "extracted.csv", io::fundamental_table(back));
  double roundtrip = 0.0;
  for (std::size_t f = 0; f < d.fields.size(); ++f) roundtrip = std::max(roundtrip, (d.fields[f] - back.fields[f]).max_abs());
  const IntegrationReport& r = fi.report;
  const bool pass = r.integrable && roundtrip <= tol;
  log << "drift " << io::format_number(r.max_drift) << ", cross consistency " << io::format_number(r.cross_consistency)
      << ", path discrepancy " << io::format_number(r.path_discrepancy) << ", round trip "
      << io::format_number(roundtrip) << (pass ? " (ok)" : " (above tolerance)") << '\n';
  if (r.gcr_warning) log << "warning: input GCR residual " << io::format_number(r.gcr_max) << " above tolerance\n";
  write_json(dir / "reconstruct_report.json", {{"case", case_name(d.surface_case())},
                                               {"L0", d.model.L0},
                                               {"tolerance", tol},
                                               {"cross_consistency", r.cross_consistency},
                                               {"path_discrepancy", r.path_discrepancy},
                                               {"max_drift", r.max_drift},
                                               {"gcr_max", r.gcr_max},
                                               {"gcr_warning", r.gcr_warning},
                                               {"flag_threshold", r.flag_threshold},
                                               {"integrable", r.integrable},
                                               {"roundtrip_error", roundtrip},
                                               {"pass", pass}});
  return pass ? kOk : kToleranceFailure;
}

int run_construct(const Options& o, std::ostream& log) {
  const Config c = open(o);
  const json& s = require(c.doc, "construct", "config");
  const json& m = require(s, "mode", "construct");
  if (!m.is_string()) throw ConfigError("construct.mode must be a string");
  const std::string mode = m.get<std::string>();
  const SurfaceCase sc = config_case(c.doc);
  const double L0 = config_L0(c.doc);
  FundamentalData d;
  json rep = {{"mode", mode}, {"case", case_name(sc)}, {"L0", L0}};

  if (mode == "wxyz-flat" || mode == "wxyz-curved") {
    allow_keys(s, {"mode", "invariants", "source", "margin"}, "construct");
    TwistorInvariants inv;
    if (s.contains("invariants") == s.contains("source"))
      throw ConfigError("construct needs exactly one of 'invariants' (file) or 'source' (data section)");
    if (s.contains("invariants")) {
      if (!s.at("invariants").is_string()) throw ConfigError("construct.invariants must be a file path");
      const auto path = c.resolve(s.at("invariants").get<std::string>());
      if (!std::filesystem::exists(path)) throw ConfigError("missing invariants file '" + path.string() + "'");
      inv = io::twistor_from_table(io::read_table(path), sc);
    } else {
      inv = twistor_invariants(load_data(c, s.at("source"), "construct.source"));
    }
    ConstructionOptions opt;
    if (auto mg = get_optional_number(s, "margin", "construct")) opt.margin = static_cast<std::size_t>(*mg);
    if (o.tolerance) opt.tolerance = *o.tolerance;
    ConstructionDiagnostics diag;
    d = mode == "wxyz-flat" ? construct_from_wxyz_flat(inv, opt, &diag) : construct_from_wxyz_curved(inv, L0, opt, &diag);
    rep["identity_residual"] = diag.identity_residual;
    rep["gauss_ricci_residual"] = diag.gauss_ricci_residual;
    rep["compatibility_residual"] = diag.compatibility_residual;
    rep["min_abs_delta"] = diag.min_abs_delta;
    if (mode == "wxyz-curved") rep["min_f_over_L0"] = diag.min_f_over_L0;
  } else if (mode == "delbar") {
    allow_keys(s, {"mode", "p", "r", "gamma_file", "liouville_tolerance"}, "construct");
    if (sc != SurfaceCase::LorentzSpace) throw ConfigError("delbar mode needs case LOR_SPACE");
    DelbarInput in;
    const auto grid = config_grid(c.doc);
    if (!grid) throw ConfigError("delbar mode needs a 'grid' section");
    in.grid = *grid;
    in.L0 = L0;
    const json& p = require(s, "p", "construct");
    if (!p.is_string()) throw ConfigError("construct.p must be a polynomial string such as \"w\"");
    try {
      in.p = HolomorphicSpec::parse(p.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    in.r = get_optional_number(s, "r", "construct").value_or(0.0);
    in.liouville_tolerance = get_optional_number(s, "liouville_tolerance", "construct");
    if (s.contains("gamma_file")) {
      const auto path = c.resolve(s.at("gamma_file").get<std::string>());
      const io::Table t = io::read_table(path);
      if (!(t.grid == in.grid)) throw ConfigError("gamma_file grid differs from the configured grid");
      in.gamma = t.column("gamma");
    }
    d = construct_delbar(in);
    const MeanCurvatureReport mc = mean_curvature_and_isotropy(d, in.p);
    rep["delbar_residual"] = delbar_residual(d).max_abs;
    rep["max_abs_H"] = mc.max_abs_H;
    rep["all_lightlike"] = mc.all_lightlike;
    if (mc.eps_checked)
      rep["eps_relation"] = {{"plus", mc.eps[0].max_residual}, {"minus", mc.eps[1].max_residual}};
    log << "max |H| " << io::format_number(mc.max_abs_H) << '\n';
  } else {
    throw ConfigError("construct.mode must be wxyz-flat, wxyz-curved or delbar");
  }

  const double tol = tolerance(o, c, d.grid);
  const GcrResiduals gcr = gcr_residuals(d, o.threads);
  const DegeneracyReport deg = degeneracy_report(d);
  const auto dir = out_dir(o);
  io::write_table(dir / "fundamental.csv", io::fundamental_table(d));
  write_gcr(dir / "gcr_residuals.csv", gcr);
  log_max(log, "gcr", gcr.pointwise_max(), d.grid, tol);
  const bool pass = gcr.max_abs() <= tol;
  rep["tolerance"] = tol;
  rep["gcr"] = gcr_block(gcr);
  rep["degenerate"] = deg.degenerate;
  rep["nondegenerate"] = deg.nondegenerate;
  rep["pass"] = pass;
  write_json(dir / "construct_report.json", rep);
  return pass ? kOk : kToleranceFailure;
}

int run_group(const Options& o, std::ostream& log) {
  double words = 100, length = 5, seed = 1, max_angle = M_PI, max_rapidity = 1.0;
  double tol = o.tolerance.value_or(1e-9);
  if (!o.config.empty()) {
    const Config c = open(o);
    if (!o.tolerance)
      if (auto t = get_optional_number(c.doc, "tolerance", "config")) tol = *t;
    if (c.doc.contains("group")) {
      const json& g = c.doc.at("group");
      allow_keys(g, {"words", "length", "seed", "max_angle", "max_rapidity"}, "group");
      words = get_optional_number(g, "words", "group").value_or(words);
      length = get_optional_number(g, "length", "group").value_or(length);
      seed = get_optional_number(g, "seed", "group").value_or(seed);
      max_angle = get_optional_number(g, "max_angle", "group").value_or(max_angle);
      max_rapidity = get_optional_number(g, "max_rapidity", "group").value_or(max_rapidity);
    }
  }
  if (words < 0 || length < 0 || seed < 0) throw ConfigError("group counts must be non-negative");
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
  std::uniform_real_distribution<double> angle(-max_angle, max_angle), rapidity(-max_rapidity, max_rapidity);
  std::uniform_int_distribution<int> kk(1, 3), ll(1, 2);
  double table = 0.0;
  for (int k = 1; k <= 3; ++k)
    for (int l = 1; l <= 2; ++l) {
      const lie::GeneratorSpec s{k, l, l == 1 ? angle(rng) : rapidity(rng)};
      table = std::max(table, (lie::induced_action(lie::lorentz_generator(s)) - lie::generator_image(s)).cwiseAbs().maxCoeff());
    }
  std::vector<lie::Word> ws;
  for (std::size_t n = 0; n < static_cast<std::size_t>(words); ++n) {
    lie::Word w;
    for (std::size_t m = 0; m < static_cast<std::size_t>(length); ++m) {
      const int k = kk(rng), l = ll(rng);
      w.push_back({k, l, l == 1 ? angle(rng) : rapidity(rng)});
    }
    ws.push_back(std::move(w));
  }
  const lie::PhiReport rep = lie::phi_check(ws);
  const bool minus_exact = lie::induced_action(-Eigen::Matrix4d::Identity()) == Eigen::Matrix3cd::Identity();
  double hom = 0, orth = 0, det = 0;
  for (const auto& w : rep.words) hom = std::max(hom, w.homomorphism), orth = std::max(orth, w.orthogonality), det = std::max(det, w.determinant);
  const bool pass = std::max({table, hom, orth, det}) <= tol && minus_exact;
  log << "generator table " << io::format_number(table) << ", homomorphism " << io::format_number(hom)
      << ", orthogonality " << io::format_number(orth) << ", Φ(−I) = I " << (minus_exact ? "exactly" : "NOT exactly") << '\n';
  write_json(out_dir(o) / "group_report.json", {{"words", ws.size()},
                                                 {"tolerance", tol},
                                                 {"generator_table", table},
                                                 {"homomorphism", hom},
                                                 {"orthogonality", orth},
                                                 {"determinant", det},
                                                 {"minus_identity_exact", minus_exact},
                                                 {"pass", pass}});
  return pass ? kOk : kToleranceFailure;
}

int run_export(const Options& o, std::ostream& log) {
  const Config c = open(o);
  const json& e = require(c.doc, "export", "config");
  allow_keys(e, {"frames", "projection", "mesh"}, "export");
  const json& f = require(e, "frames", "export");
  if (!f.is_string()) throw ConfigError("export.frames must be a directory path");
  const SpaceFormModel model = ambient_model(config_case(c.doc), config_L0(c.doc));
  const FrameField ff = io::read_frames(c.resolve(f.get<std::string>()), model);
  const auto n = static_cast<Eigen::Index>(model.ambient.dim());
  Eigen::MatrixXd P = Eigen::MatrixXd::Identity(3, n);
  if (e.contains("projection")) {
    const json& p = e.at("projection");
    if (!p.is_array() || p.size() != 3) throw ConfigError("export.projection must be 3 rows");
    for (std::size_t r = 0; r < 3; ++r) {
      if (!p[r].is_array() || p[r].size() != static_cast<std::size_t>(n))
        throw ConfigError("export.projection rows must have " + std::to_string(n) + " entries");
      for (Eigen::Index k = 0; k < n; ++k) {
        if (!p[r][static_cast<std::size_t>(k)].is_number()) throw ConfigError("export.projection entries must be numbers");
        P(static_cast<Eigen::Index>(r), k) = p[r][static_cast<std::size_t>(k)].get<double>();
      }
    }
  }
  std::string name = "mesh.obj";
  if (e.contains("mesh")) {
    if (!e.at("mesh").is_string()) throw ConfigError("export.mesh must be a file name");
    name = e.at("mesh").get<std::string>();
  }
  const auto path = out_dir(o) / name;
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_mesh(out, ff, P);
  log << "wrote " << path.string() << " (" << ff.grid.size() << " vertices)\n";
  return kOk;
}

}  // namespace spaceform::cli
