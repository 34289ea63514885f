#include "tcon/cli/app.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "tcon/cli/config.hpp"
#include "tcon/connections/transport.hpp"
#include "tcon/constructor/pipeline.hpp"
#include "tcon/fields/bump.hpp"
#include "tcon/fields/quadrature.hpp"

namespace tcon::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- plumbing

struct Context {
  RunConfig cfg;
  std::ostream* out;
  std::string command;
};

std::string timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream o;
  o << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return o.str();
}

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

fs::path out_dir(const Context& ctx) {
  fs::path dir(ctx.cfg.out);
  fs::create_directories(dir);
  return dir;
}

/// Writes the report and prints a one-line summary. The timestamp is the
/// only field that changes between identical runs.
int finish(const Context& ctx, Json body, bool pass) {
  Json report;
  report["schema"] = 1;
  report["command"] = ctx.command;
  report["pass"] = pass;
  for (auto& [k, v] : body.items()) report[k] = v;
  report["config"] = to_config_text(ctx.cfg);
  report["timestamp"] = timestamp();
  const fs::path path = out_dir(ctx) / (ctx.command + ".json");
  std::ofstream(path) << report.dump(2) << "\n";
  *ctx.out << ctx.command << ": " << (pass ? "pass" : "FAIL") << " (" << path.string() << ")\n";
  return pass ? kOk : kBudgetViolation;
}

void write_csv(const Context& ctx, const std::string& name, const std::string& header,
               const std::vector<std::string>& rows) {
  std::ofstream f(out_dir(ctx) / name);
  f << header << "\n";
  for (const auto& r : rows) f << r << "\n";
}

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(17) << v;
  return o.str();
}

const FuchsianSurface& surface() {
  static const FuchsianSurface s = bolza_surface();
  return s;
}

std::vector<Frame> sample_frames(const RunConfig& cfg, int n = -1) {
  const FuchsianSurface& s = surface();
  std::mt19937 rng(cfg.sample_seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Frame> out;
  const int want = n < 0 ? cfg.samples : n;
  while (static_cast<int>(out.size()) < want) {
    const Complex w(1.8 * u(rng) - 0.9, 1.8 * u(rng) - 0.9);
    if (std::abs(w) > 0.95) continue;
    const Complex z = s.from_disc(w);
    if (!s.contains(z)) continue;
    out.push_back(Frame::at(z, 2 * kPi * u(rng)));
  }
  return out;
}

QuadratureSpec quadrature_spec(const RunConfig& c) { return {c.quad_angular, c.quad_radial, c.quad_fiber, c.quad_order}; }

Su2Options su2_options(const RunConfig& c) {
  Su2Options o;
  o.weight = c.weight;
  o.seeds = c.map_seeds;
  o.orientation = c.orientation == "holomorphic" ? Orientation::kHolomorphic : Orientation::kAntiHolomorphic;
  o.rho_seed = c.rho_seed;
  o.delta = c.delta;
  o.step = FdStep{c.fd_step};
  return o;
}

std::shared_ptr<const PoincareAtlas> atlas_for(const RunConfig& c) {
  auto series = std::make_shared<const PoincareEvaluator>(surface(), c.weight, c.map_seeds, c.truncation);
  return std::make_shared<const PoincareAtlas>(series);
}

Su2Build build(const RunConfig& c) { return build_su2(surface(), su2_options(c), atlas_for(c)); }

/// Fixed skew 1-form of rank n used by the perturbation control.
SmField control_one_form(int n = 2) {
  CMatrix base(2, 2);
  base << Complex(0.6, -0.2), Complex(-0.3, 0.8), Complex(0.5, 0.1), Complex(-0.4, -0.7);
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) m(j, k) = base(j % 2, k % 2) * (1.0 + 0.1 * (j / 2 + k / 2));
  }
  return invariant_bump(surface(), {BumpSpec{surface().center(), 1.2, 1.0}}, {{1, m}, {-1, -m.adjoint()}})
      .with_skew_hermitian();
}

// The connection written by `ghost` or `su2-build` and read back by
// `verify-transparency`.
struct StoredConnection {
  std::string kind;
  std::vector<int> s;
  RunConfig build_config;
};

void store_connection(const Context& ctx, const StoredConnection& c) {
  Json j;
  j["schema"] = 1;
  j["kind"] = c.kind;
  if (c.kind == "ghost") j["s"] = c.s;
  else j["config"] = to_config_text(c.build_config);
  std::ofstream(out_dir(ctx) / "connection.json") << j.dump(2) << "\n";
}

StoredConnection load_connection(const Context& ctx) {
  const fs::path path = fs::path(ctx.cfg.out) / "connection.json";
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "no connection at " + path.string() + "; run ghost or su2-build first");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kParse, std::string("connection file: ") + e.what());
  }
  if (j.value("schema", 0) != 1) throw Error(ErrorKind::kParse, "connection file: unsupported schema");
  StoredConnection c;
  c.kind = j.value("kind", "");
  if (c.kind == "ghost") {
    c.s = j.at("s").get<std::vector<int>>();
  } else if (c.kind == "su2") {
    c.build_config = parse_config(j.at("config").get<std::string>());
  } else {
    throw Error(ErrorKind::kParse, "connection file: unknown kind '" + c.kind + "'");
  }
  return c;
}

// ---------------------------------------------------------------- commands

int cmd_surface(Context& ctx) {
  const FuchsianSurface& s = surface();
  const Quadrature q(s, quadrature_spec(ctx.cfg));
  const double systole_closed = 2.0 * std::acosh(1.0 + std::sqrt(2.0));
  const GeodesicEnumeration geo = enumerate_closed_geodesics(s, systole_closed + 0.5);
  const double systole_enum = geo.geodesics.empty() ? 0.0 : geo.geodesics.front().length;
  const double systole_words = brute_force_systole(s, 4);
  Json b;
  b["genus"] = s.genus();
  b["relation"] = word_to_string(s.relation());
  b["relation_defect"] = s.relation_defect();
  b["area_polygon"] = s.area();
  b["area_quadrature"] = q.area();
  b["area_expected"] = s.gauss_bonnet_area();
  b["systole_closed_form"] = systole_closed;
  b["systole_enumerated"] = systole_enum;
  b["systole_word_ball"] = systole_words;
  const bool pass = s.relation_defect() <= 1e-10 && std::abs(q.area() - s.gauss_bonnet_area()) <= 1e-6 &&
                    std::abs(systole_enum - systole_closed) <= 1e-9 &&
                    std::abs(systole_words - systole_closed) <= 1e-9;
  std::vector<std::string> rows;
  for (const auto& side : s.sides()) {
    rows.push_back(std::to_string(side.letter) + "," + fmt(side.circle_center.real()) + "," +
                   fmt(side.circle_center.imag()) + "," + fmt(side.circle_radius));
  }
  write_csv(ctx, "sides.csv", "letter,center_re,center_im,radius", rows);
  return finish(ctx, b, pass);
}

int cmd_geodesics(Context& ctx) {
  const GeodesicEnumeration geo = enumerate_closed_geodesics(surface(), ctx.cfg.lmax);
  std::vector<std::string> rows;
  Json list = Json::array();
  for (const auto& g : geo.geodesics) {
    rows.push_back(word_to_string(g.word) + "," + fmt(g.length) + "," + fmt(g.trace));
    list.push_back({{"word", word_to_string(g.word)}, {"length", g.length}});
  }
  write_csv(ctx, "geodesics.csv", "word,length,trace", rows);
  Json b;
  b["lmax"] = ctx.cfg.lmax;
  b["count"] = geo.geodesics.size();
  b["ball_size"] = geo.ball_size;
  b["truncated"] = geo.truncated;
  b["warnings"] = geo.warnings;
  b["geodesics"] = list;
  return finish(ctx, b, !geo.truncated);
}

int cmd_ghost(Context& ctx) {
  const ConnectionOnSM g = ghost(ctx.cfg.ghost_s, surface().genus());
  store_connection(ctx, {"ghost", ctx.cfg.ghost_s, {}});
  Json b;
  b["s"] = ctx.cfg.ghost_s;
  b["c"] = matrix_json(g.c());
  b["chern_number"] = g.chern_number();
  b["periodicity_defect"] = g.periodicity_defect();
  return finish(ctx, b, g.periodicity_defect() <= 1e-10);
}

int cmd_su2_build(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const Su2Build b = build(c);
  store_connection(ctx, {"su2", {}, c});
  const std::vector<Frame> frames = sample_frames(c);
  const HoloResidualReport holo = holo_residual(b.f, frames, FdStep{c.fd_step});
  const double descent = descent_defect(b.connection, frames);
  const DistanceOneReport d1 =
      distance_one_diagnostics(b.u, b.f, CMatrix::Zero(2, 2), frames, FdStep{c.fd_step});
  const int deg = degree(b.u, std::vector<Frame>(frames.begin(), frames.begin() + std::min<int>(10, c.samples)));
  Json j;
  j["orientation"] = c.orientation;
  j["rho_seed"] = b.rho_seed;
  j["reseeds"] = b.reseeds;
  j["min_separation"] = b.ab.min_separation();
  j["series_budget"] = b.f.budget();
  j["atlas_sample_error"] = b.atlas->sample_error();
  j["holo_residual"] = holo.max_residual;
  j["descent_defect"] = descent;
  j["uf_minus_vu"] = d1.uf_minus_vu;
  j["gauge_back"] = d1.gauge_back;
  j["f_from_modes"] = d1.f_from_modes;
  j["u0_u1"] = d1.u0_u1;
  j["trace"] = d1.trace;
  j["degree_u"] = deg;
  j["budgets"] = {{"descent", c.budget_descent}, {"uf", c.budget_uf + b.f.budget()}};
  const bool pass = holo.max_residual <= c.budget_descent && descent <= c.budget_descent &&
                    d1.uf_minus_vu <= c.budget_uf + b.f.budget() && d1.gauge_back <= c.budget_uf + b.f.budget() &&
                    deg == 1;
  return finish(ctx, j, pass);
}

int cmd_verify_transparency(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const StoredConnection stored = load_connection(ctx);
  std::optional<ConnectionOnSM> conn;
  double series_budget = 0.0;
  if (stored.kind == "ghost") {
    conn = ghost(stored.s, surface().genus());
  } else {
    const Su2Build b = build(stored.build_config);
    conn = b.connection;
    series_budget = b.f.budget();
  }
  if (c.perturb > 0.0) conn = perturb(*conn, control_one_form(conn->rank()), c.perturb);
  GeodesicEnumeration geo = enumerate_closed_geodesics(surface(), c.lmax);
  if (c.count > 0 && static_cast<int>(geo.geodesics.size()) > c.count) geo.geodesics.resize(c.count);
  TransportOptions topts;
  topts.tol = c.ode_tol;
  HolonomyBudget budget;
  budget.series = series_budget;
  budget.finite_difference = c.budget_transparency;
  const HolonomyReport rep = transparency_report(*conn, geo.geodesics, topts, budget);
  std::vector<std::string> rows;
  Json list = Json::array();
  for (const auto& h : rep.geodesics) {
    rows.push_back(h.word + "," + fmt(h.length) + "," + fmt(h.defect) + "," + std::to_string(h.steps));
    list.push_back({{"word", h.word}, {"length", h.length}, {"defect", h.defect}});
  }
  write_csv(ctx, "transparency.csv", "word,length,defect,steps", rows);
  Json j;
  j["connection_id"] = rep.connection;
  j["connection_kind"] = stored.kind;
  j["perturb"] = c.perturb;
  j["geodesic_count"] = rep.geodesics.size();
  j["max_defect"] = rep.max_defect;
  j["max_unitarity_defect"] = rep.max_unitarity_defect;
  j["budget"] = {{"ode", rep.budget.ode},
                 {"series", rep.budget.series},
                 {"finite_difference", rep.budget.finite_difference},
                 {"total", rep.budget.total()}};
  j["geodesics"] = list;
  return finish(ctx, j, rep.within_budget() && rep.max_unitarity_defect <= 1e-9);
}

int cmd_verify_identities(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const FuchsianSurface& s = surface();
  const std::vector<Frame> frames = sample_frames(c, 10);
  std::vector<SmField> sections;
  for (unsigned k = 0; k < 20; ++k) sections.push_back(random_section(s, 2, 2, 100 + k));
  OperatorContext trivial = OperatorContext::trivial(2);
  trivial.step = FdStep{c.fd_step};
  trivial.star_f = zero_field(2);
  trivial.one_form_check = frames;

  Json list = Json::array();
  std::vector<std::string> rows;
  bool pass = true;
  auto record = [&](const std::string& name, double residual, double budget) {
    const bool ok = residual <= budget;
    pass = pass && ok;
    list.push_back({{"identity", name}, {"max_residual", residual}, {"budget", budget}, {"pass", ok}});
    rows.push_back(name + "," + fmt(residual) + "," + fmt(budget));
  };
  for (Identity id : {Identity::commeta_1, Identity::commeta_2, Identity::commeta_3}) {
    record(to_string(id), verify_identity(id, trivial, sections, frames).max_residual, c.budget_identity);
  }
  // auxiliar against *(dA + A ^ A) of A = P dx + Q dy, P = p0 + y p1, Q = q0 + x q1
  CMatrix p0(2, 2), p1(2, 2), q0(2, 2), q1(2, 2);
  p0 << 0.3, Complex(0, 1), -0.2, 0.5;
  p1 << Complex(0.1, 0.2), 0.4, 0.0, -0.3;
  q0 << -0.5, 0.2, Complex(0, -0.6), 0.1;
  q1 << 0.2, -0.1, 0.3, Complex(0.4, 0.1);
  OperatorContext aux = trivial;
  aux.a = SmField(2, [=](const Frame& g) {
    const Complex z = g.base_point(), v = g.tangent();
    return CMatrix((p0 + z.imag() * p1) * v.real() + (q0 + z.real() * q1) * v.imag());
  });
  aux.star_da = SmField(2, [=](const Frame& g) {
    const Complex z = g.base_point();
    const CMatrix p = p0 + z.imag() * p1, q = q0 + z.real() * q1;
    return CMatrix(z.imag() * z.imag() * (q1 - p1 + p * q - q * p));
  });
  record("auxiliar", verify_identity(Identity::auxiliar, aux, {}, frames).max_residual, c.budget_identity);

  // mu-commutator and the L2 corollary with nabla trivial and nabla0 = nabla + A,
  // A an invariant skew 1-form; *F0 is the curvature of the pulled-back A
  const SmField a = control_one_form();
  const ConnectionOnSM with_a = perturb(ghost({0, 0}, s.genus()), a, 1.0);
  OperatorContext mu = trivial;
  mu.a = a;
  mu.star_f0 = curvature_XH_field(with_a, FdStep{c.fd_step});
  record("mu_commutator",
         verify_identity(Identity::mu_commutator, mu, {sections.begin(), sections.begin() + 3}, frames).max_residual,
         c.budget_identity);
  CMatrix m0(2, 2), m1(2, 2);
  m0 << 0.4, Complex(0.1, -0.3), -0.7, Complex(0, 0.2);
  m1 << Complex(0.2, 0.5), 0.3, -0.1, 0.6;
  const SmField u = invariant_bump(s, {BumpSpec{s.center(), 1.3, 1.0}}, {{0, m0}, {1, m1}});
  const L2Report base = verify_l2_identity(L2Identity::cor1, u, mu, Quadrature(s, quadrature_spec(c)));
  const L2Report fine = verify_l2_identity(L2Identity::cor1, u, mu, Quadrature(s, quadrature_spec(c).refined(2)));
  record("cor1", base.relative_residual, c.budget_pestov);
  record("cor1_refined", fine.relative_residual, std::max(0.5 * base.relative_residual, 1e-12));
  write_csv(ctx, "identities.csv", "identity,max_residual,budget", rows);
  Json j;
  j["sections"] = sections.size();
  j["frames"] = frames.size();
  j["identities"] = list;
  return finish(ctx, j, pass);
}

int cmd_pestov(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const FuchsianSurface& s = surface();
  const Quadrature q(s, quadrature_spec(c));
  OperatorContext trivial = OperatorContext::trivial(2);
  trivial.step = FdStep{c.fd_step};
  CMatrix m0(2, 2), m1(2, 2);
  m0 << Complex(0, 0.5), 0.3, -0.3, Complex(0, -0.2);
  m1 << 0.4, Complex(0.2, 0.1), -0.6, 0.1;
  const SmField bump =
      invariant_bump(s, {BumpSpec{s.center(), 1.0, 1.0}}, {{0, m0}, {1, m1}, {-1, -m1.adjoint()}});
  const OrbitMap f = OrbitMap::from_atlas(atlas_for(c));
  const SmField fs(2, [f](const Frame& g) { return CMatrix(f(g)); }, "f");
  Json list = Json::array();
  std::vector<std::string> rows;
  bool pass = true;
  auto record = [&](const std::string& field, const L2Report& r) {
    const bool ok = r.relative_residual <= c.budget_pestov;
    pass = pass && ok;
    list.push_back({{"identity", r.identity},
                    {"field", field},
                    {"lhs", r.lhs},
                    {"rhs", r.rhs},
                    {"relative_residual", r.relative_residual},
                    {"pass", ok}});
    rows.push_back(r.identity + "," + field + "," + fmt(r.lhs) + "," + fmt(r.rhs) + "," + fmt(r.relative_residual));
  };
  record("bump", verify_l2_identity(L2Identity::pestov, bump, trivial, q));
  record("f", verify_l2_identity(L2Identity::pestov, fs, trivial, q));
  record("f", verify_l2_identity(L2Identity::pestov_solution, fs, trivial, q));
  write_csv(ctx, "pestov.csv", "identity,field,lhs,rhs,relative_residual", rows);
  Json j;
  j["frames"] = q.frame_count();
  j["identities"] = list;
  return finish(ctx, j, pass);
}

int cmd_degree_bound(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const Su2Build b = build(c);
  const std::vector<Frame> frames = sample_frames(c);
  std::vector<CMatrix> f1, f2;
  double witness = 0.0;
  for (const Frame& g : frames) {
    const CMatrix f = kI * curvature_XH(b.connection, g, FdStep{c.fd_step});
    const CMatrix h = 0.5 * (f + f.adjoint());
    f1.push_back(h);
    f2.push_back(CMatrix::Zero(2, 2));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    witness = std::max(witness, es.eigenvalues().cwiseAbs().maxCoeff());
  }
  const int l = degree_bound_from_matrices(f1, f2, surface().curvature());
  const int deg = degree(b.u, std::vector<Frame>(frames.begin(), frames.begin() + std::min<int>(10, c.samples)));
  Json j;
  j["l"] = l;
  j["degree_u"] = deg;
  j["theorem_a_witness"] = witness;
  return finish(ctx, j, deg <= l - 1 && witness >= 1.0);
}

int cmd_reconstruct_f(Context& ctx) {
  const RunConfig& c = ctx.cfg;
  const Su2Build b = build(c);
  const ConnectionOnSM bg = b_gauge(b.connection, b.u, FdStep{c.fd_step});
  const std::vector<Frame> frames = sample_frames(c, 3);
  Json list = Json::array();
  std::vector<std::string> rows;
  bool pass = true;
  for (const Frame& g : frames) {
    const Reconstruction r = reconstruct_f_from_curvature(bg, surface(), g, c.t_trunc, FdStep{c.fd_step});
    const double err = op_norm(r.f - CMatrix(b.f(g)));
    const double tol = r.truncation_bound + r.quadrature_error + c.budget_descent;
    pass = pass && err <= tol;
    list.push_back({{"error", err},
                    {"tolerance", tol},
                    {"truncation_bound", r.truncation_bound},
                    {"max_curvature", r.max_curvature}});
    rows.push_back(fmt(g.base_point().real()) + "," + fmt(g.base_point().imag()) + "," + fmt(err) + "," + fmt(tol));
  }
  write_csv(ctx, "reconstruction.csv", "x,y,error,tolerance", rows);
  Json j;
  j["t_trunc"] = c.t_trunc;
  j["frames"] = list;
  return finish(ctx, j, pass);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transparent connections on hyperbolic surfaces"};
  app.require_subcommand(1, 1);
  std::string config_file;
  std::vector<std::string> sets;
  std::optional<std::string> out_flag;
  app.add_option("--config", config_file, "key=value config file");
  app.add_option("--set", sets, "override a config key (key=value), repeatable");
  app.add_option("--out", out_flag, "output directory");

  std::optional<std::string> lmax, s, orientation, count, perturb_eps, t_trunc;
  auto* surface_cmd = app.add_subcommand("surface", "surface invariants");
  auto* geodesics_cmd = app.add_subcommand("geodesics", "closed geodesics up to a length");
  geodesics_cmd->add_option("--lmax", lmax);
  auto* ghost_cmd = app.add_subcommand("ghost", "store a ghost connection");
  ghost_cmd->add_option("--s", s, "comma separated integers");
  auto* su2_cmd = app.add_subcommand("su2-build", "SU(2) pipeline with diagnostics");
  su2_cmd->add_option("--orientation", orientation);
  auto* vt_cmd = app.add_subcommand("verify-transparency", "holonomy of the stored connection");
  vt_cmd->add_option("--lmax", lmax);
  vt_cmd->add_option("--count", count);
  vt_cmd->add_option("--perturb", perturb_eps);
  auto* vi_cmd = app.add_subcommand("verify-identities", "pointwise and L2 operator identities");
  auto* pestov_cmd = app.add_subcommand("pestov", "integral identities on SM");
  auto* db_cmd = app.add_subcommand("degree-bound", "degree bound against the trivial connection");
  auto* rf_cmd = app.add_subcommand("reconstruct-f", "f from B-gauge curvature");
  rf_cmd->add_option("--t-trunc", t_trunc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  Context ctx;
  ctx.out = &out;
  try {
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw Error(ErrorKind::kParse, "cannot read config " + config_file);
      std::stringstream text;
      text << in.rdbuf();
      ctx.cfg = parse_config(text.str());
    }
    for (const auto& a : sets) apply_assignment(ctx.cfg, a);
    if (out_flag) set_value(ctx.cfg, "out", *out_flag);
    if (lmax) set_value(ctx.cfg, "lmax", *lmax);
    if (s) set_value(ctx.cfg, "ghost_s", *s);
    if (orientation) set_value(ctx.cfg, "orientation", *orientation);
    if (count) set_value(ctx.cfg, "count", *count);
    if (perturb_eps) set_value(ctx.cfg, "perturb", *perturb_eps);
    if (t_trunc) set_value(ctx.cfg, "t_trunc", *t_trunc);
    validate(ctx.cfg);
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  const std::vector<std::pair<CLI::App*, int (*)(Context&)>> table{
      {surface_cmd, cmd_surface},   {geodesics_cmd, cmd_geodesics},     {ghost_cmd, cmd_ghost},
      {su2_cmd, cmd_su2_build},     {vt_cmd, cmd_verify_transparency},  {vi_cmd, cmd_verify_identities},
      {pestov_cmd, cmd_pestov},     {db_cmd, cmd_degree_bound},         {rf_cmd, cmd_reconstruct_f}};
  for (const auto& [cmd, fn] : table) {
    if (!cmd->parsed()) continue;
    ctx.command = cmd->get_name();
    try {
      return fn(ctx);
    } catch (const Error& e) {
      err << ctx.command << ": " << e.what() << "\n";
      return e.kind() == ErrorKind::kParse ? kConfigError : kBudgetViolation;
    }
  }
  return kConfigError;
}

}  // namespace tcon::cli
