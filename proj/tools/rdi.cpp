// rdi: catalog listing, grid evaluation and the verification suite.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rdi/catalog.hpp"
#include "rdi/errors.hpp"
#include "rdi/verifier.hpp"
#include "rdi/version.hpp"

using nlohmann::json;
using namespace rdi;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kDomain = 3, kIO = 4 };

struct IOError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FamilyInfo {
  const char* provenance;
  std::vector<std::pair<const char*, const char*>> params;
};

FamilyInfo family_info(Family f) {
  const std::pair<const char*, const char*> mass{"m", "real > 0, default 1"};
  switch (f) {
    case Family::FreeBessel:
      return {"free cylindrical wave: J_l profile, no potential, energy chosen above the mass shell",
              {{"l", "int 0..100"}, {"energy", "real > sqrt(m^2 + pz^2)"}, {"B", "radial scale > 0"}, {"pz", "real"},
               mass}};
    case Family::HomogeneousB_degenerate:
      return {"uniform magnetic field, Landau level with associated Laguerre profile, M = 2l branch, "
              "eps^2 = m^2 + 2 B^2 n + pz^2",
              {{"n", "int 0..100"}, {"l", "int 0..100"}, {"B", "real > 0"}, {"pz", "real"}, mass}};
    case Family::HomogeneousB_nondegenerate:
      return {"uniform magnetic field, M = -2l branch, eps^2 = m^2 + 2 B^2 (n + l) + pz^2",
              {{"n", "int 0..100"}, {"l", "int 0..100"}, {"B", "real > 0"}, {"pz", "real"}, mass}};
    case Family::InhomogeneousB:
      return {"field B/r about the z axis, hydrogen-like Laguerre profile, "
              "eps^2 = m^2 + n (n + M + 1) B^2 / (4 (2n + M + 1)^2) + pz^2",
              {{"n", "int 0..100"}, {"M", "int 0..100"}, {"B", "real > 0"}, {"pz", "real"}, mass}};
    case Family::VolkovBessel:
      return {"free Bessel state dressed by a transverse plane wave f(xi), xi = omega (t - z)",
              {{"l", "int 0..100"}, {"energy", "real > m"}, {"B", "radial scale > 0"}, {"waveform", "circular|linear|pulse"},
               {"amplitude", "real"}, {"omega", "real > 0"}, {"tau", "pulse width > 0"}, mass}};
    case Family::Redmond:
      return {"uniform magnetic field plus plane wave: degenerate Landau state on the drifting axis",
              {{"n", "int 0..100"}, {"l", "int 0..100"}, {"B", "real > 0"}, {"waveform", "circular|linear|pulse"},
               {"amplitude", "real"}, {"omega", "real > 0"}, {"tau", "pulse width > 0"}, mass}};
    case Family::InhomogeneousB_Laser:
      return {"B/r field plus plane wave: inhomogeneous state on the drifting axis",
              {{"n", "int 0..100"}, {"M", "int 0..100"}, {"B", "real > 0"}, {"waveform", "circular|linear|pulse"},
               {"amplitude", "real"}, {"omega", "real > 0"}, {"tau", "pulse width > 0"}, mass}};
  }
  return {};
}

json catalog_json() {
  json out = json::array();
  for (Family f : catalog::all_families()) {
    const FamilyInfo info = family_info(f);
    json params = json::array();
    for (const auto& [name, type] : info.params) params.push_back({{"name", name}, {"type", type}});
    out.push_back({{"family", catalog::family_name(f)},
                   {"stationary", catalog::is_stationary(f)},
                   {"dressed", catalog::is_dressed(f)},
                   {"seed", catalog::family_name(catalog::seed_family(f))},
                   {"parameters", params},
                   {"provenance", info.provenance}});
  }
  return out;
}

void print_catalog(std::ostream& os, bool as_json) {
  if (as_json) {
    os << catalog_json().dump(2) << "\n";
    return;
  }
  for (const auto& e : catalog_json()) {
    os << e["family"].get<std::string>() << (e["dressed"].get<bool>() ? "  [laser-dressed]" : "") << "\n";
    os << "    " << e["provenance"].get<std::string>() << "\n";
    os << "    parameters:";
    for (const auto& p : e["parameters"]) os << " " << p["name"].get<std::string>();
    os << "\n";
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config file is not valid JSON: ") + e.what());
  }
}

// a or a:b:n
json parse_axis(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    if (parts.size() == 1) {
      const double a = std::stod(parts[0]);
      return json::array({a, a, 1});
    }
    if (parts.size() == 3) {
      const int n = std::stoi(parts[2]);
      if (n < 1) throw UsageError("grid axis needs at least one point");
      return json::array({std::stod(parts[0]), std::stod(parts[1]), n});
    }
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw UsageError("grid axis must be 'a' or 'a:b:n', got '" + s + "'");
}

std::vector<double> axis_values(const json& a) {
  const double lo = a.at(0).get<double>(), hi = a.at(1).get<double>();
  const int n = a.at(2).get<int>();
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

// Flags shared by eval and verify that describe one solution.
struct SpecFlags {
  std::string family;
  int n = 0, l = 0, M = 0;
  double B = 1, pz = 0, m = 1, energy = 0;
  std::string waveform;
  double amplitude = 0, omega = 0, tau = 0;
  std::vector<CLI::Option*> opts;

  void add(CLI::App* app) {
    opts = {app->add_option("--n", n, "radial quantum number"),
            app->add_option("--l", l, "angular index (Landau and Bessel families)"),
            app->add_option("--M", M, "angular index (inhomogeneous families)"),
            app->add_option("--B", B, "field constant"),
            app->add_option("--pz", pz, "axial momentum"),
            app->add_option("--m", m, "mass"),
            app->add_option("--energy", energy, "energy of the Bessel families"),
            app->add_option("--waveform", waveform, "circular, linear or pulse"),
            app->add_option("--amplitude", amplitude, "waveform amplitude"),
            app->add_option("--omega", omega, "waveform frequency"),
            app->add_option("--tau", tau, "pulse envelope width")};
  }
  bool any() const {
    for (auto* o : opts)
      if (o->count()) return true;
    return false;
  }
  // overlay the flags that were given onto the config spec
  void apply(json& spec) const {
    auto set = [&](const char* flag, const char* key, const json& v) {
      for (auto* o : opts)
        if (o->get_name() == flag && o->count()) spec[key] = v;
    };
    set("--n", "n", n);
    set("--l", "l", l);
    set("--M", "M", M);
    set("--B", "B", B);
    set("--pz", "pz", pz);
    set("--m", "m", m);
    set("--energy", "energy", energy);
    json& w = spec["waveform"];
    if (w.is_null()) w = json::object();
    auto setw = [&](const char* flag, const char* key, const json& v) {
      for (auto* o : opts)
        if (o->get_name() == flag && o->count()) w[key] = v;
    };
    setw("--waveform", "family", waveform);
    setw("--amplitude", "amplitude", amplitude);
    setw("--omega", "omega", omega);
    setw("--tau", "tau", tau);
    if (w.empty()) w = nullptr;
  }
};

Family family_or_usage(const std::string& name) {
  const auto f = catalog::parse_family(name);
  if (!f) {
    std::cerr << "unknown family '" << name << "'; available families:\n";
    print_catalog(std::cerr, false);
    throw UsageError("unknown family");
  }
  return *f;
}

// Fill a dressed spec with a default drive when none was given.
SolutionSpec spec_from_config(const json& j) {
  json spec = j;
  const Family f = family_or_usage(spec.at("family").get<std::string>());
  if (catalog::is_dressed(f) && (!spec.contains("waveform") || spec["waveform"].is_null()))
    spec["waveform"] = {{"family", "circular"}, {"amplitude", 0.4}, {"omega", 0.7}};
  SolutionSpec s = spec_from_json(spec);
  catalog::validate(s);
  return s;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IOError("write to '" + path + "' failed");
}

const char* kColumns[] = {"t",    "x",    "y",    "z",    "re_psi1", "im_psi1", "re_psi2", "im_psi2", "re_psi3",
                          "im_psi3", "re_psi4", "im_psi4", "J0", "J1", "J2", "J3", "eA0", "eA1", "eA2", "eA3",
                          "eE_x", "eE_y", "eE_z", "eB_x", "eB_y", "eB_z", "rho", "beta"};

int cmd_eval(const json& cfg, const std::string& path) {
  const SolutionSpec s = spec_from_config(cfg.at("spec"));
  const json& grid = cfg.at("grid");
  const double excl = grid.value("axis_exclusion", 0.0);
  const bool si = cfg.value("units", "natural") == "si";
  const UnitConstants u = si ? UnitConstants::si() : UnitConstants::natural();
  const double L = u.length(), Tm = u.length() / u.c, En = u.energy();
  const auto ts = axis_values(grid.at("t")), xs = axis_values(grid.at("x")), ys = axis_values(grid.at("y")),
             zs = axis_values(grid.at("z"));
  std::vector<SpacetimePoint> pts;
  const double eps = catalog::eigenvalue(s);
  const bool singular_axis = catalog::seed_family(s.family) == Family::InhomogeneousB;
  for (double t : ts)
    for (double x : xs)
      for (double y : ys)
        for (double z : zs) {
          const SpacetimePoint p(t, x, y, z);
          double px = x, py = y;
          if (catalog::is_dressed(s.family)) catalog::shifted_coords(*s.waveform, eps, p, px, py);
          const double r = std::hypot(px, py);
          if (excl > 0 && r < excl) continue;
          if (singular_axis && r == 0)
            throw OnAxis("grid point (" + fmt(t) + ", " + fmt(x) + ", " + fmt(y) + ", " + fmt(z) +
                         ") lies on the singular axis; set grid.axis_exclusion");
          pts.push_back(p);
        }

  std::vector<std::vector<double>> rows(pts.size());
  std::vector<std::string> errs(pts.size());
  const int threads = verifier::thread_count(0);
  std::vector<std::thread> pool;
  const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(pts.size())));
  for (int th = 0; th < nthreads; ++th)
    pool.emplace_back([&, th] {
      for (size_t i = th; i < pts.size(); i += nthreads) {
        try {
          const SpacetimePoint& x = pts[i];
          const ColumnSpinor psi = catalog::spinor(s, x);
          // a node of psi is a valid grid row with zero current and density
          Observables o;
          o.current.setZero();
          o.rho = o.beta = 0;
          if (psi.squaredNorm() > 0) o = spinor::observables(psi);
          const FourVector A = catalog::potential(s, x);
          const FieldSample F = catalog::fields(s, x);
          std::vector<double>& r = rows[i];
          r = {x[0] * Tm, x[1] * L, x[2] * L, x[3] * L};
          for (int k = 0; k < 4; ++k) {
            r.push_back(psi[k].real());
            r.push_back(psi[k].imag());
          }
          for (int k = 0; k < 4; ++k) r.push_back(o.current[k]);
          for (int k = 0; k < 4; ++k) r.push_back(A[k] * En);
          for (int k = 0; k < 3; ++k) r.push_back(F.eE[k] * En / L);
          for (int k = 0; k < 3; ++k) r.push_back(F.eB[k] * En / L);  // c eB
          r.push_back(o.rho);
          r.push_back(o.beta);
        } catch (const std::exception& e) {
          errs[i] = e.what();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (size_t i = 0; i < errs.size(); ++i)
    if (!errs[i].empty()) throw DomainError("at grid point " + std::to_string(i) + ": " + errs[i]);

  const std::string format = cfg.value("format", "csv");
  const json header = {{"version", kVersion}, {"config", cfg}};
  std::ostringstream out;
  if (format == "csv") {
    out << "# rdi " << kVersion << " " << header["config"].dump() << "\n";
    for (size_t k = 0; k < std::size(kColumns); ++k) out << (k ? "," : "") << kColumns[k];
    out << "\n";
    for (const auto& r : rows) {
      for (size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << fmt(r[k]);
      out << "\n";
    }
  } else if (format == "jsonl") {
    out << header.dump() << "\n";
    for (const auto& r : rows) {
      json row = json::object();
      for (size_t k = 0; k < r.size(); ++k) row[kColumns[k]] = r[k];
      out << row.dump() << "\n";
    }
  } else {
    throw UsageError("format must be csv or jsonl");
  }
  write_output(path, out.str());
  std::cerr << rows.size() << " rows\n";
  return kPass;
}

int cmd_verify(const json& cfg, const std::string& path) {
  verifier::SuiteConfig sc;
  const std::string fam = cfg.value("family", "all");
  if (cfg.contains("spec") && !cfg["spec"].is_null()) {
    json spec = cfg["spec"];
    if (!spec.contains("family")) spec["family"] = fam;
    sc.solutions.push_back(spec_from_config(spec));
  } else if (fam == "all") {
    for (Family f : catalog::all_families())
      for (const auto& s : verifier::default_specs(f)) sc.solutions.push_back(s);
  } else {
    sc.solutions = verifier::default_specs(family_or_usage(fam));
  }
  sc.checks = cfg.value("checks", std::vector<std::string>{});
  for (const auto& c : sc.checks)
    if (std::find(verifier::check_names().begin(), verifier::check_names().end(), c) ==
        verifier::check_names().end())
      throw UsageError("unknown check '" + c + "'");
  sc.points = cfg.value("points", 100);
  sc.seed = cfg.value("seed", std::uint64_t{12345});
  sc.h = cfg.value("fd_step", 1e-3);
  sc.axis_exclusion = cfg.value("axis_exclusion", 1e-3);
  if (sc.points < 1) throw UsageError("points must be positive");
  if (!(sc.h >= 1e-6 && sc.h <= 1e-2)) throw DomainError("fd_step must lie in [1e-6, 1e-2]");
  if (!(sc.axis_exclusion > 0)) throw DomainError("verification points need a positive axis exclusion radius");
  auto has = [&](const char* c) { return std::find(sc.checks.begin(), sc.checks.end(), c) != sc.checks.end(); };
  sc.include_identities = fam == "all" || has("bessel_addition") || has("appendix");

  const std::string nc = cfg.value("negative_control", "");
  for (auto& s : sc.solutions) {
    if (nc == "scale-potential")
      s.potential_scale = 1.01;
    else if (nc == "perturb-profile")
      s.profile_perturbation = 0.01;
    else if (!nc.empty())
      throw UsageError("negative control must be scale-potential or perturb-profile");
  }

  VerificationReport rep = verifier::run_suite(sc);
  rep.config = cfg;
  if (cfg.value("units", "natural") == "si") {
    const UnitConstants u = UnitConstants::si();
    rep.config["unit_constants"] = {{"hbar", u.hbar}, {"c", u.c}, {"mu0", u.mu0}, {"mass", u.mass}};
  }
  if (!path.empty()) write_output(path, json(rep).dump(2) + "\n");

  for (const auto& sol : rep.solutions)
    for (const auto& c : sol.checks)
      std::cout << (c.pass ? "PASS " : "FAIL ") << sol.id << " " << c.name << " max=" << fmt(c.max_residual)
                << " tol=" << fmt(c.tolerance) << " points=" << c.points << " excluded=" << c.excluded << "\n";
  const auto failing = rep.failing_checks();
  if (failing.empty()) {
    std::cout << "all checks passed\n";
    return kPass;
  }
  std::cerr << failing.size() << " failing check(s):\n";
  for (const auto& f : failing) std::cerr << "  " << f << "\n";
  return kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Dirac solutions: catalog, grid evaluation and verification"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto* cat = app.add_subcommand("catalog", "list the solution families");
  bool cat_json = false;
  cat->add_flag("--json", cat_json, "machine-readable listing");

  auto* ev = app.add_subcommand("eval", "evaluate a solution on a grid");
  SpecFlags ev_spec;
  std::string ev_config, ev_format = "csv", ev_out, ev_units = "natural";
  std::string gt = "0", gx = "-2:2:5", gy = "-2:2:5", gz = "0";
  double ev_excl = 0;
  auto* ev_fam = ev->add_option("--family", ev_spec.family, "solution family");
  ev_spec.add(ev);
  auto* ev_cfg = ev->add_option("--config", ev_config, "JSON config file; flags override it");
  auto* o_t = ev->add_option("--t", gt, "time axis a or a:b:n");
  auto* o_x = ev->add_option("--x", gx, "x axis a or a:b:n");
  auto* o_y = ev->add_option("--y", gy, "y axis a or a:b:n");
  auto* o_z = ev->add_option("--z", gz, "z axis a or a:b:n");
  auto* o_ex = ev->add_option("--axis-exclusion", ev_excl, "skip points within this radius of the (shifted) axis");
  auto* o_fmt = ev->add_option("--format", ev_format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  auto* o_out = ev->add_option("--out", ev_out, "output path (stdout when absent)");
  auto* o_units = ev->add_option("--units", ev_units, "natural or si")->check(CLI::IsMember({"natural", "si"}));

  auto* ve = app.add_subcommand("verify", "run the verification suite");
  SpecFlags ve_spec;
  std::string ve_family = "all", ve_config, ve_json, ve_nc, ve_units = "natural";
  std::vector<std::string> ve_checks;
  int ve_points = 100;
  std::uint64_t ve_seed = 12345;
  double ve_h = 1e-3;
  auto* v_fam = ve->add_option("--family", ve_family, "family name or 'all'");
  ve_spec.add(ve);
  auto* v_cfg = ve->add_option("--config", ve_config, "JSON config file; flags override it");
  auto* v_chk = ve->add_option("--check", ve_checks, "restrict to named checks (repeatable)");
  auto* v_pts = ve->add_option("--points", ve_points, "random points per check");
  auto* v_seed = ve->add_option("--seed", ve_seed, "RNG seed");
  auto* v_h = ve->add_option("--fd-step", ve_h, "finite-difference step");
  auto* v_nc = ve->add_option("--negative-control", ve_nc, "scale-potential or perturb-profile")
                   ->check(CLI::IsMember({"scale-potential", "perturb-profile"}));
  auto* v_json = ve->add_option("--json", ve_json, "write the JSON report here");
  auto* v_units = ve->add_option("--units", ve_units, "natural or si")->check(CLI::IsMember({"natural", "si"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (cat->parsed()) {
      print_catalog(std::cout, cat_json);
      return kPass;
    }
    if (ev->parsed()) {
      json cfg = ev_cfg->count() ? read_config(ev_config) : json::object();
      cfg["command"] = "eval";
      json& spec = cfg["spec"];
      if (spec.is_null()) spec = json::object();
      if (ev_fam->count()) spec["family"] = ev_spec.family;
      if (!spec.contains("family")) throw UsageError("eval needs --family");
      ev_spec.apply(spec);
      json& grid = cfg["grid"];
      if (grid.is_null()) grid = json::object();
      const std::pair<CLI::Option*, std::pair<const char*, std::string*>> axes[] = {
          {o_t, {"t", &gt}}, {o_x, {"x", &gx}}, {o_y, {"y", &gy}}, {o_z, {"z", &gz}}};
      for (const auto& [opt, kv] : axes)
        if (opt->count() || !grid.contains(kv.first)) grid[kv.first] = parse_axis(*kv.second);
      if (o_ex->count() || !grid.contains("axis_exclusion")) grid["axis_exclusion"] = ev_excl;
      if (o_fmt->count() || !cfg.contains("format")) cfg["format"] = ev_format;
      if (o_out->count()) cfg["output"] = ev_out;
      const std::string out = cfg.value("output", "");
      cfg.erase("output");
      if (o_units->count() || !cfg.contains("units")) cfg["units"] = ev_units;
      return cmd_eval(cfg, out);
    }
    if (ve->parsed()) {
      json cfg = v_cfg->count() ? read_config(ve_config) : json::object();
      cfg["command"] = "verify";
      if (v_fam->count() || !cfg.contains("family")) cfg["family"] = ve_family;
      if (ve_spec.any()) {
        if (cfg["family"] == "all") throw UsageError("solution parameters need a single --family");
        json& spec = cfg["spec"];
        if (spec.is_null()) spec = json::object();
        spec["family"] = cfg["family"];
        ve_spec.apply(spec);
      }
      if (v_chk->count()) cfg["checks"] = ve_checks;
      if (v_pts->count() || !cfg.contains("points")) cfg["points"] = ve_points;
      if (v_seed->count() || !cfg.contains("seed")) cfg["seed"] = ve_seed;
      if (v_h->count() || !cfg.contains("fd_step")) cfg["fd_step"] = ve_h;
      if (v_nc->count()) cfg["negative_control"] = ve_nc;
      if (v_json->count()) cfg["output"] = ve_json;
      if (v_units->count() || !cfg.contains("units")) cfg["units"] = ve_units;
      // the report body must not depend on where it is written
      const std::string out = cfg.value("output", "");
      cfg.erase("output");
      return cmd_verify(cfg, out);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IOError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIO;
  } catch (const rdi::Error& e) {
    std::cerr << e.kind << ": " << e.what() << "\n";
    return kDomain;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
