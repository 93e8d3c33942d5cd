#include "svf/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "svf/checkers.hpp"
#include "svf/error.hpp"
#include "svf/instances.hpp"
#include "svf/plot.hpp"
#include "svf/selectors.hpp"

namespace svf::cli {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string> kCommands = {"validate",       "check-convex", "check-concave", "check-cond2",
                                            "check-cond1",    "solve-sandwich", "solve-affine", "fixed-point",
                                            "transversal",    "verify",        "emit-plot"};

struct Flags {
  std::string command;
  std::string target;
  std::size_t grid = 0;
  bool combos = false;
  std::string objective = "chebyshev";
  std::optional<double> eps;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string svg_path;
  bool with_selection = false;
  bool no_timing = false;
  std::vector<double> at;
};

struct Context {
  Flags flags;
  select::Tolerances tol;
  select::Objective objective = select::Objective::kChebyshev;
  std::string grid_description;
};

// Thrown to end a command with a given status; the report is already filled in.
struct Finished {
  std::string status;
};

json point(const geom::Point& p) {
  json a = json::array();
  for (double v : p) a.push_back(v);
  return a;
}

json map_json(const model::AffineMap& h) { return json{{"c", point(h.c)}, {"d", point(h.d)}}; }

json triple_json(const check::Triple& t) { return json{{"x", t.x}, {"y", t.y}, {"t", t.t}, {"mid", t.mid}}; }

json witness_json(const check::Witness& w) {
  json j = triple_json(w.triple);
  j["margin"] = w.margin;
  j["detail"] = w.detail;
  return j;
}

json certificate_json(const std::vector<lp::Multiplier>& cert) {
  json a = json::array();
  for (const lp::Multiplier& m : cert) a.push_back(json{{"index", m.index}, {"weight", m.weight}});
  return a;
}

json spread_json(const std::vector<select::Spread>& spread) {
  json a = json::array();
  for (const select::Spread& s : spread) {
    auto num = [](double v) -> json { return std::isfinite(v) ? json(v) : json(v > 0 ? "inf" : "-inf"); };
    a.push_back(json{{"min", num(s.min)}, {"max", num(s.max)}});
  }
  return a;
}

json violations_json(const std::vector<model::Violation>& vs) {
  json a = json::array();
  for (const model::Violation& v : vs) a.push_back(json{{"field", v.field}, {"rule", v.rule}});
  return a;
}

struct Loaded {
  std::string name;
  std::optional<model::Instance> instance;
  std::vector<model::Violation> violations;
};

Loaded load(const std::string& target) {
  Loaded l;
  l.name = target;
  const std::string prefix = "builtin:";
  if (target.rfind(prefix, 0) == 0) {
    inst::NamedInstance ni = inst::builtin(target.substr(prefix.size()));
    l.violations = model::validate(ni.instance);
    l.instance = std::move(ni.instance);
    return l;
  }
  model::ParseResult pr = model::parse_instance_file(target);
  l.violations = std::move(pr.violations);
  if (pr.instance) {
    for (model::Violation& v : model::validate(*pr.instance)) l.violations.push_back(std::move(v));
    l.instance = std::move(pr.instance);
  }
  return l;
}

std::vector<check::Triple> grid_triples(const model::SvFunction& f, Context& ctx) {
  std::vector<check::TripleGrid> grids;
  if (ctx.flags.combos) grids.push_back(check::combos_grid(model::abscissae(f)));
  if (ctx.flags.grid > 0) grids.push_back(check::dense_grid(model::domain(f), ctx.flags.grid));
  if (grids.empty()) grids.push_back(check::default_grid(f));
  std::string desc;
  for (const auto& g : grids) desc += (desc.empty() ? "" : " + ") + g.describe();
  ctx.grid_description = desc;
  return check::triples_of(grids);
}

std::string outcome_status(const check::CheckOutcome& o) { return o.pass ? "pass" : "violation"; }

void put_check(json& report, const check::CheckOutcome& o) {
  report["triples_checked"] = o.checked;
  if (o.witness) report["witness"] = witness_json(*o.witness);
}

void put_selection(json& report, const select::SelectionResult& r) {
  if (r.map) report["map"] = map_json(*r.map);
  if (r.unique) report["unique"] = *r.unique;
  if (!r.spread.empty()) report["spread"] = spread_json(r.spread);
  if (r.slack) report["slack"] = *r.slack;
  if (r.witness) {
    json w = triple_json(r.witness->triple);
    w["inequality"] = check::to_string(r.witness->kind);
    report["witness"] = w;
  }
  if (!r.certificate.empty()) report["certificate"] = certificate_json(r.certificate);
  if (r.status != select::SelectionStatus::kInfeasible) report["verified_residual"] = r.verified_residual;
}

std::string selection_status(const select::SelectionResult& r) { return select::to_string(r.status); }

const model::FiberFamily& require_family(const model::SvFunction& f) {
  const auto* fam = std::get_if<model::FiberFamily>(&f);
  if (!fam) throw InvalidArgument("this command needs a \"fibers\" instance");
  return *fam;
}

std::vector<model::ListedFiber> selected_fibers(const model::FiberFamily& fam, const std::vector<double>& at) {
  if (at.empty()) return fam.fibers;
  std::vector<model::ListedFiber> out;
  for (double x : at) {
    auto it = std::find_if(fam.fibers.begin(), fam.fibers.end(),
                           [&](const model::ListedFiber& fb) { return std::abs(fb.x - x) <= model::kFiberMatchEps; });
    if (it == fam.fibers.end()) throw InvalidArgument("no listed fiber at x = " + plot::shortest(x));
    out.push_back(*it);
  }
  return out;
}

std::string cmd_check(const model::SvFunction& f, Context& ctx, json& report) {
  const auto triples = grid_triples(f, ctx);
  check::CheckOutcome o;
  const std::string& c = ctx.flags.command;
  if (c == "check-convex") {
    o = check::check_convex(f, triples, ctx.tol.eps);
  } else if (c == "check-concave") {
    o = check::check_concave(f, triples, ctx.tol.eps);
  } else if (c == "check-cond2") {
    o = check::check_condition2(f, triples, ctx.tol.eps);
  } else {
    const auto [lo, hi] = model::inf_sup(f);
    o = check::check_condition1(lo, hi, triples, ctx.tol.eps);
  }
  put_check(report, o);
  return outcome_status(o);
}

std::string cmd_sandwich(const model::SvFunction& f, Context& ctx, json& report) {
  const auto [lo, hi] = model::inf_sup(f);
  const select::SelectionResult r = select::sandwich_affine(lo, hi, ctx.objective, ctx.tol);
  report["objective"] = select::to_string(ctx.objective);
  if (r.map) report["alpha"] = r.map->d[0], report["beta"] = r.map->c[0];
  put_selection(report, r);
  return selection_status(r);
}

std::string cmd_affine(const model::SvFunction& f, Context& ctx, json& report) {
  if (const auto* g = std::get_if<model::GraphPolytope>(&f)) {
    const select::SelectionResult r = select::affine_selection_convex(*g, ctx.tol);
    const select::SelectionResult e = select::affine_selection_endpoint(*g, ctx.tol);
    report["method"] = "induction";
    put_selection(report, r);
    report["endpoint_map"] = map_json(*e.map);
    report["endpoint_verified_residual"] = e.verified_residual;
    report["samples"] = ctx.tol.n_verify;
    return selection_status(r);
  }
  if (std::holds_alternative<model::IntervalPL>(f)) {
    report["method"] = "sandwich";
    return cmd_sandwich(f, ctx, report);
  }
  report["method"] = "transversal";
  const auto fibers = require_family(f).fibers;
  const select::SelectionResult r = select::transversal_solve(fibers, ctx.tol);
  put_selection(report, r);
  return selection_status(r);
}

std::string cmd_fixed_point(const model::SvFunction& f, Context& ctx, json& report) {
  const select::FixedPointResult r = select::fixed_point(f, ctx.objective, ctx.tol);
  report["objective"] = select::to_string(ctx.objective);
  if (r.x) report["x_star"] = *r.x;
  if (r.map) report["map"] = map_json(*r.map);
  if (r.x) report["slack"] = r.slack;
  if (r.witness) report["witness"] = witness_json(*r.witness);
  return select::to_string(r.status);
}

std::string cmd_transversal(const model::SvFunction& f, Context& ctx, json& report) {
  const auto fibers = selected_fibers(require_family(f), ctx.flags.at);
  json xs = json::array();
  for (const auto& fb : fibers) xs.push_back(fb.x);
  report["fibers_at"] = xs;
  const select::SelectionResult r = select::transversal_solve(fibers, ctx.tol);
  put_selection(report, r);
  if (r.status == select::SelectionStatus::kInfeasible) {
    const auto hs = select::transversal_halfspaces(fibers);
    report["certificate_valid"] = lp::verify_certificate(hs, r.certificate, lp::feasibility_tolerance(hs));
  }
  return selection_status(r);
}

std::string cmd_emit_plot(const model::SvFunction& f, Context& ctx, json& report) {
  if (ctx.flags.out_path.empty()) throw InvalidArgument("emit-plot needs --out <csv path>");
  std::optional<model::AffineMap> h;
  if (ctx.flags.with_selection) {
    const auto [lo, hi] = model::inf_sup(f);
    const select::SelectionResult r = select::sandwich_affine(lo, hi, ctx.objective, ctx.tol);
    if (r.map) h = r.map;
    report["selection"] = selection_status(r);
    if (r.map) report["map"] = map_json(*r.map);
  }
  const std::string csv = plot::plot_csv(f, h);
  std::ofstream(ctx.flags.out_path, std::ios::binary) << csv;
  report["csv"] = ctx.flags.out_path;
  report["rows"] = plot::kPlotRows;
  report["columns"] = h ? 4 : 3;
  if (!ctx.flags.svg_path.empty()) {
    std::ofstream(ctx.flags.svg_path, std::ios::binary) << plot::plot_svg(f, h);
    report["svg"] = ctx.flags.svg_path;
  }
  return "pass";
}

std::string verify_sadowska(const inst::NamedInstance& ni, Context& ctx, json& report) {
  const model::SvFunction& f = ni.instance.function;
  const auto& fam = require_family(f);
  std::vector<model::ListedFiber> four(fam.fibers.begin(), fam.fibers.begin() + 4);
  const select::SelectionResult r = select::transversal_solve(four, ctx.tol);
  bool ok = r.status == select::SelectionStatus::kFound && r.unique.value_or(false);
  if (r.map) report["map"] = map_json(*r.map);
  report["unique"] = r.unique.value_or(false);

  const select::SelectionResult all = select::transversal_solve(fam.fibers, ctx.tol);
  report["with_f4"] = select::to_string(all.status);
  const auto hs = select::transversal_halfspaces(fam.fibers);
  const bool cert_ok = all.status == select::SelectionStatus::kInfeasible &&
                       lp::verify_certificate(hs, all.certificate, lp::feasibility_tolerance(hs));
  report["certificate_valid"] = cert_ok;
  ok = ok && cert_ok;

  if (r.map) {
    const geom::Point at4 = (*r.map)(4.0);
    const geom::Separation sep = geom::separate(fam.fibers[4].set, at4);
    report["value_at_4"] = point(at4);
    report["miss_distance"] = sep.margin;
    ok = ok && sep.margin >= 3.5;
  }

  const std::vector<check::TripleGrid> grids = {check::combos_grid(model::abscissae(f)),
                                                check::dense_grid(fam.domain, 8)};
  const check::CheckOutcome c2 = check::check_condition2(f, check::triples_of(grids), ctx.tol.eps);
  ctx.grid_description = grids[0].describe() + " + " + grids[1].describe();
  report["condition2"] = outcome_status(c2);
  report["triples_checked"] = c2.checked;
  ok = ok && c2.pass;
  return ok ? "pass" : "violation";
}

std::string cmd_verify(Context& ctx, json& report) {
  const inst::NamedInstance ni = inst::builtin(ctx.flags.target);
  report["instance"] = ni.name;
  if (ni.name == "sadowska") return verify_sadowska(ni, ctx, report);

  const auto violations = model::validate(ni.instance);
  json checks = json::object();
  bool ok = true;
  const bool valid = violations.empty();
  checks["valid"] = valid;
  ok = ok && valid == ni.expected.valid;
  if (!valid) {
    report["violations"] = violations_json(violations);
    report["checks"] = checks;
    return ok ? "pass" : "violation";
  }
  const model::SvFunction& f = ni.instance.function;
  if (ni.expected.condition2_on_grid) {
    const std::vector<check::TripleGrid> grids = {check::combos_grid(model::abscissae(f)), check::default_grid(f)};
    ctx.grid_description = grids[0].describe() + " + " + grids[1].describe();
    const bool pass = check::check_condition2(f, check::triples_of(grids), ctx.tol.eps).pass;
    checks["condition2"] = pass;
    ok = ok && pass == *ni.expected.condition2_on_grid;
  }
  if (ni.expected.selection_exists) {
    bool exists = false;
    if (const auto* g = std::get_if<model::GraphPolytope>(&f)) {
      const auto r = select::affine_selection_convex(*g, ctx.tol);
      exists = r.status == select::SelectionStatus::kFound;
      report["map"] = map_json(*r.map);
    } else if (std::holds_alternative<model::IntervalPL>(f)) {
      const auto [lo, hi] = model::inf_sup(f);
      const auto r = select::sandwich_affine(lo, hi, ctx.objective, ctx.tol);
      exists = r.status != select::SelectionStatus::kInfeasible;
      if (r.map) report["map"] = map_json(*r.map);
    } else {
      const auto r = select::transversal_solve(require_family(f).fibers, ctx.tol);
      exists = r.status != select::SelectionStatus::kInfeasible;
      if (r.map) report["map"] = map_json(*r.map);
    }
    checks["selection_exists"] = exists;
    ok = ok && exists == *ni.expected.selection_exists;
  }
  report["checks"] = checks;
  return ok ? "pass" : "violation";
}

int exit_code(const std::string& status) {
  if (status == "pass" || status == "found" || status == "multiple") return kExitOk;
  if (status == "violation" || status == "infeasible") return kExitNegative;
  return kExitError;
}

std::optional<double> env_eps() {
  const char* s = std::getenv("SVF_EPS");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(v > 0.0)) throw InvalidArgument("SVF_EPS is not a positive number");
  return v;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Affine selections of set-valued functions on an interval", "svfsel"};
  Flags flags;
  app.add_option("command", flags.command, "One of: validate, check-convex, check-concave, check-cond2, check-cond1, "
                                           "solve-sandwich, solve-affine, fixed-point, transversal, verify, emit-plot")
      ->required();
  app.add_option("target", flags.target, "Instance file, builtin:<name>, or a builtin name for verify")->required();
  app.add_option("--grid", flags.grid, "Dense lattice resolution N");
  app.add_flag("--combos", flags.combos, "Breakpoint-combos grid policy");
  app.add_option("--objective", flags.objective, "chebyshev or lexmin")
      ->check(CLI::IsMember({"chebyshev", "lexmin"}));
  app.add_option("--eps", flags.eps, "Feasibility tolerance (overrides SVF_EPS)");
  app.add_option("--seed", flags.seed, "Seed recorded in the report");
  app.add_option("--out", flags.out_path, "Output path (CSV for emit-plot, report copy otherwise)");
  app.add_option("--svg", flags.svg_path, "emit-plot: also write an SVG line plot");
  app.add_flag("--with-selection", flags.with_selection, "emit-plot: add the sandwich selection column");
  app.add_flag("--no-timing", flags.no_timing, "Omit duration_ms from the report");
  app.add_option("--at", flags.at, "transversal: restrict to listed fibers at these abscissae")->delimiter(',');

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitError;
  }
  if (std::find(kCommands.begin(), kCommands.end(), flags.command) == kCommands.end()) {
    err << "error: unknown command \"" << flags.command << "\"\n" << app.help();
    return kExitError;
  }

  const auto start = std::chrono::steady_clock::now();
  Context ctx;
  ctx.flags = flags;
  ctx.objective = flags.objective == "lexmin" ? select::Objective::kLexmin : select::Objective::kChebyshev;

  json report;
  report["command"] = flags.command;
  report["instance"] = flags.target;
  report["status"] = "error";
  json payload = json::object();
  std::string status;
  try {
    if (const auto e = env_eps()) ctx.tol.eps = *e;
    if (flags.eps) {
      if (!(*flags.eps > 0.0)) throw InvalidArgument("--eps must be positive");
      ctx.tol.eps = *flags.eps;
    }
    if (flags.command == "verify") {
      status = cmd_verify(ctx, payload);
      if (payload.contains("instance")) {
        report["instance"] = payload["instance"];
        payload.erase("instance");
      }
    } else {
      Loaded l = load(flags.target);
      if (!l.violations.empty() || !l.instance) {
        payload["violations"] = violations_json(l.violations);
        status = "invalid";
      } else if (flags.command == "validate") {
        payload["kind"] = model::kind_name(l.instance->function);
        status = "pass";
      } else {
        const model::SvFunction& f = l.instance->function;
        const std::string& c = flags.command;
        if (c.rfind("check-", 0) == 0) {
          status = cmd_check(f, ctx, payload);
        } else if (c == "solve-sandwich") {
          status = cmd_sandwich(f, ctx, payload);
        } else if (c == "solve-affine") {
          status = cmd_affine(f, ctx, payload);
        } else if (c == "fixed-point") {
          status = cmd_fixed_point(f, ctx, payload);
        } else if (c == "transversal") {
          status = cmd_transversal(f, ctx, payload);
        } else {
          status = cmd_emit_plot(f, ctx, payload);
        }
      }
    }
  } catch (const std::exception& e) {
    status = "error";
    payload["error"] = e.what();
  }

  report["status"] = status;
  for (auto& [key, value] : payload.items()) report[key] = value;
  report["tolerances"] = json{{"eps", ctx.tol.eps},
                              {"eps_slice", ctx.tol.eps_slice},
                              {"eps_sel", ctx.tol.eps_sel},
                              {"eps_unique", ctx.tol.eps_unique},
                              {"seed", flags.seed}};
  report["grid"] = ctx.grid_description.empty() ? json(nullptr) : json(ctx.grid_description);
  if (!flags.no_timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["duration_ms"] = std::round(ms * 1000.0) / 1000.0;
  }

  const std::string text = report.dump(2) + "\n";
  out << text;
  if (!flags.out_path.empty() && flags.command != "emit-plot") std::ofstream(flags.out_path, std::ios::binary) << text;
  return exit_code(status);
}

}  // namespace svf::cli
