// conekit: positivity toolkit for multivariate polynomials.
//
// Subcommands
//   seminorm  two-sided enclosure of the cone seminorm ||a||_M
//   member    truncated membership f in M_d with a Gram certificate
//   closure   seminorm-closure membership: witness refutation or eps-ladder
//   verify    independent audit of a certificate file
//   dlimit    direct-limit lower bound for (possibly non-Archimedean) modules
//
// Every command prints a deterministic JSON report; timings are excluded
// from the result object so identical invocations produce identical results.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "conekit/conekit.hpp"

namespace {

using namespace conekit;
using clock_type = std::chrono::steady_clock;

json tolerance_echo() {
  return json{{"psd_tol", defaults::psd_tol},
              {"max_iterations", defaults::max_iterations},
              {"bisect_tol", defaults::bisect_tol},
              {"bisect_max_steps", defaults::bisect_max_steps},
              {"separation_tol", defaults::separation_tol},
              {"sample_count", defaults::sample_count},
              {"sample_seed", defaults::sample_seed},
              {"closure_d_max", defaults::closure_d_max}};
}

void emit_report(const std::string& command, const json& inputs, const json& result,
                 clock_type::time_point started) {
  json report;
  report["command"] = command;
  report["inputs"] = inputs;
  report["result"] = result;
  report["timing_ms"] =
      std::chrono::duration<double, std::milli>(clock_type::now() - started).count();
  report["versions"] = json{{"tool", std::string("conekit ") + defaults::tool_version},
                            {"tolerances", tolerance_echo()}};
  std::cout << report.dump(2) << std::endl;
}

// Shared raw inputs collected from flags.
struct ModuleInputs {
  std::string poly;
  std::vector<std::string> gens;
  std::vector<std::string> gens_t;
  bool preordering = false;
  bool preordering_t = false;
  int nvars_override = 0;
};

int resolve_nvars(const ModuleInputs& in) {
  std::vector<std::string> texts{in.poly};
  texts.insert(texts.end(), in.gens.begin(), in.gens.end());
  texts.insert(texts.end(), in.gens_t.begin(), in.gens_t.end());
  int inferred = infer_nvars(texts);
  if (in.nvars_override > 0) {
    if (in.nvars_override < inferred)
      throw std::invalid_argument("--nvars is smaller than a variable index used in the input");
    return in.nvars_override;
  }
  return inferred;
}

QuadraticModule build_module(int nvars, const std::vector<std::string>& gens, bool preordering) {
  std::vector<Polynomial> parsed;
  for (const auto& g : gens) parsed.push_back(Polynomial::parse(g, nvars));
  return QuadraticModule(nvars, std::move(parsed),
                         preordering ? QuadraticModule::Kind::preordering
                                     : QuadraticModule::Kind::quadratic_module);
}

Box parse_box(const std::string& text, int nvars) {
  Box box;
  if (text.empty()) return box;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(';', pos);
    std::string part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::size_t comma = part.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("box intervals must look like lo,hi[;lo,hi...]");
    box.push_back({std::stod(part.substr(0, comma)), std::stod(part.substr(comma + 1))});
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (box.size() == 1 && nvars > 1) box.assign(static_cast<std::size_t>(nvars), box[0]);
  if (static_cast<int>(box.size()) != nvars)
    throw std::invalid_argument("box has the wrong number of intervals");
  return box;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find(',', pos);
    grid.push_back(std::stod(text.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return grid;
}

json module_echo(const QuadraticModule& m) {
  json gens = json::array();
  for (const auto& g : m.generators) gens.push_back(g.str());
  return json{{"nvars", m.nvars},
              {"generators", gens},
              {"kind", m.is_preordering() ? "preordering" : "quadratic-module"}};
}

// ---------------------------------------------------------------------------

int cmd_seminorm(const ModuleInputs& mi, int degree, const std::string& box_text, int samples,
                 std::uint64_t seed, double bisect_tol, double solver_tol) {
  auto started = clock_type::now();
  const int nvars = resolve_nvars(mi);
  const Polynomial a = Polynomial::parse(mi.poly, nvars);
  const QuadraticModule m = build_module(nvars, mi.gens, mi.preordering);

  auto witness = archimedean_witness(m);
  if (!witness.has_value())
    throw non_archimedean_error(
        "no Archimedean witness found within budget; use the dlimit subcommand for "
        "non-Archimedean modules");

  Box box = parse_box(box_text, nvars);
  if (box.empty()) {
    const double radius = std::sqrt(witness->n);
    box.assign(static_cast<std::size_t>(nvars), {-radius, radius});
  }
  SampleSet d = sample_kset(m, box, samples, seed);

  SeminormOptions opts;
  opts.bisect_tol = bisect_tol;
  opts.solver_tol = solver_tol;
  opts.witness = *witness;
  Interval iv = seminorm_interval(a, m, degree, d, opts);

  json inputs{{"poly", a.str()},       {"module", module_echo(m)}, {"degree", degree},
              {"box", json(box)},      {"samples", samples},       {"seed", seed},
              {"bisect_tol", bisect_tol}, {"solver_tol", solver_tol}};
  json result = to_json(iv);
  result["gap"] = iv.ub_finite ? json(iv.gap()) : json(nullptr);
  result["witness"] = json{{"N", witness->n}, {"degree", witness->degree}};
  emit_report("seminorm", inputs, result, started);
  return 0;
}

int cmd_member(const ModuleInputs& mi, int degree, double tol, long max_iter,
               const std::string& cert_out) {
  auto started = clock_type::now();
  const int nvars = resolve_nvars(mi);
  const Polynomial f = Polynomial::parse(mi.poly, nvars);
  const QuadraticModule m = build_module(nvars, mi.gens, mi.preordering);

  MembershipStatus st = membership(f, m, degree, tol, max_iter);

  json inputs{{"poly", f.str()}, {"module", module_echo(m)}, {"degree", degree},
              {"tol", tol},      {"max_iter", max_iter}};
  json result;
  result["verdict"] = st.is_certified() ? "Certified" : "Unknown";
  result["iterations"] = st.iterations;
  if (st.is_certified()) {
    result["residual"] = st.certificate->residual;
    result["certificate"] = to_json(*st.certificate);
    if (!cert_out.empty()) {
      std::ofstream out(cert_out);
      if (!out) throw std::invalid_argument("cannot open certificate output file");
      out << to_json(*st.certificate).dump(2) << "\n";
    }
  } else {
    result["final_residual"] = st.final_residual;
  }
  emit_report("member", inputs, result, started);
  return st.is_certified() ? 0 : 1;
}

int cmd_closure(const ModuleInputs& mi, const std::string& eps_text, int d_max,
                const std::string& box_text, int samples, std::uint64_t seed, double tol) {
  auto started = clock_type::now();
  const int nvars = resolve_nvars(mi);
  const Polynomial f = Polynomial::parse(mi.poly, nvars);
  const QuadraticModule m = build_module(nvars, mi.gens, mi.preordering);
  std::optional<QuadraticModule> t;
  if (!mi.gens_t.empty()) t = build_module(nvars, mi.gens_t, mi.preordering_t);

  ClosureOptions opts;
  if (!eps_text.empty()) opts.eps_grid = parse_grid(eps_text);
  opts.d_max = d_max;
  opts.box = parse_box(box_text, nvars);
  opts.samples = samples;
  opts.seed = seed;
  opts.solver_tol = tol;

  ClosureVerdict verdict = closure_membership(f, m, t.has_value() ? &*t : nullptr, opts);

  json inputs{{"poly", f.str()},
              {"module", module_echo(m)},
              {"module_t", t.has_value() ? module_echo(*t) : json(nullptr)},
              {"eps_grid", opts.eps_grid},
              {"d_max", d_max},
              {"samples", samples},
              {"seed", seed}};
  json result = to_json(verdict);
  result["sampled_points"] = verdict.samples.size();
  emit_report("closure", inputs, result, started);
  switch (verdict.kind) {
    case ClosureVerdict::Kind::in_closure: return 0;
    case ClosureVerdict::Kind::not_in_closure: return 1;
    default: return 4;
  }
}

int cmd_verify(const ModuleInputs& mi, const std::string& cert_file, double tol) {
  auto started = clock_type::now();
  const int nvars = resolve_nvars(mi);
  const Polynomial f = Polynomial::parse(mi.poly, nvars);
  const QuadraticModule m = build_module(nvars, mi.gens, mi.preordering);

  json jcert;
  {
    std::ifstream in(cert_file);
    if (!in) throw std::invalid_argument("cannot open certificate file");
    try {
      in >> jcert;
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
    }
  }
  GramCertificate cert;
  try {
    cert = certificate_from_json(jcert);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
  }

  VerificationResult vr = verify_certificate(cert, f, m);
  const bool residual_ok = vr.residual <= tol;
  const bool floor_ok = vr.eigenvalue_floor >= -tol;
  const bool stored_ok = std::abs(vr.residual - cert.residual) <= 1e-12 * std::max(1.0, cert.residual);

  json inputs{{"poly", f.str()}, {"module", module_echo(m)}, {"cert", cert_file}, {"tol", tol}};
  json result{{"residual", vr.residual},
              {"stored_residual", cert.residual},
              {"eigenvalue_floor", vr.eigenvalue_floor},
              {"residual_ok", residual_ok},
              {"eigenvalue_ok", floor_ok},
              {"stored_consistent", stored_ok},
              {"pass", residual_ok && floor_ok && stored_ok}};
  emit_report("verify", inputs, result, started);
  return (residual_ok && floor_ok && stored_ok) ? 0 : 1;
}

int cmd_dlimit(const ModuleInputs& mi, const std::string& box_text, int samples,
               std::uint64_t seed) {
  auto started = clock_type::now();
  const int nvars = resolve_nvars(mi);
  const Polynomial a = Polynomial::parse(mi.poly, nvars);
  const QuadraticModule m = build_module(nvars, mi.gens, mi.preordering);

  Box box = parse_box(box_text, nvars);
  if (box.empty()) box.assign(static_cast<std::size_t>(nvars), {-1.0, 1.0});
  SampleSet d = sample_kset(m, box, samples, seed);
  if (d.empty()) throw empty_set_error("no feasible sample points found in the box");

  DirectLimitBound bound = direct_limit_lb(m, a, d);

  json inputs{{"poly", a.str()}, {"module", module_echo(m)}, {"box", json(box)},
              {"samples", samples}, {"seed", seed}};
  json result{{"lb", bound.value},
              {"attained_at", bound.attained_at},
              {"sampled_points", d.size()}};
  emit_report("dlimit", inputs, result, started);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positivity toolkit for multivariate polynomials"};
  app.require_subcommand(1);

  ModuleInputs mi;
  int degree = 2;
  int d_max = defaults::closure_d_max;
  int samples = defaults::sample_count;
  std::uint64_t seed = defaults::sample_seed;
  double tol = defaults::psd_tol;
  double bisect_tol = defaults::bisect_tol;
  long max_iter = defaults::max_iterations;
  std::string box_text, eps_text, cert_file, cert_out;

  auto add_common = [&](CLI::App* cmd, bool with_gens_t) {
    cmd->add_option("--poly", mi.poly, "polynomial (grammar: x1..xN, p/q coefficients, + - * ^)")
        ->required();
    cmd->add_option(with_gens_t ? "--gens-m" : "--gens", mi.gens, "module generators (repeatable)");
    if (with_gens_t) cmd->add_option("--gens-t", mi.gens_t, "second cone generators (repeatable)");
    cmd->add_flag("--preordering", mi.preordering, "treat the module as a preordering");
    if (with_gens_t)
      cmd->add_flag("--preordering-t", mi.preordering_t, "treat the second cone as a preordering");
    cmd->add_option("--nvars", mi.nvars_override, "ambient variable count (default: inferred)");
  };

  CLI::App* seminorm_cmd = app.add_subcommand("seminorm", "two-sided cone seminorm enclosure");
  add_common(seminorm_cmd, false);
  seminorm_cmd->add_option("--degree", degree, "truncation degree")->required();
  seminorm_cmd->add_option("--box", box_text, "sampling box lo,hi[;lo,hi...] (default: witness ball)");
  seminorm_cmd->add_option("--samples", samples, "sample count for the lower bound");
  seminorm_cmd->add_option("--seed", seed, "sampling seed");
  seminorm_cmd->add_option("--tol", bisect_tol, "bisection width tolerance");
  seminorm_cmd->add_option("--solver-tol", tol, "feasibility tolerance");

  CLI::App* member_cmd = app.add_subcommand("member", "truncated cone membership certificate");
  add_common(member_cmd, false);
  member_cmd->add_option("--degree", degree, "truncation degree")->required();
  member_cmd->add_option("--tol", tol, "feasibility tolerance");
  member_cmd->add_option("--max-iter", max_iter, "projection iteration budget");
  member_cmd->add_option("--cert-out", cert_out, "write the certificate to this file");

  CLI::App* closure_cmd = app.add_subcommand("closure", "seminorm-closure membership verdict");
  add_common(closure_cmd, true);
  closure_cmd->add_option("--eps-grid", eps_text, "comma-separated eps ladder (default 1,0.1,0.01)");
  closure_cmd->add_option("--dmax", d_max, "largest truncation degree to try");
  closure_cmd->add_option("--box", box_text, "sampling box (default unit box)");
  closure_cmd->add_option("--samples", samples, "sample count");
  closure_cmd->add_option("--seed", seed, "sampling seed");
  closure_cmd->add_option("--tol", tol, "feasibility tolerance");

  CLI::App* verify_cmd = app.add_subcommand("verify", "audit a certificate file");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--cert", cert_file, "certificate JSON file")->required();
  verify_cmd->add_option("--tol", tol, "audit tolerance");

  CLI::App* dlimit_cmd = app.add_subcommand("dlimit", "direct-limit lower bound");
  add_common(dlimit_cmd, false);
  dlimit_cmd->add_option("--box", box_text, "sampling box lo,hi[;lo,hi...]");
  dlimit_cmd->add_option("--samples", samples, "sample count");
  dlimit_cmd->add_option("--seed", seed, "sampling seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(seminorm_cmd))
      return cmd_seminorm(mi, degree, box_text, samples, seed, bisect_tol, tol);
    if (app.got_subcommand(member_cmd)) return cmd_member(mi, degree, tol, max_iter, cert_out);
    if (app.got_subcommand(closure_cmd))
      return cmd_closure(mi, eps_text, d_max, box_text, samples, seed, tol);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(mi, cert_file, tol);
    if (app.got_subcommand(dlimit_cmd)) return cmd_dlimit(mi, box_text, samples, seed);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const non_archimedean_error& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const empty_set_error& e) {
    std::cerr << "empty set: " << e.what() << "\n";
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
