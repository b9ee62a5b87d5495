#include "primstab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "primstab/excursion.hpp"
#include "primstab/lemmas.hpp"
#include "primstab/path_bounds.hpp"
#include "primstab/quasi_loops.hpp"
#include "primstab/report_io.hpp"
#include "primstab/scans.hpp"

namespace primstab {

namespace {

using ojson = nlohmann::ordered_json;

// Shortest round-trip representation keeps output byte-stable across runs.
std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

ojson num(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

ojson complex_json(std::complex<double> z) { return ojson::array({num(z.real()), num(z.imag())}); }

Slope parse_slope(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) throw PreconditionError("slope must be written p/q");
  try {
    std::size_t a = 0, b = 0;
    const long long p = std::stoll(s.substr(0, slash), &a);
    const long long q = std::stoll(s.substr(slash + 1), &b);
    if (a != slash || b != s.size() - slash - 1) throw PreconditionError("");
    return make_slope(p, q);
  } catch (const std::logic_error&) {
    throw PreconditionError("malformed slope '" + s + "'");
  }
}

// Word given either literally or as a slope p/q.
Word resolve_word(const std::string& word, const std::string& slope) {
  if (!word.empty()) return Word(std::string_view(word));
  if (!slope.empty()) return build_blocks(parse_slope(slope)).representative();
  throw PreconditionError("one of --word or --slope is required");
}

struct Params {
  std::string rep, out = "jsonl", suite = "all", regime, word, slope;
  int max_den = 10, trials = 1000, window = 0, N = 3, span = 3;
  long long max_block_len = 60;
  double eps = 0.1, step = 0.25, d = 0, K = 0, Kx = 0, Ky = 0, cprime = 0;
  std::optional<double> delta, C;
  std::uint64_t seed = 1;
  std::size_t min_len = 1;
};

Representation load_rep(const Params& p) {
  if (p.rep.empty()) throw PreconditionError("--rep is required");
  Representation r = parse_rep_file(p.rep);
  if (p.delta) {
    if (!(*p.delta > 0)) throw PreconditionError("delta must be positive");
    r.config.delta = *p.delta;
  }
  return r;
}

// One JSON object per slope; words are in the tower alphabet.
ojson tower_json(const BlockTower& t) {
  ojson j;
  j["p"] = t.slope.p;
  j["q"] = t.slope.q;
  j["cf"] = t.slope.cf;
  ojson w = ojson::array(), wp = ojson::array();
  for (int i = 0; i <= t.depth(); ++i) {
    w.push_back(t.w[i].str());
    wp.push_back(t.wp[i].str());
  }
  j["w"] = w;
  j["wp"] = wp;
  j["l"] = t.l;
  j["lp"] = t.lp;
  j["swap"] = t.substitution.name();
  return j;
}

int cmd_enumerate(const Params& p, std::ostream& out) {
  if (p.max_den < 1) throw PreconditionError("--max-den must be at least 1");
  for (const Slope& s : enumerate_slopes(p.max_den)) out << tower_json(build_blocks(s)).dump() << '\n';
  return kOk;
}

int cmd_blocks(const Params& p, std::ostream& out) {
  const BlockTower t = build_blocks(parse_slope(p.slope));
  const auto bad = check_tower(t);
  out << tower_json(t).dump() << '\n';
  for (const auto& e : bad) out << ojson{{"violation", e}}.dump() << '\n';
  return bad.empty() ? kOk : kViolation;
}

int cmd_verify_lemmas(const Params& p, std::ostream& out) {
  std::vector<std::string> suites;
  if (p.suite == "all")
    suites = {"recurrences", "magic-len", "perm-cycl", "bloc"};
  else
    suites = {p.suite};
  if (p.max_block_len < 1) throw PreconditionError("--max-block-len must be at least 1");
  std::size_t failures = 0;
  for (const auto& s : suites) {
    const LemmaSuiteResult r = run_lemma_suite(s, p.max_block_len);
    ojson j;
    j["suite"] = r.suite;
    j["max_block_len"] = p.max_block_len;
    j["towers"] = r.towers;
    j["cases"] = r.cases;
    j["failures"] = r.failures;
    j["examples"] = r.examples;
    out << j.dump() << '\n';
    failures += r.failures;
  }
  return failures ? kViolation : kOk;
}

int cmd_scan_bowditch(const Params& p, std::ostream& out) {
  const Representation rho = load_rep(p);
  BowditchOptions opt;
  opt.cap = p.max_den;
  if (opt.cap < 1) throw PreconditionError("--max-den must be at least 1");
  const BowditchReport r = bowditch_scan(rho, opt);
  write_bowditch(r, parse_format(p.out), out);
  return r.aggregate.violations ? kViolation : kOk;
}

int cmd_scan_ps(const Params& p, std::ostream& out) {
  const Representation rho = load_rep(p);
  PsOptions opt;
  opt.cap = p.max_den;
  opt.window = p.window;
  opt.span = p.span;
  opt.step = p.step;
  if (opt.cap < 1) throw PreconditionError("--max-den must be at least 1");
  const PsReport r = ps_scan(rho, opt);
  write_ps(r, parse_format(p.out), out);
  return r.aggregate.violations ? kViolation : kOk;
}

int cmd_excursion(const Params& p, std::ostream& out) {
  const Representation rho = load_rep(p);
  const Word g = resolve_word(p.word, p.slope);
  const ExcursionProfile e = excursion_profile(rho, g, p.step);
  const bool csv = parse_format(p.out) == OutputFormat::csv;
  if (csv) out << "u,E\n";
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    const double u = static_cast<double>(k) * e.step;
    if (csv) {
      out << fmt(u) << ',' << fmt(e.values[k]) << '\n';
    } else {
      ojson j;
      j["u"] = num(u);
      j["E"] = num(e.values[k]);
      out << j.dump() << '\n';
    }
  }
  ojson a;
  a["word"] = g.str();
  a["period"] = num(e.period());
  a["step"] = num(e.step);
  a["min"] = num(e.min_value());
  a["max"] = num(e.max_value());
  a["periodicity_defect"] = num(e.periodicity_defect());
  a["lipschitz"] = num(e.lipschitz_estimate());
  a["c_prime"] = num(e.c_prime);
  const bool ok = e.lipschitz_estimate() <= e.c_prime + 1e-6 && e.periodicity_defect() <= 1e-6;
  a["ok"] = ok;
  if (csv)
    out << "aggregate," << a.dump() << '\n';
  else
    out << ojson{{"aggregate", a}}.dump() << '\n';
  return ok ? kOk : kViolation;
}

int cmd_quasi_loops(const Params& p, std::ostream& out) {
  const Representation rho = load_rep(p);
  const Word g = resolve_word(p.word, p.slope);
  QuasiLoopOptions opt;
  opt.eps = p.eps;
  opt.min_length = p.min_len;
  opt.bowditch_c = p.C;
  const QuasiLoopReport r = find_quasi_loops(rho, g, opt);
  for (const QuasiLoop& q : r.loops) {
    ojson j;
    j["position"] = q.position;
    j["length"] = q.length;
    j["word"] = q.word.str();
    j["displacement"] = num(q.displacement);
    out << j.dump() << '\n';
  }
  ojson a;
  a["loops"] = r.loops.size();
  a["cover"] = r.cover.size();
  a["lambda"] = num(r.coverage.lambda);
  a["threshold"] = num(r.coverage.threshold);
  a["triggered"] = r.coverage.triggered;
  a["lhs"] = num(r.coverage.lhs);
  a["rhs"] = num(r.coverage.rhs);
  a["holds"] = r.coverage.holds;
  out << ojson{{"aggregate", a}}.dump() << '\n';
  return r.coverage.holds ? kOk : kViolation;
}

int cmd_bounds(const Params& p, std::ostream& out) {
  if (p.regime.empty()) throw PreconditionError("--regime is required");
  BoundInput in{p.d, p.K, p.C.value_or(p.cprime), p.delta.value_or(1.0), p.Kx, p.Ky};
  const Regime reg = parse_regime(p.regime);
  const PathBound b = path_lower_bound(in, reg);
  out << fmt(b.bound) << '\n';
  if (reg == Regime::far) out << "n " << b.n << " pair " << fmt(b.pair_bound) << '\n';
  return kOk;
}

int cmd_detour(const Params& p, std::ostream& out) {
  DetourOptions opt;
  opt.trials = p.trials;
  opt.delta = p.delta.value_or(1.0);
  opt.seed = p.seed;
  const DetourReport r = detour_verify(opt);
  ojson j;
  j["trials"] = r.trials.size();
  j["rejected"] = r.rejected;
  j["violations"] = r.violations;
  std::size_t near = 0, close = 0;
  for (const auto& t : r.trials) {
    near += t.regime == Regime::near;
    close += t.close_case;
  }
  j["near"] = near;
  j["far"] = r.trials.size() - near;
  j["close_case"] = close;
  out << j.dump() << '\n';
  return r.violations ? kViolation : kOk;
}

int cmd_quadrilateral(const Params& p, std::ostream& out) {
  const QuadReport r = quadrilateral_check(p.trials, p.delta.value_or(1.0), p.seed);
  ojson j;
  j["trials"] = r.trials.size();
  j["violations"] = r.violations;
  ojson fails = ojson::array();
  for (const auto& q : r.trials)
    for (const auto& f : q.failures)
      if (fails.size() < 10) fails.push_back(f);
  j["examples"] = fails;
  out << j.dump() << '\n';
  return r.violations ? kViolation : kOk;
}

int cmd_local_global(const Params& p, std::ostream& out) {
  const Representation rho = load_rep(p);
  LocalGlobalOptions opt;
  opt.power_floor = p.N;
  if (p.window > 0) opt.window = p.window;
  opt.seed = p.seed;
  if (p.trials != 1000) opt.samples = p.trials;
  const LocalGlobalReport r = local_global_scan(rho, opt);
  for (const auto& row : r.rows) {
    ojson j;
    j["length"] = row.length;
    j["local_lower_ratio"] = num(row.local_lower_ratio);
    j["global_lower_ratio"] = num(row.global_lower_ratio);
    j["global_additive"] = num(row.global_additive);
    out << j.dump() << '\n';
  }
  ojson a;
  a["reference_slope"] = num(r.reference_slope);
  a["a_plus"] = r.a_plus.infinite ? ojson("inf") : complex_json(r.a_plus.z);
  a["a_minus"] = r.a_minus.infinite ? ojson("inf") : complex_json(r.a_minus.z);
  a["b_of_a_plus"] = r.b_of_a_plus.infinite ? ojson("inf") : complex_json(r.b_of_a_plus.z);
  out << ojson{{"aggregate", a}}.dump() << '\n';
  return kOk;
}

int cmd_perturb(const Params& p, std::ostream& out) {
  const Representation rho = load_rep(p);
  if (p.trials < 1) throw PreconditionError("--trials must be at least 1");
  const PerturbationReport r = perturbation_scan(rho, p.eps, p.max_den, p.trials, p.seed);
  for (std::size_t k = 0; k < r.min_ratios.size(); ++k) {
    ojson j;
    j["trial"] = k;
    j["min_ratio"] = num(r.min_ratios[k]);
    out << j.dump() << '\n';
  }
  ojson a;
  a["eps"] = num(p.eps);
  a["min"] = num(r.min);
  a["median"] = num(r.median);
  out << ojson{{"aggregate", a}}.dump() << '\n';
  return r.min > 0 ? kOk : kViolation;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primitive-stability and Bowditch scanner for rank-two free group representations", "primstab"};
  app.require_subcommand(1);
  Params p;

  auto add_rep = [&](CLI::App* c) {
    c->add_option("--rep", p.rep, "representation JSON file")->required();
    c->add_option("--delta", p.delta, "hyperbolicity constant");
  };
  auto add_word = [&](CLI::App* c) {
    c->add_option("--word", p.word, "word over a, A, b, B");
    c->add_option("--slope", p.slope, "class slope p/q");
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", p.out, "jsonl or csv"); };

  auto* enumerate = app.add_subcommand("enumerate", "list primitive classes by slope");
  enumerate->add_option("--max-den", p.max_den, "cap on numerator and denominator");

  auto* blocks = app.add_subcommand("blocks", "block tower of a slope");
  blocks->add_option("--slope", p.slope, "slope p/q")->required();

  auto* lemmas = app.add_subcommand("verify-lemmas", "exhaustive combinatorial suites");
  lemmas->add_option("--suite", p.suite, "recurrences, magic-len, perm-cycl, bloc or all");
  lemmas->add_option("--max-block-len", p.max_block_len, "cap on l_r");

  auto* bowditch = app.add_subcommand("scan-bowditch", "translation length against word length");
  add_rep(bowditch);
  add_out(bowditch);
  bowditch->add_option("--max-den", p.max_den, "slope cap");

  auto* ps = app.add_subcommand("scan-ps", "quasi-geodesic constants of primitive leaves");
  add_rep(ps);
  add_out(ps);
  ps->add_option("--max-den", p.max_den, "slope cap");
  ps->add_option("--window", p.window, "pair window; 0 picks 2|gamma|");
  ps->add_option("--step", p.step, "excursion grid step");

  auto* excursion = app.add_subcommand("excursion", "distance of the orbit leaf to the axis");
  add_rep(excursion);
  add_word(excursion);
  add_out(excursion);
  excursion->add_option("--step", p.step, "grid step");

  auto* loops = app.add_subcommand("quasi-loops", "subwords with small displacement");
  add_rep(loops);
  add_word(loops);
  loops->add_option("--eps", p.eps, "displacement per letter");
  loops->add_option("--min-len", p.min_len, "shortest subword considered");
  loops->add_option("--C", p.C, "multiplicative Bowditch constant");

  auto* bounds = app.add_subcommand("bounds", "detour lower bound for one regime");
  bounds->add_option("--d", p.d, "endpoint distance")->required();
  bounds->add_option("--delta", p.delta, "hyperbolicity constant");
  bounds->add_option("--K", p.K, "clearance from the geodesic");
  bounds->add_option("--Kx", p.Kx, "distance of x to the geodesic");
  bounds->add_option("--Ky", p.Ky, "distance of y to the geodesic");
  bounds->add_option("--cprime", p.cprime, "endpoint slack C");
  bounds->add_option("--C", p.C, "endpoint slack C; overrides --cprime");
  bounds->add_option("--regime", p.regime, "near, close, general-far or far")->required();

  auto* detour = app.add_subcommand("detour", "Monte-Carlo check of the detour bounds");
  detour->add_option("--trials", p.trials, "number of trials");
  detour->add_option("--delta", p.delta, "hyperbolicity constant");
  detour->add_option("--seed", p.seed, "RNG seed");

  auto* quad = app.add_subcommand("quadrilateral", "Monte-Carlo check of the projection quadrilateral");
  quad->add_option("--trials", p.trials, "number of trials");
  quad->add_option("--delta", p.delta, "hyperbolicity constant");
  quad->add_option("--seed", p.seed, "RNG seed");

  auto* lg = app.add_subcommand("local-global", "local against global quasi-geodesic constants");
  add_rep(lg);
  lg->add_option("--N", p.N, "power floor");
  lg->add_option("--window", p.window, "local window");
  lg->add_option("--seed", p.seed, "RNG seed");
  lg->add_option("--trials", p.trials, "sampled words");

  auto* perturb_cmd = app.add_subcommand("perturb", "Bowditch min ratio under random perturbation");
  add_rep(perturb_cmd);
  perturb_cmd->add_option("--eps", p.eps, "entry noise amplitude");
  perturb_cmd->add_option("--max-den", p.max_den, "slope cap");
  perturb_cmd->add_option("--trials", p.trials, "number of perturbations")->default_val(20);
  perturb_cmd->add_option("--seed", p.seed, "RNG seed");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (enumerate->parsed()) return cmd_enumerate(p, out);
    if (blocks->parsed()) return cmd_blocks(p, out);
    if (lemmas->parsed()) return cmd_verify_lemmas(p, out);
    if (bowditch->parsed()) return cmd_scan_bowditch(p, out);
    if (ps->parsed()) return cmd_scan_ps(p, out);
    if (excursion->parsed()) return cmd_excursion(p, out);
    if (loops->parsed()) return cmd_quasi_loops(p, out);
    if (bounds->parsed()) return cmd_bounds(p, out);
    if (detour->parsed()) return cmd_detour(p, out);
    if (quad->parsed()) return cmd_quadrilateral(p, out);
    if (lg->parsed()) return cmd_local_global(p, out);
    if (perturb_cmd->parsed()) return cmd_perturb(p, out);
  } catch (const InternalViolation& e) {
    err << "violation: " << e.what() << '\n';
    return kViolation;
  } catch (const NotLoxodromic& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace primstab
