#include "pla_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pla/aggregators/admissibility.hpp"
#include "pla/eliminate/eliminate.hpp"
#include "pla/eliminate/experiments.hpp"
#include "pla/error.hpp"
#include "pla/io/files.hpp"
#include "pla/logic/evaluator.hpp"
#include "pla/logic/parser.hpp"
#include "pla/logic/printer.hpp"
#include "pla/network/inference.hpp"
#include "pla/util/numeric.hpp"

namespace pla::cli {

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string net;
  std::string formula;
  std::string structure;
  std::string at;
  std::size_t n = 0;
  std::string n_grid;
  std::size_t samples = 1000;
  std::optional<std::uint64_t> seed;
  double epsilon = 0.05;
  std::string value_set = "1";
  unsigned workers = 1;
  std::string out;
  std::string format;
  std::string mode;
  std::string function;
  std::vector<std::string> spectra;
  std::size_t random_spectra = 5;
  std::size_t trials = 20;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t require_seed(const RunConfig& c, const std::string& command) {
  if (!c.seed) throw UsageError(command + " is stochastic and needs --seed");
  return *c.seed;
}

PlaNetwork require_net(const RunConfig& c) {
  if (c.net.empty()) throw UsageError("--net is required");
  return load_network(c.net);
}

FormulaPtr require_formula(const RunConfig& c) {
  if (c.formula.empty()) throw UsageError("--formula is required");
  std::error_code ec;
  if (std::filesystem::is_regular_file(c.formula, ec)) {
    std::string text = read_file(c.formula);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return parse_formula(text);
  }
  return parse_formula(c.formula);
}

std::size_t require_n(const RunConfig& c) {
  if (c.n == 0) throw UsageError("--n is required (domain size >= 1)");
  return c.n;
}

std::size_t world_cap() {
  const char* env = std::getenv("PLA_WORLD_CAP");
  if (!env || !*env) return kDefaultWorldCap;
  std::size_t cap = 0;
  const std::string_view s(env);
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
  if (ec != std::errc() || p != s.data() + s.size() || cap == 0) {
    throw UsageError("PLA_WORLD_CAP must be a positive integer");
  }
  return cap;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size() || v == 0) {
      throw UsageError("bad grid entry '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

// "x=1,y=2"; unassigned free variables default to 1, 2, ... in order.
std::vector<Element> parse_at(const std::string& text, const std::vector<Variable>& vars,
                              std::size_t n) {
  std::vector<Element> values(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) values[i] = static_cast<Element>(i + 1);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("bad --at entry '" + item + "'");
    const std::string name = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw UsageError("--at names '" + name + "', not a free variable");
    Element e = 0;
    auto [p, ec] = std::from_chars(val.data(), val.data() + val.size(), e);
    if (ec != std::errc() || p != val.data() + val.size()) {
      throw UsageError("bad element in --at entry '" + item + "'");
    }
    values[static_cast<std::size_t>(it - vars.begin())] = e;
  }
  for (Element e : values) {
    if (e < 1 || e > n) {
      throw UsageError("element " + std::to_string(e) + " outside [1, " + std::to_string(n) + "]");
    }
  }
  return values;
}

Assignment to_assignment(const std::vector<Variable>& vars, const std::vector<Element>& values) {
  Assignment a;
  for (std::size_t i = 0; i < vars.size(); ++i) a[vars[i]] = values[i];
  return a;
}

ordered_json at_json(const std::vector<Variable>& vars, const std::vector<Element>& values) {
  ordered_json j = ordered_json::object();
  for (std::size_t i = 0; i < vars.size(); ++i) j[vars[i]] = values[i];
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string format_or(const RunConfig& c, const std::string& fallback,
                      std::initializer_list<const char*> allowed) {
  const std::string f = c.format.empty() ? fallback : c.format;
  for (const char* a : allowed) {
    if (f == a) return f;
  }
  throw UsageError("unsupported --format '" + f + "' for this command");
}

std::string cmd_check(const RunConfig& c) {
  const auto fmt = format_or(c, "text", {"text", "json"});
  const PlaNetwork net = require_net(c);
  const auto& strat = net.stratification();
  ordered_json j;
  std::string text = "ranks:";
  ordered_json ranks = ordered_json::object();
  for (std::size_t r = 0; r < net.signature().size(); ++r) {
    text += " " + net.signature()[r].name + "=" + std::to_string(strat.rank[r]);
    ranks[net.signature()[r].name] = strat.rank[r];
  }
  text += std::string("; aggregation-free: ") + (net.aggregation_free() ? "yes" : "no") + "\n";
  j["ranks"] = ranks;
  j["aggregation_free"] = net.aggregation_free();
  if (!c.formula.empty()) {
    const FormulaPtr phi = require_formula(c);
    const auto fv = free_variables(*phi);
    CompiledFormula(*phi, net.signature(), fv);
    std::string vars;
    for (const auto& v : fv) vars += (vars.empty() ? "" : ", ") + v;
    text += "formula: " + print(*phi) + "\nfree variables: " + (vars.empty() ? "(none)" : vars) +
            "; function rank: " + std::to_string(function_rank(*phi)) + "\n";
    j["formula"] = print(*phi);
    j["free_variables"] = fv;
    j["function_rank"] = function_rank(*phi);
  }
  return fmt == "json" ? dump(j) : text;
}

std::string cmd_sample(const RunConfig& c) {
  format_or(c, "json", {"json"});
  const PlaNetwork net = require_net(c);
  return structure_to_json(sample(net, require_n(c), require_seed(c, "sample")));
}

std::string cmd_eval(const RunConfig& c) {
  const auto fmt = format_or(c, "json", {"json", "csv"});
  const PlaNetwork net = require_net(c);
  const FormulaPtr phi = require_formula(c);
  const Structure world = c.structure.empty()
                              ? sample(net, require_n(c), require_seed(c, "eval without --structure"))
                              : parse_structure(read_file(c.structure), net.signature_ptr());
  const std::size_t n = world.domain_size();
  const auto vars = free_variables(*phi);
  const CompiledFormula cf(*phi, net.signature(), vars);

  std::vector<std::vector<Element>> tuples;
  if (!c.at.empty() || vars.empty()) {
    tuples.push_back(parse_at(c.at, vars, n));
  } else {
    std::vector<Element> t(vars.size(), 1);
    while (true) {
      tuples.push_back(t);
      std::size_t i = t.size();
      while (i > 0 && t[i - 1] == n) t[--i] = 1;
      if (i == 0) break;
      ++t[i - 1];
    }
  }
  if (fmt == "csv") {
    std::string s;
    for (const auto& v : vars) s += v + ",";
    s += "value\n";
    for (const auto& t : tuples) {
      for (Element e : t) s += std::to_string(e) + ",";
      s += format_double(cf.evaluate(world, t)) + "\n";
    }
    return s;
  }
  ordered_json j;
  j["formula"] = print(*phi);
  j["domain_size"] = n;
  ordered_json vals = ordered_json::array();
  for (const auto& t : tuples) {
    vals.push_back({{"at", at_json(vars, t)}, {"value", cf.evaluate(world, t)}});
  }
  j["values"] = std::move(vals);
  return dump(j);
}

std::string cmd_infer(const RunConfig& c) {
  format_or(c, "json", {"json"});
  if (c.mode != "exact" && c.mode != "mc") throw UsageError("infer mode must be exact or mc");
  const PlaNetwork net = require_net(c);
  const FormulaPtr phi = require_formula(c);
  const std::size_t n = require_n(c);
  const auto vars = free_variables(*phi);
  const auto values = parse_at(c.at, vars, n);
  const ValueSet set = ValueSet::parse(c.value_set);
  ordered_json j;
  j["mode"] = c.mode;
  j["formula"] = print(*phi);
  j["n"] = n;
  j["at"] = at_json(vars, values);
  j["value_set"] = set.to_string();
  if (c.mode == "exact") {
    j["worlds"] = world_count(net, n, world_cap());
    j["probability"] =
        exact_event_probability(net, n, *phi, to_assignment(vars, values), set, world_cap());
  } else {
    const auto est = mc_event_probability(net, n, *phi, to_assignment(vars, values), set,
                                          c.samples, require_seed(c, "infer mc"), c.workers);
    j["samples"] = est.samples;
    j["seed"] = *c.seed;
    j["probability"] = est.value;
    j["ci"] = est.ci;
  }
  return dump(j);
}

std::string cmd_eliminate(const RunConfig& c) {
  const auto fmt = format_or(c, "json", {"json", "text"});
  const PlaNetwork net = require_net(c);
  const FormulaPtr phi = require_formula(c);
  const auto res = eliminate(net, *phi);
  if (fmt == "text") return res.report.output + "\n";
  return report_to_json(res.report);
}

std::string cmd_converge(const RunConfig& c, std::ostream& err) {
  format_or(c, "csv", {"csv"});
  const PlaNetwork net = require_net(c);
  const FormulaPtr phi = require_formula(c);
  ConvergenceOptions opt;
  opt.n_grid = parse_grid(c.n_grid.empty() ? std::to_string(require_n(c)) : c.n_grid);
  opt.epsilon = c.epsilon;
  opt.samples = c.samples;
  opt.seed = require_seed(c, "converge");
  opt.workers = c.workers;
  opt.value_set = ValueSet::parse(c.value_set);
  std::optional<BasicProbabilityFormula> psi;
  try {
    psi = eliminate(net, *phi).formula;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NetworkHasAggregation && e.code() != ErrorCode::NoLimitMethod) throw;
    err << "note: no elimination (" << e.what() << "); exceedance columns are nan\n";
  }
  return convergence_csv(convergence_experiment(net, *phi, psi ? &*psi : nullptr, opt));
}

SupportSpectrum parse_spectrum(const std::string& text) {
  // "c:alpha,c:alpha,..."
  SupportSpectrum s;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("bad spectrum point '" + item + "'");
    const auto c = parse_double(item.substr(0, colon));
    const auto a = parse_double(item.substr(colon + 1));
    if (!c || !a) throw UsageError("bad spectrum point '" + item + "'");
    s.push_back({*c, *a});
  }
  return normalize_spectrum(s);
}

std::string cmd_admissible(const RunConfig& c) {
  format_or(c, "json", {"json"});
  if (c.function.empty()) throw UsageError("--function is required");
  const auto fn = AggregatorRegistry::builtins().get(c.function);
  AdmissibilityOptions opt;
  if (!c.n_grid.empty()) opt.lengths = parse_grid(c.n_grid);
  opt.trials = c.trials;
  opt.seed = require_seed(c, "admissible");

  std::vector<SpectrumTuple> spectra;
  if (!c.spectra.empty()) {
    if (c.spectra.size() % fn->arity != 0) {
      throw UsageError("number of --spectrum values must be a multiple of the arity");
    }
    for (std::size_t i = 0; i < c.spectra.size(); i += fn->arity) {
      SpectrumTuple t;
      for (std::size_t k = 0; k < fn->arity; ++k) t.push_back(parse_spectrum(c.spectra[i + k]));
      spectra.push_back(std::move(t));
    }
  } else {
    std::mt19937_64 rng(opt.seed);
    for (std::size_t i = 0; i < c.random_spectra; ++i) {
      SpectrumTuple t;
      for (std::size_t k = 0; k < fn->arity; ++k) t.push_back(random_spectrum(rng));
      spectra.push_back(std::move(t));
    }
  }
  const auto rep = empirical_admissibility_check(*fn, spectra, opt);

  ordered_json j;
  j["function"] = rep.function;
  j["seed"] = opt.seed;
  j["trials"] = rep.trials;
  j["threshold"] = rep.threshold;
  ordered_json js = ordered_json::array();
  for (const auto& t : rep.spectra) {
    ordered_json jt = ordered_json::array();
    for (const auto& s : t) {
      ordered_json pts = ordered_json::array();
      for (const auto& p : s) pts.push_back({{"c", p.c}, {"alpha", p.alpha}});
      jt.push_back(std::move(pts));
    }
    js.push_back(std::move(jt));
  }
  j["spectra"] = std::move(js);
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"spectrum", r.spectrum}, {"length", r.length}, {"max_gap", r.max_gap}});
  }
  j["rows"] = std::move(rows);
  j["final_max_gap"] = rep.final_max_gap;
  j["pass"] = rep.pass;
  return dump(j);
}

void add_common(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--out", c.out, "Write the result to this file instead of stdout");
  cmd->add_option("--format", c.format, "Output format");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Probabilistic logic with aggregation: networks, inference and elimination", "pla"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Validate a network (and optionally a formula)");
  check->add_option("--net", c.net, "Network file")->required();
  check->add_option("--formula", c.formula, "Formula file or inline text");
  add_common(check, c);

  auto* eval = app.add_subcommand("eval", "Evaluate a formula on a structure or a sampled world");
  eval->add_option("--net", c.net, "Network file (fixes the signature)")->required();
  eval->add_option("--formula", c.formula, "Formula file or inline text")->required();
  eval->add_option("--structure", c.structure, "Structure file; otherwise a world is sampled");
  eval->add_option("--at", c.at, "Assignment such as x=1,y=2; default: all tuples");
  eval->add_option("--n", c.n, "Domain size of the sampled world");
  eval->add_option("--seed", c.seed, "Sampling seed");
  add_common(eval, c);

  auto* smp = app.add_subcommand("sample", "Sample a world");
  smp->add_option("--net", c.net, "Network file")->required();
  smp->add_option("--n", c.n, "Domain size")->required();
  smp->add_option("--seed", c.seed, "Sampling seed")->required();
  add_common(smp, c);

  auto* infer = app.add_subcommand("infer", "P_n(phi(a) in S), exactly or by Monte Carlo");
  infer->add_option("mode", c.mode, "exact or mc")->required();
  infer->add_option("--net", c.net, "Network file")->required();
  infer->add_option("--formula", c.formula, "Formula file or inline text")->required();
  infer->add_option("--n", c.n, "Domain size")->required();
  infer->add_option("--at", c.at, "Assignment such as x=1,y=2; default: 1, 2, ...");
  infer->add_option("--value-set", c.value_set, "Value set such as 1 or 0.4:0.6,1 (default 1)");
  infer->add_option("--samples", c.samples, "Monte Carlo samples (default 1000)");
  infer->add_option("--seed", c.seed, "Monte Carlo seed");
  infer->add_option("--workers", c.workers, "Worker threads (default 1)");
  add_common(infer, c);

  auto* elim = app.add_subcommand("eliminate", "Compile a formula to a basic probability formula");
  elim->add_option("--net", c.net, "Aggregation-free network file")->required();
  elim->add_option("--formula", c.formula, "Formula file or inline text")->required();
  add_common(elim, c);

  auto* conv = app.add_subcommand("converge", "Convergence experiment over a grid of domain sizes");
  conv->add_option("--net", c.net, "Network file")->required();
  conv->add_option("--formula", c.formula, "Formula file or inline text")->required();
  conv->add_option("--n-grid", c.n_grid, "Domain sizes such as 50,100,200");
  conv->add_option("--n", c.n, "Single domain size");
  conv->add_option("--epsilon", c.epsilon, "Tolerance (default 0.05)");
  conv->add_option("--value-set", c.value_set, "Value set (default 1)");
  conv->add_option("--samples", c.samples, "Samples per domain size (default 1000)");
  conv->add_option("--seed", c.seed, "Sampling seed")->required();
  conv->add_option("--workers", c.workers, "Worker threads (default 1)");
  add_common(conv, c);

  auto* adm = app.add_subcommand("admissible", "Empirical admissibility check");
  adm->add_option("--function", c.function, "Aggregation function name")->required();
  adm->add_option("--spectrum", c.spectra, "Spectrum c:alpha,... (repeatable; default random)");
  adm->add_option("--spectra", c.random_spectra, "Number of random spectra (default 5)");
  adm->add_option("--n-grid", c.n_grid, "Lengths (default 10,100,1000,10000)");
  adm->add_option("--samples", c.trials, "Trials per spectrum and length (default 20)");
  adm->add_option("--seed", c.seed, "Seed")->required();
  add_common(adm, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    std::string result;
    if (check->parsed()) result = cmd_check(c);
    else if (eval->parsed()) result = cmd_eval(c);
    else if (smp->parsed()) result = cmd_sample(c);
    else if (infer->parsed()) result = cmd_infer(c);
    else if (elim->parsed()) result = cmd_eliminate(c);
    else if (conv->parsed()) result = cmd_converge(c, err);
    else result = cmd_admissible(c);

    if (c.out.empty()) {
      out << result;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + c.out + "'");
      f << result;
    }
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pla::cli
