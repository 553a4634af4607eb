#include "pla/eliminate/eliminate.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "pla/aggregators/limit.hpp"
#include "pla/error.hpp"
#include "pla/logic/evaluator.hpp"
#include "pla/logic/printer.hpp"
#include "pla/util/numeric.hpp"

namespace pla {

namespace {

constexpr double kCollapseTolerance = 1e-12;
constexpr double kAlphaSumTolerance = 1e-9;

bool next_tuple(std::vector<int>& digits, int base) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

bool contains(const std::vector<Variable>& vs, const Variable& v) {
  return std::find(vs.begin(), vs.end(), v) != vs.end();
}

struct Compiler {
  const PlaNetwork& net;
  const AggregatorRegistry& registry;
  EliminationReport& report;

  const SignaturePtr& sig() const { return net.signature_ptr(); }

  BasicProbabilityFormula fold(const Formula& f, const std::vector<Variable>& vars,
                               const AtomicType* constraint) {
    CompiledFormula cf(f, net.signature(), vars, registry);
    BasicProbabilityFormula out(sig(), vars);
    for (auto& t : enumerate_complete_types(sig(), vars, constraint)) {
      const double v = cf.evaluate(t.canonical_structure(), t.canonical_assignment());
      out.add(std::move(t), v);
    }
    return out;
  }

  template <class Op>
  BasicProbabilityFormula combine(std::vector<BasicProbabilityFormula> parts, Op op) {
    BasicProbabilityFormula out(sig(), parts.front().variables());
    std::vector<double> args(parts.size());
    for (std::size_t i = 0; i < parts.front().size(); ++i) {
      for (std::size_t k = 0; k < parts.size(); ++k) args[k] = parts[k].conjuncts()[i].value;
      out.add(parts.front().conjuncts()[i].type, std::clamp(op(args), 0.0, 1.0));
    }
    return out;
  }

  BasicProbabilityFormula compile(const Formula& f, const std::vector<Variable>& vars,
                                  const AtomicType* constraint) {
    if (is_aggregation_free(f)) return fold(f, vars, constraint);
    if (const auto* n = f.as<ast::Not>()) {
      std::vector<BasicProbabilityFormula> parts;
      parts.push_back(compile(*n->operand, vars, constraint));
      return combine(std::move(parts), [](const std::vector<double>& a) { return 1.0 - a[0]; });
    }
    auto binary = [&](const FormulaPtr& l, const FormulaPtr& r, auto op) {
      std::vector<BasicProbabilityFormula> parts;
      parts.push_back(compile(*l, vars, constraint));
      parts.push_back(compile(*r, vars, constraint));
      return combine(std::move(parts), op);
    };
    if (const auto* b = f.as<ast::And>()) {
      return binary(b->lhs, b->rhs, [](const std::vector<double>& a) { return std::min(a[0], a[1]); });
    }
    if (const auto* b = f.as<ast::Or>()) {
      return binary(b->lhs, b->rhs, [](const std::vector<double>& a) { return std::max(a[0], a[1]); });
    }
    if (const auto* b = f.as<ast::Implies>()) {
      return binary(b->lhs, b->rhs,
                    [](const std::vector<double>& a) { return std::min(1.0, 1.0 - a[0] + a[1]); });
    }
    if (const auto* w = f.as<ast::WeightedMean>()) {
      std::vector<BasicProbabilityFormula> parts;
      parts.push_back(compile(*w->weight, vars, constraint));
      parts.push_back(compile(*w->first, vars, constraint));
      parts.push_back(compile(*w->second, vars, constraint));
      return combine(std::move(parts), [](const std::vector<double>& a) {
        return a[0] * a[1] + (1.0 - a[0]) * a[2];
      });
    }
    const auto& g = *f.as<ast::Agg>();
    const std::vector<Variable> xbar = free_variables(f);
    std::optional<AtomicType> sub;
    if (constraint && !constraint->is_trivial()) sub = constraint->restrict(xbar);
    const BasicProbabilityFormula node = compile_agg(f, g, xbar, sub ? &*sub : nullptr);
    BasicProbabilityFormula out(sig(), vars);
    for (auto& t : enumerate_complete_types(sig(), vars, constraint)) {
      const double v = node.value_on(t.restrict(xbar));
      out.add(std::move(t), v);
    }
    return out;
  }

  BasicProbabilityFormula compile_agg(const Formula& f, const ast::Agg& g,
                                      const std::vector<Variable>& xbar,
                                      const AtomicType* constraint) {
    const auto fn = registry.get(g.function);
    if (fn->arity != g.bodies.size()) {
      throw Error(ErrorCode::ArityMismatch, "'" + g.function + "' takes " +
                                                std::to_string(fn->arity) + " bodies, got " +
                                                std::to_string(g.bodies.size()));
    }
    std::vector<Variable> ybar;
    for (const auto& v : g.eq_type.variables()) {
      if (!contains(xbar, v)) ybar.push_back(v);
    }
    std::vector<Variable> xy = xbar;
    xy.insert(xy.end(), ybar.begin(), ybar.end());
    const EqualityType p_eq = g.eq_type.restrict(xy);
    const AtomicType p_constraint(sig(), p_eq);

    std::vector<BasicProbabilityFormula> bodies;
    for (const auto& b : g.bodies) bodies.push_back(compile(*b, xy, &p_constraint));

    AggregationReport rep;
    rep.node = print(f);
    rep.function = fn->name;
    rep.parameters = xbar;
    rep.bound = ybar;
    rep.dim = dim_y(p_eq, xbar, ybar);
    if (rep.dim > 0 && fn->limit_method == LimitMethod::None) {
      throw Error(ErrorCode::NoLimitMethod,
                  "'" + fn->name + "' has no limit method (in " + rep.node + ")");
    }

    const AlphaTable table = alphas(net, xbar, ybar, p_eq, bodies);
    std::map<std::string, const AlphaRow*> by_q;
    for (const auto& row : table.rows) by_q.emplace(row.q.key(), &row);

    BasicProbabilityFormula out(sig(), xbar);
    for (auto& q : enumerate_complete_types(sig(), xbar, constraint)) {
      CompiledRow row{q, 1.0, 0.0, 0.0, {}, {}, {}};
      auto it = by_q.find(q.key());
      if (it == by_q.end()) {
        row.method = "empty_range";
        row.d = fn->empty_value.value_or(1.0);
        report.warnings.push_back("empty_range: " + rep.node + " at " + q.to_string() +
                                  ": no tuple satisfies the equality type, d = " +
                                  format_double(row.d));
      } else {
        const AlphaRow& a = *it->second;
        row.gamma = a.gamma;
        row.alpha_sum = a.alpha_sum;
        row.entries = a.entries;
        row.spectra = a.spectra;
        if (rep.dim == 0) {
          row.method = "substitution";
          std::vector<Sequence> seqs;
          for (double c : a.entries.front().c) seqs.push_back(Sequence{c});
          row.d = pla::apply(*fn, std::span<const Sequence>(seqs));
        } else if (a.gamma <= 0.0) {
          row.method = "zero_gamma";
          row.d = 1.0;
          report.warnings.push_back("zero_gamma: " + rep.node + " at " + q.to_string() +
                                    ": type has limit probability 0, d = 1");
        } else {
          std::vector<SupportSpectrum> spectra;
          for (const auto& s : a.spectra) {
            note_merges(s, rep.node, q);
            spectra.push_back(normalize_spectrum(s));
          }
          const LimitResult lr = limit_detail(*fn, spectra);
          row.d = lr.value;
          row.method = std::string(to_string(lr.method));
          if (lr.method == LimitMethod::Numeric) {
            report.warnings.push_back("numeric_limit: " + rep.node + " at " + q.to_string() +
                                      ": limit computed numerically at length " +
                                      std::to_string(lr.length));
          }
          const double err = std::abs(a.alpha_sum - 1.0);
          report.max_alpha_error = std::max(report.max_alpha_error, err);
          if (err > kAlphaSumTolerance) report.alpha_sums_ok = false;
        }
      }
      out.add(std::move(q), row.d);
      rep.rows.push_back(std::move(row));
    }
    report.aggregations.push_back(std::move(rep));
    return out;
  }

  void note_merges(const SupportSpectrum& s, const std::string& node, const AtomicType& q) {
    std::vector<double> cs;
    for (const auto& pt : s) {
      if (pt.alpha > 0.0) cs.push_back(pt.c);
    }
    std::sort(cs.begin(), cs.end());
    for (std::size_t i = 1; i < cs.size(); ++i) {
      if (cs[i] != cs[i - 1] && cs[i] - cs[i - 1] <= kSupportMergeTolerance) {
        report.warnings.push_back("support_merge: " + node + " at " + q.to_string() +
                                  ": support points within tolerance merged");
        return;
      }
    }
  }
};

}  // namespace

std::size_t dim_y(const EqualityType& p_eq, const std::vector<Variable>& xbar,
                  const std::vector<Variable>& ybar) {
  std::vector<int> has_x(p_eq.num_classes(), 0);
  std::vector<int> has_y(p_eq.num_classes(), 0);
  for (std::size_t i = 0; i < p_eq.size(); ++i) {
    const auto& v = p_eq.variables()[i];
    if (contains(xbar, v)) has_x[p_eq.class_of(i)] = 1;
    else if (contains(ybar, v)) has_y[p_eq.class_of(i)] = 1;
  }
  std::size_t d = 0;
  for (std::size_t c = 0; c < p_eq.num_classes(); ++c) {
    if (has_y[c] && !has_x[c]) ++d;
  }
  return d;
}

double limit_prob_type(const PlaNetwork& net, const AtomicType& p) {
  if (!net.aggregation_free()) {
    throw Error(ErrorCode::NetworkHasAggregation,
                "limit probabilities need an aggregation-free network");
  }
  if (p.is_trivial() || !p.is_complete()) {
    throw Error(ErrorCode::IncompleteType, "type " + p.to_string() + " is not complete");
  }
  const Structure s = p.canonical_structure();
  const int nc = static_cast<int>(p.num_classes());
  if (nc == 0) return 1.0;
  double prob = 1.0;
  for (std::size_t r = 0; r < net.signature().size(); ++r) {
    const std::size_t k = net.signature()[r].arity;
    std::vector<int> cls(k, 0);
    std::vector<Element> args(k);
    do {
      for (std::size_t i = 0; i < k; ++i) args[i] = static_cast<Element>(cls[i] + 1);
      const double v = net.theta(r).evaluate(s, args);
      prob *= p.mark(r, cls) == Mark::Positive ? v : 1.0 - v;
      if (prob == 0.0) return 0.0;
    } while (next_tuple(cls, nc));
  }
  return prob;
}

AlphaTable alphas(const PlaNetwork& net, const std::vector<Variable>& xbar,
                  const std::vector<Variable>& ybar, const EqualityType& p_eq,
                  const std::vector<BasicProbabilityFormula>& bodies) {
  std::vector<Variable> xy = xbar;
  xy.insert(xy.end(), ybar.begin(), ybar.end());
  AlphaTable table;
  table.xbar = xbar;
  table.ybar = ybar;
  table.p_eq = p_eq.restrict(xy);
  table.dim = dim_y(table.p_eq, xbar, ybar);
  for (const auto& b : bodies) {
    if (b.variables() != xy) {
      throw Error(ErrorCode::InvalidArgument, "alpha table body is not over the parameter and bound variables");
    }
  }

  const AtomicType constraint(net.signature_ptr(), table.p_eq);
  std::map<std::string, std::size_t> row_of;
  for (auto& p : enumerate_complete_types(net.signature_ptr(), xy, &constraint)) {
    AtomicType q = p.restrict(xbar);
    auto [it, inserted] = row_of.try_emplace(q.key(), table.rows.size());
    if (inserted) {
      AlphaRow row{q, limit_prob_type(net, q), {}, 0.0, {}};
      table.rows.push_back(std::move(row));
    }
    AlphaEntry e{p, {}, limit_prob_type(net, p), 0.0};
    for (const auto& b : bodies) e.c.push_back(b.value_on(p));
    table.rows[it->second].entries.push_back(std::move(e));
  }

  for (auto& row : table.rows) {
    std::vector<double> alphas;
    for (auto& e : row.entries) {
      e.alpha = row.gamma > 0.0 ? e.beta / row.gamma : 0.0;
      alphas.push_back(e.alpha);
    }
    row.alpha_sum = compensated_sum(alphas);
    row.spectra.assign(bodies.size(), SupportSpectrum{});
    for (const auto& e : row.entries) {
      for (std::size_t k = 0; k < bodies.size(); ++k) {
        row.spectra[k].push_back(SpectrumPoint{e.c[k], e.alpha});
      }
    }
  }
  return table;
}

EliminationResult eliminate(const PlaNetwork& net, const Formula& phi,
                            std::optional<std::vector<Variable>> variables,
                            const AggregatorRegistry& registry) {
  if (!net.aggregation_free()) {
    throw Error(ErrorCode::NetworkHasAggregation,
                "elimination needs an aggregation-free network");
  }
  std::vector<Variable> vars = variables ? *variables : free_variables(phi);
  for (const auto& v : free_variables(phi)) {
    if (!contains(vars, v)) {
      throw Error(ErrorCode::UnboundVariable, "free variable '" + v + "' not in the output variables");
    }
  }

  EliminationReport report;
  report.input = print(phi);
  report.variables = vars;
  Compiler c{net, registry, report};
  BasicProbabilityFormula out = c.compile(phi, vars, nullptr);

  double lo = 1.0, hi = 0.0;
  for (const auto& cj : out.conjuncts()) {
    lo = std::min(lo, cj.value);
    hi = std::max(hi, cj.value);
  }
  if (out.size() > 0 && hi - lo <= kCollapseTolerance) {
    out = BasicProbabilityFormula::constant(net.signature_ptr(), vars,
                                            out.conjuncts().front().value);
  }
  report.output = out.to_string();
  return EliminationResult{std::move(out), std::move(report)};
}

std::string report_to_json(const EliminationReport& report, std::size_t max_extensions) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["input"] = report.input;
  j["variables"] = report.variables;
  j["output"] = report.output;
  ordered_json aggs = ordered_json::array();
  for (const auto& a : report.aggregations) {
    ordered_json ja;
    ja["node"] = a.node;
    ja["function"] = a.function;
    ja["parameters"] = a.parameters;
    ja["bound"] = a.bound;
    ja["dimension"] = a.dim;
    ordered_json rows = ordered_json::array();
    for (const auto& r : a.rows) {
      ordered_json jr;
      jr["q"] = r.q.to_string();
      jr["method"] = r.method;
      jr["d"] = r.d;
      jr["gamma"] = r.gamma;
      jr["alpha_sum"] = r.alpha_sum;
      ordered_json spectra = ordered_json::array();
      for (const auto& s : r.spectra) {
        ordered_json js = ordered_json::array();
        for (const auto& pt : s) js.push_back({{"c", pt.c}, {"alpha", pt.alpha}});
        spectra.push_back(std::move(js));
      }
      jr["spectra"] = std::move(spectra);
      if (r.entries.size() <= max_extensions) {
        ordered_json ext = ordered_json::array();
        for (const auto& e : r.entries) {
          ext.push_back({{"type", e.type.to_string()},
                         {"beta", e.beta},
                         {"alpha", e.alpha},
                         {"c", e.c}});
        }
        jr["extensions"] = std::move(ext);
      } else {
        jr["extension_count"] = r.entries.size();
      }
      rows.push_back(std::move(jr));
    }
    ja["rows"] = std::move(rows);
    aggs.push_back(std::move(ja));
  }
  j["aggregations"] = std::move(aggs);
  j["warnings"] = report.warnings;
  j["checks"] = {{"alpha_sums", report.alpha_sums_ok ? "pass" : "fail"},
                 {"max_alpha_error", report.max_alpha_error}};
  return j.dump(2) + "\n";
}

}  // namespace pla
