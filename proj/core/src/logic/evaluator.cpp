#include "pla/logic/evaluator.hpp"

#include <algorithm>
#include <array>

#include "pla/error.hpp"

namespace pla {

namespace {

enum class Kind { Const, Eq, Atom, Not, And, Or, Implies, WeightedMean, Agg };

struct AggClass {
  std::vector<std::size_t> outer;  // slots of parameters in this class
  std::vector<std::size_t> bound;  // slots of bound variables in this class
};

}  // namespace

struct CompiledFormula::Node {
  Kind kind = Kind::Const;
  double value = 0.0;
  std::size_t relation = 0;
  std::vector<std::size_t> slots;
  std::vector<std::unique_ptr<Node>> children;
  AggregationFunctionPtr fn;
  std::vector<AggClass> classes;
  std::vector<std::size_t> fixed_classes;
  std::vector<std::size_t> pure_classes;
};

namespace {

using Node = CompiledFormula::Node;
using Scope = std::map<Variable, std::size_t>;

struct Compiler {
  const Signature& signature;
  const AggregatorRegistry& registry;
  std::size_t next_slot;
  bool relation_free = true;

  std::size_t slot_of(const Scope& scope, const Variable& v) const {
    auto it = scope.find(v);
    if (it == scope.end()) {
      throw Error(ErrorCode::UnboundVariable, "variable '" + v + "' is not assigned");
    }
    return it->second;
  }

  std::unique_ptr<Node> binary(Kind kind, const FormulaPtr& a, const FormulaPtr& b,
                               const Scope& scope) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->children.push_back(compile(*a, scope));
    n->children.push_back(compile(*b, scope));
    return n;
  }

  std::unique_ptr<Node> compile(const Formula& f, const Scope& scope) {
    if (const auto* c = f.as<ast::Const>()) {
      auto n = std::make_unique<Node>();
      n->kind = Kind::Const;
      n->value = c->value;
      return n;
    }
    if (const auto* e = f.as<ast::Eq>()) {
      auto n = std::make_unique<Node>();
      n->kind = Kind::Eq;
      n->slots = {slot_of(scope, e->lhs), slot_of(scope, e->rhs)};
      return n;
    }
    if (const auto* a = f.as<ast::Atom>()) {
      auto n = std::make_unique<Node>();
      n->kind = Kind::Atom;
      n->relation = signature.index_of(a->relation);
      if (signature[n->relation].arity != a->args.size()) {
        throw Error(ErrorCode::ArityMismatch,
                    "relation '" + a->relation + "' has arity " +
                        std::to_string(signature[n->relation].arity) + ", used with " +
                        std::to_string(a->args.size()) + " argument(s)");
      }
      for (const auto& v : a->args) n->slots.push_back(slot_of(scope, v));
      relation_free = false;
      return n;
    }
    if (const auto* x = f.as<ast::Not>()) {
      auto n = std::make_unique<Node>();
      n->kind = Kind::Not;
      n->children.push_back(compile(*x->operand, scope));
      return n;
    }
    if (const auto* x = f.as<ast::And>()) return binary(Kind::And, x->lhs, x->rhs, scope);
    if (const auto* x = f.as<ast::Or>()) return binary(Kind::Or, x->lhs, x->rhs, scope);
    if (const auto* x = f.as<ast::Implies>()) return binary(Kind::Implies, x->lhs, x->rhs, scope);
    if (const auto* w = f.as<ast::WeightedMean>()) {
      auto n = std::make_unique<Node>();
      n->kind = Kind::WeightedMean;
      n->children.push_back(compile(*w->weight, scope));
      n->children.push_back(compile(*w->first, scope));
      n->children.push_back(compile(*w->second, scope));
      return n;
    }
    const auto& g = *f.as<ast::Agg>();
    auto n = std::make_unique<Node>();
    n->kind = Kind::Agg;
    n->fn = registry.get(g.function);
    if (n->fn->arity != g.bodies.size()) {
      throw Error(ErrorCode::ArityMismatch, "aggregation function '" + g.function + "' takes " +
                                                std::to_string(n->fn->arity) + " bodies, got " +
                                                std::to_string(g.bodies.size()));
    }
    Scope inner = scope;
    for (const auto& y : g.bound) inner[y] = next_slot++;
    const auto& eq = g.eq_type;
    n->classes.resize(eq.num_classes());
    for (std::size_t i = 0; i < eq.size(); ++i) {
      const auto& v = eq.variables()[i];
      auto& cls = n->classes[eq.class_of(i)];
      if (std::find(g.bound.begin(), g.bound.end(), v) != g.bound.end()) {
        cls.bound.push_back(inner.at(v));
      } else {
        cls.outer.push_back(slot_of(scope, v));
      }
    }
    for (std::size_t c = 0; c < n->classes.size(); ++c) {
      (n->classes[c].outer.empty() ? n->pure_classes : n->fixed_classes).push_back(c);
    }
    for (const auto& b : g.bodies) n->children.push_back(compile(*b, inner));
    return n;
  }
};

struct Evaluator {
  const Structure& s;
  std::vector<Element>& slots;

  double eval(const Node& n) {
    switch (n.kind) {
      case Kind::Const:
        return n.value;
      case Kind::Eq:
        return slots[n.slots[0]] == slots[n.slots[1]] ? 1.0 : 0.0;
      case Kind::Atom: {
        const std::size_t arity = n.slots.size();
        if (arity <= 8) {
          std::array<Element, 8> buf{};
          for (std::size_t i = 0; i < arity; ++i) buf[i] = slots[n.slots[i]];
          return s.holds(n.relation, std::span<const Element>(buf.data(), arity)) ? 1.0 : 0.0;
        }
        std::vector<Element> args(arity);
        for (std::size_t i = 0; i < arity; ++i) args[i] = slots[n.slots[i]];
        return s.holds(n.relation, args) ? 1.0 : 0.0;
      }
      case Kind::Not:
        return 1.0 - eval(*n.children[0]);
      case Kind::And:
        return std::min(eval(*n.children[0]), eval(*n.children[1]));
      case Kind::Or:
        return std::max(eval(*n.children[0]), eval(*n.children[1]));
      case Kind::Implies:
        return std::min(1.0, 1.0 - eval(*n.children[0]) + eval(*n.children[1]));
      case Kind::WeightedMean: {
        const double w = eval(*n.children[0]);
        return w * eval(*n.children[1]) + (1.0 - w) * eval(*n.children[2]);
      }
      case Kind::Agg:
        return eval_agg(n);
    }
    return 0.0;
  }

  double eval_agg(const Node& n) {
    std::vector<Sequence> seqs(n.children.size());
    std::vector<Element> used;
    bool empty = false;
    for (std::size_t c : n.fixed_classes) {
      const auto& cls = n.classes[c];
      const Element e = slots[cls.outer[0]];
      for (std::size_t slot : cls.outer) {
        if (slots[slot] != e) empty = true;
      }
      if (std::find(used.begin(), used.end(), e) != used.end()) empty = true;
      used.push_back(e);
      for (std::size_t slot : cls.bound) slots[slot] = e;
    }
    if (!empty) enumerate(n, 0, used, seqs);
    if (seqs[0].empty()) {
      if (n.fn->empty_value) return *n.fn->empty_value;
      throw Error(ErrorCode::EmptyAggregationRange,
                  "no tuple satisfies the equality type of '" + n.fn->name +
                      "' at domain size " + std::to_string(s.domain_size()));
    }
    return pla::apply(*n.fn, std::span<const Sequence>(seqs));
  }

  void enumerate(const Node& n, std::size_t depth, std::vector<Element>& used,
                 std::vector<Sequence>& seqs) {
    if (depth == n.pure_classes.size()) {
      for (std::size_t i = 0; i < n.children.size(); ++i) seqs[i].push_back(eval(*n.children[i]));
      return;
    }
    const auto& cls = n.classes[n.pure_classes[depth]];
    const auto size = static_cast<Element>(s.domain_size());
    for (Element e = 1; e <= size; ++e) {
      if (std::find(used.begin(), used.end(), e) != used.end()) continue;
      for (std::size_t slot : cls.bound) slots[slot] = e;
      used.push_back(e);
      enumerate(n, depth + 1, used, seqs);
      used.pop_back();
    }
  }
};

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, const Signature& signature,
                                 std::vector<Variable> parameters,
                                 const AggregatorRegistry& registry)
    : parameters_(std::move(parameters)) {
  Scope scope;
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    if (!scope.emplace(parameters_[i], i).second) {
      throw Error(ErrorCode::InvalidArgument, "parameter '" + parameters_[i] + "' listed twice");
    }
  }
  Compiler c{signature, registry, parameters_.size()};
  root_ = c.compile(f, scope);
  slot_count_ = c.next_slot;
  relation_free_ = c.relation_free;
}

CompiledFormula::~CompiledFormula() = default;
CompiledFormula::CompiledFormula(CompiledFormula&&) noexcept = default;
CompiledFormula& CompiledFormula::operator=(CompiledFormula&&) noexcept = default;

double CompiledFormula::evaluate(const Structure& s, std::span<const Element> values) const {
  if (values.size() != parameters_.size()) {
    throw Error(ErrorCode::InvalidArgument, "expected " + std::to_string(parameters_.size()) +
                                                " argument(s), got " +
                                                std::to_string(values.size()));
  }
  std::vector<Element> slots(slot_count_, 0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1 || values[i] > s.domain_size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "element " + std::to_string(values[i]) + " outside the domain [1," +
                      std::to_string(s.domain_size()) + "]");
    }
    slots[i] = values[i];
  }
  Evaluator ev{s, slots};
  return ev.eval(*root_);
}

double evaluate(const Structure& s, const Formula& f, const Assignment& a,
                const AggregatorRegistry& registry) {
  std::vector<Variable> params = free_variables(f);
  std::vector<Element> values;
  values.reserve(params.size());
  for (const auto& v : params) {
    auto it = a.find(v);
    if (it == a.end()) {
      throw Error(ErrorCode::UnboundVariable, "free variable '" + v + "' is not assigned");
    }
    values.push_back(it->second);
  }
  CompiledFormula cf(f, s.signature(), std::move(params), registry);
  return cf.evaluate(s, values);
}

}  // namespace pla
