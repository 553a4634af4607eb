#include "pla/logic/formula.hpp"

#include <algorithm>
#include <cmath>

#include "pla/error.hpp"

namespace pla {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void push_unique(std::vector<Variable>& out, const Variable& v) {
  if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

void collect_free(const Formula& f, std::vector<Variable>& out) {
  std::visit(
      overloaded{
          [](const ast::Const&) {},
          [&](const ast::Eq& e) {
            push_unique(out, e.lhs);
            push_unique(out, e.rhs);
          },
          [&](const ast::Atom& a) {
            for (const auto& v : a.args) push_unique(out, v);
          },
          [&](const ast::Not& n) { collect_free(*n.operand, out); },
          [&](const ast::And& b) {
            collect_free(*b.lhs, out);
            collect_free(*b.rhs, out);
          },
          [&](const ast::Or& b) {
            collect_free(*b.lhs, out);
            collect_free(*b.rhs, out);
          },
          [&](const ast::Implies& b) {
            collect_free(*b.lhs, out);
            collect_free(*b.rhs, out);
          },
          [&](const ast::WeightedMean& w) {
            collect_free(*w.weight, out);
            collect_free(*w.first, out);
            collect_free(*w.second, out);
          },
          [&](const ast::Agg& g) {
            std::vector<Variable> inner;
            for (const auto& b : g.bodies) collect_free(*b, inner);
            for (const auto& v : g.eq_type.variables()) push_unique(inner, v);
            for (const auto& v : inner) {
              if (std::find(g.bound.begin(), g.bound.end(), v) == g.bound.end()) {
                push_unique(out, v);
              }
            }
          },
      },
      f.node());
}

bool same_ptr_formula(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace

FormulaPtr constant(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "constant outside [0,1]");
  }
  return std::make_shared<const Formula>(ast::Const{value});
}

FormulaPtr equals(Variable lhs, Variable rhs) {
  return std::make_shared<const Formula>(ast::Eq{std::move(lhs), std::move(rhs)});
}

FormulaPtr atom(std::string relation, std::vector<Variable> args) {
  if (args.empty()) {
    throw Error(ErrorCode::InvalidArgument, "atom '" + relation + "' without arguments");
  }
  return std::make_shared<const Formula>(ast::Atom{std::move(relation), std::move(args)});
}

FormulaPtr negation(FormulaPtr operand) {
  return std::make_shared<const Formula>(ast::Not{std::move(operand)});
}

FormulaPtr conjunction(FormulaPtr lhs, FormulaPtr rhs) {
  return std::make_shared<const Formula>(ast::And{std::move(lhs), std::move(rhs)});
}

FormulaPtr disjunction(FormulaPtr lhs, FormulaPtr rhs) {
  return std::make_shared<const Formula>(ast::Or{std::move(lhs), std::move(rhs)});
}

FormulaPtr implication(FormulaPtr lhs, FormulaPtr rhs) {
  return std::make_shared<const Formula>(ast::Implies{std::move(lhs), std::move(rhs)});
}

FormulaPtr weighted_mean(FormulaPtr weight, FormulaPtr first, FormulaPtr second) {
  return std::make_shared<const Formula>(
      ast::WeightedMean{std::move(weight), std::move(first), std::move(second)});
}

FormulaPtr aggregate(std::string function, std::vector<FormulaPtr> bodies,
                     std::vector<Variable> bound, EqualityType eq_type) {
  if (bodies.empty()) {
    throw Error(ErrorCode::InvalidArgument, "aggregation '" + function + "' without bodies");
  }
  if (bound.empty()) {
    throw Error(ErrorCode::InvalidArgument, "aggregation '" + function + "' binds no variable");
  }
  for (std::size_t i = 0; i < bound.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (bound[i] == bound[j]) {
        throw Error(ErrorCode::InvalidArgument,
                    "aggregation binds '" + bound[i] + "' twice");
      }
    }
    if (!eq_type.contains(bound[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "equality type does not decide bound variable '" + bound[i] + "'");
    }
  }
  std::vector<Variable> body_free;
  for (const auto& b : bodies) collect_free(*b, body_free);
  for (const auto& v : body_free) {
    if (!eq_type.contains(v)) {
      throw Error(ErrorCode::InvalidArgument,
                  "equality type does not decide variable '" + v + "'");
    }
  }
  return std::make_shared<const Formula>(ast::Agg{
      std::move(function), std::move(bodies), std::move(bound), std::move(eq_type)});
}

std::vector<Variable> free_variables(const Formula& f) {
  std::vector<Variable> out;
  collect_free(f, out);
  return out;
}

bool is_aggregation_free(const Formula& f) {
  return std::visit(
      overloaded{
          [](const ast::Const&) { return true; },
          [](const ast::Eq&) { return true; },
          [](const ast::Atom&) { return true; },
          [](const ast::Not& n) { return is_aggregation_free(*n.operand); },
          [](const ast::And& b) { return is_aggregation_free(*b.lhs) && is_aggregation_free(*b.rhs); },
          [](const ast::Or& b) { return is_aggregation_free(*b.lhs) && is_aggregation_free(*b.rhs); },
          [](const ast::Implies& b) {
            return is_aggregation_free(*b.lhs) && is_aggregation_free(*b.rhs);
          },
          [](const ast::WeightedMean& w) {
            return is_aggregation_free(*w.weight) && is_aggregation_free(*w.first) &&
                   is_aggregation_free(*w.second);
          },
          [](const ast::Agg&) { return false; },
      },
      f.node());
}

std::size_t function_rank(const Formula& f) {
  return std::visit(
      overloaded{
          [](const ast::Const&) -> std::size_t { return 0; },
          [](const ast::Eq&) -> std::size_t { return 0; },
          [](const ast::Atom&) -> std::size_t { return 0; },
          [](const ast::Not& n) { return function_rank(*n.operand); },
          [](const ast::And& b) { return std::max(function_rank(*b.lhs), function_rank(*b.rhs)); },
          [](const ast::Or& b) { return std::max(function_rank(*b.lhs), function_rank(*b.rhs)); },
          [](const ast::Implies& b) {
            return std::max(function_rank(*b.lhs), function_rank(*b.rhs));
          },
          [](const ast::WeightedMean& w) {
            return std::max({function_rank(*w.weight), function_rank(*w.first),
                             function_rank(*w.second)});
          },
          [](const ast::Agg& g) {
            std::size_t r = 0;
            for (const auto& b : g.bodies) r = std::max(r, function_rank(*b));
            return r + g.bound.size();
          },
      },
      f.node());
}

namespace {

void collect_relations(const Formula& f, std::vector<std::string>& out) {
  std::visit(overloaded{
                 [](const ast::Const&) {},
                 [](const ast::Eq&) {},
                 [&](const ast::Atom& a) {
                   if (std::find(out.begin(), out.end(), a.relation) == out.end()) {
                     out.push_back(a.relation);
                   }
                 },
                 [&](const ast::Not& n) { collect_relations(*n.operand, out); },
                 [&](const ast::And& b) {
                   collect_relations(*b.lhs, out);
                   collect_relations(*b.rhs, out);
                 },
                 [&](const ast::Or& b) {
                   collect_relations(*b.lhs, out);
                   collect_relations(*b.rhs, out);
                 },
                 [&](const ast::Implies& b) {
                   collect_relations(*b.lhs, out);
                   collect_relations(*b.rhs, out);
                 },
                 [&](const ast::WeightedMean& w) {
                   collect_relations(*w.weight, out);
                   collect_relations(*w.first, out);
                   collect_relations(*w.second, out);
                 },
                 [&](const ast::Agg& g) {
                   for (const auto& b : g.bodies) collect_relations(*b, out);
                 },
             },
             f.node());
}

bool same_ptr_formula(const FormulaPtr& a, const FormulaPtr& b) {
  if (!a || !b) return a == b;
  return structurally_equal(*a, *b);
}

}  // namespace

std::vector<std::string> relations_used(const Formula& f) {
  std::vector<std::string> out;
  collect_relations(f, out);
  return out;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(
      overloaded{
          [&](const ast::Const& x) { return x.value == b.as<ast::Const>()->value; },
          [&](const ast::Eq& x) {
            const auto* y = b.as<ast::Eq>();
            return x.lhs == y->lhs && x.rhs == y->rhs;
          },
          [&](const ast::Atom& x) {
            const auto* y = b.as<ast::Atom>();
            return x.relation == y->relation && x.args == y->args;
          },
          [&](const ast::Not& x) { return same_ptr_formula(x.operand, b.as<ast::Not>()->operand); },
          [&](const ast::And& x) {
            const auto* y = b.as<ast::And>();
            return same_ptr_formula(x.lhs, y->lhs) && same_ptr_formula(x.rhs, y->rhs);
          },
          [&](const ast::Or& x) {
            const auto* y = b.as<ast::Or>();
            return same_ptr_formula(x.lhs, y->lhs) && same_ptr_formula(x.rhs, y->rhs);
          },
          [&](const ast::Implies& x) {
            const auto* y = b.as<ast::Implies>();
            return same_ptr_formula(x.lhs, y->lhs) && same_ptr_formula(x.rhs, y->rhs);
          },
          [&](const ast::WeightedMean& x) {
            const auto* y = b.as<ast::WeightedMean>();
            return same_ptr_formula(x.weight, y->weight) &&
                   same_ptr_formula(x.first, y->first) &&
                   same_ptr_formula(x.second, y->second);
          },
          [&](const ast::Agg& x) {
            const auto* y = b.as<ast::Agg>();
            if (x.function != y->function || x.bound != y->bound ||
                !(x.eq_type == y->eq_type) || x.bodies.size() != y->bodies.size()) {
              return false;
            }
            for (std::size_t i = 0; i < x.bodies.size(); ++i) {
              if (!same_ptr_formula(x.bodies[i], y->bodies[i])) return false;
            }
            return true;
          },
      },
      a.node());
}

}  // namespace pla
