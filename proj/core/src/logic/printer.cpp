#include "pla/logic/printer.hpp"

#include "pla/util/numeric.hpp"

namespace pla {

namespace {

enum Prec { kImplies = 1, kOr = 2, kAnd = 3, kUnary = 4 };

std::string eqspec(const EqualityType& eq) {
  const auto& vars = eq.variables();
  if (vars.size() == 1) return vars[0] + "=" + vars[0];
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j) {
      if (!out.empty()) out += ", ";
      out += vars[i] + (eq.class_of(i) == eq.class_of(j) ? "=" : "!=") + vars[j];
    }
  }
  return out;
}

std::string print_at(const Formula& f, int ctx);

std::string wrap(std::string text, int prec, int ctx) {
  return prec < ctx ? "(" + text + ")" : text;
}

std::string print_at(const Formula& f, int ctx) {
  if (const auto* c = f.as<ast::Const>()) return format_double(c->value);
  if (const auto* e = f.as<ast::Eq>()) return e->lhs + "=" + e->rhs;
  if (const auto* a = f.as<ast::Atom>()) {
    std::string out = a->relation + "(";
    for (std::size_t i = 0; i < a->args.size(); ++i) {
      if (i) out += ",";
      out += a->args[i];
    }
    return out + ")";
  }
  if (const auto* n = f.as<ast::Not>()) return "!" + print_at(*n->operand, kUnary);
  if (const auto* b = f.as<ast::And>()) {
    return wrap(print_at(*b->lhs, kAnd) + " & " + print_at(*b->rhs, kUnary), kAnd, ctx);
  }
  if (const auto* b = f.as<ast::Or>()) {
    return wrap(print_at(*b->lhs, kOr) + " | " + print_at(*b->rhs, kAnd), kOr, ctx);
  }
  if (const auto* b = f.as<ast::Implies>()) {
    return wrap(print_at(*b->lhs, kOr) + " -> " + print_at(*b->rhs, kImplies), kImplies, ctx);
  }
  if (const auto* w = f.as<ast::WeightedMean>()) {
    return "wm(" + print_at(*w->weight, 0) + "; " + print_at(*w->first, 0) + "; " +
           print_at(*w->second, 0) + ")";
  }
  const auto& g = *f.as<ast::Agg>();
  std::string out = g.function + "[";
  for (std::size_t i = 0; i < g.bodies.size(); ++i) {
    if (i) out += ", ";
    out += print_at(*g.bodies[i], 0);
  }
  out += " : ";
  for (std::size_t i = 0; i < g.bound.size(); ++i) {
    if (i) out += ",";
    out += g.bound[i];
  }
  return out + " : " + eqspec(g.eq_type) + "]";
}

}  // namespace

std::string print(const Formula& f) { return print_at(f, 0); }

}  // namespace pla
