#include "pla/logic/atomic_type.hpp"

#include <algorithm>

#include "pla/error.hpp"

namespace pla {

namespace {

// Advances `digits` as a base-`base` counter; false on wrap-around.
bool next_tuple(std::vector<int>& digits, int base) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < base) return true;
    digits[i] = 0;
  }
  return false;
}

std::vector<Variable> class_representatives(const std::vector<Variable>& vars,
                                            const EqualityType& eq) {
  std::vector<Variable> reps(eq.num_classes());
  for (std::size_t i = vars.size(); i-- > 0;) reps[eq.class_of(i)] = vars[i];
  return reps;
}

}  // namespace

AtomicType::AtomicType(SignaturePtr signature, std::vector<Variable> variables)
    : signature_(std::move(signature)), variables_(std::move(variables)) {
  if (!signature_) signature_ = make_signature({});
}

AtomicType::AtomicType(SignaturePtr signature, EqualityType eq)
    : signature_(std::move(signature)), variables_(eq.variables()), eq_(std::move(eq)) {
  if (!signature_) signature_ = make_signature({});
  marks_.reserve(signature_->size());
  for (const auto& sym : signature_->symbols()) {
    marks_.emplace_back(int_pow(eq_->num_classes(), sym.arity), Mark::Undecided);
  }
}

bool AtomicType::is_complete() const {
  if (!eq_) return variables_.empty() && signature_->empty();
  for (const auto& rel : marks_) {
    for (Mark m : rel) {
      if (m == Mark::Undecided) return false;
    }
  }
  return true;
}

std::size_t AtomicType::literal_index(std::size_t relation,
                                      std::span<const int> classes) const {
  const auto arity = (*signature_)[relation].arity;
  if (classes.size() != arity) {
    throw Error(ErrorCode::ArityMismatch, "literal arity mismatch");
  }
  std::size_t idx = 0;
  const auto nc = eq_->num_classes();
  for (int c : classes) idx = idx * nc + static_cast<std::size_t>(c);
  return idx;
}

Mark AtomicType::mark(std::size_t relation, std::span<const int> classes) const {
  if (!eq_) return Mark::Undecided;
  return marks_[relation][literal_index(relation, classes)];
}

void AtomicType::set_mark(std::size_t relation, std::span<const int> classes, Mark m) {
  if (!eq_) throw Error(ErrorCode::InvalidArgument, "trivial type has no literals");
  marks_[relation][literal_index(relation, classes)] = m;
}

bool AtomicType::realized_by(const Structure& s, std::span<const Element> values) const {
  if (values.size() != variables_.size()) {
    throw Error(ErrorCode::InvalidArgument, "assignment does not cover the type's variables");
  }
  if (!eq_) return true;
  if (!eq_->holds(values)) return false;
  const std::size_t nc = eq_->num_classes();
  std::vector<Element> rep(nc);
  for (std::size_t i = 0; i < values.size(); ++i) rep[eq_->class_of(i)] = values[i];
  std::vector<Element> args;
  for (std::size_t r = 0; r < marks_.size(); ++r) {
    const auto arity = (*signature_)[r].arity;
    std::vector<int> cls(arity, 0);
    std::size_t idx = 0;
    if (nc == 0) continue;
    do {
      const Mark m = marks_[r][idx++];
      if (m != Mark::Undecided) {
        args.resize(arity);
        for (std::size_t k = 0; k < arity; ++k) args[k] = rep[cls[k]];
        if (s.holds(r, args) != (m == Mark::Positive)) return false;
      }
    } while (next_tuple(cls, static_cast<int>(nc)));
  }
  return true;
}

AtomicType AtomicType::restrict(std::span<const Variable> sub) const {
  std::vector<Variable> sub_vars(sub.begin(), sub.end());
  if (!eq_) return AtomicType(signature_, std::move(sub_vars));
  EqualityType sub_eq = eq_->restrict(sub);
  std::vector<int> to_outer(sub_eq.num_classes());
  for (std::size_t i = 0; i < sub_vars.size(); ++i) {
    to_outer[sub_eq.class_of(i)] = eq_->class_of(eq_->position(sub_vars[i]));
  }
  AtomicType out(signature_, sub_eq);
  const auto snc = static_cast<int>(sub_eq.num_classes());
  if (snc == 0) return out;
  for (std::size_t r = 0; r < marks_.size(); ++r) {
    const auto arity = (*signature_)[r].arity;
    std::vector<int> cls(arity, 0), outer(arity);
    std::size_t idx = 0;
    do {
      for (std::size_t k = 0; k < arity; ++k) outer[k] = to_outer[cls[k]];
      out.marks_[r][idx++] = marks_[r][literal_index(r, outer)];
    } while (next_tuple(cls, snc));
  }
  return out;
}

bool AtomicType::extends(const AtomicType& smaller) const {
  for (const auto& v : smaller.variables_) {
    if (std::find(variables_.begin(), variables_.end(), v) == variables_.end()) return false;
  }
  if (!smaller.eq_) return true;
  if (!eq_) return false;
  AtomicType r = restrict(smaller.variables_);
  if (!(*r.eq_ == *smaller.eq_)) return false;
  for (std::size_t rel = 0; rel < marks_.size(); ++rel) {
    for (std::size_t i = 0; i < smaller.marks_[rel].size(); ++i) {
      const Mark m = smaller.marks_[rel][i];
      if (m != Mark::Undecided && r.marks_[rel][i] != m) return false;
    }
  }
  return true;
}

Structure AtomicType::canonical_structure() const {
  if (!eq_) throw Error(ErrorCode::InvalidArgument, "trivial type has no canonical structure");
  const std::size_t nc = eq_->num_classes();
  Structure s(signature_, std::max<std::size_t>(nc, 1));
  if (nc == 0) return s;
  for (std::size_t r = 0; r < marks_.size(); ++r) {
    // Class tuple order matches the structure's lexicographic tuple order.
    for (std::size_t i = 0; i < marks_[r].size(); ++i) {
      if (marks_[r][i] == Mark::Positive) s.set_at(r, i, true);
    }
  }
  return s;
}

std::vector<Element> AtomicType::canonical_assignment() const {
  if (!eq_) throw Error(ErrorCode::InvalidArgument, "trivial type has no canonical structure");
  std::vector<Element> out(variables_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<Element>(eq_->class_of(i) + 1);
  }
  return out;
}

std::string AtomicType::key() const {
  if (!eq_) return std::string("T");
  std::string k;
  k.reserve(variables_.size() + 16);
  k.push_back('E');
  for (int c : eq_->class_ids()) k.push_back(static_cast<char>(c));
  for (const auto& rel : marks_) {
    k.push_back('|');
    for (Mark m : rel) k.push_back(static_cast<char>(static_cast<int>(m) + 1));
  }
  return k;
}

std::string AtomicType::to_string() const {
  if (!eq_) return "{}";
  std::string out = "{";
  auto add = [&](const std::string& lit) {
    if (out.size() > 1) out += ", ";
    out += lit;
  };
  const auto eqs = eq_->to_string();
  if (!eqs.empty()) add(eqs);
  const auto reps = class_representatives(variables_, *eq_);
  const auto nc = static_cast<int>(eq_->num_classes());
  if (nc > 0) {
    for (std::size_t r = 0; r < marks_.size(); ++r) {
      const auto& sym = (*signature_)[r];
      std::vector<int> cls(sym.arity, 0);
      std::size_t idx = 0;
      do {
        const Mark m = marks_[r][idx++];
        if (m == Mark::Undecided) continue;
        std::string lit = (m == Mark::Negative ? "!" : "") + sym.name + "(";
        for (std::size_t k = 0; k < cls.size(); ++k) {
          if (k) lit += ",";
          lit += reps[cls[k]];
        }
        add(lit + ")");
      } while (next_tuple(cls, nc));
    }
  }
  return out + "}";
}

FormulaPtr AtomicType::to_formula() const {
  std::vector<FormulaPtr> lits;
  if (eq_) {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      for (std::size_t j = i + 1; j < variables_.size(); ++j) {
        auto e = equals(variables_[i], variables_[j]);
        lits.push_back(eq_->class_of(i) == eq_->class_of(j) ? e : negation(e));
      }
    }
    const auto reps = class_representatives(variables_, *eq_);
    const auto nc = static_cast<int>(eq_->num_classes());
    if (nc > 0) {
      for (std::size_t r = 0; r < marks_.size(); ++r) {
        const auto& sym = (*signature_)[r];
        std::vector<int> cls(sym.arity, 0);
        std::size_t idx = 0;
        do {
          const Mark m = marks_[r][idx++];
          if (m == Mark::Undecided) continue;
          std::vector<Variable> args;
          for (int c : cls) args.push_back(reps[c]);
          auto a = atom(sym.name, std::move(args));
          lits.push_back(m == Mark::Positive ? a : negation(a));
        } while (next_tuple(cls, nc));
      }
    }
  }
  if (lits.empty()) return constant(1.0);
  FormulaPtr acc = lits[0];
  for (std::size_t i = 1; i < lits.size(); ++i) acc = conjunction(acc, lits[i]);
  return acc;
}

bool AtomicType::operator==(const AtomicType& other) const {
  return *signature_ == *other.signature_ && variables_ == other.variables_ &&
         eq_ == other.eq_ && marks_ == other.marks_;
}

AtomicType type_of(const Structure& s, std::vector<Variable> variables,
                   std::span<const Element> values) {
  if (variables.size() != values.size()) {
    throw Error(ErrorCode::InvalidArgument, "type_of: variable/value count mismatch");
  }
  EqualityType eq = EqualityType::of_tuple(std::move(variables), values);
  AtomicType t(s.signature_ptr(), eq);
  const std::size_t nc = eq.num_classes();
  if (nc == 0) return t;
  std::vector<Element> rep(nc);
  for (std::size_t i = 0; i < values.size(); ++i) rep[eq.class_of(i)] = values[i];
  auto& marks = t.mutable_marks();
  std::vector<Element> args;
  for (std::size_t r = 0; r < marks.size(); ++r) {
    const auto arity = s.signature()[r].arity;
    std::vector<int> cls(arity, 0);
    args.resize(arity);
    std::size_t idx = 0;
    do {
      for (std::size_t k = 0; k < arity; ++k) args[k] = rep[cls[k]];
      marks[r][idx++] = s.holds(r, args) ? Mark::Positive : Mark::Negative;
    } while (next_tuple(cls, static_cast<int>(nc)));
  }
  return t;
}

std::vector<AtomicType> enumerate_complete_types(const SignaturePtr& signature,
                                                 const std::vector<Variable>& variables,
                                                 const AtomicType* constraint) {
  const SignaturePtr sig = signature ? signature : make_signature({});
  if (constraint) {
    for (const auto& v : constraint->variables()) {
      if (std::find(variables.begin(), variables.end(), v) == variables.end()) {
        throw Error(ErrorCode::InvalidArgument,
                    "constraint mentions variable '" + v + "' outside the type's variables");
      }
    }
  }
  std::vector<AtomicType> out;
  for (const auto& eq : enumerate_equality_types(variables)) {
    const auto nc = static_cast<int>(eq.num_classes());
    // Map our classes to constraint classes where possible.
    std::vector<int> to_constraint(nc, -1);
    if (constraint && constraint->eq_part()) {
      const auto& ceq = *constraint->eq_part();
      if (!(eq.restrict(ceq.variables()) == ceq)) continue;
      for (std::size_t i = 0; i < ceq.size(); ++i) {
        to_constraint[eq.class_of(eq.position(ceq.variables()[i]))] = ceq.class_of(i);
      }
    }
    AtomicType base(sig, eq);
    std::vector<std::pair<std::size_t, std::size_t>> free_literals;
    if (nc > 0) {
      for (std::size_t r = 0; r < sig->size(); ++r) {
        const auto arity = (*sig)[r].arity;
        std::vector<int> cls(arity, 0), mapped(arity);
        std::size_t idx = 0;
        do {
          Mark fixed = Mark::Undecided;
          if (constraint && constraint->eq_part()) {
            bool inside = true;
            for (std::size_t k = 0; k < arity; ++k) {
              mapped[k] = to_constraint[cls[k]];
              if (mapped[k] < 0) inside = false;
            }
            if (inside) fixed = constraint->mark(r, mapped);
          }
          if (fixed == Mark::Undecided) {
            free_literals.emplace_back(r, idx);
          } else {
            base.mutable_marks()[r][idx] = fixed;
          }
          ++idx;
        } while (next_tuple(cls, nc));
      }
    }
    if (free_literals.size() >= 63) {
      throw Error(ErrorCode::InvalidArgument, "too many literals to enumerate complete types");
    }
    const std::uint64_t limit = std::uint64_t{1} << free_literals.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
      AtomicType t = base;
      for (std::size_t b = 0; b < free_literals.size(); ++b) {
        const auto [r, idx] = free_literals[b];
        t.mutable_marks()[r][idx] = ((mask >> b) & 1U) ? Mark::Positive : Mark::Negative;
      }
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace pla
