#include "pla/logic/structure.hpp"

#include <algorithm>
#include <limits>

#include "pla/error.hpp"

namespace pla {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::UnknownAggregationFunction: return "UnknownAggregationFunction";
    case ErrorCode::EmptyAggregationRange: return "EmptyAggregationRange";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NotAggregationFree: return "NotAggregationFree";
    case ErrorCode::NoLimitMethod: return "NoLimitMethod";
    case ErrorCode::NumericNonConvergence: return "NumericNonConvergence";
    case ErrorCode::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorCode::JitterTooLarge: return "JitterTooLarge";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::ThetaUsesNonParent: return "ThetaUsesNonParent";
    case ErrorCode::TooManyWorlds: return "TooManyWorlds";
    case ErrorCode::NetworkHasAggregation: return "NetworkHasAggregation";
    case ErrorCode::IncompleteType: return "IncompleteType";
  }
  return "Unknown";
}

Signature::Signature(std::vector<RelationSymbol> symbols)
    : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].arity == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "relation '" + symbols_[i].name + "' has arity 0");
    }
    if (symbols_[i].name.empty()) {
      throw Error(ErrorCode::InvalidArgument, "relation with empty name");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (symbols_[j].name == symbols_[i].name) {
        throw Error(ErrorCode::InvalidArgument,
                    "duplicate relation '" + symbols_[i].name + "'");
      }
    }
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Signature::index_of(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw Error(ErrorCode::UnknownRelation,
              "relation '" + std::string(name) + "' is not in the signature");
}

std::size_t Signature::max_arity() const noexcept {
  std::size_t m = 0;
  for (const auto& s : symbols_) m = std::max(m, s.arity);
  return m;
}

SignaturePtr make_signature(std::vector<RelationSymbol> symbols) {
  return std::make_shared<const Signature>(std::move(symbols));
}

std::size_t int_pow(std::size_t base, std::size_t exponent) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && r > std::numeric_limits<std::size_t>::max() / base) {
      throw Error(ErrorCode::InvalidArgument, "tuple space too large");
    }
    r *= base;
  }
  return r;
}

std::size_t tuple_index(std::span<const Element> tuple, std::size_t n) {
  std::size_t idx = 0;
  for (Element e : tuple) idx = idx * n + (e - 1);
  return idx;
}

Tuple index_tuple(std::size_t index, std::size_t arity, std::size_t n) {
  Tuple t(arity);
  for (std::size_t i = arity; i-- > 0;) {
    t[i] = static_cast<Element>(index % n + 1);
    index /= n;
  }
  return t;
}

Structure::Structure(SignaturePtr signature, std::size_t domain_size)
    : signature_(std::move(signature)), n_(domain_size) {
  if (!signature_) signature_ = make_signature({});
  if (n_ == 0) {
    throw Error(ErrorCode::InvalidArgument, "domain size must be positive");
  }
  bits_.reserve(signature_->size());
  for (const auto& sym : signature_->symbols()) {
    bits_.emplace_back(int_pow(n_, sym.arity), 0);
  }
}

std::size_t Structure::offset(std::span<const Element> args) const {
  return tuple_index(args, n_);
}

void Structure::set(std::size_t relation, std::span<const Element> args,
                    bool value) {
  const auto& sym = (*signature_)[relation];
  if (args.size() != sym.arity) {
    throw Error(ErrorCode::ArityMismatch,
                "tuple of length " + std::to_string(args.size()) +
                    " for relation '" + sym.name + "' of arity " +
                    std::to_string(sym.arity));
  }
  for (Element e : args) {
    if (e < 1 || e > n_) {
      throw Error(ErrorCode::InvalidArgument,
                  "element " + std::to_string(e) + " outside domain [1," +
                      std::to_string(n_) + "]");
    }
  }
  bits_[relation][offset(args)] = value ? 1 : 0;
}

std::vector<Tuple> Structure::tuples(std::size_t relation) const {
  std::vector<Tuple> out;
  const auto arity = (*signature_)[relation].arity;
  for (std::size_t i = 0; i < bits_[relation].size(); ++i) {
    if (bits_[relation][i]) out.push_back(index_tuple(i, arity, n_));
  }
  return out;
}

void Structure::clear_relation(std::size_t relation) {
  std::fill(bits_[relation].begin(), bits_[relation].end(), 0);
}

Structure Structure::permuted(std::span<const Element> permutation) const {
  if (permutation.size() != n_) {
    throw Error(ErrorCode::InvalidArgument, "permutation has wrong length");
  }
  Structure out(signature_, n_);
  for (std::size_t r = 0; r < bits_.size(); ++r) {
    const auto arity = (*signature_)[r].arity;
    for (std::size_t i = 0; i < bits_[r].size(); ++i) {
      if (!bits_[r][i]) continue;
      Tuple t = index_tuple(i, arity, n_);
      for (auto& e : t) e = permutation[e - 1];
      out.bits_[r][tuple_index(t, n_)] = 1;
    }
  }
  return out;
}

bool Structure::operator==(const Structure& other) const {
  return n_ == other.n_ && *signature_ == *other.signature_ &&
         bits_ == other.bits_;
}

}  // namespace pla
