#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pla/logic/signature.hpp"

namespace pla {

// Domain elements are 1-based: a structure of size n has domain {1, ..., n}.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;

// A finite sigma-structure with domain [n]. Each relation is stored densely as
// one byte per tuple of [n]^arity in lexicographic order.
class Structure {
 public:
  Structure(SignaturePtr signature, std::size_t domain_size);

  const Signature& signature() const noexcept { return *signature_; }
  const SignaturePtr& signature_ptr() const noexcept { return signature_; }
  std::size_t domain_size() const noexcept { return n_; }

  bool holds(std::size_t relation, std::span<const Element> args) const {
    return bits_[relation][offset(args)] != 0;
  }
  void set(std::size_t relation, std::span<const Element> args, bool value);

  // Direct access by lexicographic tuple index, used by enumerators.
  std::size_t tuple_count(std::size_t relation) const noexcept {
    return bits_[relation].size();
  }
  bool holds_at(std::size_t relation, std::size_t index) const {
    return bits_[relation][index] != 0;
  }
  void set_at(std::size_t relation, std::size_t index, bool value) {
    bits_[relation][index] = value ? 1 : 0;
  }

  std::vector<Tuple> tuples(std::size_t relation) const;
  void clear_relation(std::size_t relation);

  // The structure kappa . A with R^{kappa A} = { kappa(a) : a in R^A }.
  // `permutation[i - 1]` is the image of element i.
  Structure permuted(std::span<const Element> permutation) const;

  bool operator==(const Structure& other) const;

 private:
  std::size_t offset(std::span<const Element> args) const;

  SignaturePtr signature_;
  std::size_t n_;
  std::vector<std::vector<std::uint8_t>> bits_;
};

// Lexicographic index <-> tuple conversion over [n]^arity.
std::size_t tuple_index(std::span<const Element> tuple, std::size_t n);
Tuple index_tuple(std::size_t index, std::size_t arity, std::size_t n);
std::size_t int_pow(std::size_t base, std::size_t exponent);

}  // namespace pla
