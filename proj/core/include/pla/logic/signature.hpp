#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pla {

struct RelationSymbol {
  std::string name;
  std::size_t arity = 1;

  bool operator==(const RelationSymbol&) const = default;
};

// A finite relational vocabulary. Symbol order is significant: it fixes the
// literal order of atomic types and the bit order of world enumeration.
class Signature {
 public:
  Signature() = default;
  // Throws InvalidArgument on duplicate names or zero arity.
  explicit Signature(std::vector<RelationSymbol> symbols);

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const RelationSymbol& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<RelationSymbol>& symbols() const noexcept { return symbols_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws UnknownRelation
  std::size_t max_arity() const noexcept;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<RelationSymbol> symbols_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

SignaturePtr make_signature(std::vector<RelationSymbol> symbols);

}  // namespace pla
