#include "pla/network/network.hpp"

#include <algorithm>

#include "pla/error.hpp"

namespace pla {

namespace {

SignaturePtr signature_of(const std::vector<RelationSpec>& relations) {
  std::vector<RelationSymbol> syms;
  for (const auto& r : relations) syms.push_back({r.name, r.arity});
  return make_signature(std::move(syms));
}

std::vector<std::vector<std::size_t>> parent_indices(const std::vector<RelationSpec>& relations,
                                                     const Signature& sig) {
  std::vector<std::vector<std::size_t>> out(relations.size());
  for (std::size_t i = 0; i < relations.size(); ++i) {
    for (const auto& p : relations[i].parents) {
      auto idx = sig.find(p);
      if (!idx) {
        throw Error(ErrorCode::UnknownRelation,
                    "relation '" + relations[i].name + "' has unknown parent '" + p + "'");
      }
      if (std::find(out[i].begin(), out[i].end(), *idx) == out[i].end()) out[i].push_back(*idx);
    }
  }
  return out;
}

}  // namespace

std::vector<Variable> theta_parameters(std::size_t arity) {
  std::vector<Variable> out;
  for (std::size_t i = 1; i <= arity; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

Stratification validate(const std::vector<RelationSpec>& relations,
                        const AggregatorRegistry& registry) {
  const SignaturePtr sig = signature_of(relations);
  const auto parents = parent_indices(relations, *sig);
  const std::size_t m = relations.size();

  // Depth-first ranks; colour 1 = on the stack.
  Stratification st;
  st.rank.assign(m, 0);
  std::vector<int> colour(m, 0);
  std::vector<std::size_t> stack;
  auto visit = [&](auto&& self, std::size_t v) -> void {
    colour[v] = 1;
    stack.push_back(v);
    std::size_t rank = 0;
    for (std::size_t p : parents[v]) {
      if (colour[p] == 1) {
        std::string cycle;
        auto it = std::find(stack.begin(), stack.end(), p);
        for (; it != stack.end(); ++it) cycle += relations[*it].name + " <- ";
        throw Error(ErrorCode::CycleDetected, "parent cycle " + cycle + relations[p].name);
      }
      if (colour[p] == 0) self(self, p);
      rank = std::max(rank, st.rank[p] + 1);
    }
    st.rank[v] = rank;
    stack.pop_back();
    colour[v] = 2;
  };
  for (std::size_t v = 0; v < m; ++v) {
    if (colour[v] == 0) visit(visit, v);
  }
  std::size_t depth = 0;
  for (auto r : st.rank) depth = std::max(depth, r + 1);
  st.strata.assign(depth, {});
  for (std::size_t v = 0; v < m; ++v) st.strata[st.rank[v]].push_back(v);

  for (std::size_t v = 0; v < m; ++v) {
    const auto& spec = relations[v];
    if (!spec.theta) {
      throw Error(ErrorCode::InvalidArgument, "relation '" + spec.name + "' has no theta");
    }
    for (const auto& rel : relations_used(*spec.theta)) {
      auto idx = sig->find(rel);
      if (!idx || std::find(parents[v].begin(), parents[v].end(), *idx) == parents[v].end()) {
        throw Error(ErrorCode::ThetaUsesNonParent,
                    "theta of '" + spec.name + "' uses '" + rel + "', which is not a parent");
      }
    }
    const auto params = theta_parameters(spec.arity);
    for (const auto& x : free_variables(*spec.theta)) {
      if (std::find(params.begin(), params.end(), x) == params.end()) {
        throw Error(ErrorCode::ArityMismatch, "theta of '" + spec.name + "' (arity " +
                                                  std::to_string(spec.arity) +
                                                  ") has free variable '" + x +
                                                  "'; expected only x1..x" +
                                                  std::to_string(spec.arity));
      }
    }
    // Compiling checks atom arities and function names.
    CompiledFormula(*spec.theta, *sig, params, registry);
    if (!is_aggregation_free(*spec.theta)) st.aggregation_free = false;
  }
  return st;
}

PlaNetwork::PlaNetwork(std::vector<RelationSpec> relations, const AggregatorRegistry& registry)
    : relations_(std::move(relations)) {
  strat_ = validate(relations_, registry);
  signature_ = signature_of(relations_);
  parent_ids_ = parent_indices(relations_, *signature_);
  for (const auto& r : relations_) {
    compiled_.push_back(std::make_shared<const CompiledFormula>(
        *r.theta, *signature_, theta_parameters(r.arity), registry));
  }
  for (const auto& stratum : strat_.strata) order_.insert(order_.end(), stratum.begin(), stratum.end());
}

}  // namespace pla
