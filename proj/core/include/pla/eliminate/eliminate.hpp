#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pla/aggregators/registry.hpp"
#include "pla/logic/bpf.hpp"
#include "pla/network/network.hpp"

namespace pla {

// Number of equality classes of p_eq made only of variables from `ybar`.
std::size_t dim_y(const EqualityType& p_eq, const std::vector<Variable>& xbar,
                  const std::vector<Variable>& ybar);

// Limit probability that a tuple with p's equality pattern realises the
// complete type p: the product over p's relation literals of v or 1 - v,
// v being theta_R on the literal's arguments in p's canonical structure.
// Exact for every n at least the number of classes. Throws
// NetworkHasAggregation or IncompleteType.
double limit_prob_type(const PlaNetwork& net, const AtomicType& p);

struct AlphaEntry {
  AtomicType type;        // p_{i,j}, complete over xbar ++ ybar
  std::vector<double> c;  // body values on p_{i,j}, one per body
  double beta = 0.0;
  double alpha = 0.0;  // beta / gamma (0 when gamma = 0)
};

struct AlphaRow {
  AtomicType q;  // complete over xbar
  double gamma = 0.0;
  std::vector<AlphaEntry> entries;
  double alpha_sum = 0.0;
  // One spectrum per body (before normalization).
  std::vector<SupportSpectrum> spectra;
};

struct AlphaTable {
  std::vector<Variable> xbar, ybar;
  EqualityType p_eq;  // over xbar ++ ybar
  std::size_t dim = 0;
  std::vector<AlphaRow> rows;
};

// The alpha table of an aggregation with equality type p_eq. Each body is a
// basic probability formula over xbar ++ ybar that is complete on the types
// extending p_eq. Rows follow the enumeration order of types over xbar; only
// types with p_eq's pattern on xbar get a row.
AlphaTable alphas(const PlaNetwork& net, const std::vector<Variable>& xbar,
                  const std::vector<Variable>& ybar, const EqualityType& p_eq,
                  const std::vector<BasicProbabilityFormula>& bodies);

// Per-row outcome of compiling one aggregation node.
struct CompiledRow {
  AtomicType q;
  double d = 1.0;
  double gamma = 0.0;
  double alpha_sum = 0.0;
  std::string method;  // closed_form, numeric, substitution, zero_gamma, empty_range
  std::vector<AlphaEntry> entries;
  std::vector<SupportSpectrum> spectra;
};

struct AggregationReport {
  std::string node;  // formula text of the node
  std::string function;
  std::vector<Variable> parameters, bound;
  std::size_t dim = 0;
  std::vector<CompiledRow> rows;
};

struct EliminationReport {
  std::string input;
  std::vector<Variable> variables;
  std::string output;
  std::vector<AggregationReport> aggregations;  // bottom-up order
  std::vector<std::string> warnings;
  // Largest |sum alpha - 1| over rows with gamma > 0.
  double max_alpha_error = 0.0;
  bool alpha_sums_ok = true;
};

struct EliminationResult {
  BasicProbabilityFormula formula;
  EliminationReport report;
};

// Compiles phi into a basic probability formula over `variables` (default:
// free_variables(phi)) that is asymptotically equivalent to it with respect to
// the network. When every value agrees within 1e-12 the output is the single
// conjunct (T -> d). Throws NetworkHasAggregation and NoLimitMethod.
EliminationResult eliminate(const PlaNetwork& net, const Formula& phi,
                            std::optional<std::vector<Variable>> variables = std::nullopt,
                            const AggregatorRegistry& registry = AggregatorRegistry::builtins());

// JSON document for a report; `max_extensions` caps the per-row extension
// listing (rows with more only report the count).
std::string report_to_json(const EliminationReport& report, std::size_t max_extensions = 64);

}  // namespace pla
