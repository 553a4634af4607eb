#include "pla/io/files.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pla/error.hpp"
#include "pla/logic/parser.hpp"
#include "pla/logic/printer.hpp"
#include "pla/util/numeric.hpp"

namespace pla {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Locates the string value `needle` in the raw document for diagnostics.
std::pair<std::size_t, std::size_t> locate(std::string_view text, const std::string& needle) {
  const auto quoted = json(needle).dump();
  const auto pos = text.find(quoted);
  if (pos == std::string_view::npos) return {1, 1};
  return line_col(text, pos + 1);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError("invalid JSON: " + msg, line, col);
  }
}

[[noreturn]] void schema_error(const std::string& msg) {
  throw Error(ErrorCode::InvalidArgument, msg);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<RelationSpec> parse_network(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("relations") || !doc["relations"].is_array()) {
    schema_error("network document needs a \"relations\" array");
  }
  std::vector<RelationSpec> out;
  for (const auto& r : doc["relations"]) {
    if (!r.is_object() || !r.contains("name") || !r["name"].is_string()) {
      schema_error("every relation needs a string \"name\"");
    }
    RelationSpec spec;
    spec.name = r["name"].get<std::string>();
    if (r.contains("arity")) {
      if (!r["arity"].is_number_unsigned() || r["arity"].get<std::size_t>() == 0) {
        schema_error("relation '" + spec.name + "': arity must be a positive integer");
      }
      spec.arity = r["arity"].get<std::size_t>();
    }
    if (r.contains("parents")) {
      if (!r["parents"].is_array()) schema_error("relation '" + spec.name + "': parents must be a list");
      for (const auto& p : r["parents"]) {
        if (!p.is_string()) schema_error("relation '" + spec.name + "': parent names must be strings");
        spec.parents.push_back(p.get<std::string>());
      }
    }
    if (!r.contains("theta")) schema_error("relation '" + spec.name + "' has no theta");
    const auto& th = r["theta"];
    if (th.is_number()) {
      const double v = th.get<double>();
      if (!(v >= 0.0 && v <= 1.0)) schema_error("relation '" + spec.name + "': theta outside [0,1]");
      spec.theta = constant(v);
    } else if (th.is_string()) {
      const auto src = th.get<std::string>();
      try {
        spec.theta = parse_formula(src);
      } catch (const ParseError& e) {
        auto [line, col] = locate(text, src);
        // Theta text sits on one line of the document in practice.
        throw ParseError("theta of '" + spec.name + "': " + e.detail(), line,
                         e.line() == 1 ? col + e.column() - 1 : col);
      }
    } else {
      schema_error("relation '" + spec.name + "': theta must be formula text or a number");
    }
    out.push_back(std::move(spec));
  }
  return out;
}

PlaNetwork load_network(const std::string& path) { return PlaNetwork(parse_network(read_file(path))); }

std::string network_to_json(const PlaNetwork& net) {
  json rels = json::array();
  for (const auto& r : net.relations()) {
    rels.push_back({{"name", r.name}, {"arity", r.arity}, {"parents", r.parents},
                    {"theta", print(*r.theta)}});
  }
  return json{{"relations", rels}}.dump(2);
}

Structure parse_structure(std::string_view text, const SignaturePtr& signature) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("domain_size") || !doc["domain_size"].is_number_unsigned()) {
    schema_error("structure document needs a positive integer \"domain_size\"");
  }
  const auto n = doc["domain_size"].get<std::size_t>();
  Structure s(signature, n);
  if (!doc.contains("relations")) return s;
  if (!doc["relations"].is_object()) schema_error("\"relations\" must map names to tuple lists");
  for (const auto& [name, tuples] : doc["relations"].items()) {
    const std::size_t r = signature->index_of(name);
    if (!tuples.is_array()) schema_error("relation '" + name + "': expected a list of tuples");
    for (const auto& t : tuples) {
      Tuple tup;
      if (t.is_number_unsigned()) {
        tup.push_back(t.get<Element>());
      } else if (t.is_array()) {
        for (const auto& e : t) {
          if (!e.is_number_unsigned()) schema_error("relation '" + name + "': elements must be positive integers");
          tup.push_back(e.get<Element>());
        }
      } else {
        schema_error("relation '" + name + "': malformed tuple");
      }
      s.set(r, tup, true);
    }
  }
  return s;
}

std::string structure_to_json(const Structure& s) {
  json rels = json::object();
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    json list = json::array();
    for (const auto& t : s.tuples(r)) list.push_back(t);
    rels[s.signature()[r].name] = list;
  }
  return json{{"domain_size", s.domain_size()}, {"relations", rels}}.dump();
}

}  // namespace pla
