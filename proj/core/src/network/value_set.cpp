#include "pla/network/value_set.hpp"

#include "pla/error.hpp"
#include "pla/util/numeric.hpp"

namespace pla {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double number(std::string_view s, std::string_view whole) {
  auto v = parse_double(trim(s));
  if (!v) throw Error(ErrorCode::InvalidArgument, "malformed value set '" + std::string(whole) + "'");
  return *v;
}

}  // namespace

ValueSet::ValueSet(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  for (const auto& iv : intervals_) {
    if (!(iv.lo <= iv.hi)) {
      throw Error(ErrorCode::InvalidArgument, "value set interval with lo > hi");
    }
  }
}

ValueSet ValueSet::parse(std::string_view text) {
  std::vector<Interval> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      const double v = number(item, text);
      out.push_back({v, v});
    } else {
      out.push_back({number(item.substr(0, colon), text), number(item.substr(colon + 1), text)});
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return ValueSet(std::move(out));
}

bool ValueSet::contains(double v) const {
  for (const auto& iv : intervals_) {
    if (v >= iv.lo - 1e-12 && v <= iv.hi + 1e-12) return true;
  }
  return false;
}

std::string ValueSet::to_string() const {
  std::string out;
  for (const auto& iv : intervals_) {
    if (!out.empty()) out += ",";
    out += iv.lo == iv.hi ? format_double(iv.lo) : format_double(iv.lo) + ":" + format_double(iv.hi);
  }
  return out;
}

}  // namespace pla
