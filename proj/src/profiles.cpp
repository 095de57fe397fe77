#include "cellgraph/profiles.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "cellgraph/error.hpp"
#include "text.hpp"

namespace cellgraph {

// Generated from data/scenario_profiles.csv at configure time.
extern const char* const kScenarioProfilesCsv;

std::vector<ReferenceProfile> read_reference_profiles(std::istream& in) {
  std::string line;
  std::vector<std::string_view> f;
  if (!std::getline(in, line)) throw SchemaError("profile CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  text::split(line, ',', f);
  if (f.size() != 25 || f[0] != "label" || f[1] != "h0" || f[24] != "h23")
    throw SchemaError("profile CSV: expected header 'label,h0,...,h23'");

  std::vector<ReferenceProfile> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    text::split(line, ',', f);
    if (f.size() != 25 || f[0].empty()) throw ParseError(line_no, "expected a label and 24 values");
    ReferenceProfile p;
    p.label.assign(f[0]);
    double sum = 0.0;
    for (std::size_t h = 0; h < 24; ++h) {
      auto v = text::parse_double(f[h + 1]);
      if (!v || !std::isfinite(*v) || *v < 0.0) throw ParseError(line_no, "bad value for h" + std::to_string(h));
      p.shape[h] = *v;
      sum += *v;
    }
    if (std::abs(sum - 1.0) > 1e-6) throw ParseError(line_no, "profile " + p.label + " does not sum to 1");
    for (double& v : p.shape) v /= sum;
    out.push_back(std::move(p));
  }
  return out;
}

void write_reference_profiles(std::ostream& out, const std::vector<ReferenceProfile>& profiles) {
  out << "label";
  for (int h = 0; h < 24; ++h) out << ",h" << h;
  out << '\n';
  for (const auto& p : profiles) {
    out << p.label;
    for (double v : p.shape) out << ',' << text::format_double(v);
    out << '\n';
  }
}

const std::vector<ReferenceProfile>& default_reference_profiles() {
  static const std::vector<ReferenceProfile> profiles = [] {
    std::istringstream in(kScenarioProfilesCsv);
    return read_reference_profiles(in);
  }();
  return profiles;
}

}  // namespace cellgraph
