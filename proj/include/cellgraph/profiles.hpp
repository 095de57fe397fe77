#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace cellgraph {

using HourlyShape = std::array<double, 24>;

// Reference 24-hour traffic shape of a scenario, normalised to unit sum.
struct ReferenceProfile {
  std::string label;
  HourlyShape shape{};
};

// CSV `label,h0,...,h23`. Rows are renormalised to unit sum after checking they
// already sum to 1 within 1e-6.
std::vector<ReferenceProfile> read_reference_profiles(std::istream& in);
void write_reference_profiles(std::ostream& out, const std::vector<ReferenceProfile>& profiles);

// The shipped data/scenario_profiles.csv, compiled in: residential,
// office/CBD, shopping, transport/subway.
const std::vector<ReferenceProfile>& default_reference_profiles();

}  // namespace cellgraph
