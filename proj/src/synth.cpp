#include "cellgraph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

#include "cellgraph/error.hpp"
#include "text.hpp"

namespace cellgraph {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream));
}

// Uniform on (0, 1].
double unit_open_closed(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

std::string padded(std::string_view prefix, std::size_t i, std::size_t count) {
  const int width = static_cast<int>(std::to_string(std::max<std::size_t>(count, 1) - 1).size());
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, i);
  return std::string(prefix) + buf;
}

// Fraction of the daily volume that falls in [start, start + width).
double day_share(const HourlyShape& shape, std::int64_t start, std::int64_t width) {
  double share = 0.0;
  for (std::int64_t t = start; t < start + width;) {
    const std::int64_t hour_start = t - ((t % 3600) + 3600) % 3600;
    const std::int64_t stop = std::min(start + width, hour_start + 3600);
    const auto hour = static_cast<std::size_t>(((hour_start % 86400) + 86400) % 86400 / 3600);
    share += shape[hour] * static_cast<double>(stop - t) / 3600.0;
    t = stop;
  }
  return share;
}

}  // namespace

void validate(const ScenarioProfile& p) {
  double sum = 0.0;
  for (double v : p.hourly_shape) {
    if (!std::isfinite(v) || v < 0.0) throw InvalidArgument("profile " + p.label + ": negative shape value");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidArgument("profile " + p.label + ": shape must sum to 1");
  if (!(p.amplitude > 0.0) || !std::isfinite(p.amplitude))
    throw InvalidArgument("profile " + p.label + ": amplitude must be > 0");
  if (!(p.noise_sigma >= 0.0) || !std::isfinite(p.noise_sigma))
    throw InvalidArgument("profile " + p.label + ": noise_sigma must be >= 0");
  if (p.label.empty() || !text::representable(p.label)) throw InvalidArgument("profile label is not usable");
}

std::vector<ScenarioProfile> default_scenarios(double noise_sigma) {
  // Daily bytes per cell; busy districts carry more.
  const std::map<std::string, double> amplitude = {
      {"residential", 8.0e9}, {"office/CBD", 6.0e9}, {"shopping", 5.0e9}, {"transport/subway", 4.0e9}};
  std::vector<ScenarioProfile> out;
  for (const auto& ref : default_reference_profiles()) {
    auto it = amplitude.find(ref.label);
    out.push_back({ref.label, ref.shape, it == amplitude.end() ? 5.0e9 : it->second, noise_sigma});
  }
  return out;
}

City gen_city(std::span<const ScenarioProfile> profiles, const CityOptions& o) {
  if (profiles.empty()) throw InvalidArgument("gen_city: no scenario profiles");
  for (const auto& p : profiles) validate(p);
  if (o.days < 1) throw InvalidArgument("gen_city: days must be >= 1");
  if (o.cells_per_scenario < 1) throw InvalidArgument("gen_city: cells_per_scenario must be >= 1");
  if (o.bin_width <= 0 || 86400 % o.bin_width != 0)
    throw InvalidArgument("gen_city: bin_width must divide 86400");
  if (((o.t0 % 86400) + 86400) % 86400 != 0) throw InvalidArgument("gen_city: t0 must be a UTC midnight");
  if (o.apps.empty() || o.users_per_cell < 1) throw InvalidArgument("gen_city: need apps and users");
  std::vector<double> app_weights;
  for (const auto& a : o.apps) {
    if (a.app_id.empty() || !text::representable(a.app_id) || !(a.weight > 0.0))
      throw InvalidArgument("gen_city: bad app mix entry");
    app_weights.push_back(a.weight);
  }

  City city;
  const std::size_t bins = o.days * static_cast<std::size_t>(86400 / o.bin_width);
  city.flows.reserve(profiles.size() * o.cells_per_scenario * bins);
  // Scenario districts sit on a ring around a city centre.
  constexpr double kLat = 22.30, kLon = 114.17, kRing = 0.05, kSpread = 0.006;

  for (std::size_t s = 0; s < profiles.size(); ++s) {
    const auto& prof = profiles[s];
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(profiles.size());
    for (std::size_t c = 0; c < o.cells_per_scenario; ++c) {
      const std::size_t stream = s * o.cells_per_scenario + c;
      std::mt19937_64 rng(derive_seed(o.seed, stream));
      std::normal_distribution<double> jitter(0.0, kSpread);
      std::discrete_distribution<std::size_t> app_pick(app_weights.begin(), app_weights.end());
      std::uniform_int_distribution<std::size_t> user_pick(0, o.users_per_cell - 1);

      const std::string cell_id = padded("c" + std::to_string(s) + "-", c, o.cells_per_scenario);
      const double lat = kLat + kRing * std::sin(angle) + jitter(rng);
      const double lon = kLon + kRing * std::cos(angle) + jitter(rng);
      city.cells.push_back({cell_id, lat, lon, prof.label});
      city.truth.emplace(cell_id, prof.label);

      for (std::size_t b = 0; b < bins; ++b) {
        const std::int64_t start = o.t0 + static_cast<std::int64_t>(b) * o.bin_width;
        const double mean = prof.amplitude * day_share(prof.hourly_shape, start, o.bin_width);
        double volume = mean;
        if (prof.noise_sigma > 0.0) volume = std::max(0.0, std::normal_distribution<double>(mean, prof.noise_sigma * mean)(rng));
        const auto bytes = static_cast<std::uint64_t>(std::llround(volume));
        const auto down = static_cast<std::uint64_t>(std::llround(0.8 * static_cast<double>(bytes)));
        const auto& app = o.apps[app_pick(rng)].app_id;
        FlowRecord r;
        r.user_id = cell_id + "-u" + std::to_string(user_pick(rng));
        r.cell_id = cell_id;
        r.t_start = start;
        r.t_end = start + o.bin_width;
        r.bytes_down = down;
        r.bytes_up = bytes - down;
        r.pkts_down = (r.bytes_down + 1399) / 1400;
        r.pkts_up = (r.bytes_up + 1399) / 1400;
        r.app_id = app;
        r.host = app + ".example.net";
        city.flows.push_back(std::move(r));
      }
    }
  }
  return city;
}

std::map<std::string, double> gen_subscribers(std::size_t n, double alpha, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("gen_subscribers: n must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("gen_subscribers: alpha must be > 0");
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    // Inverse CDF of Pareto(alpha, 1): x = u^(-1/alpha), u in (0, 1].
    out.emplace_hint(out.end(), padded("user-", i, n), std::pow(unit_open_closed(rng), -1.0 / alpha));
  }
  return out;
}

CallGraph gen_calls(std::size_t users_per_block, std::size_t blocks, double p_in, double p_out,
                    std::uint64_t seed, std::int64_t t0) {
  if (users_per_block < 1 || blocks < 1) throw InvalidArgument("gen_calls: counts must be >= 1");
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
    throw InvalidArgument("gen_calls: probabilities must lie in [0, 1]");
  if (!(p_in > p_out)) throw InvalidArgument("gen_calls: p_in must exceed p_out");

  CallGraph g;
  std::vector<std::string> users;
  std::vector<int> block_of;
  for (std::size_t b = 0; b < blocks; ++b)
    for (std::size_t u = 0; u < users_per_block; ++u) {
      users.push_back(padded("b", b, blocks) + padded("-u", u, users_per_block));
      block_of.push_back(static_cast<int>(b));
      g.blocks.emplace(users.back(), static_cast<int>(b));
    }

  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (std::size_t i = 0; i < users.size(); ++i)
    for (std::size_t j = i + 1; j < users.size(); ++j) {
      const double p = block_of[i] == block_of[j] ? p_in : p_out;
      const double draw = uniform();
      const std::uint64_t bits = rng();
      if (draw >= p) continue;
      const bool forward = (bits & 1U) != 0;
      g.calls.push_back({forward ? users[i] : users[j], forward ? users[j] : users[i],
                         t0 + static_cast<std::int64_t>((bits >> 1) % 86400),
                         static_cast<std::int64_t>(10 + (bits >> 20) % 600)});
    }
  return g;
}

void write_truth_csv(std::ostream& out, const std::map<std::string, std::string>& truth) {
  out << "entity_id,label\n";
  for (const auto& [id, label] : truth) out << id << ',' << label << '\n';
}

void write_truth_csv(std::ostream& out, const std::map<std::string, int>& truth) {
  out << "entity_id,label\n";
  for (const auto& [id, label] : truth) out << id << ',' << label << '\n';
}

}  // namespace cellgraph
