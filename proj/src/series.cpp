#include "cellgraph/series.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "cellgraph/error.hpp"
#include "stats_kernel.hpp"
#include "text.hpp"

namespace cellgraph {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool aligned(std::int64_t t, std::int64_t w) { return floor_div(t, w) * w == t; }

const std::string& key_of(const FlowRecord& r, AggregationKey key) {
  switch (key) {
    case AggregationKey::cell:
      return r.cell_id;
    case AggregationKey::user:
      return r.user_id;
    case AggregationKey::app:
      return r.app_id;
  }
  return r.cell_id;
}

double amount_of(const FlowRecord& r, Metric metric) {
  switch (metric) {
    case Metric::bytes_total:
      return static_cast<double>(r.bytes_up) + static_cast<double>(r.bytes_down);
    case Metric::bytes_down:
      return static_cast<double>(r.bytes_down);
    case Metric::bytes_up:
      return static_cast<double>(r.bytes_up);
    case Metric::flow_count:
      return 1.0;
  }
  return 0.0;
}

bool touches(const FlowRecord& r, const Span& span) {
  if (r.t_start == r.t_end) return r.t_start >= span.begin && r.t_start < span.end;
  return r.t_start < span.end && r.t_end > span.begin;
}

void add_point(std::vector<double>& bins, const Span& span, std::int64_t w, std::int64_t t,
               double amount) {
  if (t < span.begin || t >= span.end) return;
  bins[static_cast<std::size_t>((t - span.begin) / w)] += amount;
}

void accumulate(std::vector<double>& bins, const FlowRecord& r, const AggregateOptions& o) {
  const double amount = amount_of(r, o.metric);
  const std::int64_t w = o.bin_width;
  if (o.metric == Metric::flow_count || o.attribution == Attribution::start_bin ||
      r.t_start == r.t_end) {
    add_point(bins, o.span, w, r.t_start, amount);
    return;
  }
  const std::int64_t lo = std::max(r.t_start, o.span.begin);
  const std::int64_t hi = std::min(r.t_end, o.span.end);
  const double duration = static_cast<double>(r.t_end - r.t_start);
  for (std::int64_t b = (lo - o.span.begin) / w; o.span.begin + b * w < hi; ++b) {
    const std::int64_t bin_lo = o.span.begin + b * w;
    const std::int64_t overlap = std::min(hi, bin_lo + w) - std::max(lo, bin_lo);
    if (overlap > 0)
      bins[static_cast<std::size_t>(b)] += amount * static_cast<double>(overlap) / duration;
  }
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(jobs, 1)));
}

}  // namespace

void validate(const TimeSeries& ts) {
  if (ts.bin_width <= 0) throw InvalidArgument("series " + ts.entity_id + ": bin_width must be > 0");
  if (!aligned(ts.t0, ts.bin_width))
    throw InvalidArgument("series " + ts.entity_id + ": t0 not aligned to bin_width");
  if (ts.values.empty()) throw InvalidArgument("series " + ts.entity_id + ": empty");
  for (double v : ts.values)
    if (!std::isfinite(v) || v < 0.0)
      throw InvalidArgument("series " + ts.entity_id + ": values must be finite and >= 0");
}

SeriesMap aggregate(std::span<const FlowRecord> records, const AggregateOptions& o) {
  if (o.bin_width <= 0) throw InvalidArgument("bin_width must be > 0");
  if (o.span.begin >= o.span.end) throw InvalidArgument("span must satisfy begin < end");
  if (!aligned(o.span.begin, o.bin_width) || !aligned(o.span.end, o.bin_width))
    throw InvalidArgument("unaligned span");

  // Group record indices per entity, preserving input order within each group.
  std::unordered_map<std::string_view, std::size_t> index;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!touches(records[i], o.span)) continue;
    const auto [it, fresh] = index.try_emplace(key_of(records[i], o.key), groups.size());
    if (fresh) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  std::vector<std::pair<std::string_view, std::size_t>> order(index.begin(), index.end());
  std::sort(order.begin(), order.end());

  const auto nbins = static_cast<std::size_t>((o.span.end - o.span.begin) / o.bin_width);
  std::vector<std::vector<double>> bins(order.size());
  auto work = [&](std::size_t first, std::size_t last) {
    for (std::size_t e = first; e < last; ++e) {
      bins[e].assign(nbins, 0.0);
      for (std::size_t i : groups[order[e].second]) accumulate(bins[e], records[i], o);
    }
  };
  const unsigned workers = worker_count(o.threads, order.size());
  if (workers <= 1) {
    work(0, order.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (order.size() + workers - 1) / workers;
    for (std::size_t first = 0; first < order.size(); first += chunk)
      pool.emplace_back(work, first, std::min(order.size(), first + chunk));
  }

  SeriesMap out;
  for (std::size_t e = 0; e < order.size(); ++e) {
    std::string id(order[e].first);
    out.emplace_hint(out.end(), id, TimeSeries{id, o.span.begin, o.bin_width, std::move(bins[e])});
  }
  return out;
}

Span covering_span(std::span<const FlowRecord> records, std::int64_t bin_width) {
  if (bin_width <= 0) throw InvalidArgument("bin_width must be > 0");
  if (records.empty()) throw InvalidArgument("cannot derive a span from no records");
  std::int64_t lo = records.front().t_start;
  std::int64_t hi = records.front().t_start + 1;
  for (const auto& r : records) {
    lo = std::min(lo, r.t_start);
    hi = std::max({hi, r.t_end, r.t_start + 1});
  }
  return {floor_div(lo, bin_width) * bin_width, -floor_div(-hi, bin_width) * bin_width};
}

std::vector<double> autocorrelation(const TimeSeries& ts, std::size_t max_lag) {
  validate(ts);
  const std::size_t n = ts.values.size();
  if (max_lag >= n) throw InvalidArgument("autocorrelation: max_lag must be < series length");
  if (detail::is_constant(ts.values)) throw UndefinedStatistic("autocorrelation: zero variance");
  const auto c = detail::center(ts.values);
  std::vector<double> r(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) num += c.dev[t] * c.dev[t + k];
    r[k] = detail::clamp_unit(num / c.sum_sq);
  }
  return r;
}

double cross_correlation(const TimeSeries& a, const TimeSeries& b, std::int64_t lag,
                         CrossEstimator estimator) {
  validate(a);
  validate(b);
  if (a.bin_width != b.bin_width) throw InvalidArgument("cross_correlation: incompatible bin widths");
  // b index = a index + shift
  const std::int64_t shift = lag + (a.t0 - b.t0) / a.bin_width;
  const auto na = static_cast<std::int64_t>(a.values.size());
  const auto nb = static_cast<std::int64_t>(b.values.size());
  const std::int64_t first = std::max<std::int64_t>(0, -shift);
  const std::int64_t last = std::min(na, nb - shift);
  if (last - first < 2) throw InvalidArgument("cross_correlation: overlap shorter than 2 bins");

  std::span<const double> xa(a.values.data() + first, static_cast<std::size_t>(last - first));
  std::span<const double> xb(b.values.data() + first + shift, xa.size());
  if (estimator == CrossEstimator::overlap_pearson) return detail::pearson(xa, xb);

  if (detail::is_constant(a.values) || detail::is_constant(b.values))
    throw UndefinedStatistic("cross_correlation: zero variance");
  const auto ca = detail::center(a.values);
  const auto cb = detail::center(b.values);
  double num = 0.0;
  for (std::int64_t i = first; i < last; ++i)
    num += ca.dev[static_cast<std::size_t>(i)] * cb.dev[static_cast<std::size_t>(i + shift)];
  return detail::clamp_unit(num / std::sqrt(ca.sum_sq * cb.sum_sq));
}

ConcentrationCurve concentration(const std::map<std::string, double>& totals) {
  std::vector<double> v;
  v.reserve(totals.size());
  for (const auto& [id, t] : totals) {
    if (!std::isfinite(t) || t < 0.0)
      throw InvalidArgument("concentration: total for " + id + " must be finite and >= 0");
    v.push_back(t);
  }
  std::sort(v.begin(), v.end(), std::greater<>());
  double sum = 0.0;
  for (double t : v) sum += t;
  if (!(sum > 0.0)) throw InvalidArgument("concentration: all totals are zero");

  ConcentrationCurve curve;
  curve.points.reserve(v.size() + 1);
  curve.points.push_back({0.0, 0.0});
  const auto n = static_cast<double>(v.size());
  double cum = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    cum += v[k];
    curve.points.push_back({static_cast<double>(k + 1) / n, std::min(1.0, cum / sum)});
  }
  curve.points.back() = {1.0, 1.0};
  return curve;
}

double top_share(const ConcentrationCurve& curve, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("top_share: p must lie in (0, 1]");
  if (curve.points.size() < 2) throw InvalidArgument("top_share: curve has no entities");
  const auto& pts = curve.points;
  const auto n = static_cast<double>(pts.size() - 1);
  const double x = p * n;
  const auto k = static_cast<std::size_t>(std::floor(x));
  if (k >= pts.size() - 1) return pts.back().share;
  const double frac = x - static_cast<double>(k);
  if (frac == 0.0) return pts[k].share;
  return pts[k].share + frac * (pts[k + 1].share - pts[k].share);
}

void write_series_csv(std::ostream& out, const SeriesMap& series) {
  std::size_t width = 0;
  for (const auto& [id, ts] : series) width = std::max(width, ts.values.size());
  out << "entity_id,t0,bin_width";
  for (std::size_t i = 0; i < width; ++i) out << ",v" << i;
  out << '\n';
  for (const auto& [id, ts] : series) {
    if (!text::representable(id)) throw InvalidArgument("entity id contains a separator: " + id);
    out << id << ',' << ts.t0 << ',' << ts.bin_width;
    for (double v : ts.values) out << ',' << text::format_double(v);
    out << '\n';
  }
}

SeriesMap read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || !std::string_view(line).starts_with("entity_id,t0,bin_width"))
    throw SchemaError("series CSV: expected header 'entity_id,t0,bin_width,v0,...'");
  SeriesMap out;
  std::vector<std::string_view> f;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    text::split(line, ',', f);
    if (f.size() < 4) throw ParseError(line_no, "series row needs at least one value");
    TimeSeries ts;
    ts.entity_id.assign(f[0]);
    auto t0 = text::parse_int<std::int64_t>(f[1]);
    auto w = text::parse_int<std::int64_t>(f[2]);
    if (!t0 || !w) throw ParseError(line_no, "bad t0 or bin_width");
    ts.t0 = *t0;
    ts.bin_width = *w;
    for (std::size_t i = 3; i < f.size(); ++i) {
      auto v = text::parse_double(f[i]);
      if (!v) throw ParseError(line_no, "bad value in column " + std::to_string(i));
      ts.values.push_back(*v);
    }
    validate(ts);
    if (!out.emplace(ts.entity_id, ts).second) throw ParseError(line_no, "duplicate entity_id");
  }
  return out;
}

void write_concentration_csv(std::ostream& out, const ConcentrationCurve& curve) {
  out << "p,s\n";
  for (const auto& pt : curve.points)
    out << text::format_double(pt.population) << ',' << text::format_double(pt.share) << '\n';
}

void write_totals_csv(std::ostream& out, const std::map<std::string, double>& totals) {
  out << "entity_id,total\n";
  for (const auto& [id, t] : totals) out << id << ',' << text::format_double(t) << '\n';
}

std::map<std::string, double> read_totals_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || (line != "entity_id,total" && line != "entity_id,total\r"))
    throw SchemaError("totals CSV: expected header 'entity_id,total'");
  std::map<std::string, double> out;
  std::vector<std::string_view> f;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    text::split(line, ',', f);
    auto v = f.size() == 2 ? text::parse_double(f[1]) : std::nullopt;
    if (!v || f[0].empty()) throw ParseError(line_no, "expected 'entity_id,total'");
    if (!out.emplace(std::string(f[0]), *v).second) throw ParseError(line_no, "duplicate entity_id");
  }
  return out;
}

std::string_view to_string(AggregationKey key) {
  switch (key) {
    case AggregationKey::cell:
      return "cell";
    case AggregationKey::user:
      return "user";
    case AggregationKey::app:
      return "app";
  }
  return "?";
}

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::bytes_total:
      return "bytes_total";
    case Metric::bytes_down:
      return "bytes_down";
    case Metric::bytes_up:
      return "bytes_up";
    case Metric::flow_count:
      return "flow_count";
  }
  return "?";
}

std::string_view to_string(Attribution attribution) {
  return attribution == Attribution::proportional ? "proportional" : "start_bin";
}

AggregationKey parse_key(std::string_view s) {
  for (auto k : {AggregationKey::cell, AggregationKey::user, AggregationKey::app})
    if (to_string(k) == s) return k;
  throw InvalidArgument("unknown aggregation key '" + std::string(s) + "'");
}

Metric parse_metric(std::string_view s) {
  for (auto m : {Metric::bytes_total, Metric::bytes_down, Metric::bytes_up, Metric::flow_count})
    if (to_string(m) == s) return m;
  throw InvalidArgument("unknown metric '" + std::string(s) + "'");
}

Attribution parse_attribution(std::string_view s) {
  for (auto a : {Attribution::proportional, Attribution::start_bin})
    if (to_string(a) == s) return a;
  throw InvalidArgument("unknown attribution '" + std::string(s) + "'");
}

}  // namespace cellgraph
