#include "cellgraph/records.hpp"

#include <istream>
#include <ostream>

#include "cellgraph/error.hpp"
#include "text.hpp"

namespace cellgraph {
namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

// Row decoding reports the first problem as a reason string; empty means ok.
using Reason = std::string;

template <typename Int>
Reason read_int(std::string_view field, std::string_view name, Int& out) {
  if (auto v = text::parse_int<Int>(field)) {
    out = *v;
    return {};
  }
  if (!field.empty() && field.front() == '-') return "negative " + std::string(name);
  return "bad " + std::string(name);
}

Reason read_id(std::string_view field, std::string_view name, std::string& out) {
  if (field.empty()) return "empty " + std::string(name);
  out.assign(field);
  return {};
}

Reason field_count_reason(const CsvLineSource& src) {
  return "expected " + std::to_string(src.expected_fields()) + " fields, got " +
         std::to_string(src.raw_field_count());
}

// Shared reader loop: decode rows until one succeeds or input ends.
template <typename Record, typename Decode>
std::optional<Record> next_record(CsvLineSource& src, bool strict, ParseReport& report,
                                  Decode&& decode) {
  while (src.next_row()) {
    ++report.rows_total;
    Record rec;
    Reason why = src.raw_field_count() == src.expected_fields() ? decode(src.fields(), rec)
                                                                 : field_count_reason(src);
    if (why.empty()) {
      ++report.rows_ok;
      return rec;
    }
    ++report.rows_rejected;
    report.rejects.push_back({src.line_number(), why});
    if (strict) throw ParseError(src.line_number(), why);
  }
  return std::nullopt;
}

Reason decode_flow(const std::vector<std::string_view>& f, FlowRecord& r) {
  Reason why;
  if (!(why = read_id(f[0], "user_id", r.user_id)).empty()) return why;
  if (!(why = read_id(f[1], "cell_id", r.cell_id)).empty()) return why;
  if (!(why = read_int(f[2], "t_start", r.t_start)).empty()) return why;
  if (!(why = read_int(f[3], "t_end", r.t_end)).empty()) return why;
  if (!(why = read_int(f[4], "bytes_up", r.bytes_up)).empty()) return why;
  if (!(why = read_int(f[5], "bytes_down", r.bytes_down)).empty()) return why;
  if (!(why = read_int(f[6], "pkts_up", r.pkts_up)).empty()) return why;
  if (!(why = read_int(f[7], "pkts_down", r.pkts_down)).empty()) return why;
  if (!(why = read_id(f[8], "app_id", r.app_id)).empty()) return why;
  r.host.assign(f[9]);
  if (r.t_end < r.t_start) return "t_end < t_start";
  return {};
}

Reason decode_call(const std::vector<std::string_view>& f, CallRecord& r) {
  Reason why;
  if (!(why = read_id(f[0], "caller_id", r.caller_id)).empty()) return why;
  if (!(why = read_id(f[1], "callee_id", r.callee_id)).empty()) return why;
  if (!(why = read_int(f[2], "t_start", r.t_start)).empty()) return why;
  if (!(why = read_int(f[3], "duration_s", r.duration_s)).empty()) return why;
  if (r.duration_s < 0) return "negative duration_s";
  if (r.caller_id == r.callee_id) return "self-call";
  return {};
}

Reason decode_cell(const std::vector<std::string_view>& f, CellInfo& r) {
  Reason why;
  if (!(why = read_id(f[0], "cell_id", r.cell_id)).empty()) return why;
  auto lat = text::parse_double(f[1]);
  if (!lat) return "bad lat";
  auto lon = text::parse_double(f[2]);
  if (!lon) return "bad lon";
  if (!(*lat >= -90.0 && *lat <= 90.0)) return "lat out of range";
  if (!(*lon >= -180.0 && *lon <= 180.0)) return "lon out of range";
  r.lat = *lat;
  r.lon = *lon;
  r.poi_label.assign(f[3]);
  return {};
}

void require_representable(std::string_view field, std::string_view name) {
  if (!text::representable(field))
    throw InvalidArgument(std::string(name) + " contains a separator: '" + std::string(field) + "'");
}

}  // namespace

CsvLineSource::CsvLineSource(std::istream& in, std::string_view header, std::size_t field_count)
    : in_(in), field_count_(field_count) {
  if (!std::getline(in_, line_)) throw SchemaError("missing header, expected '" + std::string(header) + "'");
  ++line_no_;
  strip_cr(line_);
  std::string_view got = line_;
  if (got.starts_with("\xEF\xBB\xBF")) got.remove_prefix(3);
  if (got != header)
    throw SchemaError("unexpected header '" + std::string(got) + "', expected '" + std::string(header) + "'");
}

bool CsvLineSource::next_row() {
  while (std::getline(in_, line_)) {
    ++line_no_;
    strip_cr(line_);
    if (line_.empty()) continue;
    text::split(line_, ',', fields_);
    return true;
  }
  fields_.clear();
  return false;
}

FlowReader::FlowReader(std::istream& in, bool strict) : src_(in, kFlowHeader, 10), strict_(strict) {}

std::optional<FlowRecord> FlowReader::next() {
  return next_record<FlowRecord>(src_, strict_, report_, decode_flow);
}

CallReader::CallReader(std::istream& in, bool strict) : src_(in, kCallHeader, 4), strict_(strict) {}

std::optional<CallRecord> CallReader::next() {
  return next_record<CallRecord>(src_, strict_, report_, decode_call);
}

CellReader::CellReader(std::istream& in, bool strict) : src_(in, kCellHeader, 4), strict_(strict) {}

std::optional<CellInfo> CellReader::next() {
  return next_record<CellInfo>(src_, strict_, report_,
                               [this](const std::vector<std::string_view>& f, CellInfo& r) {
                                 Reason why = decode_cell(f, r);
                                 if (why.empty() && !seen_.insert(r.cell_id).second)
                                   why = "duplicate cell_id";
                                 return why;
                               });
}

namespace {

template <typename Reader, typename Record>
Parsed<Record> drain(Reader& reader) {
  Parsed<Record> out;
  while (auto rec = reader.next()) out.records.push_back(std::move(*rec));
  out.report = reader.report();
  return out;
}

}  // namespace

Parsed<FlowRecord> parse_flow_csv(std::istream& in, bool strict) {
  FlowReader reader(in, strict);
  return drain<FlowReader, FlowRecord>(reader);
}

Parsed<CallRecord> parse_call_csv(std::istream& in, bool strict) {
  CallReader reader(in, strict);
  return drain<CallReader, CallRecord>(reader);
}

Parsed<CellInfo> parse_cells_csv(std::istream& in, bool strict) {
  CellReader reader(in, strict);
  return drain<CellReader, CellInfo>(reader);
}

void write_flow_csv(std::ostream& out, std::span<const FlowRecord> records) {
  out << kFlowHeader << '\n';
  for (const auto& r : records) {
    require_representable(r.user_id, "user_id");
    require_representable(r.cell_id, "cell_id");
    require_representable(r.app_id, "app_id");
    require_representable(r.host, "host");
    out << r.user_id << ',' << r.cell_id << ',' << r.t_start << ',' << r.t_end << ',' << r.bytes_up
        << ',' << r.bytes_down << ',' << r.pkts_up << ',' << r.pkts_down << ',' << r.app_id << ','
        << r.host << '\n';
  }
}

void write_call_csv(std::ostream& out, std::span<const CallRecord> records) {
  out << kCallHeader << '\n';
  for (const auto& r : records) {
    require_representable(r.caller_id, "caller_id");
    require_representable(r.callee_id, "callee_id");
    out << r.caller_id << ',' << r.callee_id << ',' << r.t_start << ',' << r.duration_s << '\n';
  }
}

void write_cells_csv(std::ostream& out, std::span<const CellInfo> cells) {
  out << kCellHeader << '\n';
  for (const auto& c : cells) {
    require_representable(c.cell_id, "cell_id");
    require_representable(c.poi_label, "poi_label");
    out << c.cell_id << ',' << text::format_double(c.lat) << ',' << text::format_double(c.lon) << ','
        << c.poi_label << '\n';
  }
}

}  // namespace cellgraph
