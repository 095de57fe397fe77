#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace cellgraph {

// One data-session row of a flow (XDR) export.
struct FlowRecord {
  std::string user_id;
  std::string cell_id;
  std::int64_t t_start = 0;  // epoch seconds, UTC
  std::int64_t t_end = 0;
  std::uint64_t bytes_up = 0;
  std::uint64_t bytes_down = 0;
  std::uint64_t pkts_up = 0;
  std::uint64_t pkts_down = 0;
  std::string app_id;
  std::string host;  // may be empty

  std::uint64_t bytes_total() const noexcept { return bytes_up + bytes_down; }

  friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

struct CallRecord {
  std::string caller_id;
  std::string callee_id;
  std::int64_t t_start = 0;
  std::int64_t duration_s = 0;

  friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

struct CellInfo {
  std::string cell_id;
  double lat = 0.0;
  double lon = 0.0;
  std::string poi_label;  // may be empty

  friend bool operator==(const CellInfo&, const CellInfo&) = default;
};

struct Reject {
  std::size_t line = 0;  // 1-based; the header is line 1
  std::string reason;

  friend bool operator==(const Reject&, const Reject&) = default;
};

struct ParseReport {
  std::size_t rows_total = 0;
  std::size_t rows_ok = 0;
  std::size_t rows_rejected = 0;
  std::vector<Reject> rejects;
};

inline constexpr std::string_view kFlowHeader =
    "user_id,cell_id,t_start,t_end,bytes_up,bytes_down,pkts_up,pkts_down,app_id,host";
inline constexpr std::string_view kCallHeader = "caller_id,callee_id,t_start,duration_s";
inline constexpr std::string_view kCellHeader = "cell_id,lat,lon,poi_label";

// Line-oriented CSV front end shared by the record readers. Holds one line at a
// time, so memory stays bounded by the longest line rather than the file size.
class CsvLineSource {
 public:
  // Reads and checks the header; throws SchemaError if it is absent or differs.
  CsvLineSource(std::istream& in, std::string_view header, std::size_t field_count);

  // Next non-blank data row split into fields, or false at end of input.
  bool next_row();

  const std::vector<std::string_view>& fields() const noexcept { return fields_; }
  std::size_t line_number() const noexcept { return line_no_; }
  // Number of fields found on the current row (may differ from the schema).
  std::size_t raw_field_count() const noexcept { return fields_.size(); }
  std::size_t expected_fields() const noexcept { return field_count_; }
  std::size_t buffer_capacity() const noexcept { return line_.capacity(); }

 private:
  std::istream& in_;
  std::string line_;
  std::vector<std::string_view> fields_;
  std::size_t line_no_ = 0;
  std::size_t field_count_;
};

// Streaming readers: each next() yields the following valid record, recording
// rejected rows in report(). In strict mode the first reject throws ParseError.
class FlowReader {
 public:
  explicit FlowReader(std::istream& in, bool strict = false);
  std::optional<FlowRecord> next();
  const ParseReport& report() const noexcept { return report_; }
  std::size_t buffer_capacity() const noexcept { return src_.buffer_capacity(); }

 private:
  CsvLineSource src_;
  bool strict_;
  ParseReport report_;
};

class CallReader {
 public:
  explicit CallReader(std::istream& in, bool strict = false);
  std::optional<CallRecord> next();
  const ParseReport& report() const noexcept { return report_; }

 private:
  CsvLineSource src_;
  bool strict_;
  ParseReport report_;
};

class CellReader {
 public:
  explicit CellReader(std::istream& in, bool strict = false);
  std::optional<CellInfo> next();
  const ParseReport& report() const noexcept { return report_; }

 private:
  CsvLineSource src_;
  bool strict_;
  ParseReport report_;
  std::unordered_set<std::string> seen_;
};

template <typename Record>
struct Parsed {
  std::vector<Record> records;
  ParseReport report;
};

Parsed<FlowRecord> parse_flow_csv(std::istream& in, bool strict = false);
Parsed<CallRecord> parse_call_csv(std::istream& in, bool strict = false);
Parsed<CellInfo> parse_cells_csv(std::istream& in, bool strict = false);

// Writers emit the canonical header. Fields that cannot be represented
// (embedded comma or newline) throw InvalidArgument.
void write_flow_csv(std::ostream& out, std::span<const FlowRecord> records);
void write_call_csv(std::ostream& out, std::span<const CallRecord> records);
void write_cells_csv(std::ostream& out, std::span<const CellInfo> cells);

}  // namespace cellgraph
