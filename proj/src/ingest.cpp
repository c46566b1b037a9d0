#include "tdaee/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string_view>

#include <json.hpp>

#include "tdaee/error.hpp"

namespace tdaee {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_record(std::string_view line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back(trim(field));
      field.clear();
    } else {
      field += c;
    }
  }
  fields.emplace_back(trim(field));
  return fields;
}

std::optional<double> parse_decimal(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::size_t column_index(const std::vector<std::string>& header,
                         const std::string& column, const std::string& file) {
  const auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) {
    throw Error(ErrorCode::MissingColumn, "column '" + column + "' not found", file, 1);
  }
  return static_cast<std::size_t>(it - header.begin());
}

}  // namespace

PriceSeries load_csv(const std::filesystem::path& path, const CsvOptions& options,
                     std::string name) {
  const std::string file = path.string();
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open file", file);

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MissingColumn, "empty file", file, 1);
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto header = split_record(line);
  const std::size_t date_col = column_index(header, options.date_column, file);
  const std::size_t close_col = column_index(header, options.close_column, file);

  struct Row {
    Date date;
    double close;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_record(line);
    if (fields.size() <= std::max(date_col, close_col)) {
      throw Error(ErrorCode::UnparsableRow, "too few fields", file, line_no);
    }
    const auto date = Date::parse(fields[date_col], options.date_format);
    if (!date) {
      throw Error(ErrorCode::UnparsableRow, "bad date '" + fields[date_col] + "'", file,
                  line_no);
    }
    const auto close = parse_decimal(fields[close_col]);
    if (!close) {
      throw Error(ErrorCode::UnparsableRow, "bad close '" + fields[close_col] + "'", file,
                  line_no);
    }
    if (*close <= 0.0) {
      throw Error(ErrorCode::NonPositivePrice, "close must be positive", file, line_no);
    }
    rows.push_back({*date, *close, line_no});
  }

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].date == rows[i - 1].date) {
      throw Error(ErrorCode::DuplicateDate, "duplicate date " + rows[i].date.iso(), file,
                  std::max(rows[i].line, rows[i - 1].line));
    }
  }

  PriceSeries series;
  series.name = name.empty() ? path.stem().string() : std::move(name);
  series.dates.reserve(rows.size());
  series.closes.reserve(rows.size());
  for (const auto& row : rows) {
    series.dates.push_back(row.date);
    series.closes.push_back(row.close);
  }
  return series;
}

PriceTable align(const std::vector<PriceSeries>& series, AlignPolicy policy) {
  if (series.empty()) throw Error(ErrorCode::InvalidArgument, "align needs at least one series");
  for (const auto& s : series) {
    if (s.dates.empty() || s.dates.size() != s.closes.size()) {
      throw Error(ErrorCode::InvalidArgument, "series '" + s.name + "' is empty or ragged");
    }
  }

  std::vector<Date> axis;
  if (policy == AlignPolicy::Intersection) {
    axis = series.front().dates;
    for (std::size_t k = 1; k < series.size(); ++k) {
      std::vector<Date> next;
      std::set_intersection(axis.begin(), axis.end(), series[k].dates.begin(),
                            series[k].dates.end(), std::back_inserter(next));
      axis = std::move(next);
    }
  } else {
    Date start = series.front().dates.front();
    for (const auto& s : series) start = std::max(start, s.dates.front());
    std::set<Date> all;
    for (const auto& s : series) {
      for (const auto& d : s.dates) {
        if (d >= start) all.insert(d);
      }
    }
    axis.assign(all.begin(), all.end());
  }
  if (axis.empty()) throw Error(ErrorCode::EmptyIntersection, "no common dates across series");

  PriceTable table;
  table.dates = axis;
  table.series.reserve(series.size());
  for (const auto& s : series) {
    PriceSeries out;
    out.name = s.name;
    out.dates = axis;
    out.closes.reserve(axis.size());
    // Both axis and s.dates are sorted; walk them together.
    std::size_t k = 0;
    for (const auto& d : axis) {
      while (k + 1 < s.dates.size() && s.dates[k + 1] <= d) ++k;
      check_invariant(s.dates[k] <= d, "aligned date precedes series start");
      if (policy == AlignPolicy::Intersection) {
        check_invariant(s.dates[k] == d, "intersection date missing from series");
      }
      out.closes.push_back(s.closes[k]);
    }
    table.series.push_back(std::move(out));
  }
  return table;
}

ReturnMatrix log_returns(const PriceTable& table) {
  const std::size_t l = table.length();
  if (l < 2) throw Error(ErrorCode::TooShort, "need at least two aligned dates");
  ReturnMatrix out;
  out.dates.assign(table.dates.begin() + 1, table.dates.end());
  for (const auto& s : table.series) {
    check_invariant(s.closes.size() == l, "price table series length mismatch");
    std::vector<double> row(l - 1);
    for (std::size_t j = 0; j + 1 < l; ++j) {
      row[j] = std::log(s.closes[j + 1] / s.closes[j]);
      check_invariant(std::isfinite(row[j]), "non-finite log-return");
    }
    out.names.push_back(s.name);
    out.values.push_back(std::move(row));
  }
  return out;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  const std::string file = path.string();
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open manifest", file);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BadManifest, e.what(), file);
  }
  if (!doc.is_object() || !doc.contains("series") || !doc["series"].is_array() ||
      doc["series"].empty()) {
    throw Error(ErrorCode::BadManifest, "expected a non-empty \"series\" array", file);
  }
  const auto base = path.parent_path();
  std::vector<ManifestEntry> entries;
  std::set<std::string> names;
  for (const auto& item : doc["series"]) {
    try {
      ManifestEntry e;
      e.name = item.at("name").get<std::string>();
      e.path = base / item.at("path").get<std::string>();
      e.csv.date_column = item.value("date_column", std::string("Date"));
      e.csv.close_column = item.value("close_column", std::string("Close"));
      e.csv.date_format = item.value("date_format", std::string("%Y-%m-%d"));
      if (!names.insert(e.name).second) {
        throw Error(ErrorCode::BadManifest, "duplicate series name '" + e.name + "'", file);
      }
      entries.push_back(std::move(e));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::BadManifest, e.what(), file);
    }
  }
  return entries;
}

}  // namespace tdaee
