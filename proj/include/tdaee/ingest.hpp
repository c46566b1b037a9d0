#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tdaee/date.hpp"

namespace tdaee {

// One series of daily closes, sorted by date.
struct PriceSeries {
  std::string name;
  std::vector<Date> dates;
  std::vector<double> closes;
};

// Aligned closes: every series has exactly one value per date.
struct PriceTable {
  std::vector<Date> dates;
  std::vector<PriceSeries> series;

  std::size_t length() const { return dates.size(); }
};

// values[i][j] = ln(P[i][j+1] / P[i][j]); dates[j] is the date of P[i][j+1].
struct ReturnMatrix {
  std::vector<Date> dates;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;

  std::size_t rows() const { return values.size(); }
  std::size_t cols() const { return dates.size(); }
};

enum class AlignPolicy {
  Intersection,  // keep dates present in every series
  ForwardFill,   // union of dates after the last series starts; gaps carry
                 // the previous close forward
};

struct CsvOptions {
  std::string date_column = "Date";
  std::string close_column = "Close";
  std::string date_format = "%Y-%m-%d";
};

// Reads a headered CSV file. Rows are returned in ascending date order.
// Throws Error with MissingColumn, UnparsableRow, DuplicateDate,
// NonPositivePrice or Io.
PriceSeries load_csv(const std::filesystem::path& path, const CsvOptions& options,
                     std::string name = {});

PriceTable align(const std::vector<PriceSeries>& series,
                 AlignPolicy policy = AlignPolicy::Intersection);

// Throws TooShort when the table has fewer than two dates.
ReturnMatrix log_returns(const PriceTable& table);

struct ManifestEntry {
  std::string name;
  std::filesystem::path path;  // resolved against the manifest's directory
  CsvOptions csv;
};

// Reads {"series": [{"name", "path", "date_column", "close_column"}]}.
// date_column/close_column default to "Date"/"Close".
std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

}  // namespace tdaee
