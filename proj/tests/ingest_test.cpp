#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <functional>

#include "support/synthetic.hpp"
#include "tdaee/error.hpp"
#include "tdaee/ingest.hpp"

using namespace tdaee;

namespace {

std::filesystem::path write(const std::filesystem::path& dir, const std::string& name,
                            const std::string& text) {
  std::ofstream(dir / name, std::ios::binary) << text;
  return dir / name;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no tdaee::Error thrown";
  return ErrorCode::Invariant;
}

PriceSeries series(std::string name, std::vector<Date> dates, std::vector<double> closes) {
  return {std::move(name), std::move(dates), std::move(closes)};
}

Date day(unsigned d) { return Date(2020, 1, d); }

class CsvTest : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = synthetic::scratch_dir("ingest"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CsvTest, ParsesRowsInDateOrder) {
  const auto p = write(dir_, "a.csv", "Date,Close\n2020-01-02,100.0\n2020-01-03,101.0\n");
  const auto s = load_csv(p, {});
  ASSERT_EQ(s.dates.size(), 2u);
  EXPECT_EQ(s.dates[0], Date(2020, 1, 2));
  EXPECT_EQ(s.dates[1], Date(2020, 1, 3));
  EXPECT_EQ(s.closes[0], 100.0);
  EXPECT_EQ(s.closes[1], 101.0);
  EXPECT_EQ(s.name, "a");
}

TEST_F(CsvTest, OutOfOrderRowsAreSorted) {
  const auto p = write(dir_, "a.csv", "Date,Close\n2020-01-03,101.0\n2020-01-02,100.0\n");
  const auto s = load_csv(p, {}, "A");
  EXPECT_EQ(s.dates[0], Date(2020, 1, 2));
  EXPECT_EQ(s.closes[0], 100.0);
  EXPECT_EQ(s.closes[1], 101.0);
  EXPECT_EQ(s.name, "A");
}

TEST_F(CsvTest, ZeroCloseIsRejected) {
  const auto p = write(dir_, "a.csv", "Date,Close\n2020-01-02,100.0\n2020-01-03,0.0\n");
  try {
    load_csv(p, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositivePrice);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.category(), ErrorCategory::Input);
  }
}

TEST_F(CsvTest, YahooStyleExportWithSelectedColumns) {
  const auto p = write(dir_, "y.csv",
                       "\xEF\xBB\xBF" "Date,Open,High,Low,Close,Adj Close,Volume\r\n"
                       "2020-01-02,1,2,0.5,10.5,\"1,234.5\",100\r\n"
                       "\r\n"
                       "2020-01-03,1,2,0.5,11.25,1240,100\r\n");
  const auto close = load_csv(p, {});
  EXPECT_EQ(close.closes, (std::vector<double>{10.5, 11.25}));
  CsvOptions adj;
  adj.close_column = "Adj Close";
  EXPECT_EQ(code_of([&] { load_csv(p, adj); }), ErrorCode::UnparsableRow);  // "1,234.5" is not a decimal
}

TEST_F(CsvTest, CustomDateFormat) {
  const auto p = write(dir_, "d.csv", "when;x,px\n02/01/2020,7\n03/01/2020,8\n");
  CsvOptions o{"when;x", "px", "%d/%m/%Y"};
  const auto s = load_csv(p, o);
  EXPECT_EQ(s.dates[1], Date(2020, 1, 3));
}

TEST_F(CsvTest, ErrorsCarryFileAndLine) {
  const auto missing = write(dir_, "m.csv", "Date,Open\n2020-01-02,1\n");
  EXPECT_EQ(code_of([&] { load_csv(missing, {}); }), ErrorCode::MissingColumn);

  const auto bad_date = write(dir_, "b.csv", "Date,Close\n2020-01-02,1\n2020-02-30,2\n");
  try {
    load_csv(bad_date, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnparsableRow);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.file(), bad_date.string());
  }

  const auto bad_close = write(dir_, "c.csv", "Date,Close\n2020-01-02,abc\n");
  EXPECT_EQ(code_of([&] { load_csv(bad_close, {}); }), ErrorCode::UnparsableRow);
  const auto short_row = write(dir_, "s.csv", "Date,Open,Close\n2020-01-02,1\n");
  EXPECT_EQ(code_of([&] { load_csv(short_row, {}); }), ErrorCode::UnparsableRow);
  const auto negative = write(dir_, "n.csv", "Date,Close\n2020-01-02,-3\n");
  EXPECT_EQ(code_of([&] { load_csv(negative, {}); }), ErrorCode::NonPositivePrice);
  const auto dup = write(dir_, "u.csv", "Date,Close\n2020-01-02,1\n2020-01-03,2\n2020-01-02,3\n");
  EXPECT_EQ(code_of([&] { load_csv(dup, {}); }), ErrorCode::DuplicateDate);
  EXPECT_EQ(code_of([&] { load_csv(dir_ / "nope.csv", {}); }), ErrorCode::Io);
}

TEST(Align, IdenticalDates) {
  const auto t = align({series("A", {day(2), day(3)}, {1, 2}), series("B", {day(2), day(3)}, {3, 4})});
  EXPECT_EQ(t.dates, (std::vector<Date>{day(2), day(3)}));
  EXPECT_EQ(t.series[1].closes, (std::vector<double>{3, 4}));
}

TEST(Align, IntersectionOfDates) {
  const auto t = align({series("A", {day(1), day(2), day(3)}, {1, 2, 3}),
                        series("B", {day(2), day(3), day(4)}, {20, 30, 40})});
  EXPECT_EQ(t.dates, (std::vector<Date>{day(2), day(3)}));
  EXPECT_EQ(t.series[0].closes, (std::vector<double>{2, 3}));
  EXPECT_EQ(t.series[1].closes, (std::vector<double>{20, 30}));
}

TEST(Align, DisjointDatesFail) {
  EXPECT_EQ(code_of([] {
              align({series("A", {day(1), day(2)}, {1, 2}), series("B", {day(3), day(4)}, {1, 2})});
            }),
            ErrorCode::EmptyIntersection);
}

TEST(Align, ForwardFillCarriesLastClose) {
  const auto t = align({series("A", {day(1), day(2), day(4)}, {1, 2, 4}),
                        series("B", {day(2), day(3), day(4)}, {20, 30, 40})},
                       AlignPolicy::ForwardFill);
  EXPECT_EQ(t.dates, (std::vector<Date>{day(2), day(3), day(4)}));
  EXPECT_EQ(t.series[0].closes, (std::vector<double>{2, 2, 4}));
  EXPECT_EQ(t.series[1].closes, (std::vector<double>{20, 30, 40}));
}

TEST(Align, Idempotent) {
  for (auto policy : {AlignPolicy::Intersection, AlignPolicy::ForwardFill}) {
    const auto once = align({series("A", {day(1), day(2), day(4), day(6)}, {1, 2, 4, 6}),
                             series("B", {day(2), day(3), day(4), day(5)}, {2, 3, 4, 5})},
                            policy);
    const auto twice = align(once.series, policy);
    EXPECT_EQ(twice.dates, once.dates);
    for (std::size_t i = 0; i < once.series.size(); ++i) {
      EXPECT_EQ(twice.series[i].closes, once.series[i].closes);
    }
  }
}

TEST(LogReturns, Examples) {
  auto one = [](std::vector<double> closes) {
    std::vector<Date> dates;
    for (std::size_t i = 0; i < closes.size(); ++i) dates.push_back(day(static_cast<unsigned>(i + 1)));
    return log_returns(align({series("A", dates, closes)})).values[0];
  };
  EXPECT_EQ(one({100, 100}), (std::vector<double>{0.0}));
  EXPECT_NEAR(one({100, 100 * std::exp(1.0)})[0], 1.0, 1e-15);
  const auto r = one({2, 4, 2});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0], 0.69314718055994531, 1e-15);
  EXPECT_NEAR(r[1], -0.69314718055994531, 1e-15);
  EXPECT_EQ(code_of([&] { one({5}); }), ErrorCode::TooShort);
}

TEST(LogReturns, DatesAndLengths) {
  const auto t = align({series("A", {day(1), day(2), day(3)}, {1, 2, 3}),
                        series("B", {day(1), day(2), day(3)}, {3, 2, 1})});
  const auto r = log_returns(t);
  EXPECT_EQ(r.rows(), 2u);
  EXPECT_EQ(r.cols(), 2u);
  EXPECT_EQ(r.dates, (std::vector<Date>{day(2), day(3)}));
  EXPECT_EQ(r.names, (std::vector<std::string>{"A", "B"}));
}

TEST(LogReturns, ExpCumsumRoundTrip) {
  const auto m = synthetic::generate(7, {.returns = 300, .series = 3});
  std::vector<PriceSeries> input;
  for (std::size_t i = 0; i < m.prices.size(); ++i) input.push_back(series("S", m.dates, m.prices[i]));
  const auto table = align(input);
  const auto r = log_returns(table);
  for (std::size_t i = 0; i < r.rows(); ++i) {
    EXPECT_EQ(r.values[i].size(), table.length() - 1);
    double log_price = std::log(table.series[i].closes[0]);
    for (std::size_t j = 0; j < r.cols(); ++j) {
      log_price += r.values[i][j];
      const double expected = table.series[i].closes[j + 1];
      EXPECT_NEAR(std::exp(log_price) / expected, 1.0, 1e-9);
    }
  }
}

TEST_F(CsvTest, ManifestResolvesRelativePaths) {
  std::filesystem::create_directories(dir_ / "data");
  write(dir_, "m.json",
        R"({"series": [{"name": "X", "path": "data/x.csv"},
                       {"name": "Y", "path": "y.csv", "date_column": "d", "close_column": "c"}]})");
  const auto entries = load_manifest(dir_ / "m.json");
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[0].path, dir_ / "data/x.csv");
  EXPECT_EQ(entries[0].csv.close_column, "Close");
  EXPECT_EQ(entries[1].csv.date_column, "d");
  EXPECT_EQ(entries[1].csv.close_column, "c");
}

TEST_F(CsvTest, ManifestErrors) {
  write(dir_, "dup.json", R"({"series": [{"name": "X", "path": "a"}, {"name": "X", "path": "b"}]})");
  EXPECT_EQ(code_of([&] { load_manifest(dir_ / "dup.json"); }), ErrorCode::BadManifest);
  write(dir_, "bad.json", "{not json");
  EXPECT_EQ(code_of([&] { load_manifest(dir_ / "bad.json"); }), ErrorCode::BadManifest);
  write(dir_, "empty.json", R"({"series": []})");
  EXPECT_EQ(code_of([&] { load_manifest(dir_ / "empty.json"); }), ErrorCode::BadManifest);
  write(dir_, "noname.json", R"({"series": [{"path": "a"}]})");
  EXPECT_EQ(code_of([&] { load_manifest(dir_ / "noname.json"); }), ErrorCode::BadManifest);
  EXPECT_EQ(code_of([&] { load_manifest(dir_ / "missing.json"); }), ErrorCode::Io);
}

TEST(DateParse, RejectsImpossibleDates) {
  EXPECT_FALSE(Date::parse("2021-02-29"));
  EXPECT_FALSE(Date::parse("2020-13-01"));
  EXPECT_FALSE(Date::parse("2020-01-01x"));
  EXPECT_TRUE(Date::parse("2020-02-29"));
  EXPECT_EQ(Date::parse("2020-02-29")->iso(), "2020-02-29");
  EXPECT_THROW(Date(2021, 2, 29), Error);
}
