#include <gtest/gtest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "primes_lab/reporting.hpp"

using namespace primes_lab;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

class TempDir : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("primes_lab_reporting_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

CountSeries small_series() {
  CountSeries s;
  s.metadata = {"test", "A & B <chart>"};
  s.points = {make_point(2, 0, 1.5), make_point(3, 1, 2.0), make_point(10, 4, 4.342944819)};
  return s;
}

} // namespace

TEST(CsvRow, SeriesPointFormat) {
  EXPECT_EQ(csv_row(make_point(10, 4, 4.342944819)), "10,4,4.34294,0.92103,8.57362");
  EXPECT_EQ(csv_row(make_point(2, 0, 1.5)), "2,0,1.5,0.00000,");
  EXPECT_EQ(csv_row(make_point(10'000, 1380, 1590.2)), "10000,1380,1590.2,0.86782,15.23188");
}

TEST(CsvRow, SummaryRowModulusThirteen) {
  const auto table = sieve_primes(10'000);
  const auto s = summarize(monoid_census({13, 10'000}, table), EvalAt::largest);
  const std::string row = csv_row(s);
  EXPECT_EQ(row.rfind("13,9998,653,648.33,1.00720,0.00720,", 0), 0u) << row;
}

TEST(CsvRow, GaussianMapeRow) {
  EXPECT_EQ(csv_row(GaussianMapeRow{10'000'000, 7.2204}), "10000000,7.220");
  EXPECT_EQ(csv_row(GaussianMapeRow{1000, 19.10449}), "1000,19.104");
}

TEST_F(TempDir, EmptySeriesWritesHeaderOnly) {
  write_csv(CountSeries{}, path("empty.csv"));
  EXPECT_EQ(slurp(path("empty.csv")), std::string(kSeriesCsvHeader) + "\n");
}

TEST_F(TempDir, SummaryCsvHasHeader) {
  MonoidSummary s;
  s.d = 3;
  s.largest_element = 10'000;
  s.actual_count = 1380;
  s.estimate = 1590.2;
  s.r_d = 0.86781;
  s.abs_r_minus_1 = 0.13219;
  s.mape_pct = 9.05;
  write_csv(std::vector<MonoidSummary>{s}, path("summary.csv"));
  EXPECT_EQ(slurp(path("summary.csv")),
            "d,largest_element,actual_count,estimate,R_d,abs_R_minus_1,mape_pct\n"
            "3,10000,1380,1590.20,0.86781,0.13219,9.05\n");
}

TEST_F(TempDir, SeriesCsvRoundTrip) {
  const auto table = sieve_primes(5000);
  const auto census = monoid_census({7, 5000}, table);
  const auto series = build_series(census, monoid_estimator(7), Grid{8, 7, 714}.truncated(5000).view());
  write_csv(series, path("s.csv"));
  std::ifstream in(path("s.csv"));
  const auto back = read_series_csv(in);
  ASSERT_EQ(back.size(), series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& a = series.points[i];
    const auto& b = back.points[i];
    ASSERT_EQ(a.x, b.x);
    ASSERT_EQ(a.actual, b.actual);
    ASSERT_NEAR(a.estimate, b.estimate, 5e-6 * a.estimate);
    ASSERT_NEAR(a.ratio, b.ratio, 5e-6);
    ASSERT_EQ(a.pct_err.has_value(), b.pct_err.has_value());
    if (a.pct_err) {
      ASSERT_NEAR(*a.pct_err, *b.pct_err, 5e-6);
    }
  }
}

TEST(ReadSeriesCsv, RejectsMalformedInput) {
  std::istringstream no_header("1,2,3,4,5\n");
  EXPECT_THROW(read_series_csv(no_header), std::invalid_argument);
  std::istringstream short_row(std::string(kSeriesCsvHeader) + "\n1,2,3\n");
  EXPECT_THROW(read_series_csv(short_row), std::invalid_argument);
}

TEST(WriteCsv, UnwritablePathThrowsIoError) {
  EXPECT_THROW(write_csv(small_series(), "/nonexistent_dir_primes_lab/out.csv"), io_error);
  EXPECT_THROW(render_svg(small_series(), "/nonexistent_dir_primes_lab/out.svg"), io_error);
}

TEST(SvgChart, Structure) {
  const std::string svg = svg_chart(small_series());
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("width=\"800\" height=\"600\""), std::string::npos);
  EXPECT_EQ(occurrences(svg, "<polyline"), 2u);
  EXPECT_NE(svg.find("class=\"actual\""), std::string::npos);
  EXPECT_NE(svg.find("class=\"estimate\""), std::string::npos);
  EXPECT_NE(svg.find(">actual</text>"), std::string::npos);
  EXPECT_NE(svg.find(">estimate</text>"), std::string::npos);
  EXPECT_NE(svg.find("A &amp; B &lt;chart&gt;"), std::string::npos);
  EXPECT_EQ(occurrences(svg, "<circle"), 0u);
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
}

TEST(SvgChart, SinglePointGetsMarkers) {
  CountSeries s;
  s.points = {make_point(10'000, 1380, 1590.2)};
  const std::string svg = svg_chart(s);
  EXPECT_EQ(occurrences(svg, "<polyline"), 2u);
  EXPECT_EQ(occurrences(svg, "<circle"), 2u);
}

TEST(SvgChart, EmptySeriesThrows) {
  EXPECT_THROW(svg_chart(CountSeries{}), std::invalid_argument);
}

TEST(SvgChart, DecimatesLongSeries) {
  const auto table = sieve_primes(100'000);
  const auto series = build_series(table, classical_estimator(), Grid{2, 1, 99'999}.view());
  const std::string svg = svg_chart(series);
  const auto start = svg.find("points=\"");
  const auto end = svg.find('"', start + 8);
  const std::string pts = svg.substr(start + 8, end - start - 8);
  EXPECT_LE(occurrences(pts, ","), kSvgMaxPoints);
  EXPECT_GE(occurrences(pts, ","), kSvgMaxPoints / 2);
}

TEST_F(TempDir, SvgIsDeterministic) {
  render_svg(small_series(), path("a.svg"));
  render_svg(small_series(), path("b.svg"));
  EXPECT_EQ(slurp(path("a.svg")), slurp(path("b.svg")));
  EXPECT_EQ(slurp(path("a.svg")), svg_chart(small_series()));
}
