#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <random>

#include "unimix/io.hpp"

using namespace unimix;

TEST_CASE("format_double round-trips exactly") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> unif(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    const double x = unif(gen);
    REQUIRE(parse_double(format_double(x)) == x);
  }
  for (double x : {0.0, -0.0, 1.0 / 3.0, 5.991464547107982, 1e-300, 123456789.123456789}) {
    REQUIRE(parse_double(format_double(x)) == x);
  }
}

TEST_CASE("parse_double rejects junk") {
  CHECK_THROWS_AS(parse_double("abc", 3), parse_error);
  CHECK_THROWS_AS(parse_double("", 3), parse_error);
  CHECK_THROWS_AS(parse_double("1.0x", 3), parse_error);
  CHECK(parse_double("  2.5 ") == 2.5);
  try {
    parse_double("nope", 12);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 12);
  }
}

TEST_CASE("read_data_file reports the offending line") {
  const std::string path = "test_io_data.tmp";
  {
    std::ofstream out(path);
    out << "1.5\n\n-2.25e-1\n  3\n";
  }
  const auto values = read_data_file(path);
  REQUIRE(values.size() == 3);
  CHECK(values[0] == 1.5);
  CHECK(values[1] == -0.225);
  CHECK(values[2] == 3.0);
  {
    std::ofstream out(path);
    out << "1.0\noops\n";
  }
  try {
    read_data_file(path);
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 2);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_data_file("does_not_exist.dat"), parse_error);
}

TEST_CASE("csv line splitting") {
  const auto fields = split_csv_line("i,SLRT,0.5,universal,0,0.002");
  REQUIRE(fields.size() == 6);
  CHECK(fields[2] == "0.5");
  const auto with_empty = split_csv_line("i,LRT,,rule,0,0.05");
  REQUIRE(with_empty.size() == 6);
  CHECK(with_empty[2].empty());
}
