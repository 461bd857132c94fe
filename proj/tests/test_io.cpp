#include <doctest.h>

#include <charconv>
#include <filesystem>
#include <fstream>

#include "ddqe/io/config.hpp"
#include "ddqe/io/csv.hpp"
#include "ddqe/io/svg.hpp"
#include "ddqe/io/toml.hpp"

using namespace ddqe::io;

TEST_SUITE_BEGIN("io");

TEST_CASE("toml: scalars, arrays, sections, comments") {
  const std::string text = R"(
# run configuration
scenario = "central-spin"   # trailing comment
seed = 42
omega = 1.5
flag = true
xs = [1.0, 2, 3.5]
[out]
path = "results"
)";
  const TomlTable t = parse_toml(text);
  CHECK(t.at("scenario").as_string() == "central-spin");
  CHECK(t.at("seed").as_int() == 42);
  CHECK(t.at("omega").as_number() == doctest::Approx(1.5));
  CHECK(t.at("flag").as_bool());
  REQUIRE(t.at("xs").as_array().size() == 3);
  CHECK(t.at("xs").as_array()[1].as_number() == doctest::Approx(2.0));
  CHECK(t.at("out.path").as_string() == "results");
}

TEST_CASE("toml: malformed input is rejected with line info") {
  CHECK_THROWS_WITH_AS(parse_toml("a = 1\na = 2\n"),
                       doctest::Contains("duplicate key"), std::runtime_error);
  CHECK_THROWS_AS(parse_toml("novalue =\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_toml("x = [1, 2\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_toml("bad line\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_toml("k = nonsense\n"), std::runtime_error);
}

TEST_CASE("config: minimal central-spin accepted") {
  const auto cfg = parse_config(
      "scenario = \"central-spin\"\nomega = 1.0\ndelta_sq_mean = 0.01\n"
      "case = \"iii\"\nK = 1000\nseed = 42\n");
  CHECK(cfg.scenario == Scenario::central_spin);
  CHECK(cfg.seed == 42);
  CHECK(cfg.cs.K == 1000);
  CHECK(cfg.cs.case_label == "iii");
}

TEST_CASE("config: rejections name the offending key") {
  // missing seed
  CHECK_THROWS_WITH_AS(parse_config("scenario = \"central-spin\"\ncase = \"i\"\n"),
                       doctest::Contains("seed"), ConfigError);
  // negative K
  CHECK_THROWS_WITH_AS(parse_config("scenario = \"central-spin\"\ncase = \"i\"\n"
                                    "seed = 1\nK = -1\n"),
                       doctest::Contains("'K'"), ConfigError);
  // unknown scenario
  CHECK_THROWS_WITH_AS(parse_config("scenario = \"squeeze\"\nseed = 1\n"),
                       doctest::Contains("scenario"), ConfigError);
  // unknown key (strict mode)
  CHECK_THROWS_WITH_AS(parse_config("scenario = \"central-spin\"\ncase = \"i\"\n"
                                    "seed = 1\nbanana = 3\n"),
                       doctest::Contains("banana"), ConfigError);
  // scenario-mismatched key
  CHECK_THROWS_WITH_AS(parse_config("scenario = \"validate\"\nseed = 1\np0 = 2.0\n"),
                       doctest::Contains("p0"), ConfigError);
}

TEST_CASE("config round trip: serialize(parse(text)) parses equal") {
  const std::string text =
      "scenario = \"dirac\"\nseed = 7\np0 = 2.0\nc0 = 0.08\nell = 1.0\n"
      "sigma = 4.0\nt_max = 10.0\npoints = 5\nsnapshot_times = [2.0, 8.0]\n"
      "kernel_mode = \"large-time\"\nK = 12\nn = 1024\n";
  const RunConfig a = parse_config(text);
  const RunConfig b = parse_config(serialize_config(a));
  CHECK(a == b);
}

TEST_CASE("csv: deterministic bytes and shortest round-trip numbers") {
  CsvTable t({"t", "x"}, {"s", "m"});
  t.add_row({0.1, 1.0 / 3.0});
  t.add_row({0.2, 2.0e-17});
  const std::string s1 = t.to_string();
  const std::string s2 = t.to_string();
  CHECK(s1 == s2);
  CHECK(s1.substr(0, 4) == "t,x\n");
  CHECK(s1.find("# units: s,m\n") != std::string::npos);

  // every rendered number reparses to the exact double
  const std::string third = format_double(1.0 / 3.0);
  double back = 0.0;
  std::from_chars(third.data(), third.data() + third.size(), back);
  CHECK(back == 1.0 / 3.0);
  CHECK(third.size() <= 24);  // <= 17 significant digits plus sign/exponent
}

TEST_CASE("csv: rejects ragged and non-finite rows") {
  CsvTable t({"a", "b"}, {"-", "-"});
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(t.add_row({1.0, std::numeric_limits<double>::infinity()}),
                  std::domain_error);
}

TEST_CASE("csv: save/load round trip") {
  const auto path = std::filesystem::temp_directory_path() / "ddqe_csv_test.csv";
  CsvTable t({"t", "y"}, {"s", "-"});
  t.add_row({0.0, 1.25});
  t.add_row({0.5, -3.75});
  t.save(path.string());
  const CsvTable back = CsvTable::load(path.string());
  REQUIRE(back.rows() == 2);
  CHECK(back.at(1, 1) == -3.75);
  CHECK(back.column_index("y") == 1);
  std::filesystem::remove(path);
}

TEST_CASE("svg: single and dual series, deterministic, validated") {
  CsvTable t({"t", "purity_me", "purity_mc"}, {"1/omega", "1", "1"});
  for (int i = 0; i <= 10; ++i)
    t.add_row({0.1 * i, 1.0 - 0.01 * i, 1.0 - 0.011 * i});

  PlotSpec one;
  one.x_column = "t";
  one.y_columns = {"purity_me"};
  const std::string svg1 = emit_svg(t, one);
  std::size_t count = 0, pos = 0;
  while ((pos = svg1.find("<polyline", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  CHECK(count == 1);

  PlotSpec two = one;
  two.y_columns = {"purity_me", "purity_mc"};
  const std::string svg2 = emit_svg(t, two);
  count = 0;
  pos = 0;
  while ((pos = svg2.find("<polyline", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  CHECK(count == 2);
  // distinct dash patterns for the two sources
  CHECK(svg2.find("stroke-dasharray") != std::string::npos);
  CHECK(svg2 == emit_svg(t, two));

  CsvTable empty({"t"}, {"s"});
  CHECK_THROWS_AS(emit_svg(empty, one), std::invalid_argument);
  PlotSpec missing = one;
  missing.y_columns = {"nope"};
  CHECK_THROWS_AS(emit_svg(t, missing), std::invalid_argument);
}

TEST_SUITE_END();
