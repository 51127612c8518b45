#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rewire/manifest.hpp"
#include "rewire/plot.hpp"

using namespace rewire;

TEST_CASE("manifest parses keys, comments, and blank lines") {
  auto m = Manifest::parse(
      "# run configuration\n"
      "model = BA\n"
      "n = 1000\n"
      "\n"
      "gamma_targets = 2.1, 2.5, 3.5   # sweep\n"
      "epsilon = 0.05\n");
  CHECK(m.has("model"));
  CHECK(m.get_string("model") == "BA");
  CHECK(m.get_int("n") == 1000);
  CHECK(m.get_double("epsilon") == doctest::Approx(0.05));
  auto gs = m.get_double_list("gamma_targets");
  REQUIRE(gs.size() == 3);
  CHECK(gs[0] == doctest::Approx(2.1));
  CHECK(gs[2] == doctest::Approx(3.5));
  CHECK_FALSE(m.has("missing"));
}

TEST_CASE("manifest defaults apply only when the key is absent") {
  auto m = Manifest::parse("n = 7\n");
  CHECK(m.get_int("n", 99) == 7);
  CHECK(m.get_int("reps", 99) == 99);
  CHECK(m.get_double("eps", 0.25) == doctest::Approx(0.25));
  CHECK(m.get_string("model", "BA") == "BA");
}

TEST_CASE("manifest errors name the offending key or line") {
  CHECK_THROWS_AS(Manifest::parse("n 7\n"), ManifestError);       // no '='
  CHECK_THROWS_AS(Manifest::parse("n = 1\nn = 2\n"), ManifestError);
  auto m = Manifest::parse("n = seven\nl_grid = 1, x, 3\n");
  CHECK_THROWS_AS(m.get_int("n"), ManifestError);
  CHECK_THROWS_AS(m.get_int_list("l_grid"), ManifestError);
  CHECK_THROWS_AS(m.get_string("absent"), ManifestError);
  try {
    m.get_string("absent");
  } catch (const ManifestError& e) {
    CHECK(std::string(e.what()).find("absent") != std::string::npos);
  }
}

TEST_CASE("manifest hash is stable and content-sensitive") {
  auto a = Manifest::parse("n = 5\n");
  auto b = Manifest::parse("n = 5\n");
  auto c = Manifest::parse("n = 6\n");
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.hash() != 0);
}

TEST_CASE("int list parsing") {
  auto m = Manifest::parse("grid = 0,1, 2,  35\nsingle = 4\n");
  auto g = m.get_int_list("grid");
  CHECK(g == std::vector<int>{0, 1, 2, 35});
  CHECK(m.get_int_list("single") == std::vector<int>{4});
}

TEST_CASE("csv reader round-trips numeric tables") {
  std::istringstream in(
      "# seed=5\n"
      "time,gamma_f\n"
      "0.0,2.9\n"
      "1.5,2.7\n");
  auto t = read_csv(in);
  REQUIRE(t.columns.size() == 2);
  CHECK(t.columns[1] == "gamma_f");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][0] == doctest::Approx(1.5));
  CHECK(t.rows[1][1] == doctest::Approx(2.7));
}

TEST_CASE("csv reader maps non-numeric cells to NaN") {
  std::istringstream in("a,b\n1.0,nan\n2.0,oops\n");
  auto t = read_csv(in);
  CHECK(std::isnan(t.rows[0][1]));
  CHECK(std::isnan(t.rows[1][1]));
  CHECK(t.rows[1][0] == doctest::Approx(2.0));
}

TEST_CASE("plot writer produces SVG and checks its input schema") {
  CsvTable trace;
  trace.columns = {"time", "gamma_f", "ks_D",        "dmin",
                   "max_degree", "components", "rewired_frac", "messages"};
  trace.rows = {{0, 2.9, 0.02, 5, 40, 1, 0.0, 0},
                {10, 2.5, 0.03, 5, 60, 1, 0.5, 900},
                {20, 2.1, 0.02, 6, 90, 1, 1.0, 1800}};
  std::ostringstream out;
  write_plot(trace, "trace", out);
  std::string svg = out.str();
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);

  CsvTable wrong;
  wrong.columns = {"x", "y"};
  wrong.rows = {{1, 2}};
  std::ostringstream sink;
  CHECK_THROWS_AS(write_plot(wrong, "trace", sink), PlotError);
  CHECK_THROWS_AS(write_plot(trace, "no-such-kind", sink), PlotError);
}
