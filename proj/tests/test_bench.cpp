#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "gmspp/bench.hpp"
#include "gmspp/io_json.hpp"

using namespace gmspp;

namespace {

// Small bases whose optima are pinned by hand: gold_a packs waste-free on a
// width-4 strip at height 3 (cost 12), gold_b on a width-5 strip at height 3
// (cost 15). Both derived m=2 instances keep those optima on the cheapest
// wide-enough strip.
std::vector<Instance> golden_instances() {
  BaseSpp a;
  a.name = "gold_a";
  a.W = 4;
  a.items = {{4, 2}, {2, 1}, {2, 1}};
  BaseSpp b;
  b.name = "gold_b";
  b.W = 5;
  b.items = {{5, 2}, {2, 1}, {3, 1}};
  return {generate_gmspp(a, 2, CostScheme::Proportional),
          generate_gmspp(a, 2, CostScheme::Economies),
          generate_gmspp(b, 2, CostScheme::Diseconomies)};
}

// Replaces machine-dependent cells (times, node counts) with "_" so the
// remaining table must match byte for byte.
std::string mask_columns(const std::string& csv, const std::set<int>& cols) {
  std::istringstream in(csv);
  std::string line;
  std::ostringstream out;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      out << line << '\n';
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
      if (ch == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell.push_back(ch);
      }
    }
    cells.push_back(cell);
    for (int c : cols)
      if (c < static_cast<int>(cells.size())) cells[static_cast<std::size_t>(c)] = "_";
    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
    out << '\n';
  }
  return out.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("the gap column rounds to one decimal") {
  CHECK(format_gap_percent(42000.0, 31680.0) == "24.6");
  CHECK(format_gap_percent(40000.0, 40000.0) == "0.0");
  CHECK(format_gap_percent(41040.0, 40000.0) == "2.5");
  CHECK(format_gap_percent(41800.0, 34600.0) == "17.2");
  CHECK(format_gap_percent(std::nullopt, 10.0) == "");
  CHECK(format_gap_percent(10.0, std::nullopt) == "");
  CHECK(format_gap_percent(0.0, 0.0) == "");
  CHECK(format_gap_percent(10.0, -kInf) == "");
  // float slack on a closed instance must not print as a negative gap
  CHECK(format_gap_percent(12.0, 12.000000001) == "0.0");
}

TEST_CASE("table cells print integers bare") {
  CHECK(csv_number(40000.0) == "40000");
  CHECK(csv_number(0.0) == "0");
  CHECK(csv_number(-3.0) == "-3");
  CHECK(csv_number(0.5) == "0.5");
  CHECK(csv_number(16.599999999999998) == "16.6");
  CHECK(csv_number(Rational(40000)) == "40000");
  CHECK(csv_number(Rational(72, 5)) == "14.4");
  CHECK(csv_number(Rational(-9, 2)) == "-4.5");
}

TEST_CASE("derived instances follow the width and cost rules") {
  BaseSpp base;
  base.name = "N1x";
  base.W = 200;
  base.items = {{50, 60}};

  Instance two = generate_gmspp(base, 2, CostScheme::Proportional);
  CHECK(two.name == "N1x_m2_prop");
  REQUIRE(two.m() == 2);
  CHECK(two.strips[0].W == 200);
  CHECK(two.strips[1].W == 240);
  CHECK(two.strips[0].C == Rational(1));
  CHECK(two.strips[1].C == Rational(1));
  CHECK(cost_scheme_of(two) == "prop");

  Instance three = generate_gmspp(base, 3, CostScheme::Economies);
  CHECK(three.name == "N1x_m3_econ");
  REQUIRE(three.m() == 3);
  CHECK(three.strips[0].W == 160);
  CHECK(three.strips[1].W == 200);
  CHECK(three.strips[2].W == 240);
  CHECK(three.strips[0].C == Rational(12, 10));
  CHECK(three.strips[1].C == Rational(11, 10));
  CHECK(three.strips[2].C == Rational(1));
  CHECK(cost_scheme_of(three) == "econ");

  Instance dis = generate_gmspp(base, 3, CostScheme::Diseconomies);
  CHECK(dis.strips[0].C == Rational(1));
  CHECK(dis.strips[2].C == Rational(12, 10));
  CHECK(cost_scheme_of(dis) == "disecon");

  // floor arithmetic on a width the ratios do not divide
  BaseSpp odd = base;
  odd.W = 7;
  odd.items = {{5, 1}};
  Instance oddi = generate_gmspp(odd, 3, CostScheme::Proportional);
  CHECK(oddi.strips[0].W == 5);
  CHECK(oddi.strips[1].W == 7);
  CHECK(oddi.strips[2].W == 8);

  Instance back = instance_from_json(instance_to_json(three));
  CHECK(back.name == three.name);
  CHECK(back.strips[0].C == three.strips[0].C);
  CHECK(back.items[0].w == three.items[0].w);
}

TEST_CASE("irregular cost patterns report as custom") {
  Instance inst;
  inst.name = "c";
  inst.items = {{1, 1}};
  inst.strips = {{3, Rational(1)}, {4, Rational(5)}, {5, Rational(2)}};
  CHECK(cost_scheme_of(inst) == "custom");
  inst.strips = {{3, Rational(2)}};
  CHECK(cost_scheme_of(inst) == "custom");
  inst.strips = {{3, Rational(1)}};
  CHECK(cost_scheme_of(inst) == "prop");
}

TEST_CASE("box statistics follow the fence rule") {
  BoxStats s = box_stats({9, 1, 5, 3, 7, 2, 8, 4, 6});
  CHECK(s.q1 == Catch::Approx(3.0));
  CHECK(s.median == Catch::Approx(5.0));
  CHECK(s.q3 == Catch::Approx(7.0));
  CHECK(s.mean == Catch::Approx(5.0));
  CHECK(s.lo == Catch::Approx(1.0));
  CHECK(s.hi == Catch::Approx(9.0));
  CHECK(s.outliers.empty());

  BoxStats t = box_stats({1, 2, 3, 4, 100});
  CHECK(t.q1 == Catch::Approx(2.0));
  CHECK(t.median == Catch::Approx(3.0));
  CHECK(t.q3 == Catch::Approx(4.0));
  // fence is q3 + 1.5*(q3-q1) = 7, so 100 falls out and the whisker stops at 4
  CHECK(t.hi == Catch::Approx(4.0));
  REQUIRE(t.outliers.size() == 1);
  CHECK(t.outliers[0] == Catch::Approx(100.0));

  BoxStats u = box_stats({5.0});
  CHECK(u.q1 == 5.0);
  CHECK(u.median == 5.0);
  CHECK(u.q3 == 5.0);
  CHECK(u.lo == 5.0);
  CHECK(u.hi == 5.0);

  CHECK_THROWS_AS(box_stats({}), std::invalid_argument);
}

TEST_CASE("the box plot is one self-contained svg") {
  std::vector<std::pair<std::string, std::vector<double>>> groups = {
      {"bendm", {1.0, 2.0, 2.5, 3.0, 9.0}},
      {"bigm", {4.0, 5.0, 6.0}},
  };
  std::string svg = svg_boxplot(groups, "time by method", "seconds");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  // one mean diamond per group
  std::size_t diamonds = 0;
  for (std::size_t at = svg.find("<polygon"); at != std::string::npos;
       at = svg.find("<polygon", at + 1))
    ++diamonds;
  CHECK(diamonds == groups.size());
  CHECK(svg.find("bendm") != std::string::npos);
  CHECK(svg.find("bigm") != std::string::npos);
  // nothing references the outside world
  CHECK(svg.find("href") == std::string::npos);
  CHECK(svg.find("url(") == std::string::npos);
  CHECK(svg.find("<script") == std::string::npos);

  CHECK_THROWS_AS(svg_boxplot({}, "t", "y"), std::invalid_argument);
}

TEST_CASE("the csv reader inverts the writer") {
  BenchRow a;
  a.instance = "alpha";
  a.m = 2;
  a.cost = "prop";
  a.method = "lp-pc";
  a.lb = 40000.0;
  BenchRow b;
  b.instance = "alpha";
  b.m = 2;
  b.cost = "prop";
  b.method = "bendm";
  b.obj = Rational(42000);
  b.lb = 31680.0;
  b.time_s = 900.06;
  b.nodes = 17;
  b.cuts_lift = 3;
  b.ycheck_calls = 9;
  b.ycheck_time_s = 0.1234;

  std::ostringstream os;
  write_bench_csv({a, b}, os);
  std::istringstream in(os.str());
  CsvTable t = read_csv(in);

  REQUIRE(t.header.size() == 14);
  CHECK(t.header[0] == "instance");
  CHECK(t.header[13] == "ycheck_time_s");
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][t.column("obj")] == "");
  CHECK(t.rows[0][t.column("lb")] == "40000");
  CHECK(t.rows[0][t.column("gap_pct")] == "");
  CHECK(t.rows[1][t.column("obj")] == "42000");
  CHECK(t.rows[1][t.column("gap_pct")] == "24.6");
  CHECK(t.rows[1][t.column("time_s")] == "900.1");
  CHECK(t.rows[1][t.column("cuts_lift")] == "3");
  CHECK(t.rows[1][t.column("ycheck_time_s")] == "0.123");

  auto groups = csv_metric_by_method(t, "lb");
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].first == "lp-pc");
  CHECK(groups[0].second == std::vector<double>{40000.0});
  CHECK(groups[1].second == std::vector<double>{31680.0});

  // obj has one empty cell, so only the bendm row survives
  auto objs = csv_metric_by_method(t, "obj");
  REQUIRE(objs.size() == 1);
  CHECK(objs[0].first == "bendm");

  BenchRow bad;
  bad.instance = "a,b";
  CHECK_THROWS_AS(bench_csv_line(bad), std::invalid_argument);
  CHECK_THROWS_AS(t.column("missing"), std::invalid_argument);
}

TEST_CASE("unknown methods are refused") {
  CHECK(is_bench_method("bendm"));
  CHECK(is_bench_method("lp-pc"));
  CHECK_FALSE(is_bench_method("newton"));
  Instance inst = golden_instances()[0];
  SolveConfig cfg;
  CHECK_THROWS_AS(run_bench_method(inst, "newton", cfg), std::invalid_argument);
}

TEST_CASE("bench rows freeze to a golden table") {
  std::vector<Instance> insts = golden_instances();
  SolveConfig cfg;
  std::vector<std::string> cut_log;
  std::vector<BenchRow> rows;
  for (const Instance& inst : insts)
    for (const std::string& method : bench_methods())
      rows.push_back(run_bench_method(inst, method, cfg, &cut_log));

  // cross-route guard before trusting the frozen file: every exact method
  // must land on the hand-derived optimum, and the relaxations must stay at
  // or below it
  const Rational expect[] = {Rational(12), Rational(12), Rational(15)};
  for (std::size_t k = 0; k < insts.size(); ++k) {
    double opt = to_double(expect[k]);
    for (std::size_t r = 6 * k; r < 6 * (k + 1); ++r) {
      const BenchRow& row = rows[r];
      if (row.method == "lp-bigm" || row.method == "lp-pc") {
        REQUIRE(row.lb.has_value());
        CHECK(*row.lb <= opt + 1e-6);
        CHECK_FALSE(row.obj.has_value());
      } else {
        REQUIRE(row.obj.has_value());
        CHECK(*row.obj == expect[k]);
      }
    }
  }

  std::ostringstream os;
  write_bench_csv(rows, os);
  const std::set<int> volatile_cols = {7, 8, 13};  // time_s, nodes, ycheck_time_s
  std::string got = mask_columns(os.str(), volatile_cols);
  {
    std::ofstream dump("bench_golden_got.csv");
    dump << got;
  }
  std::string want =
      mask_columns(slurp(std::string(GMSPP_SOURCE_DIR) + "/tests/golden/bench_small.csv"),
                   volatile_cols);

  std::istringstream gin(got), win(want);
  std::string gline, wline;
  int lineno = 0;
  while (std::getline(win, wline)) {
    ++lineno;
    INFO("line " << lineno);
    REQUIRE(std::getline(gin, gline));
    CHECK(gline == wline);
  }
  CHECK_FALSE(std::getline(gin, gline));
  CHECK(cut_log.empty());
}
