#include <catch2/catch_amalgamated.hpp>
#include <map>
#include <sstream>

#include "gmspp/branch_and_bound.hpp"
#include "gmspp/linear_model.hpp"
#include "gmspp/simplex.hpp"
#include "support/helpers.hpp"

using namespace gmspp;

TEST_CASE("lp: bound-only minimum") {
  LinearModel m;
  m.add_var("x", 3.0, 10.0, 1.0);
  LpResult r = solve_lp(m);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.obj == Catch::Approx(3.0));
  CHECK(r.x[0] == Catch::Approx(3.0));
}

TEST_CASE("lp: infeasible box") {
  LinearModel m;
  int x = m.add_var("x", 0.0, kInf, 1.0);
  m.add_row("lo", {{x, 1.0}}, Sense::GE, 1.0);
  m.add_row("hi", {{x, 1.0}}, Sense::LE, 0.0);
  CHECK(solve_lp(m).status == LpStatus::Infeasible);
}

TEST_CASE("lp: unbounded direction is reported") {
  LinearModel m;
  m.add_var("x", 0.0, kInf, -1.0);
  CHECK(solve_lp(m).status == LpStatus::Unbounded);
}

TEST_CASE("lp: equality rows and mixed senses") {
  LinearModel m;
  int x = m.add_var("x", 0.0, kInf, 2.0);
  int y = m.add_var("y", 0.0, kInf, 3.0);
  m.add_row("sum", {{x, 1.0}, {y, 1.0}}, Sense::EQ, 4.0);
  m.add_row("cap", {{x, 1.0}}, Sense::LE, 3.0);
  LpResult r = solve_lp(m);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.obj == Catch::Approx(2.0 * 3.0 + 3.0 * 1.0));
}

TEST_CASE("lp: the interval-widening toy model optimizes to 6") {
  // max (r1-l1)+(r2-l2) with l1+4 >= r2+1, l2+4 >= r1+1,
  // l1 in [0,0], r1 in [0,6], l2 in [0,2], r2 in [2,6]
  LinearModel m;
  int l1 = m.add_var("l1", 0.0, 0.0, 1.0);
  int r1 = m.add_var("r1", 0.0, 6.0, -1.0);
  int l2 = m.add_var("l2", 0.0, 2.0, 1.0);
  int r2 = m.add_var("r2", 2.0, 6.0, -1.0);
  m.add_row("c12", {{l1, 1.0}, {r2, -1.0}}, Sense::GE, 1.0 - 4.0);
  m.add_row("c21", {{l2, 1.0}, {r1, -1.0}}, Sense::GE, 1.0 - 4.0);
  LpResult r = solve_lp(m);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.obj == Catch::Approx(-6.0));

  testing::VertexOpt v = testing::vertex_enumerate(m);
  REQUIRE(v.feasible);
  CHECK(v.obj == Catch::Approx(r.obj));
}

TEST_CASE("lp: duality certificate on random bounded models") {
  for (unsigned seed = 1; seed <= 40; ++seed) {
    testing::Rng rng(seed);
    int n = rng.uniform(2, 5), k = rng.uniform(1, 4);
    LinearModel m;
    for (int j = 0; j < n; ++j)
      m.add_var("x" + std::to_string(j), 0.0, rng.uniform(1, 10),
                rng.uniform(-5, 5));
    for (int i = 0; i < k; ++i) {
      std::vector<std::pair<int, double>> terms;
      for (int j = 0; j < n; ++j) {
        int c = rng.uniform(-3, 3);
        if (c != 0) terms.emplace_back(j, static_cast<double>(c));
      }
      if (terms.empty()) terms.emplace_back(0, 1.0);
      Sense s = i % 3 == 0 ? Sense::LE : (i % 3 == 1 ? Sense::GE : Sense::EQ);
      if (s == Sense::EQ) {
        // keep equalities satisfiable: rhs at the midpoint of the activity range
        double lo = 0, hi = 0;
        for (auto [v, c] : terms) {
          double vlo = m.vars[v].lb * c, vhi = m.vars[v].ub * c;
          lo += std::min(vlo, vhi);
          hi += std::max(vlo, vhi);
        }
        m.add_row("r" + std::to_string(i), terms, s, std::floor((lo + hi) / 2));
      } else {
        m.add_row("r" + std::to_string(i), terms, s, rng.uniform(-4, 8));
      }
    }
    LpResult r = solve_lp(m);
    if (r.status != LpStatus::Optimal) {
      // cross-check the verdict with the vertex oracle
      testing::VertexOpt v = testing::vertex_enumerate(m);
      CHECK_FALSE(v.feasible);
      continue;
    }
    // certificate: obj == y.rhs + sum over nonbasic-at-bound reduced costs,
    // with sign-correct reduced costs. Checked arithmetically, so an optimal
    // claim cannot pass by accident.
    double lhs = r.obj;
    double rhs = 0.0;
    for (int i = 0; i < m.n_rows(); ++i) rhs += r.duals[i] * m.rows[i].rhs;
    for (int j = 0; j < m.n_vars(); ++j) {
      double d = r.reduced_costs[j];
      if (std::abs(d) < 1e-7) continue;
      // nonzero reduced cost: variable must sit at the matching bound
      if (d > 0) CHECK(r.x[j] == Catch::Approx(m.vars[j].lb).margin(1e-6));
      if (d < 0) CHECK(r.x[j] == Catch::Approx(m.vars[j].ub).margin(1e-6));
      rhs += d * r.x[j];
    }
    CHECK(lhs == Catch::Approx(rhs).margin(1e-5));

    testing::VertexOpt v = testing::vertex_enumerate(m);
    REQUIRE(v.feasible);
    CHECK(r.obj == Catch::Approx(v.obj).margin(1e-5));
  }
}

TEST_CASE("mip: knapsack toy") {
  LinearModel m;
  int a = m.add_var("a", 0.0, 1.0, -3.0, true);
  int b = m.add_var("b", 0.0, 1.0, -2.0, true);
  m.add_row("cap", {{a, 1.0}, {b, 1.0}}, Sense::LE, 1.0);
  MipResult r = solve_mip(m);
  REQUIRE(r.status == MipStatus::Optimal);
  CHECK(r.obj == Catch::Approx(-3.0));
  CHECK(r.x[a] == Catch::Approx(1.0));
  CHECK(r.x[b] == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("mip: infeasible integer model") {
  LinearModel m;
  int a = m.add_var("a", 0.0, 1.0, 1.0, true);
  m.add_row("impossible", {{a, 2.0}}, Sense::EQ, 1.0);
  CHECK(solve_mip(m).status == MipStatus::Infeasible);
}

TEST_CASE("mip: nonpositive time limit is rejected") {
  LinearModel m;
  m.add_var("a", 0.0, 1.0, 1.0, true);
  MipOptions opt;
  opt.time_limit = 0.0;
  CHECK_THROWS_AS(solve_mip(m, opt), std::invalid_argument);
}

TEST_CASE("mip: matches exhaustive enumeration on random binary programs") {
  for (unsigned seed = 1; seed <= 40; ++seed) {
    testing::Rng rng(seed + 1000);
    int n = rng.uniform(3, 12), k = rng.uniform(1, 5);
    LinearModel m;
    for (int j = 0; j < n; ++j)
      m.add_var("x" + std::to_string(j), 0.0, 1.0, rng.uniform(-6, 6), true);
    for (int i = 0; i < k; ++i) {
      std::vector<std::pair<int, double>> terms;
      for (int j = 0; j < n; ++j) {
        int c = rng.uniform(-2, 3);
        if (c != 0) terms.emplace_back(j, static_cast<double>(c));
      }
      if (terms.empty()) terms.emplace_back(0, 1.0);
      m.add_row("r" + std::to_string(i), terms,
                i % 2 == 0 ? Sense::LE : Sense::GE, rng.uniform(-2, 5));
    }
    testing::BruteIp ref = testing::brute_binary_ip(m);
    MipResult r = solve_mip(m);
    if (!ref.feasible) {
      CHECK(r.status == MipStatus::Infeasible);
    } else {
      REQUIRE(r.status == MipStatus::Optimal);
      CHECK(r.obj == Catch::Approx(ref.obj).margin(1e-6));
      CHECK(r.bound == Catch::Approx(r.obj).margin(1e-6));
    }
  }
}

TEST_CASE("mip: identical inputs replay identical trees") {
  testing::Rng rng(7);
  LinearModel m;
  int n = 10;
  for (int j = 0; j < n; ++j)
    m.add_var("x" + std::to_string(j), 0.0, 1.0, rng.uniform(-6, 6), true);
  for (int i = 0; i < 4; ++i) {
    std::vector<std::pair<int, double>> terms;
    for (int j = 0; j < n; ++j) terms.emplace_back(j, static_cast<double>(rng.uniform(-2, 3)));
    m.add_row("r" + std::to_string(i), terms, Sense::LE, 3.0);
  }
  MipResult a = solve_mip(m), b = solve_mip(m);
  CHECK(a.nodes == b.nodes);
  CHECK(a.obj == b.obj);
  CHECK(a.x == b.x);
}

TEST_CASE("mip: lazy callback gates the incumbent") {
  // min -a-b, a+b <= 2; the callback refuses a=b=1 via a no-good row
  LinearModel m;
  int a = m.add_var("a", 0.0, 1.0, -1.0, true);
  int b = m.add_var("b", 0.0, 1.0, -1.0, true);
  m.add_row("cap", {{a, 1.0}, {b, 1.0}}, Sense::LE, 2.0);
  int calls = 0;
  LazyCallback cb = [&](const std::vector<double>& x) {
    ++calls;
    std::vector<LinearRow> rows;
    if (x[a] > 0.5 && x[b] > 0.5)
      rows.push_back({"nogood", {{a, 1.0}, {b, 1.0}}, Sense::LE, 1.0});
    return rows;
  };
  MipResult r = solve_mip(m, {}, cb);
  REQUIRE(r.status == MipStatus::Optimal);
  CHECK(r.obj == Catch::Approx(-1.0));
  CHECK(calls >= 2);
  // the final incumbent satisfies every returned row
  CHECK(r.x[a] + r.x[b] <= 1.0 + 1e-6);
}

TEST_CASE("mip: non-violated lazy row is a programming error") {
  LinearModel m;
  int a = m.add_var("a", 0.0, 1.0, -1.0, true);
  LazyCallback cb = [&](const std::vector<double>&) {
    // claims a <= 1 which every candidate satisfies
    return std::vector<LinearRow>{{"useless", {{a, 1.0}}, Sense::LE, 1.0}};
  };
  CHECK_THROWS_AS(solve_mip(m, {}, cb), std::logic_error);
}

// minimal MPS reader for round-trip checking; whitespace-delimited on purpose
namespace {
struct MpsModel {
  LinearModel model;
  bool ok = false;
};

MpsModel read_mps(std::istream& in) {
  MpsModel out;
  std::string line, section;
  std::map<std::string, int> rows;  // name -> model row, obj = -1
  std::map<std::string, char> row_sense;
  std::map<std::string, int> cols;
  std::vector<std::string> row_order;
  bool integer_mode = false;
  std::map<std::string, std::map<std::string, double>> col_terms;
  std::map<std::string, double> col_obj;
  std::map<std::string, std::pair<double, double>> bounds;
  std::vector<std::string> col_order;
  std::map<std::string, double> rhs;
  std::map<std::string, bool> col_int;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '*') continue;
    if (line[0] != ' ') {
      std::istringstream ls(line);
      ls >> section;
      continue;
    }
    std::istringstream ls(line);
    std::vector<std::string> f;
    std::string tok;
    while (ls >> tok) f.push_back(tok);
    if (section == "ROWS") {
      row_sense[f[1]] = f[0][0];
      if (f[0][0] != 'N') row_order.push_back(f[1]);
    } else if (section == "COLUMNS") {
      if (f.size() >= 3 && f[2] == "'INTORG'") { integer_mode = true; continue; }
      if (f.size() >= 3 && f[2] == "'INTEND'") { integer_mode = false; continue; }
      const std::string& c = f[0];
      if (!col_terms.count(c)) col_order.push_back(c);
      col_int[c] = col_int.count(c) ? (col_int[c] || integer_mode) : integer_mode;
      col_terms[c];
      for (std::size_t i = 1; i + 1 < f.size(); i += 2) {
        const std::string& rname = f[i];
        double v = std::stod(f[i + 1]);
        if (row_sense.count(rname) && row_sense[rname] == 'N')
          col_obj[c] = v;
        else
          col_terms[c][rname] = v;
      }
    } else if (section == "RHS") {
      for (std::size_t i = 1; i + 1 < f.size(); i += 2)
        rhs[f[i]] = std::stod(f[i + 1]);
    } else if (section == "BOUNDS") {
      const std::string& type = f[0];
      const std::string& c = f[2];
      if (!bounds.count(c)) bounds[c] = {0.0, kInf};
      if (type == "UP") bounds[c].second = std::stod(f[3]);
      else if (type == "LO") bounds[c].first = std::stod(f[3]);
      else if (type == "FX") bounds[c] = {std::stod(f[3]), std::stod(f[3])};
      else if (type == "MI") bounds[c].first = -kInf;
    }
  }
  for (const std::string& c : col_order) {
    auto [blo, bhi] = bounds.count(c) ? bounds[c] : std::make_pair(0.0, kInf);
    cols[c] = out.model.add_var(c, blo, bhi, col_obj.count(c) ? col_obj[c] : 0.0,
                                col_int[c]);
  }
  for (const std::string& rname : row_order) {
    std::vector<std::pair<int, double>> terms;
    for (const std::string& c : col_order)
      if (col_terms[c].count(rname)) terms.emplace_back(cols[c], col_terms[c][rname]);
    Sense s = row_sense[rname] == 'L' ? Sense::LE
              : row_sense[rname] == 'G' ? Sense::GE : Sense::EQ;
    out.model.add_row(rname, terms, s, rhs.count(rname) ? rhs[rname] : 0.0);
    rows[rname] = out.model.n_rows() - 1;
  }
  out.ok = true;
  return out;
}
}  // namespace

TEST_CASE("mps: markers wrap integer columns and the model round-trips") {
  LinearModel m;
  int a = m.add_var("a", 0.0, 1.0, -3.0, true);
  int x = m.add_var("x", 0.5, 4.0, 1.0, false);
  m.add_row("r0", {{a, 2.0}, {x, 1.0}}, Sense::LE, 3.5);
  m.add_row("r1", {{a, 1.0}}, Sense::GE, 0.0);
  m.add_row("r2", {{x, 1.0}, {a, -1.0}}, Sense::EQ, 0.5);

  std::ostringstream out;
  write_mps(m, out, "TOY");
  std::string text = out.str();
  CHECK(text.find("'INTORG'") != std::string::npos);
  CHECK(text.find("'INTEND'") != std::string::npos);
  CHECK(text.find("ENDATA") != std::string::npos);

  std::istringstream in(text);
  MpsModel back = read_mps(in);
  REQUIRE(back.ok);
  REQUIRE(back.model.n_vars() == 2);
  REQUIRE(back.model.n_rows() == 3);
  CHECK(back.model.vars[0].integer);
  CHECK_FALSE(back.model.vars[1].integer);
  CHECK(back.model.vars[0].ub == Catch::Approx(1.0));
  CHECK(back.model.vars[1].lb == Catch::Approx(0.5));
  // same optimum through the round-trip
  MipResult orig = solve_mip(m);
  MipResult rtrip = solve_mip(back.model);
  REQUIRE(orig.status == MipStatus::Optimal);
  REQUIRE(rtrip.status == MipStatus::Optimal);
  CHECK(orig.obj == Catch::Approx(rtrip.obj));
}
