#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmspp/bendm.hpp"
#include "gmspp/oracle.hpp"

namespace gmspp {

// One results-table line. Cells keep their native types; rendering happens in
// one place so every consumer sees identical rounding.
struct BenchRow {
  std::string instance;
  int m = 0;
  std::string cost;    // prop|econ|disecon|custom
  std::string method;  // lp-bigm|lp-pc|bigm|bigm-le|bendm|oracle
  std::optional<Rational> obj;  // incumbent cost; bound-only methods leave it empty
  std::optional<double> lb;     // best proved lower bound
  double time_s = 0.0;
  long long nodes = 0;
  long long cuts_std = 0;
  long long cuts_comb = 0;
  long long cuts_lift = 0;
  long long ycheck_calls = 0;
  double ycheck_time_s = 0.0;
};

inline constexpr const char* kBenchCsvHeader =
    "instance,m,cost,method,obj,lb,gap_pct,time_s,nodes,"
    "cuts_std,cuts_comb,cuts_lift,ycheck_calls,ycheck_time_s";

// Integers print bare so table cells read like the usual results tables;
// everything else gets ten significant digits.
inline std::string csv_number(double v) {
  if (std::isfinite(v) && std::abs(v) < 1e15 && v == std::floor(v)) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(v));
    return buf;
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline std::string csv_number(const Rational& v) {
  if (v.denominator() == 1) return std::to_string(v.numerator());
  return csv_number(to_double(v));
}

// Gap column: 100*(obj-lb)/obj rounded to one decimal, the rounding every
// downstream comparison relies on. Negative slack from float noise clamps to
// zero; without an incumbent or a finite bound the cell stays empty.
inline std::string format_gap_percent(std::optional<double> obj, std::optional<double> lb) {
  if (!obj || !lb || *obj <= 0.0 || !std::isfinite(*lb)) return "";
  double gap = 100.0 * (*obj - *lb) / *obj;
  if (gap < 0.0) gap = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", gap);
  return buf;
}

inline std::string bench_csv_line(const BenchRow& row) {
  if (row.instance.find(',') != std::string::npos)
    throw std::invalid_argument("instance name '" + row.instance + "' contains a comma");
  char tbuf[32], ybuf[32];
  std::snprintf(tbuf, sizeof(tbuf), "%.1f", row.time_s);
  std::snprintf(ybuf, sizeof(ybuf), "%.3f", row.ycheck_time_s);
  std::optional<double> obj_d;
  if (row.obj) obj_d = to_double(*row.obj);
  std::ostringstream os;
  os << row.instance << ',' << row.m << ',' << row.cost << ',' << row.method << ','
     << (row.obj ? csv_number(*row.obj) : "") << ','
     << (row.lb && std::isfinite(*row.lb) ? csv_number(*row.lb) : "") << ','
     << format_gap_percent(obj_d, row.lb) << ',' << tbuf << ',' << row.nodes << ','
     << row.cuts_std << ',' << row.cuts_comb << ',' << row.cuts_lift << ','
     << row.ycheck_calls << ',' << ybuf;
  return os.str();
}

inline void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRow& r : rows) out << bench_csv_line(r) << '\n';
}

// Recovers the cost scheme from the per-strip costs: all ones is
// proportional, strictly rising with strip width diseconomies, strictly
// falling economies. Anything else reports as custom.
inline std::string cost_scheme_of(const Instance& inst) {
  bool all_one = true, rising = true, falling = true;
  for (int i = 0; i < inst.m(); ++i) {
    if (inst.strips[i].C != Rational(1)) all_one = false;
    if (i > 0) {
      if (inst.strips[i].C <= inst.strips[i - 1].C) rising = false;
      if (inst.strips[i].C >= inst.strips[i - 1].C) falling = false;
    }
  }
  if (all_one) return "prop";
  if (inst.m() > 1 && rising) return "disecon";
  if (inst.m() > 1 && falling) return "econ";
  return "custom";
}

inline const std::vector<std::string>& bench_methods() {
  static const std::vector<std::string> k = {"lp-bigm", "lp-pc",  "bigm",
                                             "bigm-le", "bendm", "oracle"};
  return k;
}

inline bool is_bench_method(const std::string& s) {
  const auto& k = bench_methods();
  return std::find(k.begin(), k.end(), s) != k.end();
}

// Runs one method on one instance and folds the outcome into a table row.
// When a cut log is supplied, every Benders cut is appended as
// "<instance>,<cut record>" in the order the cuts entered the master.
inline BenchRow run_bench_method(const Instance& inst, const std::string& method,
                                 const SolveConfig& cfg,
                                 std::vector<std::string>* cut_log = nullptr) {
  BenchRow row;
  row.instance = inst.name;
  row.m = inst.m();
  row.cost = cost_scheme_of(inst);
  row.method = method;

  using clock = std::chrono::steady_clock;
  auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  if (method == "lp-bigm") {
    row.lb = lp_bigm_bound(inst);
    row.time_s = elapsed();
    return row;
  }
  if (method == "lp-pc") {
    NormalPositionTable table = build_table(inst);
    row.lb = to_double(lp_pc_bound(inst, table));
    row.time_s = elapsed();
    return row;
  }
  if (method == "oracle") {
    OracleResult res = solve_exact(inst);
    row.obj = res.objective;
    row.lb = to_double(res.objective);
    row.time_s = elapsed();
    return row;
  }

  SolveReport rep;
  if (method == "bigm")
    rep = solve_bigm(inst, cfg);
  else if (method == "bigm-le")
    rep = solve_bigm_le(inst, cfg);
  else if (method == "bendm")
    rep = solve_bendm(inst, cfg);
  else
    throw std::invalid_argument("unknown method '" + method + "'");

  row.obj = rep.objective;
  if (std::isfinite(rep.lower_bound)) row.lb = rep.lower_bound;
  row.time_s = rep.seconds;
  row.nodes = rep.nodes;
  row.cuts_std = rep.cuts_standard;
  row.cuts_comb = rep.cuts_combinatorial;
  row.cuts_lift = rep.cuts_lifted;
  row.ycheck_calls = rep.ycheck_calls;
  row.ycheck_time_s = rep.ycheck_seconds;
  if (cut_log)
    for (const BendersCut& cut : rep.cuts)
      cut_log->push_back(inst.name + "," + cut_log_line(cut));
  return row;
}

// Plain comma-split CSV reader for our own output; cells carry no quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c)
      if (header[c] == name) return static_cast<int>(c);
    throw std::invalid_argument("csv has no column '" + name + "'");
  }
};

inline CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    for (char ch : s) {
      if (ch == ',') {
        out.push_back(cell);
        cell.clear();
      } else if (ch != '\r') {
        cell.push_back(ch);
      }
    }
    out.push_back(cell);
    return out;
  };
  bool first = true;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (first) {
      t.header = split(line);
      first = false;
    } else {
      std::vector<std::string> cells = split(line);
      cells.resize(t.header.size());
      t.rows.push_back(std::move(cells));
    }
  }
  if (first) throw std::invalid_argument("csv is empty");
  return t;
}

// Five-number summary for one box. Quartiles interpolate linearly at rank
// (n-1)p; whiskers reach the furthest datum within 1.5 IQR of the box and
// everything beyond them is an outlier.
struct BoxStats {
  double q1 = 0, median = 0, q3 = 0, mean = 0;
  double lo = 0, hi = 0;
  std::vector<double> outliers;
};

inline BoxStats box_stats(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("box plot group has no data");
  std::sort(v.begin(), v.end());
  auto quantile = [&](double p) {
    double r = p * (static_cast<double>(v.size()) - 1.0);
    std::size_t i = static_cast<std::size_t>(r);
    if (i + 1 >= v.size()) return v.back();
    double f = r - static_cast<double>(i);
    return v[i] * (1.0 - f) + v[i + 1] * f;
  };
  BoxStats s;
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double fence = 1.5 * (s.q3 - s.q1);
  s.lo = s.q1;
  s.hi = s.q3;
  for (double x : v) {
    if (x >= s.q1 - fence && x <= s.q3 + fence) {
      s.lo = std::min(s.lo, x);
      s.hi = std::max(s.hi, x);
    } else {
      s.outliers.push_back(x);
    }
  }
  return s;
}

namespace detail {

// Tick spacing snapped to 1/2/2.5/5 times a power of ten.
inline double nice_step(double span) {
  if (span <= 0) return 1.0;
  double raw = span / 5.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double frac = raw / mag;
  double snap = frac <= 1.0 ? 1.0 : frac <= 2.0 ? 2.0 : frac <= 2.5 ? 2.5 : frac <= 5.0 ? 5.0 : 10.0;
  return snap * mag;
}

inline std::string svg_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

// Static box plot, one box per group: IQR box with a median line, 1.5 IQR
// whiskers with caps, outlier dots, and a red diamond at the mean. The output
// is a single <svg> element with inline styling and nothing external.
inline std::string svg_boxplot(const std::vector<std::pair<std::string, std::vector<double>>>& groups,
                               const std::string& title, const std::string& ylabel) {
  if (groups.empty()) throw std::invalid_argument("box plot has no groups");
  std::vector<BoxStats> stats;
  double vmin = kInf, vmax = -kInf;
  for (const auto& [label, values] : groups) {
    stats.push_back(box_stats(values));
    for (double x : values) {
      vmin = std::min(vmin, x);
      vmax = std::max(vmax, x);
    }
  }
  if (vmin > vmax) throw std::invalid_argument("box plot has no data");
  if (vmax - vmin < 1e-12) {
    vmin -= 1.0;
    vmax += 1.0;
  }
  double pad = 0.06 * (vmax - vmin);
  double lo = vmin - pad, hi = vmax + pad;

  const double left = 72, right = 24, top = 44, bottom = 52;
  const double box_w = 48, slot = 92;
  double width = left + slot * static_cast<double>(groups.size()) + right;
  double height = 400;
  double y0 = height - bottom, y1 = top;
  auto yof = [&](double v) { return y0 + (v - lo) * (y1 - y0) / (hi - lo); };

  using detail::svg_num;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">"
     << title << "</text>\n";
  os << "<text x=\"16\" y=\"" << (y0 + y1) / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
        "transform=\"rotate(-90 16 "
     << (y0 + y1) / 2 << ")\">" << ylabel << "</text>\n";

  double step = detail::nice_step(hi - lo);
  for (double tick = std::ceil(lo / step) * step; tick <= hi + 1e-9 * step; tick += step) {
    double y = yof(tick);
    os << "<line x1=\"" << left << "\" y1=\"" << svg_num(y) << "\" x2=\"" << width - right
       << "\" y2=\"" << svg_num(y) << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    os << "<text x=\"" << left - 8 << "\" y=\"" << svg_num(y + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << csv_number(tick) << "</text>\n";
  }
  os << "<line x1=\"" << left << "\" y1=\"" << y1 << "\" x2=\"" << left << "\" y2=\"" << y0
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << y0 << "\" x2=\"" << width - right << "\" y2=\""
     << y0 << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  for (std::size_t g = 0; g < groups.size(); ++g) {
    const BoxStats& s = stats[g];
    double cx = left + slot * (static_cast<double>(g) + 0.5);
    double xl = cx - box_w / 2, xr = cx + box_w / 2;
    double yq1 = yof(s.q1), yq3 = yof(s.q3), ymed = yof(s.median);
    double ylo = yof(s.lo), yhi = yof(s.hi);
    os << "<line x1=\"" << svg_num(cx) << "\" y1=\"" << svg_num(ylo) << "\" x2=\"" << svg_num(cx)
       << "\" y2=\"" << svg_num(yq1) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << svg_num(cx) << "\" y1=\"" << svg_num(yq3) << "\" x2=\"" << svg_num(cx)
       << "\" y2=\"" << svg_num(yhi) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (double yw : {ylo, yhi})
      os << "<line x1=\"" << svg_num(cx - box_w / 4) << "\" y1=\"" << svg_num(yw) << "\" x2=\""
         << svg_num(cx + box_w / 4) << "\" y2=\"" << svg_num(yw)
         << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<rect x=\"" << svg_num(xl) << "\" y=\"" << svg_num(yq3) << "\" width=\"" << box_w
       << "\" height=\"" << svg_num(std::max(yq1 - yq3, 0.5))
       << "\" fill=\"#c6d9f0\" stroke=\"black\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << svg_num(xl) << "\" y1=\"" << svg_num(ymed) << "\" x2=\"" << svg_num(xr)
       << "\" y2=\"" << svg_num(ymed) << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (double out : s.outliers)
      os << "<circle cx=\"" << svg_num(cx) << "\" cy=\"" << svg_num(yof(out))
         << "\" r=\"2.5\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    double ym = yof(s.mean);
    os << "<polygon points=\"" << svg_num(cx) << "," << svg_num(ym - 5) << " " << svg_num(cx + 5)
       << "," << svg_num(ym) << " " << svg_num(cx) << "," << svg_num(ym + 5) << " "
       << svg_num(cx - 5) << "," << svg_num(ym) << "\" fill=\"#cc0000\"/>\n";
    os << "<text x=\"" << svg_num(cx) << "\" y=\"" << svg_num(y0 + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
       << groups[g].first << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// Groups one numeric CSV column by method for plotting; empty cells are
// skipped, unparsable ones refuse loudly.
inline std::vector<std::pair<std::string, std::vector<double>>> csv_metric_by_method(
    const CsvTable& t, const std::string& metric) {
  int cm = t.column("method");
  int cv = t.column(metric);
  std::vector<std::pair<std::string, std::vector<double>>> groups;
  for (const std::vector<std::string>& row : t.rows) {
    const std::string& cell = row[static_cast<std::size_t>(cv)];
    if (cell.empty()) continue;
    std::size_t used = 0;
    double v = std::stod(cell, &used);
    if (used != cell.size())
      throw std::invalid_argument("cell '" + cell + "' in column " + metric + " is not a number");
    const std::string& key = row[static_cast<std::size_t>(cm)];
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) {
      groups.emplace_back(key, std::vector<double>{v});
    } else {
      it->second.push_back(v);
    }
  }
  return groups;
}

}  // namespace gmspp
