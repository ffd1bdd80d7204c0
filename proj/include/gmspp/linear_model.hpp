#pragma once

#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmspp/rational.hpp"

namespace gmspp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : char { LE = 'L', GE = 'G', EQ = 'E' };

struct Variable {
  std::string name;
  double lb = 0.0;
  double ub = kInf;
  double obj = 0.0;
  bool integer = false;
  // Kept alongside the double when the coefficient originates from exact cost
  // data, so reports can avoid float round-off.
  std::optional<Rational> obj_exact;
};

struct LinearRow {
  std::string name;
  std::vector<std::pair<int, double>> terms;  // (var index, coefficient)
  Sense sense = Sense::LE;
  double rhs = 0.0;
};

// Minimization model. Rows and variables are append-only; the branch-and-bound
// layers constraints and bound changes on top without copying the model.
struct LinearModel {
  std::vector<Variable> vars;
  std::vector<LinearRow> rows;

  int add_var(const std::string& name, double lb, double ub, double obj,
              bool integer = false) {
    vars.push_back({name, lb, ub, obj, integer, std::nullopt});
    return static_cast<int>(vars.size()) - 1;
  }

  int add_var_exact(const std::string& name, double lb, double ub, const Rational& obj,
                    bool integer = false) {
    vars.push_back({name, lb, ub, to_double(obj), integer, obj});
    return static_cast<int>(vars.size()) - 1;
  }

  int add_row(const std::string& name, std::vector<std::pair<int, double>> terms,
              Sense sense, double rhs) {
    rows.push_back({name, std::move(terms), sense, rhs});
    return static_cast<int>(rows.size()) - 1;
  }

  int n_vars() const { return static_cast<int>(vars.size()); }
  int n_rows() const { return static_cast<int>(rows.size()); }
};

// Fixed-format MPS. Rows and columns get generated 8-char-safe names (R<i>,
// C<j>); readers reproduce the model numerically, original names are not part
// of the contract. Integer columns sit between INTORG/INTEND markers.
inline void write_mps(const LinearModel& model, std::ostream& out,
                      const std::string& problem_name = "GMSPP",
                      const std::vector<LinearRow>* extra_rows = nullptr) {
  std::vector<const LinearRow*> rows;
  for (const LinearRow& r : model.rows) rows.push_back(&r);
  if (extra_rows)
    for (const LinearRow& r : *extra_rows) rows.push_back(&r);

  auto field = [](const std::string& s, std::size_t width) {
    std::string t = s.substr(0, width);
    t.resize(width, ' ');
    return t;
  };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::string(buf);
  };
  auto rname = [](std::size_t i) { return "R" + std::to_string(i); };
  auto cname = [](std::size_t j) { return "C" + std::to_string(j); };

  out << "NAME          " << problem_name << "\n";
  out << "ROWS\n";
  out << " N  COST\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    out << " " << static_cast<char>(rows[i]->sense) << "  " << rname(i) << "\n";

  // column-major view
  std::vector<std::vector<std::pair<std::size_t, double>>> cols(model.vars.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (auto [v, c] : rows[i]->terms)
      if (c != 0.0) cols[v].emplace_back(i, c);

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    const Variable& v = model.vars[j];
    if (v.integer != in_int) {
      out << "    " << field("MARKER" + std::to_string(marker++), 10)
          << "'MARKER'                 "
          << (v.integer ? "'INTORG'" : "'INTEND'") << "\n";
      in_int = v.integer;
    }
    std::vector<std::pair<std::string, double>> entries;
    if (v.obj != 0.0) entries.emplace_back("COST", v.obj);
    for (auto [i, c] : cols[j]) entries.emplace_back(rname(i), c);
    if (entries.empty()) entries.emplace_back("COST", 0.0);  // keep the column visible
    for (std::size_t e = 0; e < entries.size(); e += 2) {
      out << "    " << field(cname(j), 10) << field(entries[e].first, 10)
          << field(num(entries[e].second), 12);
      if (e + 1 < entries.size())
        out << "   " << field(entries[e + 1].first, 10) << num(entries[e + 1].second);
      out << "\n";
    }
  }
  if (in_int)
    out << "    " << field("MARKER" + std::to_string(marker++), 10)
        << "'MARKER'                 'INTEND'\n";

  out << "RHS\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i]->rhs != 0.0)
      out << "    " << field("RHS", 10) << field(rname(i), 10) << num(rows[i]->rhs) << "\n";

  out << "BOUNDS\n";
  for (std::size_t j = 0; j < model.vars.size(); ++j) {
    const Variable& v = model.vars[j];
    bool lb_default = v.lb == 0.0;
    bool ub_default = v.ub == kInf;
    if (lb_default && ub_default) continue;
    if (v.lb == v.ub) {
      out << " FX " << field("BND", 7) << field(cname(j), 10) << num(v.lb) << "\n";
      continue;
    }
    if (!lb_default) {
      if (v.lb == -kInf)
        out << " MI " << field("BND", 7) << field(cname(j), 10) << "\n";
      else
        out << " LO " << field("BND", 7) << field(cname(j), 10) << num(v.lb) << "\n";
    }
    if (!ub_default)
      out << " UP " << field("BND", 7) << field(cname(j), 10) << num(v.ub) << "\n";
  }
  out << "ENDATA\n";
}

inline void write_mps_file(const LinearModel& model, const std::string& path,
                           const std::string& problem_name = "GMSPP",
                           const std::vector<LinearRow>* extra_rows = nullptr) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_mps(model, out, problem_name, extra_rows);
}

}  // namespace gmspp
