#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmspp/bench.hpp"
#include "gmspp/io_json.hpp"

namespace fs = std::filesystem;
using namespace gmspp;

namespace {

const char* status_token(MipStatus s) {
  switch (s) {
    case MipStatus::Optimal: return "optimal";
    case MipStatus::Infeasible: return "infeasible";
    case MipStatus::TimeLimit: return "time_limit";
    case MipStatus::Unbounded: return "unbounded";
    case MipStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

// Collects base packing files: a lone file as-is, a directory by its sorted
// *.txt entries.
std::vector<fs::path> base_files(const fs::path& base) {
  std::vector<fs::path> files;
  if (fs::is_directory(base)) {
    for (const fs::directory_entry& e : fs::directory_iterator(base))
      if (e.is_regular_file() && e.path().extension() == ".txt") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
      throw std::runtime_error("no .txt base files under " + base.string());
  } else {
    if (!fs::exists(base)) throw std::runtime_error("no such file " + base.string());
    files.push_back(base);
  }
  return files;
}

std::vector<fs::path> instance_files(const fs::path& dir) {
  std::vector<fs::path> files;
  if (fs::is_directory(dir)) {
    for (const fs::directory_entry& e : fs::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else if (fs::exists(dir)) {
    files.push_back(dir);
  }
  if (files.empty())
    throw std::runtime_error("no instance .json files under " + dir.string());
  return files;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

CutStage stage_from_token(const std::string& t) {
  if (t == "standard") return CutStage::Standard;
  if (t == "combinatorial") return CutStage::Combinatorial;
  return CutStage::Lifted;
}

// Final master for an instance: position variables plus every accumulated
// Benders cut realized as a row, ready for an external solver.
void export_master_mps(const Instance& inst, const std::vector<BendersCut>& cuts,
                       const fs::path& path) {
  NormalPositionTable table = build_table(inst);
  MasterModel master = build_master(inst, table);
  std::vector<LinearRow> extra;
  for (const BendersCut& cut : cuts) extra.push_back(realize_cut(cut, master, table));
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  write_mps_file(master.model, path.string(), inst.name, &extra);
}

void print_report(const Instance& inst, const SolveReport& rep) {
  std::cout << "method " << rep.method << "\n";
  std::cout << "status " << status_token(rep.status) << "\n";
  if (rep.objective) std::cout << "obj " << format_rational(*rep.objective) << "\n";
  if (std::isfinite(rep.lower_bound)) std::cout << "lb " << csv_number(rep.lower_bound) << "\n";
  std::optional<double> obj_d;
  if (rep.objective) obj_d = to_double(*rep.objective);
  std::string gap = format_gap_percent(obj_d, std::isfinite(rep.lower_bound)
                                                  ? std::optional<double>(rep.lower_bound)
                                                  : std::nullopt);
  if (!gap.empty()) std::cout << "gap_pct " << gap << "\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", rep.seconds);
  std::cout << "time_s " << buf << "\n";
  std::cout << "nodes " << rep.nodes << "\n";
  std::cout << "cuts " << rep.cuts_standard << " " << rep.cuts_combinatorial << " "
            << rep.cuts_lifted << "\n";
  std::cout << "ycheck_calls " << rep.ycheck_calls << "\n";
  std::snprintf(buf, sizeof(buf), "%.3f", rep.ycheck_seconds);
  std::cout << "ycheck_time_s " << buf << "\n";
  (void)inst;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact solvers and benchmarks for cost-weighted multi-strip packing"};
  app.require_subcommand(1);

  // generate
  std::string g_base, g_out;
  std::vector<int> g_m{2, 3};
  std::vector<std::string> g_schemes{"prop", "econ", "disecon"};
  CLI::App* gen = app.add_subcommand("generate", "Derive multi-strip instances from base files");
  gen->add_option("--base", g_base, "Base .txt file or directory")->required();
  gen->add_option("--out-dir", g_out, "Output directory for instance .json files")->required();
  gen->add_option("--m", g_m, "Strip counts to emit")->check(CLI::IsMember({2, 3}));
  gen->add_option("--scheme", g_schemes, "Cost schemes to emit")
      ->check(CLI::IsMember({"prop", "econ", "disecon"}));

  // solve
  std::string s_inst, s_method, s_cuts = "lifted", s_out, s_mps;
  double s_limit = 900.0;
  CLI::App* sol = app.add_subcommand("solve", "Run one exact method on one instance");
  sol->add_option("--instance", s_inst, "Instance .json file")->required();
  sol->add_option("--method", s_method, "bigm|bigm-le|bendm|oracle")
      ->required()
      ->check(CLI::IsMember({"bigm", "bigm-le", "bendm", "oracle"}));
  sol->add_option("--time-limit", s_limit, "Budget in seconds (default 900)");
  sol->add_option("--cuts", s_cuts, "Cut stage for bendm")
      ->check(CLI::IsMember({"standard", "combinatorial", "lifted"}));
  sol->add_option("--out", s_out, "Write the packing as json");
  sol->add_option("--mps-out", s_mps,
                  "Export the solved model (for bendm: final master plus accumulated cuts)");

  // lpbound
  std::string l_inst, l_which = "both";
  CLI::App* lpb = app.add_subcommand("lpbound", "Report LP relaxation bounds");
  lpb->add_option("--instance", l_inst, "Instance .json file")->required();
  lpb->add_option("--which", l_which, "pc|bigm|both")->check(CLI::IsMember({"pc", "bigm", "both"}));

  // ycheck
  std::string y_in, y_witness;
  bool y_no_column = false, y_no_area = false, y_no_free = false, y_no_sym = false,
       y_no_dom = false, y_no_lift = false, y_no_shrink = false;
  long long y_cap = 10000000;
  CLI::App* ych = app.add_subcommand("ycheck", "Decide one fixed-abscissa height check");
  ych->add_option("--input", y_in, "Placement .json file")->required();
  ych->add_option("--witness", y_witness, "Write feasible ordinates as json");
  ych->add_option("--node-cap", y_cap, "Abort past this many search nodes");
  ych->add_flag("--no-column-load", y_no_column, "Disable the column load prune");
  ych->add_flag("--no-area", y_no_area, "Disable the area prune");
  ych->add_flag("--no-free-space", y_no_free, "Disable the free space prune");
  ych->add_flag("--no-symmetry", y_no_sym, "Disable symmetry breaking");
  ych->add_flag("--no-dominance", y_no_dom, "Disable the dominance prune");
  ych->add_flag("--no-width-lift", y_no_lift, "Disable width lifting");
  ych->add_flag("--no-shrink", y_no_shrink, "Disable height shrinking");

  // export
  std::string e_inst, e_form = "bigm", e_out;
  CLI::App* exp = app.add_subcommand("export", "Write a formulation as fixed MPS");
  exp->add_option("--instance", e_inst, "Instance .json file")->required();
  exp->add_option("--formulation", e_form, "bigm|master")
      ->check(CLI::IsMember({"bigm", "master"}));
  exp->add_option("--out", e_out, "Output .mps path")->required();

  // bench
  std::string b_dir, b_out, b_cutlog, b_cuts = "lifted";
  std::vector<std::string> b_methods{"lp-bigm", "lp-pc", "bigm", "bigm-le", "bendm"};
  double b_limit = 900.0;
  CLI::App* ben = app.add_subcommand("bench", "Run methods over an instance directory");
  ben->add_option("--instances", b_dir, "Instance .json file or directory")->required();
  ben->add_option("--out", b_out, "Output .csv path")->required();
  ben->add_option("--methods", b_methods, "Methods to run")
      ->delimiter(',')
      ->check(CLI::IsMember(bench_methods()));
  ben->add_option("--time-limit", b_limit, "Budget in seconds per method run (default 900)");
  ben->add_option("--cuts", b_cuts, "Cut stage for bendm")
      ->check(CLI::IsMember({"standard", "combinatorial", "lifted"}));
  ben->add_option("--cut-log", b_cutlog, "Sidecar file, one line per Benders cut");

  // plot
  std::string p_csv, p_metric = "gap_pct", p_out, p_title;
  CLI::App* plt = app.add_subcommand("plot", "Render a box plot from a bench csv");
  plt->add_option("--csv", p_csv, "bench output .csv")->required();
  plt->add_option("--metric", p_metric, "Column to plot")
      ->check(CLI::IsMember({"obj", "lb", "gap_pct", "time_s", "nodes", "ycheck_calls",
                             "ycheck_time_s"}));
  plt->add_option("--out", p_out, "Output .svg path")->required();
  plt->add_option("--title", p_title, "Plot title (defaults to the metric)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*gen) {
    fs::create_directories(g_out);
    for (const fs::path& file : base_files(g_base)) {
      BaseSpp base = load_spp(file.string());
      for (int m : g_m)
        for (const std::string& tok : g_schemes) {
          Instance inst = generate_gmspp(base, m, scheme_from_token(tok));
          fs::path out = fs::path(g_out) / (inst.name + ".json");
          save_instance(inst, out.string());
          std::cout << "wrote " << out.string() << "\n";
        }
    }
    return 0;
  }

  if (*sol) {
    Instance inst = load_instance(s_inst);
    if (s_method == "oracle") {
      OracleResult res = solve_exact(inst);
      std::cout << "method oracle\nstatus optimal\nobj " << format_rational(res.objective)
                << "\n";
      if (!s_out.empty())
        write_text(s_out, packing_to_json(inst, res.packing).dump(2) + "\n");
      if (!s_mps.empty()) export_master_mps(inst, {}, s_mps);
      return 0;
    }
    SolveConfig cfg;
    cfg.time_limit = s_limit;
    cfg.cut_stage = stage_from_token(s_cuts);
    SolveReport rep = s_method == "bigm"      ? solve_bigm(inst, cfg)
                      : s_method == "bigm-le" ? solve_bigm_le(inst, cfg)
                                              : solve_bendm(inst, cfg);
    print_report(inst, rep);
    if (!s_out.empty() && rep.packing)
      write_text(s_out, packing_to_json(inst, *rep.packing).dump(2) + "\n");
    if (!s_mps.empty()) {
      if (s_method == "bendm") {
        export_master_mps(inst, rep.cuts, s_mps);
      } else {
        BigmModel model = build_bigm(inst);
        if (s_method == "bigm-le" && rep.root_bound)
          inject_lower_bound(model.model, inst, model.H, *rep.root_bound);
        if (fs::path(s_mps).has_parent_path())
          fs::create_directories(fs::path(s_mps).parent_path());
        write_mps_file(model.model, s_mps, inst.name);
      }
    }
    return 0;
  }

  if (*lpb) {
    Instance inst = load_instance(l_inst);
    using clock = std::chrono::steady_clock;
    if (l_which != "bigm") {
      auto t0 = clock::now();
      NormalPositionTable table = build_table(inst);
      Rational v = lp_pc_bound(inst, table);
      double secs = std::chrono::duration<double>(clock::now() - t0).count();
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", secs);
      std::cout << "lp_pc " << format_rational(v) << " " << buf << "\n";
    }
    if (l_which != "pc") {
      auto t0 = clock::now();
      double v = lp_bigm_bound(inst);
      double secs = std::chrono::duration<double>(clock::now() - t0).count();
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", secs);
      std::cout << "lp_bigm " << csv_number(v) << " " << buf << "\n";
    }
    return 0;
  }

  if (*ych) {
    std::ifstream in(y_in);
    if (!in) throw std::runtime_error("cannot open " + y_in);
    json j;
    try {
      in >> j;
    } catch (const json::exception& ex) {
      throw ParseError(y_in + ": " + ex.what());
    }
    YCheckInstance yc = ycheck_from_json(j);
    PruneConfig cfg;
    cfg.column_load = !y_no_column;
    cfg.area = !y_no_area;
    cfg.free_space = !y_no_free;
    cfg.symmetry = !y_no_sym;
    cfg.dominance = !y_no_dom;
    cfg.use_width_lift = !y_no_lift;
    cfg.use_shrink = !y_no_shrink;
    cfg.node_cap = y_cap;
    YCheckResult res = ycheck(yc, cfg);
    std::cout << "verdict " << (res.verdict == YVerdict::Feasible ? "feasible" : "infeasible")
              << "\n";
    std::cout << "nodes " << res.nodes << "\n";
    if (res.verdict == YVerdict::Feasible && !y_witness.empty()) {
      json w;
      w["y"] = res.y;
      write_text(y_witness, w.dump(2) + "\n");
    }
    return 0;
  }

  if (*exp) {
    Instance inst = load_instance(e_inst);
    if (e_form == "master") {
      export_master_mps(inst, {}, e_out);
    } else {
      BigmModel model = build_bigm(inst);
      if (fs::path(e_out).has_parent_path())
        fs::create_directories(fs::path(e_out).parent_path());
      write_mps_file(model.model, e_out, inst.name);
    }
    std::cout << "wrote " << e_out << "\n";
    return 0;
  }

  if (*ben) {
    SolveConfig cfg;
    cfg.time_limit = b_limit;
    cfg.cut_stage = stage_from_token(b_cuts);
    std::vector<BenchRow> rows;
    std::vector<std::string> cut_log;
    for (const fs::path& file : instance_files(b_dir)) {
      Instance inst = load_instance(file.string());
      for (const std::string& method : b_methods) {
        BenchRow row =
            run_bench_method(inst, method, cfg, b_cutlog.empty() ? nullptr : &cut_log);
        std::cerr << inst.name << " " << method << " done, time_s=" << row.time_s << "\n";
        rows.push_back(std::move(row));
      }
    }
    std::ostringstream os;
    write_bench_csv(rows, os);
    write_text(b_out, os.str());
    std::cout << "wrote " << b_out << "\n";
    if (!b_cutlog.empty()) {
      std::string text;
      for (const std::string& line : cut_log) text += line + "\n";
      write_text(b_cutlog, text);
      std::cout << "wrote " << b_cutlog << "\n";
    }
    return 0;
  }

  // plot
  std::ifstream in(p_csv);
  if (!in) throw std::runtime_error("cannot open " + p_csv);
  CsvTable table = read_csv(in);
  auto groups = csv_metric_by_method(table, p_metric);
  if (groups.empty()) throw std::invalid_argument("no plottable rows for " + p_metric);
  std::string title = p_title.empty() ? p_metric + " by method" : p_title;
  write_text(p_out, svg_boxplot(groups, title, p_metric));
  std::cout << "wrote " << p_out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const YCheckUndecided& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
