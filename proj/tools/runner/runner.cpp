#include "runner/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <thread>
#include <vector>

#include "json.hpp"
#include "runner/report.hpp"
#include "runner/scenarios.hpp"

namespace nlparab::tools {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Job {
  std::string part;
  double alpha = 0.0;
};

std::vector<std::string> parts_for(const std::string& scenario) {
  if (scenario == "membership") return {"membership"};
  if (scenario == "inequalities") return {"functional"};
  if (scenario == "harnack") return {"harnack"};
  if (scenario == "holder") return {"holder"};
  return {"membership", "functional", "harnack", "holder"};
}

AlphaBlock run_job(const ExperimentConfig& cfg, const Job& j) {
  if (j.part == "membership") return run_membership_alpha(cfg, j.alpha);
  if (j.part == "functional") return run_functional_alpha(cfg, j.alpha);
  if (j.part == "harnack") return run_harnack_alpha(cfg, j.alpha);
  return run_holder_alpha(cfg, j.alpha);
}

std::string alpha_tag(double a) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", a);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

struct SummaryRow {
  std::string part;
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// max/min over the sweep; all-zero families count as uniform, a zero against
// a positive value does not
double uniformity_ratio(const std::vector<double>& values) {
  double lo = kInf, hi = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) return kInf;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == 0.0) return 1.0;
  if (lo == 0.0) return kInf;
  return hi / lo;
}

const std::vector<std::string>& gated_constants(const std::string& part) {
  static const std::vector<std::string> harnack{
      "harnack_quotient",   "iterate_inf_C",      "iterate_L1_C",
      "caccioppoli_c",      "moment_step_minus_c", "moment_step_plus_c",
      "bombieri_C"};
  static const std::vector<std::string> functional{"sobolev_S", "poincare_c2"};
  static const std::vector<std::string> none{};
  if (part == "harnack") return harnack;
  if (part == "functional") return functional;
  return none;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  validate_config(cfg);
  fs::create_directories(cfg.out_dir);

  // alpha-free random-instance suites first
  std::vector<SuiteResult> suites;
  const bool wants_algebraic =
      cfg.scenario == "inequalities" || cfg.scenario == "full";
  if (wants_algebraic) suites = run_algebraic_suites(cfg);

  // fan out the per-alpha jobs; results land by index, so the collector
  // below is deterministic whatever the thread budget
  std::vector<Job> jobs;
  for (const std::string& part : parts_for(cfg.scenario))
    for (double a : cfg.sweep) jobs.push_back({part, a});
  std::vector<AlphaBlock> blocks(jobs.size());
  const int workers =
      std::max(1, std::min<int>(cfg.threads, int(jobs.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        blocks[i] = run_job(cfg, jobs[i]);
      } catch (const std::exception& e) {
        blocks[i].part = jobs[i].part;
        blocks[i].alpha = jobs[i].alpha;
        blocks[i].failures.push_back(e.what());
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // single collector from here on
  Json manifest;
  manifest["scenario"] = cfg.scenario;
  manifest["seed"] = cfg.seed;
  Json sweep_json = Json::array();
  for (double a : cfg.sweep) sweep_json.push_back(num12(a));
  manifest["sweep"] = sweep_json;
  Json files = Json::array();

  const double gap_tol = cfg.threshold("gap", -1e-12);
  std::vector<SummaryRow> summary;
  std::vector<std::string> failures;

  for (const SuiteResult& s : suites) {
    const std::string name = "algebraic_" + s.name + ".csv";
    write_text(fs::path(cfg.out_dir) / name, csv_text(s.worst));
    Json file;
    file["path"] = name;
    Json cols = Json::array();
    for (const std::string& c : s.worst.columns) {
      Json col;
      col["name"] = c;
      col["op"] = (c == "rank") ? "ordering" : s.name;
      cols.push_back(col);
    }
    file["columns"] = cols;
    file["trials"] = s.trials;
    files.push_back(file);

    const bool pass = s.violations == 0 && s.worst_rel_gap >= gap_tol;
    summary.push_back(
        {"algebraic", s.name + "_worst_rel_gap", s.worst_rel_gap, gap_tol, pass});
    if (!pass)
      failures.push_back("algebraic suite " + s.name + " has gaps below " +
                         num12(gap_tol));
  }

  // per-alpha CSV blocks, one file per (part, alpha)
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const AlphaBlock& b = blocks[i];
    const std::string name = b.part + "_" + alpha_tag(b.alpha) + ".csv";
    Table t;
    t.columns = {"alpha", "constant", "value"};
    Json row_ops;
    for (const ConstantRow& row : b.rows) {
      t.add_row({num12(b.alpha), row.name, num12(row.value)});
      row_ops[row.name] = row.op;
    }
    write_text(fs::path(cfg.out_dir) / name, csv_text(t));
    Json file;
    file["path"] = name;
    Json cols = Json::array();
    for (const char* c : {"alpha", "constant", "value"}) {
      Json col;
      col["name"] = c;
      col["op"] = std::string(c) == "value" ? "see row_ops" : "sweep label";
      cols.push_back(col);
    }
    file["columns"] = cols;
    file["row_ops"] = row_ops;
    files.push_back(file);

    if (!b.field_export.empty()) {
      const std::string fname = "field_" + b.part + "_" + alpha_tag(b.alpha) + ".csv";
      write_text(fs::path(cfg.out_dir) / fname, b.field_export);
      Json ffile;
      ffile["path"] = fname;
      Json fcols = Json::array();
      for (const std::string& c :
           cfg.dim == 1 ? std::vector<std::string>{"t", "x", "value"}
                        : std::vector<std::string>{"t", "x1", "x2", "value"}) {
        Json col;
        col["name"] = c;
        col["op"] = "solve";
        fcols.push_back(col);
      }
      ffile["columns"] = fcols;
      files.push_back(ffile);
    }

    for (const std::string& f : b.failures)
      failures.push_back(b.part + " alpha=" + alpha_tag(b.alpha) + ": " + f);
  }

  // cross-alpha uniformity of the gated empirical constants
  const double uni = cfg.threshold("alpha_uniformity", 10.0);
  for (const std::string& part : parts_for(cfg.scenario)) {
    for (const std::string& cname : gated_constants(part)) {
      std::vector<double> values;
      for (const AlphaBlock& b : blocks) {
        if (b.part != part) continue;
        for (const ConstantRow& row : b.rows)
          if (row.name == cname) values.push_back(row.value);
      }
      if (values.empty()) continue;
      const double ratio = uniformity_ratio(values);
      const bool pass = ratio <= uni;
      summary.push_back({part, cname + "_max_over_min", ratio, uni, pass});
      if (!pass)
        failures.push_back(part + " constant " + cname +
                           " not alpha-uniform: ratio " + num12(ratio));
    }
    if (part == "membership") {
      double all = 1.0;
      for (const AlphaBlock& b : blocks)
        if (b.part == part)
          for (const ConstantRow& row : b.rows)
            if (row.name == "membership_pass") all = std::min(all, row.value);
      summary.push_back({part, "membership_all_pass", all, 1.0, all >= 1.0});
      if (all < 1.0) failures.push_back("membership checks failed");
    }
    if (part == "holder") {
      double beta_min = kInf, holder_all = 1.0, bound_all = 1.0;
      for (const AlphaBlock& b : blocks) {
        if (b.part != part) continue;
        for (const ConstantRow& row : b.rows) {
          if (row.name == "beta_fit") beta_min = std::min(beta_min, row.value);
          if (row.name == "holder_pass") holder_all = std::min(holder_all, row.value);
          if (row.name == "osc_bound_pass") bound_all = std::min(bound_all, row.value);
        }
      }
      summary.push_back({part, "beta_fit_min", beta_min, 0.0, beta_min > 0.0});
      summary.push_back({part, "holder_all_pass", holder_all, 1.0, holder_all >= 1.0});
      summary.push_back({part, "osc_bound_all_pass", bound_all, 1.0, bound_all >= 1.0});
      if (!(beta_min > 0.0)) failures.push_back("beta_fit not positive");
      if (holder_all < 1.0) failures.push_back("holder seminorm bound failed");
      if (bound_all < 1.0) failures.push_back("oscillation decay bound failed");
    }
  }

  Table sum;
  sum.columns = {"part", "name", "value", "threshold", "pass"};
  for (const SummaryRow& r : summary)
    sum.add_row({r.part, r.name, num12(r.value), num12(r.threshold),
                 r.pass ? "1" : "0"});
  write_text(fs::path(cfg.out_dir) / "summary.csv", csv_text(sum));
  {
    Json file;
    file["path"] = "summary.csv";
    Json cols = Json::array();
    for (const char* c : {"part", "name", "value", "threshold", "pass"}) {
      Json col;
      col["name"] = c;
      col["op"] = "collector";
      cols.push_back(col);
    }
    file["columns"] = cols;
    files.push_back(file);
  }

  const bool pass = failures.empty();
  manifest["pass"] = pass;
  Json fail_json = Json::array();
  for (const std::string& f : failures) fail_json.push_back(f);
  manifest["failures"] = fail_json;
  Json summary_json = Json::array();
  for (const SummaryRow& r : summary) {
    Json row;
    row["part"] = r.part;
    row["name"] = r.name;
    row["value"] = num12(r.value);
    row["threshold"] = num12(r.threshold);
    row["pass"] = r.pass;
    summary_json.push_back(row);
  }
  manifest["summary"] = summary_json;
  manifest["files"] = files;
  write_text(fs::path(cfg.out_dir) / "manifest.json", manifest.dump(2) + "\n");

  for (const std::string& f : failures) log << "criterion failed: " << f << "\n";
  log << (pass ? "PASS" : "FAIL") << " scenario=" << cfg.scenario << " ("
      << jobs.size() << " alpha jobs, " << suites.size() << " suites)\n";
  return pass ? 0 : 1;
}

}  // namespace nlparab::tools
