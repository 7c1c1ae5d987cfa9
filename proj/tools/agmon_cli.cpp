// agmon: generate discrete Schrodinger problems on graphs, compute spectra
// and Agmon distance matrices, and verify the two-point decay bound.
//
// Exit codes: 0 ok / bounds hold; 1 bound or max-principle violation;
// 2 usage error; 3 input/validation error; 4 convergence failure.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "agmon/emit.hpp"
#include "agmon/graph.hpp"
#include "agmon/metric.hpp"
#include "agmon/rng.hpp"
#include "agmon/verifier.hpp"
#include "json.hpp"

namespace {

using namespace agmon;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitConvergence = 4;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::invalid_spec: return kExitUsage;
    case Errc::convergence_failure: return kExitConvergence;
    default: return kExitInput;
  }
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) fail(Errc::malformed_input, "cannot open output file " + out_path);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(Errc::malformed_input, "cannot open input file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct GenOptions {
  std::string family;
  int n = 0;
  int rows = 0, cols = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  int max_retries = 1000;
  std::optional<double> w_const;
  std::vector<double> w_uniform;  // lo hi
  std::uint64_t w_seed = 0;
  std::string name;
};

Problem run_gen(const GenOptions& o) {
  FamilySpec spec;
  if (o.family == "path") {
    spec = FamilySpec::path(o.n);
  } else if (o.family == "cycle") {
    spec = FamilySpec::cycle(o.n);
  } else if (o.family == "complete") {
    spec = FamilySpec::complete(o.n);
  } else if (o.family == "grid") {
    spec = FamilySpec::grid(o.rows, o.cols);
  } else if (o.family == "er") {
    spec = FamilySpec::erdos_renyi(o.n, o.p, o.seed, o.max_retries);
  } else {
    fail(Errc::invalid_spec, "unknown family \"" + o.family + "\"");
  }
  Problem prob;
  prob.graph = gen_family(spec);
  if (o.w_const && !o.w_uniform.empty())
    fail(Errc::invalid_spec, "give at most one of --w-const and --w-uniform");
  if (!o.w_uniform.empty()) {
    if (o.w_uniform[0] > o.w_uniform[1]) fail(Errc::invalid_spec, "--w-uniform needs lo <= hi");
    prob.potential = uniform_potential(prob.graph.n, o.w_uniform[0], o.w_uniform[1], o.w_seed);
  } else {
    prob.potential = const_potential(prob.graph.n, o.w_const.value_or(0.0));
  }
  prob.name = o.name.empty() ? spec.label() : o.name;
  return prob;
}

// ---- sweep ----------------------------------------------------------------

struct SweepFamily {
  FamilySpec spec;   // seed filled per trial for er
  std::string label; // descriptor without the per-trial seed
};

struct SweepConfig {
  std::vector<SweepFamily> families;
  enum class PotModel { constant, uniform, file } model = PotModel::constant;
  double c = 0.0, lo = 0.0, hi = 0.0;
  std::string file_path;
  std::uint64_t seed = 0;
  int trials = 1;
  Mode mode = Mode::literal;
  double tol = 1e-10;
};

SweepConfig parse_sweep_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::malformed_input, e.what());
  }
  if (!doc.is_object()) fail(Errc::malformed_input, "config must be an object");
  SweepConfig cfg;
  if (!doc.contains("families") || !doc["families"].is_array() || doc["families"].empty())
    fail(Errc::invalid_spec, "config needs a non-empty \"families\" array");
  for (const auto& fam : doc["families"]) {
    if (!fam.is_object() || !fam.contains("family"))
      fail(Errc::invalid_spec, "family entries need a \"family\" key");
    const std::string kind = fam["family"].get<std::string>();
    SweepFamily sf;
    if (kind == "path") sf.spec = FamilySpec::path(fam.value("n", 0));
    else if (kind == "cycle") sf.spec = FamilySpec::cycle(fam.value("n", 0));
    else if (kind == "complete") sf.spec = FamilySpec::complete(fam.value("n", 0));
    else if (kind == "grid") sf.spec = FamilySpec::grid(fam.value("rows", 0), fam.value("cols", 0));
    else if (kind == "er")
      sf.spec = FamilySpec::erdos_renyi(fam.value("n", 0), fam.value("p", 0.0), 0,
                                        fam.value("max_retries", 1000));
    else fail(Errc::invalid_spec, "unknown family \"" + kind + "\"");
    if (kind == "er")
      sf.label = "er(n=" + std::to_string(sf.spec.n) + ",p=" + fmt17(sf.spec.p) + ")";
    else
      sf.label = sf.spec.label();
    cfg.families.push_back(std::move(sf));
  }
  if (doc.contains("potential")) {
    const auto& pot = doc["potential"];
    const std::string model = pot.value("model", "const");
    if (model == "const") {
      cfg.model = SweepConfig::PotModel::constant;
      cfg.c = pot.value("c", 0.0);
    } else if (model == "uniform") {
      cfg.model = SweepConfig::PotModel::uniform;
      cfg.lo = pot.value("lo", 0.0);
      cfg.hi = pot.value("hi", 0.0);
      if (cfg.lo > cfg.hi) fail(Errc::invalid_spec, "potential needs lo <= hi");
    } else if (model == "file") {
      cfg.model = SweepConfig::PotModel::file;
      if (!pot.contains("path")) fail(Errc::invalid_spec, "file potential needs \"path\"");
      cfg.file_path = pot["path"].get<std::string>();
    } else {
      fail(Errc::invalid_spec, "unknown potential model \"" + model + "\"");
    }
  }
  cfg.seed = doc.value("seed", 0ull);
  cfg.trials = doc.value("trials", 1);
  if (cfg.trials < 1) fail(Errc::invalid_spec, "trials must be >= 1");
  if (doc.contains("mode")) cfg.mode = parse_mode(doc["mode"].get<std::string>());
  cfg.tol = doc.value("tol", 1e-10);
  if (cfg.tol <= 0.0) fail(Errc::invalid_spec, "tol must be positive");
  return cfg;
}

struct TrialOutcome {
  int violations = 0;
  int mp_failures = 0;
  bool convergence_failed = false;
  double max_ratio = 0.0;
  std::vector<double> decaying_ratios;
  std::size_t exact_matches = 0;
};

double nearest_rank(const std::vector<double>& sorted, double percentile) {
  auto rank = static_cast<std::size_t>(
      std::ceil(percentile / 100.0 * static_cast<double>(sorted.size())));
  if (rank < 1) rank = 1;
  if (rank > sorted.size()) rank = sorted.size();
  return sorted[rank - 1];
}

int run_sweep(const SweepConfig& cfg, int jobs, const std::string& out_path, bool quiet) {
  // Seeds come from one splitmix64 stream, two draws per (family, trial) in
  // config order, so results do not depend on --jobs.
  SplitMix64 seeder(cfg.seed);
  struct Task {
    std::size_t family;
    int trial;
    std::uint64_t graph_seed, pot_seed;
  };
  std::vector<Task> tasks;
  for (std::size_t fi = 0; fi < cfg.families.size(); ++fi)
    for (int t = 0; t < cfg.trials; ++t)
      tasks.push_back({fi, t, seeder.next(), seeder.next()});

  std::vector<double> file_potential;
  if (cfg.model == SweepConfig::PotModel::file) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(read_file(cfg.file_path));
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::malformed_input, e.what());
    }
    if (!doc.is_array()) fail(Errc::malformed_input, "potential file must be a JSON array");
    for (const auto& x : doc) file_potential.push_back(x.get<double>());
  }

  std::vector<TrialOutcome> outcomes(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      TrialOutcome& out = outcomes[i];
      try {
        FamilySpec spec = cfg.families[task.family].spec;
        if (spec.kind == FamilySpec::Kind::erdos_renyi) spec.seed = task.graph_seed;
        Problem prob;
        prob.graph = gen_family(spec);
        switch (cfg.model) {
          case SweepConfig::PotModel::constant:
            prob.potential = const_potential(prob.graph.n, cfg.c);
            break;
          case SweepConfig::PotModel::uniform:
            prob.potential = uniform_potential(prob.graph.n, cfg.lo, cfg.hi, task.pot_seed);
            break;
          case SweepConfig::PotModel::file:
            if (static_cast<int>(file_potential.size()) != prob.graph.n)
              fail(Errc::length_mismatch, "file potential length does not match n");
            prob.potential = file_potential;
            break;
        }
        prob.name = cfg.families[task.family].label + "#" + std::to_string(task.trial);
        auto report = verify_problem(prob, cfg.tol, cfg.mode);
        out.violations = report.total_violations;
        for (const auto& s : report.eigenpairs) {
          if (!s.max_principle_holds) ++out.mp_failures;
          out.max_ratio = std::max(out.max_ratio, s.max_ratio);
        }
        out.exact_matches = report.tightness.exact_matches;
        out.decaying_ratios = std::move(report.decaying_ratios);
      } catch (const Error& e) {
        if (e.code() == Errc::convergence_failure)
          out.convergence_failed = true;
        else
          throw;
      }
    }
  };
  if (jobs < 1) jobs = 1;
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // aggregate in (family, trial) order
  std::string out = "{\"mode\":\"" + std::string(mode_name(cfg.mode)) + "\"";
  out += ",\"seed\":" + std::to_string(cfg.seed);
  out += ",\"trials\":" + std::to_string(cfg.trials);
  out += ",\"families\":[";
  long total_violations = 0;
  for (std::size_t fi = 0; fi < cfg.families.size(); ++fi) {
    if (fi) out += ",";
    long fam_viol = 0, fam_mp = 0, fam_conv = 0;
    double fam_max_ratio = 0.0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].family != fi) continue;
      fam_viol += outcomes[i].violations;
      fam_mp += outcomes[i].mp_failures;
      fam_conv += outcomes[i].convergence_failed ? 1 : 0;
      fam_max_ratio = std::max(fam_max_ratio, outcomes[i].max_ratio);
    }
    total_violations += fam_viol;
    out += "{\"family\":\"" + json_escape(cfg.families[fi].label) + "\"";
    out += ",\"trials\":" + std::to_string(cfg.trials);
    out += ",\"violations\":" + std::to_string(fam_viol);
    out += ",\"max_principle_failures\":" + std::to_string(fam_mp);
    out += ",\"convergence_failures\":" + std::to_string(fam_conv);
    out += ",\"max_ratio\":" + json_number(fam_max_ratio) + "}";
  }
  out += "],\"tightness\":{";
  std::vector<double> pooled;
  std::size_t pooled_exact = 0;
  for (const auto& o : outcomes) {
    pooled.insert(pooled.end(), o.decaying_ratios.begin(), o.decaying_ratios.end());
    pooled_exact += o.exact_matches;
  }
  std::sort(pooled.begin(), pooled.end());
  out += "\"decaying_pairs\":" + std::to_string(pooled.size());
  out += ",\"exact_matches\":" + std::to_string(pooled_exact);
  out += std::string(",\"no_decaying_pairs\":") + (pooled.empty() ? "true" : "false");
  if (!pooled.empty()) {
    out += ",\"median\":" + fmt17(nearest_rank(pooled, 50.0));
    out += ",\"p90\":" + fmt17(nearest_rank(pooled, 90.0));
    out += ",\"max\":" + fmt17(pooled.back());
  }
  out += "},\"total_violations\":" + std::to_string(total_violations) + "}\n";
  write_output(out, out_path);
  if (!quiet)
    std::fprintf(stderr, "sweep: %zu trials, %ld violations\n", tasks.size(), total_violations);
  return (cfg.mode == Mode::literal && total_violations > 0) ? kExitViolation : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agmon distances and eigenfunction decay bounds on finite graphs"};
  app.require_subcommand(1);
  std::string out_path;
  bool quiet = false;
  app.add_option("--out", out_path, "write the primary output document to FILE");
  app.add_flag("--quiet", quiet, "suppress diagnostics on stderr");

  GenOptions gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a problem file");
  cmd_gen->fallthrough();
  cmd_gen->add_option("--family", gen.family, "path|cycle|complete|grid|er")->required();
  cmd_gen->add_option("--n", gen.n, "vertex count");
  cmd_gen->add_option("--rows", gen.rows, "grid rows");
  cmd_gen->add_option("--cols", gen.cols, "grid cols");
  cmd_gen->add_option("--p", gen.p, "er edge probability");
  cmd_gen->add_option("--seed", gen.seed, "er graph seed");
  cmd_gen->add_option("--max-retries", gen.max_retries, "er connectivity retries");
  double w_const_val = 0.0;
  auto* w_const_opt = cmd_gen->add_option("--w-const", w_const_val, "constant potential");
  cmd_gen->add_option("--w-uniform", gen.w_uniform, "uniform potential bounds lo hi")->expected(2);
  cmd_gen->add_option("--w-seed", gen.w_seed, "potential seed");
  cmd_gen->add_option("--name", gen.name, "problem name (default: family label)");

  std::string input_path;
  double tol = 1e-10;
  auto* cmd_spectrum = app.add_subcommand("spectrum", "eigenpairs of L + diag(W)");
  cmd_spectrum->fallthrough();
  cmd_spectrum->add_option("--input", input_path, "problem file")->required();
  cmd_spectrum->add_option("--tol", tol, "eigensolver tolerance");

  double energy = 0.0;
  std::string mode_str = "literal";
  std::vector<int> pair;
  bool witness = false;
  auto* cmd_dist = app.add_subcommand("dist", "Agmon distance matrix or a single pair");
  cmd_dist->fallthrough();
  cmd_dist->add_option("--input", input_path, "problem file")->required();
  cmd_dist->add_option("--energy", energy, "energy E")->required();
  cmd_dist->add_option("--mode", mode_str, "literal|strict");
  cmd_dist->add_option("--pair", pair, "vertex pair u v")->expected(2);
  cmd_dist->add_flag("--witness", witness, "also print the witness walk");

  std::string report_path;
  auto* cmd_verify = app.add_subcommand("verify", "check the decay bound for every eigenpair");
  cmd_verify->fallthrough();
  cmd_verify->add_option("--input", input_path, "problem file")->required();
  cmd_verify->add_option("--mode", mode_str, "literal|strict");
  cmd_verify->add_option("--tol", tol, "eigensolver tolerance");
  cmd_verify->add_option("--report", report_path, "write the report document to FILE");

  std::string config_path;
  int jobs = 1;
  auto* cmd_sweep = app.add_subcommand("sweep", "verify an ensemble from a config file");
  cmd_sweep->fallthrough();
  cmd_sweep->add_option("--config", config_path, "sweep config file")->required();
  cmd_sweep->add_option("--jobs", jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) {
      if (w_const_opt->count() > 0) gen.w_const = w_const_val;
      write_output(serialize_problem(run_gen(gen)), out_path);
      return 0;
    }
    if (cmd_spectrum->parsed()) {
      const Problem prob = parse_problem(read_file(input_path));
      write_output(spectrum_json(eigendecompose(assemble_operator(prob), tol)), out_path);
      return 0;
    }
    if (cmd_dist->parsed()) {
      const Problem prob = parse_problem(read_file(input_path));
      const Mode mode = parse_mode(mode_str);
      const auto field = agmon_field(prob, energy);
      if (pair.empty()) {
        write_output(distance_matrix_csv(rho_matrix(field, mode)), out_path);
        return 0;
      }
      if (pair[0] < 0 || pair[0] >= prob.graph.n || pair[1] < 0 || pair[1] >= prob.graph.n)
        fail(Errc::invalid_spec, "--pair vertices out of range");
      const auto result = rho(field, pair[0], pair[1], mode);
      std::string text = fmt17(result.value) + "\n";
      if (witness) {
        for (std::size_t i = 0; i < result.witness.size(); ++i) {
          if (i) text += " ";
          text += std::to_string(result.witness[i]);
        }
        text += "\n";
      }
      write_output(text, out_path);
      return 0;
    }
    if (cmd_verify->parsed()) {
      const Problem prob = parse_problem(read_file(input_path));
      const Mode mode = parse_mode(mode_str);
      const auto report = verify_problem(prob, tol, mode);
      write_output(report_json(report), report_path.empty() ? out_path : report_path);
      if (!quiet) {
        std::fprintf(stderr, "problem '%s' [%s]: %d violation(s), max principle %s\n",
                     report.problem.c_str(), mode_name(report.mode), report.total_violations,
                     report.all_max_principle_hold ? "holds" : "FAILED");
        if (!report.violations.empty()) {
          const auto& c = report.violations.front();
          const auto eigenpairs = eigendecompose(assemble_operator(prob), tol);
          const auto& e = eigenpairs[c.eigen_index];
          const auto field = agmon_field(prob, e.energy);
          const auto rr = rho(field, c.u, c.v, mode);
          std::string phi;
          for (std::size_t i = 0; i < e.vector.size(); ++i)
            phi += (i ? "," : "") + fmt17(e.vector[i]);
          std::string walk;
          for (std::size_t i = 0; i < rr.witness.size(); ++i)
            walk += (i ? " " : "") + std::to_string(rr.witness[i]);
          std::fprintf(stderr,
                       "first violation witness:\n  problem: %s  energy E = %s (index %d)\n"
                       "  phi = [%s]\n  pair (u,v) = (%d,%d)  rho = %s  walk: %s\n"
                       "  lhs = %s  rhs = %s  ratio = %s\n",
                       serialize_problem(prob).c_str(), fmt17(e.energy).c_str(), c.eigen_index,
                       phi.c_str(), c.u, c.v, fmt17(c.rho_value).c_str(), walk.c_str(),
                       fmt17(c.lhs).c_str(), fmt17(c.rhs).c_str(), fmt17(c.ratio).c_str());
        }
      }
      return (report.total_violations == 0 && report.all_max_principle_hold) ? 0 : kExitViolation;
    }
    if (cmd_sweep->parsed()) {
      const SweepConfig cfg = parse_sweep_config(read_file(config_path));
      return run_sweep(cfg, jobs, out_path, quiet);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  }
  return kExitUsage;
}
