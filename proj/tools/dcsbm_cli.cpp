#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dcsbm/core.hpp"
#include "dcsbm/experiment.hpp"
#include "dcsbm/io.hpp"
#include "dcsbm/likelihood.hpp"
#include "dcsbm/marginal.hpp"
#include "dcsbm/sampler.hpp"
#include "dcsbm/selection.hpp"
#include "dcsbm/theory.hpp"

namespace {

using namespace dcsbm;

/// Writes `text` to `path`, or to stdout when the path is empty or "-".
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Network read_input_network(const std::string& path) {
  if (path == "-") return read_network(std::cin);
  return load_network(path);
}

Json evidence_json(const EvidenceResult& r) {
  auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
  return Json{{"k", r.k},
              {"backend", to_string(r.backend)},
              {"log_p", num(r.log_p)},
              {"lower", num(r.lower)},
              {"upper", num(r.upper)},
              {"rigorous", r.rigorous},
              {"terms_evaluated", r.terms_evaluated}};
}

EvidenceBackend parse_backend(const std::string& name) {
  return evidence_backend_from_string(name);
}

struct GenerateArgs {
  int n = 10;
  int k0 = 2;
  std::string mode = "hierarchical";
  std::string params;
  std::string labels;
  std::string weights = "dirichlet";
  double rho = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string labels_out;
  std::string params_out;
};

int run_generate(const GenerateArgs& a) {
  GeneratorConfig cfg;
  cfg.n = a.n;
  cfg.k0 = a.k0;
  cfg.rho = a.rho;
  cfg.seed = a.seed;
  cfg.weight_mode = a.weights == "unit" ? WeightMode::kUnit : WeightMode::kDirichlet;
  if (a.mode == "fixed") {
    if (a.params.empty()) throw std::invalid_argument("--mode fixed needs --params");
    cfg.mode = GeneratorMode::kFixed;
    cfg.fixed = params_from_json(load_json(a.params));
    cfg.k0 = cfg.fixed->k();
    if (!a.labels.empty()) cfg.labels = labels_from_json(load_json(a.labels));
  } else {
    cfg.mode = GeneratorMode::kHierarchical;
  }
  const Draw draw = generate(cfg);
  std::ostringstream net;
  write_network(net, draw.network);
  emit(a.out, net.str());
  if (!a.labels_out.empty()) emit(a.labels_out, dump(to_json(draw.labels)));
  if (!a.params_out.empty()) emit(a.params_out, dump(to_json(draw.params)));
  std::clog << "generated n=" << draw.network.size() << " k0=" << draw.labels.k
            << " edges=" << draw.network.total() / 2 << '\n';
  return 0;
}

struct NetworkArgs {
  std::string network = "-";
  std::string labels;
  std::string params;
  std::string out;
};

int run_stats(const NetworkArgs& a) {
  const Network x = read_input_network(a.network);
  Json j{{"n", x.size()},
         {"total", x.total()},
         {"log_c", log_c(x)},
         {"omega_member", omega_membership(x)}};
  if (!a.labels.empty()) {
    const Labels z = labels_from_json(load_json(a.labels));
    j["stats"] = to_json(compute_stats(x, z));
  }
  emit(a.out, dump(j));
  return 0;
}

int run_loglik(const NetworkArgs& a) {
  const Network x = read_input_network(a.network);
  const Labels z = labels_from_json(load_json(a.labels));
  Json j{{"n", x.size()}, {"k", z.k}};
  const ModelParams mle = mle_params(x, z);
  j["log_profile_sup"] = log_profile_sup(x, z);
  j["mle"] = to_json(mle);
  const EvidenceTerms terms = log_abc(x, z);
  j["log_evidence_term"] = terms.total() - log_c(x);
  if (!a.params.empty()) {
    const double v = log_joint(x, z, params_from_json(load_json(a.params)));
    j["log_joint"] = std::isfinite(v) ? Json(v) : Json(nullptr);
  }
  emit(a.out, dump(j));
  return 0;
}

struct MarginalArgs {
  std::string network = "-";
  int k = 1;
  std::string backend = "exact";
  std::uint64_t budget = kDefaultBudget;
  int restarts = 10;
  int max_sweeps = 100;
  bool exhaustive_search = false;
  std::uint64_t seed = 0;
  std::string out;
};

int run_marginal(const MarginalArgs& a) {
  const Network x = read_input_network(a.network);
  EvidenceResult r;
  if (parse_backend(a.backend) == EvidenceBackend::kExact) {
    ExactOptions opts;
    opts.budget = a.budget;
    r = log_marginal_exact(x, a.k, opts);
  } else {
    Rng rng(a.seed);
    const SearchStrategy search = a.exhaustive_search
                                      ? SearchStrategy::exhaustive(a.budget)
                                      : SearchStrategy::greedy(a.restarts, a.max_sweeps);
    r = log_marginal_bracket(x, a.k, search, rng);
  }
  emit(a.out, dump(evidence_json(r)));
  return 0;
}

struct SelectArgs {
  std::string network = "-";
  int k_max = 0;
  std::string backend = "exact";
  std::uint64_t budget = kDefaultBudget;
  int restarts = 10;
  int max_sweeps = 100;
  bool allow_partial = false;
  std::uint64_t seed = 0;
  std::string out;
};

int run_select(const SelectArgs& a) {
  const Network x = read_input_network(a.network);
  SelectionOptions opts;
  opts.backend = parse_backend(a.backend);
  opts.exact.budget = a.budget;
  opts.search = SearchStrategy::greedy(a.restarts, a.max_sweeps);
  opts.seed = a.seed;
  opts.allow_partial = a.allow_partial;
  const int k_max = a.k_max > 0 ? a.k_max : x.size();
  const SelectionReport report = select_k(x, k_max, opts);
  for (const auto& w : report.warnings) std::clog << "warning: " << w << '\n';
  emit(a.out, dump(to_json(report)));
  return 0;
}

struct CheckArgs {
  std::uint64_t seed = 0;
  std::string out;
};

int run_check(const CheckArgs& a) {
  const auto sweeps = run_theory_sweeps(a.seed);
  Json rows = Json::array();
  bool ok = true;
  for (const auto& s : sweeps) {
    ok = ok && s.passed();
    rows.push_back(Json{{"name", s.name},
                        {"cases", s.cases},
                        {"failures", s.failures},
                        {"worst_margin", s.worst_margin},
                        {"witness", s.witness}});
    std::clog << (s.passed() ? "ok   " : "FAIL ") << s.name << "  cases=" << s.cases
              << " failures=" << s.failures
              << " worst_margin=" << format_double(s.worst_margin) << '\n';
    if (!s.passed()) std::clog << "     witness: " << s.witness << '\n';
  }
  emit(a.out, dump(Json{{"seed", a.seed}, {"passed", ok}, {"sweeps", rows}}));
  return ok ? 0 : 1;
}

struct ExperimentArgs {
  std::string config;
  std::string out;
  std::string summary;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> backend;
  std::optional<int> k_max;
  std::optional<std::uint64_t> budget;
};

int run_experiment_cmd(const ExperimentArgs& a) {
  ExperimentConfig cfg = experiment_config_from_json(load_json(a.config));
  if (a.threads) cfg.threads = *a.threads;
  if (a.seed) cfg.seed = *a.seed;
  if (a.backend) cfg.backend = parse_backend(*a.backend);
  if (a.k_max) cfg.k_max = *a.k_max;
  if (a.budget) cfg.budget = *a.budget;
  if (!a.out.empty()) cfg.output = a.out;

  const ExperimentResult result = run_experiment(cfg);
  std::ostringstream trials;
  write_trials_csv(trials, result.trials, cfg.k_max);
  emit(cfg.output, trials.str());

  std::ostringstream summary;
  write_summary_csv(summary, result.summary);
  if (!a.summary.empty()) emit(a.summary, summary.str());
  std::clog << summary.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Degree-corrected stochastic block model: generation, evidence and "
               "selection of the number of communities"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Sample a network");
  generate_cmd->add_option("--n", gen.n, "Number of nodes")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--k0", gen.k0, "Number of communities (hierarchical mode)")
      ->check(CLI::PositiveNumber);
  generate_cmd->add_option("--mode", gen.mode, "hierarchical or fixed")
      ->check(CLI::IsMember({"hierarchical", "fixed"}));
  generate_cmd->add_option("--params", gen.params, "Parameter JSON (fixed mode)");
  generate_cmd->add_option("--labels", gen.labels, "Planted labels JSON (fixed mode)");
  generate_cmd->add_option("--weights", gen.weights, "dirichlet or unit")
      ->check(CLI::IsMember({"dirichlet", "unit"}));
  generate_cmd->add_option("--rho", gen.rho, "Sparsity scale (hierarchical mode)");
  generate_cmd->add_option("--seed", gen.seed, "Root seed");
  generate_cmd->add_option("--out", gen.out, "Network output (default stdout)");
  generate_cmd->add_option("--labels-out", gen.labels_out, "Write planted labels JSON");
  generate_cmd->add_option("--params-out", gen.params_out, "Write parameter JSON");

  NetworkArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Block counters of a labeled network");
  stats_cmd->add_option("--network", stats.network, "Network file, - for stdin");
  stats_cmd->add_option("--labels", stats.labels, "Labels JSON");
  stats_cmd->add_option("--out", stats.out, "Output JSON (default stdout)");

  NetworkArgs loglik;
  auto* loglik_cmd =
      app.add_subcommand("loglik", "Profile likelihood, MLE and joint log-likelihood");
  loglik_cmd->add_option("--network", loglik.network, "Network file, - for stdin");
  loglik_cmd->add_option("--labels", loglik.labels, "Labels JSON")->required();
  loglik_cmd->add_option("--params", loglik.params, "Parameter JSON for log_joint");
  loglik_cmd->add_option("--out", loglik.out, "Output JSON (default stdout)");

  MarginalArgs marg;
  auto* marginal_cmd = app.add_subcommand("marginal", "log p_k(x), exact or bracketed");
  marginal_cmd->add_option("--network", marg.network, "Network file, - for stdin");
  marginal_cmd->add_option("--k", marg.k, "Number of communities")
      ->check(CLI::PositiveNumber);
  marginal_cmd->add_option("--backend", marg.backend, "exact or bracket")
      ->check(CLI::IsMember({"exact", "bracket"}));
  marginal_cmd->add_option("--budget", marg.budget, "Maximum enumerated terms");
  marginal_cmd->add_option("--restarts", marg.restarts, "Greedy restarts (bracket)");
  marginal_cmd->add_option("--max-sweeps", marg.max_sweeps, "Greedy sweep cap (bracket)");
  marginal_cmd->add_flag("--exhaustive-search", marg.exhaustive_search,
                         "Bracket search enumerates all labelings");
  marginal_cmd->add_option("--seed", marg.seed, "Search seed (bracket)");
  marginal_cmd->add_option("--out", marg.out, "Output JSON (default stdout)");

  SelectArgs sel;
  auto* select_cmd = app.add_subcommand("select", "Estimate the number of communities");
  select_cmd->add_option("--network", sel.network, "Network file, - for stdin");
  select_cmd->add_option("--k-max", sel.k_max, "Largest order considered (default n)");
  select_cmd->add_option("--backend", sel.backend, "exact or bracket")
      ->check(CLI::IsMember({"exact", "bracket"}));
  select_cmd->add_option("--budget", sel.budget, "Maximum enumerated terms per order");
  select_cmd->add_option("--restarts", sel.restarts, "Greedy restarts (bracket)");
  select_cmd->add_option("--max-sweeps", sel.max_sweeps, "Greedy sweep cap (bracket)");
  select_cmd->add_flag("--allow-partial", sel.allow_partial,
                       "Skip orders over budget instead of failing");
  select_cmd->add_option("--seed", sel.seed, "Search seed (bracket)");
  select_cmd->add_option("--out", sel.out, "Output JSON (default stdout)");

  CheckArgs chk;
  auto* check_cmd = app.add_subcommand("check", "Run the inequality sweeps");
  check_cmd->add_option("--seed", chk.seed, "Sweep seed");
  check_cmd->add_option("--out", chk.out, "Output JSON (default stdout)");

  ExperimentArgs exp;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "Monte Carlo accuracy of the estimator");
  experiment_cmd->add_option("--config", exp.config, "Experiment JSON")->required();
  experiment_cmd->add_option("--out", exp.out, "Trial CSV (default: config output, else stdout)");
  experiment_cmd->add_option("--summary", exp.summary, "Summary CSV");
  experiment_cmd->add_option("--threads", exp.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  experiment_cmd->add_option("--seed", exp.seed, "Override the config seed");
  experiment_cmd->add_option("--backend", exp.backend, "Override the backend")
      ->check(CLI::IsMember({"exact", "bracket"}));
  experiment_cmd->add_option("--k-max", exp.k_max, "Override k_max");
  experiment_cmd->add_option("--budget", exp.budget, "Override the budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate_cmd) return run_generate(gen);
    if (*stats_cmd) return run_stats(stats);
    if (*loglik_cmd) return run_loglik(loglik);
    if (*marginal_cmd) return run_marginal(marg);
    if (*select_cmd) return run_select(sel);
    if (*check_cmd) return run_check(chk);
    if (*experiment_cmd) return run_experiment_cmd(exp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
