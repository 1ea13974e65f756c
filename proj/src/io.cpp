#include "dcsbm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace dcsbm {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail_line(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

Count parse_count(const std::string& token, int line) {
  Count v = 0;
  const char* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    fail_line(line, "'" + token + "' is not an integer");
  }
  return v;
}

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + name + "': " + e.what());
  }
}

template <typename T>
T field_or(const Json& j, const char* name, T fallback) {
  return j.contains(name) ? field<T>(j, name) : fallback;
}

Json vector_json(const Eigen::VectorXd& v) {
  return Json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index b = 0; b < m.cols(); ++b) row[static_cast<std::size_t>(b)] = m(a, b);
    rows.push_back(row);
  }
  return rows;
}

Eigen::MatrixXd matrix_from(const std::vector<std::vector<double>>& rows,
                            const char* name) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(r, r);
  for (Eigen::Index a = 0; a < r; ++a) {
    if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(a)].size()) != r) {
      throw ParseError(std::string("field '") + name + "': row " +
                       std::to_string(a) + " does not make a square matrix");
    }
    for (Eigen::Index b = 0; b < r; ++b) {
      m(a, b) = rows[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
  }
  return m;
}

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_or_neg_inf(const Json& j, const char* name) {
  if (!j.contains(name) || j.at(name).is_null()) {
    return -std::numeric_limits<double>::infinity();
  }
  return field<double>(j, name);
}

Network read_sparse(std::istream& is, const std::string& header, int header_line,
                    int& line_no) {
  const Count n = parse_count(header, header_line);
  if (n < 0) fail_line(header_line, "node count must be nonnegative");
  CountMatrix x = CountMatrix::Zero(n, n);
  std::map<std::pair<Count, Count>, int> seen;

  std::string raw;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string ti, tj, tc, extra;
    if (!(fields >> ti >> tj >> tc) || (fields >> extra)) {
      fail_line(line_no, "expected 'i j c'");
    }
    const Count i = parse_count(ti, line_no);
    const Count j = parse_count(tj, line_no);
    const Count c = parse_count(tc, line_no);
    if (i < 0 || i >= n || j < 0 || j >= n) {
      fail_line(line_no, "node index outside [0, " + std::to_string(n) + ")");
    }
    if (c < 0) fail_line(line_no, "negative count");
    if (i == j && c % 2 != 0) {
      fail_line(line_no, "diagonal count must be even (twice the self-loops)");
    }
    const auto key = std::minmax(i, j);
    if (const auto it = seen.find(key); it != seen.end()) {
      if (i > j && x(i, j) == c && x(i, j) == x(j, i)) continue;
      fail_line(line_no, "asymmetric or duplicate entry for pair (" +
                             std::to_string(key.first) + ", " +
                             std::to_string(key.second) + "), first given on line " +
                             std::to_string(it->second));
    }
    seen.emplace(key, line_no);
    x(i, j) = c;
    x(j, i) = c;
  }
  return Network(std::move(x));
}

Network read_dense(std::istream& is, const std::string& first, int first_line,
                   int& line_no) {
  std::vector<std::vector<Count>> rows;
  std::vector<int> row_lines;
  auto parse_row = [&](const std::string& line, int at) {
    std::vector<Count> row;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ',')) row.push_back(parse_count(trim(token), at));
    rows.push_back(std::move(row));
    row_lines.push_back(at);
  };
  parse_row(first, first_line);
  std::string raw;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    parse_row(line, line_no);
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  CountMatrix x(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    const int at = row_lines[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != n) {
      fail_line(at, "row has " + std::to_string(row.size()) + " entries, expected " +
                        std::to_string(n));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const Count c = row[static_cast<std::size_t>(j)];
      if (c < 0) fail_line(at, "negative count");
      x(i, j) = c;
    }
    if (x(i, i) % 2 != 0) {
      fail_line(at, "diagonal count must be even (twice the self-loops)");
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      if (x(i, j) != x(j, i)) {
        fail_line(at, "asymmetric entry: (" + std::to_string(i) + ", " +
                          std::to_string(j) + ") = " + std::to_string(x(i, j)) +
                          " but (" + std::to_string(j) + ", " + std::to_string(i) +
                          ") = " + std::to_string(x(j, i)));
      }
    }
  }
  return Network(std::move(x));
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Network read_network(std::istream& is) {
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const int first_line = line_no;
    if (line.find(',') != std::string::npos) {
      return read_dense(is, line, first_line, line_no);
    }
    return read_sparse(is, line, first_line, line_no);
  }
  throw ParseError("empty network file");
}

void write_network(std::ostream& os, const Network& x) {
  os << x.size() << '\n';
  for (int i = 0; i < x.size(); ++i) {
    for (int j = i; j < x.size(); ++j) {
      if (x(i, j) != 0) os << i << ' ' << j << ' ' << x(i, j) << '\n';
    }
  }
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return read_network(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_network(const std::filesystem::path& path, const Network& x) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_network(out, x);
}

Json to_json(const Labels& z) { return Json{{"k", z.k}, {"z", z.z}}; }

Labels labels_from_json(const Json& j) {
  try {
    return Labels(field<std::vector<int>>(j, "z"), field<int>(j, "k"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("labels: ") + e.what());
  }
}

Json to_json(const ModelParams& p) {
  return Json{{"pi", vector_json(p.pi)},
              {"lambda_tilde", matrix_json(p.lambda_tilde)},
              {"rho", p.rho},
              {"weights", vector_json(p.weights)}};
}

ModelParams params_from_json(const Json& j) {
  ModelParams p;
  p.pi = vector_from(field<std::vector<double>>(j, "pi"));
  p.lambda_tilde = matrix_from(
      field<std::vector<std::vector<double>>>(j, "lambda_tilde"), "lambda_tilde");
  p.rho = field_or<double>(j, "rho", 1.0);
  p.weights = vector_from(field_or<std::vector<double>>(j, "weights", {}));
  if (p.lambda_tilde.rows() != p.pi.size()) {
    throw ParseError("field 'lambda_tilde': size does not match 'pi'");
  }
  return p;
}

Json to_json(const SelectionReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back(Json{{"k", row.k},
                        {"feasible", row.feasible},
                        {"log_p", finite_or_null(row.evidence.log_p)},
                        {"lower", finite_or_null(row.evidence.lower)},
                        {"upper", finite_or_null(row.evidence.upper)},
                        {"rigorous", row.evidence.rigorous},
                        {"terms_evaluated", row.evidence.terms_evaluated},
                        {"penalty", row.penalty},
                        {"score", finite_or_null(row.score)},
                        {"note", row.note}});
  }
  return Json{{"n", r.n},
              {"backend", to_string(r.backend)},
              {"k_hat", r.k_hat},
              {"ties", r.ties},
              {"overlaps", r.overlaps},
              {"warnings", r.warnings},
              {"rows", rows}};
}

SelectionReport report_from_json(const Json& j) {
  SelectionReport r;
  r.n = field<int>(j, "n");
  try {
    r.backend = evidence_backend_from_string(field<std::string>(j, "backend"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field 'backend': ") + e.what());
  }
  r.k_hat = field<int>(j, "k_hat");
  r.ties = field_or<std::vector<int>>(j, "ties", {});
  r.overlaps = field_or<std::vector<int>>(j, "overlaps", {});
  r.warnings = field_or<std::vector<std::string>>(j, "warnings", {});
  for (const auto& jr : field<Json>(j, "rows")) {
    SelectionRow row;
    row.k = field<int>(jr, "k");
    row.feasible = field<bool>(jr, "feasible");
    row.evidence.k = row.k;
    row.evidence.backend = r.backend;
    row.evidence.log_p = number_or_neg_inf(jr, "log_p");
    row.evidence.lower = number_or_neg_inf(jr, "lower");
    row.evidence.upper = number_or_neg_inf(jr, "upper");
    row.evidence.rigorous = field<bool>(jr, "rigorous");
    row.evidence.terms_evaluated = field<std::uint64_t>(jr, "terms_evaluated");
    row.penalty = field<double>(jr, "penalty");
    row.score = number_or_neg_inf(jr, "score");
    row.note = field_or<std::string>(jr, "note", {});
    r.rows.push_back(std::move(row));
  }
  return r;
}

Json to_json(const ExperimentConfig& cfg) {
  Json rho = cfg.rho_rule.kind == RhoRule::Kind::kFixed
                 ? Json{{"fixed", cfg.rho_rule.value}}
                 : Json{{"semisparse", cfg.rho_rule.value}};
  return Json{{"k0", cfg.k0},
              {"pi", vector_json(cfg.pi)},
              {"lambda_tilde", matrix_json(cfg.lambda_tilde)},
              {"rho_rule", rho},
              {"weights", cfg.weights == WeightMode::kUnit ? "unit" : "dirichlet"},
              {"n_grid", cfg.n_grid},
              {"trials", cfg.trials},
              {"backend", to_string(cfg.backend)},
              {"k_max", cfg.k_max},
              {"restarts", cfg.restarts},
              {"max_sweeps", cfg.max_sweeps},
              {"budget", cfg.budget},
              {"seed", cfg.seed},
              {"output", cfg.output},
              {"threads", cfg.threads},
              {"allow_partial", cfg.allow_partial},
              {"timing", cfg.timing}};
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig cfg;
  cfg.k0 = field<int>(j, "k0");
  cfg.pi = vector_from(field<std::vector<double>>(j, "pi"));
  cfg.lambda_tilde = matrix_from(
      field<std::vector<std::vector<double>>>(j, "lambda_tilde"), "lambda_tilde");

  const Json rho = field<Json>(j, "rho_rule");
  if (rho.contains("fixed")) {
    cfg.rho_rule = {RhoRule::Kind::kFixed, field<double>(rho, "fixed")};
  } else if (rho.contains("semisparse")) {
    cfg.rho_rule = {RhoRule::Kind::kSemiSparse, field<double>(rho, "semisparse")};
  } else {
    throw ParseError("field 'rho_rule': expected {\"fixed\": v} or {\"semisparse\": C}");
  }

  const std::string weights = field_or<std::string>(j, "weights", "dirichlet");
  if (weights == "dirichlet") {
    cfg.weights = WeightMode::kDirichlet;
  } else if (weights == "unit") {
    cfg.weights = WeightMode::kUnit;
  } else {
    throw ParseError("field 'weights': expected \"dirichlet\" or \"unit\"");
  }

  cfg.n_grid = field<std::vector<int>>(j, "n_grid");
  cfg.trials = field_or<int>(j, "trials", cfg.trials);
  try {
    cfg.backend = evidence_backend_from_string(
        field_or<std::string>(j, "backend", to_string(cfg.backend)));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field 'backend': ") + e.what());
  }
  cfg.k_max = field_or<int>(j, "k_max", cfg.k_max);
  cfg.restarts = field_or<int>(j, "restarts", cfg.restarts);
  cfg.max_sweeps = field_or<int>(j, "max_sweeps", cfg.max_sweeps);
  cfg.budget = field_or<std::uint64_t>(j, "budget", cfg.budget);
  cfg.seed = field_or<std::uint64_t>(j, "seed", cfg.seed);
  cfg.output = field_or<std::string>(j, "output", cfg.output);
  cfg.threads = field_or<int>(j, "threads", cfg.threads);
  cfg.allow_partial = field_or<bool>(j, "allow_partial", cfg.allow_partial);
  cfg.timing = field_or<bool>(j, "timing", cfg.timing);
  return cfg;
}

Json to_json(const SuffStats& s) {
  auto counts = [](const auto& m) {
    Json rows = Json::array();
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
      Json row = Json::array();
      for (Eigen::Index b = 0; b < m.cols(); ++b) row.push_back(m(a, b));
      rows.push_back(row);
    }
    return rows;
  };
  auto column = [](const CountVector& v) {
    return Json(std::vector<Count>(v.data(), v.data() + v.size()));
  };
  return Json{{"community_size", column(s.community_size)},
              {"pairs", matrix_json(s.pairs)},
              {"edges", counts(s.edges)},
              {"block_counts", counts(s.block_counts)},
              {"degree", column(s.degree)},
              {"block_degree", column(s.block_degree)}};
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void save_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace dcsbm
