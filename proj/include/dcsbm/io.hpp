#ifndef DCSBM_IO_HPP
#define DCSBM_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dcsbm/core.hpp"
#include "dcsbm/experiment.hpp"
#include "dcsbm/selection.hpp"

namespace dcsbm {

using Json = nlohmann::json;

/// Malformed input. The message names the offending line or field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

/// Reads either the sparse text form
///
///     n
///     i j c        (0-based, i <= j, diagonal c = twice the self-loops)
///
/// where omitted pairs are zero, or a dense comma-separated n x n matrix.
/// The dense form is detected by a comma on the first nonblank line.
Network read_network(std::istream& is);

/// Writes the sparse form: the node count, then one line per nonzero pair
/// with i <= j in row-major order.
void write_network(std::ostream& os, const Network& x);

Network load_network(const std::filesystem::path& path);
void save_network(const std::filesystem::path& path, const Network& x);

// JSON schemas:
//   Labels          {"k": int, "z": [int, ...]}                 (0-based)
//   ModelParams     {"pi": [..], "lambda_tilde": [[..], ..], "rho": x,
//                    "weights": [..]}
//   SelectionReport {"n", "backend", "k_hat", "ties", "overlaps",
//                    "warnings", "rows": [{"k", "feasible", "log_p",
//                    "lower", "upper", "rigorous", "terms_evaluated",
//                    "penalty", "score", "note"}]}
//   ExperimentConfig see experiment_config_from_json.

Json to_json(const Labels& z);
Labels labels_from_json(const Json& j);

Json to_json(const ModelParams& p);
ModelParams params_from_json(const Json& j);

Json to_json(const SelectionReport& r);
SelectionReport report_from_json(const Json& j);

/// {"k0", "pi", "lambda_tilde", "rho_rule": {"fixed": v} | {"semisparse": C},
///  "weights": "dirichlet" | "unit", "n_grid", "trials", "backend", "k_max",
///  "restarts", "max_sweeps", "budget", "seed", "output", "threads",
///  "allow_partial", "timing"}. Only k0, pi, lambda_tilde, rho_rule and n_grid
/// are required.
Json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const Json& j);

Json to_json(const SuffStats& s);

Json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const Json& j);

}  // namespace dcsbm

#endif  // DCSBM_IO_HPP
