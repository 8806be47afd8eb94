#ifndef DLN_CLI_HPP
#define DLN_CLI_HPP

#include <cstdint>
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace dln::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitValidation = 4;

struct RunOptions {
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int threads = 1;
};

// Subcommand runners; each writes a CSV (or JSON report for validate) plus a
// JSON manifest into out_dir and returns a process exit code.
int cmd_evidence_sweep(const nlohmann::json& cfg, const RunOptions& opt);
int cmd_posterior_variance(const nlohmann::json& cfg, const RunOptions& opt);
int cmd_double_descent(const nlohmann::json& cfg, const RunOptions& opt);
int cmd_oracle_density(const nlohmann::json& cfg, const RunOptions& opt);
int cmd_validate(const nlohmann::json& cfg, const RunOptions& opt);

// Dispatch by subcommand name; config loaded from a JSON file.
int run_subcommand(const std::string& name, const std::string& config_path,
                   const RunOptions& opt);

}  // namespace dln::cli

#endif  // DLN_CLI_HPP
