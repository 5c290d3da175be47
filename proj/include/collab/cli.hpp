#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace collab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitConfigError = 2;

/// Every tunable of every subcommand, with its default. `--print-config`
/// dumps this struct so no default stays hidden.
struct RunConfig {
    std::string subcommand;
    std::string input;
    std::string out_dir = ".";
    int k = 3;
    std::uint64_t seed = 1;
    int restarts = 10;
    double tol = 1e-9;
    int max_iter = 100;
    double alpha = 0.05;
    double beta = 0.01;
    double y0 = 5.0;
    double x0 = 1.0;
    double p0 = 1.0;
    double dt = 1e-3;
    double t_end = 50.0;
    std::optional<double> share_cut;
    std::optional<double> partners_cut;
    int n_countries = 50;
    bool print_config = false;
};

/// Rejected configuration; maps to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Throws ConfigError for any value outside the preconditions of the
/// operations the subcommand feeds.
void validate(const RunConfig& config);

/// key=value lines, one per RunConfig field.
std::string describe(const RunConfig& config);

/// (file name, contents) pairs produced by one subcommand.
using OutputFiles = std::vector<std::pair<std::string, std::string>>;

/// Writes each file to a temporary sibling, then renames all of them into
/// place. Nothing is left behind if any write fails.
void write_outputs_atomically(const std::filesystem::path& dir, const OutputFiles& files);

/// Runs the command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace collab::cli
