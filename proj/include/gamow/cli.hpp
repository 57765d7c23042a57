#pragma once
// Command-line front end: gamowctl <reps|poles|phase|evolve|spectral|hardy> ...
// Exit codes: 0 success, 1 domain/model error, 2 usage error.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gamow::cli {

enum class OutputFormat { text, json, csv };

struct RepsParams {
  int row = 1;
  int twice_j = 0;
};

struct PolesParams {
  double g = 0.0;
  double a = 0.0;
  std::pair<double, double> re;
  std::pair<double, double> im;
  int seeds_re = 64;
  int seeds_im = 16;
};

struct PhaseParams {
  double g = 0.0;
  double a = 0.0;
  double e_min = 0.0;
  double e_max = 0.0;
  int n = 0;
};

struct EvolveParams {
  double e_r = 0.0;
  double gamma = 0.0;
  std::string law;
  double t0 = 0.0;
  double t1 = 0.0;
  int n = 0;
};

struct SpectralParams {
  double g = 0.0;
  double a = 0.0;
  double k_max = 0.0;
  int n_k = 0;
  double r_max = 0.0;
  int n_r = 0;
  double packet_center = 0.0;
  double packet_width = 0.0;
};

struct HardyParams {
  double e_r = 0.0;
  double gamma = 0.0;
  double e_min = 0.0;
  double e_max = 0.0;
  int n = 0;
  std::string half_plane = "upper";
};

using Params = std::variant<RepsParams, PolesParams, PhaseParams, EvolveParams,
                            SpectralParams, HardyParams>;

struct RunConfig {
  std::string subcommand;
  Params params;
  OutputFormat format = OutputFormat::text;
  std::string out_path; // empty: standard output
};

/// Bad command line. `what()` is a one-line diagnostic, `usage()` the help text.
class UsageError : public std::runtime_error {
public:
  UsageError(const std::string &msg, std::string usage)
      : std::runtime_error(msg), usage_(std::move(usage)) {}
  const std::string &usage() const noexcept { return usage_; }

private:
  std::string usage_;
};

/// `--help` was given; carries the help text.
class HelpRequested : public std::runtime_error {
public:
  explicit HelpRequested(const std::string &text) : std::runtime_error(text) {}
};

/// `args` excludes the program name. Throws UsageError or HelpRequested.
RunConfig parse_args(const std::vector<std::string> &args);

/// Dispatches to the library. Output goes to `out` unless the config names
/// a file. Returns 0, or 1 after writing a one-line diagnostic to `err`.
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// parse_args + run with the exit-code mapping.
int main_entry(const std::vector<std::string> &args, std::ostream &out,
               std::ostream &err);

/// 12 significant digits, locale independent.
std::string format_number(double x);

} // namespace gamow::cli
