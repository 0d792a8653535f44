#pragma once

// Subcommand bodies behind the abekit executable. Each returns the process
// exit code and writes reports to `out` and diagnostics to `err`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace abekit::tools {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailed = 1,
  kExitUsage = 2,
  kExitGuard = 3,
};

struct GlobalOptions {
  int max_degree = 12;
  std::uint64_t seed = 1;
  /// One JSON object per report line instead of text.
  bool machine = false;
};

struct XformOptions {
  std::string pass;
  std::string input;
  /// Empty: write the document to `out`.
  std::string output;
  std::optional<std::string> buckets;
  int degree = -1;
  int a = 0;
  int b = 0;
  /// amplify: the linked formula document.
  std::string linked;
  bool normalize = false;
  int base = 8;
};

struct CheckOptionsCli {
  std::string input;
  /// Empty: the default checks for the document kind.
  std::vector<std::string> checks;
  std::optional<std::string> buckets;
  bool semantic = true;
};

struct PipelineOptionsCli {
  int n = 4;
  int amplifications = 1;
  std::optional<int> target_degree;
  bool semantic = true;
  std::string output;
};

/// Accepted pass ids for xform.
const std::vector<std::string>& pass_ids();
/// Accepted check names.
const std::vector<std::string>& check_names();

int cmd_gen(const std::string& spec, const std::string& output, const GlobalOptions& g, std::ostream& out,
            std::ostream& err);
int cmd_xform(const XformOptions& x, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_check(const CheckOptionsCli& c, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_diff(const std::string& left, const std::string& right, const GlobalOptions& g, std::ostream& out,
             std::ostream& err);
int cmd_stats(const std::string& input, const GlobalOptions& g, std::ostream& out, std::ostream& err);
int cmd_pipeline(const PipelineOptionsCli& p, const GlobalOptions& g, std::ostream& out, std::ostream& err);

}  // namespace abekit::tools
