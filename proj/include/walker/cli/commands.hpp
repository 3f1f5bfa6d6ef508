#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "walker/classifier/families.hpp"
#include "walker/cli/manifest.hpp"

namespace walker::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kUndecided = 3, kVerificationFailure = 4 };

enum class Format { Text, Records };

struct CommonOptions {
  Format format = Format::Text;
  /// Zero-test tolerance (tensors, classify, verify-paper) or agreement
  /// tolerance (oracle-check).
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
};

/// Each command writes its report to `out`, diagnostics to `err`, and returns
/// the exit code. Geometry input errors are reported here as kInputError.
int run_tensors(const Manifest& m, const CommonOptions& o, std::ostream& out, std::ostream& err);
int run_classify(const Manifest& m, const std::string& field, const CommonOptions& o, std::ostream& out,
                 std::ostream& err);
int run_verify_paper(std::optional<cls::FamilyTag> family, bool inject_fault, const CommonOptions& o,
                     std::ostream& out, std::ostream& err);
int run_oracle_check(const Manifest& m, std::optional<int> points, const CommonOptions& o, std::ostream& out,
                     std::ostream& err);

/// Default relative agreement required by oracle-check.
inline constexpr double kOracleTolerance = 1e-6;

}  // namespace walker::cli
