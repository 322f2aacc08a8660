#ifndef GREENBALL_TOOLS_REPORT_HPP_
#define GREENBALL_TOOLS_REPORT_HPP_

#include <map>
#include <string>
#include <vector>

namespace greenball_cli {

/// One verification row.  `abs_err` and `rel_err` are both always reported;
/// `pass` is decided by the suite that produced the row (absolute or
/// relative comparison, or a one-sided bound), with `tol` recording the
/// numeric tolerance it used.
struct ReportRow {
  std::string input;  ///< human-readable row key; never contains commas
  double computed = 0.0;
  double reference = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::string command;
  std::map<std::string, std::string> parameters;  // sorted, deterministic
  std::vector<ReportRow> rows;
  bool pass = false;  ///< true iff every row passed
  long long runtime_ms = 0;

  void add(ReportRow row);

  /// Equality-style row: pass iff |computed - reference| <= tol.
  void add_abs(const std::string& input, double computed, double reference,
               double tol);
  /// Relative-error row: pass iff |computed - reference| <= tol * |reference|.
  void add_rel(const std::string& input, double computed, double reference,
               double tol);
  /// One-sided row: pass iff computed <= reference (upper bound) or
  /// computed >= reference (lower bound).  The error columns carry the
  /// shortfall (0 when passing).
  void add_upper(const std::string& input, double computed, double reference);
  void add_lower(const std::string& input, double computed, double reference);
};

/// CSV rendering: fixed header `input,computed,reference,abs_err,rel_err,
/// tol,pass`, every number with 17 significant digits.  Byte-identical for
/// identical row content; carries no timing or environment data.
std::string to_csv(const VerificationReport& report);

/// JSON rendering of the full report, including runtime_ms.
std::string to_json(const VerificationReport& report);

}  // namespace greenball_cli

#endif  // GREENBALL_TOOLS_REPORT_HPP_
