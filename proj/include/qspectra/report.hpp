#ifndef QSPECTRA_REPORT_HPP
#define QSPECTRA_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "qspectra/scalar.hpp"

namespace qspectra {

enum class CheckStatus { pass, fail, domain_failure };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "domain_failure";
  }
}

// Outcome of one identity check.  `residual` is relative when |rhs| is
// meaningfully nonzero, absolute otherwise; a check passes only when the
// residual is inside tolerance and the certified truncation tail is an
// order of magnitude smaller.
struct IdentityReport {
  std::string identity;
  std::vector<std::pair<std::string, std::string>> params;
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double residual = 0;
  double tolerance = 0;
  double tail_bound = 0;
  std::vector<std::pair<std::string, double>> truncation;
  CheckStatus status = CheckStatus::fail;
  bool pass = false;
  std::string notes;
};

inline double relative_residual(const Complex& lhs, const Complex& rhs) {
  double d = std::abs(lhs - rhs);
  return std::abs(rhs) > 1e-30 ? d / std::abs(rhs) : d;
}

inline IdentityReport
make_report(std::string identity,
            std::vector<std::pair<std::string, std::string>> params,
            const Complex& lhs, const Complex& rhs, double tolerance,
            double tail_bound,
            std::vector<std::pair<std::string, double>> truncation = {},
            std::string notes = {}) {
  IdentityReport r;
  r.identity = std::move(identity);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tolerance;
  r.tail_bound = tail_bound;
  r.truncation = std::move(truncation);
  r.notes = std::move(notes);
  r.residual = relative_residual(lhs, rhs);
  r.pass = r.residual < tolerance && tail_bound < tolerance / 10;
  r.status = r.pass ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

inline IdentityReport
make_domain_failure(std::string identity,
                    std::vector<std::pair<std::string, std::string>> params,
                    std::string notes) {
  IdentityReport r;
  r.identity = std::move(identity);
  r.params = std::move(params);
  r.notes = std::move(notes);
  r.status = CheckStatus::domain_failure;
  r.pass = false;
  return r;
}

// Residual already measured against a known scale (series comparisons and
// exact-count checks): lhs carries the measured deviation, rhs the scale.
inline IdentityReport
make_residual_report(std::string identity,
                     std::vector<std::pair<std::string, std::string>> params,
                     double residual, double tolerance, double tail_bound = 0,
                     std::vector<std::pair<std::string, double>> truncation = {},
                     std::string notes = {}) {
  IdentityReport r;
  r.identity = std::move(identity);
  r.params = std::move(params);
  r.lhs = Complex(residual, 0);
  r.rhs = Complex(0, 0);
  r.residual = residual;
  r.tolerance = tolerance;
  r.tail_bound = tail_bound;
  r.truncation = std::move(truncation);
  r.notes = std::move(notes);
  r.pass = residual < tolerance && tail_bound < tolerance / 10;
  r.status = r.pass ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

} // namespace qspectra

#endif
