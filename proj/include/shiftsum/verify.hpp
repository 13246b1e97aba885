#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "shiftsum/char_arith.hpp"
#include "shiftsum/common.hpp"
#include "shiftsum/cuspform.hpp"
#include "shiftsum/lfun.hpp"
#include "shiftsum/precision.hpp"

namespace shiftsum {

/// One identity checked by two computational routes.
///
/// `tolerance` is absolute; relative checks store rel_tolerance * |route_b|
/// there, so status is always abs_diff <= tolerance.
struct VerificationReport {
  std::string identity_id;
  cplx route_a;
  cplx route_b;
  double abs_diff = 0.0;
  double rel_diff = 0.0;
  double tolerance = 0.0;
  double rel_tolerance = 0.0;  // 0 for absolute checks
  bool pass = false;
  int64_t runtime_ms = 0;
  PrecisionPolicy truncation;
  std::string detail;
};

/// Everything a suite needs: the form, the character and a shared Lambda cache.
struct VerifyContext {
  std::shared_ptr<const CuspFormCoefficients> a;
  DirichletCharacter chi;
  PrecisionPolicy policy;
  std::shared_ptr<TwistTable> table;

  static VerifyContext make(int64_t level, int64_t char_index, const PrecisionPolicy& policy, int64_t coefficients);
};

/// Suite names in run order; "all" runs every one of them.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one suite (or "all"); reports sorted by identity_id.
std::vector<VerificationReport> run_suite(const std::string& name, VerifyContext& ctx);

/// Builds a report with an absolute tolerance.
VerificationReport absolute_report(std::string id, cplx a, cplx b, double tol, int64_t ms,
                                   const PrecisionPolicy& policy, std::string detail = {});
/// Builds a report with a tolerance relative to |b|.
VerificationReport relative_report(std::string id, cplx a, cplx b, double rel_tol, int64_t ms,
                                   const PrecisionPolicy& policy, std::string detail = {});

}  // namespace shiftsum
