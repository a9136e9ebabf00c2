#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expsum/koszul.hpp"
#include "expsum/lfun.hpp"
#include "expsum/polygon.hpp"
#include "expsum/problem.hpp"
#include "expsum/quad2.hpp"
#include "expsum/sums.hpp"

namespace expsum::cli {

struct RunOptions {
  unsigned workers = 1;
  unsigned extra_consistency = 1;
  std::optional<std::uint64_t> budget;       // overrides the spec
  std::optional<mpfr_prec_t> precision;
  std::optional<double> tolerance;
};

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct QuadraticPath {
  quad2::QuadEvalResult result;
  bool agrees = false;  // with S_1 from the general engine
};

struct VerifyReport {
  unsigned d = 0;
  koszul::RegSeqReport regseq;
  koszul::HilbertProfile hilbert;
  std::vector<sums::SumValue> sums;
  lfun::LPolynomial lpoly;
  std::optional<lfun::ConsistencyCheck> consistency;
  std::string consistency_note;
  polygon::NewtonPolygon polygon;
  polygon::NewtonPolygon bound;
  bool dominates = false;
  polygon::LambdaReport lambda;
  polygon::PurityResult purity;
  std::vector<polygon::DeligneCheck> deligne;
  std::optional<QuadraticPath> quadratic;
  bool pass = false;
  std::vector<std::string> failures;
  std::vector<StageTiming> timings;
};

/// Error raised inside a named pipeline stage. The original exception is
/// rethrown with the stage name prefixed, preserving its type.
std::string stage_message(const std::string& stage, const std::string& what);

sums::SumOptions sum_options(const ProblemSpec& spec, const RunOptions& opt);
polygon::PurityOptions purity_options(const ProblemSpec& spec, const RunOptions& opt);

/// Full verification. Hypothesis failures throw HypothesisFailure before any
/// numbers are produced; failed theorem-level checks are recorded in
/// failures with pass = false.
VerifyReport cmd_verify(const ProblemSpec& spec, const RunOptions& opt = {});

/// Quadratic closed form for p = 2, d = 2.
quad2::QuadEvalResult cmd_quad(const ProblemSpec& spec);

}  // namespace expsum::cli
