#pragma once

#include <string>

#include "json.hpp"

#include "expsum/cyclo.hpp"
#include "expsum/koszul.hpp"
#include "expsum/lfun.hpp"
#include "expsum/pipeline.hpp"
#include "expsum/polygon.hpp"
#include "expsum/problem.hpp"
#include "expsum/quad2.hpp"
#include "expsum/sums.hpp"

namespace expsum::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

Json rational(const mpq_class& q);
Json valuation(const cyclo::Valuation& v);
Json cyclotomic(const cyclo::CycNum& x);
Json real(const numeric::Real& x);
Json complex(const numeric::Complex& z);
Json exponent(const mpoly::Exponent& u);

Json problem(const cli::ProblemSpec& spec);
Json regseq(const koszul::RegSeqReport& r);
Json hilbert(const koszul::HilbertProfile& h);
Json sum(const sums::SumValue& s);
Json lpoly(const lfun::LPolynomial& P);
Json consistency(const lfun::ConsistencyCheck& c);
Json newton(const polygon::NewtonPolygon& np);
Json lambda(const polygon::LambdaReport& l);
Json purity(const polygon::PurityResult& r);
Json deligne(const polygon::DeligneCheck& c);
Json quadratic(const quad2::QuadEvalResult& r);
Json verify(const cli::VerifyReport& r);
Json timings(const std::vector<cli::StageTiming>& t);

/// {"schema":1,"command":...,"status":...,"problem":...,"result":...}
Json envelope(const std::string& command, const std::string& status, const cli::ProblemSpec* spec, Json result);

/// Deterministic text form with the timings block removed.
std::string canonical(const Json& doc);

}  // namespace expsum::report
