#include "expsum/pipeline.hpp"

#include <chrono>
#include <numeric>

#include "expsum/error.hpp"

namespace expsum::cli {

namespace {

template <class Fn>
void stage(const char* name, std::vector<StageTiming>& timings, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    fn();
  } catch (const HypothesisFailure& e) {
    throw HypothesisFailure(stage_message(name, e.what()));
  } catch (const VerificationFailure& e) {
    throw VerificationFailure(stage_message(name, e.what()));
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(stage_message(name, e.what()), e.required());
  } catch (const InputError& e) {
    throw InputError(stage_message(name, e.what()));
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  timings.push_back({name, dt.count()});
}

}  // namespace

std::string stage_message(const std::string& stage, const std::string& what) { return stage + ": " + what; }

sums::SumOptions sum_options(const ProblemSpec& spec, const RunOptions& opt) {
  sums::SumOptions o;
  o.budget = opt.budget.value_or(spec.budget);
  o.workers = std::max(1u, opt.workers);
  return o;
}

polygon::PurityOptions purity_options(const ProblemSpec& spec, const RunOptions& opt) {
  polygon::PurityOptions o;
  o.precision_bits = opt.precision.value_or(spec.precision);
  o.tolerance = opt.tolerance.value_or(spec.tolerance);
  return o;
}

quad2::QuadEvalResult cmd_quad(const ProblemSpec& spec) {
  const auto chi = spec.character();
  if (spec.p != 2) throw HypothesisFailure("quadratic closed form needs p = 2");
  if (spec.poly.is_zero() || spec.poly.degree() != 2) throw HypothesisFailure("quadratic closed form needs d = 2");
  const auto g = quad2::remove_pth_power_terms(spec.poly, chi);
  return quad2::evaluate(quad2::build_matrix(g, chi));
}

VerifyReport cmd_verify(const ProblemSpec& spec, const RunOptions& opt) {
  VerifyReport rep;
  const auto& f = spec.poly;
  const auto chi = spec.character();
  const auto sopt = sum_options(spec, opt);
  const unsigned n = static_cast<unsigned>(spec.n);

  stage("regseq", rep.timings, [&] {
    if (f.is_zero() || f.degree() == 0) throw HypothesisFailure("f is constant");
    rep.d = f.degree();
    if (rep.d == 1) {
      // Linear top form: the partials are units, nothing to check.
      rep.regseq.is_regular = true;
      rep.hilbert = {1, n, {}};
      return;
    }
    rep.hilbert = koszul::hilbert_coefficients(rep.d, n);
    rep.regseq = koszul::is_regular_sequence(f.homogeneous_component(rep.d));
    if (!rep.regseq.is_regular)
      throw HypothesisFailure("the partial derivatives of f^(" + std::to_string(rep.d) +
                              ") do not form a regular sequence");
    if (rep.d % spec.p == 0 && !(rep.d == 2 && spec.p == 2))
      throw VerificationFailure("regular sequence with p | d forces d = 2 and p = 2, got d = " +
                                std::to_string(rep.d) + ", p = " + std::to_string(spec.p));
  });

  lfun::Construction built;
  stage("sums", rep.timings, [&] {
    built = lfun::construct(f, chi, sopt);
    rep.sums = built.sums;
  });

  if (rep.d == 2 && spec.p == 2) {
    stage("quadratic", rep.timings, [&] {
      QuadraticPath qp;
      qp.result = cmd_quad(spec);
      qp.agrees = qp.result.value == rep.sums.at(0).value;
      if (!qp.agrees) rep.failures.push_back("quadratic closed form disagrees with S_1");
      rep.quadratic = std::move(qp);
    });
  }

  stage("lpoly", rep.timings, [&] {
    rep.lpoly = built.poly;
    const std::size_t D = rep.lpoly.degree;
    if (rep.d >= 2 && D != rep.hilbert.total())
      throw VerificationFailure("deg P = " + std::to_string(D) + " differs from (d-1)^n = " +
                                std::to_string(rep.hilbert.total()));
  });

  stage("consistency", rep.timings, [&] {
    const unsigned extra = opt.extra_consistency;
    if (extra == 0) {
      rep.consistency_note = "disabled";
      return;
    }
    const auto last = static_cast<unsigned>(rep.lpoly.degree + extra);
    const mpz_class need = sums::point_count(*spec.field, spec.n, last);
    if (need > mpz_class(std::to_string(sopt.budget))) {
      rep.consistency_note = "skipped: index " + std::to_string(last) + " needs " + need.get_str() +
                             " points, budget " + std::to_string(sopt.budget);
      return;
    }
    rep.consistency = lfun::verify_consistency(rep.lpoly, f, chi, extra, sopt);
    if (!rep.consistency->matches) rep.failures.push_back("predicted sums disagree with computed sums");
  });

  stage("polygon", rep.timings, [&] {
    rep.polygon = polygon::newton_polygon(rep.lpoly);
    rep.bound = polygon::hodge_bound(rep.d, n, rep.hilbert);
    rep.dominates = polygon::dominates(rep.polygon, rep.bound);
    if (!rep.dominates) rep.failures.push_back("Newton polygon dips below the Hodge bound");
  });

  stage("lambda", rep.timings, [&] {
    rep.lambda = polygon::lambda_valuation(rep.lpoly);
    if (!rep.lambda.valuation || *rep.lambda.valuation < rep.lambda.bound)
      rep.failures.push_back("ord_q of Lambda below n(d-1)^n/2");
    else if (!rep.lambda.equality)
      rep.failures.push_back("ord_q of Lambda exceeds n(d-1)^n/2, equality expected");
  });

  stage("purity", rep.timings, [&] {
    rep.purity = polygon::purity_check(rep.lpoly, purity_options(spec, opt));
    if (!rep.purity.pure) rep.failures.push_back("reciprocal roots not of absolute value q^{n/2}");
    rep.deligne = polygon::deligne_check(rep.sums, rep.lpoly, rep.purity);
    for (const auto& c : rep.deligne) {
      if (!c.within_bound) rep.failures.push_back("S_" + std::to_string(c.i) + " exceeds the Deligne bound");
      if (!c.consistent) rep.failures.push_back("S_" + std::to_string(c.i) + " inconsistent with the reciprocal roots");
    }
  });

  rep.pass = rep.failures.empty();
  return rep;
}

}  // namespace expsum::cli
