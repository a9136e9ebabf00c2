// expsum: exponential sums over finite fields and their L-functions.
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"

#include "expsum/error.hpp"
#include "expsum/koszul.hpp"
#include "expsum/lfun.hpp"
#include "expsum/pipeline.hpp"
#include "expsum/polygon.hpp"
#include "expsum/problem.hpp"
#include "expsum/quad2.hpp"
#include "expsum/report.hpp"
#include "expsum/sums.hpp"

namespace {

using namespace expsum;
using report::Json;

enum Exit : int { kPass = 0, kInternal = 1, kRefused = 2, kVerify = 3, kBudget = 4, kInput = 5 };

struct Flags {
  std::string input;
  std::string json_out;
  std::optional<std::uint64_t> budget;
  std::optional<long> precision;
  std::optional<double> tol;
  unsigned workers = 1;
  unsigned extra = 1;
  std::optional<std::uint64_t> seed;
  unsigned index = 1;
  unsigned up_to = 0;
  unsigned hd = 3;
  unsigned hn = 1;
};

std::string read_input(const std::string& path) {
  if (path.empty()) throw InputError("--input FILE is required");
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

cli::RunOptions run_options(const Flags& fl) {
  cli::RunOptions o;
  o.workers = fl.workers;
  o.extra_consistency = fl.extra;
  o.budget = fl.budget;
  if (fl.precision) o.precision = static_cast<mpfr_prec_t>(*fl.precision);
  o.tolerance = fl.tol;
  return o;
}

void emit(const Flags& fl, Json doc) {
  if (fl.seed) doc["seed"] = *fl.seed;
  const std::string text = doc.dump(2);
  if (fl.json_out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(fl.json_out);
  if (!out) throw InputError("cannot write " + fl.json_out);
  out << text << "\n";
  std::cout << doc["command"].get<std::string>() << ": " << doc["status"].get<std::string>() << "\n";
}

int run(const std::string& cmd, const Flags& fl) {
  if (cmd == "hilbert") {
    const auto h = koszul::hilbert_coefficients(fl.hd, fl.hn);
    emit(fl, report::envelope(cmd, "pass", nullptr, report::hilbert(h)));
    return kPass;
  }

  const auto spec = cli::parse_problem(read_input(fl.input));
  const auto opt = run_options(fl);
  const auto sopt = cli::sum_options(spec, opt);
  const auto chi = spec.character();

  if (cmd == "verify") {
    auto rep = cli::cmd_verify(spec, opt);
    auto doc = report::envelope(cmd, rep.pass ? "pass" : "fail", &spec, report::verify(rep));
    doc["timings"] = report::timings(rep.timings);
    emit(fl, std::move(doc));
    return rep.pass ? kPass : kVerify;
  }
  if (cmd == "check") {
    const auto& f = spec.poly;
    if (f.is_zero() || f.degree() < 2) throw HypothesisFailure("regular-sequence check needs d >= 2");
    const unsigned d = f.degree();
    const auto r = koszul::is_regular_sequence(f.homogeneous_component(d));
    Json res = {{"d", d}, {"regseq", report::regseq(r)},
                {"hilbert", report::hilbert(koszul::hilbert_coefficients(d, static_cast<unsigned>(spec.n)))}};
    emit(fl, report::envelope(cmd, r.is_regular ? "pass" : "refused", &spec, std::move(res)));
    return r.is_regular ? kPass : kRefused;
  }
  if (cmd == "sum") {
    Json arr = Json::array();
    if (fl.up_to > 0) {
      for (const auto& s : sums::sum_sequence(spec.poly, chi, fl.up_to, sopt)) arr.push_back(report::sum(s));
    } else {
      arr.push_back(report::sum(sums::exponential_sum(spec.poly, fl.index, chi, sopt)));
    }
    emit(fl, report::envelope(cmd, "pass", &spec, {{"sums", std::move(arr)}}));
    return kPass;
  }
  if (cmd == "lpoly" || cmd == "polygon" || cmd == "purity") {
    const auto built = lfun::construct(spec.poly, chi, sopt);
    const auto& P = built.poly;
    Json res = {{"lpoly", report::lpoly(P)}};
    bool ok = true;
    if (cmd == "polygon") {
      const unsigned d = spec.poly.degree();
      const auto np = polygon::newton_polygon(P);
      const auto bound = d >= 2 ? polygon::hodge_bound(d, static_cast<unsigned>(spec.n),
                                                       koszul::hilbert_coefficients(d, static_cast<unsigned>(spec.n)))
                                : polygon::NewtonPolygon{{{0, 0}}};
      const bool dom = polygon::dominates(np, bound);
      const auto lam = polygon::lambda_valuation(P);
      res["polygon"] = report::newton(np);
      res["bound"] = report::newton(bound);
      res["dominates"] = dom;
      res["lambda"] = report::lambda(lam);
      ok = dom && lam.valuation && *lam.valuation >= lam.bound;
    } else if (cmd == "purity") {
      const auto pr = polygon::purity_check(P, cli::purity_options(spec, opt));
      res["purity"] = report::purity(pr);
      Json dl = Json::array();
      for (const auto& c : polygon::deligne_check(built.sums, P, pr)) {
        ok = ok && c.within_bound && c.consistent;
        dl.push_back(report::deligne(c));
      }
      res["deligne"] = std::move(dl);
      ok = ok && pr.pure;
    }
    emit(fl, report::envelope(cmd, ok ? "pass" : "fail", &spec, std::move(res)));
    return ok ? kPass : kVerify;
  }
  if (cmd == "quad") {
    const auto r = cli::cmd_quad(spec);
    emit(fl, report::envelope(cmd, "pass", &spec, report::quadratic(r)));
    return kPass;
  }
  throw InputError("unknown command " + cmd);
}

int fail(const Flags& fl, const std::string& cmd, const std::string& status, Json detail, int code) {
  std::cerr << "expsum " << cmd << ": " << detail.value("reason", std::string()) << "\n";
  try {
    emit(fl, report::envelope(cmd, status, nullptr, std::move(detail)));
  } catch (const std::exception&) {
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential sums over finite fields: sums, L-polynomials, Newton polygons, purity"};
  app.require_subcommand(1, 1);
  Flags fl;

  auto common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input,-i", fl.input, "problem file ('-' for stdin)");
    if (needs_input) in->required();
    sub->add_option("--json", fl.json_out, "write the JSON report here instead of stdout");
    sub->add_option("--budget", fl.budget, "maximum points per enumeration");
    sub->add_option("--precision", fl.precision, "MPFR precision in bits")->check(CLI::Range(32L, 65536L));
    sub->add_option("--tol", fl.tol, "relative tolerance for absolute-value checks")->check(CLI::PositiveNumber);
    sub->add_option("--workers", fl.workers, "worker threads for enumeration")->check(CLI::Range(1u, 1024u));
    sub->add_option("--extra-consistency", fl.extra, "extra sums predicted from P and recomputed");
    sub->add_option("--seed", fl.seed, "echoed into the report; the computation is deterministic");
  };
  common(app.add_subcommand("verify", "full pipeline"), true);
  common(app.add_subcommand("check", "regular-sequence test of the top form"), true);
  auto* sum = app.add_subcommand("sum", "exponential sums S_i");
  common(sum, true);
  sum->add_option("--index", fl.index, "extension degree i")->check(CLI::PositiveNumber);
  sum->add_option("--up-to", fl.up_to, "compute S_1..S_k");
  common(app.add_subcommand("lpoly", "L-polynomial"), true);
  common(app.add_subcommand("polygon", "Newton polygon, Hodge bound, ord_q Lambda"), true);
  common(app.add_subcommand("purity", "reciprocal-root absolute values"), true);
  common(app.add_subcommand("quad", "quadratic closed form, p = 2"), true);
  auto* hil = app.add_subcommand("hilbert", "coefficients of (1+t+...+t^(d-2))^n");
  common(hil, false);
  hil->add_option("-d", fl.hd, "degree")->required();
  hil->add_option("-n", fl.hn, "number of variables")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, fl);
  } catch (const HypothesisFailure& e) {
    return fail(fl, cmd, "refused", {{"reason", e.what()}}, kRefused);
  } catch (const VerificationFailure& e) {
    return fail(fl, cmd, "verification_failure", {{"reason", e.what()}}, kVerify);
  } catch (const BudgetExceeded& e) {
    return fail(fl, cmd, "budget_exceeded", {{"reason", e.what()}, {"required_points", e.required()}}, kBudget);
  } catch (const InputError& e) {
    return fail(fl, cmd, "input_error", {{"reason", e.what()}}, kInput);
  } catch (const std::invalid_argument& e) {
    return fail(fl, cmd, "input_error", {{"reason", e.what()}}, kInput);
  } catch (const std::out_of_range& e) {
    return fail(fl, cmd, "input_error", {{"reason", e.what()}}, kInput);
  } catch (const std::domain_error& e) {
    return fail(fl, cmd, "input_error", {{"reason", e.what()}}, kInput);
  } catch (const std::exception& e) {
    return fail(fl, cmd, "internal_error", {{"reason", e.what()}}, kInternal);
  }
}
