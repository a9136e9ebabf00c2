#include "expsum/report.hpp"

namespace expsum::report {

namespace {
constexpr int kDigits = 30;
}

Json rational(const mpq_class& q) { return q.get_str(); }

Json valuation(const cyclo::Valuation& v) { return v ? Json(v->get_str()) : Json("inf"); }

Json cyclotomic(const cyclo::CycNum& x) { return x.to_strings(); }

Json real(const numeric::Real& x) { return x.to_string(kDigits); }

Json complex(const numeric::Complex& z) { return Json::array({real(z.re), real(z.im)}); }

Json exponent(const mpoly::Exponent& u) { return u; }

Json problem(const cli::ProblemSpec& spec) {
  Json j;
  j["p"] = spec.p;
  j["a"] = spec.a;
  j["field"] = spec.field->describe();
  j["n"] = spec.n;
  j["b"] = spec.b_coords;
  Json terms = Json::array();
  for (const auto& [u, c] : spec.poly.terms()) {
    const auto d = spec.field->digits(c);
    terms.push_back({{"coeff", d}, {"exponent", u}});
  }
  j["poly"] = spec.poly.to_string();
  j["terms"] = std::move(terms);
  return j;
}

Json regseq(const koszul::RegSeqReport& r) {
  Json basis = Json::array();
  for (const auto& u : r.basis) basis.push_back(u);
  return {{"is_regular", r.is_regular}, {"hilbert_function", r.hilbert_function}, {"basis", std::move(basis)}};
}

Json hilbert(const koszul::HilbertProfile& h) {
  return {{"d", h.d}, {"n", h.n}, {"U", h.U}, {"total", h.total()}, {"weighted_total", h.weighted_total()}};
}

Json sum(const sums::SumValue& s) {
  std::vector<std::string> counts;
  for (const auto& c : s.counts) counts.push_back(c.get_str());
  return {{"i", s.i}, {"counts", counts}, {"value", cyclotomic(s.value)}};
}

Json lpoly(const lfun::LPolynomial& P) {
  Json coeffs = Json::array();
  for (const auto& c : P.coeffs) coeffs.push_back(cyclotomic(c));
  return {{"convention", "P(t) = L(t)^((-1)^(n+1))"}, {"degree", P.degree}, {"coeffs", std::move(coeffs)}, {"text", [&] {
             std::string s;
             for (std::size_t k = 0; k < P.coeffs.size(); ++k) {
               if (P.coeffs[k].is_zero()) continue;
               if (!s.empty()) s += " + ";
               s += "(" + P.coeffs[k].to_string() + ")";
               if (k > 0) s += k == 1 ? "*t" : "*t^" + std::to_string(k);
             }
             return s.empty() ? std::string("0") : s;
           }()}};
}

Json consistency(const lfun::ConsistencyCheck& c) {
  Json pred = Json::array(), obs = Json::array();
  for (const auto& x : c.predicted) pred.push_back(cyclotomic(x));
  for (const auto& x : c.observed) obs.push_back(cyclotomic(x));
  return {{"matches", c.matches}, {"indices", c.indices}, {"predicted", std::move(pred)}, {"observed", std::move(obs)}};
}

Json newton(const polygon::NewtonPolygon& np) {
  Json v = Json::array();
  for (const auto& p : np.vertices) v.push_back(Json::array({p.x, rational(p.y)}));
  Json s = Json::array();
  for (const auto& q : np.slopes()) s.push_back(rational(q));
  return {{"vertices", std::move(v)}, {"slopes", std::move(s)}};
}

Json lambda(const polygon::LambdaReport& l) {
  return {{"ord_q", valuation(l.valuation)}, {"bound", rational(l.bound)}, {"equality", l.equality}};
}

Json purity(const polygon::PurityResult& r) {
  Json emb = Json::array();
  for (const auto& e : r.embeddings) {
    Json roots = Json::array(), mods = Json::array();
    for (const auto& z : e.roots) roots.push_back(complex(z));
    for (const auto& m : e.moduli) mods.push_back(real(m));
    emb.push_back({{"k", e.k},
                   {"roots", std::move(roots)},
                   {"moduli", std::move(mods)},
                   {"target", real(e.target)},
                   {"max_relative_deviation", real(e.max_relative_deviation)},
                   {"leading_modulus", real(e.leading_modulus)},
                   {"leading_matches", e.leading_matches}});
  }
  return {{"pure", r.pure},
          {"precision_bits", r.options.precision_bits},
          {"tolerance", r.options.tolerance},
          {"embeddings", std::move(emb)}};
}

Json deligne(const polygon::DeligneCheck& c) {
  return {{"i", c.i},
          {"within_bound", c.within_bound},
          {"at_bound", c.at_bound},
          {"consistent", c.consistent},
          {"max_ratio", real(c.max_ratio)}};
}

Json quadratic(const quad2::QuadEvalResult& r) {
  std::vector<std::size_t> piv;
  for (auto p : r.pivots) piv.push_back(p + 1);
  std::vector<std::uint64_t> dets;
  for (auto d : r.determinants) dets.push_back(d.code);
  return {{"value", cyclotomic(r.value)},
          {"zeta", r.zeta},
          {"half_exponent", r.half_exponent},
          {"pivots", piv},
          {"determinants", dets}};
}

Json verify(const cli::VerifyReport& r) {
  Json j;
  j["d"] = r.d;
  j["regseq"] = regseq(r.regseq);
  j["hilbert"] = hilbert(r.hilbert);
  Json s = Json::array();
  for (const auto& v : r.sums) s.push_back(sum(v));
  j["sums"] = std::move(s);
  j["lpoly"] = lpoly(r.lpoly);
  if (r.consistency) j["consistency"] = consistency(*r.consistency);
  else j["consistency"] = {{"note", r.consistency_note}};
  j["polygon"] = newton(r.polygon);
  j["bound"] = newton(r.bound);
  j["dominates"] = r.dominates;
  j["lambda"] = lambda(r.lambda);
  j["purity"] = purity(r.purity);
  Json dl = Json::array();
  for (const auto& c : r.deligne) dl.push_back(deligne(c));
  j["deligne"] = std::move(dl);
  if (r.quadratic) {
    auto q = quadratic(r.quadratic->result);
    q["agrees"] = r.quadratic->agrees;
    j["quadratic"] = std::move(q);
  }
  j["failures"] = r.failures;
  return j;
}

Json timings(const std::vector<cli::StageTiming>& t) {
  Json j = Json::object();
  for (const auto& s : t) j[s.stage] = s.seconds;
  return j;
}

Json envelope(const std::string& command, const std::string& status, const cli::ProblemSpec* spec, Json result) {
  Json j;
  j["schema"] = kSchema;
  j["command"] = command;
  j["status"] = status;
  if (spec) j["problem"] = problem(*spec);
  j["result"] = std::move(result);
  return j;
}

std::string canonical(const Json& doc) {
  Json copy = doc;
  copy.erase("timings");
  return copy.dump(2);
}

}  // namespace expsum::report
