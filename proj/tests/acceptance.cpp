// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "expsum/error.hpp"
#include "expsum/koszul.hpp"
#include "expsum/lfun.hpp"
#include "expsum/pipeline.hpp"
#include "expsum/polygon.hpp"
#include "expsum/problem.hpp"
#include "expsum/quad2.hpp"
#include "expsum/report.hpp"
#include "oracle.hpp"

using namespace expsum;
using cyclo::CycNum;
using gf::Elem;
using mpoly::Exponent;
using mpoly::MultiPoly;

namespace {

constexpr double kTol = 1e-9;
constexpr std::uint64_t kSeed = 20240601;

struct Check {
  bool ok = true;
  std::ostringstream why;
  void require(bool cond, const std::string& msg) {
    if (!cond && ok) why << msg;
    ok = ok && cond;
  }
};

// Sums seen by criteria 1-3, for the Deligne pass.
struct SeenSum {
  std::uint32_t p;
  unsigned n, a, i;
  std::size_t D;
  std::vector<mpz_class> counts;
  bool pipeline_at_bound = false;
  bool pipeline_ok = true;  // within bound and consistent with the roots
};
std::vector<SeenSum> g_seen;
std::vector<std::string> g_c3_reports;
std::vector<cli::ProblemSpec> g_c3_specs;

void remember(const cli::ProblemSpec& spec, const cli::VerifyReport& rep) {
  for (std::size_t k = 0; k < rep.sums.size(); ++k) {
    const auto& s = rep.sums[k];
    SeenSum seen{spec.p, static_cast<unsigned>(spec.n), spec.a, s.i, rep.lpoly.degree, s.counts};
    if (k < rep.deligne.size()) {
      seen.pipeline_at_bound = rep.deligne[k].at_bound;
      seen.pipeline_ok = rep.deligne[k].within_bound && rep.deligne[k].consistent && rep.deligne[k].i == s.i;
    }
    g_seen.push_back(std::move(seen));
  }
  if (rep.consistency)
    for (std::size_t k = 0; k < rep.consistency->indices.size(); ++k) {
      // Extra sums carry no pipeline flags; bound check only.
      sums::SumOptions o;
      o.budget = spec.budget;
      const auto s = sums::exponential_sum(spec.poly, rep.consistency->indices[k], spec.character(), o);
      SeenSum seen{spec.p, static_cast<unsigned>(spec.n), spec.a, s.i, rep.lpoly.degree, s.counts};
      g_seen.push_back(std::move(seen));
    }
}

bool moduli_near(const polygon::PurityResult& r, double target, double tol) {
  for (const auto& e : r.embeddings)
    for (const auto& m : e.moduli)
      if (!(std::abs(m.to_double() - target) <= tol)) return false;
  return !r.embeddings.empty();
}

std::string poly_text(const MultiPoly& f) {
  // Problem-file term list for f.
  std::ostringstream os;
  const auto& F = *f.field();
  for (const auto& [u, c] : f.terms()) {
    const auto d = F.digits(c);
    os << "[";
    for (std::size_t k = 0; k < d.size(); ++k) os << (k ? "," : "") << d[k];
    os << "] *";
    bool any = false;
    for (std::size_t v = 0; v < u.size(); ++v)
      if (u[v]) {
        os << " x" << v + 1 << "^" << u[v];
        any = true;
      }
    if (!any) os << "";
    os << "\n";
  }
  return os.str();
}

// ---- criterion 1
void crit1(Check& c) {
  const auto spec = cli::parse_problem("p=2 a=1 n=1 poly: 1*x1^3");
  const auto rep = cli::cmd_verify(spec);
  c.require(rep.pass, "pipeline did not pass; ");
  c.require(rep.lpoly.coeffs == std::vector<CycNum>{CycNum::integer(2, 1), CycNum::integer(2, 0), CycNum::integer(2, 2)},
            "P != 1 + 2t^2; ");
  c.require(rep.polygon.vertices == std::vector<polygon::Vertex>{{0, 0}, {2, 1}}, "Newton polygon wrong; ");
  c.require(rep.bound.vertices == std::vector<polygon::Vertex>{{0, 0}, {1, mpq_class(1, 3)}, {2, 1}}, "bound wrong; ");
  c.require(rep.dominates, "no dominance; ");
  c.require(rep.lambda.valuation && *rep.lambda.valuation == 1 && rep.lambda.bound == 1 && rep.lambda.equality,
            "ord_q Lambda != 1 with equality; ");
  c.require(moduli_near(rep.purity, std::sqrt(2.0), kTol), "moduli not sqrt 2; ");
  // Brute force over F_2, F_4, F_8.
  const auto& f = spec.poly;
  c.require(rep.sums.size() == 2, "expected S_1, S_2; ");
  for (const auto& s : rep.sums) c.require(s.value == oracle::naive_sum(f, s.i), "engine sum != brute force; ");
  c.require(rep.consistency && rep.consistency->matches && rep.consistency->indices == std::vector<unsigned>{3},
            "consistency at i = 3 failed; ");
  if (rep.consistency) c.require(rep.consistency->observed[0] == oracle::naive_sum(f, 3), "S_3 != brute force over F_8; ");
  remember(spec, rep);
}

// ---- criterion 2
void crit2(Check& c) {
  const auto spec = cli::parse_problem("p=3 n=1 poly: x1^2");
  const auto rep = cli::cmd_verify(spec);
  const auto g = CycNum::integer(3, 1) + CycNum::integer(3, 2) * CycNum::zeta_power(3, 1);
  c.require(rep.pass, "pipeline did not pass; ");
  c.require(rep.lpoly.coeffs == std::vector<CycNum>{CycNum::integer(3, 1), g}, "P != 1 + (1+2z)t; ");
  c.require(rep.lambda.valuation && *rep.lambda.valuation == mpq_class(1, 2) && rep.lambda.equality,
            "ord_q Lambda != 1/2 with equality; ");
  c.require(rep.purity.embeddings.size() == 2, "expected two embeddings; ");
  c.require(moduli_near(rep.purity, std::sqrt(3.0), kTol), "moduli not sqrt 3; ");
  c.require(rep.sums.at(0).value == oracle::prime_field_sum(3, 1, {{{2}, 1}}), "S_1 != direct 3-point sum; ");
  c.require(rep.consistency && rep.consistency->matches, "consistency failed; ");
  if (rep.consistency)
    c.require(rep.consistency->observed[0] == oracle::naive_sum(spec.poly, 2), "S_2 != 9-point brute force; ");
  remember(spec, rep);
}

// ---- criterion 3
void crit3(Check& c) {
  std::mt19937_64 rng(kSeed);
  const auto U = koszul::hilbert_coefficients(3, 2);
  const polygon::NewtonPolygon bound = polygon::hodge_bound(3, 2, U);
  c.require(bound.slopes() == std::vector<mpq_class>{mpq_class(2, 3), 1, 1, mpq_class(4, 3)}, "bound slopes; ");
  // Draws alternate between F_2 and F_3. A cubic over F_3 has p | d, so its top form is never
  // regular and every F_3 draw must be filtered out; the 20 accepted instances all come from F_2.
  const gf::FieldPtr fields[2] = {gf::prime_field(2), gf::prime_field(3)};
  unsigned accepted = 0, draws = 0, f3_draws = 0, f3_accepted = 0;
  while (accepted < 20 && draws < 5000) {
    const std::uint32_t p = draws % 2 == 0 ? 2 : 3;
    const auto& F = fields[draws % 2];
    ++draws;
    const auto f = oracle::random_poly(F, 2, 3, rng);
    if (f.is_zero() || f.degree() != 3) continue;
    if (p == 3) ++f3_draws;
    if (!koszul::is_regular_sequence(f.homogeneous_component(3)).is_regular) continue;
    if (p == 3) {
      ++f3_accepted;
      continue;
    }
    ++accepted;
    const auto spec = cli::parse_problem("p=" + std::to_string(p) + " n=2 budget=100000000\npoly:\n" + poly_text(f));
    c.require(spec.poly == f, "problem text round trip; ");
    const auto rep = cli::cmd_verify(spec);
    const std::string tag = "[" + f.to_string() + " over F_" + std::to_string(p) + "] ";
    c.require(rep.pass, tag + "pipeline failed; ");
    c.require(rep.lpoly.degree == 4 && rep.lpoly.coeffs.size() == 5 && !rep.lpoly.coeffs[4].is_zero(),
              tag + "deg P != 4; ");
    for (const auto& a : rep.lpoly.coeffs) c.require(cyclo::is_algebraic_integer(a), tag + "non-integral coefficient; ");
    c.require(rep.consistency && rep.consistency->matches, tag + "consistency; ");
    for (const auto& s : rep.sums) c.require(s.value == oracle::naive_sum(f, s.i), tag + "sum != brute force; ");
    if (rep.consistency)
      c.require(rep.consistency->observed[0] == oracle::naive_sum(f, 5), tag + "S_5 != brute force; ");
    c.require(rep.bound == bound, tag + "bound; ");
    c.require(rep.dominates && polygon::dominates(rep.polygon, bound), tag + "dominance; ");
    c.require(rep.lambda.valuation && *rep.lambda.valuation == 4 && rep.lambda.equality, tag + "ord_q Lambda != 4; ");
    c.require(rep.purity.pure, tag + "purity; ");
    const double target = p;  // q^{n/2} = q
    c.require(moduli_near(rep.purity, target, kTol * target), tag + "moduli; ");
    remember(spec, rep);
    g_c3_specs.push_back(spec);
    g_c3_reports.push_back(report::canonical(report::envelope("verify", rep.pass ? "pass" : "fail", &spec,
                                                              report::verify(rep))));
  }
  c.require(accepted == 20, "only " + std::to_string(accepted) + " regular cubics in 5000 draws; ");
  c.require(f3_draws > 0 && f3_accepted == 0, "a cubic over F_3 passed the regular-sequence check; ");
}

// ---- criterion 4
void crit4(Check& c) {
  for (unsigned d = 2; d <= 6; ++d)
    for (unsigned n = 1; n <= 4; ++n) {
      const auto h = koszul::hilbert_coefficients(d, n);
      mpz_class D = 1;
      for (unsigned k = 0; k < n; ++k) D *= d - 1;
      mpz_class sum = 0, wsum = 0;
      for (std::size_t m = 0; m < h.U.size(); ++m) {
        sum += static_cast<unsigned long>(h.U[m]);
        wsum += mpz_class(static_cast<unsigned long>(m)) * static_cast<unsigned long>(h.U[m]);
      }
      const std::string tag = "(d=" + std::to_string(d) + ",n=" + std::to_string(n) + ") ";
      c.require(sum == D, tag + "sum U_m; ");
      c.require(2 * wsum == mpz_class(n) * D * (d - 2), tag + "sum m U_m; ");
    }
}

// ---- criterion 5
void crit5(Check& c) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    auto F = gf::prime_field(p);
    for (unsigned d = 2; d <= 6; ++d)
      for (std::size_t n = 1; n <= 4; ++n) {
        const std::string tag = "(p=" + std::to_string(p) + ",d=" + std::to_string(d) + ",n=" + std::to_string(n) + ") ";
        MultiPoly fermat(F, n);
        for (std::size_t i = 0; i < n; ++i) {
          Exponent u(n, 0);
          u[i] = d;
          fermat.add_term(u, F->one());
        }
        if (d % p != 0) {
          const auto rep = koszul::is_regular_sequence(fermat);
          auto U = koszul::hilbert_coefficients(d, static_cast<unsigned>(n)).U;
          const auto D = koszul::hilbert_coefficients(d, static_cast<unsigned>(n)).total();
          U.push_back(0);
          c.require(rep.is_regular, tag + "Fermat rejected; ");
          c.require(rep.hilbert_function == U, tag + "Hilbert function != U; ");
          c.require(rep.basis.size() == D, tag + "basis size; ");
        } else {
          c.require(!koszul::is_regular_sequence(fermat).is_regular, tag + "Fermat with p | d accepted; ");
        }
        if (n >= 2) {
          Exponent u(n, 0);
          u[0] = d;
          c.require(!koszul::is_regular_sequence(MultiPoly::monomial(F, u, F->one())).is_regular,
                    tag + "x1^d accepted; ");
        }
      }
  }
  // Exhaustive p | d, d > 2 families.
  struct Family {
    std::uint32_t p;
    unsigned d;
  };
  for (auto fam : {Family{2, 4}, Family{2, 6}, Family{3, 3}, Family{3, 6}}) {
    auto F = gf::prime_field(fam.p);
    std::uint64_t total = 1;
    for (unsigned k = 0; k <= fam.d; ++k) total *= fam.p;
    for (std::uint64_t code = 1; code < total; ++code) {
      MultiPoly f(F, 2);
      std::uint64_t r = code;
      for (unsigned k = 0; k <= fam.d; ++k, r /= fam.p)
        if (r % fam.p) f.add_term({k, fam.d - k}, Elem{r % fam.p});
      c.require(!koszul::is_regular_sequence(f).is_regular, "accepted " + f.to_string() + "; ");
    }
  }
}

// ---- criterion 6
quad2::QuadForm random_nonsingular(const gf::FieldPtr& F, std::size_t n, Elem b, std::mt19937_64& rng) {
  while (true) {
    quad2::QuadForm Q;
    Q.field = F;
    Q.twist = b;
    Q.n = n;
    Q.A.assign(n * n, F->zero());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) Q.at(i, j) = Q.at(j, i) = oracle::random_elem(*F, rng);
    for (std::size_t i = 0; i < n; ++i) Q.linear.push_back(oracle::random_elem(*F, rng));
    Q.constant = oracle::random_elem(*F, rng);
    if (quad2::check_condition(Q)) return Q;
  }
}

void crit6(Check& c) {
  std::mt19937_64 rng(kSeed + 6);
  // (a) p-th power removal.
  std::vector<gf::FieldPtr> fields{gf::prime_field(2), gf::build_field(2, 2), gf::build_field(2, 3), gf::prime_field(3),
                                   gf::build_field(3, 2)};
  for (int t = 0; t < 200; ++t) {
    const auto& F = fields[t % fields.size()];
    const std::uint32_t p = F->characteristic();
    auto f = oracle::random_poly(F, 2, p, rng);
    const std::size_t v = rng() % 2;
    Exponent u(2, 0);
    u[v] = p;
    f.add_term(u, oracle::random_nonzero(*F, rng));
    const Elem b = oracle::random_nonzero(*F, rng);
    const sums::CharacterSpec chi(*F, b);
    const auto g = quad2::remove_pth_power_terms(f, chi);
    const auto before = oracle::naive_sum(f, 1, b);
    c.require(before == oracle::naive_sum(g, 1, b), "(a) p-th power removal changed the sum of " + f.to_string() + "; ");
    c.require(before == sums::exponential_sum(g, 1, chi).value, "(a) engine disagrees; ");
    for (const auto& [w, coeff] : g.terms()) {
      unsigned nz = 0;
      for (auto e : w) nz += e != 0;
      c.require(!(nz == 1 && mpoly::total_degree(w) == p), "(a) p-th power left; ");
    }
  }
  // (b) + (d) closed form and determinant preservation.
  unsigned steps = 0;
  for (int t = 0; t < 100; ++t) {
    const auto& F = t % 2 == 0 ? fields[0] : fields[1];
    const std::size_t n = 2 + 2 * ((t / 2) % 3);
    const Elem b = oracle::random_nonzero(*F, rng);
    const auto Q = random_nonsingular(F, n, b, rng);
    const auto r = quad2::evaluate(Q);
    mpz_class qn = 1;
    for (std::size_t k = 0; k < n / 2; ++k) qn *= static_cast<unsigned long>(F->size());
    c.require(r.value == oracle::naive_sum(Q.to_poly(), 1, b), "(b) evaluate != brute force; ");
    c.require(r.value == CycNum::integer(2, qn) || r.value == CycNum::integer(2, -qn), "(b) not +-q^{n/2}; ");
    for (auto cur = Q; cur.n > 2;) {
      const auto e = quad2::eliminate_pair(cur);
      c.require(e.det_reduced == e.det_normalized, "(d) det A' != det A; ");
      c.require(quad2::determinant(cur) == F->mul(e.det_normalized, F->mul(e.pivot_scale, e.pivot_scale)),
                "(d) normalisation changed det by other than a square; ");
      c.require(oracle::naive_sum(cur.to_poly(), 1, b) ==
                    oracle::naive_sum(e.reduced.to_poly(), 1, b).scaled(static_cast<long>(F->size())),
                "(d) sum not q times reduced sum; ");
      cur = e.reduced;
      ++steps;
    }
  }
  c.require(steps > 50, "(d) too few elimination steps exercised; ");
  // (c) every quadratic in three variables over F_2.
  auto F2 = fields[0];
  const auto chi = sums::CharacterSpec::standard(*F2);
  const auto monos = oracle::exponents_up_to(3, 2);
  for (std::uint64_t mask = 0; mask < (1u << monos.size()); ++mask) {
    MultiPoly f(F2, 3);
    for (std::size_t k = 0; k < monos.size(); ++k)
      if (mask >> k & 1) f.add_term(monos[k], F2->one());
    const auto Q = quad2::build_matrix(quad2::remove_pth_power_terms(f, chi), chi);
    c.require(quad2::determinant(Q).code == 0, "(c) nonzero det for " + f.to_string() + "; ");
  }
}

// ---- criterion 7
void crit7(Check& c) {
  c.require(g_seen.size() > 40, "too few sums recorded; ");
  for (const auto& s : g_seen) {
    // |S| <= D q^{ni/2} in every embedding, straight from the counts.
    const double q = std::pow(double(s.p), double(s.a));
    const double bound = double(s.D) * std::pow(q, 0.5 * s.n * s.i);
    bool at_bound = false;
    for (std::uint32_t k = 1; k < s.p; ++k) {
      long double re = 0, im = 0;
      for (std::uint32_t r = 0; r < s.p; ++r) {
        const long double ang = 2.0L * 3.14159265358979323846264338327950288L * (long double)(k * r % s.p) / s.p;
        re += s.counts[r].get_d() * std::cos(ang);
        im += s.counts[r].get_d() * std::sin(ang);
      }
      const double mag = double(std::sqrt(re * re + im * im));
      c.require(mag <= bound * (1 + kTol) + kTol, "S_" + std::to_string(s.i) + " exceeds the bound; ");
      at_bound = at_bound || (bound > 0 && std::abs(mag - bound) <= kTol * bound);
    }
    // Equality needs every rho_j^i equal; the pipeline checks that against
    // the numerical roots, here its flag must match the direct computation.
    c.require(s.pipeline_ok, "pipeline flagged S_" + std::to_string(s.i) + "; ");
    if (s.i <= s.D) c.require(at_bound == s.pipeline_at_bound, "equality flag mismatch at S_" + std::to_string(s.i) + "; ");
  }
}

// ---- criterion 8
void crit8(Check& c) {
  c.require(g_c3_specs.size() == 20, "criterion 3 did not record 20 reports; ");
  for (std::size_t k = 0; k < g_c3_specs.size(); ++k) {
    cli::RunOptions many;
    many.workers = 8;
    const auto rep = cli::cmd_verify(g_c3_specs[k], many);
    auto doc = report::envelope("verify", rep.pass ? "pass" : "fail", &g_c3_specs[k], report::verify(rep));
    doc["timings"] = report::timings(rep.timings);
    c.require(report::canonical(doc) == g_c3_reports[k], "report " + std::to_string(k) + " differs with 8 workers; ");
  }
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "x^3 over F_2: P = 1 + 2t^2, polygons, Lambda, purity, brute force to F_8", 1.0, crit1},
      {2, "x^2 over F_3: P = 1 + (1+2z)t, Lambda = 1/2, purity sqrt 3 in both embeddings", 1.0, crit2},
      {3, "random dense cubics over F_2, F_3 (n = 2), 20 regular kept (F_3 ones all rejected): degree 4, integrality, consistency, polygons, purity", 120.0,
       crit3},
      {4, "Hilbert identities for d <= 6, n <= 4", 1.0, crit4},
      {5, "regular-sequence checker: Fermat forms, x1^d, p | d families", 30.0, crit5},
      {6, "quadratic suite: p-th power removal, closed form, odd n, det preservation", 120.0, crit6},
      {7, "Deligne bound on every sum from criteria 1-3, consistent with purity", 60.0, crit7},
      {8, "criterion 3 reports identical with 1 and 8 workers (timings excluded)", 120.0, crit8},
  };
  int failures = 0;
  for (const auto& cr : all) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what() + "; ");
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    c.require(dt.count() < cr.limit_s, "runtime limit exceeded; ");
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name << " (" << std::fixed
              << std::setprecision(3) << dt.count() << " s, limit " << std::setprecision(0) << cr.limit_s << " s)";
    if (!c.ok) std::cout << " -- " << c.why.str();
    std::cout << std::endl;
    failures += !c.ok;
  }
  return failures == 0 ? 0 : 1;
}
