#include "expsum/problem.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

#include "expsum/error.hpp"

namespace expsum::cli {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw InputError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::uint64_t parse_uint(std::size_t line, const std::string& key, std::string_view s) {
  std::string t = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec == std::errc() && ptr == t.data() + t.size() && !t.empty()) return v;
  // Allow 1e8 style for budgets.
  try {
    std::size_t pos = 0;
    const double d = std::stod(t, &pos);
    if (pos == t.size() && d >= 0 && d < 1.8e19 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
  } catch (const std::exception&) {
  }
  fail(line, "expected a nonnegative integer for " + key + ", got '" + t + "'");
}

std::vector<std::uint32_t> parse_digits(std::size_t line, const std::string& key, std::string_view s) {
  std::string t = trim(s);
  if (t.size() >= 2 && ((t.front() == '[' && t.back() == ']') || (t.front() == '(' && t.back() == ')')))
    t = t.substr(1, t.size() - 2);
  std::vector<std::uint32_t> out;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_uint(line, key, item);
    if (v > 0xffffffffu) fail(line, key + " digit out of range");
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.empty()) fail(line, "empty coordinate vector for " + key);
  return out;
}

struct Token {
  std::string text;
  std::size_t line;
};

struct RawTerm {
  std::string text;
  std::size_t line;
};

gf::Elem coords_to_elem(const gf::Field& F, std::uint32_t p, unsigned a, std::size_t line, const std::string& what,
                        std::vector<std::uint32_t> c) {
  if (c.size() > a) fail(line, what + " has " + std::to_string(c.size()) + " coordinates, field degree is " + std::to_string(a));
  for (auto v : c)
    if (v >= p) fail(line, what + " coordinate " + std::to_string(v) + " is not reduced mod " + std::to_string(p));
  c.resize(a, 0);
  return F.from_digits(c);
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
  ProblemSpec spec;
  std::map<std::string, Token> keys;
  std::vector<RawTerm> terms;
  bool in_poly = false;
  std::size_t poly_line = 0;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string line = raw;
    if (!in_poly) {
      if (auto pp = line.find("poly:"); pp != std::string::npos) {
        in_poly = true;
        poly_line = lineno;
        std::string rest = line.substr(pp + 5);
        line.resize(pp);
        std::istringstream toks(line);
        for (std::string tok; toks >> tok;) {
          auto eq = tok.find('=');
          if (eq == std::string::npos || eq == 0) fail(lineno, "expected key=value, got '" + tok + "'");
          auto key = tok.substr(0, eq);
          if (keys.count(key)) fail(lineno, "duplicate key '" + key + "'");
          keys[key] = {tok.substr(eq + 1), lineno};
        }
        line = rest;
      } else {
        std::istringstream toks(line);
        for (std::string tok; toks >> tok;) {
          auto eq = tok.find('=');
          if (eq == std::string::npos || eq == 0) fail(lineno, "expected key=value, got '" + tok + "'");
          auto key = tok.substr(0, eq);
          if (keys.count(key)) fail(lineno, "duplicate key '" + key + "'");
          keys[key] = {tok.substr(eq + 1), lineno};
        }
        continue;
      }
    }
    for (char& ch : line)
      if (ch == '+') ch = ';';
    std::stringstream ts(line);
    for (std::string item; std::getline(ts, item, ';');) {
      auto t = trim(item);
      if (!t.empty()) terms.push_back({t, lineno});
    }
  }
  if (!in_poly) fail(lineno == 0 ? 1 : lineno, "missing 'poly:' section");

  static const char* known[] = {"p", "a", "modulus", "n", "b", "budget", "precision", "tol"};
  for (const auto& [k, tok] : keys) {
    bool ok = false;
    for (auto* kk : known) ok = ok || k == kk;
    if (!ok) fail(tok.line, "unknown key '" + k + "'");
  }
  auto need = [&](const char* k) -> const Token& {
    auto it = keys.find(k);
    if (it == keys.end()) fail(poly_line, std::string("missing required key '") + k + "'");
    return it->second;
  };

  const Token& tp = need("p");
  const auto p = parse_uint(tp.line, "p", tp.text);
  if (p > 0xffffffffu || !gf::is_prime(p)) fail(tp.line, "p = " + trim(tp.text) + " is not prime");
  spec.p = static_cast<std::uint32_t>(p);
  if (auto it = keys.find("a"); it != keys.end()) {
    const auto a = parse_uint(it->second.line, "a", it->second.text);
    if (a == 0 || a > 64) fail(it->second.line, "a must lie in 1..64");
    spec.a = static_cast<unsigned>(a);
  }
  std::size_t field_line = tp.line;
  if (auto it = keys.find("modulus"); it != keys.end()) {
    spec.modulus = parse_digits(it->second.line, "modulus", it->second.text);
    field_line = it->second.line;
  }
  const Token& tn = need("n");
  spec.n = parse_uint(tn.line, "n", tn.text);
  if (spec.n == 0 || spec.n > 64) fail(tn.line, "n must lie in 1..64");
  if (auto it = keys.find("budget"); it != keys.end()) spec.budget = parse_uint(it->second.line, "budget", it->second.text);
  if (auto it = keys.find("precision"); it != keys.end()) {
    const auto bits = parse_uint(it->second.line, "precision", it->second.text);
    if (bits < 32 || bits > 1u << 16) fail(it->second.line, "precision must lie in 32..65536 bits");
    spec.precision = static_cast<mpfr_prec_t>(bits);
  }
  if (auto it = keys.find("tol"); it != keys.end()) {
    try {
      std::size_t pos = 0;
      const auto t = trim(it->second.text);
      spec.tolerance = std::stod(t, &pos);
      if (pos != t.size() || !(spec.tolerance > 0)) throw std::invalid_argument("tol");
    } catch (const std::exception&) {
      fail(it->second.line, "tol must be a positive number");
    }
  }

  try {
    spec.field = gf::build_field(spec.p, spec.a, spec.modulus);
  } catch (const InputError& e) {
    fail(field_line, e.what());
  } catch (const std::invalid_argument& e) {
    fail(field_line, e.what());
  }
  const auto& F = *spec.field;

  if (auto it = keys.find("b"); it != keys.end()) {
    spec.b_coords = parse_digits(it->second.line, "b", it->second.text);
    spec.b = coords_to_elem(F, spec.p, spec.a, it->second.line, "b", spec.b_coords);
    if (spec.b.code == 0) fail(it->second.line, "b = 0 gives the trivial character");
    spec.b_coords.resize(spec.a, 0);
  } else {
    spec.b = F.one();
    spec.b_coords.assign(spec.a, 0);
    spec.b_coords[0] = 1;
  }

  mpoly::MultiPoly f(spec.field, spec.n);
  for (const auto& term : terms) {
    std::string s = term.text;
    gf::Elem coeff = F.one();
    // Coefficient: everything before the first variable, minus a trailing '*'.
    auto xpos = s.find('x');
    std::string cpart = trim(s.substr(0, xpos == std::string::npos ? s.size() : xpos));
    std::string mpart = xpos == std::string::npos ? std::string() : s.substr(xpos);
    if (!cpart.empty() && cpart.back() == '*') cpart = trim(cpart.substr(0, cpart.size() - 1));
    if (!cpart.empty()) coeff = coords_to_elem(F, spec.p, spec.a, term.line, "coefficient", parse_digits(term.line, "coefficient", cpart));
    else if (mpart.empty()) fail(term.line, "empty term");

    mpoly::Exponent u(spec.n, 0);
    std::size_t i = 0;
    while (i < mpart.size()) {
      const char c = mpart[i];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
        ++i;
        continue;
      }
      if (c != 'x') fail(term.line, "unexpected '" + std::string(1, c) + "' in term '" + s + "'");
      ++i;
      std::size_t j = i;
      while (j < mpart.size() && std::isdigit(static_cast<unsigned char>(mpart[j]))) ++j;
      if (j == i) fail(term.line, "variable index missing in term '" + s + "'");
      const auto var = parse_uint(term.line, "variable index", mpart.substr(i, j - i));
      if (var < 1 || var > spec.n) fail(term.line, "variable x" + std::to_string(var) + " outside x1..x" + std::to_string(spec.n));
      std::uint64_t e = 1;
      i = j;
      if (i < mpart.size() && mpart[i] == '^') {
        ++i;
        j = i;
        while (j < mpart.size() && std::isdigit(static_cast<unsigned char>(mpart[j]))) ++j;
        if (j == i) fail(term.line, "exponent missing in term '" + s + "'");
        e = parse_uint(term.line, "exponent", mpart.substr(i, j - i));
        i = j;
      }
      if (u[var - 1] + e > 1u << 20) fail(term.line, "exponent too large");
      u[var - 1] += static_cast<std::uint32_t>(e);
    }
    f.add_term(u, coeff);
  }
  spec.poly = std::move(f);
  return spec;
}

}  // namespace expsum::cli
