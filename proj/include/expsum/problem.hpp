#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <mpfr.h>

#include "expsum/gf.hpp"
#include "expsum/mpoly.hpp"
#include "expsum/sums.hpp"

namespace expsum::cli {

/// A parsed problem file.
///
///   p=2 a=2 modulus=1,1,1 n=2 b=1 budget=100000000
///   poly:
///   1 * x1^3
///   [0,1] * x1 x2^2      # coefficient as F_p coordinates, constant first
///
/// Keys may share lines; terms after `poly:` are separated by newlines, ';' or '+'.
/// `#` starts a comment.
struct ProblemSpec {
  std::uint32_t p = 2;
  unsigned a = 1;
  std::optional<std::vector<std::uint32_t>> modulus;
  std::size_t n = 0;
  std::vector<std::uint32_t> b_coords{1};
  std::uint64_t budget = 1'000'000'000;
  mpfr_prec_t precision = 128;
  double tolerance = 1e-9;

  gf::FieldPtr field;
  mpoly::MultiPoly poly{gf::prime_field(2), 0};
  gf::Elem b{1};

  sums::CharacterSpec character() const { return {*field, b}; }
};

/// Throws InputError with a "line N: " prefix on every validation failure.
ProblemSpec parse_problem(const std::string& text);

}  // namespace expsum::cli
