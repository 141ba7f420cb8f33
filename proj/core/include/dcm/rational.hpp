#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace dcm {

/// All engine quantities are exact rationals backed by GMP.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or a plain integer string.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

/// "p/q", or just "p" for integers.
inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline mpz_class rat_floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline mpz_class rat_ceil(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace dcm
