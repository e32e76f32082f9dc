#pragma once

// Coefficient arithmetic. Everything downstream (group rings, truncated
// series, Laurent rings) works over Z with no overflow, so coefficients are
// GMP integers behind a single alias.

#include <gmpxx.h>

#include <string>

namespace freikalk {

using Int = mpz_class;

inline std::string to_string(const Int& v) { return v.get_str(); }

// mpz_class has no long long constructor; exponents are long long throughout,
// so every conversion funnels through here.
inline Int make_int(long long v) {
  if constexpr (sizeof(long) == sizeof(long long)) {
    return Int(static_cast<long>(v));
  } else {
    return Int(std::to_string(v));
  }
}

// Binomial coefficient with an arbitrary (possibly negative) upper index:
// binom(e, k) = e(e-1)...(e-k+1) / k!. This is what makes the generator
// image of a negative power a single closed form.
inline Int binomial(long long e, unsigned long k) {
  Int num = 1;
  for (unsigned long t = 0; t < k; ++t) num *= make_int(e) - Int(t);
  Int den;
  mpz_fac_ui(den.get_mpz_t(), k);
  return num / den;
}

}  // namespace freikalk
