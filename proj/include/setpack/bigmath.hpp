#pragma once

#include <gmpxx.h>

namespace setpack {

using BigInt = mpz_class;
using BigRat = mpq_class;

BigInt factorial(unsigned long n);

// Zero when r > n; exact otherwise.
BigInt binomial(unsigned long n, unsigned long r);

BigInt pow_int(const BigInt& base, unsigned long exp);

// Rational lower bounds on e and e^5, tight enough for the certified
// comparisons we make (the true margins are far larger than the slack here).
inline BigRat euler_lower_bound() { return BigRat(2718281, 1000000); }
inline BigRat euler5_lower_bound() { return BigRat(148413159, 1000000); }

}  // namespace setpack
