#include "setpack/bigmath.hpp"

namespace setpack {

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned long n, unsigned long r) {
  if (r > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

BigInt pow_int(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

}  // namespace setpack
