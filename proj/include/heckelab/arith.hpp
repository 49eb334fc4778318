#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "heckelab/util.hpp"

namespace heckelab::arith {

// Positive integer together with its prime factorization.
// Primes are strictly increasing, exponents >= 1, and the product of
// prime^exp recovers value. n = 1 has an empty factor list.
struct FactoredInt {
  std::uint64_t value = 1;
  std::vector<std::pair<std::uint64_t, unsigned>> factors;
};

inline constexpr std::uint64_t kDefaultSieveBound = 1'000'000;

// Deterministic trial division against a prime table up to `sieve_bound`.
// Inputs above sieve_bound^2 are rejected rather than silently mis-factored.
FactoredInt factorize(std::uint64_t n, std::uint64_t sieve_bound = kDefaultSieveBound);

Int sigma_k(const FactoredInt& n, unsigned k);
inline Int sigma(const FactoredInt& n) { return sigma_k(n, 1); }

std::uint64_t euler_phi(const FactoredInt& n);
std::uint64_t dedekind_psi(const FactoredInt& n);

// sigma(n) mod 3 nonvanishing, decided from the factorization alone:
// every prime p == 1 (mod 3) needs exponent == 0,1,3,4 (mod 6) and every
// prime p == 2 (mod 3) needs an even exponent. Requires 3 ∤ n.
bool sigma_nonzero_mod3(const FactoredInt& n);

// Nonvanishing of sigma(n) mod 2, 4 and 8 for odd n, again decided from
// the factorization. The implications run nonzero_mod2 => nonzero_mod4
// => nonzero_mod8 (an odd value is nonzero mod 4, and so on).
struct SigmaMod2Class {
  bool nonzero_mod2 = false;
  bool nonzero_mod4 = false;
  bool nonzero_mod8 = false;
};

SigmaMod2Class sigma_mod2_class(const FactoredInt& n);

}  // namespace heckelab::arith
