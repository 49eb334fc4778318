#include "heckelab/arith.hpp"

#include <algorithm>
#include <mutex>

namespace heckelab::arith {

namespace {

std::vector<std::uint32_t>& prime_table(std::uint64_t bound) {
  static std::vector<std::uint32_t> primes;
  static std::uint64_t sieved_to = 0;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (bound > sieved_to) {
    primes.clear();
    std::vector<bool> composite(bound + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
      if (!composite[i]) {
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
      }
    }
    sieved_to = bound;
  }
  return primes;
}

}  // namespace

FactoredInt factorize(std::uint64_t n, std::uint64_t sieve_bound) {
  if (n == 0) throw error("factorize: n must be positive");
  if (sieve_bound < 2) throw error("factorize: sieve bound too small");
  if (n > sieve_bound * sieve_bound)
    throw resource_error("factorize: input exceeds sieve_bound^2 = " +
                         std::to_string(sieve_bound * sieve_bound));
  FactoredInt out;
  out.value = n;
  std::uint64_t rest = n;
  for (std::uint32_t p : prime_table(sieve_bound)) {
    if (static_cast<std::uint64_t>(p) * p > rest) break;
    if (rest % p == 0) {
      unsigned e = 0;
      while (rest % p == 0) rest /= p, ++e;
      out.factors.emplace_back(p, e);
    }
  }
  if (rest > 1) out.factors.emplace_back(rest, 1);  // rest is prime here
  return out;
}

Int sigma_k(const FactoredInt& n, unsigned k) {
  Int result = 1;
  for (auto [p, e] : n.factors) {
    if (k == 0) {
      result *= e + 1;
      continue;
    }
    // 1 + p^k + ... + p^{ke}
    Int pk = pow_int(Int(p), k);
    Int term = 1, acc = 1;
    for (unsigned i = 0; i < e; ++i) {
      acc *= pk;
      term += acc;
    }
    result *= term;
  }
  return result;
}

std::uint64_t euler_phi(const FactoredInt& n) {
  std::uint64_t result = 1;
  for (auto [p, e] : n.factors) {
    std::uint64_t pe1 = 1;
    for (unsigned i = 0; i + 1 < e; ++i) pe1 *= p;
    result *= pe1 * (p - 1);
  }
  return result;
}

std::uint64_t dedekind_psi(const FactoredInt& n) {
  std::uint64_t result = 1;
  for (auto [p, e] : n.factors) {
    std::uint64_t pe1 = 1;
    for (unsigned i = 0; i + 1 < e; ++i) pe1 *= p;
    result *= pe1 * (p + 1);
  }
  return result;
}

bool sigma_nonzero_mod3(const FactoredInt& n) {
  if (n.value % 3 == 0) throw error("sigma_nonzero_mod3: n must not be divisible by 3");
  for (auto [p, e] : n.factors) {
    if (p % 3 == 1) {
      unsigned r = e % 6;
      if (!(r == 0 || r == 1 || r == 3 || r == 4)) return false;
    } else {  // p == 2 (mod 3)
      if (e % 2 != 0) return false;
    }
  }
  return true;
}

namespace {

// 2-adic valuation class of sigma(p^e) for odd p and odd e, read off the
// residues of p and e alone. sigma(p^e) is even whenever e is odd; the
// valuation is 1 exactly when p == e == 1 (mod 4), and 2 exactly when
// either e == 3 (mod 8) with p == 1 (mod 4), or e == 1 (mod 4) with
// p == 3 (mod 8). Everything else lands at valuation >= 3.
enum class OddFactorClass { val1, val2, val3_or_more };

OddFactorClass classify_odd_exponent_factor(std::uint64_t p, unsigned e) {
  if (p % 4 == 1 && e % 4 == 1) return OddFactorClass::val1;
  if (e % 8 == 3 && p % 4 == 1) return OddFactorClass::val2;
  if (e % 4 == 1 && p % 8 == 3) return OddFactorClass::val2;
  return OddFactorClass::val3_or_more;
}

}  // namespace

SigmaMod2Class sigma_mod2_class(const FactoredInt& n) {
  if (n.value % 2 == 0) throw error("sigma_mod2_class: n must be odd");
  std::vector<std::pair<std::uint64_t, unsigned>> odd_exp;
  for (auto [p, e] : n.factors)
    if (e % 2 == 1) odd_exp.emplace_back(p, e);

  SigmaMod2Class out;
  out.nonzero_mod2 = odd_exp.empty();  // sigma odd iff n is a square

  // mod 4: at most one odd-exponent prime, and that factor must have
  // valuation exactly 1.
  out.nonzero_mod4 =
      odd_exp.empty() ||
      (odd_exp.size() == 1 &&
       classify_odd_exponent_factor(odd_exp[0].first, odd_exp[0].second) == OddFactorClass::val1);

  // mod 8: total valuation <= 2 across the odd-exponent factors.
  if (odd_exp.size() > 2) {
    out.nonzero_mod8 = false;
  } else if (odd_exp.empty()) {
    out.nonzero_mod8 = true;
  } else if (odd_exp.size() == 2) {
    out.nonzero_mod8 =
        classify_odd_exponent_factor(odd_exp[0].first, odd_exp[0].second) == OddFactorClass::val1 &&
        classify_odd_exponent_factor(odd_exp[1].first, odd_exp[1].second) == OddFactorClass::val1;
  } else {
    out.nonzero_mod8 =
        classify_odd_exponent_factor(odd_exp[0].first, odd_exp[0].second) != OddFactorClass::val3_or_more;
  }
  return out;
}

}  // namespace heckelab::arith
