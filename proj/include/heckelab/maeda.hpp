#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heckelab/arith.hpp"
#include "heckelab/util.hpp"

namespace heckelab::maeda {

// Condition on the weight parameter d at p = 3: the q^d coefficient of
// Delta^i is divisible by 3 for every 1 <= i <= d-1. witness_i is the
// first failing i when ok is false.
struct Cond1Result {
  bool ok = false;
  unsigned witness_i = 0;
};

Cond1Result cond1_p3(unsigned d);
std::vector<unsigned> scan_cond1_p3(unsigned dmax);

// The p = 2 counterpart thresholds the 2-adic valuations e_i of those
// coefficients. Valuations are computed mod 16 and capped at 3 since
// nothing downstream distinguishes higher values. Three predicates:
//   as_stated  - threshold keyed on d mod 8 (1 for d = 3,7; 2 for
//                d = 2,4,5,6; 3 for d = 0,1),
//   uniform3   - valuation >= 3 everywhere,
//   decisive4  - min(min_i e_i, congruence case exponent of d) >= 2, the
//                weights where the congruence argument certifies a
//                nonvanishing coefficient modulo at least 4.
enum class P2Mode { as_stated, uniform3, decisive4 };

struct Cond1P2Result {
  bool ok = false;
  unsigned min_valuation = 3;  // min over i of the capped valuations
  unsigned witness_i = 0;      // first i below threshold when ok is false
};

Cond1P2Result cond1_p2(unsigned d, P2Mode mode);
std::vector<unsigned> scan_cond1_p2(unsigned dmax, P2Mode mode);

unsigned p2_threshold(unsigned d);
// Modulus exponent (so modulus 2^value) of the congruence n b(n,e) ==
// sigma(n) at power index e: 3 for e = 0,1,6 mod 8; 2 for e = 2,4,5;
// 1 for e = 3,7.
unsigned congruence_case_exponent(unsigned e);

// Condition on n: nonvanishing of sigma(n) on the relevant side.
// prime_side 3 requires 3 coprime to n; prime_side 2 requires n odd and
// consults e (1 -> sigma odd, 2 -> nonzero mod 4, >=3 -> nonzero mod 8).
bool cond2(const arith::FactoredInt& n, unsigned prime_side, unsigned e);

struct MaedaCertificate {
  unsigned d = 0;
  std::uint64_t n = 0;
  unsigned prime_side = 0;
  bool condition1 = false;
  unsigned cond1_witness_i = 0;
  unsigned min_valuation = 0;  // side 2 only
  bool condition2 = false;
  std::uint64_t decisive_modulus = 0;
  std::uint64_t nonvanishing_value = 0;  // residue of A(dn, Delta^d)
  std::vector<std::string> chain;
  bool verdict = false;
};

// Certifies that T_{dn} on the weight-12d cusp space has irreducible
// characteristic polynomial with full symmetric Galois group, conditional
// on the results cited in `chain`. Requires d, n >= 2 coprime, d <= 1000,
// and the side coprimality. On side 2 the argument reaches modulus
// 2^m with m = min(min_i e_i, case exponent of d); condition 1 is m >= 1
// and condition 2 is consulted at exponent m. The decisive residue is the
// q^{dn} coefficient of Delta^d in that modulus (3 on side 3).
MaedaCertificate maeda_certificate(unsigned d, std::uint64_t n, unsigned prime_side);

struct CongruenceFailure {
  std::uint64_t n = 0;
  unsigned e = 0;  // 0 for the tau family
  std::uint64_t lhs = 0, rhs = 0, modulus = 0;
};

struct CongruenceReport {
  std::string family;
  std::string range;
  std::uint64_t checked = 0;
  std::vector<CongruenceFailure> failures;
  bool pass() const { return failures.empty(); }
};

// n tau(n) == sigma(n) mod 8 or 16 over odd n, mod 3 over n coprime to 3.
CongruenceReport ramanujan_scan(std::uint64_t nmax, unsigned modulus);

// n b(n,e) == sigma(n) in the modulus keyed on e mod 8 (odd n) and mod 3
// (n coprime to 3), for all 1 <= e <= emax, 1 <= n <= nmax.
CongruenceReport b_congruence_scan(unsigned emax, std::uint64_t nmax);

// Recomputes the decisive residue of a certificate from scratch (fresh
// series, no shared power cache) along the incremental-power route.
std::uint64_t recompute_nonvanishing(const MaedaCertificate& cert);

}  // namespace heckelab::maeda
