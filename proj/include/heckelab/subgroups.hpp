#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heckelab/util.hpp"

namespace heckelab::subgroups {

// Invariant-factor form of a finite abelian group: d1 | d2 | ... | dr,
// every factor >= 2, the trivial group being the empty list.
struct AbelianType {
  std::vector<std::uint64_t> invariant_factors;

  static AbelianType trivial() { return {}; }
  static AbelianType cyclic(std::uint64_t n);
  static AbelianType product(std::uint64_t a, std::uint64_t b);
  // Normalizes an arbitrary list of cyclic factor orders.
  static AbelianType from_factors(const std::vector<std::uint64_t>& factors);

  std::uint64_t order() const;
  std::string to_string() const;
  bool operator==(const AbelianType&) const = default;
  bool operator<(const AbelianType& other) const { return invariant_factors < other.invariant_factors; }
};

struct SubgroupRecord {
  AbelianType ambient;
  std::vector<std::vector<std::uint64_t>> generators;  // coordinates in the ambient factors
  AbelianType type;
  std::uint64_t order = 1;
};

inline constexpr std::uint64_t kDefaultCensusBound = 5000;

// Exhaustive subgroup census, each subgroup exactly once (canonicalized by
// its element set). Brute force, intended as an oracle at desk scale.
std::vector<SubgroupRecord> enumerate_subgroups(const AbelianType& g,
                                                std::uint64_t order_bound = kDefaultCensusBound);

std::uint64_t count_by_type(const AbelianType& g, const AbelianType& t,
                            std::uint64_t order_bound = kDefaultCensusBound);

// c_{m,n}(d,e): number of subgroups of C_e x C_{mn/e} of type C_d x C_{m/d},
// assuming d^2 | m and e^2 | mn. Computed prime by prime through the
// exponent-level sum, multiplicatively assembled.
Int c_formula(std::uint64_t m, std::uint64_t n, std::uint64_t d, std::uint64_t e);

// The prime-exponent count as a polynomial in the prime ell: entry [t] is
// the coefficient of ell^t in c_{ell^m, ell^n}(ell^d, ell^e).
using EllPoly = std::vector<long long>;
EllPoly c_primepower(unsigned m, unsigned n, unsigned d, unsigned e);
std::string ellpoly_to_string(const EllPoly& p);

struct PolyIdentityReport {
  std::uint64_t m = 0, n = 0;
  struct Mismatch {
    std::uint64_t degree;
    Int lhs, rhs;
  };
  std::vector<Mismatch> mismatches;
  bool pass() const { return mismatches.empty(); }
};

// Checks sum over (d,e) of c_{m,n}(d,e) X^e  ==  sum over b | gcd(m,n),
// a^2 | mn/b^2 of b X^{ab}, as exact integer polynomials.
PolyIdentityReport c_polynomial_identity(std::uint64_t m, std::uint64_t n);

struct CensusReport {
  std::uint64_t n = 0;
  std::uint64_t order_n_count = 0;      // subgroups of order n in C_n x C_n
  std::uint64_t sigma_n = 0;            // expected: order_n_count
  std::uint64_t cyclic_order_n_count = 0;
  std::uint64_t psi_n = 0;              // expected: cyclic_order_n_count
  bool sigma_identity = false;
  bool psi_identity = false;
  bool index_set_match = false;  // c_formula positivity vs the (d,e) index set
  bool pass() const { return sigma_identity && psi_identity && index_set_match; }
};

// Verifies the sigma(n)/psi(n) subgroup-count identities on C_n x C_n and
// that c_{n,n}(d,e) > 0 exactly on the index set d | e, (m | de or e | dn).
CensusReport census_identities(std::uint64_t n, std::uint64_t order_bound = kDefaultCensusBound);

}  // namespace heckelab::subgroups
