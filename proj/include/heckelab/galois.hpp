#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heckelab/util.hpp"

namespace heckelab::galois {

// Integer polynomial, coefficients ascending by degree, leading nonzero.
struct IntPolynomial {
  std::vector<Int> coeffs;

  unsigned degree() const { return coeffs.empty() ? 0 : static_cast<unsigned>(coeffs.size() - 1); }
  const Int& leading() const { return coeffs.back(); }
  bool monic() const { return !coeffs.empty() && coeffs.back() == 1; }
  Int eval(const Int& x) const;
  std::string to_string() const;
  bool operator==(const IntPolynomial&) const = default;
};

using IntMatrix = std::vector<std::vector<Int>>;

// Matrix of T_n on the weight-12d cusp space in the basis
// [Delta^d, c4^3 Delta^{d-1}, ..., c4^{3d-3} Delta]; entries are integers
// because the basis decomposition is unit-triangular over Z.
IntMatrix hecke_matrix(std::uint64_t n, unsigned d);

// det(XI - A), exact, by Faddeev-LeVerrier (all divisions exact over Z).
IntPolynomial char_poly(const IntMatrix& a);

// Distinct-degree factorization mod p. When f mod p is squarefree,
// `degrees` is the multiset of irreducible factor degrees (the Frobenius
// cycle type); otherwise squarefree == false and degrees is empty.
struct DdfResult {
  bool squarefree = false;
  std::vector<unsigned> degrees;  // sorted ascending
};

DdfResult ddf_degrees(const IntPolynomial& f, std::uint64_t p);

enum class CertStatus { certified, refuted, inconclusive };

struct Verdict {
  CertStatus status = CertStatus::inconclusive;
  // (prime, factor-degree multiset) evidence; role strings in notes.
  std::vector<std::pair<std::uint64_t, std::vector<unsigned>>> witnesses;
  unsigned budget_used = 0;
  std::vector<std::string> notes;
};

std::string cert_status_name(CertStatus s);

// Sound-but-incomplete certification that f is irreducible over Q with
// full symmetric Galois group, from Frobenius cycle types sampled at
// consecutive primes from 5 upward (primes dividing disc(f) are skipped
// via the squarefree test):
//   - irreducibility: one prime where f mod p stays irreducible,
//   - a transposition: a cycle type whose only even part is a single 2
//     (odd-length cycles die in an odd power, leaving the 2-cycle),
//   - primitivity: a cycle type containing a prime part q > D/2 (the
//     other parts are < q, so a coprime power isolates the q-cycle, and a
//     transitive group with such a cycle is primitive),
// and a primitive group containing a transposition is the full symmetric
// group. D <= 2 needs only irreducibility; D = 3 accepts a non-square
// discriminant in place of the cycle evidence. Refutations come from
// small rational roots, square discriminants (D = 2, 3), or a shattered
// degree-D certificate never appearing while a root does. Inconclusive
// is a legitimate outcome and is never upgraded heuristically.
Verdict certify_maeda(const IntPolynomial& f, unsigned prime_budget = 200);

}  // namespace heckelab::galois
