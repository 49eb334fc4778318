#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heckelab/modforms.hpp"

namespace heckelab::hecke {

using modforms::Coeff;
using modforms::CoeffRing;
using modforms::ModularForm;
using qseries::QSeries;

// T_n on q-expansions at weight k:
//   a_m(T_n f) = sum over e | gcd(m,n) of e^{k-1} a_{mn/e^2}(f),
// with gcd(0,n) = n, so a_0 picks up sigma_{k-1}(n) a_0(f).
//
// Reading a_m(T_n f) touches a_{mn}(f), so the input must carry precision
// at least n*(out_precision-1)+1; shorter inputs are rejected, never
// silently truncated. Weight 0 requires rational coefficients.
ModularForm hecke_apply(const ModularForm& f, std::uint64_t n, std::size_t out_precision);

std::size_t hecke_required_precision(std::uint64_t n, std::size_t out_precision);

struct CompositionMismatch {
  unsigned form_index;
  std::size_t coeff_index;
  std::string lhs, rhs;
};

struct CompositionReport {
  std::uint64_t m = 0, n = 0;
  unsigned weight = 0;
  std::size_t precision = 0;
  unsigned forms_checked = 0;
  std::vector<CompositionMismatch> mismatches;
  bool pass() const { return mismatches.empty(); }
};

// Checks T_m(T_n f) == sum over d | gcd(m,n) of d^{k-1} T_{mn/d^2} f on
// every form of basis_b(k/12), coefficientwise to the given precision.
CompositionReport composition_check(std::uint64_t m, std::uint64_t n, unsigned k, std::size_t precision);

// Eigenvalue of T_n on f, verified coefficientwise against every
// coefficient the input precision can reach; throws with a witness index
// if f is not proportional to T_n f.
Coeff eigenvalue(const ModularForm& f, std::uint64_t n);

// b(n, e) = Delta^e-coefficient of T_n(Delta^e) in the weight-12e basis.
// modulus 0 computes over the integers, otherwise in Z/modulus.
Coeff b_coefficient(std::uint64_t n, unsigned e, std::uint64_t modulus,
                    std::size_t coeff_budget = 50'000'000);

// Classical-to-stable normalization: multiply by n.
Int stable_normalize(const Int& value, std::uint64_t n);
Rat stable_normalize(const Rat& value, std::uint64_t n);
std::uint64_t stable_normalize(std::uint64_t value, std::uint64_t n, std::uint64_t modulus);

}  // namespace heckelab::hecke
