#pragma once

#include <cstdint>
#include <vector>

#include "heckelab/qseries.hpp"

namespace heckelab::modforms {

using qseries::Coeff;
using qseries::CoeffRing;
using qseries::QSeries;

// A level-1 form identified with its q-expansion. Weight is even.
struct ModularForm {
  unsigned weight;
  QSeries series;

  ModularForm(unsigned w, QSeries s) : weight(w), series(std::move(s)) {
    if (w % 2 != 0) throw error("ModularForm: weight must be even");
  }
};

// Normalized Eisenstein generators: c4 = 1 + 240*sum sigma_3(n) q^n (weight 4),
// c6 = 1 - 504*sum sigma_5(n) q^n (weight 6), chosen so (c4^3 - c6^2)/1728
// is the discriminant form.
ModularForm c4(std::size_t precision, CoeffRing ring = CoeffRing::integers());
ModularForm c6(std::size_t precision, CoeffRing ring = CoeffRing::integers());

// Discriminant form q * prod (1-q^n)^24, weight 12, built from the cube
// identity prod (1-q^n)^3 = sum (-1)^k (2k+1) q^{k(k+1)/2} applied eight
// times against a dense accumulator. Integer arithmetic throughout.
ModularForm delta(std::size_t precision, CoeffRing ring = CoeffRing::integers());

// Delta^i, served from a per-ring cache of incrementally computed powers.
ModularForm delta_power(unsigned i, std::size_t precision, CoeffRing ring = CoeffRing::integers());

// Coefficient of q^n in Delta, from a growing cached expansion.
Int tau(std::uint64_t n);
// tau(0..nmax) as a dense table (index n).
std::vector<Int> tau_table(std::uint64_t nmax);

// The weight-12d basis [Delta^d, c4^3 Delta^{d-1}, ..., c4^{3d}], returned
// with index = d - (Delta exponent); the form with Delta exponent i has
// q-expansion q^i + O(q^{i+1}).
std::vector<ModularForm> basis_b(unsigned d, std::size_t precision,
                                 CoeffRing ring = CoeffRing::integers());

// Coefficients of f against basis_b(d) by forward substitution on the
// unitriangular leading terms; index i = coefficient of c4^{3(d-i)} Delta^i.
// Valid over any ring since the leading coefficients are 1.
std::vector<Coeff> decompose(const ModularForm& f, unsigned d);

// Rebuild sum coeffs[i] * c4^{3(d-i)} Delta^i at the given precision.
ModularForm reassemble(const std::vector<Int>& coeffs, unsigned d, std::size_t precision,
                       CoeffRing ring = CoeffRing::integers());

// Scale every coefficient by k^weight (the weight doubles as the power of
// the line bundle the form is a section of). k = +-1 fixes any even weight.
ModularForm adams_scale(const ModularForm& f, long k);

}  // namespace heckelab::modforms
