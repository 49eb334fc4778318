#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "heckelab/util.hpp"

namespace heckelab::qseries {

enum class RingKind { bigint, rational, mod };

struct CoeffRing {
  RingKind kind = RingKind::bigint;
  std::uint64_t modulus = 0;  // meaningful only for RingKind::mod

  static CoeffRing integers() { return {RingKind::bigint, 0}; }
  static CoeffRing rationals() { return {RingKind::rational, 0}; }
  static CoeffRing mod(std::uint64_t m);

  bool operator==(const CoeffRing&) const = default;
  std::string to_string() const;
};

// A single coefficient, in whichever ring the series lives in.
using Coeff = std::variant<Int, Rat, std::uint64_t>;

std::string coeff_to_string(const Coeff& c);
bool coeff_is_zero(const Coeff& c);

// Truncated formal power series: coefficients of q^0 .. q^{precision-1}
// are stored; everything above is unknown (not zero). Binary operations
// min-combine precision and never extend it. ModM coefficients are kept
// in [0, M); rationals are kept canonical.
class QSeries {
 public:
  QSeries(CoeffRing ring, std::size_t precision);  // zero series

  static QSeries from_ints(CoeffRing ring, const std::vector<Int>& coeffs);
  static QSeries from_residues(std::uint64_t m, std::vector<std::uint64_t> coeffs);
  static QSeries constant(CoeffRing ring, const Int& value, std::size_t precision);

  const CoeffRing& ring() const { return ring_; }
  std::size_t precision() const { return precision_; }

  Coeff at(std::size_t i) const;
  const Int& zat(std::size_t i) const;
  const Rat& qat(std::size_t i) const;
  std::uint64_t mat(std::size_t i) const;

  void set(std::size_t i, const Int& v);
  void set(std::size_t i, const Rat& v);
  void set(std::size_t i, std::uint64_t v);

  QSeries add(const QSeries& other) const;
  QSeries sub(const QSeries& other) const;
  QSeries negate() const;
  QSeries mul(const QSeries& other) const;
  QSeries pow(unsigned long k) const;  // repeated squaring; pow(a,0) = 1
  QSeries truncate(std::size_t n) const;
  QSeries shift(std::size_t k) const;  // multiply by q^k, same precision

  QSeries scalar_mul(const Int& c) const;
  // Exact coefficientwise quotient over the integer ring; reports the
  // index of the first non-divisible coefficient.
  QSeries scalar_div_exact(const Int& c) const;
  QSeries reduce_mod(std::uint64_t m) const;  // bigint ring -> mod ring

  bool is_zero() const;
  bool operator==(const QSeries& other) const;
  bool operator!=(const QSeries& other) const { return !(*this == other); }

  std::string to_string(std::size_t max_terms = 12) const;

  const std::vector<Int>& zcoeffs() const { return zc_; }
  const std::vector<std::uint64_t>& mcoeffs() const { return mc_; }

 private:
  void check_same_ring(const QSeries& other) const;

  CoeffRing ring_;
  std::size_t precision_ = 0;
  std::vector<Int> zc_;
  std::vector<Rat> qc_;
  std::vector<std::uint64_t> mc_;
};

}  // namespace heckelab::qseries
