#include "heckelab/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace heckelab::qseries {

CoeffRing CoeffRing::mod(std::uint64_t m) {
  if (m < 2) throw error("CoeffRing::mod: modulus must be >= 2");
  if (m > (1ull << 63)) throw error("CoeffRing::mod: modulus too large for machine residues");
  return {RingKind::mod, m};
}

std::string CoeffRing::to_string() const {
  switch (kind) {
    case RingKind::bigint: return "Z";
    case RingKind::rational: return "Q";
    case RingKind::mod: return "Z/" + std::to_string(modulus);
  }
  return "?";
}

std::string coeff_to_string(const Coeff& c) {
  if (std::holds_alternative<Int>(c)) return std::get<Int>(c).get_str();
  if (std::holds_alternative<Rat>(c)) return std::get<Rat>(c).get_str();
  return std::to_string(std::get<std::uint64_t>(c));
}

bool coeff_is_zero(const Coeff& c) {
  if (std::holds_alternative<Int>(c)) return std::get<Int>(c) == 0;
  if (std::holds_alternative<Rat>(c)) return std::get<Rat>(c) == 0;
  return std::get<std::uint64_t>(c) == 0;
}

QSeries::QSeries(CoeffRing ring, std::size_t precision) : ring_(ring), precision_(precision) {
  if (precision == 0) throw error("QSeries: precision must be positive");
  switch (ring_.kind) {
    case RingKind::bigint: zc_.assign(precision, Int(0)); break;
    case RingKind::rational: qc_.assign(precision, Rat(0)); break;
    case RingKind::mod: mc_.assign(precision, 0); break;
  }
}

QSeries QSeries::from_ints(CoeffRing ring, const std::vector<Int>& coeffs) {
  QSeries s(ring, coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) s.set(i, coeffs[i]);
  return s;
}

QSeries QSeries::from_residues(std::uint64_t m, std::vector<std::uint64_t> coeffs) {
  QSeries s(CoeffRing::mod(m), coeffs.size());
  for (auto& c : coeffs) c %= m;
  s.mc_ = std::move(coeffs);
  return s;
}

QSeries QSeries::constant(CoeffRing ring, const Int& value, std::size_t precision) {
  QSeries s(ring, precision);
  s.set(0, value);
  return s;
}

Coeff QSeries::at(std::size_t i) const {
  if (i >= precision_) throw error("QSeries::at: index beyond precision");
  switch (ring_.kind) {
    case RingKind::bigint: return zc_[i];
    case RingKind::rational: return qc_[i];
    case RingKind::mod: return mc_[i];
  }
  throw error("unreachable");
}

const Int& QSeries::zat(std::size_t i) const {
  if (ring_.kind != RingKind::bigint) throw ring_mismatch_error("zat: integer ring required");
  if (i >= precision_) throw error("QSeries::zat: index beyond precision");
  return zc_[i];
}

const Rat& QSeries::qat(std::size_t i) const {
  if (ring_.kind != RingKind::rational) throw ring_mismatch_error("qat: rational ring required");
  if (i >= precision_) throw error("QSeries::qat: index beyond precision");
  return qc_[i];
}

std::uint64_t QSeries::mat(std::size_t i) const {
  if (ring_.kind != RingKind::mod) throw ring_mismatch_error("mat: residue ring required");
  if (i >= precision_) throw error("QSeries::mat: index beyond precision");
  return mc_[i];
}

void QSeries::set(std::size_t i, const Int& v) {
  if (i >= precision_) throw error("QSeries::set: index beyond precision");
  switch (ring_.kind) {
    case RingKind::bigint: zc_[i] = v; return;
    case RingKind::rational: qc_[i] = Rat(v); return;
    case RingKind::mod: {
      Int r = v % static_cast<unsigned long>(ring_.modulus);
      if (r < 0) r += static_cast<unsigned long>(ring_.modulus);
      mc_[i] = r.get_ui();
      return;
    }
  }
}

void QSeries::set(std::size_t i, const Rat& v) {
  if (ring_.kind != RingKind::rational) throw ring_mismatch_error("set: rational ring required");
  if (i >= precision_) throw error("QSeries::set: index beyond precision");
  qc_[i] = v;
  qc_[i].canonicalize();
}

void QSeries::set(std::size_t i, std::uint64_t v) {
  if (ring_.kind != RingKind::mod) throw ring_mismatch_error("set: residue ring required");
  if (i >= precision_) throw error("QSeries::set: index beyond precision");
  mc_[i] = v % ring_.modulus;
}

void QSeries::check_same_ring(const QSeries& other) const {
  if (!(ring_ == other.ring_))
    throw ring_mismatch_error("ring mismatch: " + ring_.to_string() + " vs " + other.ring_.to_string());
}

QSeries QSeries::add(const QSeries& other) const {
  check_same_ring(other);
  std::size_t n = std::min(precision_, other.precision_);
  QSeries out(ring_, n);
  switch (ring_.kind) {
    case RingKind::bigint:
      for (std::size_t i = 0; i < n; ++i) out.zc_[i] = zc_[i] + other.zc_[i];
      break;
    case RingKind::rational:
      for (std::size_t i = 0; i < n; ++i) out.qc_[i] = qc_[i] + other.qc_[i];
      break;
    case RingKind::mod: {
      std::uint64_t m = ring_.modulus;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t s = mc_[i] + other.mc_[i];  // both < 2^63, no overflow
        out.mc_[i] = s >= m ? s - m : s;
      }
      break;
    }
  }
  return out;
}

QSeries QSeries::sub(const QSeries& other) const { return add(other.negate().truncate(std::min(precision_, other.precision_))); }

QSeries QSeries::negate() const {
  QSeries out(ring_, precision_);
  switch (ring_.kind) {
    case RingKind::bigint:
      for (std::size_t i = 0; i < precision_; ++i) out.zc_[i] = -zc_[i];
      break;
    case RingKind::rational:
      for (std::size_t i = 0; i < precision_; ++i) out.qc_[i] = -qc_[i];
      break;
    case RingKind::mod:
      for (std::size_t i = 0; i < precision_; ++i) out.mc_[i] = mc_[i] == 0 ? 0 : ring_.modulus - mc_[i];
      break;
  }
  return out;
}

namespace {

void convolve_bigint(const std::vector<Int>& a, const std::vector<Int>& b, std::vector<Int>& out,
                     std::size_t n, unsigned jobs) {
  if (jobs <= 1) {
    for (std::size_t i = 0; i < std::min(a.size(), n); ++i) {
      if (a[i] == 0) continue;
      std::size_t jmax = std::min(b.size(), n - i);
      for (std::size_t j = 0; j < jmax; ++j)
        mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    return;
  }
  // partition over output coefficients; each is an independent sum
  parallel_for_ranges(0, n, jobs, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      std::size_t imin = k + 1 >= b.size() ? k + 1 - b.size() : 0;
      std::size_t imax = std::min(k, a.size() - 1);
      for (std::size_t i = imin; i <= imax; ++i)
        mpz_addmul(out[k].get_mpz_t(), a[i].get_mpz_t(), b[k - i].get_mpz_t());
    }
  });
}

// Schoolbook convolution with machine-word accumulation. For m < 2^61 each
// product is < 2^122, so 64 products fit an unsigned 128-bit accumulator
// between reductions.
void convolve_mod(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                  std::vector<std::uint64_t>& out, std::size_t n, std::uint64_t m, unsigned jobs) {
  bool blocked = m < (1ull << 61);
  parallel_for_ranges(0, n, jobs, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      std::size_t imin = k + 1 >= b.size() ? k + 1 - b.size() : 0;
      std::size_t imax = std::min(k, a.size() - 1);
      if (blocked) {
        unsigned __int128 acc = 0;
        std::size_t count = 0;
        for (std::size_t i = imin; i <= imax; ++i) {
          acc += static_cast<unsigned __int128>(a[i]) * b[k - i];
          if (++count == 64) {
            acc %= m;
            count = 0;
          }
        }
        out[k] = static_cast<std::uint64_t>(acc % m);
      } else {
        std::uint64_t acc = 0;
        for (std::size_t i = imin; i <= imax; ++i) {
          acc += mulmod_u64(a[i], b[k - i], m);
          if (acc >= m) acc -= m;
        }
        out[k] = acc;
      }
    }
  });
}

}  // namespace

QSeries QSeries::mul(const QSeries& other) const {
  check_same_ring(other);
  std::size_t n = std::min(precision_, other.precision_);
  QSeries out(ring_, n);
  switch (ring_.kind) {
    case RingKind::bigint:
      convolve_bigint(zc_, other.zc_, out.zc_, n, default_jobs());
      break;
    case RingKind::rational:
      for (std::size_t i = 0; i < n; ++i) {
        if (qc_[i] == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) out.qc_[i + j] += qc_[i] * other.qc_[j];
      }
      break;
    case RingKind::mod:
      convolve_mod(mc_, other.mc_, out.mc_, n, ring_.modulus, default_jobs());
      break;
  }
  return out;
}

QSeries QSeries::pow(unsigned long k) const {
  QSeries result = QSeries::constant(ring_, 1, precision_);
  if (k == 0) return result;
  QSeries base = *this;
  while (true) {
    if (k & 1) result = result.mul(base);
    k >>= 1;
    if (k == 0) break;
    base = base.mul(base);
  }
  return result;
}

QSeries QSeries::truncate(std::size_t n) const {
  if (n == 0 || n > precision_) throw error("QSeries::truncate: invalid precision");
  if (n == precision_) return *this;
  QSeries out(ring_, n);
  switch (ring_.kind) {
    case RingKind::bigint: out.zc_.assign(zc_.begin(), zc_.begin() + n); break;
    case RingKind::rational: out.qc_.assign(qc_.begin(), qc_.begin() + n); break;
    case RingKind::mod: out.mc_.assign(mc_.begin(), mc_.begin() + n); break;
  }
  return out;
}

QSeries QSeries::shift(std::size_t k) const {
  QSeries out(ring_, precision_);
  for (std::size_t i = 0; i + k < precision_; ++i) {
    switch (ring_.kind) {
      case RingKind::bigint: out.zc_[i + k] = zc_[i]; break;
      case RingKind::rational: out.qc_[i + k] = qc_[i]; break;
      case RingKind::mod: out.mc_[i + k] = mc_[i]; break;
    }
  }
  return out;
}

QSeries QSeries::scalar_mul(const Int& c) const {
  QSeries out(ring_, precision_);
  switch (ring_.kind) {
    case RingKind::bigint:
      for (std::size_t i = 0; i < precision_; ++i) out.zc_[i] = zc_[i] * c;
      break;
    case RingKind::rational:
      for (std::size_t i = 0; i < precision_; ++i) out.qc_[i] = qc_[i] * c;
      break;
    case RingKind::mod: {
      Int r = c % static_cast<unsigned long>(ring_.modulus);
      if (r < 0) r += static_cast<unsigned long>(ring_.modulus);
      std::uint64_t cu = r.get_ui();
      for (std::size_t i = 0; i < precision_; ++i) out.mc_[i] = mulmod_u64(mc_[i], cu, ring_.modulus);
      break;
    }
  }
  return out;
}

QSeries QSeries::scalar_div_exact(const Int& c) const {
  if (ring_.kind != RingKind::bigint)
    throw ring_mismatch_error("scalar_div_exact: integer ring required");
  if (c == 0) throw error("scalar_div_exact: division by zero");
  QSeries out(ring_, precision_);
  for (std::size_t i = 0; i < precision_; ++i) {
    if (!mpz_divisible_p(zc_[i].get_mpz_t(), c.get_mpz_t()))
      throw divisibility_error(
          "scalar_div_exact: coefficient at index " + std::to_string(i) + " not divisible by " + c.get_str(), i);
    mpz_divexact(out.zc_[i].get_mpz_t(), zc_[i].get_mpz_t(), c.get_mpz_t());
  }
  return out;
}

QSeries QSeries::reduce_mod(std::uint64_t m) const {
  if (ring_.kind != RingKind::bigint) throw ring_mismatch_error("reduce_mod: integer ring required");
  QSeries out(CoeffRing::mod(m), precision_);
  for (std::size_t i = 0; i < precision_; ++i) {
    Int r = zc_[i] % static_cast<unsigned long>(m);
    if (r < 0) r += static_cast<unsigned long>(m);
    out.mc_[i] = r.get_ui();
  }
  return out;
}

bool QSeries::is_zero() const {
  switch (ring_.kind) {
    case RingKind::bigint:
      return std::all_of(zc_.begin(), zc_.end(), [](const Int& v) { return v == 0; });
    case RingKind::rational:
      return std::all_of(qc_.begin(), qc_.end(), [](const Rat& v) { return v == 0; });
    case RingKind::mod:
      return std::all_of(mc_.begin(), mc_.end(), [](std::uint64_t v) { return v == 0; });
  }
  return true;
}

bool QSeries::operator==(const QSeries& other) const {
  if (!(ring_ == other.ring_) || precision_ != other.precision_) return false;
  switch (ring_.kind) {
    case RingKind::bigint: return zc_ == other.zc_;
    case RingKind::rational: return qc_ == other.qc_;
    case RingKind::mod: return mc_ == other.mc_;
  }
  return false;
}

std::string QSeries::to_string(std::size_t max_terms) const {
  std::ostringstream os;
  bool first = true;
  std::size_t shown = 0;
  for (std::size_t i = 0; i < precision_ && shown < max_terms; ++i) {
    Coeff c = at(i);
    if (coeff_is_zero(c)) continue;
    std::string text = coeff_to_string(c);
    if (!first) {
      bool negative = !text.empty() && text[0] == '-';
      os << (negative ? " - " : " + ");
      if (negative) text = text.substr(1);
    }
    os << text;
    if (i > 0) os << "*q^" << i;
    first = false;
    ++shown;
  }
  if (first) os << "0";
  os << " + O(q^" << precision_ << ")";
  return os.str();
}

}  // namespace heckelab::qseries
