#include "heckelab/modforms.hpp"

#include <map>
#include <mutex>

namespace heckelab::modforms {

using qseries::RingKind;

namespace {

// sigma_k(1..N-1) by divisor sieve.
std::vector<Int> sigma_table(unsigned k, std::size_t n) {
  std::vector<Int> table(n, Int(0));
  for (std::size_t d = 1; d < n; ++d) {
    Int dk = pow_int(Int(static_cast<unsigned long>(d)), k);
    for (std::size_t m = d; m < n; m += d) table[m] += dk;
  }
  return table;
}

ModularForm eisenstein(unsigned weight, unsigned sigma_exp, long scale, std::size_t n,
                       const CoeffRing& ring) {
  if (n == 0) throw error("eisenstein: precision must be positive");
  std::vector<Int> coeffs(n, Int(0));
  coeffs[0] = 1;
  std::vector<Int> sig = sigma_table(sigma_exp, n);
  for (std::size_t i = 1; i < n; ++i) coeffs[i] = scale * sig[i];
  return ModularForm(weight, QSeries::from_ints(ring, coeffs));
}

// prod (1-q^n)^3 as a sparse polynomial: (-1)^k (2k+1) q^{k(k+1)/2}.
std::vector<std::pair<std::size_t, long>> eta_cube_terms(std::size_t n) {
  std::vector<std::pair<std::size_t, long>> terms;
  for (std::size_t k = 0;; ++k) {
    std::size_t deg = k * (k + 1) / 2;
    if (deg >= n) break;
    long c = static_cast<long>(2 * k + 1);
    terms.emplace_back(deg, k % 2 == 0 ? c : -c);
  }
  return terms;
}

std::vector<Int> mul_sparse_bigint(const std::vector<Int>& acc,
                                   const std::vector<std::pair<std::size_t, long>>& terms,
                                   std::size_t n) {
  std::vector<Int> out(n, Int(0));
  parallel_for_ranges(0, n, default_jobs(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      for (auto [deg, c] : terms) {
        if (deg > k) break;  // terms are degree-sorted
        if (c > 0)
          mpz_addmul_ui(out[k].get_mpz_t(), acc[k - deg].get_mpz_t(), static_cast<unsigned long>(c));
        else
          mpz_submul_ui(out[k].get_mpz_t(), acc[k - deg].get_mpz_t(), static_cast<unsigned long>(-c));
      }
    }
  });
  return out;
}

std::vector<std::uint64_t> mul_sparse_mod(const std::vector<std::uint64_t>& acc,
                                          const std::vector<std::pair<std::size_t, long>>& terms,
                                          std::size_t n, std::uint64_t m) {
  std::vector<std::pair<std::size_t, std::uint64_t>> mod_terms;
  mod_terms.reserve(terms.size());
  for (auto [deg, c] : terms) {
    std::uint64_t cm = c >= 0 ? static_cast<std::uint64_t>(c) % m
                              : (m - static_cast<std::uint64_t>(-c) % m) % m;
    mod_terms.emplace_back(deg, cm);
  }
  std::vector<std::uint64_t> out(n, 0);
  parallel_for_ranges(0, n, default_jobs(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      std::uint64_t acc_k = 0;
      for (auto [deg, cm] : mod_terms) {
        if (deg > k) break;
        acc_k += mulmod_u64(cm, acc[k - deg], m);
        if (acc_k >= m) acc_k -= m;
      }
      out[k] = acc_k;
    }
  });
  return out;
}

QSeries eta24(std::size_t n, const CoeffRing& ring) {
  auto terms = eta_cube_terms(n);
  if (ring.kind == RingKind::mod) {
    std::vector<std::uint64_t> acc(n, 0);
    acc[0] = 1 % ring.modulus;
    for (int rep = 0; rep < 8; ++rep) acc = mul_sparse_mod(acc, terms, n, ring.modulus);
    return QSeries::from_residues(ring.modulus, std::move(acc));
  }
  std::vector<Int> acc(n, Int(0));
  acc[0] = 1;
  for (int rep = 0; rep < 8; ++rep) acc = mul_sparse_bigint(acc, terms, n);
  return QSeries::from_ints(ring, acc);
}

}  // namespace

ModularForm c4(std::size_t precision, CoeffRing ring) { return eisenstein(4, 3, 240, precision, ring); }

ModularForm c6(std::size_t precision, CoeffRing ring) { return eisenstein(6, 5, -504, precision, ring); }

ModularForm delta(std::size_t precision, CoeffRing ring) {
  return ModularForm(12, eta24(precision, ring).shift(1));
}

namespace {

struct PowerCache {
  std::size_t precision = 0;
  std::vector<QSeries> powers;  // powers[i] = Delta^i; powers[0] unused
};

std::mutex g_delta_mutex;
std::map<std::string, PowerCache> g_delta_cache;

}  // namespace

ModularForm delta_power(unsigned i, std::size_t precision, CoeffRing ring) {
  if (i == 0) throw error("delta_power: exponent must be >= 1");
  std::lock_guard<std::mutex> lock(g_delta_mutex);
  PowerCache& cache = g_delta_cache[ring.to_string()];
  if (cache.precision < precision) {
    // grow geometrically so scans that ratchet precision do not recompute
    // the whole ladder every call
    std::size_t target = std::max(precision, cache.precision * 2);
    std::vector<QSeries> fresh;
    fresh.push_back(QSeries(ring, target));  // placeholder at index 0
    fresh.push_back(delta(target, ring).series);
    cache.precision = target;
    cache.powers = std::move(fresh);
  }
  while (cache.powers.size() <= i)
    cache.powers.push_back(cache.powers.back().mul(cache.powers[1]));
  QSeries s = cache.powers[i].truncate(precision);
  return ModularForm(12 * i, std::move(s));
}

namespace {

std::mutex g_tau_mutex;
std::vector<Int> g_tau;  // g_tau[n] = coefficient of q^n in Delta

void ensure_tau(std::uint64_t n) {
  if (g_tau.size() > n) return;
  std::size_t target = std::max<std::size_t>(n + 1, std::max<std::size_t>(g_tau.size() * 2, 128));
  ModularForm d = delta(target, CoeffRing::integers());
  g_tau = d.series.zcoeffs();
}

}  // namespace

Int tau(std::uint64_t n) {
  if (n == 0) throw error("tau: n must be positive");
  std::lock_guard<std::mutex> lock(g_tau_mutex);
  ensure_tau(n);
  return g_tau[n];
}

std::vector<Int> tau_table(std::uint64_t nmax) {
  std::lock_guard<std::mutex> lock(g_tau_mutex);
  ensure_tau(nmax);
  return std::vector<Int>(g_tau.begin(), g_tau.begin() + nmax + 1);
}

std::vector<ModularForm> basis_b(unsigned d, std::size_t precision, CoeffRing ring) {
  if (d == 0) throw error("basis_b: d must be >= 1");
  if (precision < d + 1)
    throw precision_error("basis_b: precision " + std::to_string(precision) +
                              " too small for d = " + std::to_string(d),
                          d + 1);
  QSeries p = c4(precision, ring).series.pow(3);
  QSeries dl = delta(precision, ring).series;
  std::vector<QSeries> dpow, ppow;
  dpow.push_back(QSeries::constant(ring, 1, precision));
  ppow.push_back(QSeries::constant(ring, 1, precision));
  for (unsigned i = 1; i <= d; ++i) {
    dpow.push_back(dpow.back().mul(dl));
    ppow.push_back(ppow.back().mul(p));
  }
  std::vector<ModularForm> out;
  out.reserve(d + 1);
  for (unsigned idx = 0; idx <= d; ++idx) {
    unsigned i = d - idx;  // Delta exponent
    out.emplace_back(12 * d, dpow[i].mul(ppow[d - i]));
  }
  return out;
}

std::vector<Coeff> decompose(const ModularForm& f, unsigned d) {
  if (f.weight != 12 * d)
    throw error("decompose: form has weight " + std::to_string(f.weight) + ", expected " +
                std::to_string(12 * d));
  if (f.series.precision() < d + 1)
    throw precision_error("decompose: need precision >= " + std::to_string(d + 1), d + 1);

  const CoeffRing& ring = f.series.ring();
  std::vector<ModularForm> basis = basis_b(d, d + 1, ring);
  QSeries work = f.series.truncate(d + 1);
  std::vector<Coeff> coeffs(d + 1);

  // The basis form with Delta exponent i starts q^i + O(q^{i+1}), so the
  // leading coefficients form a unit upper-triangular system.
  for (unsigned i = 0; i <= d; ++i) {
    Coeff c = work.at(i);
    coeffs[i] = c;
    if (qseries::coeff_is_zero(c)) continue;
    const QSeries& b = basis[d - i].series;
    switch (ring.kind) {
      case RingKind::bigint: {
        const Int& ci = std::get<Int>(c);
        for (unsigned j = i; j <= d; ++j) work.set(j, Int(work.zat(j) - ci * b.zat(j)));
        break;
      }
      case RingKind::rational: {
        const Rat& ci = std::get<Rat>(c);
        for (unsigned j = i; j <= d; ++j) {
          Rat v = work.qat(j) - ci * b.qat(j);
          work.set(j, v);
        }
        break;
      }
      case RingKind::mod: {
        std::uint64_t m = ring.modulus;
        std::uint64_t ci = std::get<std::uint64_t>(c);
        for (unsigned j = i; j <= d; ++j) {
          std::uint64_t sub = mulmod_u64(ci, b.mat(j), m);
          std::uint64_t cur = work.mat(j);
          work.set(j, cur >= sub ? cur - sub : cur + m - sub);
        }
        break;
      }
    }
  }
  return coeffs;
}

ModularForm reassemble(const std::vector<Int>& coeffs, unsigned d, std::size_t precision,
                       CoeffRing ring) {
  if (coeffs.size() != d + 1) throw error("reassemble: need d+1 coefficients");
  std::vector<ModularForm> basis = basis_b(d, precision, ring);
  QSeries acc(ring, precision);
  for (unsigned i = 0; i <= d; ++i)
    acc = acc.add(basis[d - i].series.scalar_mul(coeffs[i]));
  return ModularForm(12 * d, std::move(acc));
}

ModularForm adams_scale(const ModularForm& f, long k) {
  Int scale = pow_int(Int(k), f.weight);
  return ModularForm(f.weight, f.series.scalar_mul(scale));
}

}  // namespace heckelab::modforms
