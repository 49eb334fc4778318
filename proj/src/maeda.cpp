#include "heckelab/maeda.hpp"

#include <algorithm>
#include <numeric>

#include "heckelab/hecke.hpp"
#include "heckelab/modforms.hpp"

namespace heckelab::maeda {

using modforms::CoeffRing;
using modforms::ModularForm;
using qseries::QSeries;

namespace {

constexpr unsigned kMaxD = 1000;

void check_d_range(unsigned d) {
  if (d < 2 || d > kMaxD)
    throw error("weight condition: d must lie in [2, " + std::to_string(kMaxD) + "]");
}

// capped 2-adic valuation from a residue mod 16: 0,1,2 exact, 3 = "at least 3"
unsigned capped_val16(std::uint64_t r) {
  if (r % 2 == 1) return 0;
  if (r % 4 == 2) return 1;
  if (r % 8 == 4) return 2;
  return 3;
}

std::vector<std::uint64_t> sigma_sieve(std::uint64_t nmax) {
  std::vector<std::uint64_t> sig(nmax + 1, 0);
  for (std::uint64_t d = 1; d <= nmax; ++d)
    for (std::uint64_t m = d; m <= nmax; m += d) sig[m] += d;
  return sig;
}

}  // namespace

unsigned p2_threshold(unsigned d) {
  switch (d % 8) {
    case 3: case 7: return 1;
    case 2: case 4: case 5: case 6: return 2;
    default: return 3;  // 0, 1
  }
}

unsigned congruence_case_exponent(unsigned e) {
  switch (e % 8) {
    case 0: case 1: case 6: return 3;
    case 2: case 4: case 5: return 2;
    default: return 1;  // 3, 7
  }
}

Cond1Result cond1_p3(unsigned d) {
  check_d_range(d);
  for (unsigned i = 1; i < d; ++i) {
    ModularForm p = modforms::delta_power(i, d + 1, CoeffRing::mod(3));
    if (p.series.mat(d) != 0) return {false, i};
  }
  return {true, 0};
}

std::vector<unsigned> scan_cond1_p3(unsigned dmax) {
  if (dmax > kMaxD) throw error("scan_cond1_p3: dmax must be <= " + std::to_string(kMaxD));
  std::vector<unsigned> out;
  if (dmax < 2) return out;
  std::vector<bool> passing(dmax + 1, true);
  for (unsigned i = 1; i + 1 <= dmax; ++i) {
    ModularForm p = modforms::delta_power(i, dmax + 1, CoeffRing::mod(3));
    for (unsigned d = i + 1; d <= dmax; ++d)
      if (p.series.mat(d) != 0) passing[d] = false;
  }
  for (unsigned d = 2; d <= dmax; ++d)
    if (passing[d]) out.push_back(d);
  return out;
}

namespace {

bool p2_mode_passes(P2Mode mode, unsigned d, unsigned min_valuation) {
  switch (mode) {
    case P2Mode::as_stated: return min_valuation >= p2_threshold(d);
    case P2Mode::uniform3: return min_valuation >= 3;
    case P2Mode::decisive4:
      return std::min(min_valuation, congruence_case_exponent(d)) >= 2;
  }
  return false;
}

unsigned p2_mode_witness_threshold(P2Mode mode, unsigned d) {
  switch (mode) {
    case P2Mode::as_stated: return p2_threshold(d);
    case P2Mode::uniform3: return 3;
    case P2Mode::decisive4: return 2;
  }
  return 3;
}

}  // namespace

Cond1P2Result cond1_p2(unsigned d, P2Mode mode) {
  check_d_range(d);
  unsigned threshold = p2_mode_witness_threshold(mode, d);
  Cond1P2Result result;
  result.min_valuation = 3;
  bool below = false;
  for (unsigned i = 1; i < d; ++i) {
    ModularForm p = modforms::delta_power(i, d + 1, CoeffRing::mod(16));
    unsigned v = capped_val16(p.series.mat(d));
    if (v < result.min_valuation) result.min_valuation = v;
    if (v < threshold && !below) {
      below = true;
      result.witness_i = i;
    }
  }
  result.ok = p2_mode_passes(mode, d, result.min_valuation);
  if (result.ok) result.witness_i = 0;
  return result;
}

std::vector<unsigned> scan_cond1_p2(unsigned dmax, P2Mode mode) {
  if (dmax > kMaxD) throw error("scan_cond1_p2: dmax must be <= " + std::to_string(kMaxD));
  std::vector<unsigned> out;
  if (dmax < 2) return out;
  std::vector<unsigned> min_val(dmax + 1, 3);
  for (unsigned i = 1; i + 1 <= dmax; ++i) {
    ModularForm p = modforms::delta_power(i, dmax + 1, CoeffRing::mod(16));
    for (unsigned d = i + 1; d <= dmax; ++d)
      min_val[d] = std::min(min_val[d], capped_val16(p.series.mat(d)));
  }
  for (unsigned d = 2; d <= dmax; ++d)
    if (p2_mode_passes(mode, d, min_val[d])) out.push_back(d);
  return out;
}

bool cond2(const arith::FactoredInt& n, unsigned prime_side, unsigned e) {
  if (prime_side == 3) {
    if (n.value % 3 == 0) throw error("cond2: side 3 requires 3 coprime to n");
    return arith::sigma_nonzero_mod3(n);
  }
  if (prime_side == 2) {
    if (n.value % 2 == 0) throw error("cond2: side 2 requires odd n");
    arith::SigmaMod2Class c = arith::sigma_mod2_class(n);
    if (e == 1) return c.nonzero_mod2;
    if (e == 2) return c.nonzero_mod4;
    if (e >= 3) return c.nonzero_mod8;
    throw error("cond2: side 2 needs e >= 1");
  }
  throw error("cond2: prime_side must be 2 or 3");
}

namespace {

std::uint64_t delta_power_coefficient_mod(unsigned d, std::uint64_t index, std::uint64_t modulus,
                                          bool incremental) {
  std::size_t precision = static_cast<std::size_t>(index) + 1;
  if (precision > 20'000'000) throw resource_error("delta power: precision budget exceeded");
  if (incremental) {
    // plain power ladder, independent of QSeries::pow
    QSeries acc = modforms::delta(precision, CoeffRing::mod(modulus)).series;
    QSeries base = acc;
    for (unsigned i = 1; i < d; ++i) acc = acc.mul(base);
    return acc.mat(index);
  }
  QSeries s = modforms::delta(precision, CoeffRing::mod(modulus)).series.pow(d);
  return s.mat(index);
}

}  // namespace

MaedaCertificate maeda_certificate(unsigned d, std::uint64_t n, unsigned prime_side) {
  std::vector<std::string> violations;
  if (d < 2) violations.push_back("d must be >= 2");
  if (d > kMaxD) violations.push_back("d must be <= " + std::to_string(kMaxD));
  if (n < 2) violations.push_back("n must be >= 2");
  if (d >= 2 && n >= 2 && std::gcd(static_cast<std::uint64_t>(d), n) != 1)
    violations.push_back("gcd(d, n) must be 1");
  if (prime_side == 3) {
    if (n % 3 == 0) violations.push_back("side 3 requires 3 coprime to n");
  } else if (prime_side == 2) {
    if (n % 2 == 0) violations.push_back("side 2 requires odd n");
  } else {
    violations.push_back("prime_side must be 2 or 3");
  }
  if (!violations.empty()) {
    std::string msg = "maeda_certificate:";
    for (const std::string& s : violations) msg += " [" + s + "]";
    throw error(msg);
  }

  MaedaCertificate cert;
  cert.d = d;
  cert.n = n;
  cert.prime_side = prime_side;
  cert.chain = {"THM-E", "AHLGREN-1.4", "GHITZA-MCANDREW-1.5"};

  arith::FactoredInt nf = arith::factorize(n);
  if (prime_side == 3) {
    Cond1Result c1 = cond1_p3(d);
    cert.condition1 = c1.ok;
    cert.cond1_witness_i = c1.witness_i;
    cert.decisive_modulus = 3;
    cert.condition2 = cond2(nf, 3, 0);
  } else {
    // the congruence reaches modulus 2^(case exponent of d) and the basis
    // argument reaches 2^(min valuation); the decisive modulus is the
    // weaker of the two, and the certificate needs it nontrivial
    unsigned min_val = 3;
    unsigned witness0 = 0;
    for (unsigned i = 1; i < d; ++i) {
      ModularForm p = modforms::delta_power(i, d + 1, CoeffRing::mod(16));
      unsigned v = capped_val16(p.series.mat(d));
      if (v < min_val) min_val = v;
      if (v == 0 && witness0 == 0) witness0 = i;
    }
    cert.min_valuation = min_val;
    unsigned m = std::min(min_val, congruence_case_exponent(d));
    cert.condition1 = m >= 1;
    cert.cond1_witness_i = cert.condition1 ? 0 : witness0;
    if (m == 0) m = 1;  // keep the reported modulus well-formed on failure
    cert.decisive_modulus = 1ull << m;
    cert.condition2 = cond2(nf, 2, m);
  }

  if (cert.condition1 && cert.condition2) {
    cert.nonvanishing_value =
        delta_power_coefficient_mod(d, static_cast<std::uint64_t>(d) * n, cert.decisive_modulus,
                                    /*incremental=*/false);
    cert.verdict = cert.nonvanishing_value != 0;
  } else {
    cert.verdict = false;
  }
  return cert;
}

std::uint64_t recompute_nonvanishing(const MaedaCertificate& cert) {
  return delta_power_coefficient_mod(cert.d, static_cast<std::uint64_t>(cert.d) * cert.n,
                                     cert.decisive_modulus, /*incremental=*/true);
}

CongruenceReport ramanujan_scan(std::uint64_t nmax, unsigned modulus) {
  if (modulus != 3 && modulus != 8 && modulus != 16)
    throw error("ramanujan_scan: modulus must be 3, 8 or 16");
  CongruenceReport report;
  report.family = "ramanujan-mod" + std::to_string(modulus);
  report.range =
      std::string(modulus == 3 ? "3 coprime to n" : "odd n") + ", n <= " + std::to_string(nmax);

  QSeries dm = modforms::delta(nmax + 1, CoeffRing::mod(modulus)).series;
  std::vector<std::uint64_t> sig = sigma_sieve(nmax);
  for (std::uint64_t n = 1; n <= nmax; ++n) {
    if (modulus == 3 ? n % 3 == 0 : n % 2 == 0) continue;
    std::uint64_t lhs = mulmod_u64(n % modulus, dm.mat(n), modulus);
    std::uint64_t rhs = sig[n] % modulus;
    ++report.checked;
    if (lhs != rhs) report.failures.push_back({n, 0, lhs, rhs, modulus});
  }
  return report;
}

CongruenceReport b_congruence_scan(unsigned emax, std::uint64_t nmax) {
  if (emax == 0 || nmax == 0) throw error("b_congruence_scan: emax and nmax must be positive");
  CongruenceReport report;
  report.family = "b-congruence";
  report.range = "e <= " + std::to_string(emax) + ", n <= " + std::to_string(nmax);

  std::size_t precision = static_cast<std::size_t>(emax) * nmax + 1;
  if (static_cast<std::size_t>(emax) * precision > 100'000'000)
    throw resource_error("b_congruence_scan: precision budget exceeded");
  // warm the power ladders at full precision once
  modforms::delta_power(emax, precision, CoeffRing::mod(8));
  modforms::delta_power(emax, precision, CoeffRing::mod(3));
  std::vector<std::uint64_t> sig = sigma_sieve(nmax);

  for (unsigned e = 1; e <= emax; ++e) {
    unsigned case_exp = congruence_case_exponent(e);
    std::uint64_t m2 = 1ull << case_exp;
    for (std::uint64_t n = 1; n <= nmax; ++n) {
      std::size_t need = static_cast<std::size_t>(e) * n + 1;
      if (n % 2 == 1) {
        ModularForm de = modforms::delta_power(e, need, CoeffRing::mod(8));
        ModularForm t = hecke::hecke_apply(de, n, e + 1);
        std::uint64_t b8 = std::get<std::uint64_t>(modforms::decompose(t, e)[e]);
        std::uint64_t lhs = mulmod_u64(n % m2, b8 % m2, m2);
        std::uint64_t rhs = sig[n] % m2;
        ++report.checked;
        if (lhs != rhs) report.failures.push_back({n, e, lhs, rhs, m2});
      }
      if (n % 3 != 0) {
        ModularForm de = modforms::delta_power(e, need, CoeffRing::mod(3));
        ModularForm t = hecke::hecke_apply(de, n, e + 1);
        std::uint64_t b3 = std::get<std::uint64_t>(modforms::decompose(t, e)[e]);
        std::uint64_t lhs = mulmod_u64(n % 3, b3, 3);
        std::uint64_t rhs = sig[n] % 3;
        ++report.checked;
        if (lhs != rhs) report.failures.push_back({n, e, lhs, rhs, 3});
      }
    }
  }
  return report;
}

}  // namespace heckelab::maeda
