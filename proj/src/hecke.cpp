#include "heckelab/hecke.hpp"

#include <algorithm>
#include <numeric>

namespace heckelab::hecke {

using qseries::RingKind;

namespace {

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::size_t hecke_required_precision(std::uint64_t n, std::size_t out_precision) {
  return n * (out_precision - 1) + 1;
}

ModularForm hecke_apply(const ModularForm& f, std::uint64_t n, std::size_t out_precision) {
  if (n == 0) throw error("hecke_apply: n must be positive");
  if (out_precision == 0) throw error("hecke_apply: output precision must be positive");
  unsigned k = f.weight;
  const CoeffRing& ring = f.series.ring();
  if (k == 0 && ring.kind != RingKind::rational)
    throw ring_mismatch_error("hecke_apply: weight 0 needs rational coefficients (e^{k-1} = 1/e)");
  std::size_t required = hecke_required_precision(n, out_precision);
  if (f.series.precision() < required)
    throw precision_error("hecke_apply: input precision " + std::to_string(f.series.precision()) +
                              " < required " + std::to_string(required) + " for T_" +
                              std::to_string(n) + " at output precision " +
                              std::to_string(out_precision),
                          required);

  std::vector<std::uint64_t> divs = divisors_of(n);
  QSeries out(ring, out_precision);

  switch (ring.kind) {
    case RingKind::bigint: {
      std::vector<Int> epow;
      for (std::uint64_t e : divs) epow.push_back(pow_int(Int(e), k - 1));
      for (std::size_t m = 0; m < out_precision; ++m) {
        Int acc = 0;
        for (std::size_t t = 0; t < divs.size(); ++t) {
          std::uint64_t e = divs[t];
          if (m % e != 0) continue;
          std::size_t idx = m * n / (e * e);
          mpz_addmul(acc.get_mpz_t(), epow[t].get_mpz_t(), f.series.zat(idx).get_mpz_t());
        }
        out.set(m, acc);
      }
      break;
    }
    case RingKind::rational: {
      std::vector<Rat> epow;
      for (std::uint64_t e : divs) {
        if (k == 0) {
          Rat r(1, static_cast<unsigned long>(e));
          r.canonicalize();
          epow.push_back(r);
        } else {
          epow.push_back(Rat(pow_int(Int(e), k - 1)));
        }
      }
      for (std::size_t m = 0; m < out_precision; ++m) {
        Rat acc = 0;
        for (std::size_t t = 0; t < divs.size(); ++t) {
          std::uint64_t e = divs[t];
          if (m % e != 0) continue;
          acc += epow[t] * f.series.qat(m * n / (e * e));
        }
        out.set(m, acc);
      }
      break;
    }
    case RingKind::mod: {
      std::uint64_t mod = ring.modulus;
      std::vector<std::uint64_t> epow;
      for (std::uint64_t e : divs) epow.push_back(powmod_u64(e % mod, k - 1, mod));
      for (std::size_t m = 0; m < out_precision; ++m) {
        std::uint64_t acc = 0;
        for (std::size_t t = 0; t < divs.size(); ++t) {
          std::uint64_t e = divs[t];
          if (m % e != 0) continue;
          acc += mulmod_u64(epow[t], f.series.mat(m * n / (e * e)), mod);
          if (acc >= mod) acc -= mod;
        }
        out.set(m, acc);
      }
      break;
    }
  }
  return ModularForm(k, std::move(out));
}

CompositionReport composition_check(std::uint64_t m, std::uint64_t n, unsigned k, std::size_t precision) {
  if (k < 12 || k % 12 != 0) throw error("composition_check: weight must be a positive multiple of 12");
  if (precision == 0) throw error("composition_check: precision must be positive");
  unsigned d = k / 12;
  std::size_t input_precision = m * n * (precision - 1) + 1;
  std::vector<ModularForm> basis = modforms::basis_b(d, input_precision);

  CompositionReport report;
  report.m = m;
  report.n = n;
  report.weight = k;
  report.precision = precision;

  std::uint64_t g = std::gcd(m, n);
  for (unsigned t = 0; t < basis.size(); ++t) {
    const ModularForm& f = basis[t];
    ModularForm inner = hecke_apply(f, n, m * (precision - 1) + 1);
    ModularForm lhs = hecke_apply(inner, m, precision);

    QSeries rhs(f.series.ring(), precision);
    for (std::uint64_t e = 1; e <= g; ++e) {
      if (g % e != 0) continue;
      ModularForm piece = hecke_apply(f, m * n / (e * e), precision);
      rhs = rhs.add(piece.series.scalar_mul(pow_int(Int(e), k - 1)));
    }

    for (std::size_t i = 0; i < precision; ++i) {
      if (lhs.series.zat(i) != rhs.zat(i)) {
        report.mismatches.push_back(
            {t, i, lhs.series.zat(i).get_str(), rhs.zat(i).get_str()});
      }
    }
    ++report.forms_checked;
  }
  return report;
}

Coeff eigenvalue(const ModularForm& f, std::uint64_t n) {
  std::size_t i0 = 0;
  bool found = false;
  for (std::size_t i = 0; i < f.series.precision(); ++i) {
    if (!qseries::coeff_is_zero(f.series.at(i))) {
      i0 = i;
      found = true;
      break;
    }
  }
  if (!found) throw error("eigenvalue: zero form");
  std::size_t required = n * i0 + 1;
  if (f.series.precision() < required)
    throw precision_error("eigenvalue: need precision >= " + std::to_string(required), required);

  std::size_t out_precision = (f.series.precision() - 1) / n + 1;
  ModularForm tf = hecke_apply(f, n, out_precision);

  const CoeffRing& ring = f.series.ring();
  Coeff lambda;
  switch (ring.kind) {
    case RingKind::bigint: {
      const Int& lead = f.series.zat(i0);
      const Int& tlead = tf.series.zat(i0);
      if (!mpz_divisible_p(tlead.get_mpz_t(), lead.get_mpz_t()))
        throw error("eigenvalue: not proportional over Z at index " + std::to_string(i0));
      Int l;
      mpz_divexact(l.get_mpz_t(), tlead.get_mpz_t(), lead.get_mpz_t());
      lambda = l;
      break;
    }
    case RingKind::rational:
      lambda = Rat(tf.series.qat(i0) / f.series.qat(i0));
      break;
    case RingKind::mod: {
      Int inv;
      Int lead(static_cast<unsigned long>(f.series.mat(i0)));
      Int mod(static_cast<unsigned long>(ring.modulus));
      if (mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw error("eigenvalue: leading coefficient is not a unit mod " +
                    std::to_string(ring.modulus));
      lambda = mulmod_u64(inv.get_ui(), tf.series.mat(i0), ring.modulus);
      break;
    }
  }

  // proportionality holds on every coefficient we can see, not just i0
  std::size_t verify_to = std::min(out_precision, f.series.precision());
  for (std::size_t i = 0; i < verify_to; ++i) {
    bool match;
    switch (ring.kind) {
      case RingKind::bigint: match = tf.series.zat(i) == std::get<Int>(lambda) * f.series.zat(i); break;
      case RingKind::rational: match = tf.series.qat(i) == std::get<Rat>(lambda) * f.series.qat(i); break;
      case RingKind::mod:
        match = tf.series.mat(i) ==
                mulmod_u64(std::get<std::uint64_t>(lambda), f.series.mat(i), ring.modulus);
        break;
    }
    if (!match)
      throw error("eigenvalue: proportionality fails at coefficient index " + std::to_string(i));
  }
  return lambda;
}

Coeff b_coefficient(std::uint64_t n, unsigned e, std::uint64_t modulus, std::size_t coeff_budget) {
  if (n == 0 || e == 0) throw error("b_coefficient: n and e must be positive");
  std::size_t precision = static_cast<std::size_t>(e) * n + 1;
  if (static_cast<std::size_t>(e) * precision > coeff_budget)
    throw resource_error("b_coefficient: e*precision = " + std::to_string(e * precision) +
                         " exceeds coefficient budget " + std::to_string(coeff_budget));
  CoeffRing ring = modulus == 0 ? CoeffRing::integers() : CoeffRing::mod(modulus);
  ModularForm de = modforms::delta_power(e, precision, ring);
  ModularForm t = hecke_apply(de, n, e + 1);
  std::vector<Coeff> coeffs = modforms::decompose(t, e);
  return coeffs[e];
}

Int stable_normalize(const Int& value, std::uint64_t n) { return value * Int(n); }

Rat stable_normalize(const Rat& value, std::uint64_t n) {
  Rat r = value * Rat(Int(n));
  r.canonicalize();
  return r;
}

std::uint64_t stable_normalize(std::uint64_t value, std::uint64_t n, std::uint64_t modulus) {
  return mulmod_u64(value, n % modulus, modulus);
}

}  // namespace heckelab::hecke
