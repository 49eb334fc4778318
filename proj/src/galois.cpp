#include "heckelab/galois.hpp"

#include <algorithm>
#include <sstream>

#include "heckelab/hecke.hpp"
#include "heckelab/modforms.hpp"

namespace heckelab::galois {

Int IntPolynomial::eval(const Int& x) const {
  Int acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

std::string IntPolynomial::to_string() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] == 0) continue;
    Int mag = abs(coeffs[i]);
    if (first) {
      if (coeffs[i] < 0) os << "-";
      first = false;
    } else {
      os << (coeffs[i] < 0 ? " - " : " + ");
    }
    if (mag != 1 || i == 0) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << "X";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

IntMatrix hecke_matrix(std::uint64_t n, unsigned d) {
  if (n == 0 || d == 0) throw error("hecke_matrix: n and d must be positive");
  std::size_t precision = n * d + 1;
  std::vector<modforms::ModularForm> basis = modforms::basis_b(d, precision);
  IntMatrix out(d, std::vector<Int>(d, Int(0)));
  // cusp basis = basis_b minus the final c4^{3d}; column t is T_n applied
  // to the form with Delta exponent d - t
  for (unsigned t = 0; t < d; ++t) {
    modforms::ModularForm image = hecke::hecke_apply(basis[t], n, d + 1);
    std::vector<modforms::Coeff> coeffs = modforms::decompose(image, d);
    if (!qseries::coeff_is_zero(coeffs[0]))
      throw error("hecke_matrix: image left the cusp space");  // cannot happen for cusp input
    for (unsigned s = 0; s < d; ++s) out[s][t] = std::get<Int>(coeffs[d - s]);
  }
  return out;
}

IntPolynomial char_poly(const IntMatrix& a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw error("char_poly: matrix must be square");
  std::vector<Int> c(n + 1, Int(0));
  c[n] = 1;
  if (n == 0) return IntPolynomial{{Int(1)}};

  // Faddeev-LeVerrier: M_{k} = A M_{k-1} + c_{n-k+1} I,
  // c_{n-k} = -tr(A M_k)/k; divisions are exact over Z.
  IntMatrix m(n, std::vector<Int>(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix am(n, std::vector<Int>(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) {
        if (a[i][l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          mpz_addmul(am[i][j].get_mpz_t(), a[i][l].get_mpz_t(), m[l][j].get_mpz_t());
      }
    Int tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
    Int ck;
    mpz_divexact_ui(ck.get_mpz_t(), tr.get_mpz_t(), static_cast<unsigned long>(k));
    c[n - k] = -ck;
    m = std::move(am);
    for (std::size_t i = 0; i < n; ++i) m[i][i] += c[n - k];
  }
  return IntPolynomial{std::move(c)};
}

namespace {

using Poly = std::vector<std::uint64_t>;  // over F_p, ascending, trimmed

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(const Poly& a, const Poly& f, std::uint64_t p) {
  Poly r = a;
  trim(r);
  std::uint64_t lead_inv = powmod_u64(f.back(), p - 2, p);
  while (r.size() >= f.size()) {
    std::uint64_t factor = mulmod_u64(r.back(), lead_inv, p);
    std::size_t shift = r.size() - f.size();
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::uint64_t sub = mulmod_u64(factor, f[i], p);
      std::uint64_t& dst = r[i + shift];
      dst = dst >= sub ? dst - sub : dst + p - sub;
    }
    trim(r);
  }
  return r;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mulmod_u64(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(prod, f, p);
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {  // make monic
    std::uint64_t inv = powmod_u64(a.back(), p - 2, p);
    for (auto& c : a) c = mulmod_u64(c, inv, p);
  }
  return a;
}

Poly poly_powmod_xp(const Poly& x_base, std::uint64_t p, const Poly& f) {
  // x_base^p mod f by square-and-multiply
  Poly result{1};
  Poly base = x_base;
  std::uint64_t e = p;
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Poly derivative(const Poly& f, std::uint64_t p) {
  Poly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(mulmod_u64(f[i], i % p, p));
  trim(d);
  return d;
}

Poly reduce_int_poly(const IntPolynomial& f, std::uint64_t p) {
  Poly out(f.coeffs.size());
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    Int r = f.coeffs[i] % static_cast<unsigned long>(p);
    if (r < 0) r += static_cast<unsigned long>(p);
    out[i] = r.get_ui();
  }
  trim(out);
  return out;
}

}  // namespace

DdfResult ddf_degrees(const IntPolynomial& f, std::uint64_t p) {
  if (!is_prime_u64(p)) throw error("ddf_degrees: p must be prime");
  Poly fp = reduce_int_poly(f, p);
  if (fp.size() != f.coeffs.size())
    throw error("ddf_degrees: p divides the leading coefficient");
  DdfResult out;
  if (fp.size() <= 1) {
    out.squarefree = true;
    return out;
  }
  Poly d = derivative(fp, p);
  Poly g = poly_gcd(fp, d, p);
  if (g.size() != 1) return out;  // squarefree failure (this includes f' = 0)
  out.squarefree = true;

  Poly fstar = fp;
  Poly x{0, 1};
  Poly h = poly_mod(x, fstar, p);
  unsigned i = 0;
  while (fstar.size() > 1 && 2 * (i + 1) <= fstar.size() - 1) {
    ++i;
    h = poly_powmod_xp(h, p, fstar);
    // gcd(x^{p^i} - x, fstar) collects all irreducible factors of degree i
    Poly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = hx[1] >= 1 ? hx[1] - 1 : p - 1;
    trim(hx);
    Poly gi = poly_gcd(fstar, hx, p);
    if (gi.size() > 1) {
      unsigned deg = static_cast<unsigned>(gi.size() - 1);
      for (unsigned t = 0; t < deg / i; ++t) out.degrees.push_back(i);
      // divide out and continue on the cofactor
      Poly quotient;
      {
        Poly r = fstar;
        quotient.assign(r.size() - gi.size() + 1, 0);
        std::uint64_t inv = powmod_u64(gi.back(), p - 2, p);
        for (std::size_t shift = r.size() - gi.size() + 1; shift-- > 0;) {
          std::uint64_t factor = mulmod_u64(r[shift + gi.size() - 1], inv, p);
          quotient[shift] = factor;
          if (factor == 0) continue;
          for (std::size_t t = 0; t < gi.size(); ++t) {
            std::uint64_t sub = mulmod_u64(factor, gi[t], p);
            std::uint64_t& dst = r[shift + t];
            dst = dst >= sub ? dst - sub : dst + p - sub;
          }
        }
      }
      fstar = quotient;
      trim(fstar);
      if (fstar.size() > 1) h = poly_mod(h, fstar, p);
    }
  }
  if (fstar.size() > 1) out.degrees.push_back(static_cast<unsigned>(fstar.size() - 1));
  std::sort(out.degrees.begin(), out.degrees.end());
  return out;
}

std::string cert_status_name(CertStatus s) {
  switch (s) {
    case CertStatus::certified: return "Certified";
    case CertStatus::refuted: return "Refuted";
    case CertStatus::inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

bool witnesses_transposition(const std::vector<unsigned>& type) {
  unsigned twos = 0;
  for (unsigned part : type) {
    if (part == 2) ++twos;
    else if (part % 2 == 0) return false;  // another even part survives every odd power
  }
  return twos == 1;
}

bool witnesses_long_prime_cycle(const std::vector<unsigned>& type, unsigned d) {
  for (unsigned part : type)
    if (2 * part > d && is_prime_u64(part)) return true;
  return false;
}

// Small-root search: integer roots divide the constant term; try the
// divisors up to 10^4 (plus 0). Incomplete on purpose.
bool find_small_rational_root(const IntPolynomial& f, Int& root_out) {
  if (f.coeffs.front() == 0) {
    root_out = 0;
    return true;
  }
  for (std::uint64_t c = 1; c <= 10000; ++c) {
    if (!mpz_divisible_ui_p(f.coeffs.front().get_mpz_t(), c)) continue;
    for (Int r : {Int(static_cast<unsigned long>(c)), Int(-static_cast<long>(c))}) {
      if (f.eval(r) == 0) {
        root_out = r;
        return true;
      }
    }
  }
  return false;
}

Int discriminant_deg2(const IntPolynomial& f) {
  return f.coeffs[1] * f.coeffs[1] - 4 * f.coeffs[2] * f.coeffs[0];
}

Int discriminant_deg3_monic(const IntPolynomial& f) {
  const Int& a = f.coeffs[2];
  const Int& b = f.coeffs[1];
  const Int& c = f.coeffs[0];
  return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

bool is_square(const Int& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()); }

}  // namespace

Verdict certify_maeda(const IntPolynomial& f, unsigned prime_budget) {
  if (f.coeffs.empty() || f.degree() < 1) throw error("certify_maeda: need degree >= 1");
  if (!f.monic()) throw error("certify_maeda: polynomial must be monic");
  unsigned d = f.degree();
  Verdict v;

  if (d == 1) {
    DdfResult r = ddf_degrees(f, 5);
    v.budget_used = 1;
    v.witnesses.emplace_back(5, r.squarefree ? r.degrees : std::vector<unsigned>{1});
    v.status = CertStatus::certified;
    v.notes.push_back("degree 1: trivially symmetric");
    return v;
  }

  if (d == 2) {
    Int disc = discriminant_deg2(f);
    std::uint64_t p2 = 3;
    for (unsigned used = 0; used < std::max(1u, prime_budget); ++used) {
      p2 = next_prime_u64(p2);
      v.budget_used = used + 1;
      DdfResult r = ddf_degrees(f, p2);
      if (r.squarefree) {
        v.witnesses.emplace_back(p2, r.degrees);
        break;
      }
    }
    if (v.witnesses.empty()) v.witnesses.emplace_back(p2, std::vector<unsigned>{});
    if (is_square(disc)) {
      v.status = CertStatus::refuted;
      v.notes.push_back("square discriminant " + disc.get_str() + ": splits over Q");
    } else {
      v.status = CertStatus::certified;
      v.notes.push_back("non-square discriminant " + disc.get_str() + ": irreducible, group S2");
    }
    return v;
  }

  bool have_irreducible = false, have_transposition = false, have_long_cycle = false;
  std::uint64_t p = 3;  // sampling starts at the next prime, 5
  for (unsigned used = 0; used < prime_budget; ++used) {
    p = next_prime_u64(p);
    v.budget_used = used + 1;
    DdfResult r = ddf_degrees(f, p);
    if (!r.squarefree) continue;

    bool informative = false;
    if (!have_irreducible && r.degrees.size() == 1 && r.degrees[0] == d) {
      have_irreducible = true;
      informative = true;
      v.notes.push_back("irreducible mod " + std::to_string(p));
    }
    if (!have_transposition && witnesses_transposition(r.degrees)) {
      have_transposition = true;
      informative = true;
      v.notes.push_back("transposition from cycle type mod " + std::to_string(p));
    }
    if (!have_long_cycle && witnesses_long_prime_cycle(r.degrees, d)) {
      have_long_cycle = true;
      informative = true;
      v.notes.push_back("long prime cycle from cycle type mod " + std::to_string(p));
    }
    if (informative) v.witnesses.emplace_back(p, r.degrees);

    if (have_irreducible && d == 3) {
      Int disc = discriminant_deg3_monic(f);
      if (is_square(disc)) {
        v.status = CertStatus::refuted;
        v.notes.push_back("square discriminant " + disc.get_str() + ": Galois group A3, not S3");
        return v;
      }
      v.status = CertStatus::certified;
      v.notes.push_back("non-square discriminant " + disc.get_str());
      return v;
    }
    if (have_irreducible && have_transposition && have_long_cycle) {
      v.status = CertStatus::certified;
      return v;
    }
  }

  Int root;
  if (find_small_rational_root(f, root)) {
    v.status = CertStatus::refuted;
    v.notes.push_back("rational root " + root.get_str());
    if (v.witnesses.empty()) {
      DdfResult r = ddf_degrees(f, 5);
      v.witnesses.emplace_back(5, r.squarefree ? r.degrees : std::vector<unsigned>{});
    }
    return v;
  }
  v.status = CertStatus::inconclusive;
  v.notes.push_back("prime budget exhausted");
  return v;
}

}  // namespace heckelab::galois
