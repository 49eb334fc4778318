#include "heckelab/subgroups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "heckelab/arith.hpp"

namespace heckelab::subgroups {

AbelianType AbelianType::cyclic(std::uint64_t n) {
  if (n == 0) throw error("AbelianType::cyclic: order must be positive");
  AbelianType t;
  if (n > 1) t.invariant_factors.push_back(n);
  return t;
}

AbelianType AbelianType::product(std::uint64_t a, std::uint64_t b) {
  return from_factors({a, b});
}

AbelianType AbelianType::from_factors(const std::vector<std::uint64_t>& factors) {
  // split every factor into prime powers, then stack exponents per prime:
  // the j-th largest exponents across all primes multiply into the j-th
  // largest invariant factor
  std::map<std::uint64_t, std::vector<unsigned>> exps;
  for (std::uint64_t f : factors) {
    if (f == 0) throw error("AbelianType::from_factors: factor must be positive");
    if (f == 1) continue;
    for (auto [p, e] : arith::factorize(f).factors) exps[p].push_back(e);
  }
  std::size_t rank = 0;
  for (auto& [p, v] : exps) {
    std::sort(v.rbegin(), v.rend());
    rank = std::max(rank, v.size());
  }
  AbelianType out;
  out.invariant_factors.assign(rank, 1);
  for (auto& [p, v] : exps)
    for (std::size_t j = 0; j < v.size(); ++j) {
      std::uint64_t pe = 1;
      for (unsigned i = 0; i < v[j]; ++i) pe *= p;
      // v sorted descending, invariant factors ascending: largest goes last
      out.invariant_factors[rank - 1 - j] *= pe;
    }
  return out;
}

std::uint64_t AbelianType::order() const {
  std::uint64_t o = 1;
  for (std::uint64_t f : invariant_factors) o *= f;
  return o;
}

std::string AbelianType::to_string() const {
  if (invariant_factors.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
    if (i) os << " x ";
    os << "C" << invariant_factors[i];
  }
  return os.str();
}

namespace {

// Ambient group as a mixed-radix index space over its cyclic factors.
struct GroupCtx {
  std::vector<std::uint64_t> factors;
  std::vector<std::uint64_t> strides;
  std::uint64_t order = 1;

  explicit GroupCtx(const AbelianType& t) : factors(t.invariant_factors) {
    strides.resize(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      strides[i] = order;
      order *= factors[i];
    }
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      std::uint64_t ai = (a / strides[i]) % factors[i];
      std::uint64_t bi = (b / strides[i]) % factors[i];
      std::uint64_t s = ai + bi;
      if (s >= factors[i]) s -= factors[i];
      out += s * strides[i];
    }
    return out;
  }

  std::uint64_t element_order(std::uint64_t a) const {
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      std::uint64_t ai = (a / strides[i]) % factors[i];
      o = std::lcm(o, factors[i] / std::gcd(factors[i], ai));  // gcd(f, 0) = f
    }
    return o;
  }

  std::vector<std::uint64_t> coordinates(std::uint64_t a) const {
    std::vector<std::uint64_t> c(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) c[i] = (a / strides[i]) % factors[i];
    return c;
  }
};

using ElementSet = std::vector<std::uint32_t>;  // sorted element indices

ElementSet cyclic_orbit(const GroupCtx& g, std::uint64_t gen) {
  ElementSet s;
  std::uint64_t x = 0;
  do {
    s.push_back(static_cast<std::uint32_t>(x));
    x = g.add(x, gen);
  } while (x != 0);
  std::sort(s.begin(), s.end());
  return s;
}

// Type of a subgroup from the multiset of its element orders: per prime,
// the counts of solutions of p^j x = 0 grow by p^{#(invariants >= j)} per
// step, so consecutive log-ratios give the conjugate of the exponent
// partition.
AbelianType type_from_elements(const GroupCtx& g, const ElementSet& elems) {
  std::uint64_t h = elems.size();
  if (h == 1) return AbelianType::trivial();
  std::vector<std::uint64_t> prime_power_factors;
  for (auto [p, e_amb] : arith::factorize(h).factors) {
    (void)e_amb;
    // histogram of p-adic valuations over elements of p-power order
    std::map<unsigned, std::uint64_t> hist;
    for (std::uint32_t x : elems) {
      std::uint64_t o = g.element_order(x);
      unsigned v = 0;
      while (o % p == 0) o /= p, ++v;
      if (o == 1) hist[v] += 1;
    }
    std::vector<std::uint64_t> cumulative;  // #{x : ord(x) | p^j}
    std::uint64_t total = 0;
    for (auto [v, cnt] : hist) total += cnt;
    std::uint64_t run = 0;
    unsigned j = 0;
    while (run < total) {
      run += hist.count(j) ? hist[j] : 0;
      cumulative.push_back(run);
      ++j;
    }
    // g_j = log_p(c_j / c_{j-1}) = #(exponents >= j); conjugate back
    std::vector<unsigned> gj;
    std::uint64_t prev = 1;
    for (std::size_t t = 1; t < cumulative.size(); ++t) {
      std::uint64_t ratio = cumulative[t] / prev;
      prev = cumulative[t];
      unsigned lg = 0;
      while (ratio > 1) ratio /= p, ++lg;
      gj.push_back(lg);
    }
    unsigned max_rank = gj.empty() ? 0 : gj[0];
    for (unsigned t = 1; t <= max_rank; ++t) {
      unsigned a = 0;
      for (unsigned l : gj)
        if (l >= t) ++a;
      std::uint64_t pe = 1;
      for (unsigned i = 0; i < a; ++i) pe *= p;
      prime_power_factors.push_back(pe);
    }
  }
  return AbelianType::from_factors(prime_power_factors);
}

}  // namespace

std::vector<SubgroupRecord> enumerate_subgroups(const AbelianType& ambient, std::uint64_t order_bound) {
  GroupCtx g(ambient);
  if (g.order > order_bound)
    throw resource_error("enumerate_subgroups: |G| = " + std::to_string(g.order) +
                         " exceeds bound " + std::to_string(order_bound));

  // distinct cyclic subgroups, keyed by element set, keeping the smallest
  // generator index for reproducible generator lists
  std::map<ElementSet, std::uint64_t> cyclics;
  for (std::uint64_t x = 0; x < g.order; ++x) {
    ElementSet orbit = cyclic_orbit(g, x);
    auto it = cyclics.find(orbit);
    if (it == cyclics.end()) cyclics.emplace(std::move(orbit), x);
  }

  std::map<ElementSet, std::vector<std::uint64_t>> found;  // element set -> generators

  auto join_pair = [&](const ElementSet& a, std::uint64_t ga, std::uint64_t gb) {
    // H = <a> + <gb>: walk the gb-cosets of the first orbit
    std::vector<bool> mark(g.order, false);
    for (std::uint32_t x : a) mark[x] = true;
    std::uint64_t shift = gb;
    while (shift != 0) {
      for (std::uint32_t x : a) mark[g.add(x, shift)] = true;
      shift = g.add(shift, gb);
    }
    ElementSet out;
    for (std::uint64_t x = 0; x < g.order; ++x)
      if (mark[x]) out.push_back(static_cast<std::uint32_t>(x));
    if (!found.count(out)) found.emplace(std::move(out), std::vector<std::uint64_t>{ga, gb});
  };

  if (ambient.invariant_factors.size() <= 2) {
    // every subgroup of a rank-<=2 group is generated by two elements
    for (auto& [set_a, gen_a] : cyclics)
      for (auto& [set_b, gen_b] : cyclics) {
        if (set_b.size() < set_a.size()) continue;  // join is symmetric
        join_pair(set_a, gen_a, gen_b);
      }
  } else {
    // general rank: saturate joins with cyclic subgroups
    for (auto& [set_c, gen_c] : cyclics) found.emplace(set_c, std::vector<std::uint64_t>{gen_c});
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::pair<ElementSet, std::vector<std::uint64_t>>> snapshot(found.begin(), found.end());
      for (auto& [set_h, gens_h] : snapshot) {
        for (auto& [set_c, gen_c] : cyclics) {
          if (std::includes(set_h.begin(), set_h.end(), set_c.begin(), set_c.end())) continue;
          std::vector<bool> mark(g.order, false);
          for (std::uint32_t x : set_h) mark[x] = true;
          std::uint64_t shift = gen_c;
          while (shift != 0) {
            for (std::uint32_t x : set_h) mark[g.add(x, shift)] = true;
            shift = g.add(shift, gen_c);
          }
          ElementSet out;
          for (std::uint64_t x = 0; x < g.order; ++x)
            if (mark[x]) out.push_back(static_cast<std::uint32_t>(x));
          if (!found.count(out)) {
            std::vector<std::uint64_t> gens = gens_h;
            gens.push_back(gen_c);
            found.emplace(std::move(out), std::move(gens));
            grew = true;
            if (found.size() > 200000)
              throw resource_error("enumerate_subgroups: subgroup count cap exceeded");
          }
        }
      }
    }
  }

  std::vector<SubgroupRecord> records;
  records.reserve(found.size());
  for (auto& [elems, gens] : found) {
    SubgroupRecord r;
    r.ambient = ambient;
    r.order = elems.size();
    r.type = type_from_elements(g, elems);
    for (std::uint64_t gen : gens)
      if (gen != 0 || gens.size() == 1) r.generators.push_back(g.coordinates(gen));
    records.push_back(std::move(r));
  }
  return records;
}

std::uint64_t count_by_type(const AbelianType& ambient, const AbelianType& t, std::uint64_t order_bound) {
  std::uint64_t count = 0;
  for (const SubgroupRecord& r : enumerate_subgroups(ambient, order_bound))
    if (r.type == t) ++count;
  return count;
}

EllPoly c_primepower(unsigned m, unsigned n, unsigned d, unsigned e) {
  if (2 * d > m || 2 * e > m + n) throw error("c_primepower: need 2d <= m and 2e <= m+n");
  EllPoly poly;
  auto add_phi = [&poly](unsigned t) {
    if (poly.size() < t + 1) poly.resize(t + 1, 0);
    if (t == 0) {
      poly[0] += 1;
    } else {  // phi(ell^t) = ell^t - ell^{t-1}
      poly[t] += 1;
      poly[t - 1] -= 1;
    }
  };
  unsigned target = m - d;
  for (unsigned a = 0; a <= e; ++a) {
    for (unsigned b = 0; b <= m + n - e; ++b) {
      if (a + b < m) continue;
      if (std::max(a, b) != target) continue;
      add_phi(a + b - m);
    }
  }
  while (!poly.empty() && poly.back() == 0) poly.pop_back();
  return poly;
}

std::string ellpoly_to_string(const EllPoly& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t t = p.size(); t-- > 0;) {
    if (p[t] == 0) continue;
    if (!first) os << (p[t] > 0 ? " + " : " - ");
    else if (p[t] < 0) os << "-";
    long long mag = p[t] > 0 ? p[t] : -p[t];
    if (mag != 1 || t == 0) os << mag;
    if (t > 0) {
      if (mag != 1) os << "*";
      os << "l";
      if (t > 1) os << "^" << t;
    }
    first = false;
  }
  return os.str();
}

namespace {

unsigned valuation(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

Int eval_ellpoly(const EllPoly& p, std::uint64_t ell) {
  Int acc = 0;
  for (std::size_t t = p.size(); t-- > 0;) acc = acc * Int(ell) + Int(static_cast<long>(p[t]));
  return acc;
}

}  // namespace

Int c_formula(std::uint64_t m, std::uint64_t n, std::uint64_t d, std::uint64_t e) {
  if (m == 0 || n == 0 || d == 0 || e == 0) throw error("c_formula: arguments must be positive");
  if (m % (d * d) != 0) throw error("c_formula: hypothesis d^2 | m fails");
  if ((m * n) % (e * e) != 0) throw error("c_formula: hypothesis e^2 | mn fails");
  Int result = 1;
  for (auto [p, unused] : arith::factorize(m * n).factors) {
    (void)unused;
    EllPoly poly = c_primepower(valuation(m, p), valuation(n, p), valuation(d, p), valuation(e, p));
    result *= eval_ellpoly(poly, p);
    if (result == 0) return result;
  }
  return result;
}

PolyIdentityReport c_polynomial_identity(std::uint64_t m, std::uint64_t n) {
  PolyIdentityReport report;
  report.m = m;
  report.n = n;
  std::map<std::uint64_t, Int> lhs, rhs;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % (d * d) != 0) continue;
    for (std::uint64_t e = 1; e * e <= m * n; ++e) {
      if ((m * n) % (e * e) != 0) continue;
      Int c = c_formula(m, n, d, e);
      if (c != 0) lhs[e] += c;
    }
  }
  std::uint64_t g = std::gcd(m, n);
  for (std::uint64_t b = 1; b <= g; ++b) {
    if (g % b != 0) continue;
    std::uint64_t rest = (m * n) / (b * b);
    for (std::uint64_t a = 1; a * a <= rest; ++a)
      if (rest % (a * a) == 0) rhs[a * b] += b;
  }
  std::map<std::uint64_t, std::pair<Int, Int>> merged;
  for (auto& [deg, v] : lhs) merged[deg].first = v;
  for (auto& [deg, v] : rhs) merged[deg].second = v;
  for (auto& [deg, pair] : merged)
    if (pair.first != pair.second) report.mismatches.push_back({deg, pair.first, pair.second});
  return report;
}

CensusReport census_identities(std::uint64_t n, std::uint64_t order_bound) {
  CensusReport report;
  report.n = n;
  arith::FactoredInt nf = arith::factorize(n);
  report.sigma_n = arith::sigma(nf).get_ui();
  report.psi_n = arith::dedekind_psi(nf);

  std::vector<SubgroupRecord> subs = enumerate_subgroups(AbelianType::product(n, n), order_bound);
  for (const SubgroupRecord& r : subs) {
    if (r.order != n) continue;
    ++report.order_n_count;
    if (r.type == AbelianType::cyclic(n)) ++report.cyclic_order_n_count;
  }
  report.sigma_identity = report.order_n_count == report.sigma_n;
  report.psi_identity = report.cyclic_order_n_count == report.psi_n;

  // positivity of the count exactly on the index set d | e, m | de or e | dn
  report.index_set_match = true;
  std::uint64_t m = n;
  for (std::uint64_t d = 1; d * d <= m; ++d) {
    if (m % (d * d) != 0) continue;
    for (std::uint64_t e = 1; e * e <= m * n; ++e) {
      if ((m * n) % (e * e) != 0) continue;
      bool positive = c_formula(m, n, d, e) > 0;
      bool in_set = (e % d == 0) && ((d * e) % m == 0 || (d * n) % e == 0);
      if (positive != in_set) report.index_set_match = false;
    }
  }
  return report;
}

}  // namespace heckelab::subgroups
