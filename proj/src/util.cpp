#include "heckelab/util.hpp"

#include <atomic>
#include <numeric>
#include <thread>
#include <vector>

namespace heckelab {

Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // deterministic Miller–Rabin for 64-bit inputs
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (a % n == 0) continue;
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t next_prime_u64(std::uint64_t n) {
  std::uint64_t c = n + 1;
  if (c <= 2) return 2;
  if (c % 2 == 0) ++c;
  while (!is_prime_u64(c)) c += 2;
  return c;
}

namespace {
std::atomic<unsigned> g_jobs{1};
}

void set_default_jobs(unsigned jobs) { g_jobs.store(jobs == 0 ? 1 : jobs); }
unsigned default_jobs() { return g_jobs.load(); }

void parallel_for_ranges(std::size_t begin, std::size_t end, unsigned jobs,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (begin >= end) return;
  if (jobs == 0) jobs = 1;
  std::size_t total = end - begin;
  if (jobs == 1 || total < 2 * jobs) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(jobs);
  std::size_t chunk = (total + jobs - 1) / jobs;
  for (unsigned t = 0; t < jobs; ++t) {
    std::size_t lo = begin + t * chunk;
    if (lo >= end) break;
    std::size_t hi = std::min(end, lo + chunk);
    threads.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : threads) th.join();
}

}  // namespace heckelab
