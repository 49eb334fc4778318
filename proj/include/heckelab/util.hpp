#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace heckelab {

using Int = mpz_class;
using Rat = mpq_class;

// Base class for every error thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ring_mismatch_error : error {
  using error::error;
};

// Input series too short for the requested output precision.
struct precision_error : error {
  std::size_t required;
  precision_error(const std::string& msg, std::size_t req) : error(msg), required(req) {}
};

// Exact division failed; index identifies the offending coefficient.
struct divisibility_error : error {
  std::size_t index;
  divisibility_error(const std::string& msg, std::size_t idx) : error(msg), index(idx) {}
};

struct resource_error : error {
  using error::error;
};

Int pow_int(const Int& base, unsigned long exp);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

bool is_prime_u64(std::uint64_t n);
std::uint64_t next_prime_u64(std::uint64_t n);  // smallest prime > n

// Worker count used by internally parallel kernels. Results are identical
// for every value; this only changes how output ranges are partitioned.
void set_default_jobs(unsigned jobs);
unsigned default_jobs();

// Runs fn(lo, hi) over a partition of [begin, end) on `jobs` threads.
// Chunks are fixed by (begin, end, jobs) alone, never by timing.
void parallel_for_ranges(std::size_t begin, std::size_t end, unsigned jobs,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace heckelab
