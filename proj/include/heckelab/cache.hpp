#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "heckelab/util.hpp"

namespace heckelab::cache {

// On-disk coefficient table. Serialized form, bit-exact:
//   line 1: HECKELAB-CACHE v1
//   line 2: kind=<tau|delta_pow> i=<i> N=<N> mod=<M|0>
//   line 3: crc32=<8 lowercase hex digits of the payload>
//   then one decimal coefficient per line, index ascending, LF endings.
// The payload covered by the checksum is the coefficient block.
struct CacheEntry {
  std::string kind;  // "tau" or "delta_pow"
  unsigned i = 1;    // power index (1 for tau)
  std::size_t n = 0;
  std::uint64_t mod = 0;  // 0 = integers
  std::vector<Int> coeffs;
};

struct corrupt_cache_error : error {
  using error::error;
};

std::string serialize(const CacheEntry& e);
CacheEntry parse(const std::string& bytes);

std::string file_name(const std::string& kind, unsigned i, std::size_t n, std::uint64_t mod);

// Atomic write (temp file + rename) under dir, which is created on demand.
std::filesystem::path store(const std::filesystem::path& dir, const CacheEntry& e);
CacheEntry load_file(const std::filesystem::path& file);
std::optional<CacheEntry> try_load(const std::filesystem::path& dir, const std::string& kind,
                                   unsigned i, std::size_t n, std::uint64_t mod);
std::vector<std::filesystem::path> list(const std::filesystem::path& dir);

}  // namespace heckelab::cache
