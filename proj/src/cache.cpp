#include "heckelab/cache.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace heckelab::cache {

namespace {

constexpr const char* kMagic = "HECKELAB-CACHE v1";

std::string crc_hex(const std::string& payload) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(payload.data()),
              static_cast<uInt>(payload.size()));
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

}  // namespace

std::string serialize(const CacheEntry& e) {
  if (e.kind != "tau" && e.kind != "delta_pow") throw error("cache: unknown kind " + e.kind);
  if (e.coeffs.size() != e.n) throw error("cache: coefficient count does not match N");
  std::string payload;
  for (const Int& c : e.coeffs) {
    payload += c.get_str();
    payload += '\n';
  }
  std::ostringstream os;
  os << kMagic << '\n'
     << "kind=" << e.kind << " i=" << e.i << " N=" << e.n << " mod=" << e.mod << '\n'
     << "crc32=" << crc_hex(payload) << '\n'
     << payload;
  return os.str();
}

CacheEntry parse(const std::string& bytes) {
  std::istringstream is(bytes);
  std::string line;
  if (!std::getline(is, line) || line != kMagic)
    throw corrupt_cache_error("cache: bad magic/version line");
  if (!std::getline(is, line)) throw corrupt_cache_error("cache: missing header line");
  CacheEntry e;
  {
    std::istringstream hs(line);
    std::string field;
    while (hs >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) throw corrupt_cache_error("cache: malformed header field");
      std::string key = field.substr(0, eq), value = field.substr(eq + 1);
      if (key == "kind") e.kind = value;
      else if (key == "i") e.i = static_cast<unsigned>(std::stoul(value));
      else if (key == "N") e.n = static_cast<std::size_t>(std::stoull(value));
      else if (key == "mod") e.mod = std::stoull(value);
      else throw corrupt_cache_error("cache: unknown header field " + key);
    }
  }
  if (e.kind != "tau" && e.kind != "delta_pow")
    throw corrupt_cache_error("cache: unknown kind " + e.kind);
  if (!std::getline(is, line) || line.rfind("crc32=", 0) != 0)
    throw corrupt_cache_error("cache: missing checksum line");
  std::string expected_crc = line.substr(6);

  std::string payload;
  while (std::getline(is, line)) {
    payload += line;
    payload += '\n';
    try {
      e.coeffs.emplace_back(line);
    } catch (const std::invalid_argument&) {
      throw corrupt_cache_error("cache: non-numeric coefficient line");
    }
  }
  if (crc_hex(payload) != expected_crc)
    throw corrupt_cache_error("cache: checksum mismatch (file truncated or corrupted)");
  if (e.coeffs.size() != e.n)
    throw corrupt_cache_error("cache: coefficient count does not match header N");
  return e;
}

std::string file_name(const std::string& kind, unsigned i, std::size_t n, std::uint64_t mod) {
  std::ostringstream os;
  os << kind << "-i" << i << "-N" << n << "-mod" << mod << ".txt";
  return os.str();
}

std::filesystem::path store(const std::filesystem::path& dir, const CacheEntry& e) {
  std::filesystem::create_directories(dir);
  std::filesystem::path target = dir / file_name(e.kind, e.i, e.n, e.mod);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw error("cache: cannot write " + tmp.string());
    out << serialize(e);
  }
  std::filesystem::rename(tmp, target);
  return target;
}

CacheEntry load_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw error("cache: cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::optional<CacheEntry> try_load(const std::filesystem::path& dir, const std::string& kind,
                                   unsigned i, std::size_t n, std::uint64_t mod) {
  std::filesystem::path file = dir / file_name(kind, i, n, mod);
  if (!std::filesystem::exists(file)) return std::nullopt;
  return load_file(file);
}

std::vector<std::filesystem::path> list(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  if (!std::filesystem::exists(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".txt") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace heckelab::cache
