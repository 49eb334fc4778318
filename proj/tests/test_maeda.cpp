#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "heckelab/cache.hpp"
#include "heckelab/maeda.hpp"
#include "heckelab/modforms.hpp"
#include "oracles.hpp"

using namespace heckelab;
namespace fs = std::filesystem;

TEST_CASE("weight condition at p = 3") {
  CHECK(maeda::cond1_p3(2).ok);   // a_2(Delta) = -24
  CHECK(maeda::cond1_p3(3).ok);   // 252 and -48 are divisible by 3
  maeda::Cond1Result r4 = maeda::cond1_p3(4);
  CHECK(!r4.ok);
  CHECK(r4.witness_i == 1);  // a_4(Delta) = -1472 = 1 mod 3
  CHECK_THROWS_AS(maeda::cond1_p3(1), error);
  CHECK_THROWS_AS(maeda::cond1_p3(1001), error);
}

TEST_CASE("p = 3 scan on small ranges") {
  CHECK(maeda::scan_cond1_p3(2) == std::vector<unsigned>{2});
  CHECK(maeda::scan_cond1_p3(5) == std::vector<unsigned>{2, 3});
  CHECK(maeda::scan_cond1_p3(30) == std::vector<unsigned>{2, 3, 6, 9, 18, 27});
  // scan agrees with the single-d path
  for (unsigned d = 2; d <= 30; ++d) {
    bool in_scan = false;
    for (unsigned x : maeda::scan_cond1_p3(30))
      if (x == d) in_scan = true;
    CHECK(in_scan == maeda::cond1_p3(d).ok);
  }
}

TEST_CASE("weight condition at p = 2") {
  maeda::Cond1P2Result r2 = maeda::cond1_p2(2, maeda::P2Mode::as_stated);
  CHECK(r2.ok);
  CHECK(r2.min_valuation == 3);  // v2(-24) = 3

  maeda::Cond1P2Result r4 = maeda::cond1_p2(4, maeda::P2Mode::as_stated);
  CHECK(r4.ok);
  CHECK(r4.min_valuation == 3);  // v2(-1472) = 6, v2(1080) = 3, v2(-72) = 3

  maeda::Cond1P2Result r3 = maeda::cond1_p2(3, maeda::P2Mode::as_stated);
  CHECK(r3.ok);                  // threshold for d = 3 mod 8 is 1
  CHECK(r3.min_valuation == 2);  // v2(252) = 2, v2(-48) capped to 3

  maeda::Cond1P2Result r3u = maeda::cond1_p2(3, maeda::P2Mode::uniform3);
  CHECK(!r3u.ok);
  CHECK(r3u.witness_i == 1);
}

TEST_CASE("p = 2 scan on small ranges") {
  for (maeda::P2Mode mode :
       {maeda::P2Mode::as_stated, maeda::P2Mode::uniform3, maeda::P2Mode::decisive4})
    CHECK(maeda::scan_cond1_p2(2, mode) == std::vector<unsigned>{2});
  std::vector<unsigned> s4 = maeda::scan_cond1_p2(4, maeda::P2Mode::as_stated);
  CHECK(s4 == std::vector<unsigned>{2, 3, 4});
  // d = 6 has min valuation 2 (the q^6 coefficient of Delta^2 is 143820)
  // and threshold 2, so it passes as stated but not uniformly
  std::vector<unsigned> s8 = maeda::scan_cond1_p2(8, maeda::P2Mode::as_stated);
  CHECK(std::find(s8.begin(), s8.end(), 6u) != s8.end());
  std::vector<unsigned> s8u = maeda::scan_cond1_p2(8, maeda::P2Mode::uniform3);
  CHECK(std::find(s8u.begin(), s8u.end(), 6u) == s8u.end());
}

TEST_CASE("decisive-4 predicate: nonvanishing certified mod at least 4") {
  // d = 3 reaches modulus min(2^2, 2^1) = 2 only, so it is excluded
  CHECK(!maeda::cond1_p2(3, maeda::P2Mode::decisive4).ok);
  CHECK(maeda::cond1_p2(6, maeda::P2Mode::decisive4).ok);
  // d = 24 has min valuation 2 at i = 8, failing the printed threshold 3
  // for d = 0 mod 8 but reaching modulus 4
  maeda::Cond1P2Result r24 = maeda::cond1_p2(24, maeda::P2Mode::as_stated);
  CHECK(!r24.ok);
  CHECK(r24.min_valuation == 2);
  CHECK(r24.witness_i == 8);
  CHECK(maeda::cond1_p2(24, maeda::P2Mode::decisive4).ok);
  CHECK(maeda::scan_cond1_p2(30, maeda::P2Mode::decisive4) ==
        std::vector<unsigned>{2, 4, 6, 8, 12, 16, 24});
}

TEST_CASE("threshold and case tables") {
  CHECK(maeda::p2_threshold(3) == 1);
  CHECK(maeda::p2_threshold(7) == 1);
  CHECK(maeda::p2_threshold(2) == 2);
  CHECK(maeda::p2_threshold(6) == 2);
  CHECK(maeda::p2_threshold(8) == 3);
  CHECK(maeda::p2_threshold(9) == 3);

  CHECK(maeda::congruence_case_exponent(1) == 3);
  CHECK(maeda::congruence_case_exponent(6) == 3);
  CHECK(maeda::congruence_case_exponent(8) == 3);
  CHECK(maeda::congruence_case_exponent(2) == 2);
  CHECK(maeda::congruence_case_exponent(4) == 2);
  CHECK(maeda::congruence_case_exponent(5) == 2);
  CHECK(maeda::congruence_case_exponent(3) == 1);
  CHECK(maeda::congruence_case_exponent(7) == 1);
}

TEST_CASE("cond2 on both sides") {
  CHECK(maeda::cond2(arith::factorize(4), 3, 0));   // 2 mod 3, even exponent
  CHECK(maeda::cond2(arith::factorize(7), 3, 0));   // 1 mod 3, exponent 1
  CHECK(!maeda::cond2(arith::factorize(2), 3, 0));  // sigma(2) = 3
  CHECK(maeda::cond2(arith::factorize(9), 2, 1));   // 9 is a square
  CHECK(!maeda::cond2(arith::factorize(3), 2, 1));
  CHECK(maeda::cond2(arith::factorize(5), 2, 2));   // sigma(5) = 6, nonzero mod 4
  CHECK(maeda::cond2(arith::factorize(3), 2, 3));   // sigma(3) = 4, nonzero mod 8
  CHECK_THROWS_AS(maeda::cond2(arith::factorize(6), 3, 0), error);
  CHECK_THROWS_AS(maeda::cond2(arith::factorize(4), 2, 1), error);

  for (std::uint64_t n = 1; n <= 2000; ++n) {
    if (n % 3 == 0) continue;
    CHECK(maeda::cond2(arith::factorize(n), 3, 0) ==
          (oracles::divisor_sum_u64(n) % 3 != 0));
  }
}

TEST_CASE("maeda certificates") {
  maeda::MaedaCertificate c = maeda::maeda_certificate(2, 7, 3);
  CHECK(c.verdict);
  CHECK(c.condition1);
  CHECK(c.condition2);
  CHECK(c.decisive_modulus == 3);
  CHECK(c.nonvanishing_value != 0);
  CHECK(c.chain == std::vector<std::string>{"THM-E", "AHLGREN-1.4", "GHITZA-MCANDREW-1.5"});
  // recomputation along the other power route gives the same residue
  CHECK(maeda::recompute_nonvanishing(c) == c.nonvanishing_value);

  CHECK_THROWS_AS(maeda::maeda_certificate(2, 3, 3), error);   // 3 | n
  CHECK_THROWS_AS(maeda::maeda_certificate(2, 4, 2), error);   // even n on side 2
  CHECK_THROWS_AS(maeda::maeda_certificate(4, 2, 3), error);   // gcd(4, 2) = 2
  CHECK_THROWS_AS(maeda::maeda_certificate(1, 5, 3), error);

  maeda::MaedaCertificate c45 = maeda::maeda_certificate(4, 5, 3);
  CHECK(!c45.verdict);
  CHECK(!c45.condition1);
  CHECK(c45.cond1_witness_i == 1);

  // side 2: d = 2 gives min valuation 3, case exponent 2, so modulus 4
  maeda::MaedaCertificate c23 = maeda::maeda_certificate(2, 3, 2);
  CHECK(c23.decisive_modulus == 4);
  CHECK(c23.condition1);
  // sigma(3) = 4 = 0 mod 4 fails condition 2
  CHECK(!c23.condition2);
  CHECK(!c23.verdict);

  maeda::MaedaCertificate c29 = maeda::maeda_certificate(2, 9, 2);
  CHECK(c29.condition2);  // sigma(9) = 13, odd
  CHECK(c29.verdict);
  CHECK(c29.nonvanishing_value != 0);
  CHECK(maeda::recompute_nonvanishing(c29) == c29.nonvanishing_value);

  // d = 24 reaches modulus 4 even though the printed threshold table
  // rejects it; sigma(5) = 6 is nonzero mod 4
  maeda::MaedaCertificate c245 = maeda::maeda_certificate(24, 5, 2);
  CHECK(c245.condition1);
  CHECK(c245.min_valuation == 2);
  CHECK(c245.decisive_modulus == 4);
  CHECK(c245.condition2);
  CHECK(c245.verdict);
  CHECK(maeda::recompute_nonvanishing(c245) == c245.nonvanishing_value);

  // d = 3 only reaches modulus 2, so condition 2 needs a square n
  maeda::MaedaCertificate c325 = maeda::maeda_certificate(3, 25, 2);
  CHECK(c325.decisive_modulus == 2);
  CHECK(c325.condition2);
  CHECK(c325.verdict);
  maeda::MaedaCertificate c35 = maeda::maeda_certificate(3, 5, 2);
  CHECK(!c35.condition2);  // sigma(5) = 6 is even
  CHECK(!c35.verdict);
}

TEST_CASE("tau congruence scans on small ranges") {
  maeda::CongruenceReport r8 = maeda::ramanujan_scan(200, 8);
  CHECK(r8.pass());
  CHECK(r8.checked == 100);  // odd n only
  maeda::CongruenceReport r3 = maeda::ramanujan_scan(200, 3);
  CHECK(r3.pass());
  maeda::CongruenceReport r16 = maeda::ramanujan_scan(500, 16);
  CHECK(r16.pass());
  CHECK_THROWS_AS(maeda::ramanujan_scan(10, 5), error);

  // spot values: 5 tau(5) = 24150 = 6 = sigma(5) mod 8 and mod 16
  Int t5 = modforms::tau(5);
  CHECK(t5 == 4830);
  CHECK(Int(5) * t5 % 8 == 6);
  CHECK(Int(5) * t5 % 16 == 6);
}

TEST_CASE("b-congruence scan on a small range") {
  maeda::CongruenceReport r = maeda::b_congruence_scan(3, 12);
  CHECK(r.pass());
  CHECK(r.checked > 0);
}

TEST_CASE("cache round trip") {
  fs::path dir = fs::temp_directory_path() / "heckelab-test-cache";
  fs::remove_all(dir);

  cache::CacheEntry e;
  e.kind = "tau";
  e.i = 1;
  e.n = 101;
  e.mod = 0;
  e.coeffs = modforms::tau_table(100);
  fs::path file = cache::store(dir, e);
  CHECK(fs::exists(file));

  cache::CacheEntry back = cache::load_file(file);
  CHECK(back.kind == "tau");
  CHECK(back.n == 101);
  CHECK(back.mod == 0);
  CHECK(back.coeffs == e.coeffs);

  // byte-identical re-serialization
  CHECK(cache::serialize(back) == cache::serialize(e));

  // residue table round trip
  cache::CacheEntry d2;
  d2.kind = "delta_pow";
  d2.i = 2;
  d2.n = 510;
  d2.mod = 3;
  auto series = modforms::delta_power(2, 510, qseries::CoeffRing::mod(3)).series;
  for (std::size_t i = 0; i < 510; ++i) d2.coeffs.emplace_back(static_cast<unsigned long>(series.mat(i)));
  cache::store(dir, d2);
  auto loaded = cache::try_load(dir, "delta_pow", 2, 510, 3);
  REQUIRE(loaded.has_value());
  CHECK(loaded->coeffs == d2.coeffs);

  CHECK(!cache::try_load(dir, "delta_pow", 3, 510, 3).has_value());
  CHECK(cache::list(dir).size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("cache rejects corruption") {
  fs::path dir = fs::temp_directory_path() / "heckelab-test-cache2";
  fs::remove_all(dir);
  cache::CacheEntry e;
  e.kind = "tau";
  e.n = 11;
  e.coeffs = modforms::tau_table(10);
  fs::path file = cache::store(dir, e);

  std::ifstream in(file);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  in.close();

  // truncated payload
  std::string truncated = bytes.substr(0, bytes.size() - 4);
  CHECK_THROWS_AS(cache::parse(truncated), cache::corrupt_cache_error);

  // flipped digit in a coefficient line
  std::string flipped = bytes;
  flipped[flipped.size() - 2] = flipped[flipped.size() - 2] == '1' ? '2' : '1';
  CHECK_THROWS_AS(cache::parse(flipped), cache::corrupt_cache_error);

  // wrong version line
  std::string wrong_version = bytes;
  wrong_version[wrong_version.find('1')] = '9';
  CHECK_THROWS_AS(cache::parse(wrong_version), cache::corrupt_cache_error);
  fs::remove_all(dir);
}
