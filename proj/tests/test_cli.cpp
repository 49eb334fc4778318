#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

// End-to-end checks against the installed binary. The path comes from the
// HECKELAB_BIN environment variable (set by ctest).

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string binary() {
  const char* bin = std::getenv("HECKELAB_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "HECKELAB_BIN must point at the cli binary");
  return bin;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + binary() + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string strip_runtime(std::string s) {
  return std::regex_replace(s, std::regex("\"runtime_ms\": [0-9]+"), "\"runtime_ms\": X");
}

}  // namespace

TEST_CASE("value subcommands") {
  RunResult tau = run("tau --n 5");
  CHECK(tau.exit_code == 0);
  CHECK(tau.out == "4830\n");

  RunResult eigen = run("eigen --n 2");
  CHECK(eigen.exit_code == 0);
  CHECK(eigen.out == "-24\n");

  RunResult b = run("bcoeff --n 2 --e 1");
  CHECK(b.exit_code == 0);
  CHECK(b.out == "-24\n");
}

TEST_CASE("verification subcommands exit by verdict") {
  CHECK(run("compose-check --m 2 --n 2 --k 12 --precision 20").exit_code == 0);
  CHECK(run("ramanujan-scan --nmax 200 --mod 8").exit_code == 0);
  CHECK(run("census --n 4").exit_code == 0);
  CHECK(run("subgroup-poly --m 6 --n 4").exit_code == 0);
  CHECK(run("certify-galois --n 2 --d 2").exit_code == 0);
  CHECK(run("maeda-cert --d 4 --n 5 --side 3").exit_code == 1);  // condition 1 fails at d=4
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("no-such-subcommand").exit_code == 2);
  CHECK(run("tau").exit_code == 2);            // missing --n
  CHECK(run("maeda-cert --d 2 --n 3 --side 3").exit_code == 2);  // precondition violation
}

TEST_CASE("json output is deterministic and jobs-independent") {
  std::string a = strip_runtime(run("maeda-scan3 --dmax 40 --json").out);
  std::string b = strip_runtime(run("maeda-scan3 --dmax 40 --json").out);
  CHECK(a == b);
  std::string j1 = strip_runtime(run("--jobs 1 ramanujan-scan --nmax 300 --mod 3 --json").out);
  std::string j4 = strip_runtime(run("--jobs 4 ramanujan-scan --nmax 300 --mod 3 --json").out);
  CHECK(j1 == j4);
  CHECK(j1.find("\"pass\": true") != std::string::npos);

  std::string m2 = run("maeda-scan2 --dmax 20 --mode all --json").out;
  CHECK(m2.find("\"as_stated\"") != std::string::npos);
  CHECK(m2.find("\"uniform3\"") != std::string::npos);
  CHECK(m2.find("\"decisive4\"") != std::string::npos);
}

TEST_CASE("cache workflow and directory resolution") {
  fs::path dir_flag = fs::temp_directory_path() / "heckelab-cli-cache-flag";
  fs::path dir_env = fs::temp_directory_path() / "heckelab-cli-cache-env";
  fs::remove_all(dir_flag);
  fs::remove_all(dir_env);

  CHECK(run("--cache-dir " + dir_flag.string() + " cache write-tau --nmax 64").exit_code == 0);
  CHECK(fs::exists(dir_flag / "tau-i1-N65-mod0.txt"));

  // env var alone
  std::string env = "HECKELAB_CACHE=" + dir_env.string() + " ";
  CHECK(run("cache write-tau --nmax 32", env).exit_code == 0);
  CHECK(fs::exists(dir_env / "tau-i1-N33-mod0.txt"));

  // flag wins over env
  CHECK(run("--cache-dir " + dir_flag.string() + " cache write-tau --nmax 16", env).exit_code == 0);
  CHECK(fs::exists(dir_flag / "tau-i1-N17-mod0.txt"));
  CHECK(!fs::exists(dir_env / "tau-i1-N17-mod0.txt"));

  // tau served from the stored table
  RunResult cached = run("--cache-dir " + dir_flag.string() + " tau --n 30 --json");
  CHECK(cached.exit_code == 0);
  CHECK(cached.out.find("\"cache_hits\": 1") != std::string::npos);
  CHECK(cached.out.find("\"value\": \"-29211840\"") != std::string::npos);  // tau(2)tau(3)tau(5)

  CHECK(run("--cache-dir " + dir_flag.string() + " cache verify").exit_code == 0);

  // corrupt one file: verify must fail
  {
    std::ofstream f(dir_flag / "tau-i1-N17-mod0.txt", std::ios::app);
    f << "junk\n";
  }
  CHECK(run("--cache-dir " + dir_flag.string() + " cache verify").exit_code == 1);

  fs::remove_all(dir_flag);
  fs::remove_all(dir_env);
}
