// heckelab: command-line frontend for the exact-arithmetic modular forms
// toolkit. Every subcommand that verifies an identity exits nonzero when
// the check fails, so CI can consume the binary directly.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "heckelab/arith.hpp"
#include "heckelab/cache.hpp"
#include "heckelab/galois.hpp"
#include "heckelab/hecke.hpp"
#include "heckelab/maeda.hpp"
#include "heckelab/modforms.hpp"
#include "heckelab/qseries.hpp"
#include "heckelab/subgroups.hpp"

using json = nlohmann::ordered_json;
using namespace heckelab;
using modforms::ModularForm;
using qseries::CoeffRing;
using qseries::QSeries;

namespace {

enum class Output { plain, json_mode, csv };

struct Session {
  Output output = Output::plain;
  std::string cache_dir;
  unsigned jobs = 1;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  unsigned cache_hits = 0;

  long long runtime_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
  }
};

// flag > environment > unset
std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("HECKELAB_CACHE");
  return env ? env : "";
}

void finish_report(Session& s, json& report) {
  report["runtime_ms"] = s.runtime_ms();
  report["cache_hits"] = s.cache_hits;
}

int emit(Session& s, json report, int exit_code,
         const std::function<void()>& plain_printer = nullptr) {
  finish_report(s, report);
  if (s.output == Output::json_mode) {
    std::cout << report.dump(2) << "\n";
  } else if (s.output == Output::csv) {
    for (auto& [key, value] : report.items()) {
      if (value.is_array() || value.is_object()) continue;
      std::cout << key << "," << (value.is_string() ? value.get<std::string>() : value.dump())
                << "\n";
    }
    if (report.contains("failures"))
      for (auto& f : report["failures"]) {
        std::cout << "failure";
        for (auto& [k, v] : f.items())
          std::cout << "," << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
        std::cout << "\n";
      }
    if (report.contains("values"))
      for (auto& v : report["values"]) std::cout << v.get<std::string>() << "\n";
    if (report.contains("set"))
      for (auto& v : report["set"]) std::cout << v.dump() << "\n";
  } else if (plain_printer) {
    plain_printer();
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return exit_code;
}

CoeffRing ring_from_mod(std::uint64_t mod) {
  return mod == 0 ? CoeffRing::integers() : CoeffRing::mod(mod);
}

ModularForm build_form(const std::string& name, unsigned power, std::size_t precision,
                       std::uint64_t mod) {
  CoeffRing ring = ring_from_mod(mod);
  ModularForm base = name == "c4"    ? modforms::c4(precision, ring)
                     : name == "c6"  ? modforms::c6(precision, ring)
                                     : modforms::delta(precision, ring);
  if (power == 1) return base;
  if (name == "delta") return modforms::delta_power(power, precision, ring);
  return ModularForm(base.weight * power, base.series.pow(power));
}

json coeff_array(const QSeries& s) {
  json arr = json::array();
  for (std::size_t i = 0; i < s.precision(); ++i) arr.push_back(qseries::coeff_to_string(s.at(i)));
  return arr;
}

json failures_to_json(const maeda::CongruenceReport& r) {
  json arr = json::array();
  for (const auto& f : r.failures) {
    json j;
    j["n"] = f.n;
    if (f.e) j["e"] = f.e;
    j["lhs"] = f.lhs;
    j["rhs"] = f.rhs;
    j["modulus"] = f.modulus;
    arr.push_back(j);
  }
  return arr;
}

int run_congruence_report(Session& s, const maeda::CongruenceReport& r, json params) {
  json report;
  report["family"] = r.family;
  report["params"] = std::move(params);
  report["range"] = r.range;
  report["checked"] = r.checked;
  report["failures"] = failures_to_json(r);
  report["pass"] = r.pass();
  return emit(s, report, r.pass() ? 0 : 1, [&] {
    std::cout << r.family << ": checked " << r.checked << " congruences, " << r.failures.size()
              << " failures\n";
    for (const auto& f : r.failures)
      std::cout << "  n=" << f.n << " e=" << f.e << ": " << f.lhs << " != " << f.rhs << " (mod "
                << f.modulus << ")\n";
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Hecke operators, congruence scans and subgroup counts for level-1 modular forms"};
  app.require_subcommand(1);

  Session session;
  std::string cache_flag;
  std::string output_name = "plain";
  app.add_option("--cache-dir", cache_flag, "cache directory (overrides HECKELAB_CACHE)");
  app.add_option("--jobs", session.jobs, "worker threads for internally parallel kernels")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", output_name, "output format")
      ->check(CLI::IsMember({"plain", "json", "csv"}));

  // ---- tau ----
  auto* cmd_tau = app.add_subcommand("tau", "Ramanujan tau at one index");
  std::uint64_t tau_n = 1;
  bool tau_json = false;
  cmd_tau->add_option("--n", tau_n, "index")->required()->check(CLI::PositiveNumber);
  cmd_tau->add_flag("--json", tau_json, "shorthand for --output json");

  // ---- qexp ----
  auto* cmd_qexp = app.add_subcommand("qexp", "q-expansion of a generator or its power");
  std::string qexp_form = "delta";
  unsigned qexp_power = 1;
  std::size_t qexp_precision = 10;
  std::uint64_t qexp_mod = 0;
  bool qexp_json = false;
  cmd_qexp->add_option("--form", qexp_form)->check(CLI::IsMember({"delta", "c4", "c6"}));
  cmd_qexp->add_option("--power", qexp_power)->check(CLI::PositiveNumber);
  cmd_qexp->add_option("--precision", qexp_precision)->check(CLI::PositiveNumber);
  cmd_qexp->add_option("--mod", qexp_mod);
  cmd_qexp->add_flag("--json", qexp_json);

  // ---- hecke-apply ----
  auto* cmd_hecke = app.add_subcommand("hecke-apply", "apply T_n to a built-in form");
  std::string ha_form = "delta";
  unsigned ha_power = 1;
  std::uint64_t ha_n = 1;
  std::size_t ha_precision = 10;
  std::uint64_t ha_mod = 0;
  bool ha_json = false;
  cmd_hecke->add_option("--form", ha_form)->check(CLI::IsMember({"delta", "c4", "c6"}));
  cmd_hecke->add_option("--power", ha_power)->check(CLI::PositiveNumber);
  cmd_hecke->add_option("--n", ha_n)->required()->check(CLI::PositiveNumber);
  cmd_hecke->add_option("--precision", ha_precision, "output precision")->check(CLI::PositiveNumber);
  cmd_hecke->add_option("--mod", ha_mod);
  cmd_hecke->add_flag("--json", ha_json);

  // ---- compose-check ----
  auto* cmd_compose = app.add_subcommand("compose-check", "verify T_m T_n = sum d^{k-1} T_{mn/d^2}");
  std::uint64_t cc_m = 2, cc_n = 2;
  unsigned cc_k = 12;
  std::size_t cc_precision = 20;
  bool cc_json = false;
  cmd_compose->add_option("--m", cc_m)->required()->check(CLI::PositiveNumber);
  cmd_compose->add_option("--n", cc_n)->required()->check(CLI::PositiveNumber);
  cmd_compose->add_option("--k", cc_k)->required();
  cmd_compose->add_option("--precision", cc_precision)->check(CLI::PositiveNumber);
  cmd_compose->add_flag("--json", cc_json);

  // ---- eigen ----
  auto* cmd_eigen = app.add_subcommand("eigen", "Hecke eigenvalue on a built-in eigenform");
  std::string ei_form = "delta";
  std::uint64_t ei_n = 2;
  std::size_t ei_depth = 10;
  bool ei_json = false;
  cmd_eigen->add_option("--form", ei_form)->check(CLI::IsMember({"delta"}));
  cmd_eigen->add_option("--n", ei_n)->required()->check(CLI::PositiveNumber);
  cmd_eigen->add_option("--depth", ei_depth, "coefficients used for verification")
      ->check(CLI::PositiveNumber);
  cmd_eigen->add_flag("--json", ei_json);

  // ---- bcoeff ----
  auto* cmd_bcoeff = app.add_subcommand("bcoeff", "Delta^e-coefficient of T_n(Delta^e)");
  std::uint64_t bc_n = 2;
  unsigned bc_e = 1;
  std::uint64_t bc_mod = 0;
  bool bc_json = false;
  cmd_bcoeff->add_option("--n", bc_n)->required()->check(CLI::PositiveNumber);
  cmd_bcoeff->add_option("--e", bc_e)->required()->check(CLI::PositiveNumber);
  cmd_bcoeff->add_option("--mod", bc_mod);
  cmd_bcoeff->add_flag("--json", bc_json);

  // ---- subgroup-count ----
  auto* cmd_sc = app.add_subcommand("subgroup-count", "c_{m,n}(d,e), optionally census-checked");
  std::uint64_t sc_m = 1, sc_n = 1, sc_d = 1, sc_e = 1;
  bool sc_census = false, sc_json = false;
  cmd_sc->add_option("--m", sc_m)->required()->check(CLI::PositiveNumber);
  cmd_sc->add_option("--n", sc_n)->required()->check(CLI::PositiveNumber);
  cmd_sc->add_option("--d", sc_d)->required()->check(CLI::PositiveNumber);
  cmd_sc->add_option("--e", sc_e)->required()->check(CLI::PositiveNumber);
  cmd_sc->add_flag("--census", sc_census, "cross-check against subgroup enumeration");
  cmd_sc->add_flag("--json", sc_json);

  // ---- subgroup-poly ----
  auto* cmd_sp = app.add_subcommand("subgroup-poly", "polynomial identity in the counts");
  std::uint64_t sp_m = 1, sp_n = 1;
  bool sp_json = false;
  cmd_sp->add_option("--m", sp_m)->required()->check(CLI::PositiveNumber);
  cmd_sp->add_option("--n", sp_n)->required()->check(CLI::PositiveNumber);
  cmd_sp->add_flag("--json", sp_json);

  // ---- census ----
  auto* cmd_census = app.add_subcommand("census", "sigma/psi subgroup-count identities on C_n x C_n");
  std::uint64_t ce_n = 2;
  std::uint64_t ce_bound = subgroups::kDefaultCensusBound;
  bool ce_json = false;
  cmd_census->add_option("--n", ce_n)->required()->check(CLI::PositiveNumber);
  cmd_census->add_option("--bound", ce_bound);
  cmd_census->add_flag("--json", ce_json);

  // ---- charpoly ----
  auto* cmd_cp = app.add_subcommand("charpoly", "characteristic polynomial of T_n on the cusp space");
  std::uint64_t cp_n = 2;
  unsigned cp_d = 1;
  bool cp_json = false;
  cmd_cp->add_option("--n", cp_n)->required()->check(CLI::PositiveNumber);
  cmd_cp->add_option("--d", cp_d, "weight 12d")->required()->check(CLI::PositiveNumber);
  cmd_cp->add_flag("--json", cp_json);

  // ---- certify-galois ----
  auto* cmd_cert = app.add_subcommand("certify-galois", "symmetric-group certificate for T_n on weight 12d");
  std::uint64_t cg_n = 2;
  unsigned cg_d = 1, cg_budget = 200;
  bool cg_json = false;
  cmd_cert->add_option("--n", cg_n)->required()->check(CLI::PositiveNumber);
  cmd_cert->add_option("--d", cg_d)->required()->check(CLI::PositiveNumber);
  cmd_cert->add_option("--budget", cg_budget, "primes sampled")->check(CLI::PositiveNumber);
  cmd_cert->add_flag("--json", cg_json);

  // ---- maeda-scan3 ----
  auto* cmd_ms3 = app.add_subcommand("maeda-scan3", "weights passing the p=3 divisibility condition");
  unsigned ms3_dmax = 500;
  bool ms3_json = false;
  cmd_ms3->add_option("--dmax", ms3_dmax)->check(CLI::PositiveNumber);
  cmd_ms3->add_flag("--json", ms3_json);

  // ---- maeda-scan2 ----
  auto* cmd_ms2 = app.add_subcommand("maeda-scan2", "weights passing the p=2 valuation condition");
  unsigned ms2_dmax = 500;
  std::string ms2_mode = "as-stated";
  bool ms2_json = false;
  cmd_ms2->add_option("--dmax", ms2_dmax)->check(CLI::PositiveNumber);
  cmd_ms2->add_option("--mode", ms2_mode, "threshold predicate (decisive4 = nonvanishing mod >= 4)")
      ->check(CLI::IsMember({"as-stated", "uniform3", "decisive4", "all"}));
  cmd_ms2->add_flag("--json", ms2_json);

  // ---- maeda-cert ----
  auto* cmd_mc = app.add_subcommand("maeda-cert", "conditional certificate for T_{dn} on weight 12d");
  unsigned mc_d = 2;
  std::uint64_t mc_n = 5;
  unsigned mc_side = 3;
  bool mc_json = false;
  cmd_mc->add_option("--d", mc_d)->required()->check(CLI::PositiveNumber);
  cmd_mc->add_option("--n", mc_n)->required()->check(CLI::PositiveNumber);
  cmd_mc->add_option("--side", mc_side, "prime side (2 or 3)")->check(CLI::IsMember({2, 3}));
  cmd_mc->add_flag("--json", mc_json);

  // ---- ramanujan-scan ----
  auto* cmd_rs = app.add_subcommand("ramanujan-scan", "n tau(n) = sigma(n) congruence scan");
  std::uint64_t rs_nmax = 10000;
  unsigned rs_mod = 8;
  bool rs_json = false;
  cmd_rs->add_option("--nmax", rs_nmax)->check(CLI::PositiveNumber);
  cmd_rs->add_option("--mod", rs_mod)->check(CLI::IsMember({3, 8, 16}));
  cmd_rs->add_flag("--json", rs_json);

  // ---- thmE-scan ----
  auto* cmd_ts = app.add_subcommand("thmE-scan", "n b(n,e) = sigma(n) congruence scan");
  unsigned ts_emax = 16;
  std::uint64_t ts_nmax = 50;
  bool ts_json = false;
  cmd_ts->add_option("--emax", ts_emax)->check(CLI::PositiveNumber);
  cmd_ts->add_option("--nmax", ts_nmax)->check(CLI::PositiveNumber);
  cmd_ts->add_flag("--json", ts_json);

  // ---- cache ----
  auto* cmd_cache = app.add_subcommand("cache", "inspect and maintain the coefficient cache");
  auto* cache_list = cmd_cache->add_subcommand("list", "list cache files");
  auto* cache_verify = cmd_cache->add_subcommand("verify", "validate checksums of all cache files");
  auto* cache_write_tau = cmd_cache->add_subcommand("write-tau", "compute and store a tau table");
  std::uint64_t cwt_nmax = 100;
  cache_write_tau->add_option("--nmax", cwt_nmax)->check(CLI::PositiveNumber);
  auto* cache_write_dp = cmd_cache->add_subcommand("write-delta-pow", "compute and store Delta^i");
  unsigned cwd_i = 1;
  std::size_t cwd_precision = 100;
  std::uint64_t cwd_mod = 0;
  cache_write_dp->add_option("--i", cwd_i)->required()->check(CLI::PositiveNumber);
  cache_write_dp->add_option("--precision", cwd_precision)->check(CLI::PositiveNumber);
  cache_write_dp->add_option("--mod", cwd_mod);
  cmd_cache->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage errors are exit 2
  }

  session.cache_dir = resolve_cache_dir(cache_flag);
  session.output = output_name == "json" ? Output::json_mode
                   : output_name == "csv" ? Output::csv
                                          : Output::plain;
  if (tau_json || qexp_json || ha_json || cc_json || ei_json || bc_json || sc_json || sp_json ||
      ce_json || cp_json || cg_json || ms3_json || ms2_json || mc_json || rs_json || ts_json)
    session.output = Output::json_mode;
  set_default_jobs(session.jobs);

  try {
    if (*cmd_tau) {
      Int value;
      bool from_cache = false;
      if (!session.cache_dir.empty()) {
        // largest stored tau table that covers the index wins
        std::size_t best = 0;
        cache::CacheEntry best_entry;
        for (const auto& file : cache::list(session.cache_dir)) {
          cache::CacheEntry e = cache::load_file(file);
          if (e.kind == "tau" && e.mod == 0 && e.n > tau_n && e.n > best) {
            best = e.n;
            best_entry = std::move(e);
          }
        }
        if (best > 0) {
          value = best_entry.coeffs[tau_n];
          from_cache = true;
          ++session.cache_hits;
        }
      }
      if (!from_cache) value = modforms::tau(tau_n);
      json report;
      report["family"] = "tau";
      report["params"] = {{"n", tau_n}};
      report["value"] = value.get_str();
      return emit(session, report, 0, [&] { std::cout << value.get_str() << "\n"; });
    }

    if (*cmd_qexp) {
      ModularForm f = build_form(qexp_form, qexp_power, qexp_precision, qexp_mod);
      json report;
      report["family"] = "qexp";
      report["params"] = {{"form", qexp_form}, {"power", qexp_power},
                          {"precision", qexp_precision}, {"mod", qexp_mod}};
      report["weight"] = f.weight;
      report["values"] = coeff_array(f.series);
      return emit(session, report, 0, [&] { std::cout << f.series.to_string(qexp_precision) << "\n"; });
    }

    if (*cmd_hecke) {
      std::size_t input_precision = hecke::hecke_required_precision(ha_n, ha_precision);
      ModularForm f = build_form(ha_form, ha_power, input_precision, ha_mod);
      ModularForm t = hecke::hecke_apply(f, ha_n, ha_precision);
      json report;
      report["family"] = "hecke-apply";
      report["params"] = {{"form", ha_form}, {"power", ha_power}, {"n", ha_n},
                          {"precision", ha_precision}, {"mod", ha_mod}};
      report["weight"] = t.weight;
      report["values"] = coeff_array(t.series);
      return emit(session, report, 0, [&] { std::cout << t.series.to_string(ha_precision) << "\n"; });
    }

    if (*cmd_compose) {
      hecke::CompositionReport r = hecke::composition_check(cc_m, cc_n, cc_k, cc_precision);
      json report;
      report["family"] = "compose-check";
      report["params"] = {{"m", cc_m}, {"n", cc_n}, {"k", cc_k}, {"precision", cc_precision}};
      report["forms_checked"] = r.forms_checked;
      json fails = json::array();
      for (const auto& mm : r.mismatches)
        fails.push_back({{"form_index", mm.form_index}, {"coeff_index", mm.coeff_index},
                         {"lhs", mm.lhs}, {"rhs", mm.rhs}});
      report["failures"] = fails;
      report["pass"] = r.pass();
      return emit(session, report, r.pass() ? 0 : 1, [&] {
        std::cout << (r.pass() ? "composition identity holds" : "composition identity FAILED")
                  << " (m=" << cc_m << ", n=" << cc_n << ", k=" << cc_k << ", precision "
                  << cc_precision << ", " << r.forms_checked << " basis forms)\n";
      });
    }

    if (*cmd_eigen) {
      ModularForm d = modforms::delta(ei_n * ei_depth + 1);
      modforms::Coeff lambda = hecke::eigenvalue(d, ei_n);
      json report;
      report["family"] = "eigen";
      report["params"] = {{"form", ei_form}, {"n", ei_n}};
      report["value"] = qseries::coeff_to_string(lambda);
      return emit(session, report, 0,
                  [&] { std::cout << qseries::coeff_to_string(lambda) << "\n"; });
    }

    if (*cmd_bcoeff) {
      modforms::Coeff b = hecke::b_coefficient(bc_n, bc_e, bc_mod);
      json report;
      report["family"] = "bcoeff";
      report["params"] = {{"n", bc_n}, {"e", bc_e}, {"mod", bc_mod}};
      report["value"] = qseries::coeff_to_string(b);
      return emit(session, report, 0, [&] { std::cout << qseries::coeff_to_string(b) << "\n"; });
    }

    if (*cmd_sc) {
      Int formula = subgroups::c_formula(sc_m, sc_n, sc_d, sc_e);
      json report;
      report["family"] = "subgroup-count";
      report["params"] = {{"m", sc_m}, {"n", sc_n}, {"d", sc_d}, {"e", sc_e}};
      report["value"] = formula.get_str();
      bool ok = true;
      if (sc_census) {
        std::uint64_t census = subgroups::count_by_type(
            subgroups::AbelianType::product(sc_e, sc_m * sc_n / sc_e),
            subgroups::AbelianType::product(sc_d, sc_m / sc_d));
        report["census"] = census;
        ok = formula == Int(census);
        report["pass"] = ok;
      }
      return emit(session, report, ok ? 0 : 1, [&] {
        std::cout << formula.get_str() << "\n";
        if (sc_census) std::cout << (ok ? "census agrees" : "census DISAGREES") << "\n";
      });
    }

    if (*cmd_sp) {
      subgroups::PolyIdentityReport r = subgroups::c_polynomial_identity(sp_m, sp_n);
      json report;
      report["family"] = "subgroup-poly";
      report["params"] = {{"m", sp_m}, {"n", sp_n}};
      json fails = json::array();
      for (const auto& mm : r.mismatches)
        fails.push_back({{"degree", mm.degree}, {"lhs", mm.lhs.get_str()}, {"rhs", mm.rhs.get_str()}});
      report["failures"] = fails;
      report["pass"] = r.pass();
      return emit(session, report, r.pass() ? 0 : 1, [&] {
        std::cout << (r.pass() ? "polynomial identity holds" : "polynomial identity FAILED")
                  << " (m=" << sp_m << ", n=" << sp_n << ")\n";
      });
    }

    if (*cmd_census) {
      subgroups::CensusReport r = subgroups::census_identities(ce_n, ce_bound);
      json report;
      report["family"] = "census";
      report["params"] = {{"n", ce_n}};
      report["order_n_count"] = r.order_n_count;
      report["sigma_n"] = r.sigma_n;
      report["cyclic_order_n_count"] = r.cyclic_order_n_count;
      report["psi_n"] = r.psi_n;
      report["index_set_match"] = r.index_set_match;
      report["pass"] = r.pass();
      return emit(session, report, r.pass() ? 0 : 1, [&] {
        std::cout << "order-" << ce_n << " subgroups: " << r.order_n_count << " (sigma = " << r.sigma_n
                  << "), cyclic: " << r.cyclic_order_n_count << " (psi = " << r.psi_n << "), index set "
                  << (r.index_set_match ? "matches" : "MISMATCH") << "\n";
      });
    }

    if (*cmd_cp) {
      galois::IntPolynomial p = galois::char_poly(galois::hecke_matrix(cp_n, cp_d));
      json report;
      report["family"] = "charpoly";
      report["params"] = {{"n", cp_n}, {"d", cp_d}};
      json arr = json::array();
      for (const Int& c : p.coeffs) arr.push_back(c.get_str());
      report["coefficients_ascending"] = arr;
      report["text"] = p.to_string();
      return emit(session, report, 0, [&] { std::cout << p.to_string() << "\n"; });
    }

    if (*cmd_cert) {
      galois::IntPolynomial p = galois::char_poly(galois::hecke_matrix(cg_n, cg_d));
      galois::Verdict v = galois::certify_maeda(p, cg_budget);
      json report;
      report["family"] = "certify-galois";
      report["params"] = {{"n", cg_n}, {"d", cg_d}, {"budget", cg_budget}};
      report["status"] = galois::cert_status_name(v.status);
      json wit = json::array();
      for (const auto& [prime, degrees] : v.witnesses) wit.push_back({{"prime", prime}, {"degrees", degrees}});
      report["witnesses"] = wit;
      report["budget_used"] = v.budget_used;
      report["notes"] = v.notes;
      bool ok = v.status == galois::CertStatus::certified;
      return emit(session, report, ok ? 0 : 1, [&] {
        std::cout << galois::cert_status_name(v.status) << " (degree " << p.degree() << ", "
                  << v.budget_used << " primes)\n";
        for (const std::string& note : v.notes) std::cout << "  " << note << "\n";
      });
    }

    if (*cmd_ms3) {
      std::vector<unsigned> set = maeda::scan_cond1_p3(ms3_dmax);
      json report;
      report["family"] = "maeda-scan3";
      report["params"] = {{"dmax", ms3_dmax}};
      report["set"] = set;
      return emit(session, report, 0, [&] {
        for (unsigned d : set) std::cout << d << "\n";
      });
    }

    if (*cmd_ms2) {
      json report;
      report["family"] = "maeda-scan2";
      report["params"] = {{"dmax", ms2_dmax}};
      report["mode"] = ms2_mode;
      std::map<std::string, std::vector<unsigned>> sets;
      if (ms2_mode == "all" || ms2_mode == "as-stated")
        sets["as_stated"] = maeda::scan_cond1_p2(ms2_dmax, maeda::P2Mode::as_stated);
      if (ms2_mode == "all" || ms2_mode == "uniform3")
        sets["uniform3"] = maeda::scan_cond1_p2(ms2_dmax, maeda::P2Mode::uniform3);
      if (ms2_mode == "all" || ms2_mode == "decisive4")
        sets["decisive4"] = maeda::scan_cond1_p2(ms2_dmax, maeda::P2Mode::decisive4);
      if (sets.size() == 1) {
        report["set"] = sets.begin()->second;
      } else {
        for (auto& [name, set] : sets) report[name] = set;
      }
      return emit(session, report, 0, [&] {
        for (auto& [name, set] : sets) {
          std::cout << name << ":";
          for (unsigned d : set) std::cout << " " << d;
          std::cout << "\n";
        }
      });
    }

    if (*cmd_mc) {
      maeda::MaedaCertificate c = maeda::maeda_certificate(mc_d, mc_n, mc_side);
      json report;
      report["family"] = "maeda-cert";
      report["params"] = {{"d", mc_d}, {"n", mc_n}, {"side", mc_side}};
      report["condition1"] = c.condition1;
      if (!c.condition1) report["condition1_witness_i"] = c.cond1_witness_i;
      if (mc_side == 2) report["min_valuation"] = c.min_valuation;
      report["condition2"] = c.condition2;
      report["decisive_modulus"] = c.decisive_modulus;
      report["nonvanishing_value"] = c.nonvanishing_value;
      report["chain"] = c.chain;
      report["verdict"] = c.verdict;
      return emit(session, report, c.verdict ? 0 : 1, [&] {
        std::cout << "verdict: " << (c.verdict ? "true" : "false") << " (condition1 "
                  << (c.condition1 ? "ok" : "fails") << ", condition2 "
                  << (c.condition2 ? "ok" : "fails") << ", coefficient " << c.nonvanishing_value
                  << " mod " << c.decisive_modulus << ")\n";
      });
    }

    if (*cmd_rs) {
      return run_congruence_report(session, maeda::ramanujan_scan(rs_nmax, rs_mod),
                                   {{"nmax", rs_nmax}, {"mod", rs_mod}});
    }

    if (*cmd_ts) {
      return run_congruence_report(session, maeda::b_congruence_scan(ts_emax, ts_nmax),
                                   {{"emax", ts_emax}, {"nmax", ts_nmax}});
    }

    if (*cmd_cache) {
      if (session.cache_dir.empty())
        throw error("cache: no cache directory (use --cache-dir or HECKELAB_CACHE)");
      json report;
      report["family"] = "cache";
      if (*cache_list) {
        json files = json::array();
        for (const auto& f : cache::list(session.cache_dir)) files.push_back(f.filename().string());
        report["files"] = files;
        return emit(session, report, 0, [&] {
          for (const auto& f : report["files"]) std::cout << f.get<std::string>() << "\n";
        });
      }
      if (*cache_verify) {
        json files = json::array();
        bool ok = true;
        for (const auto& f : cache::list(session.cache_dir)) {
          json entry;
          entry["file"] = f.filename().string();
          try {
            cache::load_file(f);
            entry["ok"] = true;
          } catch (const error& e) {
            entry["ok"] = false;
            entry["error"] = e.what();
            ok = false;
          }
          files.push_back(entry);
        }
        report["files"] = files;
        report["pass"] = ok;
        return emit(session, report, ok ? 0 : 1, [&] {
          for (const auto& f : report["files"])
            std::cout << f["file"].get<std::string>() << ": "
                      << (f["ok"].get<bool>() ? "ok" : "CORRUPT") << "\n";
        });
      }
      if (*cache_write_tau) {
        cache::CacheEntry e;
        e.kind = "tau";
        e.i = 1;
        e.n = cwt_nmax + 1;
        e.mod = 0;
        e.coeffs = modforms::tau_table(cwt_nmax);
        std::filesystem::path file = cache::store(session.cache_dir, e);
        report["written"] = file.filename().string();
        report["entries"] = e.n;
        return emit(session, report, 0,
                    [&] { std::cout << "wrote " << file.string() << "\n"; });
      }
      if (*cache_write_dp) {
        cache::CacheEntry e;
        e.kind = "delta_pow";
        e.i = cwd_i;
        e.n = cwd_precision;
        e.mod = cwd_mod;
        ModularForm f = modforms::delta_power(cwd_i, cwd_precision, ring_from_mod(cwd_mod));
        for (std::size_t idx = 0; idx < cwd_precision; ++idx) {
          if (cwd_mod == 0)
            e.coeffs.push_back(f.series.zat(idx));
          else
            e.coeffs.emplace_back(static_cast<unsigned long>(f.series.mat(idx)));
        }
        std::filesystem::path file = cache::store(session.cache_dir, e);
        report["written"] = file.filename().string();
        report["entries"] = e.n;
        return emit(session, report, 0,
                    [&] { std::cout << "wrote " << file.string() << "\n"; });
      }
    }
  } catch (const precision_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
