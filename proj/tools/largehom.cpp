// Command-line front end: parse a ring-spec file, dispatch the requested
// check, and emit a deterministic text or JSON report.
//
// Exit codes: 0 = holds / evidence, 1 = decisive failure, 2 = usage, parse,
// or computation error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "largehom/criteria.hpp"
#include "largehom/parallel.hpp"

using json = nlohmann::json;
using namespace largehom;

namespace {

struct run_config {
  std::string command;
  std::string ring_path;
  std::string ideal_override;
  std::string module = "k";  // k | quotient
  int truncation = 6;
  std::int64_t prime_override = 0;
  std::string format = "text";
  int threads = 0;
  unsigned seed = 0;  // reserved for randomized suites; part of the schema
  bool golod_asserted = false;
};

struct instance {
  ring_spec spec;
  std::shared_ptr<quotient_ring> ring;
  ring_ideal ideal;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open ring spec: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

instance load_instance(const run_config& cfg) {
  if (cfg.ring_path.empty()) throw std::runtime_error("--ring is required");
  instance out;
  out.spec = parse_ring_spec(read_file(cfg.ring_path));
  if (cfg.prime_override != 0) out.spec.p = cfg.prime_override;
  if (!cfg.ideal_override.empty()) {
    out.spec.ideal_texts.clear();
    for (auto& t : split_top_level(cfg.ideal_override, ',')) {
      const std::string s = strip(t);
      if (!s.empty() && s != "0") out.spec.ideal_texts.push_back(s);
    }
  }
  out.ring = std::make_shared<quotient_ring>(out.spec.p, out.spec.vars,
                                             out.spec.relations());
  out.ideal = make_ideal(*out.ring, out.spec.ideal_gens());
  return out;
}

json inputs_json(const run_config& cfg, const ring_spec& spec) {
  json j;
  j["p"] = spec.p;
  j["vars"] = spec.vars;
  j["relations"] = spec.relation_texts;
  j["ideal"] = spec.ideal_texts;
  j["N"] = cfg.truncation;
  return j;
}

json verdict_json(const verdict& v, int n) {
  json j;
  j["status"] = to_string(v.status, n);
  j["rule"] = v.rule;
  if (v.witness) {
    j["witness"] = json{{"degree", v.witness->degree},
                        {"description", v.witness->description}};
  }
  j["trace"] = v.trace;
  return j;
}

json series_json(const truncated_series& s) {
  json arr = json::array();
  for (const auto& c : s.coeffs()) arr.push_back(c.str());
  return arr;
}

verdict info_verdict() {
  verdict v;
  v.status = verdict_status::inapplicable;
  v.rule = "info";
  return v;
}

verdict series_verdict(const series_check& c, int n, const std::string& rule) {
  verdict v;
  v.rule = rule;
  if (c.holds) {
    v.status = verdict_status::evidence_up_to;
  } else {
    v.status = verdict_status::fails_decisive;
    v.witness = witness_info{
        c.first_difference, "coefficients differ at degree " +
                                std::to_string(c.first_difference) + ": " +
                                c.lhs_at_difference.str() + " vs " +
                                c.rhs_at_difference.str()};
  }
  return v;
}

int exit_code_of(const verdict& v) {
  switch (v.status) {
    case verdict_status::fails_decisive: return 1;
    default: return 0;
  }
}

fd_module module_for(const run_config& cfg, const instance& in) {
  if (cfg.module == "k") return fd_module::field(*in.ring);
  if (cfg.module == "quotient") return fd_module::quotient(*in.ring, in.ideal.space);
  throw std::runtime_error("unknown --module (expected k or quotient)");
}

// ---------------------------------------------------------------------------
// Command implementations.  Each fills verdict + data and returns exit code.

struct command_result {
  verdict v;
  json data = json::object();
};

command_result run_ring_info(const run_config&, const instance& in) {
  command_result out;
  out.v = info_verdict();
  out.data["dim"] = in.ring->dim();
  out.data["graded"] = in.ring->graded();
  out.data["max_degree"] = in.ring->max_degree();
  out.data["basis"] = json::array();
  for (const auto& m : in.ring->basis()) {
    std::string s;
    for (int v = 0; v < in.ring->nvars(); ++v) {
      for (int e = 0; e < m[v]; ++e) {
        if (!s.empty()) s += "*";
        s += in.ring->vars()[v];
      }
    }
    out.data["basis"].push_back(s.empty() ? "1" : s);
  }
  out.data["groebner_size"] = static_cast<int>(in.ring->groebner().size());
  out.data["ideal_dim"] = in.ideal.dim();
  out.data["minimal_generators"] = minimal_generator_count(*in.ring, in.ideal);
  return out;
}

command_result run_koszul(const run_config&, const instance& in) {
  command_result out;
  out.v = info_verdict();
  koszul_homology h = koszul_homology_of_ring(*in.ring);
  json dims = json::array();
  for (int i = 0; i <= h.length(); ++i) dims.push_back(h.h_dim(i));
  out.data["homology_dims"] = dims;
  return out;
}

command_result run_betti(const run_config& cfg, const instance& in) {
  command_result out;
  out.v = info_verdict();
  free_resolution res = minimal_resolution(module_for(cfg, in), cfg.truncation);
  betti_table t = betti_of(res);
  out.data["betti"] = res.betti;
  json graded = json::array();
  for (int i = 0; i <= cfg.truncation; ++i) {
    json row = json::object();
    for (const auto& [j, b] : t.rows[i]) row[std::to_string(j)] = b;
    graded.push_back(row);
  }
  out.data["graded_betti"] = graded;
  return out;
}

command_result run_poincare(const run_config& cfg, const instance& in) {
  command_result out;
  out.v = info_verdict();
  out.data["coefficients"] = poincare_coeffs(module_for(cfg, in), cfg.truncation);
  return out;
}

command_result run_deviations(const run_config& cfg, const instance& in) {
  command_result out;
  out.v = info_verdict();
  out.data["deviations"] =
      deviations_from_poincare(poincare_series_of_k(*in.ring, cfg.truncation));
  return out;
}

command_result run_check_nc(const run_config&, const instance& in) {
  command_result out;
  nc_result nc = check_nc(*in.ring, in.ideal);
  out.v.rule = "nc";
  out.v.status =
      nc.holds ? verdict_status::holds_decisive : verdict_status::fails_decisive;
  if (!nc.holds)
    out.v.witness = witness_info{2, "element of (I cap m^2) \\ mI"};
  out.data["i_cap_m2_dim"] = nc.i_cap_m2_dim;
  out.data["mi_dim"] = nc.mi_dim;
  return out;
}

command_result run_check_large(const run_config& cfg, const instance& in) {
  command_result out;
  check_report rep = detect_large(*in.ring, in.ideal, cfg.truncation, cfg.golod_asserted);
  out.v = rep.result;
  out.data["open_question_profile"] = rep.open_question_profile;
  return out;
}

command_result run_check_small(const run_config& cfg, const instance& in) {
  command_result out;
  out.v = check_small(*in.ring, in.ideal, cfg.truncation).result;
  return out;
}

command_result run_check_golod_ring(const run_config& cfg, const instance& in) {
  command_result out;
  series_check c = golod_ring_check(*in.ring, cfg.truncation);
  out.v = series_verdict(c, cfg.truncation, "golod-ring-series");
  out.data["poincare"] = series_json(c.lhs);
  out.data["golod_bound"] = series_json(c.rhs);
  return out;
}

command_result run_check_golod_map(const run_config& cfg, const instance& in) {
  command_result out;
  series_check c = golod_map_check(*in.ring, in.ideal, cfg.truncation);
  out.v = series_verdict(c, cfg.truncation, "golod-map-series");
  out.data["lhs"] = series_json(c.lhs);
  out.data["rhs"] = series_json(c.rhs);
  return out;
}

command_result run_ci_report(const run_config& cfg, const instance& in) {
  command_result out;
  ci_equivalence eq = ci_equivalence_report(*in.ring, in.ideal, cfg.truncation);
  out.v.rule = "ci-base";
  out.v.status = eq.quotient_is_ci ? verdict_status::holds_decisive
                                   : verdict_status::fails_decisive;
  if (!eq.quotient_is_ci)
    out.v.witness = witness_info{-1, "all six equivalent conditions are false"};
  out.data["large_to_n"] = eq.large_to_n;
  out.data["quotient_is_ci"] = eq.quotient_is_ci;
  out.data["tor2_injective"] = eq.tor2_injective;
  out.data["tor3_surjective"] = eq.tor3_surjective;
  out.data["h1_injective"] = eq.h1_injective;
  out.data["h2_surjective"] = eq.h2_surjective;
  return out;
}

command_result run_tor_zero(const run_config& cfg, const instance& in) {
  command_result out;
  tor_zero_report rep = thm_tor_check(*in.ring, in.ideal, cfg.truncation);
  out.v.rule = "tor-zero";
  out.v.status = rep.side1_zero ? verdict_status::evidence_up_to
                                : verdict_status::fails_decisive;
  if (!rep.side1_zero)
    out.v.witness = witness_info{-1, "Tor(mI,k) -> Tor(I,k) nonzero below N"};
  out.data["side1_zero"] = rep.side1_zero;
  out.data["side2_large"] = to_string(rep.side2_large.result.status, cfg.truncation);
  out.data["side2_small"] = to_string(rep.side2_small.result.status, cfg.truncation);
  out.data["sides_agree"] = rep.agree;
  out.data["golod_map_holds"] = rep.golod_map_holds;
  return out;
}

command_result run_koszul_module(const run_config& cfg, const instance& in) {
  command_result out;
  linearity_report rep =
      linearity_defect(fd_module::quotient(*in.ring, in.ideal.space), cfg.truncation);
  out.v.rule = "koszul-module";
  out.v.status = rep.koszul_module ? verdict_status::evidence_up_to
                                   : verdict_status::fails_decisive;
  if (!rep.koszul_module)
    out.v.witness = witness_info{rep.ld, "lin-homology or off-diagonal Betti found"};
  out.data["linearity_defect"] = rep.ld;
  out.data["computed_to"] = rep.computed_to;
  out.data["koszul_module"] = rep.koszul_module;
  out.data["lin_homology_dims"] = rep.lin_h_dims;
  return out;
}

// Bundled fixtures with their documented verdicts.
command_result run_paper_examples(const run_config& cfg, const instance*) {
  struct fixture {
    std::string name;
    std::string ring;
    std::string ideal;
    verdict_status expected;
  };
  const std::vector<fixture> fixtures = {
      {"three-exterior-ci/x+y+z", "p = 5\nvars = x, y, z\nrelations = x^2, y^2, z^2\n",
       "x + y + z", verdict_status::fails_decisive},
      {"almost-square-zero/x",
       "p = 5\nvars = x, y, z\nrelations = x^2, x*y, x*z, y^2, z^2\n", "x",
       verdict_status::holds_decisive},
      {"square-zero-power/x", "p = 5\nvars = x, y\nrelations = x^2, x*y, y^2\n", "x",
       verdict_status::holds_decisive},
      {"cube-power/x+2y", "p = 3\nvars = x, y\nrelations = x^3, x^2*y, x*y^2, y^3\n",
       "x + 2y", verdict_status::holds_decisive},
      {"fiber-product/x",
       "p = 5\nvars = x, y, z\nrelations = x*y, x*z, x^3, y^2, z^2, y*z\n", "x",
       verdict_status::holds_decisive},
      {"gorenstein-socle-cube/x", "p = 5\nvars = x, y\nrelations = x^2 - y^2, x*y\n",
       "x", verdict_status::holds_decisive},
  };
  command_result out;
  bool all_ok = true;
  json results = json::array();
  for (const auto& f : fixtures) {
    quotient_ring r = make_ring(parse_ring_spec(f.ring));
    ring_ideal i =
        make_ideal(r, std::vector<polynomial>{parse_polynomial(f.ideal, r.p(), r.vars())});
    check_report rep = detect_large(r, i, cfg.truncation);
    const bool ok = rep.result.status == f.expected;
    all_ok = all_ok && ok;
    results.push_back(json{{"name", f.name},
                           {"status", to_string(rep.result.status, cfg.truncation)},
                           {"rule", rep.result.rule},
                           {"ok", ok}});
  }
  out.v.rule = "paper-examples";
  out.v.status =
      all_ok ? verdict_status::holds_decisive : verdict_status::fails_decisive;
  out.data["fixtures"] = results;
  return out;
}

void print_text(const run_config& cfg, const ring_spec& spec, const command_result& res) {
  std::cout << cfg.command << ": " << to_string(res.v.status, cfg.truncation);
  if (!res.v.rule.empty()) std::cout << " [" << res.v.rule << "]";
  std::cout << "\n";
  if (res.v.witness)
    std::cout << "  witness (degree " << res.v.witness->degree
              << "): " << res.v.witness->description << "\n";
  for (const auto& t : res.v.trace) std::cout << "  " << t << "\n";
  if (!res.data.empty()) std::cout << res.data.dump(2) << "\n";
  (void)spec;
}

int dispatch(const run_config& cfg) {
  command_result res;
  ring_spec spec;
  if (cfg.command == "paper-examples") {
    res = run_paper_examples(cfg, nullptr);
  } else {
    instance in = load_instance(cfg);
    spec = in.spec;
    if (cfg.command == "ring-info") res = run_ring_info(cfg, in);
    else if (cfg.command == "koszul") res = run_koszul(cfg, in);
    else if (cfg.command == "betti") res = run_betti(cfg, in);
    else if (cfg.command == "poincare") res = run_poincare(cfg, in);
    else if (cfg.command == "deviations") res = run_deviations(cfg, in);
    else if (cfg.command == "check-nc") res = run_check_nc(cfg, in);
    else if (cfg.command == "check-large") res = run_check_large(cfg, in);
    else if (cfg.command == "check-small") res = run_check_small(cfg, in);
    else if (cfg.command == "check-golod-ring") res = run_check_golod_ring(cfg, in);
    else if (cfg.command == "check-golod-map") res = run_check_golod_map(cfg, in);
    else if (cfg.command == "ci-report") res = run_ci_report(cfg, in);
    else if (cfg.command == "tor-zero") res = run_tor_zero(cfg, in);
    else if (cfg.command == "koszul-module") res = run_koszul_module(cfg, in);
    else throw std::runtime_error("unknown command: " + cfg.command);
  }

  if (cfg.format == "json") {
    json report;
    report["command"] = cfg.command;
    report["inputs"] = inputs_json(cfg, spec);
    report["verdict"] = verdict_json(res.v, cfg.truncation);
    report["data"] = res.data;
    std::cout << report.dump(2) << "\n";
  } else {
    print_text(cfg, spec, res);
  }
  return exit_code_of(res.v);
}

std::string error_name(const std::exception& e) {
  if (dynamic_cast<const not_prime_error*>(&e)) return "NotPrime";
  if (dynamic_cast<const not_artinian_error*>(&e)) return "NotArtinian";
  if (dynamic_cast<const non_homogeneous_error*>(&e)) return "NonHomogeneous";
  if (dynamic_cast<const not_graded_error*>(&e)) return "NotGraded";
  if (dynamic_cast<const nc_violation_error*>(&e)) return "NCViolation";
  if (dynamic_cast<const not_power_ideal_error*>(&e)) return "NotPowerRing";
  if (dynamic_cast<const non_unit_constant_term*>(&e)) return "NonUnitConstantTerm";
  if (dynamic_cast<const inconsistent_series*>(&e)) return "InconsistentSeries";
  if (dynamic_cast<const internal_inconsistency*>(&e)) return "InternalInconsistency";
  if (dynamic_cast<const lift_failure*>(&e)) return "LiftFailure";
  if (dynamic_cast<const dimension_mismatch*>(&e)) return "DimensionMismatch";
  return "Error";
}

}  // namespace

int main(int argc, char** argv) {
  run_config cfg;
  CLI::App app{"Exact-arithmetic toolkit for large/small/Golod homomorphism "
               "criteria over Artinian graded algebras"};
  app.require_subcommand(1);

  const std::vector<std::string> commands = {
      "ring-info",  "koszul",           "betti",          "poincare",
      "deviations", "check-nc",         "check-large",    "check-small",
      "check-golod-ring", "check-golod-map", "ci-report", "tor-zero",
      "koszul-module", "paper-examples"};
  for (const auto& name : commands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--ring", cfg.ring_path, "path to a ring-spec file");
    sub->add_option("--ideal", cfg.ideal_override,
                    "inline ideal generators (overrides the spec file)");
    sub->add_option("--module", cfg.module, "module to resolve: k or quotient");
    sub->add_option("-N,--truncation", cfg.truncation, "homological truncation")
        ->check(CLI::PositiveNumber);
    sub->add_option("--prime", cfg.prime_override, "override the spec's prime");
    sub->add_option("--format", cfg.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--threads", cfg.threads, "worker thread bound");
    sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    sub->add_flag("--golod-asserted", cfg.golod_asserted,
                  "caller asserts the base ring is Golod");
    sub->callback([&cfg, name]() { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help/message
    return 2;
  }
  if (cfg.threads > 0) set_thread_budget(cfg.threads);

  try {
    return dispatch(cfg);
  } catch (const std::exception& e) {
    if (cfg.format == "json") {
      json err;
      err["command"] = cfg.command;
      err["error"] = json{{"name", error_name(e)}, {"message", e.what()}};
      std::cout << err.dump(2) << "\n";
    } else {
      std::cerr << "error [" << error_name(e) << "]: " << e.what() << "\n";
    }
    return 2;
  }
}
