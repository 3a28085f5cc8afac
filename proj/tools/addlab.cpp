// addlab command-line front end: construct sets, inspect spectra, build dense
// models, count solutions, run the transference pipeline, and run suites.
//
// Exit codes: 0 success, 1 a hard assertion or verifier precondition failed,
// 2 usage or configuration error, 3 I/O error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "addlab/counting.hpp"
#include "addlab/dense_model.hpp"
#include "addlab/energy.hpp"
#include "addlab/spectral.hpp"
#include "addlab/suite.hpp"

namespace {

using namespace addlab;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

SetA load_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read set file " + path);
  return read_set(in);
}

void write_json(const std::string& path, const Json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    emit_report(path, j);
  }
}

// "k=v" items, from repeated flags or ';'-separated lists.
std::map<std::string, std::string> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--params expects key=value, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

std::string need(const std::map<std::string, std::string>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw UsageError("missing parameter '" + key + "'");
  return it->second;
}

std::uint64_t to_u64(const std::string& s) {
  std::size_t pos = 0;
  const auto v = std::stoull(s, &pos);
  if (pos != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

SetA construct_set(const std::string& kind, const std::map<std::string, std::string>& p, std::uint64_t seed) {
  if (kind == "erdos_turan_sidon") {
    std::optional<std::uint64_t> m;
    if (p.count("M")) m = to_u64(p.at("M"));
    return construct::erdos_turan_sidon(static_cast<std::uint32_t>(to_u64(need(p, "p"))), m);
  }
  if (kind == "greedy_kst_free") {
    const int s = static_cast<int>(to_u64(need(p, "s")));
    const int t = static_cast<int>(to_u64(need(p, "t")));
    if (p.count("group")) return construct::greedy_kst_free_in(make_group(GroupCtx::parse(p.at("group"))), s, t, seed);
    return construct::greedy_kst_free(s, t, to_u64(need(p, "N")), seed);
  }
  if (kind == "random_subset") {
    GroupPtr g = p.count("group") ? make_group(GroupCtx::parse(p.at("group")))
                                  : make_group(GroupCtx::cyclic(to_u64(need(p, "N"))));
    return construct::random_subset(g, std::stod(need(p, "density")), seed);
  }
  if (kind == "subspace") {
    GroupPtr g = make_group(GroupCtx::parse(need(p, "group")));
    std::vector<Index> basis;
    if (p.count("basis")) {
      std::stringstream ss(p.at("basis"));
      std::string item;
      while (std::getline(ss, item, '|')) {
        if (!item.empty()) basis.push_back(g->parse_element(item));
      }
    }
    return construct::subspace(g, basis);
  }
  if (kind == "equation_free_greedy") {
    const EquationSpec eq = EquationSpec::parse(need(p, "eq"));
    construct::EquationFreeOptions opts;
    if (p.count("s") || p.count("t")) {
      opts.kst = std::make_pair(static_cast<int>(to_u64(need(p, "s"))), static_cast<int>(to_u64(need(p, "t"))));
    }
    if (p.count("max_size")) opts.max_size = to_u64(p.at("max_size"));
    if (p.count("group")) {
      return construct::equation_free_greedy_in(eq, make_group(GroupCtx::parse(p.at("group"))), seed, opts);
    }
    return construct::equation_free_greedy(eq, to_u64(need(p, "N")), seed, opts);
  }
  throw UsageError("unknown construction '" + kind + "'");
}

Json spectrum_json(const Spectrum& spec) {
  Json j;
  j["group"] = spec.ctx->encoding();
  j["eps"] = spec.eps.str();
  j["set_size"] = spec.set_size;
  j["frequencies"] = Json::array();
  for (std::size_t i = 0; i < spec.frequencies.size(); ++i) {
    Json f;
    f["xi"] = spec.ctx->format(spec.frequencies[i]);
    f["re"] = spec.values[i].real();
    f["im"] = spec.values[i].imag();
    f["abs"] = std::abs(spec.values[i]);
    j["frequencies"].push_back(f);
  }
  return j;
}

int report_exit(bool pass) { return pass ? 0 : kExitFail; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"addlab: transference toolkit for K_{s,t}-free sets"};
  app.require_subcommand(1);

  // construct
  auto* c_cmd = app.add_subcommand("construct", "Build a test-corpus set and write it to a set file");
  std::string c_kind;
  std::vector<std::string> c_params;
  std::uint64_t c_seed = 1;
  std::string c_out = "-";
  c_cmd->add_option("kind", c_kind,
                    "erdos_turan_sidon | greedy_kst_free | random_subset | subspace | equation_free_greedy")
      ->required();
  c_cmd->add_option("--params", c_params, "key=value parameters (repeatable or ';'-separated)")->delimiter(';');
  c_cmd->add_option("--seed", c_seed, "PRNG seed");
  c_cmd->add_option("--out", c_out, "output set file ('-' for stdout)");

  // spectrum
  auto* s_cmd = app.add_subcommand("spectrum", "Large spectrum Spec(A, eps) of a set");
  std::string s_in, s_eps = "1/10", s_out = "-";
  s_cmd->add_option("--input", s_in, "set file")->required();
  s_cmd->add_option("--eps", s_eps, "threshold as p/q or decimal");
  s_cmd->add_option("--out", s_out, "JSON output ('-' for stdout)");

  // dense-model
  auto* d_cmd = app.add_subcommand("dense-model", "Build the dense model and verify its properties");
  std::string d_in, d_eps = "1/8", d_mode, d_report = "-", d_emit;
  int d_s = 2, d_t = 2;
  d_cmd->add_option("--input", d_in, "set file")->required();
  d_cmd->add_option("--s", d_s, "s");
  d_cmd->add_option("--t", d_t, "t");
  d_cmd->add_option("--eps", d_eps, "eps as p/q");
  d_cmd->add_option("--mode", d_mode, "integer | ffield (default from the group kind)");
  d_cmd->add_option("--report", d_report, "JSON report ('-' for stdout)");
  d_cmd->add_option("--emit-f", d_emit, "write f as a function file");

  // count
  auto* n_cmd = app.add_subcommand("count", "Count solutions of a translation-invariant equation in A");
  std::string n_eq, n_in, n_method = "both", n_report = "-";
  int n_s = 2;
  n_cmd->add_option("--eq", n_eq, "coefficients, e.g. 1,1,1,-1,-2")->required();
  n_cmd->add_option("--input", n_in, "set file")->required();
  n_cmd->add_option("--method", n_method, "brute | fourier | both");
  n_cmd->add_option("--s", n_s, "s for the rescaling F = N^{1/s} 1_A");
  n_cmd->add_option("--report", n_report, "JSON report ('-' for stdout)");

  // pipeline
  auto* p_cmd = app.add_subcommand("pipeline", "Run the transference pipeline and emit its ledger");
  std::string p_in, p_eq = "1,1,1,-1,-2", p_eps = "1/8", p_report = "-";
  int p_s = 2, p_t = 2;
  p_cmd->add_option("--input", p_in, "set file")->required();
  p_cmd->add_option("--eq", p_eq, "equation coefficients");
  p_cmd->add_option("--s", p_s, "s");
  p_cmd->add_option("--t", p_t, "t");
  p_cmd->add_option("--eps", p_eps, "eps as p/q");
  p_cmd->add_option("--report", p_report, "JSON report ('-' for stdout)");

  // verify
  auto* v_cmd = app.add_subcommand("verify", "Run verification suites over a seeded corpus");
  std::string v_config, v_suite, v_sizes, v_pairs, v_eqs, v_eps, v_output, v_input;
  std::optional<std::uint64_t> v_seed;
  std::optional<unsigned> v_threads;
  v_cmd->add_option("--config", v_config, "key=value config file");
  v_cmd->add_option("--suite", v_suite, "comma list of suites or 'all'");
  v_cmd->add_option("--seed", v_seed, "root seed");
  v_cmd->add_option("--sizes", v_sizes, "comma list of N");
  v_cmd->add_option("--pairs", v_pairs, "comma list of s:t");
  v_cmd->add_option("--equations", v_eqs, "';'-separated equations");
  v_cmd->add_option("--eps", v_eps, "eps as p/q");
  v_cmd->add_option("--output", v_output, "report directory");
  v_cmd->add_option("--threads", v_threads, "worker count");
  v_cmd->add_option("--input", v_input, "set file for the freeness-preconditioned verifiers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*c_cmd) {
      const SetA a = construct_set(c_kind, parse_params(c_params), c_seed);
      if (c_out == "-") {
        write_set(std::cout, a);
      } else {
        std::ofstream out(c_out);
        if (!out) throw IoError("cannot write " + c_out);
        write_set(out, a);
      }
      std::cerr << "constructed " << a.size() << " elements in " << a.ctx().encoding() << '\n';
      return 0;
    }
    if (*s_cmd) {
      const SetA a = load_set(s_in);
      write_json(s_out, spectrum_json(spectrum(a, Rational::parse(s_eps))));
      return 0;
    }
    if (*d_cmd) {
      const SetA a = load_set(d_in);
      const ModelMode mode = d_mode.empty()
                                 ? (a.ctx().is_cyclic() ? ModelMode::IntegerModel : ModelMode::FiniteField)
                                 : parse_model_mode(d_mode);
      const DenseModel m = build_dense_model(a, d_s, d_t, Rational::parse(d_eps), mode);
      VerificationReport rep = verify_model_properties(m);
      Json j = rep.to_json();
      if (m.subspace) j["S_decomposition"] = verify_S_decomposition(m.set, d_s, d_t, *m.subspace).to_json();
      write_json(d_report, j);
      if (!d_emit.empty()) {
        std::ofstream out(d_emit);
        if (!out) throw IoError("cannot write " + d_emit);
        write_dfn(out, m.f);
      }
      return report_exit(j.at("pass").get<bool>() &&
                         (!j.contains("S_decomposition") || j["S_decomposition"].at("pass").get<bool>()));
    }
    if (*n_cmd) {
      SetA a = load_set(n_in);
      const EquationSpec eq = EquationSpec::parse(n_eq);
      if (a.ctx().is_cyclic()) {
        // Integer solutions on [N] need a large enough modulus; re-embed if not.
        const std::uint64_t m = required_modulus(eq, a.interval_length());
        if (a.ctx().modulus() < m) a = a.reembedded(make_group(GroupCtx::cyclic(m)));
      }
      const Ambient ambient = a.ctx().is_cyclic() ? Ambient::IntegerModel : Ambient::Group;
      const SolutionCounts sc = count_solutions(eq, a, ambient);
      VerificationReport rep("count");
      rep.inputs()["equation"] = eq.str();
      rep.inputs()["group"] = a.ctx().encoding();
      rep.inputs()["size"] = a.size();
      rep.quantities()["solutions"] = to_json_int(sc.total);
      rep.quantities()["trivial"] = to_json_int(sc.trivial);
      rep.quantities()["all_distinct"] = to_json_int(sc.all_distinct);
      if (sc.first_nontrivial) {
        Json w = Json::array();
        for (Index x : *sc.first_nontrivial) w.push_back(a.ctx().format(x));
        rep.quantities()["first_nontrivial"] = w;
      }
      const Dfn ind = a.indicator();
      std::vector<Dfn> hs(eq.k(), ind);
      if (n_method == "brute" || n_method == "both") {
        const auto r = count_T(eq, hs, CountMethod::Brute, ambient);
        rep.quantities()["T_brute"] = r.total.real();
        rep.expect_near("T brute == exact count", r.total.real(), static_cast<double>(sc.total), 1e-9);
      }
      if (n_method == "fourier" || n_method == "both") {
        const auto r = count_T(eq, hs, CountMethod::Fourier, ambient);
        rep.quantities()["T_fourier"] = r.total.real();
        rep.expect_near("T Fourier == exact count", r.total.real(), static_cast<double>(sc.total), 1e-6);
      }
      if (n_method != "brute" && n_method != "fourier" && n_method != "both") {
        throw UsageError("--method must be brute, fourier or both");
      }
      write_json(n_report, rep.to_json());
      return report_exit(rep.pass());
    }
    if (*p_cmd) {
      const SetA a = load_set(p_in);
      const PipelineReport r =
          run_transference_pipeline(a, EquationSpec::parse(p_eq), p_s, p_t, Rational::parse(p_eps));
      write_json(p_report, r.to_json());
      return report_exit(r.pass());
    }
    if (*v_cmd) {
      SuiteConfig cfg = v_config.empty() ? SuiteConfig{} : load_suite_config(v_config);
      if (!v_suite.empty()) cfg.set("suites", v_suite);
      if (v_seed) cfg.seed = *v_seed;
      if (!v_sizes.empty()) cfg.set("sizes", v_sizes);
      if (!v_pairs.empty()) cfg.set("pairs", v_pairs);
      if (!v_eqs.empty()) cfg.set("equations", v_eqs);
      if (!v_eps.empty()) cfg.set("eps", v_eps);
      if (!v_output.empty()) cfg.set("output", v_output);
      if (v_threads) cfg.threads = *v_threads;
      if (!v_input.empty()) cfg.set("input", v_input);
      const SuiteResult r = run_suite(cfg);
      std::cout << "jobs: " << r.report.at("jobs").size() << ", failures: " << r.failures.size() << '\n';
      for (const auto& f : r.failures) std::cout << "FAIL " << f << '\n';
      for (const auto& p : r.failure_reports) std::cout << "failing report: " << p.string() << '\n';
      std::cout << "report: " << (cfg.output / "report.json").string() << '\n';
      return r.exit_code;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n' << e.witness().dump(2) << '\n';
    return kExitFail;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
