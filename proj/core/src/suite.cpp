#include "addlab/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <sstream>

#include "addlab/counting.hpp"
#include "addlab/dense_model.hpp"
#include "addlab/energy.hpp"
#include "addlab/parallel.hpp"
#include "addlab/rng.hpp"
#include "addlab/spectral.hpp"

namespace addlab {
namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    const auto out = std::stoull(v, &pos, 10);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a nonnegative integer, got '" + v + "'");
  }
}

// --- jobs -------------------------------------------------------------------

using Reports = std::vector<VerificationReport>;

// A job's reports plus, for pipeline jobs, the measured ledger.
struct JobData {
  JobData(Reports r) : reports(std::move(r)) {}  // NOLINT: implicit by design
  JobData(Reports r, Json l) : reports(std::move(r)), ledger(std::move(l)) {}
  Reports reports;
  std::optional<Json> ledger;
};

struct Job {
  std::string name;
  std::function<JobData(std::uint64_t seed)> run;
};

struct JobOutcome {
  Json json;
  bool pass = true;
  std::vector<std::string> failures;
  std::optional<Json> ledger;
};

std::uint32_t largest_et_prime(std::uint64_t n) {
  std::uint32_t best = 0;
  for (std::uint32_t p = 3; 2ull * p * p + p <= n; p += 2) {
    if (is_prime(p)) best = p;
  }
  return best;
}

GroupPtr ternary_space(std::uint64_t n, std::uint32_t lo, std::uint32_t hi) {
  std::uint32_t dim = lo;
  while (dim < hi && std::pow(3.0, dim + 1) <= static_cast<double>(n)) ++dim;
  return make_group(GroupCtx::vector_space(FieldCtx::prime(3), dim));
}

std::optional<GroupPtr> supersat_space(const EquationSpec& eq, std::uint64_t n) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    GroupPtr g = make_group(GroupCtx::vector_space(FieldCtx::prime(p), 1));
    try {
      eq.check_group(*g);
    } catch (const UsageError&) {
      continue;
    }
    std::uint32_t dim = 1;
    while (std::pow(static_cast<double>(p), dim + 1) <= std::min<double>(static_cast<double>(n), 243.0)) ++dim;
    return make_group(GroupCtx::vector_space(FieldCtx::prime(p), dim));
  }
  return std::nullopt;
}

std::uint64_t coprime_modulus(const EquationSpec& eq, std::uint64_t n) {
  for (std::uint64_t m = std::max<std::uint64_t>(n, 2);; ++m) {
    bool ok = true;
    for (auto a : eq.coeffs()) ok = ok && std::gcd(static_cast<std::uint64_t>(std::llabs(a)), m) == 1;
    if (ok) return m;
  }
}

Dfn random_real(GroupPtr g, SplitMix64& rng, double density, double lo, double hi) {
  std::vector<double> v(g->order(), 0.0);
  for (auto& x : v) {
    if (rng.uniform() < density) x = lo + (hi - lo) * rng.uniform();
  }
  return Dfn(std::move(g), v);
}

VerificationReport spectral_consistency(const SetA& a, const Rational& eps, std::uint64_t n) {
  VerificationReport rep("spectrum_bohr_consistency");
  rep.inputs()["group"] = a.ctx().encoding();
  rep.inputs()["size"] = a.size();
  rep.inputs()["eps"] = eps.str();
  const Spectrum fast = spectrum(a, eps);
  const Spectrum direct = spectrum_direct(a, eps);
  rep.quantities()["|Spec|"] = fast.frequencies.size();
  rep.expect_true("fast spectrum == direct scan", fast.frequencies == direct.frequencies);
  rep.expect_true("0 in Spec", fast.contains(0));
  if (a.ctx().is_cyclic()) {
    const BohrSet b = bohr_set(fast, eps, n);
    const GroupCtx& g = a.ctx();
    bool members_ok = true;
    bool symmetric = true;
    for (Index x : b.elements) {
      const std::int64_t v = g.signed_rep(x);
      members_ok = members_ok && std::llabs(v) <= static_cast<std::int64_t>(b.width);
      for (Index xi : fast.frequencies) members_ok = members_ok && torus_norm_below(v, xi, g.modulus(), eps);
      symmetric = symmetric && std::binary_search(b.elements.begin(), b.elements.end(), g.neg(x),
                                                  [&](Index p, Index q) { return g.signed_rep(p) < g.signed_rep(q); });
    }
    rep.quantities()["|B|"] = b.size();
    rep.expect_true("0 in B", std::find(b.elements.begin(), b.elements.end(), 0) != b.elements.end());
    rep.expect_true("B symmetric", symmetric);
    rep.expect_true("B members satisfy the exact torus bounds", members_ok);
    rep.ratios()["|B|/N"] = static_cast<double>(b.size()) / static_cast<double>(n);
  } else {
    const Subspace v = span(a.ctx_ptr(), fast.frequencies);
    const Subspace h = annihilator(v);
    rep.quantities()["dim V"] = v.dim();
    rep.expect_eq("dim V + dim V^perp == n", static_cast<Int128>(v.dim() + h.dim()),
                  static_cast<Int128>(a.ctx().dim()));
    rep.expect_true("(V^perp)^perp == V", annihilator(h) == v);
  }
  return rep;
}

VerificationReport count_agreement(const EquationSpec& eq, std::span<const Dfn> hs, Ambient ambient) {
  VerificationReport rep("count_T_agreement");
  rep.inputs()["equation"] = eq.str();
  rep.inputs()["group"] = hs[0].ctx().encoding();
  const CountResult brute = count_T(eq, hs, CountMethod::Brute, ambient);
  const CountResult four = count_T(eq, hs, CountMethod::Fourier, ambient);
  rep.quantities()["brute"] = brute.total.real();
  rep.quantities()["fourier"] = four.total.real();
  double scale = 1.0;
  for (const auto& h : hs) scale *= std::max(1.0, norms(h, 1.0).l1);
  rep.expect_near("brute == Fourier", four.total.real(), brute.total.real(), 1e-6,
                  1e-9 * scale / static_cast<double>(hs[0].size()));
  return rep;
}

std::vector<Job> build_jobs(const SuiteConfig& c) {
  std::vector<Job> jobs;
  auto want = [&](const std::string& s) { return std::find(c.suites.begin(), c.suites.end(), s) != c.suites.end(); };
  const Rational eps = c.eps;

  if (want("energy")) {
    for (auto n : c.sizes) {
      for (auto [s, t] : c.pairs) {
        jobs.push_back({"energy/greedy/N=" + std::to_string(n) + "/s=" + std::to_string(s) + ",t=" + std::to_string(t),
                        [=](std::uint64_t seed) {
                          const SetA a = construct::greedy_kst_free(s, t, n, seed);
                          return Reports{verify_trivial_bounds(a, 2, s), verify_trivial_bounds(a, 3, 2),
                                         verify_lemma_E2(a, 3),         verify_lemma_Es(a, s, t),
                                         verify_rA_large(a, s, t),      verify_size_bound(a, s, t),
                                         verify_vanishing(a, s, t)};
                        }});
      }
      if (const auto p = largest_et_prime(n)) {
        jobs.push_back({"energy/sidon/p=" + std::to_string(p), [=](std::uint64_t) {
                          const SetA a = construct::erdos_turan_sidon(p);
                          return Reports{verify_lemma_Es(a, 2, 2), verify_rA_large(a, 2, 2), verify_size_bound(a, 2, 2),
                                         verify_lemma_E2(a, 2)};
                        }});
      }
      jobs.push_back({"energy/random/N=" + std::to_string(n), [=](std::uint64_t seed) {
                        const SetA a = construct::random_subset(make_group(GroupCtx::cyclic(n)), 0.1, seed);
                        return Reports{verify_trivial_bounds(a, 2, 2), verify_trivial_bounds(a, 2, 3),
                                       verify_lemma_E2(a, 3), verify_rA_large(a, 2, 2), verify_size_bound(a, 2, 2)};
                      }});
    }
  }

  if (want("spectral")) {
    for (auto n : c.sizes) {
      jobs.push_back({"spectral/N=" + std::to_string(n), [=](std::uint64_t seed) {
                        SplitMix64 rng(seed);
                        const std::uint64_t m = 2 * n + 1;
                        const SetA a = construct::random_subset(make_group(GroupCtx::cyclic(n)), 0.15, rng.next())
                                           .reembedded(make_group(GroupCtx::cyclic(m)));
                        Reports out{spectral_consistency(a, eps, n)};
                        std::vector<double> pts;
                        for (int j = 0; j < 8; ++j) pts.push_back(j / 8.0);
                        std::vector<Complex> coeffs(n);
                        for (auto& z : coeffs) z = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
                        out.push_back(large_sieve_check(pts, 1.0 / 16.0, coeffs));
                        const GroupPtr g = ternary_space(n, 2, 5);
                        const SetA b = construct::random_subset(g, 0.2, rng.next());
                        out.push_back(spectral_consistency(b, eps, g->order()));
                        out.push_back(verify_spectrum_dimension(b, eps));
                        return out;
                      }});
    }
  }

  if (want("dense_model")) {
    for (auto n : c.sizes) {
      jobs.push_back({"dense_model/integer/N=" + std::to_string(n), [=](std::uint64_t seed) {
                        const SetA a = construct::greedy_kst_free(2, 2, n, seed);
                        const DenseModel m = build_dense_model(a, 2, 2, eps, ModelMode::IntegerModel);
                        return Reports{verify_model_properties(m), verify_S_decomposition(m.set, 2, 2, m.smoother)};
                      }});
      jobs.push_back({"dense_model/ffield/N=" + std::to_string(n), [=](std::uint64_t seed) {
                        const GroupPtr g = ternary_space(n, 2, 5);
                        const SetA a = construct::greedy_kst_free_in(g, 2, 2, seed);
                        const DenseModel m = build_dense_model(a, 2, 2, eps, ModelMode::FiniteField);
                        return Reports{verify_model_properties(m), verify_S_decomposition(a, 2, 2, *m.subspace)};
                      }});
    }
  }

  if (want("counting")) {
    // The 3-AP equation always joins the corpus: it admits large equation-free
    // sets, unlike equations whose coefficients split into zero-sum blocks.
    std::vector<EquationSpec> equations = c.equations;
    const EquationSpec three_ap({1, 1, -2});
    if (std::find(equations.begin(), equations.end(), three_ap) == equations.end()) equations.push_back(three_ap);
    for (auto n : c.sizes) {
      for (const auto& eq : equations) {
        const std::string tag = "/N=" + std::to_string(n) + "/eq=" + eq.str();
        jobs.push_back({"counting/equation_free" + tag, [=](std::uint64_t seed) {
                          const SetA a = construct::equation_free_greedy(eq, n, seed);
                          const int s = 2;
                          Reports out{trivial_solution_value(eq, a, s).report};
                          const Dfn ind = a.indicator();
                          std::vector<Dfn> hs(eq.k(), ind);
                          out.push_back(count_agreement(eq, hs, Ambient::IntegerModel));
                          return out;
                        }});
        jobs.push_back({"counting/random" + tag, [=](std::uint64_t seed) {
                          SplitMix64 rng(seed);
                          const GroupPtr g = make_group(GroupCtx::cyclic(coprime_modulus(eq, n)));
                          const double density = std::min(1.0, 24.0 / static_cast<double>(n));
                          std::vector<Dfn> hs;
                          for (std::size_t i = 0; i < eq.k(); ++i) hs.push_back(random_real(g, rng, density, -1.0, 1.0));
                          Reports out{count_agreement(eq, hs, Ambient::Group)};
                          if (eq.k() >= 5) {
                            const Dfn nu = random_real(g, rng, 1.0, 0.0, 1.0);
                            std::vector<Dfn> fs;
                            for (std::size_t i = 0; i < eq.k(); ++i) {
                              std::vector<double> v(g->order());
                              for (Index x = 0; x < g->order(); ++x) v[x] = nu[x].real() * (2.0 * rng.uniform() - 1.0);
                              fs.emplace_back(g, v);
                            }
                            out.push_back(verify_counting_lemma(eq, nu, fs));
                          }
                          return out;
                        }});
        if (auto g = supersat_space(eq, n)) {
          jobs.push_back({"counting/supersaturation" + tag, [=, g = *g](std::uint64_t seed) {
                            const double density = std::min(0.3, 12.0 / static_cast<double>(g->order()));
                            const SetA a0 = construct::random_subset(g, density, seed);
                            return Reports{verify_supersaturation(eq, a0)};
                          }});
        }
      }
    }
  }

  if (want("pipeline")) {
    const auto [s, t] = c.pairs.front();
    const EquationSpec eq = c.equations.front();
    for (auto n : c.sizes) {
      jobs.push_back({"pipeline/N=" + std::to_string(n), [=](std::uint64_t seed) {
                        // Equations such as (1,1,1,-1,-2) split into zero-sum blocks, so only
                        // singletons avoid their non-diagonal solutions; a plain K_{s,t}-free
                        // greedy set keeps the ledger non-degenerate.
                        const SetA a = construct::greedy_kst_free(s, t, n, seed);
                        PipelineReport p = run_transference_pipeline(a, eq, s, t, eps);
                        return JobData(std::move(p.reports), std::move(p.ledger));
                      }});
    }
  }

  if (c.input) {
    const auto path = *c.input;
    for (auto [s, t] : c.pairs) {
      jobs.push_back({"input/s=" + std::to_string(s) + ",t=" + std::to_string(t), [=](std::uint64_t) {
                        std::ifstream in(path);
                        if (!in) throw IoError("cannot read set file " + path.string());
                        const SetA a = read_set(in);
                        return Reports{verify_lemma_Es(a, s, t), verify_vanishing(a, s, t)};
                      }});
    }
  }
  return jobs;
}

JobOutcome run_job(const Job& job, std::uint64_t seed) {
  JobOutcome out;
  out.json["job"] = job.name;
  out.json["seed"] = seed;
  Json reports = Json::array();
  auto add = [&](const VerificationReport& r) {
    reports.push_back(r.to_json());
    if (!r.pass()) {
      out.pass = false;
      for (const auto& f : r.failures()) out.failures.push_back(job.name + ": " + f);
    }
  };
  try {
    JobData data = job.run(seed);
    for (const auto& r : data.reports) add(r);
    if (data.ledger) {
      out.json["ledger"] = *data.ledger;
      out.ledger = std::move(data.ledger);
    }
  } catch (const PreconditionError& e) {
    VerificationReport r("precondition");
    r.expect_true("verifier precondition holds", false, e.what());
    r.quantities()["witness"] = e.witness();
    add(r);
  } catch (const std::exception& e) {
    VerificationReport r("error");
    r.expect_true("job completed", false, e.what());
    add(r);
  }
  out.json["pass"] = out.pass;
  out.json["reports"] = std::move(reports);
  return out;
}

std::string safe_name(std::string s) {
  for (char& ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '=' && ch != '.') ch = '_';
  }
  return s;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void collect_ratios(const Json& job, std::vector<std::vector<std::string>>& rows) {
  for (const auto& r : job.at("reports")) {
    for (const auto& [name, value] : r.at("measured_ratios").items()) {
      if (!value.is_number()) continue;
      rows.push_back({job.at("job").get<std::string>(), r.at("lemma").get<std::string>(), name,
                      fmt_double(value.get<double>())});
    }
  }
}

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void SuiteConfig::set(const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in);
  const std::string value = trim(value_in);
  if (key == "suites" || key == "suite") {
    suites.clear();
    for (const auto& s : split(value, ',')) {
      if (s == "all") {
        suites = all_suites();
        break;
      }
      suites.push_back(s);
    }
  } else if (key == "seed") {
    seed = parse_u64(key, value);
  } else if (key == "sizes") {
    sizes.clear();
    for (const auto& s : split(value, ',')) sizes.push_back(parse_u64(key, s));
  } else if (key == "pairs") {
    pairs.clear();
    for (const auto& s : split(value, ',')) {
      const auto colon = s.find(':');
      if (colon == std::string::npos) throw ConfigError("config key 'pairs': expected s:t, got '" + s + "'");
      pairs.emplace_back(static_cast<int>(parse_u64(key, s.substr(0, colon))),
                         static_cast<int>(parse_u64(key, s.substr(colon + 1))));
    }
  } else if (key == "equations") {
    equations.clear();
    for (const auto& s : split(value, ';')) {
      try {
        equations.push_back(EquationSpec::parse(s));
      } catch (const UsageError& e) {
        throw ConfigError("config key 'equations': " + std::string(e.what()));
      }
    }
  } else if (key == "eps") {
    try {
      eps = Rational::parse(value);
    } catch (const UsageError& e) {
      throw ConfigError("config key 'eps': " + std::string(e.what()));
    }
  } else if (key == "output") {
    output = value;
  } else if (key == "threads") {
    threads = static_cast<unsigned>(parse_u64(key, value));
  } else if (key == "input") {
    if (value.empty()) {
      input.reset();
    } else {
      input = value;
    }
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
}

void SuiteConfig::validate() const {
  if (suites.empty()) throw ConfigError("config: the suite list is empty");
  for (const auto& s : suites) {
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) {
      throw ConfigError("config: unknown suite '" + s + "'");
    }
  }
  if (sizes.empty()) throw ConfigError("config: sizes must be nonempty");
  for (auto n : sizes) {
    if (n < 8 || n > 4096) throw ConfigError("config: sizes must lie in [8, 4096]");
  }
  if (pairs.empty()) throw ConfigError("config: pairs must be nonempty");
  for (auto [s, t] : pairs) {
    if (s < 2 || t < s || t > 6) throw ConfigError("config: pairs need 2 <= s <= t <= 6");
  }
  if (equations.empty()) throw ConfigError("config: equations must be nonempty");
  for (const auto& eq : equations) {
    if (eq.sum() != 0) throw ConfigError("config: equation " + eq.str() + " is not translation invariant over Z");
  }
  if (eps.num <= 0 || eps.num >= eps.den) throw ConfigError("config: eps must lie in (0, 1)");
}

Json SuiteConfig::to_json() const {
  Json j;
  j["suites"] = suites;
  j["seed"] = seed;
  j["sizes"] = sizes;
  Json p = Json::array();
  for (auto [s, t] : pairs) p.push_back(std::to_string(s) + ":" + std::to_string(t));
  j["pairs"] = p;
  Json e = Json::array();
  for (const auto& eq : equations) e.push_back(eq.str());
  j["equations"] = e;
  j["eps"] = eps.str();
  if (input) j["input"] = input->string();
  return j;
}

SuiteConfig parse_suite_config(std::istream& in) {
  SuiteConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eqpos = line.find('=');
    if (eqpos == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    c.set(line.substr(0, eqpos), line.substr(eqpos + 1));
  }
  return c;
}

SuiteConfig load_suite_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  return parse_suite_config(in);
}

SuiteResult run_suite(const SuiteConfig& config) {
  config.validate();
  const std::vector<Job> jobs = build_jobs(config);
  SplitMix64 root(config.seed);
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < jobs.size(); ++i) seeds.push_back(root.next());

  std::vector<JobOutcome> outcomes(jobs.size());
  const unsigned workers = config.threads > 0 ? config.threads : worker_count();
  parallel_for(jobs.size(), [&](std::size_t i) { outcomes[i] = run_job(jobs[i], seeds[i]); }, workers);

  SuiteResult result;
  Json report;
  report["tool"] = "addlab";
  report["timestamp"] = now_iso8601();
  report["config"] = config.to_json();
  Json jj = Json::array();
  std::vector<std::vector<std::string>> ratio_rows;
  std::vector<std::vector<double>> ledger_rows;
  std::filesystem::create_directories(config.output);
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto& o = outcomes[i];
    collect_ratios(o.json, ratio_rows);
    if (o.ledger) {
      const Json& l = *o.ledger;
      ledger_rows.push_back({l.at("N").get<double>(), l.at("|A|").get<double>(), l.at("delta").get<double>(),
                             l.at("eps").get<double>(), l.at("ratios").at("T(f) / N^{k-1}").get<double>(),
                             l.at("ratios").at("T(F) / N^{k-1}").get<double>(),
                             l.at("ratios").at("||g^||_inf / (eps N)").get<double>()});
    }
    if (!o.pass) {
      const auto path = config.output / "failures" / (safe_name(jobs[i].name) + ".json");
      std::filesystem::create_directories(path.parent_path());
      emit_report(path, o.json);
      result.failure_reports.push_back(path);
      for (auto& f : o.failures) result.failures.push_back(std::move(f));
    }
    jj.push_back(std::move(o.json));
  }
  report["pass"] = result.failures.empty();
  report["failures"] = result.failures;
  report["jobs"] = std::move(jj);

  emit_report(config.output / "report.json", report);
  emit_csv(config.output / "ratios.csv", {"job", "lemma", "ratio", "value"}, ratio_rows);
  std::sort(ledger_rows.begin(), ledger_rows.end());
  emit_plot_data(config.output / "pipeline_ledger.dat",
                 {"N", "size", "delta", "eps", "Tf_over_Nk1", "TF_over_Nk1", "ghat_over_epsN"}, ledger_rows);
  result.report = std::move(report);
  result.exit_code = result.failures.empty() ? 0 : 1;
  return result;
}

void emit_report(const std::filesystem::path& path, const Json& report) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report " + path.string());
  out << report.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

Json load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read report " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw IoError("malformed report " + path.string() + ": " + e.what());
  }
}

void emit_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
              const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << field(cells[i]);
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  if (!out) throw IoError("write failed for " + path.string());
}

void emit_plot_data(const std::filesystem::path& path, const std::vector<std::string>& columns,
                    const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << '#';
  for (const auto& c : columns) out << ' ' << c;
  out << '\n';
  out.precision(17);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
    out << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

Json strip_timestamps(Json report) {
  if (report.is_object()) {
    report.erase("timestamp");
    for (auto& [k, v] : report.items()) v = strip_timestamps(v);
  } else if (report.is_array()) {
    for (auto& v : report) v = strip_timestamps(v);
  }
  return report;
}

}  // namespace addlab
