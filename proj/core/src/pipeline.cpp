#include <cmath>

#include "addlab/counting.hpp"
#include "addlab/dense_model.hpp"
#include "addlab/energy.hpp"

namespace addlab {
namespace {

Json cjson(Complex c) {
  if (std::abs(c.imag()) <= 1e-9 * std::max(1.0, std::abs(c.real()))) return c.real();
  return Json::array({c.real(), c.imag()});
}

}  // namespace

bool PipelineReport::pass() const {
  for (const auto& r : reports) {
    if (!r.pass()) return false;
  }
  return true;
}

Json PipelineReport::to_json() const {
  Json j;
  j["pipeline"] = "transference";
  j["pass"] = pass();
  j["inputs"] = inputs;
  j["ledger"] = ledger;
  j["reports"] = Json::array();
  for (const auto& r : reports) j["reports"].push_back(r.to_json());
  return j;
}

PipelineReport run_transference_pipeline(const SetA& a_in, const EquationSpec& eq, int s, int t, const Rational& eps) {
  if (a_in.empty()) throw UsageError("pipeline needs a nonempty set");
  const GroupCtx& g0 = a_in.ctx();
  eq.check_group(g0);
  const bool integer = g0.is_cyclic();
  const std::uint64_t n = a_in.interval_length();
  const std::size_t k = eq.k();

  // Integer setting: pad Z_M so that both the Bohr window [-eps N, N - 1 + eps N]
  // and the equation's integer solutions on it embed without wraparound.
  SetA a = a_in;
  if (integer) {
    const auto w = static_cast<std::uint64_t>(static_cast<Int128>(eps.num) * n / eps.den);
    const std::uint64_t window = n + 2 * w + 1;
    const std::uint64_t m = required_modulus(eq, window);
    if (g0.modulus() != m) a = a_in.reembedded(make_group(GroupCtx::cyclic(m)));
  }
  require_kst_free(a, s, t);

  PipelineReport out;
  out.inputs["group"] = a.ctx().encoding();
  out.inputs["N"] = n;
  out.inputs["|A|"] = a.size();
  out.inputs["construction"] = a.provenance().construction;
  out.inputs["params"] = a.provenance().params;
  out.inputs["seed"] = a.provenance().seed;
  out.inputs["equation"] = eq.str();
  out.inputs["s"] = s;
  out.inputs["t"] = t;
  out.inputs["eps"] = eps.str();

  out.reports.push_back(verify_lemma_Es(a, s, t));
  out.reports.push_back(verify_vanishing(a, s, t));
  out.reports.push_back(verify_rA_large(a, s, t));
  out.reports.push_back(verify_size_bound(a, s, t));

  const ModelMode mode = integer ? ModelMode::IntegerModel : ModelMode::FiniteField;
  const DenseModel model = build_dense_model(a, s, t, eps, mode);
  out.reports.push_back(verify_model_properties(model));
  if (model.subspace) {
    out.reports.push_back(verify_S_decomposition(a, s, t, *model.subspace));
  } else {
    out.reports.push_back(verify_S_decomposition(a, s, t, model.smoother));
  }

  const Ambient ambient = integer ? Ambient::IntegerModel : Ambient::Group;
  const double nd = static_cast<double>(n);
  const double scale = std::pow(nd, 1.0 / s);
  const Dfn big_f = a.indicator().scaled(scale);
  const Dfn& f = model.f;
  const double delta = scale * static_cast<double>(a.size()) / nd;  // sum F = delta N

  // Solutions of eq in A^k and T(F) two ways.
  const SolutionCounts sc = count_solutions(eq, a, ambient);
  std::vector<Dfn> fam(k, big_f);
  const CountResult tf_brute = count_T(eq, fam, CountMethod::Brute, ambient);
  const CountResult tf_fourier = count_T(eq, fam, CountMethod::Fourier, ambient);
  VerificationReport tfr("T(F)");
  tfr.inputs()["equation"] = eq.str();
  tfr.quantities()["solutions"] = to_json_int(sc.total);
  tfr.quantities()["nontrivial_solutions"] = to_json_int(sc.nontrivial());
  tfr.quantities()["all_distinct_solutions"] = to_json_int(sc.all_distinct);
  const double nks = std::pow(nd, static_cast<double>(k) / s);
  tfr.expect_near("T(F) brute == N^{k/s} #solutions", tf_brute.total.real(), nks * static_cast<double>(sc.total),
                  1e-8);
  tfr.expect_near("T(F) brute == Fourier", tf_fourier.total.real(), tf_brute.total.real(), 1e-8,
                  1e-9 * nks * static_cast<double>(a.size()));
  const bool equation_free = !sc.first_nontrivial.has_value();
  if (equation_free) {
    tfr.expect_near("T(F) == N^{k/s} |A| == delta N^{1+(k-1)/s}", tf_brute.total.real(),
                    nks * static_cast<double>(a.size()), 1e-8);
  } else {
    tfr.flag("set has nontrivial solutions; T(F) exceeds the diagonal value");
    Json w = Json::array();
    for (Index x : *sc.first_nontrivial) w.push_back(a.ctx().format(x));
    tfr.quantities()["first_nontrivial_solution"] = w;
  }
  out.reports.push_back(tfr);

  // T(f), the telescoping identity and the transference bound.
  std::vector<Dfn> ffam(k, f);
  const CountResult t_small = count_T(eq, ffam, CountMethod::Fourier, ambient);
  out.reports.push_back(verify_telescoping(eq, f, big_f));
  const Dfn gdiff = f.minus(big_f);
  const double ghat = sup_abs(fourier(gdiff));

  // Level set of the dense model.
  auto [a0, lsr] = level_set_extract(f, delta, static_cast<double>(s), n);
  out.reports.push_back(lsr);

  double sum_nu = 0.0;
  for (Index x = 0; x < f.size(); ++x) sum_nu += std::abs(f[x]) + std::abs(big_f[x]);

  Json& l = out.ledger;
  l["N"] = n;
  l["M"] = a.ctx().order();
  l["|A|"] = a.size();
  l["delta"] = delta;
  l["eps"] = eps.value();
  l["k"] = k;
  l["spec_size"] = model.spec.frequencies.size();
  l["smoother_size"] = model.smoother.size();
  l["T(f)"] = cjson(t_small.total);
  l["T(F)"] = tf_brute.total.real();
  l["diagonal_value"] = delta * std::pow(nd, 1.0 + static_cast<double>(k - 1) / s);
  l["|T(f) - T(F)|"] = std::abs(t_small.total - tf_brute.total);
  l["||g^||_inf"] = ghat;
  l["sum nu"] = sum_nu;
  l["sum f^s / N"] = power_sum(f, s) / nd;
  l["|A_0|"] = a0.size();
  l["equation_free"] = equation_free;
  l["ratios"]["||g^||_inf / (eps N)"] = ghat / (eps.value() * nd);
  l["ratios"]["|T(f)-T(F)| / (N^{k-2} ||g^||_inf)"] =
      ghat > 0 ? std::abs(t_small.total - tf_brute.total) / (std::pow(nd, static_cast<double>(k) - 2.0) * ghat) : 0.0;
  l["ratios"]["T(f) / N^{k-1}"] = t_small.total.real() / std::pow(nd, static_cast<double>(k) - 1.0);
  l["ratios"]["T(F) / N^{k-1}"] = tf_brute.total.real() / std::pow(nd, static_cast<double>(k) - 1.0);
  l["ratios"]["sum nu / N"] = sum_nu / nd;
  l["ratios"]["eps / delta"] = eps.value() / delta;
  return out;
}

}  // namespace addlab
