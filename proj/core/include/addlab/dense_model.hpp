#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "addlab/dfn.hpp"
#include "addlab/rational.hpp"
#include "addlab/report.hpp"
#include "addlab/set.hpp"
#include "addlab/spectral.hpp"

namespace addlab {

enum class ModelMode { IntegerModel, FiniteField };

ModelMode parse_model_mode(std::string_view text);  // "integer" | "ffield"
std::string to_string(ModelMode mode);

// f = N^{1/s} 1_A * mu_S for a smoother S: the Bohr set of Spec(A, eps) in
// the integer model, the annihilator of span Spec(A, eps) over F_q^n.
struct DenseModel {
  ModelMode mode = ModelMode::FiniteField;
  int s = 2;
  int t = 2;
  Rational eps;
  std::uint64_t n = 0;  // interval length (integer model) or |G|
  double scale = 1.0;   // N^{1/s}
  SetA set;             // A inside the model's group
  Spectrum spec;
  SetA smoother;
  std::optional<BohrSet> bohr;
  std::optional<Subspace> subspace;
  // 1_A * 1_S, the all-integer rescaling f |S| / N^{1/s}.
  std::vector<std::int64_t> counts;
  Dfn f;
  Json diagnostics;
};

// Integer model: if A's cyclic group is too small for the window
// [-eps N, N - 1 + eps N], A is re-embedded in Z_{N + 2 floor(eps N) + 1}.
// Throws PreconditionError (with the grid) if A is not K_{s,t}-free.
DenseModel build_dense_model(const SetA& a, int s, int t, const Rational& eps, ModelMode mode);

// (i) mass, (ii) Fourier gap, (iii) L^s bound through the S-chain.
VerificationReport verify_model_properties(const DenseModel& m);

// S = sum_x (1_A * 1_S)(x)^s = sum_{b in S^s} |S_b| with S_b = {x : x - b_i in A};
// rep(x - b_1, ..., x - b_s) = |S_b| - 1 for x in S_b; and
// t S <= t^2 |S|^s + |S| * sum_a (rep(a) - (t-1))_+.
// A subgroup smoother lets b_1 = 0 be fixed (translation symmetry).
VerificationReport verify_S_decomposition(const SetA& a, int s, int t, const SetA& smoother,
                                          bool smoother_is_subgroup = false);
VerificationReport verify_S_decomposition(const SetA& a, int s, int t, const Subspace& h);

}  // namespace addlab
