#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "addlab/group.hpp"

namespace addlab {

using Complex = std::complex<double>;

enum class Tag { Real, Complex };

// A function G -> C stored densely by element index. Immutable once built.
// Fourier tables live on the dual group, which is identified with G.
class Dfn {
 public:
  Dfn(GroupPtr ctx, Tag tag, std::vector<Complex> values);
  Dfn(GroupPtr ctx, std::span<const double> real_values);

  static Dfn zeros(GroupPtr ctx, Tag tag = Tag::Real);
  static Dfn constant(GroupPtr ctx, double value);
  static Dfn delta(GroupPtr ctx, Index at);
  static Dfn indicator(GroupPtr ctx, std::span<const Index> support);

  const GroupCtx& ctx() const { return *ctx_; }
  const GroupPtr& ctx_ptr() const { return ctx_; }
  Tag tag() const { return tag_; }
  bool is_real() const { return tag_ == Tag::Real; }
  std::size_t size() const { return values_.size(); }
  const std::vector<Complex>& values() const { return values_; }
  Complex operator[](Index x) const { return values_[x]; }
  std::vector<double> real_values() const;

  Dfn scaled(Complex c) const;
  Dfn plus(const Dfn& other) const;
  Dfn minus(const Dfn& other) const;
  // x -> h(x - c)
  Dfn translated(Index c) const;
  // x -> h(-x)
  Dfn reflected() const;
  Dfn abs() const;

 private:
  GroupPtr ctx_;
  Tag tag_;
  std::vector<Complex> values_;
};

void require_same_ctx(const Dfn& a, const Dfn& b);

// h^(xi) = sum_x h(x) conj(chi_xi(x)).
Dfn fourier(const Dfn& h);         // fast transform
Dfn fourier_direct(const Dfn& h);  // O(N^2) reference
// h(x) = (1/N) sum_xi H(xi) chi_xi(x).
Dfn inverse_fourier(const Dfn& spectrum, Tag result_tag = Tag::Complex);
Dfn inverse_fourier_direct(const Dfn& spectrum, Tag result_tag = Tag::Complex);

enum class ConvMethod { Direct, Fast };

// (h1 * h2)(x) = sum_y h1(y) h2(x - y).
Dfn convolve(const Dfn& h1, const Dfn& h2, ConvMethod method = ConvMethod::Fast);

// Physical-side quantities are plain sums; Fourier-side ones are means over
// the dual group: ||H||_p = ((1/N) sum_xi |H(xi)|^p)^{1/p}.
struct Norms {
  double p;
  double l1;
  double l2;
  double lp;
  double sup;
  double fourier_sup;
  double fourier_lp;
};

Norms norms(const Dfn& h, double p);
// sum_x |h(x)|^p
double power_sum(const Dfn& h, double p);
// (1/N) sum_xi |H(xi)|^p for a table already on the dual group.
double dual_mean_power(const Dfn& spectrum, double p);
double sup_abs(const Dfn& h);

// Text format: "ctx=<encoding> tag=<real|complex>" then one value per line
// ("re" for real, "re im" for complex), 17 significant digits.
void write_dfn(std::ostream& out, const Dfn& h);
Dfn read_dfn(std::istream& in);

}  // namespace addlab
