#include <map>
#include <memory>
#include <mutex>

#include "addlab/dfn.hpp"
#include "addlab/error.hpp"
#include "addlab/exact.hpp"

namespace addlab {

namespace {

// Largest prime factor handled by the mixed-radix recursion; lengths with a
// bigger factor go through Bluestein instead.
constexpr std::uint64_t kMaxDirectRadix = 61;

std::uint64_t smallest_prime_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

bool smooth(std::uint64_t n) {
  while (n > 1) {
    auto p = smallest_prime_factor(n);
    if (p > kMaxDirectRadix) return false;
    n /= p;
  }
  return true;
}

// Iterative radix-2 transform, length a power of two, kernel exp(sign 2 pi i/L).
class Radix2 {
 public:
  Radix2(std::size_t length, int sign) : n_(length), roots_(length / 2) {
    for (std::size_t k = 0; k < n_ / 2; ++k) {
      auto w = unit_root(k, n_);
      roots_[k] = sign > 0 ? w : std::conj(w);
    }
  }

  void run(std::vector<Complex>& a) const {
    for (std::size_t i = 1, j = 0; i < n_; ++i) {
      std::size_t bit = n_ >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n_; len <<= 1) {
      const std::size_t step = n_ / len;
      for (std::size_t i = 0; i < n_; i += len) {
        for (std::size_t k = 0; k < len / 2; ++k) {
          Complex u = a[i + k];
          Complex v = a[i + k + len / 2] * roots_[k * step];
          a[i + k] = u + v;
          a[i + k + len / 2] = u - v;
        }
      }
    }
  }

 private:
  std::size_t n_;
  std::vector<Complex> roots_;
};

// Length-M DFT with kernel exp(sign 2 pi i jk/M): mixed radix over small prime
// factors, Bluestein's chirp-z reduction when M has a large prime factor.
class CyclicPlan {
 public:
  CyclicPlan(std::uint64_t m, int sign) : m_(m), sign_(sign) {
    roots_.resize(m_);
    for (std::uint64_t k = 0; k < m_; ++k) {
      auto w = unit_root(k, m_);
      roots_[k] = sign > 0 ? w : std::conj(w);
    }
    if (!smooth(m_)) init_bluestein();
  }

  std::vector<Complex> run(const std::vector<Complex>& in) const {
    std::vector<Complex> out(m_);
    if (m_ == 1) {
      out[0] = in[0];
      return out;
    }
    if (!chirp_.empty()) return bluestein(in);
    std::vector<Complex> scratch(m_);
    recurse(in.data(), 1, out.data(), scratch.data(), m_);
    return out;
  }

 private:
  void recurse(const Complex* in, std::uint64_t stride, Complex* out, Complex* scratch,
               std::uint64_t n) const {
    if (n == 1) {
      out[0] = in[0];
      return;
    }
    const std::uint64_t radix = smallest_prime_factor(n);
    const std::uint64_t m = n / radix;
    // Sub-transforms of the radix decimated subsequences land in scratch.
    for (std::uint64_t r = 0; r < radix; ++r) {
      recurse(in + r * stride, stride * radix, scratch + r * m, out + r * m, m);
    }
    const std::uint64_t root_stride = m_ / n;
    for (std::uint64_t k = 0; k < n; ++k) {
      const std::uint64_t km = k % m;
      Complex acc = scratch[km];
      for (std::uint64_t r = 1; r < radix; ++r) {
        acc += roots_[(r * k % n) * root_stride] * scratch[r * m + km];
      }
      out[k] = acc;
    }
  }

  void init_bluestein() {
    std::size_t len = 1;
    while (len < 2 * m_ - 1) len <<= 1;
    fft_ = std::make_unique<Radix2>(len, +1);
    ifft_ = std::make_unique<Radix2>(len, -1);
    chirp_.resize(m_);
    const std::uint64_t two_m = 2 * m_;
    for (std::uint64_t j = 0; j < m_; ++j) {
      // exp(sign pi i j^2 / M) with j^2 reduced exactly mod 2M.
      auto w = unit_root(mulmod(j, j, two_m), two_m);
      chirp_[j] = sign_ > 0 ? w : std::conj(w);
    }
    kernel_.assign(len, Complex{});
    for (std::uint64_t j = 0; j < m_; ++j) {
      kernel_[j] = std::conj(chirp_[j]);
      if (j > 0) kernel_[len - j] = std::conj(chirp_[j]);
    }
    fft_->run(kernel_);
  }

  std::vector<Complex> bluestein(const std::vector<Complex>& in) const {
    const std::size_t len = kernel_.size();
    std::vector<Complex> a(len);
    for (std::uint64_t j = 0; j < m_; ++j) a[j] = in[j] * chirp_[j];
    fft_->run(a);
    for (std::size_t i = 0; i < len; ++i) a[i] *= kernel_[i];
    ifft_->run(a);
    std::vector<Complex> out(m_);
    const double inv = 1.0 / static_cast<double>(len);
    for (std::uint64_t k = 0; k < m_; ++k) out[k] = a[k] * inv * chirp_[k];
    return out;
  }

  std::uint64_t m_;
  int sign_;
  std::vector<Complex> roots_;
  std::vector<Complex> chirp_;
  std::vector<Complex> kernel_;
  std::unique_ptr<Radix2> fft_;
  std::unique_ptr<Radix2> ifft_;
};

std::shared_ptr<const CyclicPlan> cyclic_plan(std::uint64_t m, int sign) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, int>, std::shared_ptr<const CyclicPlan>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const CyclicPlan>(m, sign);
  if (cache.size() > 64) cache.clear();
  cache.emplace(key, plan);
  return plan;
}

// F_q^n: the character factors over coordinates, so the transform is n
// passes of q-point transforms along each coordinate with a q x q table
// e_q(sign * u v).
std::vector<Complex> vector_space_transform(const GroupCtx& g, const std::vector<Complex>& in, int sign) {
  const auto& f = g.field();
  const std::uint64_t q = f.q();
  std::vector<Complex> table(q * q);
  for (std::uint64_t u = 0; u < q; ++u) {
    for (std::uint64_t v = 0; v < q; ++v) {
      auto w = unit_root(f.trace_cached(f.mul(static_cast<FieldCtx::Elem>(u), static_cast<FieldCtx::Elem>(v))), f.p());
      table[u * q + v] = sign > 0 ? w : std::conj(w);
    }
  }
  std::vector<Complex> cur(in);
  std::vector<Complex> line(q);
  const std::uint64_t n_total = g.order();
  std::uint64_t stride = 1;
  for (std::uint32_t j = 0; j < g.dim(); ++j) {
    const std::uint64_t block = stride * q;
    for (std::uint64_t base = 0; base < n_total; base += block) {
      for (std::uint64_t off = 0; off < stride; ++off) {
        const std::uint64_t start = base + off;
        for (std::uint64_t v = 0; v < q; ++v) {
          Complex acc{};
          for (std::uint64_t u = 0; u < q; ++u) acc += table[u * q + v] * cur[start + u * stride];
          line[v] = acc;
        }
        for (std::uint64_t v = 0; v < q; ++v) cur[start + v * stride] = line[v];
      }
    }
    stride = block;
  }
  return cur;
}

std::vector<Complex> fast_transform(const GroupCtx& g, const std::vector<Complex>& in, int sign) {
  if (g.is_cyclic()) return cyclic_plan(g.order(), sign)->run(in);
  return vector_space_transform(g, in, sign);
}

std::vector<Complex> direct_transform(const GroupCtx& g, const std::vector<Complex>& in, int sign) {
  const std::uint64_t n = g.order();
  std::vector<Complex> out(n);
  if (g.is_cyclic()) {
    std::vector<Complex> roots(n);
    for (std::uint64_t k = 0; k < n; ++k) roots[k] = unit_root(k, n);
    for (Index xi = 0; xi < n; ++xi) {
      Complex acc{};
      for (Index x = 0; x < n; ++x) {
        Complex w = roots[mulmod(x, xi, n)];
        acc += in[x] * (sign > 0 ? w : std::conj(w));
      }
      out[xi] = acc;
    }
    return out;
  }
  const auto p = g.field().p();
  std::vector<Complex> roots(p);
  for (std::uint64_t k = 0; k < p; ++k) roots[k] = unit_root(k, p);
  for (Index xi = 0; xi < n; ++xi) {
    Complex acc{};
    for (Index x = 0; x < n; ++x) {
      Complex w = roots[g.phase(x, xi).num];
      acc += in[x] * (sign > 0 ? w : std::conj(w));
    }
    out[xi] = acc;
  }
  return out;
}

Dfn finish_inverse(const Dfn& spectrum, std::vector<Complex> raw, Tag tag) {
  const double inv = 1.0 / static_cast<double>(spectrum.size());
  for (auto& v : raw) v *= inv;
  if (tag == Tag::Real) {
    for (auto& v : raw) v = v.real();
  }
  return Dfn(spectrum.ctx_ptr(), tag, std::move(raw));
}

}  // namespace

Dfn fourier(const Dfn& h) {
  return Dfn(h.ctx_ptr(), Tag::Complex, fast_transform(h.ctx(), h.values(), -1));
}

Dfn fourier_direct(const Dfn& h) {
  return Dfn(h.ctx_ptr(), Tag::Complex, direct_transform(h.ctx(), h.values(), -1));
}

Dfn inverse_fourier(const Dfn& spectrum, Tag result_tag) {
  return finish_inverse(spectrum, fast_transform(spectrum.ctx(), spectrum.values(), +1), result_tag);
}

Dfn inverse_fourier_direct(const Dfn& spectrum, Tag result_tag) {
  return finish_inverse(spectrum, direct_transform(spectrum.ctx(), spectrum.values(), +1), result_tag);
}

}  // namespace addlab
