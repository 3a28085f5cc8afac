#include "addlab/set.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "addlab/error.hpp"

namespace addlab {

SetA::SetA(GroupPtr ctx, std::vector<Index> elements, Provenance provenance,
           std::optional<std::uint64_t> modeled_length)
    : ctx_(std::move(ctx)),
      elements_(std::move(elements)),
      provenance_(std::move(provenance)),
      modeled_length_(modeled_length) {
  if (!ctx_) throw UsageError("set without a group");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  bits_.assign((ctx_->order() + 63) / 64, 0);
  for (auto x : elements_) {
    if (x >= ctx_->order()) throw UsageError("set element " + std::to_string(x) + " outside the group");
    bits_[x >> 6] |= std::uint64_t{1} << (x & 63);
  }
  if (modeled_length_) {
    if (!ctx_->is_cyclic()) throw UsageError("modeled interval length applies to cyclic groups only");
    if (!elements_.empty() && elements_.back() >= *modeled_length_) {
      throw UsageError("set element outside the modeled interval [0, N)");
    }
  }
}

Dfn SetA::indicator() const { return Dfn::indicator(ctx_, elements_); }

SetA SetA::negated() const {
  std::vector<Index> neg;
  neg.reserve(elements_.size());
  for (auto x : elements_) neg.push_back(ctx_->neg(x));
  Provenance p = provenance_;
  p.construction = "negated(" + p.construction + ")";
  return SetA(ctx_, std::move(neg), std::move(p));
}

SetA SetA::reembedded(GroupPtr cyclic_ctx) const {
  if (!ctx_->is_cyclic() || !cyclic_ctx->is_cyclic()) throw UsageError("re-embedding needs cyclic groups");
  return SetA(std::move(cyclic_ctx), elements_, provenance_, interval_length());
}

SetA SetA::with_provenance(Provenance p) const { return SetA(ctx_, elements_, std::move(p), modeled_length_); }

std::vector<std::int64_t> rep_diff_counts(const SetA& a) {
  const auto& g = a.ctx();
  std::vector<std::int64_t> r(g.order(), 0);
  for (auto x : a.elements()) {
    for (auto y : a.elements()) ++r[g.sub(x, y)];
  }
  return r;
}

Dfn rep_diff(const SetA& a) {
  auto counts = rep_diff_counts(a);
  std::vector<Complex> v(counts.begin(), counts.end());
  return Dfn(a.ctx_ptr(), Tag::Real, std::move(v));
}

std::vector<Index> admissible_shifts(const SetA& a, std::span<const Index> tuple) {
  if (tuple.empty()) throw UsageError("empty tuple");
  for (auto x : tuple) {
    if (!a.contains(x)) throw UsageError("tuple element " + a.ctx().format(x) + " is not in A");
  }
  const auto& g = a.ctx();
  std::vector<Index> out;
  // a_1 - d must be in A, so d ranges over a_1 - A.
  for (auto b : a.elements()) {
    Index d = g.sub(tuple[0], b);
    if (d == 0) continue;
    bool ok = true;
    for (std::size_t i = 1; i < tuple.size() && ok; ++i) ok = a.contains(g.sub(tuple[i], d));
    if (ok) out.push_back(d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t rep_tuple(const SetA& a, std::span<const Index> tuple) {
  return admissible_shifts(a, tuple).size();
}

namespace {

// Calls visit(tuple) on every strictly increasing s-tuple of elems until it
// returns true; reports whether it did.
template <typename Visit>
bool for_each_subset(std::span<const Index> elems, int s, Visit&& visit) {
  const int n = static_cast<int>(elems.size());
  if (s > n || s <= 0) return false;
  std::vector<int> idx(s);
  for (int i = 0; i < s; ++i) idx[i] = i;
  std::vector<Index> tuple(s);
  while (true) {
    for (int i = 0; i < s; ++i) tuple[i] = elems[idx[i]];
    if (visit(std::span<const Index>(tuple))) return true;
    int i = s - 1;
    while (i >= 0 && idx[i] == n - s + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void check_st(int s, int t) {
  if (s < 2 || t < s) throw UsageError("need 2 <= s <= t");
}

}  // namespace

std::optional<GridWitness> find_kst_grid(const SetA& a, int s, int t) {
  check_st(s, t);
  std::optional<GridWitness> found;
  const auto& g = a.ctx();
  for_each_subset(a.elements(), s, [&](std::span<const Index> tuple) {
    auto shifts = admissible_shifts(a, tuple);
    if (shifts.size() + 1 < static_cast<std::size_t>(t)) return false;
    GridWitness w;
    w.b.assign(tuple.begin(), tuple.end());
    w.c.push_back(0);
    for (int j = 0; j + 1 < t; ++j) w.c.push_back(g.neg(shifts[j]));
    found = std::move(w);
    return true;
  });
  return found;
}

bool is_kst_free(const SetA& a, int s, int t) { return !find_kst_grid(a, s, t).has_value(); }

bool is_grid_witness(const SetA& a, const GridWitness& w, int s, int t) {
  auto distinct = [](std::vector<Index> v) {
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) == v.end();
  };
  if (w.b.size() != static_cast<std::size_t>(s) || w.c.size() != static_cast<std::size_t>(t)) return false;
  if (!distinct(w.b) || !distinct(w.c)) return false;
  for (auto x : w.b) {
    for (auto y : w.c) {
      if (!a.contains(a.ctx().add(x, y))) return false;
    }
  }
  return true;
}

bool creates_kst_grid(const GroupCtx& g, const std::vector<char>& member, std::span<const Index> elements,
                      Index x, int s, int t) {
  // member/elements describe A without x.
  auto in_a = [&](Index y) { return y == x || member[y]; };
  bool hit = for_each_subset(elements, s - 1, [&](std::span<const Index> rest) {
    // Tuple (x, rest...). Shifts d with x - d and rest_i - d all in A + x.
    std::size_t count = 0;
    auto try_d = [&](Index d) {
      if (d == 0) return;
      for (auto r : rest) {
        if (!in_a(g.sub(r, d))) return;
      }
      ++count;
    };
    for (auto b : elements) try_d(g.sub(x, b));
    return count + 1 >= static_cast<std::size_t>(t);
  });
  return hit;
}

nlohmann::ordered_json witness_json(const GroupCtx& g, const GridWitness& w) {
  nlohmann::ordered_json j;
  j["B"] = nlohmann::ordered_json::array();
  j["C"] = nlohmann::ordered_json::array();
  for (auto x : w.b) j["B"].push_back(g.format(x));
  for (auto y : w.c) j["C"].push_back(g.format(y));
  return j;
}

void write_set(std::ostream& out, const SetA& a) {
  out << "ctx=" << a.ctx().encoding();
  if (a.modeled_length()) out << " interval=" << *a.modeled_length();
  out << '\n';
  for (auto x : a.elements()) out << a.ctx().format(x) << '\n';
  if (!out) throw IoError("failed writing set");
}

SetA read_set(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw IoError("empty set stream");
  if (header.rfind("ctx=", 0) != 0) throw UsageError("set file must start with ctx=");
  std::string enc = header.substr(4);
  std::optional<std::uint64_t> interval;
  if (auto sp = enc.find(' '); sp != std::string::npos) {
    std::string rest = enc.substr(sp + 1);
    enc = enc.substr(0, sp);
    if (rest.rfind("interval=", 0) == 0) interval = std::stoull(rest.substr(9));
  }
  auto ctx = make_group(GroupCtx::parse(enc));
  std::vector<Index> elems;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    elems.push_back(ctx->parse_element(line));
  }
  return SetA(std::move(ctx), std::move(elems), Provenance{"file", "", 0}, interval);
}

}  // namespace addlab
