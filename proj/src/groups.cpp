#include "entropic/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "entropic/error.hpp"

namespace entropic {

bool Subgroup::contains(std::size_t code) const {
  return std::binary_search(elements.begin(), elements.end(), code);
}

AbelianGroup::AbelianGroup(std::vector<std::size_t> orders) : orders_(std::move(orders)) {
  if (orders_.empty()) fail(ErrorCode::BadDimension, "group needs at least one cyclic factor");
  for (std::size_t n : orders_) {
    if (n < 2) fail(ErrorCode::BadDimension, "cyclic factor orders must be >= 2");
    order_ *= n;
    if (order_ > kMaxDimension) fail(ErrorCode::BadDimension, "group order exceeds 64");
    lcm_ = std::lcm(lcm_, n);
  }
  strides_.assign(orders_.size(), 1);
  for (std::size_t r = orders_.size() - 1; r > 0; --r) strides_[r - 1] = strides_[r] * orders_[r];
}

std::size_t AbelianGroup::encode(const GroupElement& j) const {
  if (j.size() != orders_.size()) fail(ErrorCode::BadElement, "element has wrong number of components");
  std::size_t code = 0;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (j[r] >= orders_[r]) fail(ErrorCode::BadElement, "residue out of range");
    code += j[r] * strides_[r];
  }
  return code;
}

GroupElement AbelianGroup::decode(std::size_t code) const {
  if (code >= order_) fail(ErrorCode::BadElement, "element code out of range");
  GroupElement j(orders_.size());
  for (std::size_t r = 0; r < orders_.size(); ++r) {
    j[r] = code / strides_[r];
    code %= strides_[r];
  }
  return j;
}

std::size_t AbelianGroup::add(std::size_t a, std::size_t b) const {
  std::size_t code = 0;
  for (std::size_t r = 0; r < orders_.size(); ++r) {
    const std::size_t ar = (a / strides_[r]) % orders_[r];
    const std::size_t br = (b / strides_[r]) % orders_[r];
    code += ((ar + br) % orders_[r]) * strides_[r];
  }
  return code;
}

std::size_t AbelianGroup::negate(std::size_t a) const {
  std::size_t code = 0;
  for (std::size_t r = 0; r < orders_.size(); ++r) {
    const std::size_t ar = (a / strides_[r]) % orders_[r];
    code += ((orders_[r] - ar) % orders_[r]) * strides_[r];
  }
  return code;
}

double AbelianGroup::pairing_turns(std::size_t j, std::size_t k) const {
  // Accumulate in units of 1/lcm so the phase is exact.
  std::size_t units = 0;
  for (std::size_t r = 0; r < orders_.size(); ++r) {
    const std::size_t jr = (j / strides_[r]) % orders_[r];
    const std::size_t kr = (k / strides_[r]) % orders_[r];
    units += ((jr * kr) % orders_[r]) * (lcm_ / orders_[r]);
  }
  return static_cast<double>(units % lcm_) / static_cast<double>(lcm_);
}

bool AbelianGroup::pairs_trivially(std::size_t j, std::size_t k) const {
  return pairing_turns(j, k) == 0.0;
}

Subgroup AbelianGroup::closure(const Subgroup& base, std::size_t generator) const {
  std::vector<bool> in(order_, false);
  std::vector<std::size_t> members;
  for (std::size_t e : base.elements) {
    if (!in[e]) {
      in[e] = true;
      members.push_back(e);
    }
  }
  if (!in[0]) {
    in[0] = true;
    members.push_back(0);
  }
  // base + <generator> is a subgroup when base is one.
  std::vector<std::size_t> frontier = members;
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t e : frontier) {
      const std::size_t s = add(e, generator);
      if (!in[s]) {
        in[s] = true;
        members.push_back(s);
        next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  std::sort(members.begin(), members.end());
  return Subgroup{std::move(members)};
}

bool AbelianGroup::is_subgroup(const Subgroup& s) const {
  if (s.elements.empty() || !std::is_sorted(s.elements.begin(), s.elements.end())) return false;
  if (std::adjacent_find(s.elements.begin(), s.elements.end()) != s.elements.end()) return false;
  if (s.elements.back() >= order_ || !s.contains(0)) return false;
  for (std::size_t a : s.elements) {
    if (!s.contains(negate(a))) return false;
    for (std::size_t b : s.elements)
      if (!s.contains(add(a, b))) return false;
  }
  return true;
}

Subgroup AbelianGroup::whole() const {
  Subgroup s;
  s.elements.resize(order_);
  std::iota(s.elements.begin(), s.elements.end(), 0);
  return s;
}

Complex bicharacter(const AbelianGroup& g, const GroupElement& j, const GroupElement& k) {
  const double turns = g.pairing_turns(g.encode(j), g.encode(k));
  return turn_phase(turns);
}

std::vector<Subgroup> subgroups(const AbelianGroup& g) {
  // Start from the cyclic subgroups and extend by one generator at a time
  // until no new subgroup appears; every subgroup is reached this way.
  std::set<Subgroup> found;
  std::vector<Subgroup> pending;
  const Subgroup trivial = g.trivial_subgroup();
  found.insert(trivial);
  pending.push_back(trivial);
  for (std::size_t e = 1; e < g.order(); ++e) {
    Subgroup c = g.closure(trivial, e);
    if (found.insert(c).second) pending.push_back(std::move(c));
  }
  while (!pending.empty()) {
    const Subgroup s = std::move(pending.back());
    pending.pop_back();
    for (std::size_t e = 0; e < g.order(); ++e) {
      if (s.contains(e)) continue;
      Subgroup t = g.closure(s, e);
      if (found.insert(t).second) pending.push_back(std::move(t));
    }
  }
  std::vector<Subgroup> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const Subgroup& a, const Subgroup& b) { return a.size() < b.size(); });
  return out;
}

Subgroup annihilator(const AbelianGroup& g, const Subgroup& l) {
  if (!g.is_subgroup(l)) fail(ErrorCode::NotSubgroup, "annihilator needs a subgroup");
  Subgroup out;
  for (std::size_t k = 0; k < g.order(); ++k) {
    const bool trivial = std::all_of(l.elements.begin(), l.elements.end(),
                                     [&](std::size_t j) { return g.pairs_trivially(j, k); });
    if (trivial) out.elements.push_back(k);
  }
  return out;
}

CVector indicator_state(const AbelianGroup& g, const Subgroup& l) {
  if (!g.is_subgroup(l)) fail(ErrorCode::NotSubgroup, "indicator_state needs a subgroup");
  CVector chi(g.order(), 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(l.size()));
  for (std::size_t j : l.elements) chi[j] = amp;
  return chi;
}

CVector translate_modulate(const AbelianGroup& g, const Subgroup& l, std::size_t j, std::size_t k) {
  if (!g.is_subgroup(l)) fail(ErrorCode::NotSubgroup, "translate_modulate needs a subgroup");
  if (j >= g.order() || k >= g.order()) fail(ErrorCode::BadElement, "element code out of range");
  CVector chi(g.order(), 0.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(l.size()));
  for (std::size_t jp = 0; jp < g.order(); ++jp) {
    if (l.contains(g.subtract(jp, j))) {
      chi[jp] = amp * turn_phase(g.pairing_turns(jp, k));
    }
  }
  return chi;
}

std::vector<std::size_t> coset_representatives(const AbelianGroup& g, const Subgroup& l) {
  std::vector<bool> covered(g.order(), false);
  std::vector<std::size_t> reps;
  for (std::size_t e = 0; e < g.order(); ++e) {
    if (covered[e]) continue;
    reps.push_back(e);
    for (std::size_t m : l.elements) covered[g.add(e, m)] = true;
  }
  return reps;
}

}  // namespace entropic
