#include "entropic/equality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "entropic/error.hpp"
#include "entropic/io.hpp"
#include "entropic/observables.hpp"

namespace entropic {

namespace {

constexpr double kSupportFloor = 1e-12;

void require_dual(RenyiOrder alpha, RenyiOrder beta) {
  if (!is_dual_pair(alpha, beta)) fail(ErrorCode::NotDualPair, "orders are not a dual pair");
}

std::vector<std::size_t> support_of(std::span<const double> p) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > kSupportFloor) s.push_back(i);
  return s;
}

bool flat_on(std::span<const double> p, const std::vector<std::size_t>& s) {
  if (s.empty()) return false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (auto i : s) {
    lo = std::min(lo, p[i]);
    hi = std::max(hi, p[i]);
  }
  return hi / lo - 1.0 <= 1e-6;
}

CMatrix block_of(const CMatrix& w, const std::vector<std::size_t>& sy, const std::vector<std::size_t>& sx) {
  CMatrix b(sy.size(), sx.size());
  for (std::size_t r = 0; r < sy.size(); ++r)
    for (std::size_t c = 0; c < sx.size(); ++c) b(r, c) = w(sy[r], sx[c]);
  return b;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k == 0 || k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

}  // namespace

OverlapData overlap_data(const CMatrix& w) {
  OverlapData o;
  o.c = w.max_abs();
  o.mu_bound_bits = std::max(0.0, -2.0 * std::log2(o.c));
  o.inv_c2 = 1.0 / (o.c * o.c);
  o.inv_c2_is_integer = std::abs(o.inv_c2 - std::round(o.inv_c2)) <= 1e-6 * o.inv_c2;
  return o;
}

double mu_deficit(const ObservablePair& pair, std::span<const Complex> psi, RenyiOrder alpha,
                  RenyiOrder beta) {
  require_dual(alpha, beta);
  const EntropyPoint pt = entropy_pair(pair, psi, alpha, beta);
  return pt.hx + pt.hy - overlap_data(pair.matrix()).mu_bound_bits;
}

bool phase_equalizable(const CMatrix& block, double tol) {
  if (block.rows() == 0 || block.cols() == 0) return false;
  const double ref = std::abs(block(0, 0));
  for (const auto& z : block.data())
    if (std::abs(std::abs(z) - ref) > tol) return false;
  if (ref == 0.0) return true;
  // Minors through row 0 and column 0 suffice: the others are products of these.
  for (std::size_t i = 1; i < block.rows(); ++i) {
    for (std::size_t j = 1; j < block.cols(); ++j) {
      const Complex m = block(0, 0) * block(i, j) * std::conj(block(0, j)) * std::conj(block(i, 0));
      if (std::abs(std::arg(m)) > tol) return false;
    }
  }
  return true;
}

EqualityReport check_equality_state(const ObservablePair& pair, std::span<const Complex> psi,
                                    RenyiOrder alpha, RenyiOrder beta, double tol) {
  require_dual(alpha, beta);
  if (alpha.is_infinite() || beta.is_infinite() || alpha.value() == 0.5 || beta.value() == 0.5) {
    fail(ErrorCode::BoundaryOrder, "equality characterization needs 1/2 < alpha, beta < inf");
  }
  const CMatrix& w = pair.matrix();
  if (psi.size() != w.rows()) fail(ErrorCode::DimensionMismatch, "state dimension differs from W");
  const OverlapData o = overlap_data(w);
  const BornDistributions born = born_distributions(w, psi);

  EqualityReport r;
  r.alpha = alpha.value();
  r.beta = beta.value();
  r.point = {renyi(born.px, alpha), renyi(born.py, beta)};
  r.entropy_sum_bits = r.point.hx + r.point.hy;
  r.deficit = r.entropy_sum_bits - o.mu_bound_bits;
  r.supports = {support_of(born.px.values()), support_of(born.py.values())};

  const auto& sx = r.supports.sx;
  const auto& sy = r.supports.sy;
  bool ok = flat_on(born.px.values(), sx) && flat_on(born.py.values(), sy);
  if (ok) {
    const CMatrix b = block_of(w, sy, sx);
    for (const auto& z : b.data()) ok = ok && std::abs(std::abs(z) - o.c) <= 1e-8;
    ok = ok && phase_equalizable(b, 1e-8);
    ok = ok && std::abs(static_cast<double>(sx.size() * sy.size()) * o.c * o.c - 1.0) <= 1e-6;
  }
  r.structural_ok = ok;
  r.is_equality = ok && r.deficit <= tol;
  return r;
}

SupportScan find_equality_supports(const ObservablePair& pair, double tol,
                                   std::optional<std::pair<std::size_t, std::size_t>> shape) {
  const CMatrix& w = pair.matrix();
  const std::size_t d = w.rows();
  if (d > 12) fail(ErrorCode::TooLarge, "support search is limited to d <= 12");
  const OverlapData o = overlap_data(w);
  SupportScan scan;
  scan.inv_c2_is_integer = o.inv_c2_is_integer;
  if (!o.inv_c2_is_integer) return scan;
  const auto n = static_cast<std::size_t>(std::llround(o.inv_c2));

  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t a = 1; a <= d; ++a) {
    if (n % a != 0 || n / a > d) continue;
    if (shape && (shape->first != a || shape->second != n / a)) continue;
    shapes.emplace_back(a, n / a);
  }
  double total = 0.0;
  for (auto [a, b] : shapes) total += binomial(d, a) * binomial(d, b);
  if (total > 1e7) fail(ErrorCode::TooLarge, "support search exceeds 1e7 candidates");

  std::vector<char> big(d * d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) big[j * d + i] = std::abs(w(j, i)) >= o.c - tol;

  for (auto [a, b] : shapes) {
    ShapeScan s{a, b, 0, 0};
    const auto xs = subsets(d, a);
    const auto ys = subsets(d, b);
    for (const auto& sx : xs) {
      for (const auto& sy : ys) {
        ++s.candidates;
        bool dense = true;
        for (std::size_t r = 0; r < b && dense; ++r)
          for (std::size_t c = 0; c < a && dense; ++c) dense = big[sy[r] * d + sx[c]];
        if (!dense) continue;
        const CMatrix blk = block_of(w, sy, sx);
        if (!phase_equalizable(blk, tol)) continue;
        SupportHit hit;
        hit.supports = {sx, sy};
        hit.witness.assign(d, Complex(0.0, 0.0));
        const double amp = 1.0 / std::sqrt(static_cast<double>(a));
        for (std::size_t c = 0; c < a; ++c) {
          const Complex u = blk(0, c) / std::abs(blk(0, c));
          hit.witness[sx[c]] = amp * std::conj(u);
        }
        hit.report = check_equality_state(pair, hit.witness, RenyiOrder(1.0), RenyiOrder(1.0), 1e-8);
        scan.hits.push_back(std::move(hit));
        ++s.hits;
      }
    }
    scan.candidates += s.candidates;
    scan.shapes.push_back(s);
  }
  std::sort(scan.hits.begin(), scan.hits.end(),
            [](const SupportHit& x, const SupportHit& y) { return x.supports < y.supports; });
  return scan;
}

std::vector<FourierEqualityClass> fourier_equality_states(const AbelianGroup& g) {
  const ObservablePair pair = fourier_group(g);
  const double d = static_cast<double>(g.order());
  std::vector<FourierEqualityClass> out;
  for (const Subgroup& l : subgroups(g)) {
    FourierEqualityClass cls;
    cls.subgroup = l;
    cls.annihilator = annihilator(g, l);
    const double size = static_cast<double>(l.size());
    cls.point = {std::log2(size), std::log2(d / size)};
    cls.all_verified = true;
    for (std::size_t j : coset_representatives(g, l)) {
      for (std::size_t k : coset_representatives(g, cls.annihilator)) {
        CVector psi = translate_modulate(g, l, j, k);
        const auto rep = check_equality_state(pair, psi, RenyiOrder(1.0), RenyiOrder(1.0), 1e-8);
        cls.all_verified = cls.all_verified && rep.is_equality;
        cls.states.push_back(std::move(psi));
      }
    }
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<EntropyPoint> distinct_points(std::vector<EntropyPoint> points, double merge_tol) {
  std::sort(points.begin(), points.end(), [](const EntropyPoint& a, const EntropyPoint& b) {
    return a.hx != b.hx ? a.hx < b.hx : a.hy < b.hy;
  });
  std::vector<EntropyPoint> out;
  for (const auto& p : points) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const EntropyPoint& q) {
      return std::abs(p.hx - q.hx) <= merge_tol && std::abs(p.hy - q.hy) <= merge_tol;
    });
    if (!dup) out.push_back(p);
  }
  return out;
}

EqualityReport tensor_equality(const ObservablePair& w1, std::span<const Complex> psi1,
                               const ObservablePair& w2, std::span<const Complex> psi2, RenyiOrder alpha,
                               RenyiOrder beta) {
  if (psi1.size() != w1.dimension() || psi2.size() != w2.dimension()) {
    fail(ErrorCode::DimensionMismatch, "state dimension differs from W");
  }
  const ObservablePair w = tensor_product(w1, w2);
  const CVector psi = tensor_product(psi1, psi2);
  return check_equality_state(w, psi, alpha, beta, 1e-8);
}

double boundary_half_inf_deficit(const ObservablePair& pair, std::span<const Complex> psi) {
  const EntropyPoint pt = entropy_pair(pair, psi, RenyiOrder(0.5), RenyiOrder::infinity());
  return pt.hx + pt.hy - overlap_data(pair.matrix()).mu_bound_bits;
}

double berta_slack(const ObservablePair& pair, const MixedEnsemble& rho) {
  const EntropyPoint pt = entropy_pair(pair, rho, RenyiOrder(1.0), RenyiOrder(1.0));
  return pt.hx + pt.hy - overlap_data(pair.matrix()).mu_bound_bits - von_neumann(rho, pair.dimension());
}

std::vector<CVector> known_equality_states(const ObservablePair& pair) {
  std::vector<CVector> out;
  if (pair.dimension() > 12 || !overlap_data(pair.matrix()).inv_c2_is_integer) return out;
  for (auto& hit : find_equality_supports(pair).hits)
    if (hit.report.is_equality) out.push_back(std::move(hit.witness));
  return out;
}

std::string to_json(const EqualityReport& report) {
  nlohmann::ordered_json j;
  j["verdict"] = report.is_equality ? "equality" : "not_equality";
  j["deficit"] = round12(report.deficit);
  j["sX"] = report.supports.sx;
  j["sY"] = report.supports.sy;
  j["entropy_point"] = {round12(report.point.hx), round12(report.point.hy)};
  j["alpha"] = round12(report.alpha);
  j["beta"] = round12(report.beta);
  return j.dump();
}

}  // namespace entropic
