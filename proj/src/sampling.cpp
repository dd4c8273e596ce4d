#include "entropic/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "entropic/error.hpp"

namespace entropic {

SamplingStrategy SamplingStrategy::basis_mix(double t) {
  if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::ParseError, "basis-mix parameter must lie in [0,1]");
  return {Kind::BasisMix, t};
}

SamplingStrategy SamplingStrategy::parse(std::string_view text) {
  if (text == "haar") return haar();
  if (text == "real") return real();
  if (text == "rrs") return rrs();
  if (text == "basis-mix" || text == "basis_mix") return basis_mix(0.5);
  for (std::string_view prefix : {"basis-mix:", "basis_mix:"}) {
    if (text.starts_with(prefix)) {
      const std::string arg(text.substr(prefix.size()));
      std::size_t used = 0;
      double t = 0.0;
      try {
        t = std::stod(arg, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != arg.size() || arg.empty()) fail(ErrorCode::ParseError, "bad basis-mix parameter");
      return basis_mix(t);
    }
  }
  fail(ErrorCode::ParseError, "unknown sampling strategy '" + std::string(text) + "'");
}

std::string SamplingStrategy::name() const {
  switch (kind) {
    case Kind::Haar: return "haar";
    case Kind::Real: return "real";
    case Kind::RealSymmetric: return "rrs";
    case Kind::BasisMix: {
      char buf[48];
      std::snprintf(buf, sizeof buf, "basis-mix:%.12g", mix);
      return buf;
    }
  }
  return "haar";
}

CVector sample_state(std::size_t d, const SamplingStrategy& strategy, SeededRng& rng) {
  if (d < 2 || d > kMaxDimension) fail(ErrorCode::BadDimension, "sample_state needs 2 <= d <= 64");
  CVector psi(d);
  switch (strategy.kind) {
    case SamplingStrategy::Kind::Haar:
      for (auto& z : psi) {
        const double re = rng.normal();
        z = Complex(re, rng.normal());
      }
      break;
    case SamplingStrategy::Kind::Real:
      for (auto& z : psi) z = rng.normal();
      break;
    case SamplingStrategy::Kind::RealSymmetric:
      psi[0] = rng.normal();
      for (std::size_t j = 1; j <= d / 2; ++j) {
        const double g = rng.normal();
        psi[j] = g;
        psi[d - j] = g;
      }
      break;
    case SamplingStrategy::Kind::BasisMix: {
      for (auto& z : psi) {
        const double re = rng.normal();
        z = Complex(re, rng.normal());
      }
      normalize(psi);
      const std::size_t k = rng.below(d);
      for (auto& z : psi) z *= (1.0 - strategy.mix);
      psi[k] += strategy.mix;
      if (norm(psi) < 1e-300) {
        psi.assign(d, 0.0);
        psi[k] = 1.0;
      }
      break;
    }
  }
  normalize(psi);
  return psi;
}

MixedEnsemble::MixedEnsemble(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.empty()) fail(ErrorCode::EmptyInput, "ensemble has no components");
  const std::size_t d = components_.front().state.size();
  double total = 0.0;
  for (const auto& c : components_) {
    if (c.state.size() != d) fail(ErrorCode::DimensionMismatch, "ensemble state dimensions differ");
    if (!(c.weight >= 0.0 && c.weight <= 1.0)) {
      fail(ErrorCode::InvalidDistribution, "ensemble weight outside [0,1]");
    }
    if (std::abs(norm(c.state) - 1.0) > 1e-12) {
      fail(ErrorCode::InvalidDistribution, "ensemble state is not normalized");
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) fail(ErrorCode::InvalidDistribution, "ensemble weights do not sum to 1");
}

MixedEnsemble MixedEnsemble::pure(CVector state) {
  return MixedEnsemble({Component{1.0, std::move(state)}});
}

CMatrix MixedEnsemble::density() const {
  const std::size_t d = dimension();
  CMatrix rho(d, d);
  for (const auto& c : components_)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) rho(i, j) += c.weight * c.state[i] * std::conj(c.state[j]);
  return rho;
}

MixedEnsemble random_ensemble(std::size_t d, std::size_t max_components, SeededRng& rng) {
  if (max_components < 2) max_components = 2;
  const std::size_t k = 2 + rng.below(max_components - 1);
  std::vector<MixedEnsemble::Component> comps;
  comps.reserve(k);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double w = -std::log(1.0 - rng.uniform());  // Exp(1)
    total += w;
    comps.push_back({w, sample_state(d, SamplingStrategy::haar(), rng)});
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    comps[i].weight /= total;
    acc += comps[i].weight;
  }
  comps.back().weight = 1.0 - acc;
  return MixedEnsemble(std::move(comps));
}

}  // namespace entropic
