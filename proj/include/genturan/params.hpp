#pragma once

#include "genturan/pattern.hpp"
#include "genturan/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace genturan {

/// eps0 = delta^Delta / (2 + Delta), the regularity needed by the embedding lemma.
inline Rational embedding_eps0(const Rational& delta, std::size_t max_degree) {
  return power(delta, static_cast<unsigned>(max_degree)) / static_cast<long long>(2 + max_degree);
}

/// (1+eps)^r - 1, the loss when r factors each drop by eps.
inline Rational delta_mult(const Rational& eps, std::size_t r) {
  return power(Rational(1) + eps, static_cast<unsigned>(r)) - 1;
}

/// True iff prod(alpha_i - eps) > prod(alpha_i) - ((1+eps)^r - 1).
inline bool product_gap_holds(const std::vector<Rational>& alphas, const Rational& eps) {
  Rational shifted = 1, plain = 1;
  for (const auto& a : alphas) {
    shifted *= a - eps;
    plain *= a;
  }
  return shifted > plain - delta_mult(eps, alphas.size());
}

/// Constants derived from (eps, T, F) for the approximation pipeline.
struct ParameterSet {
  Rational eps;
  Rational eps0;              // regularity fed to the embedding lemma; equal to eps
  double delta = 0;           // ((2+Delta) eps0)^(1/Delta), the slack d - eps0
  double d_emb = 0;           // eps0 + delta
  Rational d_threshold;       // rational density threshold used for partition graphs
  bool d_emb_clamped = false; // d_emb >= 1, threshold clamped to 1
  Rational m_emb;             // v(F) / eps
  std::size_t k_min = 1;      // ceil(1/eps)
  std::size_t k_cap = 12;
  std::size_t n0 = 0;         // ceil(m_emb * k_cap): below this the exact oracle runs
  std::size_t r = 0;          // e(T)
  Rational delta_mult;        // (1+eps)^r - 1
  std::size_t max_degree = 0; // Delta(F)
  std::size_t max_order = 0;  // v(F)
};

inline ParameterSet compute_params(const Rational& eps, const PatternSpec& t, const ForbiddenFamily& family,
                                   std::size_t k_cap = 12) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0,1)");
  ParameterSet p;
  p.eps = eps;
  p.eps0 = eps;
  p.max_degree = family.max_degree();
  p.max_order = family.max_order();
  double e0 = to_double(p.eps0);
  if (p.max_degree == 0) {
    p.delta = 0;
  } else {
    auto D = static_cast<double>(p.max_degree);
    p.delta = std::pow((2.0 + D) * e0, 1.0 / D);
  }
  p.d_emb = e0 + p.delta;
  if (p.d_emb >= 1.0) {
    p.d_emb_clamped = true;
    p.d_threshold = 1;
  } else {
    p.d_threshold = ceil_rational(p.d_emb);
    if (p.d_threshold > 1) p.d_threshold = 1;
  }
  p.m_emb = Rational(static_cast<long long>(p.max_order)) / eps;
  p.k_min = ceil_of(Rational(1) / eps).convert_to<std::size_t>();
  p.k_cap = k_cap;
  p.n0 = ceil_of(p.m_emb * static_cast<long long>(k_cap)).convert_to<std::size_t>();
  p.r = t.edge_count();
  p.delta_mult = delta_mult(eps, p.r);
  return p;
}

}  // namespace genturan
