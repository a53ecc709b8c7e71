#pragma once

#include <optional>
#include <vector>

#include "hcncov/types.hpp"

namespace hcncov {

// Serving path loss density f_L(l): mixture over tiers, or the tier-conditional
// density when `tier` is given (0-based).
double serving_pl_pdf(const Model& m, double l,
                      std::optional<std::size_t> tier = std::nullopt,
                      Link link = Link::uplink);

// CCDF P(L > l), unconditional or tier-conditional.
double serving_pl_ccdf(const Model& m, double l,
                       std::optional<std::size_t> tier = std::nullopt,
                       Link link = Link::uplink);

// Density of the path loss between an interfering UE (associated with tier j)
// and its own serving AP, given the UE's path loss to the tagged AP of tier k
// is y. Supported on [0, (w_j/w_k) y]; zero outside.
double interferer_pl_pdf(const Model& m, double l, std::size_t j, std::size_t k,
                         double y);

// Continuous part of the joint uplink/downlink path loss law for UL tier k and
// DL tier j (k != j), at (x, y). Zero outside the wedge
// w_j/w_k <= y/x <= w'_j/w'_k.
double joint_pl_pdf_offdiag(const Model& m, double x, double y, std::size_t k,
                            std::size_t j);

// One-dimensional density on the diagonal y = x for the coupled-tier event
// (UL tier = DL tier = k).
double joint_pl_pdf_diag(const Model& m, double x, std::size_t k);

// Total probability of the joint law (diagonal masses plus wedge integrals),
// evaluated numerically; equals 1 up to quadrature error.
double joint_pl_total_mass(const Model& m);

// Cell-load PMF over n >= 1 (index i holds P(N = i+1)), truncated where the
// cumulative mass exceeds 1 - 1e-6 (hard cap 10^4 terms).
struct LoadPmf {
  double mean_area_ratio = 0.0;  // lambda_u * A_k / lambda_k
  std::vector<double> pmf;
  double mass() const;
};

LoadPmf load_pmf(const Model& m, std::size_t tier, Link link);

// Mean-load approximation 1 + 1.28 * lambda_u A_k / lambda_k with the
// link-appropriate association probability.
double mean_load(const Model& m, std::size_t tier, Link link);

}  // namespace hcncov
