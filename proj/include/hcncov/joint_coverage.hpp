#pragma once

#include "hcncov/types.hpp"

namespace hcncov {

// Laplace transform of the downlink interference seen by the typical UE when
// the downlink serving AP is of tier j with path loss l. The transform
// argument convention is such that the conditional coverage at threshold tau
// is laplace_dl_interference(m, tau * l / P_j, j, l); the single-tier
// reduction then integrates to downlink_sir_reference.
double laplace_dl_interference(const Model& m, double s, std::size_t j,
                               double l, const QuadratureSpec& q = {});

// Marginal downlink SIR coverage under the downlink association weights.
double dl_sir_coverage(const Model& m, double tau, const QuadratureSpec& q = {});

// Joint probability that uplink SIR > tau_u and downlink SIR > tau_d under
// decoupled association, assuming independent uplink/downlink interference.
double joint_sir_coverage(const Model& m, double tau_u, double tau_d,
                          const QuadratureSpec& q = {});

// Joint rate coverage P(uplink rate > rho_u, downlink rate > rho_d) with the
// mean-load approximation on both links.
double joint_rate_coverage(const Model& m, double rho_u, double rho_d,
                           const QuadratureSpec& q = {});

}  // namespace hcncov
