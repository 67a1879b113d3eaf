#pragma once

#include <vector>

#include "easer/fock.hpp"

namespace easer {

// Interaction parameters for one pass through the down-conversion
// crystal. tau is the dimensionless interaction strength (coupling
// times interaction time), pump_phase the pump phase phi.
//
// The truncation adequacy check tanh(tau)^(cutoff+1) * (cutoff+2)
// <= truncation_tol runs at construction: it bounds the state weight
// lost above the pair cutoff.
struct PdcParams {
    double tau;
    double pump_phase;
    int cutoff;
    double truncation_tol;

    PdcParams(double tau, double pump_phase, int cutoff,
              double truncation_tol = 1e-6);
};

// Weight-loss estimate for the adequacy check above.
double truncation_defect(double tau, int cutoff);

// Smallest cutoff whose truncation defect is within tol.
int min_adequate_cutoff(double tau, double tol);

// One entangled-pair creation: raise(aH)raise(bV) - raise(aV)raise(bH).
// Every component of the input must leave room for one more pair.
StateVector apply_pair_creation(const StateVector& state);

// Adjoint of apply_pair_creation: lower(aH)lower(bV) - lower(aV)lower(bH).
StateVector apply_pair_annihilation(const StateVector& state);

// Evolves vacuum under exp(i tau (e^{i phi} P+ + e^{-i phi} P-)) where
// P+/P- are the pair creation/annihilation operators, using a
// sub-stepped power series on the truncated space with residual
// tracking. Result is normalized. Throws ConvergenceFailure if the
// series residual exceeds 1e-12 at the iteration cap.
StateVector evolve_exact(const PdcParams& params);

// Same propagator applied to an arbitrary start state instead of
// vacuum (used for the second pass of a double-pass setup).
StateVector evolve_from(const StateVector& start, double tau, double phase);

// Closed-form two-mode-squeezed state: amplitude of
// |n-m, m; m, n-m> proportional to tanh(tau)^n * (-1)^m, truncated at
// the pair cutoff and normalized numerically. pump_phase does not
// enter; the exact propagator adds only per-pair-sector phases on top
// of this real amplitude pattern.
StateVector state_analytic(const PdcParams& params);

struct PairProbability {
    int n = 0;
    double p = 0.0;
};

// P(n) for n = 0..cutoff. Requires pair-structured support
// (n_aH = n_bV, n_aV = n_bH); otherwise throws UnsupportedState.
std::vector<PairProbability> pair_distribution(const StateVector& state);

double mean_pairs(const std::vector<PairProbability>& dist);

// Index of the largest P(n).
int peak_pair_number(const std::vector<PairProbability>& dist);

// The normalized n-pair emission term:
//   (1/sqrt(n+1)) sum_m (-1)^m |n-m, m; m, n-m>
// n = 1 is the polarization singlet; every n is invariant under common
// rotations of both modes up to a phase. cutoff < 0 means "tight",
// i.e. cutoff = n.
StateVector singlet_term(int n, int cutoff = -1);

// Projection onto the n-pair sector (unnormalized). Requires
// pair-structured support.
StateVector pair_sector(const StateVector& state, int n);

// sum_n |<lhs_n|rhs_n>| over pair sectors: equals 1 exactly when the
// states agree sector-wise up to per-sector phases. This is the right
// equivalence notion between the exact propagator (which carries
// (i e^{i phi})^n sector phases) and the closed-form state (which is
// real). Requires pair-structured support on both sides.
double pair_block_fidelity(const StateVector& lhs, const StateVector& rhs);

}  // namespace easer
