#pragma once

#include <complex>
#include <map>
#include <string>

#include "easer/errors.hpp"

namespace easer {

using Complex = std::complex<double>;

// The four bosonic slots: two spatial modes (a, b), each split into
// horizontal and vertical polarization.
enum class Slot { aH, aV, bH, bV };

enum class LadderDirection { raise, lower };

enum class SpatialMode { a, b, both };

const char* slot_name(Slot s);

// Photon counts per slot. The truncation is counted in pairs: an
// occupation fits a space with cutoff C iff each spatial mode holds at
// most C photons in total, so the total photon count is at most 2C and
// no single slot exceeds C. Polarization rotations conserve per-mode
// totals, so they can never push a valid occupation out of the space.
struct ModeOccupation {
    int aH = 0;
    int aV = 0;
    int bH = 0;
    int bV = 0;

    int count(Slot s) const;
    ModeOccupation with_count(Slot s, int value) const;

    int mode_a_total() const { return aH + aV; }
    int mode_b_total() const { return bH + bV; }
    int total() const { return aH + aV + bH + bV; }

    bool within_cutoff(int cutoff) const {
        return mode_a_total() <= cutoff && mode_b_total() <= cutoff;
    }

    // Stimulated-pair kets satisfy n_aH = n_bV and n_aV = n_bH.
    bool pair_structured() const { return aH == bV && aV == bH; }

    bool valid() const { return aH >= 0 && aV >= 0 && bH >= 0 && bV >= 0; }

    auto operator<=>(const ModeOccupation&) const = default;
};

std::string ket_label(const ModeOccupation& occ);

using AmplitudeMap = std::map<ModeOccupation, Complex>;

// Sparse state in the truncated four-slot Fock space. Immutable value:
// every operation returns a new state. Stored occupations always satisfy
// the cutoff; zero amplitudes may be pruned without changing the state.
class StateVector {
  public:
    StateVector(int cutoff, AmplitudeMap amplitudes);

    int cutoff() const { return cutoff_; }
    const AmplitudeMap& amplitudes() const { return amps_; }

    // Zero for occupations not stored.
    Complex amplitude(const ModeOccupation& occ) const;

    double norm_squared() const;
    double norm() const;

    StateVector normalized() const;

    // Drops exact-zero amplitudes only.
    StateVector pruned() const;

    bool is_vacuum() const;

  private:
    int cutoff_;
    AmplitudeMap amps_;
};

StateVector vacuum(int cutoff);
StateVector basis_state(int cutoff, const ModeOccupation& occ);

// Applies a single creation or annihilation operator:
//   raise: |n> -> sqrt(n+1) |n+1>     lower: |n> -> sqrt(n) |n-1>
// Lowering an empty slot annihilates that component. Raising past the
// cutoff throws CutoffExceeded.
StateVector apply_ladder(const StateVector& state, Slot slot, LadderDirection dir);

// <lhs|rhs>, conjugate-linear in lhs. Cutoffs may differ; missing
// occupations count as zero.
Complex inner_product(const StateVector& lhs, const StateVector& rhs);

// |<lhs|rhs>| for normalized inputs.
double fidelity(const StateVector& lhs, const StateVector& rhs);

StateVector add(const StateVector& lhs, const StateVector& rhs);
StateVector scale(const Complex& factor, const StateVector& state);

}  // namespace easer
