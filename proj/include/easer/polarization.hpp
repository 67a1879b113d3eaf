#pragma once

#include "easer/fock.hpp"

namespace easer {

// 2x2 polarization basis change. Rotation acts by operator transport:
//   h+ -> hh*h+ + vh*v+,   v+ -> hv*h+ + vv*v+
// so a ket is re-expanded binomially in the new creation operators.
struct PolarizationUnitary {
    Complex hh{1.0, 0.0};
    Complex hv{0.0, 0.0};
    Complex vh{0.0, 0.0};
    Complex vv{1.0, 0.0};

    bool is_unitary(double tol = 1e-12) const;

    static PolarizationUnitary identity();

    // Real rotation with rows (cos a, sin a; -sin a, cos a).
    static PolarizationUnitary rotation(double angle);

    // The 45-degree analysis basis: rotation(pi/4).
    static PolarizationUnitary diagonal();
};

// Matrix product second*first: rotating by `first` then by `second`
// equals rotating once by compose(second, first).
PolarizationUnitary compose(const PolarizationUnitary& second,
                            const PolarizationUnitary& first);

// Applies the basis change to one or both spatial modes. Throws
// NotUnitary if the matrix fails the unitarity check. Preserves norm
// and per-mode photon totals.
StateVector rotate(const StateVector& state, SpatialMode mode,
                   const PolarizationUnitary& u);

// Exchanges the H and V slots of the chosen mode(s). Involutive.
StateVector half_wave_swap(const StateVector& state, SpatialMode mode);

}  // namespace easer
