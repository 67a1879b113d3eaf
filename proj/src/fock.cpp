#include "easer/fock.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace easer {

const char* slot_name(Slot s) {
    switch (s) {
        case Slot::aH: return "aH";
        case Slot::aV: return "aV";
        case Slot::bH: return "bH";
        case Slot::bV: return "bV";
    }
    return "?";
}

int ModeOccupation::count(Slot s) const {
    switch (s) {
        case Slot::aH: return aH;
        case Slot::aV: return aV;
        case Slot::bH: return bH;
        case Slot::bV: return bV;
    }
    return 0;
}

ModeOccupation ModeOccupation::with_count(Slot s, int value) const {
    ModeOccupation occ = *this;
    switch (s) {
        case Slot::aH: occ.aH = value; break;
        case Slot::aV: occ.aV = value; break;
        case Slot::bH: occ.bH = value; break;
        case Slot::bV: occ.bV = value; break;
    }
    return occ;
}

std::string ket_label(const ModeOccupation& occ) {
    std::ostringstream out;
    out << "|" << occ.aH << " " << occ.aV << ";" << occ.bH << " " << occ.bV
        << ">";
    return out.str();
}

StateVector::StateVector(int cutoff, AmplitudeMap amplitudes)
    : cutoff_(cutoff), amps_(std::move(amplitudes)) {
    if (cutoff_ < 0) {
        throw std::invalid_argument("StateVector cutoff must be nonnegative");
    }
    for (const auto& [occ, amp] : amps_) {
        if (!occ.valid()) {
            throw std::invalid_argument("negative occupation in " +
                                        ket_label(occ));
        }
        if (!occ.within_cutoff(cutoff_)) {
            throw CutoffExceeded("occupation " + ket_label(occ) +
                                 " exceeds pair cutoff " +
                                 std::to_string(cutoff_));
        }
        if (!std::isfinite(amp.real()) || !std::isfinite(amp.imag())) {
            throw std::invalid_argument("non-finite amplitude at " +
                                        ket_label(occ));
        }
    }
}

Complex StateVector::amplitude(const ModeOccupation& occ) const {
    auto it = amps_.find(occ);
    return it == amps_.end() ? Complex{0.0, 0.0} : it->second;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto& [occ, amp] : amps_) {
        total += std::norm(amp);
    }
    return total;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw std::invalid_argument("cannot normalize the zero vector");
    }
    AmplitudeMap scaled = amps_;
    for (auto& [occ, amp] : scaled) {
        amp /= n;
    }
    return StateVector(cutoff_, std::move(scaled));
}

StateVector StateVector::pruned() const {
    AmplitudeMap kept;
    for (const auto& [occ, amp] : amps_) {
        if (amp != Complex{0.0, 0.0}) {
            kept.emplace(occ, amp);
        }
    }
    return StateVector(cutoff_, std::move(kept));
}

bool StateVector::is_vacuum() const {
    for (const auto& [occ, amp] : amps_) {
        if (occ.total() != 0 && amp != Complex{0.0, 0.0}) {
            return false;
        }
    }
    return true;
}

StateVector vacuum(int cutoff) {
    return StateVector(cutoff, AmplitudeMap{{ModeOccupation{}, {1.0, 0.0}}});
}

StateVector basis_state(int cutoff, const ModeOccupation& occ) {
    return StateVector(cutoff, AmplitudeMap{{occ, {1.0, 0.0}}});
}

StateVector apply_ladder(const StateVector& state, Slot slot,
                         LadderDirection dir) {
    AmplitudeMap out;
    for (const auto& [occ, amp] : state.amplitudes()) {
        const int n = occ.count(slot);
        if (dir == LadderDirection::raise) {
            const ModeOccupation raised = occ.with_count(slot, n + 1);
            if (!raised.within_cutoff(state.cutoff())) {
                throw CutoffExceeded(
                    std::string("raising ") + slot_name(slot) + " on " +
                    ket_label(occ) + " exceeds pair cutoff " +
                    std::to_string(state.cutoff()));
            }
            out[raised] += amp * std::sqrt(double(n) + 1.0);
        } else {
            if (n == 0) {
                continue;  // annihilates this component
            }
            out[occ.with_count(slot, n - 1)] += amp * std::sqrt(double(n));
        }
    }
    return StateVector(state.cutoff(), std::move(out));
}

Complex inner_product(const StateVector& lhs, const StateVector& rhs) {
    const bool lhs_smaller =
        lhs.amplitudes().size() <= rhs.amplitudes().size();
    const StateVector& small = lhs_smaller ? lhs : rhs;
    const StateVector& large = lhs_smaller ? rhs : lhs;
    Complex total{0.0, 0.0};
    for (const auto& [occ, amp] : small.amplitudes()) {
        const Complex other = large.amplitude(occ);
        if (lhs_smaller) {
            total += std::conj(amp) * other;
        } else {
            total += std::conj(other) * amp;
        }
    }
    return total;
}

double fidelity(const StateVector& lhs, const StateVector& rhs) {
    return std::abs(inner_product(lhs, rhs));
}

StateVector add(const StateVector& lhs, const StateVector& rhs) {
    if (lhs.cutoff() != rhs.cutoff()) {
        throw std::invalid_argument("cutoff mismatch in state addition");
    }
    AmplitudeMap out = lhs.amplitudes();
    for (const auto& [occ, amp] : rhs.amplitudes()) {
        out[occ] += amp;
    }
    return StateVector(lhs.cutoff(), std::move(out));
}

StateVector scale(const Complex& factor, const StateVector& state) {
    AmplitudeMap out = state.amplitudes();
    for (auto& [occ, amp] : out) {
        amp *= factor;
    }
    return StateVector(state.cutoff(), std::move(out));
}

}  // namespace easer
