#include "easer/pdc.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace easer {

namespace {

constexpr int kSeriesCap = 400;
constexpr double kSeriesResidual = 1e-12;

void check_pair_support(const StateVector& state, const char* who) {
    for (const auto& [occ, amp] : state.amplitudes()) {
        if (amp != Complex{0.0, 0.0} && !occ.pair_structured()) {
            throw UnsupportedState(std::string(who) +
                                   " requires pair-structured support; got " +
                                   ket_label(occ));
        }
    }
}

// One application of e^{i phase} P+ + e^{-i phase} P- with components
// raised past the cutoff projected away. This is the generator
// restricted to the truncated space; the adequacy check on the
// parameters bounds the weight that ever reaches the boundary.
AmplitudeMap apply_generator_projected(const AmplitudeMap& amps, int cutoff,
                                       double phase) {
    const Complex up = std::polar(1.0, phase);
    const Complex down = std::conj(up);
    AmplitudeMap out;
    for (const auto& [occ, amp] : amps) {
        if (occ.mode_a_total() < cutoff && occ.mode_b_total() < cutoff) {
            out[ModeOccupation{occ.aH + 1, occ.aV, occ.bH, occ.bV + 1}] +=
                up * amp * std::sqrt(double(occ.aH + 1) * double(occ.bV + 1));
            out[ModeOccupation{occ.aH, occ.aV + 1, occ.bH + 1, occ.bV}] -=
                up * amp * std::sqrt(double(occ.aV + 1) * double(occ.bH + 1));
        }
        if (occ.aH > 0 && occ.bV > 0) {
            out[ModeOccupation{occ.aH - 1, occ.aV, occ.bH, occ.bV - 1}] +=
                down * amp * std::sqrt(double(occ.aH) * double(occ.bV));
        }
        if (occ.aV > 0 && occ.bH > 0) {
            out[ModeOccupation{occ.aH, occ.aV - 1, occ.bH - 1, occ.bV}] -=
                down * amp * std::sqrt(double(occ.aV) * double(occ.bH));
        }
    }
    return out;
}

double map_norm(const AmplitudeMap& amps) {
    double total = 0.0;
    for (const auto& [occ, amp] : amps) {
        total += std::norm(amp);
    }
    return std::sqrt(total);
}

}  // namespace

PdcParams::PdcParams(double tau_, double pump_phase_, int cutoff_,
                     double truncation_tol_)
    : tau(tau_),
      pump_phase(pump_phase_),
      cutoff(cutoff_),
      truncation_tol(truncation_tol_) {
    if (!std::isfinite(tau) || tau < 0.0) {
        throw std::invalid_argument("tau must be finite and nonnegative");
    }
    if (!std::isfinite(pump_phase)) {
        throw std::invalid_argument("pump_phase must be finite");
    }
    if (cutoff < 0 || (tau > 0.0 && cutoff < 1)) {
        throw std::invalid_argument("cutoff too small for tau > 0");
    }
    if (!(truncation_tol > 0.0)) {
        throw std::invalid_argument("truncation_tol must be positive");
    }
    const double defect = truncation_defect(tau, cutoff);
    if (defect > truncation_tol) {
        throw OutOfValidity(
            "pair cutoff " + std::to_string(cutoff) +
            " is inadequate for tau = " + std::to_string(tau) +
            " (weight-loss estimate " + std::to_string(defect) +
            " exceeds tolerance " + std::to_string(truncation_tol) + ")");
    }
}

double truncation_defect(double tau, int cutoff) {
    return std::pow(std::tanh(tau), cutoff + 1) * double(cutoff + 2);
}

int min_adequate_cutoff(double tau, double tol) {
    constexpr int kMaxCutoff = 4096;
    for (int c = tau > 0.0 ? 1 : 0; c <= kMaxCutoff; ++c) {
        if (truncation_defect(tau, c) <= tol) {
            return c;
        }
    }
    throw OutOfValidity("no adequate cutoff below " +
                        std::to_string(kMaxCutoff) + " for tau = " +
                        std::to_string(tau));
}

StateVector apply_pair_creation(const StateVector& state) {
    const StateVector hv = apply_ladder(apply_ladder(state, Slot::aH,
                                                     LadderDirection::raise),
                                        Slot::bV, LadderDirection::raise);
    const StateVector vh = apply_ladder(apply_ladder(state, Slot::aV,
                                                     LadderDirection::raise),
                                        Slot::bH, LadderDirection::raise);
    return add(hv, scale({-1.0, 0.0}, vh));
}

StateVector apply_pair_annihilation(const StateVector& state) {
    const StateVector hv = apply_ladder(apply_ladder(state, Slot::aH,
                                                     LadderDirection::lower),
                                        Slot::bV, LadderDirection::lower);
    const StateVector vh = apply_ladder(apply_ladder(state, Slot::aV,
                                                     LadderDirection::lower),
                                        Slot::bH, LadderDirection::lower);
    return add(hv, scale({-1.0, 0.0}, vh));
}

StateVector evolve_from(const StateVector& start, double tau, double phase) {
    const int cutoff = start.cutoff();
    // Sub-step so that |dt| * ||generator|| stays of order one: the
    // generator norm on the truncated space is below 2 (cutoff + 2).
    const int steps =
        std::max(1, int(std::ceil(2.0 * std::abs(tau) * double(cutoff + 2))));
    const Complex idt{0.0, tau / double(steps)};

    AmplitudeMap current = start.amplitudes();
    for (int s = 0; s < steps; ++s) {
        AmplitudeMap acc = current;
        AmplitudeMap term = current;
        bool converged = false;
        double residual = 1.0;
        for (int k = 1; k <= kSeriesCap; ++k) {
            term = apply_generator_projected(term, cutoff, phase);
            const Complex factor = idt / double(k);
            for (auto& [occ, amp] : term) {
                amp *= factor;
            }
            for (const auto& [occ, amp] : term) {
                acc[occ] += amp;
            }
            residual = map_norm(term) / std::max(1.0, map_norm(acc));
            if (residual <= 1e-16) {
                converged = true;
                break;
            }
        }
        if (!converged && residual > kSeriesResidual) {
            throw ConvergenceFailure(
                "evolution series residual " + std::to_string(residual) +
                " above 1e-12 after " + std::to_string(kSeriesCap) +
                " terms");
        }
        current = std::move(acc);
    }
    return StateVector(cutoff, std::move(current));
}

StateVector evolve_exact(const PdcParams& params) {
    return evolve_from(vacuum(params.cutoff), params.tau, params.pump_phase)
        .normalized();
}

StateVector state_analytic(const PdcParams& params) {
    const double t = std::tanh(params.tau);
    AmplitudeMap amps;
    double weight = 1.0;  // tanh(tau)^n
    for (int n = 0; n <= params.cutoff; ++n) {
        double sign = 1.0;
        for (int m = 0; m <= n; ++m) {
            amps[ModeOccupation{n - m, m, m, n - m}] = Complex{sign * weight,
                                                               0.0};
            sign = -sign;
        }
        weight *= t;
    }
    return StateVector(params.cutoff, std::move(amps)).normalized();
}

std::vector<PairProbability> pair_distribution(const StateVector& state) {
    check_pair_support(state, "pair_distribution");
    std::vector<PairProbability> dist(size_t(state.cutoff()) + 1);
    for (int n = 0; n <= state.cutoff(); ++n) {
        dist[size_t(n)].n = n;
    }
    for (const auto& [occ, amp] : state.amplitudes()) {
        dist[size_t(occ.mode_a_total())].p += std::norm(amp);
    }
    return dist;
}

double mean_pairs(const std::vector<PairProbability>& dist) {
    double mean = 0.0;
    for (const auto& [n, p] : dist) {
        mean += double(n) * p;
    }
    return mean;
}

int peak_pair_number(const std::vector<PairProbability>& dist) {
    int peak = 0;
    double best = -1.0;
    for (const auto& [n, p] : dist) {
        if (p > best) {
            best = p;
            peak = n;
        }
    }
    return peak;
}

StateVector singlet_term(int n, int cutoff) {
    if (n < 0) {
        throw std::invalid_argument("pair number must be nonnegative");
    }
    if (cutoff < 0) {
        cutoff = n;
    }
    if (n > cutoff) {
        throw CutoffExceeded("singlet term " + std::to_string(n) +
                             " does not fit pair cutoff " +
                             std::to_string(cutoff));
    }
    AmplitudeMap amps;
    const double scale = 1.0 / std::sqrt(double(n) + 1.0);
    double sign = 1.0;
    for (int m = 0; m <= n; ++m) {
        amps[ModeOccupation{n - m, m, m, n - m}] = Complex{sign * scale, 0.0};
        sign = -sign;
    }
    return StateVector(cutoff, std::move(amps));
}

StateVector pair_sector(const StateVector& state, int n) {
    check_pair_support(state, "pair_sector");
    AmplitudeMap amps;
    for (const auto& [occ, amp] : state.amplitudes()) {
        if (occ.mode_a_total() == n) {
            amps.emplace(occ, amp);
        }
    }
    return StateVector(state.cutoff(), std::move(amps));
}

double pair_block_fidelity(const StateVector& lhs, const StateVector& rhs) {
    check_pair_support(lhs, "pair_block_fidelity");
    check_pair_support(rhs, "pair_block_fidelity");
    std::map<int, Complex> overlaps;
    for (const auto& [occ, amp] : lhs.amplitudes()) {
        const Complex other = rhs.amplitude(occ);
        if (other != Complex{0.0, 0.0}) {
            overlaps[occ.mode_a_total()] += std::conj(amp) * other;
        }
    }
    double total = 0.0;
    for (const auto& [n, overlap] : overlaps) {
        total += std::abs(overlap);
    }
    return total;
}

}  // namespace easer
