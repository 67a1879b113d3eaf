#pragma once

#include <map>
#include <string>
#include <vector>

#include "easer/fock.hpp"

namespace easer {

// Double-pass geometry: the pump crosses the crystal, is mirrored back
// with relative phase theta, and the first-pass photon pairs are fed
// back into the crystal for the second pass. overlap in [0,1] is the
// temporal-mode overlap between the returned pass-1 photons and the
// pass-2 emission mode (1 = indistinguishable, 0 = fully
// distinguishable). Lengths are in micrometres; the feedback loop is
// treated as lossless and alignment-perfect, so delay enters only
// through theta and the coherence envelope.
struct DoublePassConfig {
    double tau1 = 0.1;
    double tau2 = 0.1;
    double theta = 0.0;
    double overlap = 1.0;
    double pump_wavelength_um = 0.390;
    double coherence_length_um = 121.68;  // lambda^2/dlambda for 780 nm, 5 nm filter
    int cutoff = 8;
};

// The monitored coincidence terms.
namespace terms {
inline constexpr ModeOccupation pair_hv{1, 0, 0, 1};
inline constexpr ModeOccupation pair_vh{0, 1, 1, 0};
inline constexpr ModeOccupation quad_hhvv{2, 0, 0, 2};
inline constexpr ModeOccupation quad_hvhv{1, 1, 1, 1};
inline constexpr ModeOccupation quad_vvhh{0, 2, 2, 0};
}  // namespace terms

// Second-order perturbative detection probabilities of the five
// monitored terms. Cross terms between the passes carry the overlap;
// the orthogonal remainder of the pass-1 photons contributes
// incoherently with weight (1 - overlap^2) at the probability level.
// Enforces tau1, tau2 <= 0.3 (OutOfValidity otherwise), where the
// neglected higher orders stay small.
std::map<ModeOccupation, double> perturbative_probabilities(
    const DoublePassConfig& cfg);

// Coherent (overlap 1, theta 0) over distinguishable (overlap 0)
// probability per term: 2 for the two-photon terms, 4 for
// |1,1;1,1>, 16/3 for |2,0;0,2> and |0,2;2,0>. Requires tau1 == tau2.
// Basis-independent.
std::map<ModeOccupation, double> amplification_ratios(
    const DoublePassConfig& cfg);

struct SecondPassGain {
    double g2 = 1.0;
    double g4 = 1.0;
};

// Gain of the double pass over pass 1 alone, at overlap 1 and
// theta 0: g2 = ((tau1+tau2)/tau1)^2, g4 = g2^2. Ideal values for
// tau1 == tau2 are (4, 16); tau2 = 0 gives (1, 1).
SecondPassGain second_pass_gain(const DoublePassConfig& cfg);

// Experimental reference values for comparison tables.
struct MeasuredReference {
    double value = 0.0;
    double error = 0.0;
};

inline constexpr MeasuredReference kMeasuredAmpPair{1.95, 0.10};
inline constexpr MeasuredReference kMeasuredAmpQuadSame{5.3, 0.6};
inline constexpr MeasuredReference kMeasuredAmpQuadMixed{4.1, 0.3};
inline constexpr MeasuredReference kMeasuredGain2{3.95, 0.10};
inline constexpr MeasuredReference kMeasuredGain4{17.0, 2.0};
inline constexpr double kMeasuredFringeVisibilityFloor = 0.97;

// Scan output: one x column plus one or more named value columns,
// x strictly increasing, values nonnegative.
struct ScanResult {
    std::string x_label;
    std::vector<std::string> value_labels;
    std::string term_label;
    std::vector<double> x;
    std::vector<std::vector<double>> rows;  // rows[i][j]: value j at x[i]
};

// Pump-phase fringe of the order-2 (|1,0;0,1>) or order-4 (|1,1;1,1>)
// coincidence probability, evaluated on the given theta grid. At
// overlap 1 and tau1 == tau2 the curves are proportional to
// (1 + cos theta) and (1 + cos theta)^2 with unit visibility.
ScanResult fringe_scan(const DoublePassConfig& cfg,
                       const std::vector<double>& thetas, int order);

// Gaussian temporal-coherence envelope exp(-d^2 / (2 l^2)) for an
// optical path delay d (micrometres).
double coherence_envelope(const DoublePassConfig& cfg, double delay_um);

// Mirror-delay scan for one monitored term. For each delay d the
// overlap is set to the coherence envelope g(d) and the columns are
// the theta-envelope extrema plus the value at theta(d) =
// 2 pi d / pump_wavelength. The delays are optical path delays in
// micrometres. cfg.overlap and cfg.theta are ignored here.
ScanResult delay_scan(const DoublePassConfig& cfg,
                      const std::vector<double>& delays_um,
                      const ModeOccupation& term);

// Full truncated-space double pass: pass 1 with (tau1, phase 0), then
// pass 2 with (tau2, phase theta) applied to the pass-1 output.
// Requires overlap == 1 (the state-vector model has a single temporal
// mode) and truncation adequacy for tau1 + tau2.
StateVector exact_double_pass(const DoublePassConfig& cfg);

}  // namespace easer
