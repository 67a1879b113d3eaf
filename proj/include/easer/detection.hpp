#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "easer/polarization.hpp"

namespace easer {

enum class Outcome { H, V };

// Analysis-side setup: per-mode polarization bases, which slots feed a
// 50/50 splitter with two detectors instead of a single detector, the
// per-detector efficiency, and whether detectors resolve photon number
// (number resolution exists for oracle checks; click-level pattern
// probabilities do not depend on it).
struct DetectionConfig {
    PolarizationUnitary basis_a = PolarizationUnitary::identity();
    PolarizationUnitary basis_b = PolarizationUnitary::identity();
    std::set<Slot> splitter_slots;
    double efficiency = 1.0;
    bool number_resolving = false;
};

// Detector names: "aH" for a directly monitored slot, "aH0"/"aH1" for
// the two splitter outputs of a split slot. Fixed slot order
// aH, aV, bH, bV.
std::vector<std::string> detector_labels(const DetectionConfig& cfg);

// required detectors must click, forbidden must stay silent,
// unlisted detectors are ignored (marginalized).
struct CoincidencePattern {
    std::set<std::string> required;
    std::set<std::string> forbidden;
};

// Squared overlap |<ket|state'>|^2 where state' is the state expressed
// in the given analysis bases.
double term_probability(const StateVector& state, const ModeOccupation& ket,
                        const PolarizationUnitary& basis_a,
                        const PolarizationUnitary& basis_b);

// Probability that every required detector clicks and no forbidden one
// does. Photons are routed through the splitters at amplitude level
// (each photon 1/sqrt(2) per output); a non-number-resolving detector
// clicks when at least one photon arrives, and each photon is seen
// with probability `efficiency` independently. Throws InvalidPattern
// for unknown detector names or required/forbidden overlap.
double click_pattern_probability(const StateVector& state,
                                 const DetectionConfig& cfg,
                                 const CoincidencePattern& pattern);

// Exact-count distribution over detectors (unit-efficiency oracle for
// the click model). Keys follow detector_labels order.
std::map<std::vector<int>, double> detector_count_distribution(
    const StateVector& state, const DetectionConfig& cfg);

struct ProjectionResult {
    double probability = 0.0;
    StateVector remainder;
};

// Conditions on one photon extracted from the chosen spatial mode
// being found in the given polarization outcome (after the basis
// change). The outcome probability is P(mode holds >= 1 photon) times
// the polarization branching ratio <n_outcome>/<n_mode> of an
// extracted photon; outcome probabilities over H and V therefore sum
// to the probability that the mode is occupied. The remainder is the
// state with one photon removed from the outcome slot, renormalized:
// occupations step down by one with equal weight, matching the
// detector's ignorance of the slot's occupation. Throws
// ZeroProbabilityOutcome if the outcome cannot occur.
ProjectionResult project_and_renormalize(const StateVector& state,
                                         SpatialMode mode, Outcome outcome,
                                         const PolarizationUnitary& basis);

// Schmidt coefficients for the (mode a | mode b) bipartition:
// singular values of the amplitude matrix indexed by (n_aH, n_aV) rows
// and (n_bH, n_bV) columns, in descending order. For a normalized
// state the squares sum to one.
std::vector<double> schmidt_coefficients(const StateVector& state);

// Per-pulse Bernoulli sampling of each pattern, independently per
// pattern with a fixed draw order, so a given seed reproduces counts
// exactly (platform-independent generator and uniform mapping).
std::map<std::string, long long> monte_carlo_counts(
    const std::map<std::string, double>& pattern_probabilities,
    long long pulses, std::uint64_t seed);

}  // namespace easer
