#include "easer/detection.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

namespace easer {

namespace {

constexpr Slot kSlotOrder[4] = {Slot::aH, Slot::aV, Slot::bH, Slot::bV};

double binomial(int n, int k) {
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result *= double(n - k + i) / double(i);
    }
    return result;
}

enum class DetectorRole { free, required, forbidden };

// Click probability of one detector seeing m photons with per-photon
// efficiency eta, conditioned on the role the pattern assigns to it.
double response(DetectorRole role, int m, double eta) {
    switch (role) {
        case DetectorRole::free: return 1.0;
        case DetectorRole::required: return 1.0 - std::pow(1.0 - eta, m);
        case DetectorRole::forbidden: return std::pow(1.0 - eta, m);
    }
    return 1.0;
}

StateVector into_analysis_bases(const StateVector& state,
                                const PolarizationUnitary& basis_a,
                                const PolarizationUnitary& basis_b) {
    return rotate(rotate(state, SpatialMode::a, basis_a), SpatialMode::b,
                  basis_b);
}

// Uniform double in [0, 1) from the top 53 bits; avoids the
// implementation-defined std distributions so counts are portable.
double uniform53(std::mt19937_64& rng) {
    return double(rng() >> 11) * (1.0 / 9007199254740992.0);
}

}  // namespace

std::vector<std::string> detector_labels(const DetectionConfig& cfg) {
    std::vector<std::string> labels;
    for (Slot s : kSlotOrder) {
        if (cfg.splitter_slots.count(s)) {
            labels.push_back(std::string(slot_name(s)) + "0");
            labels.push_back(std::string(slot_name(s)) + "1");
        } else {
            labels.push_back(slot_name(s));
        }
    }
    return labels;
}

double term_probability(const StateVector& state, const ModeOccupation& ket,
                        const PolarizationUnitary& basis_a,
                        const PolarizationUnitary& basis_b) {
    const StateVector analyzed = into_analysis_bases(state, basis_a, basis_b);
    return std::norm(analyzed.amplitude(ket));
}

double click_pattern_probability(const StateVector& state,
                                 const DetectionConfig& cfg,
                                 const CoincidencePattern& pattern) {
    if (!(cfg.efficiency >= 0.0 && cfg.efficiency <= 1.0)) {
        throw std::invalid_argument("efficiency must lie in [0, 1]");
    }
    const auto labels = detector_labels(cfg);
    auto role_of = [&](const std::string& label) {
        const bool req = pattern.required.count(label) > 0;
        const bool forb = pattern.forbidden.count(label) > 0;
        if (req && forb) {
            throw InvalidPattern("detector " + label +
                                 " both required and forbidden");
        }
        return req ? DetectorRole::required
                   : forb ? DetectorRole::forbidden : DetectorRole::free;
    };
    for (const auto& name : pattern.required) {
        if (std::find(labels.begin(), labels.end(), name) == labels.end()) {
            throw InvalidPattern("unknown detector " + name);
        }
    }
    for (const auto& name : pattern.forbidden) {
        if (std::find(labels.begin(), labels.end(), name) == labels.end()) {
            throw InvalidPattern("unknown detector " + name);
        }
    }

    const StateVector analyzed =
        into_analysis_bases(state, cfg.basis_a, cfg.basis_b);
    const double eta = cfg.efficiency;

    double total = 0.0;
    for (const auto& [occ, amp] : analyzed.amplitudes()) {
        double factor = 1.0;
        size_t label_index = 0;
        for (Slot s : kSlotOrder) {
            const int n = occ.count(s);
            if (cfg.splitter_slots.count(s)) {
                const DetectorRole r0 = role_of(labels[label_index]);
                const DetectorRole r1 = role_of(labels[label_index + 1]);
                label_index += 2;
                // Amplitude-level 50/50 routing of n indistinguishable
                // photons from one input port: outcome (k, n-k) has
                // squared amplitude C(n,k) / 2^n.
                double slot_factor = 0.0;
                const double scale = std::pow(0.5, n);
                for (int k = 0; k <= n; ++k) {
                    slot_factor += binomial(n, k) * scale *
                                   response(r0, k, eta) *
                                   response(r1, n - k, eta);
                }
                factor *= slot_factor;
            } else {
                const DetectorRole r = role_of(labels[label_index]);
                label_index += 1;
                factor *= response(r, n, eta);
            }
            if (factor == 0.0) {
                break;
            }
        }
        total += std::norm(amp) * factor;
    }
    return total;
}

std::map<std::vector<int>, double> detector_count_distribution(
    const StateVector& state, const DetectionConfig& cfg) {
    const StateVector analyzed =
        into_analysis_bases(state, cfg.basis_a, cfg.basis_b);
    std::map<std::vector<int>, double> dist;
    for (const auto& [occ, amp] : analyzed.amplitudes()) {
        const double p_ket = std::norm(amp);
        if (p_ket == 0.0) {
            continue;
        }
        std::vector<std::pair<std::vector<int>, double>> partial{{{}, 1.0}};
        for (Slot s : kSlotOrder) {
            const int n = occ.count(s);
            std::vector<std::pair<std::vector<int>, double>> next;
            for (const auto& [counts, w] : partial) {
                if (cfg.splitter_slots.count(s)) {
                    const double scale = std::pow(0.5, n);
                    for (int k = 0; k <= n; ++k) {
                        auto extended = counts;
                        extended.push_back(k);
                        extended.push_back(n - k);
                        next.push_back({std::move(extended),
                                        w * binomial(n, k) * scale});
                    }
                } else {
                    auto extended = counts;
                    extended.push_back(n);
                    next.push_back({std::move(extended), w});
                }
            }
            partial = std::move(next);
        }
        for (const auto& [counts, w] : partial) {
            dist[counts] += p_ket * w;
        }
    }
    return dist;
}

ProjectionResult project_and_renormalize(const StateVector& state,
                                         SpatialMode mode, Outcome outcome,
                                         const PolarizationUnitary& basis) {
    if (mode == SpatialMode::both) {
        throw std::invalid_argument(
            "projection acts on a single spatial mode");
    }
    const StateVector analyzed = rotate(state, mode, basis);
    const Slot slot_h = mode == SpatialMode::a ? Slot::aH : Slot::bH;
    const Slot slot_v = mode == SpatialMode::a ? Slot::aV : Slot::bV;
    const Slot chosen = outcome == Outcome::H ? slot_h : slot_v;

    double occupied = 0.0;    // P(mode holds at least one photon)
    double mean_chosen = 0.0; // <n> in the outcome slot
    double mean_mode = 0.0;   // <n> in the whole mode
    for (const auto& [occ, amp] : analyzed.amplitudes()) {
        const double p = std::norm(amp);
        const int n_mode = occ.count(slot_h) + occ.count(slot_v);
        if (n_mode > 0) {
            occupied += p;
        }
        mean_chosen += p * double(occ.count(chosen));
        mean_mode += p * double(n_mode);
    }
    if (occupied == 0.0 || mean_chosen == 0.0) {
        throw ZeroProbabilityOutcome(
            std::string("outcome ") + slot_name(chosen) +
            " cannot occur on this state");
    }

    // One photon leaves the outcome slot; the detector carries no
    // occupation information, so each component steps down with equal
    // weight and the remainder is renormalized.
    AmplitudeMap remainder;
    for (const auto& [occ, amp] : analyzed.amplitudes()) {
        const int n = occ.count(chosen);
        if (n > 0) {
            remainder[occ.with_count(chosen, n - 1)] += amp;
        }
    }
    ProjectionResult result{
        occupied * mean_chosen / mean_mode,
        StateVector(analyzed.cutoff(), std::move(remainder)).normalized()};
    return result;
}

std::vector<double> schmidt_coefficients(const StateVector& state) {
    std::map<std::pair<int, int>, int> rows;
    std::map<std::pair<int, int>, int> cols;
    for (const auto& [occ, amp] : state.amplitudes()) {
        rows.emplace(std::make_pair(occ.aH, occ.aV), 0);
        cols.emplace(std::make_pair(occ.bH, occ.bV), 0);
    }
    int index = 0;
    for (auto& [key, value] : rows) {
        value = index++;
    }
    index = 0;
    for (auto& [key, value] : cols) {
        value = index++;
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(
        Eigen::Index(rows.size()), Eigen::Index(cols.size()));
    for (const auto& [occ, amp] : state.amplitudes()) {
        m(rows.at({occ.aH, occ.aV}), cols.at({occ.bH, occ.bV})) = amp;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    std::vector<double> coefficients(svd.singularValues().data(),
                                     svd.singularValues().data() +
                                         svd.singularValues().size());
    return coefficients;
}

std::map<std::string, long long> monte_carlo_counts(
    const std::map<std::string, double>& pattern_probabilities,
    long long pulses, std::uint64_t seed) {
    if (pulses < 0) {
        throw std::invalid_argument("pulse count must be nonnegative");
    }
    std::map<std::string, long long> counts;
    std::uint64_t stream = 0;
    for (const auto& [pattern, p] : pattern_probabilities) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("pattern probability outside [0, 1]");
        }
        ++stream;
        std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * stream);
        long long hits = 0;
        for (long long i = 0; i < pulses; ++i) {
            if (uniform53(rng) < p) {
                ++hits;
            }
        }
        counts[pattern] = hits;
    }
    return counts;
}

}  // namespace easer
