#include "easer/double_pass.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "easer/pdc.hpp"

namespace easer {

namespace {

constexpr double kTauValidityLimit = 0.3;

void check_common(const DoublePassConfig& cfg) {
    if (!std::isfinite(cfg.tau1) || !std::isfinite(cfg.tau2) ||
        cfg.tau1 < 0.0 || cfg.tau2 < 0.0) {
        throw std::invalid_argument("tau1/tau2 must be finite, nonnegative");
    }
    if (!std::isfinite(cfg.theta)) {
        throw std::invalid_argument("theta must be finite");
    }
    if (!(cfg.overlap >= 0.0 && cfg.overlap <= 1.0)) {
        throw std::invalid_argument("overlap must lie in [0, 1]");
    }
}

bool is_monitored_term(const ModeOccupation& term) {
    return term == terms::pair_hv || term == terms::pair_vh ||
           term == terms::quad_hhvv || term == terms::quad_hvhv ||
           term == terms::quad_vvhh;
}

}  // namespace

std::map<ModeOccupation, double> perturbative_probabilities(
    const DoublePassConfig& cfg) {
    check_common(cfg);
    if (cfg.tau1 > kTauValidityLimit || cfg.tau2 > kTauValidityLimit) {
        throw OutOfValidity(
            "perturbative model is limited to tau1, tau2 <= 0.3");
    }
    const double t1 = cfg.tau1;
    const double t2 = cfg.tau2;
    const double lam = cfg.overlap;
    const double orth = 1.0 - lam * lam;

    // The returned pass-1 photons decompose against the pass-2 emission
    // mode: a matching component of weight lam that adds coherently and
    // an orthogonal remainder of weight sqrt(1 - lam^2) whose pair
    // amplitudes add at the probability level.
    const double coherent =
        std::norm(lam * t1 + std::polar(t2, cfg.theta));  // |lam t1 + e^{i theta} t2|^2
    const double p2 = t1 * t1 + t2 * t2 +
                      2.0 * lam * t1 * t2 * std::cos(cfg.theta);
    const double p4_same = coherent * coherent +
                           orth * t1 * t1 * coherent +
                           orth * orth * t1 * t1 * t1 * t1;
    const double p4_mixed = coherent * coherent +
                            2.0 * orth * t1 * t1 * coherent +
                            orth * orth * t1 * t1 * t1 * t1;

    return {
        {terms::pair_hv, p2},       {terms::pair_vh, p2},
        {terms::quad_hhvv, p4_same}, {terms::quad_hvhv, p4_mixed},
        {terms::quad_vvhh, p4_same},
    };
}

std::map<ModeOccupation, double> amplification_ratios(
    const DoublePassConfig& cfg) {
    check_common(cfg);
    if (cfg.tau1 != cfg.tau2) {
        throw std::invalid_argument(
            "amplification ratios are defined for tau1 == tau2");
    }
    DoublePassConfig coherent = cfg;
    coherent.overlap = 1.0;
    coherent.theta = 0.0;
    DoublePassConfig distinguishable = coherent;
    distinguishable.overlap = 0.0;

    const auto stimulated = perturbative_probabilities(coherent);
    const auto spontaneous = perturbative_probabilities(distinguishable);
    std::map<ModeOccupation, double> ratios;
    for (const auto& [term, p] : stimulated) {
        ratios[term] = p / spontaneous.at(term);
    }
    return ratios;
}

SecondPassGain second_pass_gain(const DoublePassConfig& cfg) {
    check_common(cfg);
    if (cfg.theta != 0.0 || cfg.overlap != 1.0) {
        throw OutOfValidity(
            "second-pass gain is defined at theta = 0, overlap = 1");
    }
    if (cfg.tau1 <= 0.0) {
        throw std::invalid_argument("second-pass gain requires tau1 > 0");
    }
    const double g2 = (cfg.tau1 + cfg.tau2) * (cfg.tau1 + cfg.tau2) /
                      (cfg.tau1 * cfg.tau1);
    return SecondPassGain{g2, g2 * g2};
}

ScanResult fringe_scan(const DoublePassConfig& cfg,
                       const std::vector<double>& thetas, int order) {
    if (order != 2 && order != 4) {
        throw std::invalid_argument("fringe order must be 2 or 4");
    }
    if (thetas.empty()) {
        throw std::invalid_argument("empty theta grid");
    }
    const ModeOccupation term =
        order == 2 ? terms::pair_hv : terms::quad_hvhv;
    ScanResult result;
    result.x_label = "theta_rad";
    result.value_labels = {"value"};
    result.term_label = ket_label(term);
    result.x.reserve(thetas.size());
    result.rows.reserve(thetas.size());
    for (size_t i = 0; i < thetas.size(); ++i) {
        if (i > 0 && !(thetas[i] > thetas[i - 1])) {
            throw std::invalid_argument("theta grid must increase strictly");
        }
        DoublePassConfig at = cfg;
        at.theta = thetas[i];
        result.x.push_back(thetas[i]);
        result.rows.push_back({perturbative_probabilities(at).at(term)});
    }
    return result;
}

double coherence_envelope(const DoublePassConfig& cfg, double delay_um) {
    if (!(cfg.coherence_length_um > 0.0)) {
        throw std::invalid_argument("coherence length must be positive");
    }
    const double r = delay_um / cfg.coherence_length_um;
    return std::exp(-0.5 * r * r);
}

ScanResult delay_scan(const DoublePassConfig& cfg,
                      const std::vector<double>& delays_um,
                      const ModeOccupation& term) {
    if (!is_monitored_term(term)) {
        throw std::invalid_argument("unknown coincidence term " +
                                    ket_label(term));
    }
    if (delays_um.empty()) {
        throw std::invalid_argument("empty delay grid");
    }
    if (!(cfg.pump_wavelength_um > 0.0)) {
        throw std::invalid_argument("pump wavelength must be positive");
    }
    constexpr double kPi = 3.14159265358979323846;
    ScanResult result;
    result.x_label = "delay_um";
    result.value_labels = {"rate_max", "rate_min", "rate_at_theta"};
    result.term_label = ket_label(term);
    result.x.reserve(delays_um.size());
    result.rows.reserve(delays_um.size());
    for (size_t i = 0; i < delays_um.size(); ++i) {
        if (i > 0 && !(delays_um[i] > delays_um[i - 1])) {
            throw std::invalid_argument("delay grid must increase strictly");
        }
        const double d = delays_um[i];
        DoublePassConfig at = cfg;
        at.overlap = coherence_envelope(cfg, d);
        // The term probability is monotone in cos(theta), so the
        // envelope extrema sit at theta = 0 and theta = pi.
        at.theta = 0.0;
        const double top = perturbative_probabilities(at).at(term);
        at.theta = kPi;
        const double bottom = perturbative_probabilities(at).at(term);
        at.theta = 2.0 * kPi * d / cfg.pump_wavelength_um;
        const double fringe = perturbative_probabilities(at).at(term);
        result.x.push_back(d);
        result.rows.push_back({top, bottom, fringe});
    }
    return result;
}

StateVector exact_double_pass(const DoublePassConfig& cfg) {
    check_common(cfg);
    if (cfg.overlap != 1.0) {
        throw OutOfValidity(
            "the state-vector double pass models a single temporal mode; "
            "overlap must be 1");
    }
    // Adequacy for the fully constructive case tau1 + tau2.
    const PdcParams combined(cfg.tau1 + cfg.tau2, 0.0, cfg.cutoff);
    const StateVector pass1 =
        evolve_from(vacuum(cfg.cutoff), cfg.tau1, 0.0);
    return evolve_from(pass1, cfg.tau2, cfg.theta).normalized();
}

}  // namespace easer
