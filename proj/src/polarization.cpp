#include "easer/polarization.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace easer {

namespace {

// Exact in double precision up to 18!, then correctly rounded.
double factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(171, 1.0);
        for (int i = 1; i <= 170; ++i) {
            t[i] = t[i - 1] * double(i);
        }
        return t;
    }();
    return table[size_t(n)];
}

double binomial(int n, int k) {
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// std::pow(complex, 0) of a zero base is NaN territory; keep it exact.
Complex ipow(const Complex& base, int exponent) {
    Complex result{1.0, 0.0};
    for (int i = 0; i < exponent; ++i) {
        result *= base;
    }
    return result;
}

// Single-mode transport: |nH, nV> re-expanded in the new operators.
// From h+ -> hh h+ + vh v+ and v+ -> hv h+ + vv v+,
//   |nH,nV> = (h+)^nH (v+)^nV / sqrt(nH! nV!) |0>
// expands into sum over (j photons of the nH staying H, k of the nV
// turning H) with coefficient
//   C(nH,j) C(nV,k) hh^j vh^(nH-j) hv^k vv^(nV-k)
//     * sqrt((j+k)! (nH+nV-j-k)!) / sqrt(nH! nV!).
std::vector<std::pair<std::array<int, 2>, Complex>> transport_single_mode(
    int nH, int nV, const PolarizationUnitary& u) {
    const int total = nH + nV;
    std::vector<Complex> by_new_h(size_t(total) + 1, Complex{0.0, 0.0});
    const double base = std::sqrt(factorial(nH) * factorial(nV));
    for (int j = 0; j <= nH; ++j) {
        for (int k = 0; k <= nV; ++k) {
            Complex coef = binomial(nH, j) * binomial(nV, k) *
                           ipow(u.hh, j) * ipow(u.vh, nH - j) *
                           ipow(u.hv, k) * ipow(u.vv, nV - k);
            const int p = j + k;
            coef *= std::sqrt(factorial(p) * factorial(total - p)) / base;
            by_new_h[size_t(p)] += coef;
        }
    }
    std::vector<std::pair<std::array<int, 2>, Complex>> out;
    for (int p = 0; p <= total; ++p) {
        if (by_new_h[size_t(p)] != Complex{0.0, 0.0}) {
            out.push_back({{p, total - p}, by_new_h[size_t(p)]});
        }
    }
    return out;
}

}  // namespace

bool PolarizationUnitary::is_unitary(double tol) const {
    // U U+ = 1 entrywise.
    const Complex r00 = hh * std::conj(hh) + hv * std::conj(hv);
    const Complex r01 = hh * std::conj(vh) + hv * std::conj(vv);
    const Complex r11 = vh * std::conj(vh) + vv * std::conj(vv);
    return std::abs(r00 - Complex{1.0, 0.0}) <= tol &&
           std::abs(r01) <= tol &&
           std::abs(r11 - Complex{1.0, 0.0}) <= tol;
}

PolarizationUnitary PolarizationUnitary::identity() {
    return PolarizationUnitary{};
}

PolarizationUnitary PolarizationUnitary::rotation(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return PolarizationUnitary{{c, 0.0}, {s, 0.0}, {-s, 0.0}, {c, 0.0}};
}

PolarizationUnitary PolarizationUnitary::diagonal() {
    return rotation(std::atan(1.0));  // pi/4
}

PolarizationUnitary compose(const PolarizationUnitary& second,
                            const PolarizationUnitary& first) {
    return PolarizationUnitary{
        second.hh * first.hh + second.hv * first.vh,
        second.hh * first.hv + second.hv * first.vv,
        second.vh * first.hh + second.vv * first.vh,
        second.vh * first.hv + second.vv * first.vv,
    };
}

StateVector rotate(const StateVector& state, SpatialMode mode,
                   const PolarizationUnitary& u) {
    if (!u.is_unitary()) {
        throw NotUnitary("polarization basis change is not unitary");
    }
    const bool on_a = mode == SpatialMode::a || mode == SpatialMode::both;
    const bool on_b = mode == SpatialMode::b || mode == SpatialMode::both;
    AmplitudeMap out;
    for (const auto& [occ, amp] : state.amplitudes()) {
        const auto parts_a =
            on_a ? transport_single_mode(occ.aH, occ.aV, u)
                 : std::vector<std::pair<std::array<int, 2>, Complex>>{
                       {{occ.aH, occ.aV}, {1.0, 0.0}}};
        const auto parts_b =
            on_b ? transport_single_mode(occ.bH, occ.bV, u)
                 : std::vector<std::pair<std::array<int, 2>, Complex>>{
                       {{occ.bH, occ.bV}, {1.0, 0.0}}};
        for (const auto& [ka, ca] : parts_a) {
            for (const auto& [kb, cb] : parts_b) {
                const ModeOccupation target{ka[0], ka[1], kb[0], kb[1]};
                out[target] += amp * ca * cb;
            }
        }
    }
    return StateVector(state.cutoff(), std::move(out));
}

StateVector half_wave_swap(const StateVector& state, SpatialMode mode) {
    const bool on_a = mode == SpatialMode::a || mode == SpatialMode::both;
    const bool on_b = mode == SpatialMode::b || mode == SpatialMode::both;
    AmplitudeMap out;
    for (const auto& [occ, amp] : state.amplitudes()) {
        ModeOccupation swapped = occ;
        if (on_a) {
            std::swap(swapped.aH, swapped.aV);
        }
        if (on_b) {
            std::swap(swapped.bH, swapped.bV);
        }
        out[swapped] += amp;
    }
    return StateVector(state.cutoff(), std::move(out));
}

}  // namespace easer
