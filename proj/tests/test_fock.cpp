#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "easer/fock.hpp"
#include "test_util.hpp"

using namespace easer;

TEST_CASE("vacuum holds unit amplitude on the empty occupation") {
    for (int cutoff : {0, 1, 5, 12}) {
        const StateVector v = vacuum(cutoff);
        CHECK(v.amplitude(ModeOccupation{}) == Complex{1.0, 0.0});
        CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(v.is_vacuum());
        CHECK(v.amplitudes().size() == 1);
    }
}

TEST_CASE("occupation accessors and labels") {
    const ModeOccupation occ{1, 0, 0, 1};
    CHECK(occ.count(Slot::aH) == 1);
    CHECK(occ.count(Slot::bV) == 1);
    CHECK(occ.with_count(Slot::aV, 3) == ModeOccupation{1, 3, 0, 1});
    CHECK(occ.mode_a_total() == 1);
    CHECK(occ.total() == 2);
    CHECK(occ.pair_structured());
    CHECK(!ModeOccupation{1, 0, 0, 0}.pair_structured());
    CHECK(ket_label(occ) == "|1 0;0 1>");
    CHECK(ket_label(ModeOccupation{2, 0, 0, 2}) == "|2 0;0 2>");
}

TEST_CASE("cutoff counts pairs: each spatial mode holds at most cutoff") {
    CHECK(ModeOccupation{2, 0, 0, 2}.within_cutoff(2));
    CHECK(ModeOccupation{1, 1, 1, 1}.within_cutoff(2));
    CHECK(!ModeOccupation{2, 1, 0, 0}.within_cutoff(2));
    CHECK(!ModeOccupation{0, 0, 3, 0}.within_cutoff(2));
    CHECK_THROWS_AS(basis_state(1, ModeOccupation{2, 0, 0, 0}),
                    CutoffExceeded);
}

TEST_CASE("raising a slot carries the sqrt(n+1) factor") {
    const StateVector one = apply_ladder(vacuum(3), Slot::aH,
                                         LadderDirection::raise);
    CHECK(one.amplitude(ModeOccupation{1, 0, 0, 0}) == Complex{1.0, 0.0});

    const StateVector two = apply_ladder(one, Slot::aH,
                                         LadderDirection::raise);
    CHECK(two.amplitude(ModeOccupation{2, 0, 0, 0}).real() ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(two.amplitudes().size() == 1);
}

TEST_CASE("lowering an empty slot annihilates the component") {
    const StateVector lowered = apply_ladder(vacuum(3), Slot::bH,
                                             LadderDirection::lower);
    CHECK(lowered.norm() == 0.0);
}

TEST_CASE("raising past the truncation throws instead of dropping weight") {
    const StateVector edge = basis_state(1, ModeOccupation{1, 0, 0, 0});
    CHECK_THROWS_AS(apply_ladder(edge, Slot::aH, LadderDirection::raise),
                    CutoffExceeded);
    CHECK_THROWS_AS(apply_ladder(edge, Slot::aV, LadderDirection::raise),
                    CutoffExceeded);
    CHECK_NOTHROW(apply_ladder(edge, Slot::bH, LadderDirection::raise));
}

TEST_CASE("inner product is conjugate-linear in the left argument") {
    CHECK(inner_product(vacuum(2), vacuum(2)) == Complex{1.0, 0.0});

    const StateVector hv = basis_state(2, ModeOccupation{1, 0, 0, 1});
    const StateVector vh = basis_state(2, ModeOccupation{0, 1, 1, 0});
    CHECK(inner_product(hv, vh) == Complex{0.0, 0.0});

    const StateVector left =
        StateVector(2, {{ModeOccupation{}, Complex{0.0, 1.0}}});
    const StateVector right =
        StateVector(2, {{ModeOccupation{}, Complex{2.0, 0.0}}});
    CHECK(inner_product(left, right) == Complex{0.0, -2.0});
    CHECK(inner_product(right, left) == Complex{0.0, 2.0});
}

TEST_CASE("the two-photon Bell combination is normalized") {
    const double r = 1.0 / std::sqrt(2.0);
    const StateVector bell(2, {{ModeOccupation{1, 0, 0, 1}, Complex{r, 0.0}},
                               {ModeOccupation{0, 1, 1, 0}, Complex{-r, 0.0}}});
    CHECK(std::abs(inner_product(bell, bell).real() - 1.0) < 1e-15);
    CHECK(inner_product(bell, bell).imag() == 0.0);
}

TEST_CASE("ladder adjointness on random states") {
    std::mt19937_64 rng(0xfeedULL);
    for (int round = 0; round < 25; ++round) {
        const StateVector phi = testutil::random_state(rng, 6, 6);
        const StateVector psi = testutil::random_state(rng, 6, 5);
        for (Slot s : {Slot::aH, Slot::aV, Slot::bH, Slot::bV}) {
            const Complex lhs = inner_product(
                phi, apply_ladder(psi, s, LadderDirection::raise));
            const Complex rhs = inner_product(
                apply_ladder(phi, s, LadderDirection::lower), psi);
            CHECK(std::abs(lhs - rhs) < 1e-12);
        }
    }
}

TEST_CASE("lower after raise exceeds raise after lower by exactly one") {
    const ModeOccupation occ{2, 1, 0, 3};
    const StateVector ket = basis_state(6, occ);
    for (Slot s : {Slot::aH, Slot::aV, Slot::bH, Slot::bV}) {
        const StateVector down_up = apply_ladder(
            apply_ladder(ket, s, LadderDirection::raise), s,
            LadderDirection::lower);
        const StateVector up_down = apply_ladder(
            apply_ladder(ket, s, LadderDirection::lower), s,
            LadderDirection::raise);
        const Complex diff =
            down_up.amplitude(occ) - up_down.amplitude(occ);
        CHECK(diff.real() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(diff.imag() == 0.0);
    }
}

TEST_CASE("pruning drops exact zeros without changing the state") {
    AmplitudeMap amps;
    amps[ModeOccupation{1, 0, 0, 1}] = Complex{0.5, 0.0};
    amps[ModeOccupation{0, 1, 1, 0}] = Complex{0.0, 0.0};
    const StateVector s(3, amps);
    const StateVector p = s.pruned();
    CHECK(p.amplitudes().size() == 1);
    CHECK(p.norm() == s.norm());
    CHECK(inner_product(p, s).real() == doctest::Approx(s.norm_squared()));
}

TEST_CASE("normalized rescales to unit norm") {
    const StateVector s(2, {{ModeOccupation{1, 0, 0, 1}, Complex{3.0, 4.0}}});
    CHECK(s.norm() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(s.normalized().norm() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("add and scale combine amplitudes componentwise") {
    const StateVector a = basis_state(2, ModeOccupation{1, 0, 0, 1});
    const StateVector b = basis_state(2, ModeOccupation{0, 1, 1, 0});
    const StateVector sum = add(a, scale(Complex{-2.0, 0.0}, b));
    CHECK(sum.amplitude(ModeOccupation{1, 0, 0, 1}) == Complex{1.0, 0.0});
    CHECK(sum.amplitude(ModeOccupation{0, 1, 1, 0}) == Complex{-2.0, 0.0});
}

TEST_CASE("state construction rejects bad input") {
    CHECK_THROWS_AS(StateVector(-1, {}), std::invalid_argument);
    AmplitudeMap beyond;
    beyond[ModeOccupation{3, 0, 0, 0}] = Complex{1.0, 0.0};
    CHECK_THROWS_AS(StateVector(2, beyond), CutoffExceeded);
}
