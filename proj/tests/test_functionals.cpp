#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bohr/errors.hpp"
#include "bohr/functionals.hpp"
#include "reference.hpp"

using namespace bohr;

namespace {

cvec e1_point(double r) { return cvec{complexd{r, 0}}; }

SchwarzMapSpec axis_schwarz(int k, complexd eta = {1.0, 0.0}) {
    return SchwarzMapSpec{k, cvec{complexd{1, 0}}, 2.0, eta};
}

} // namespace

TEST_CASE("majorant_sum") {
    SUBCASE("identity slice at r = 1/3") {
        SliceCoefficients c = mobius_slice(0.0, 8);
        CHECK(majorant_sum(c, 0, 1.0 / 3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }

    SUBCASE("mobius closed form b + (1-b^2) r / (1 - b r)") {
        for (double b : {0.2, 0.5, 0.8}) {
            SliceCoefficients c = mobius_slice(b, 64);
            double r = 1.0 / 3.0;
            double closed = b + (1.0 - b * b) * r / (1.0 - b * r);
            CHECK(majorant_sum(c, 0, r) == doctest::Approx(closed).epsilon(1e-12));
        }
        SliceCoefficients c = mobius_slice(0.5, 64);
        CHECK(majorant_sum(c, 0, 1.0 / 3.0) == doctest::Approx(0.8).epsilon(1e-12));
    }

    SUBCASE("empty sum beyond the truncation") {
        SliceCoefficients c = mobius_slice(0.5, 16);
        CHECK(majorant_sum(c, 17, 0.5) == 0.0);
    }

    SUBCASE("agrees with direct summation") {
        SliceCoefficients c = mobius_slice(0.7, 40);
        for (int N : {0, 1, 3, 10})
            CHECK(majorant_sum(c, N, 0.4) ==
                  doctest::Approx(bohr_ref::sum_majorant(c, N, 0.4)).epsilon(1e-14));
    }

    SUBCASE("r >= 1 rejected") {
        SliceCoefficients c = mobius_slice(0.5, 8);
        CHECK_THROWS_AS(majorant_sum(c, 0, 1.0), precondition_error);
    }
}

TEST_CASE("lacunary_sum") {
    SUBCASE("q = 1, m = 0 collapses to the majorant from s = 1") {
        SliceCoefficients c = mobius_slice(0.6, 32);
        for (double r : {0.1, 0.4, 0.8})
            CHECK(lacunary_sum(c, 1, 0, r) == doctest::Approx(majorant_sum(c, 1, r)).epsilon(1e-14));
    }

    SUBCASE("mobius geometric closed form at q = 2, m = 1") {
        double b = 0.5;
        SliceCoefficients c = mobius_slice(b, 64);
        double r = 0.4;
        double x = b * b * r * r;
        double closed = (1.0 - b * b) * r * x / (1.0 - x);
        CHECK(lacunary_sum(c, 2, 1, r) == doctest::Approx(closed).epsilon(1e-12));
    }

    SUBCASE("single surviving index") {
        double b = 0.3;
        SliceCoefficients c;
        c.S_max = 8;
        c.c.assign(9, 0.0);
        c.c[5] = 1.0 - b * b;
        CHECK(lacunary_sum(c, 2, 1, 0.5) ==
              doctest::Approx((1.0 - b * b) * std::pow(0.5, 5)).epsilon(1e-15));
    }
}

TEST_CASE("refined_block") {
    SUBCASE("identity slice at N = 1 hits the bound r/(1-r) exactly") {
        SliceCoefficients c = mobius_slice(0.0, 32);
        for (double r : {0.1, 0.25, 0.4, 0.6}) {
            CHECK(refined_block(c, 1, r) == doctest::Approx(r / (1.0 - r)).epsilon(1e-12));
            CHECK(refined_block(c, 1, r) ==
                  doctest::Approx(refined_bound_rhs(c.at(0), 1, r)).epsilon(1e-12));
        }
    }

    SUBCASE("N = 1 has no middle block") {
        SliceCoefficients c = mobius_slice(0.5, 32);
        double r = 0.3;
        double expected = majorant_sum(c, 1, r);
        double squares = 0.0;
        for (int s = 1; s <= 32; ++s) squares += std::pow(c.at(s) * std::pow(r, s), 2);
        expected += (1.0 / 1.5 + r / (1.0 - r)) * squares;
        CHECK(refined_block(c, 1, r) == doctest::Approx(expected).epsilon(1e-14));
    }

    SUBCASE("N = 3 matches brute-force summation to 1e-12") {
        SliceCoefficients c = mobius_slice(0.5, 64);
        CHECK(refined_block(c, 3, 0.2) ==
              doctest::Approx(bohr_ref::sum_refined_block(c, 3, 0.2)).epsilon(1e-12));
    }
}

TEST_CASE("refined_bound_rhs") {
    CHECK(refined_bound_rhs(0.0, 1, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(refined_bound_rhs(1.0, 3, 0.7) == 0.0);
    CHECK(refined_bound_rhs(0.5, 2, 1.0 / 3.0) == doctest::Approx(0.125).epsilon(1e-14));
}

TEST_CASE("schwarz_energy") {
    SUBCASE("identity slice gives r^2") {
        SliceCoefficients c = mobius_slice(0.0, 16);
        CHECK(schwarz_energy(c, 0.45) == doctest::Approx(0.2025).epsilon(1e-14));
    }

    SUBCASE("energy inequality for the Mobius family") {
        for (double b = 0.0; b < 0.995; b += 0.1) {
            SliceCoefficients c = mobius_slice(b, 64);
            for (double r = 0.05; r < 0.96; r += 0.1) {
                double bound = std::pow((1.0 - b * b) * r / (1.0 - r * r), 2);
                CHECK(schwarz_energy(c, r) <= bound + 1e-10);
            }
        }
    }

    SUBCASE("matches direct summation") {
        SliceCoefficients c = mobius_slice(0.4, 48);
        CHECK(schwarz_energy(c, 0.6) ==
              doctest::Approx(bohr_ref::sum_energy(c, 0.6)).epsilon(1e-14));
    }
}

TEST_CASE("weight_poly") {
    CHECK(weight_poly({{8.0 / 9.0}, 1.0}, 0.09) == doctest::Approx(0.08).epsilon(1e-14));
    CHECK(weight_poly({{0.0, 0.0, 0.0}, 1.0}, 3.0) == 0.0);
    CHECK(weight_poly({{1.0, 1.0}, 1.0}, 2.0) == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("cs_constant") {
    SUBCASE("s = 2 matches the stationary point (1 + 2 sqrt 2)/7") {
        double tstar = (1.0 + 2.0 * std::sqrt(2.0)) / 7.0;
        double expected = tstar * std::pow(1.0 + tstar, 2) * std::pow(1.0 - tstar * tstar, 2);
        CHECK(cs_constant(2) == doctest::Approx(expected).epsilon(1e-10));
        CHECK(cs_maximizer(2) == doctest::Approx(tstar).epsilon(1e-7));
        // frozen decimal from the stationary-point evaluation
        CHECK(cs_constant(2) == doctest::Approx(0.642902340200415).epsilon(1e-10));
    }

    SUBCASE("monotone decreasing in s") {
        double prev = cs_constant(2);
        for (int s = 3; s <= 10; ++s) {
            double cur = cs_constant(s);
            CHECK(cur < prev);
            prev = cur;
        }
    }

    SUBCASE("agrees with the dense serial grid oracle") {
        for (int s = 2; s <= 10; ++s)
            CHECK(cs_constant(s) ==
                  doctest::Approx(bohr_ref::cs_grid_max_serial(s, 1000000)).epsilon(1e-8));
    }

    SUBCASE("endpoints vanish, so the maximum is interior") {
        CHECK(cs_maximizer(3) > 0.01);
        CHECK(cs_maximizer(3) < 0.99);
    }

    SUBCASE("s < 2 rejected") { CHECK_THROWS_AS(cs_constant(1), precondition_error); }
}

TEST_CASE("mp_constant") {
    CHECK(mp_constant(1.0) == 0.375); // 3/8 exactly
    CHECK(mp_constant(0.5) == doctest::Approx(5.0 / 24.0).epsilon(1e-15));
    CHECK(mp_constant(1e-9) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK_THROWS_AS(mp_constant(0.0), precondition_error);
    CHECK_THROWS_AS(mp_constant(1.5), precondition_error);
}

TEST_CASE("check_weight_condition") {
    SUBCASE("d1 = 8/9 at p = 1 is extremal") {
        auto [holds, lhs] = check_weight_condition({{8.0 / 9.0}, 1.0});
        CHECK(holds);
        CHECK(lhs == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("zero weights trivially hold") {
        auto [holds, lhs] = check_weight_condition({{0.0, 0.0}, 1.0});
        CHECK(holds);
        CHECK(lhs == 0.0);
    }

    SUBCASE("overloaded second weight fails") {
        auto [holds, lhs] = check_weight_condition({{8.0 / 9.0, 0.5}, 1.0});
        CHECK_FALSE(holds);
        double expected = 1.0 + 6.0 * cs_constant(2) * 0.5 * std::pow(0.375, 4);
        CHECK(lhs == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("thm_lhs") {
    SUBCASE("T12 matches the extremal closed form") {
        // b^p + (1-b^2) r/(1-br) + (1-b^2)^2 r^2/((1+b)(1-r)(1-br))
        //     + (1-b^2) r^m1/(1-b r^m1),
        // the v1 difference attained with the sign-flipped Schwarz map.
        for (double b : {0.3, 0.5, 0.9}) {
            for (int m1 : {1, 2}) {
                for (double p : {1.0, 2.0}) {
                    double r = 0.21;
                    MapDescriptor map = mobius_map(1, 2.0, b);
                    std::vector<SchwarzMapSpec> schwarz{axis_schwarz(m1, {-1.0, 0.0})};
                    FunctionalReport rep = thm_lhs(Theorem::T12, map, schwarz,
                                                   T12Params{p, m1}, e1_point(r));
                    double b2 = 1.0 - b * b;
                    double closed = std::pow(b, p) + b2 * r / (1.0 - b * r) +
                                    b2 * b2 * r * r / ((1.0 + b) * (1.0 - r) * (1.0 - b * r)) +
                                    b2 * std::pow(r, m1) / (1.0 - b * std::pow(r, m1));
                    CHECK(rep.lhs == doctest::Approx(closed).epsilon(1e-9));
                }
            }
        }
    }

    SUBCASE("T14 with b = 0 assembles r^p plus the refined block") {
        double r = 0.2;
        MapDescriptor map = mobius_map(1, 2.0, 0.0);
        std::vector<SchwarzMapSpec> schwarz{axis_schwarz(1)};
        FunctionalReport rep =
            thm_lhs(Theorem::T14, map, schwarz, T14Params{1.0, 1, 1}, e1_point(r));
        CHECK(rep.lhs == doctest::Approx(r + r / (1.0 - r)).epsilon(1e-11));

        SliceCoefficients c = mobius_slice(0.0, 64);
        CHECK(rep.lhs ==
              doctest::Approx(r + bohr_ref::sum_refined_block(c, 1, r)).epsilon(1e-12));
    }

    SUBCASE("T14 brute force across orders") {
        double r = 0.3;
        double b = 0.5;
        MapDescriptor map = mobius_map(1, 2.0, b);
        SliceCoefficients c = mobius_slice(b, 64);
        for (int N : {1, 2, 3, 5}) {
            std::vector<SchwarzMapSpec> schwarz{axis_schwarz(2)};
            FunctionalReport rep =
                thm_lhs(Theorem::T14, map, schwarz, T14Params{1.5, 2, N}, e1_point(r));
            double comp = (b + r * r) / (1.0 + b * r * r);
            double expected = std::pow(comp, 1.5) + bohr_ref::sum_refined_block(c, N, r);
            CHECK(rep.lhs == doctest::Approx(expected).epsilon(1e-12));
        }
    }

    SUBCASE("T41 term assembly on the extremal family") {
        double b = 0.6;
        double r = 0.25;
        MapDescriptor map = mobius_map(1, 2.0, b);
        T41Params P{1.0, 0.7, 1.3, 2, 1, 2, false, 3};
        std::vector<SchwarzMapSpec> schwarz{axis_schwarz(P.m1), axis_schwarz(P.m2, {-1.0, 0.0})};
        FunctionalReport rep = thm_lhs(Theorem::T41, map, schwarz, P, e1_point(r));

        double b2 = 1.0 - b * b;
        double comp = (b + r * r) / (1.0 + b * r * r);
        double x = std::pow(b, P.q) * std::pow(r, P.q);
        double lac = b2 * std::pow(b, P.m - 1) * std::pow(r, P.m) * x / (1.0 - x);
        double diff = b2 * std::pow(r, P.m2) / (1.0 - b * std::pow(r, P.m2));
        CHECK(rep.lhs ==
              doctest::Approx(std::pow(comp, P.p) + P.mu * lac + P.nu * diff).epsilon(1e-10));
    }

    SUBCASE("T41 with the m1 limit flag uses ||f(0)||^p") {
        double b = 0.7;
        double r = 0.15;
        MapDescriptor map = mobius_map(1, 2.0, b);
        T41Params P{1.0, 1.0, 1.0, 1, 0, 1, true, 1};
        std::vector<SchwarzMapSpec> schwarz{axis_schwarz(1), axis_schwarz(1, {-1.0, 0.0})};
        FunctionalReport rep = thm_lhs(Theorem::T41, map, schwarz, P, e1_point(r));
        double b2 = 1.0 - b * b;
        double expected = b + b2 * r / (1.0 - b * r) + b2 * r / (1.0 - b * r);
        CHECK(rep.lhs == doctest::Approx(expected).epsilon(1e-11));
    }

    SUBCASE("mu = nu = 0 rejected") {
        MapDescriptor map = mobius_map(1, 2.0, 0.5);
        T41Params P{1.0, 0.0, 0.0, 1, 0, 1, false, 1};
        std::vector<SchwarzMapSpec> schwarz{axis_schwarz(1), axis_schwarz(1)};
        CHECK_THROWS_AS(thm_lhs(Theorem::T41, map, schwarz, P, e1_point(0.2)),
                        precondition_error);
    }

    SUBCASE("T21 weight condition enforcement") {
        MapDescriptor map = mobius_map(1, 2.0, 0.5);
        T21Params good{{{8.0 / 9.0}, 1.0}};
        CHECK_NOTHROW(thm_lhs(Theorem::T21, map, {}, ThmParams{good}, e1_point(0.2)));
        T21Params bad{{{2.0}, 1.0}};
        CHECK_THROWS_AS(thm_lhs(Theorem::T21, map, {}, ThmParams{bad}, e1_point(0.2)),
                        weight_condition_error);
    }

    SUBCASE("T21 assembly against direct sums") {
        double b = 0.4;
        double r = 0.3;
        MapDescriptor map = mobius_map(1, 2.0, b);
        T21Params P{{{0.4, 0.1}, 1.0}};
        FunctionalReport rep = thm_lhs(Theorem::T21, map, {}, P, e1_point(r));
        SliceCoefficients c = mobius_slice(b, 64);
        double Sz = bohr_ref::sum_energy(c, r);
        double expected =
            b + bohr_ref::sum_refined_block(c, 1, r) + 0.4 * Sz + 0.1 * Sz * Sz;
        CHECK(rep.lhs == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("report terms add up to the lhs") {
        MapDescriptor map = mobius_map(1, 2.0, 0.5);
        std::vector<SchwarzMapSpec> schwarz{axis_schwarz(1, {-1.0, 0.0})};
        FunctionalReport rep =
            thm_lhs(Theorem::T12, map, schwarz, T12Params{1.0, 1}, e1_point(0.15));
        double total = 0.0;
        for (const auto& [name, value] : rep.terms) total += value;
        CHECK(rep.lhs == doctest::Approx(total).epsilon(1e-12));
        CHECK(rep.margin == doctest::Approx(1.0 - rep.lhs - rep.tail).epsilon(1e-12));
    }

    SUBCASE("monotone nondecreasing in r on random slices") {
        std::mt19937_64 rng(23);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            SliceCoefficients c;
            c.S_max = 16;
            c.c.assign(17, 0.0);
            c.c[0] = 0.5 * u(rng);
            double cap = 1.0 - c.c[0] * c.c[0];
            for (int s = 1; s <= 16; ++s) c.c[static_cast<std::size_t>(s)] = cap * u(rng);
            double prev_block = 0.0;
            double prev_energy = 0.0;
            double prev_major = 0.0;
            for (double r = 0.05; r < 0.9; r += 0.05) {
                double block = refined_block(c, 2, r);
                double energy = schwarz_energy(c, r);
                double major = majorant_sum(c, 0, r);
                CHECK(block >= prev_block - 1e-14);
                CHECK(energy >= prev_energy - 1e-14);
                CHECK(major >= prev_major - 1e-14);
                prev_block = block;
                prev_energy = energy;
                prev_major = major;
            }
        }
    }
}
