#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bohr/errors.hpp"
#include "bohr/maps.hpp"

using namespace bohr;

TEST_CASE("mobius map evaluation") {
    MapDescriptor f = mobius_map(3, 2.0, 0.5);

    SUBCASE("value at the origin") {
        cvec z(3, complexd{0, 0});
        cvec v = map_eval(f, z);
        CHECK(std::abs(v[0] - complexd{0.5, 0}) < 1e-15);
        CHECK(std::abs(v[1]) == 0.0);
        CHECK(std::abs(v[2]) == 0.0);
    }

    SUBCASE("value on the axis") {
        cvec z{complexd{0.5, 0}, complexd{0, 0}, complexd{0, 0}};
        cvec v = map_eval(f, z);
        CHECK(std::abs(v[0] - complexd{0.8, 0}) < 1e-15); // (0.5+0.5)/(1+0.25)
    }

    SUBCASE("matches the scalar Mobius along the axis") {
        for (double re : {-0.6, -0.2, 0.1, 0.4}) {
            for (double im : {-0.3, 0.0, 0.5}) {
                complexd zeta{re, im};
                if (std::abs(zeta) >= 1.0) continue;
                cvec z{zeta, complexd{0, 0}, complexd{0, 0}};
                cvec v = map_eval(f, z);
                complexd expected = (0.5 + zeta) / (1.0 + 0.5 * zeta);
                CHECK(std::abs(v[0] - expected) <= 1e-14);
                CHECK(std::abs(v[1]) <= 1e-14);
            }
        }
    }

    SUBCASE("point outside the open ball rejected") {
        cvec z{complexd{1.0, 0}, complexd{0.5, 0}, complexd{0, 0}};
        CHECK_THROWS_AS(map_eval(f, z), precondition_error);
    }
}

TEST_CASE("identity and constant maps") {
    MapDescriptor id = identity_map(2, 2.0);
    cvec z{complexd{0.3, 0}, complexd{0.2, 0}};
    cvec v = map_eval(id, z);
    CHECK(std::abs(v[0] - z[0]) < 1e-15);
    CHECK(std::abs(v[1] - z[1]) < 1e-15);

    MapDescriptor c = constant_map(2.0, cvec{complexd{0.3, 0}, complexd{0, 0}});
    cvec w = map_eval(c, z);
    CHECK(std::abs(w[0] - complexd{0.3, 0}) < 1e-15);
    CHECK(std::abs(w[1]) == 0.0);
}

TEST_CASE("self-map violation detected") {
    // 2*z_1 exits the polydisc well inside the ball.
    MapDescriptor bad = constant_map(2.0, cvec{complexd{0, 0}});
    bad.kind = Polynomial{{PolyTerm{{1}, cvec{complexd{2.0, 0}}}}};
    cvec z{complexd{0.9, 0}};
    CHECK_THROWS_AS(map_eval(bad, z), invalid_map_error);
}

TEST_CASE("schwarz mappings") {
    SUBCASE("k = 1 is the identity") {
        SchwarzMapSpec v{1, cvec{complexd{1, 0}, complexd{0, 0}}, 2.0};
        cvec z{complexd{0.2, 0.1}, complexd{-0.3, 0}};
        cvec out = schwarz_eval(v, z);
        CHECK(std::abs(out[0] - z[0]) < 1e-15);
        CHECK(std::abs(out[1] - z[1]) < 1e-15);
    }

    SUBCASE("k = 2 on the axis squares the radius") {
        SchwarzMapSpec v{2, cvec{complexd{1, 0}, complexd{0, 0}}, 2.0};
        cvec z{complexd{0.7, 0}, complexd{0, 0}};
        cvec out = schwarz_eval(v, z);
        CHECK(std::abs(out[0] - complexd{0.49, 0}) < 1e-15);
        CHECK(std::abs(out[1]) == 0.0);
    }

    SUBCASE("norm bound ||v(z)|| <= ||z||^k over random probes") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(-0.5, 0.5);
        for (double t : {1.0, 2.0, 3.0, t_infinity}) {
            for (int k : {1, 2, 3, 5}) {
                for (int trial = 0; trial < 300; ++trial) {
                    cvec z0{complexd{u(rng), u(rng)}, complexd{u(rng), u(rng)}};
                    double n0 = lt_norm(z0, t);
                    if (n0 < 1e-6) continue;
                    for (auto& w : z0) w /= n0;
                    SchwarzMapSpec v{k, z0, t};
                    cvec z{complexd{u(rng), u(rng)}, complexd{u(rng), u(rng)}};
                    double nz = lt_norm(z, t);
                    if (nz >= 1.0) continue;
                    cvec out = schwarz_eval(v, z);
                    CHECK(lt_norm(out, t) <= std::pow(nz, k) + 1e-12);
                }
            }
        }
    }

    SUBCASE("eta flips the value, not the bound") {
        SchwarzMapSpec v{2, cvec{complexd{1, 0}}, 2.0, complexd{-1.0, 0.0}};
        cvec z{complexd{0.5, 0}};
        cvec out = schwarz_eval(v, z);
        CHECK(std::abs(out[0] - complexd{-0.25, 0}) < 1e-15);
    }

    SUBCASE("exact norm along the base ray") {
        cvec z0{complexd{0.6, 0}, complexd{0.8, 0}};
        SchwarzMapSpec v{3, z0, 2.0};
        cvec z{complexd{0.3, 0}, complexd{0.4, 0}}; // 0.5 * z0
        cvec out = schwarz_eval(v, z);
        CHECK(lt_norm(out, 2.0) == doctest::Approx(0.125).epsilon(1e-13));
    }
}

TEST_CASE("descriptor json round trips") {
    SUBCASE("spec wire format parses") {
        MapDescriptor m = map_from_json(R"({"n":2,"t":2,"kind":{"mobius":{"b":0.9,"coord":1}}})");
        CHECK(m.n == 2);
        CHECK(m.t == 2.0);
        CHECK(std::get<MobiusCoord>(m.kind).b == 0.9);

        SchwarzMapSpec s = schwarz_from_json(R"({"k":2,"z0":[[1.0,0.0],[0.0,0.0]],"t":2})");
        CHECK(s.k == 2);
        CHECK(s.eta == complexd{1.0, 0.0});
    }

    SUBCASE("every kind round trips exactly") {
        std::vector<MapDescriptor> cases;
        cases.push_back(mobius_map(2, 2.0, 0.9));
        cases.push_back(identity_map(3, 1.5));
        cases.push_back(lacunary_map(2, t_infinity, 2, 1, complexd{0.3, 0.1},
                                     cvec{complexd{0.25, 0}, complexd{0.125, -0.0625}}));
        cases.push_back(rotated_map({0.5, -1.25}, mobius_map(2, 2.0, 1.0 / 3.0)));
        cases.push_back(composed_map(mobius_map(2, 2.0, 0.7),
                                     SchwarzMapSpec{2, cvec{complexd{1, 0}, complexd{0, 0}}, 2.0,
                                                    complexd{-1.0, 0.0}}));
        for (const auto& m : cases) {
            MapDescriptor back = map_from_json(to_json(m));
            CHECK(back == m);
            // Serialized form is stable under a second pass.
            CHECK(to_json(back) == to_json(m));
        }
    }

    SUBCASE("schwarz spec round trips with eta") {
        SchwarzMapSpec s{4, cvec{complexd{0.6, 0}, complexd{0, -0.8}}, 3.0, complexd{0, 1}};
        SchwarzMapSpec back = schwarz_from_json(to_json(s));
        CHECK(back == s);
    }
}
