#include "wanderflow/numflow.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace wanderflow;

TEST_CASE("closed form for the saddle family") {
    // identity at t = 0
    for (int n : {1, 2, 5, 50}) {
        Vec2 p = saddle_closed_form(n, 0.0);
        CHECK(p.x == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(p.y == doctest::Approx(1.0 / n - 1.0).epsilon(1e-12));
    }
    // at t_n the orbit crosses (0, 1 - 1/n)
    for (int n : {2, 5, 10, 50}) {
        Vec2 p = saddle_closed_form(n, saddle_t_n(n));
        CHECK(std::fabs(p.x - 0.0) < 1e-9);
        CHECK(std::fabs(p.y - (1.0 - 1.0 / n)) < 1e-9);
    }
    // at tau_n it sits at (ln((2n-1)/n^2), 0)
    for (int n : {2, 5, 10, 50}) {
        Vec2 p = saddle_closed_form(n, saddle_tau_n(n));
        double expect_x = std::log((2.0 * n - 1.0) / (static_cast<double>(n) * n));
        CHECK(std::fabs(p.x - expect_x) < 1e-9);
        CHECK(std::fabs(p.y) < 1e-9);
    }
}

TEST_CASE("integrator matches the closed form") {
    for (int n : {2, 5, 10, 50}) {
        Vec2 p0{0.0, 1.0 / n - 1.0};
        double horizon = std::log(99.0);
        Trajectory traj = integrate(VectorField::saddle, p0, 0.0, horizon);
        for (double t = 0.0; t <= horizon; t += horizon / 16) {
            Vec2 got = traj.at(t);
            Vec2 want = saddle_closed_form(n, t);
            CHECK(dist(got, want) < 1e-6);
        }
    }
}

TEST_CASE("constant field goes straight") {
    Trajectory traj = integrate(VectorField::constant, {0, 0}, 0.0, 3.0);
    CHECK(dist(traj.end(), {3.0, 0.0}) < 1e-9);
}

TEST_CASE("a sine orbit off the separatrices conserves H = -1") {
    Vec2 p{0.0, M_PI};
    CHECK(first_integral_value(VectorField::sine, p) == doctest::Approx(-1.0));
    Trajectory traj = integrate(VectorField::sine, p, 0.0, 5.0);
    for (const auto& s : traj.steps)
        CHECK(std::fabs(first_integral_value(VectorField::sine, s.p) + 1.0) <= 1e-6);
}

TEST_CASE("first integrals") {
    CHECK(first_integral_value(VectorField::saddle, {0, 0}) == doctest::Approx(-1.0));
    CHECK(first_integral_value(VectorField::saddle, {2.5, 1.0}) == doctest::Approx(0.0));
    CHECK(first_integral_value(VectorField::saddle, {-1.0, 1.0}) == doctest::Approx(0.0));
    CHECK(first_integral_value(VectorField::constant, {7.0, 0.25}) == doctest::Approx(0.25));
    CHECK_THROWS_AS((void)first_integral_value(VectorField::sine2, {0.0, M_PI / 2}), error);
}

TEST_CASE("conservation along integrated orbits") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (VectorField f : {VectorField::constant, VectorField::saddle, VectorField::sine,
                          VectorField::sine2}) {
        for (int trial = 0; trial < 12; ++trial) {
            Vec2 p{coord(rng), coord(rng)};
            if (f == VectorField::sine2 && std::fabs(std::cos(p.y)) < 0.05) continue;
            double h0 = first_integral_value(f, p);
            for (double dir : {1.0, -1.0}) {
                Trajectory traj = integrate(f, p, 0.0, dir * 10.0);
                for (const auto& s : traj.steps) {
                    double h = first_integral_value(f, s.p);
                    CHECK(std::fabs(h - h0) <= 1e-6);
                }
            }
        }
    }
}

TEST_CASE("group law") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(-1.5, 1.5);
    std::uniform_real_distribution<double> strip(-0.95, 0.95);  // complete saddle orbits
    std::uniform_real_distribution<double> time(0.0, 3.0);
    for (VectorField f : {VectorField::saddle, VectorField::sine}) {
        for (int trial = 0; trial < 10; ++trial) {
            Vec2 p{coord(rng), f == VectorField::saddle ? strip(rng) : coord(rng)};
            double t = time(rng), s = time(rng);
            Vec2 once = integrate(f, p, 0.0, t + s).end();
            Vec2 mid = integrate(f, p, 0.0, s).end();
            Vec2 twice = integrate(f, mid, 0.0, t).end();
            CHECK(dist(once, twice) <= 1e-6);
        }
    }
}

TEST_CASE("link search") {
    SUBCASE("straight-line forward link") {
        auto rep = find_link(VectorField::constant, {0, 0}, {7, 0}, 0.1, 5.0);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->tau >= 5.0);
        CHECK(std::fabs(rep.witness->tau - 7.0) < 0.2);
        CHECK(dist(rep.witness->end, {7, 0}) < 0.1);
    }
    SUBCASE("saddle separatrix jump is found") {
        auto rep = find_link(VectorField::saddle, {0, -1}, {0, 1}, 0.05, 5.0);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->tau >= 5.0);
        CHECK(dist(rep.witness->start, {0, -1}) < 0.05);
        CHECK(dist(rep.witness->end, {0, 1}) < 0.05);
    }
    SUBCASE("no self link at a wandering point") {
        auto rep = find_link(VectorField::saddle, {0, 0}, {0, 0}, 0.01, 10.0);
        CHECK(!rep.witness.has_value());
        CHECK(rep.integrations > 0);
    }
    CHECK_THROWS_AS((void)find_link(VectorField::saddle, {0, 0}, {0, 0}, -1.0, 1.0), error);
}

TEST_CASE("no return checks") {
    auto r1 = no_return_check(VectorField::saddle, {0, 0}, 0.1, 20.0);
    CHECK(r1.left_ball);
    CHECK(!r1.returned);
    auto r2 = no_return_check(VectorField::constant, {1, 1}, 0.1, 20.0);
    CHECK(r2.left_ball);
    CHECK(!r2.returned);
    auto r3 = no_return_check(VectorField::sine, {1, 0}, 0.1, 20.0);
    CHECK(r3.left_ball);
    CHECK(!r3.returned);

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    for (VectorField f : {VectorField::constant, VectorField::saddle, VectorField::sine,
                          VectorField::sine2}) {
        int done = 0;
        while (done < 25) {
            Vec2 p{coord(rng), coord(rng)};
            if (f == VectorField::sine2 && std::fabs(std::cos(p.y)) < 0.05) continue;
            ++done;
            auto r = no_return_check(f, p, 0.1, 20.0);
            CHECK_MESSAGE(!r.returned, field_name(f), " start ", p.x, ",", p.y);
        }
    }
}

TEST_CASE("lambda1 estimation by persistent clusters") {
    SUBCASE("saddle from the lower separatrix clusters on the upper one") {
        auto est = estimate_lambda1(VectorField::saddle, {0, -1});
        REQUIRE(!est.clusters.empty());
        for (const auto& c : est.clusters) CHECK(std::fabs(c.y - 1.0) < 0.1);
    }
    SUBCASE("saddle from a wandering point leaves nothing") {
        auto est = estimate_lambda1(VectorField::saddle, {0, 0});
        CHECK(est.clusters.empty());
    }
    SUBCASE("sine from an odd separatrix clusters on both even neighbours") {
        auto est = estimate_lambda1(VectorField::sine, {0, 3 * M_PI / 2});
        REQUIRE(!est.clusters.empty());
        bool below = false, above = false;
        for (const auto& c : est.clusters) {
            bool near_lo = std::fabs(c.y - M_PI / 2) < 0.1;
            bool near_hi = std::fabs(c.y - 5 * M_PI / 2) < 0.1;
            CHECK((near_lo || near_hi));
            below = below || near_lo;
            above = above || near_hi;
        }
        CHECK(below);
        CHECK(above);
    }
    SUBCASE("schedule must sharpen") {
        CHECK_THROWS_AS(
            (void)estimate_lambda1(VectorField::saddle, {0, 0}, {{0.1, 2.0}, {0.2, 4.0}}),
            error);
    }
}
