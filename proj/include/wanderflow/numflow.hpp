#pragma once

#include "wanderflow/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wanderflow {

struct Vec2 {
    double x = 0, y = 0;
};

inline double dist(const Vec2& a, const Vec2& b) {
    double dx = a.x - b.x, dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

// The four reference fields, each with a conserved first integral:
//   constant: (1, 0)           H = y
//   saddle:   (2y, 1 - y^2)    H = (y^2 - 1) e^x
//   sine:     (sin y, cos y)   H = e^x cos y
//   sine2:    (sin y, cos^2 y) H = sec y - x
enum class VectorField { constant, saddle, sine, sine2 };

VectorField field_from_name(const std::string& name);
std::string field_name(VectorField f);

Vec2 field_eval(VectorField f, const Vec2& p);
// H(p); throws near the sec-pole of sine2.
double first_integral_value(VectorField f, const Vec2& p);

struct IntegratorConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double max_step = 0.25;
    double init_step = 1e-3;
    // sine2 runs stop once |cos y| falls below this guard
    double sine2_clamp = 1e-6;
    // runs stop once a coordinate passes this bound (the saddle field blows
    // up in finite time outside the strip |y| < 1, and state accuracy decays
    // fast on the approach)
    double escape_radius = 50.0;
    // conservative projection: after each accepted step the state is pulled
    // back onto the level set of the first integral. Without it the drift of
    // (y^2-1)e^x along separatrix-hugging saddle orbits grows like e^|2t|
    // times the machine resolution of y.
    bool project_first_integral = true;
};

struct Trajectory {
    struct Step {
        double t;
        Vec2 p;
        Vec2 v;  // derivative at p, for dense evaluation
    };
    std::vector<Step> steps;  // monotone in |t| from t0
    bool clamped = false;
    double clamp_time = 0;
    bool escaped = false;
    double escape_time = 0;

    const Vec2& start() const { return steps.front().p; }
    const Vec2& end() const { return steps.back().p; }
    double t0() const { return steps.front().t; }
    double t1() const { return steps.back().t; }
    // cubic Hermite interpolation between accepted steps
    Vec2 at(double t) const;
};

// Adaptive Dormand-Prince 5(4) integration from t0 to t1 (either direction).
Trajectory integrate(VectorField f, const Vec2& p0, double t0, double t1,
                     const IntegratorConfig& cfg = {});

// Exact flow of the saddle field from p_n = (0, 1/n - 1).
Vec2 saddle_closed_form(int n, double t);
inline double saddle_t_n(int n) { return std::log(2.0 * n - 1.0); }
inline double saddle_tau_n(int n) { return 0.5 * std::log(2.0 * n - 1.0); }

struct LinkWitness {
    Vec2 start;
    double tau = 0;
    Vec2 end;
    Vec2 p, q;
    double eps = 0, T = 0;
};

struct LinkSearchReport {
    std::optional<LinkWitness> witness;
    long integrations = 0;
    double horizon = 0;
};

// Deterministic search for a trajectory segment starting within eps of p,
// ending within eps of q, of duration at least T. Absence means "not found
// under budget", never a proof.
LinkSearchReport find_link(VectorField f, const Vec2& p, const Vec2& q, double eps, double T,
                           double horizon = 0, long budget = 0,
                           const IntegratorConfig& cfg = {});

struct Lambda1Estimate {
    std::vector<Vec2> clusters;  // persistent cluster centers
    std::vector<std::pair<double, double>> schedule;
};

// Endpoint clusters of long-duration segments from ever-smaller start balls,
// filtered to those recurring over the last three schedule entries.
Lambda1Estimate estimate_lambda1(VectorField f, const Vec2& p,
                                 std::vector<std::pair<double, double>> schedule = {},
                                 double box_radius = 4.0, double horizon = 30.0,
                                 const IntegratorConfig& cfg = {});

struct NoReturnReport {
    bool left_ball = false;
    bool returned = false;
    double leave_time = 0;   // first time the distance exceeded 2*eps
    double return_time = 0;  // first re-entry into the eps ball, if any
};

// Checks that the forward trajectory, once 2*eps away from p, never re-enters
// the eps ball within the horizon.
NoReturnReport no_return_check(VectorField f, const Vec2& p, double eps, double horizon,
                               const IntegratorConfig& cfg = {});

}  // namespace wanderflow
