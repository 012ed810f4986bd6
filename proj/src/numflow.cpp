#include "wanderflow/numflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace wanderflow {

VectorField field_from_name(const std::string& name) {
    if (name == "constant") return VectorField::constant;
    if (name == "saddle") return VectorField::saddle;
    if (name == "sine") return VectorField::sine;
    if (name == "sine2") return VectorField::sine2;
    throw error("unknown field '" + name + "' (constant|saddle|sine|sine2)");
}

std::string field_name(VectorField f) {
    switch (f) {
        case VectorField::constant: return "constant";
        case VectorField::saddle: return "saddle";
        case VectorField::sine: return "sine";
        case VectorField::sine2: return "sine2";
    }
    return "?";
}

Vec2 field_eval(VectorField f, const Vec2& p) {
    switch (f) {
        case VectorField::constant: return {1.0, 0.0};
        case VectorField::saddle: return {2.0 * p.y, 1.0 - p.y * p.y};
        case VectorField::sine: return {std::sin(p.y), std::cos(p.y)};
        case VectorField::sine2: {
            double c = std::cos(p.y);
            return {std::sin(p.y), c * c};
        }
    }
    return {};
}

double first_integral_value(VectorField f, const Vec2& p) {
    switch (f) {
        case VectorField::constant: return p.y;
        case VectorField::saddle:
            // factored form stays accurate while orbits hug y = +-1
            return (p.y - 1.0) * (p.y + 1.0) * std::exp(p.x);
        case VectorField::sine: return std::exp(p.x) * std::cos(p.y);
        case VectorField::sine2: {
            double c = std::cos(p.y);
            if (std::fabs(c) < 1e-9)
                throw error("first integral pole: cos y vanishes at y = " + std::to_string(p.y));
            return 1.0 / c - p.x;
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {

constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200,
                 E6 = 22.0 / 525, E7 = -1.0 / 40;

Vec2 axpy(const Vec2& p, double h, double c1, const Vec2& k1, double c2 = 0, const Vec2& k2 = {},
          double c3 = 0, const Vec2& k3 = {}, double c4 = 0, const Vec2& k4 = {}, double c5 = 0,
          const Vec2& k5 = {}, double c6 = 0, const Vec2& k6 = {}) {
    return {p.x + h * (c1 * k1.x + c2 * k2.x + c3 * k3.x + c4 * k4.x + c5 * k5.x + c6 * k6.x),
            p.y + h * (c1 * k1.y + c2 * k2.y + c3 * k3.y + c4 * k4.y + c5 * k5.y + c6 * k6.y)};
}

bool finite(const Vec2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

Vec2 integral_gradient(VectorField f, const Vec2& p) {
    switch (f) {
        case VectorField::constant: return {0.0, 1.0};
        case VectorField::saddle: {
            double ex = std::exp(p.x);
            return {(p.y * p.y - 1.0) * ex, 2.0 * p.y * ex};
        }
        case VectorField::sine: {
            double ex = std::exp(p.x);
            return {ex * std::cos(p.y), -ex * std::sin(p.y)};
        }
        case VectorField::sine2: {
            double c = std::cos(p.y);
            return {-1.0, std::sin(p.y) / (c * c)};
        }
    }
    return {};
}

// Projection back onto the level set H = h0. A gradient Newton step is
// followed by single-coordinate corrections: along separatrix-hugging saddle
// orbits the y-lattice is too coarse to hit the level set, while x still has
// plenty of resolution.
Vec2 project_onto_level(VectorField f, const Vec2& p, double h0) {
    auto residual_at = [&](const Vec2& q, double& out) {
        try {
            out = first_integral_value(f, q) - h0;
        } catch (const error&) {
            return false;
        }
        return std::isfinite(out);
    };

    Vec2 best = p;
    double best_r;
    if (!residual_at(best, best_r)) return p;

    // corrections are local error cleanup; a level set this flat (H near a
    // separatrix value) would demand macroscopic moves, which must not happen
    const double cap = 1e-5 * (1.0 + std::fabs(p.x) + std::fabs(p.y));
    auto within_cap = [&](const Vec2& c) {
        return std::fabs(c.x - p.x) <= cap && std::fabs(c.y - p.y) <= cap;
    };

    for (int iter = 0; iter < 4; ++iter) {
        if (best_r == 0) break;
        Vec2 g = integral_gradient(f, best);
        double g2 = g.x * g.x + g.y * g.y;
        std::vector<Vec2> candidates;
        if (g2 > 1e-30) {
            double lambda = best_r / g2;
            candidates.push_back({best.x - lambda * g.x, best.y - lambda * g.y});
        }
        if (std::fabs(g.x) > 1e-30) candidates.push_back({best.x - best_r / g.x, best.y});
        if (std::fabs(g.y) > 1e-30) candidates.push_back({best.x, best.y - best_r / g.y});
        bool improved = false;
        for (const Vec2& c : candidates) {
            double r;
            if (!finite(c) || !within_cap(c) || !residual_at(c, r)) continue;
            if (std::fabs(r) < std::fabs(best_r)) {
                best = c;
                best_r = r;
                improved = true;
            }
        }
        if (!improved) break;
    }
    return best;
}

}  // namespace

Trajectory integrate(VectorField f, const Vec2& p0, double t0, double t1,
                     const IntegratorConfig& cfg) {
    if (!std::isfinite(t0) || !std::isfinite(t1)) throw error("non-finite time span");
    Trajectory traj;
    Vec2 y = p0;
    Vec2 k1 = field_eval(f, y);
    traj.steps.push_back({t0, y, k1});
    if (t0 == t1) return traj;

    double dir = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(cfg.init_step, cfg.max_step);
    long steps = 0;
    const long max_steps = 4'000'000;

    bool project = cfg.project_first_integral;
    double h0 = 0;
    if (project) {
        try {
            h0 = first_integral_value(f, p0);
        } catch (const error&) {
            project = false;  // start sits on a pole of H
        }
    }

    while (dir * (t1 - t) > 0) {
        if (++steps > max_steps)
            throw error("integration step failure at t = " + std::to_string(t));
        if (dir * (t + h - t1) > 0) h = t1 - t;

        Vec2 k2 = field_eval(f, axpy(y, h, A21, k1));
        Vec2 k3 = field_eval(f, axpy(y, h, A31, k1, A32, k2));
        Vec2 k4 = field_eval(f, axpy(y, h, A41, k1, A42, k2, A43, k3));
        Vec2 k5 = field_eval(f, axpy(y, h, A51, k1, A52, k2, A53, k3, A54, k4));
        Vec2 k6 = field_eval(f, axpy(y, h, A61, k1, A62, k2, A63, k3, A64, k4, A65, k5));
        Vec2 y1 = axpy(y, h, B1, k1, 0, {}, B3, k3, B4, k4, B5, k5, B6, k6);
        Vec2 k7 = field_eval(f, y1);

        double ex = h * (E1 * k1.x + E3 * k3.x + E4 * k4.x + E5 * k5.x + E6 * k6.x + E7 * k7.x);
        double ey = h * (E1 * k1.y + E3 * k3.y + E4 * k4.y + E5 * k5.y + E6 * k6.y + E7 * k7.y);
        double sx = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y.x), std::fabs(y1.x));
        double sy = cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y.y), std::fabs(y1.y));
        double err = std::sqrt(0.5 * ((ex / sx) * (ex / sx) + (ey / sy) * (ey / sy)));

        if (!finite(y1) || !std::isfinite(err))
            throw error("non-finite state at t = " + std::to_string(t));

        if (err <= 1.0) {
            t += h;
            y = y1;
            if (project) {
                y = project_onto_level(f, y, h0);
                if (y.x != y1.x || y.y != y1.y) k1 = field_eval(f, y);
                else k1 = k7;
            } else {
                k1 = k7;  // FSAL
            }
            traj.steps.push_back({t, y, k1});
            if (f == VectorField::sine2 && std::fabs(std::cos(y.y)) < cfg.sine2_clamp) {
                traj.clamped = true;
                traj.clamp_time = t;
                break;
            }
            if (std::fabs(y.x) > cfg.escape_radius || std::fabs(y.y) > cfg.escape_radius) {
                traj.escaped = true;
                traj.escape_time = t;
                break;
            }
        }
        double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        h *= factor;
        if (std::fabs(h) > cfg.max_step) h = dir * cfg.max_step;
        if (std::fabs(h) < 1e-14)
            throw error("step size underflow at t = " + std::to_string(t));
    }
    return traj;
}

Vec2 Trajectory::at(double t) const {
    if (steps.empty()) throw error("empty trajectory");
    if (steps.size() == 1) return steps.front().p;
    bool forward = steps.back().t >= steps.front().t;
    auto cmp = [forward](const Step& s, double tt) { return forward ? s.t < tt : s.t > tt; };
    auto it = std::lower_bound(steps.begin(), steps.end(), t, cmp);
    if (it == steps.begin()) return steps.front().p;
    if (it == steps.end()) return steps.back().p;
    const Step& b = *it;
    const Step& a = *(it - 1);
    double h = b.t - a.t;
    if (h == 0) return a.p;
    double s = (t - a.t) / h;
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    double h10 = s * (1 - s) * (1 - s);
    double h01 = s * s * (3 - 2 * s);
    double h11 = s * s * (s - 1);
    return {h00 * a.p.x + h10 * h * a.v.x + h01 * b.p.x + h11 * h * b.v.x,
            h00 * a.p.y + h10 * h * a.v.y + h01 * b.p.y + h11 * h * b.v.y};
}

Vec2 saddle_closed_form(int n, double t) {
    if (n < 1) throw error("closed form start family needs n >= 1");
    double e2t = std::exp(2.0 * t);
    double m = 2.0 * n - 1.0;
    return {2.0 * std::log((e2t + m) / (2.0 * n)) - 2.0 * t, (e2t - m) / (e2t + m)};
}

// ---------------------------------------------------------------------------
// link search

namespace {

// deterministic starts inside B(p, eps): the center plus geometric rings
std::vector<Vec2> start_grid(const Vec2& p, double eps, int rings, int angles) {
    std::vector<Vec2> out{p};
    for (int j = 0; j < rings; ++j) {
        double r = 0.9 * eps * std::pow(0.5, j);
        for (int k = 0; k < angles; ++k) {
            double a = 2.0 * M_PI * k / angles;
            out.push_back({p.x + r * std::cos(a), p.y + r * std::sin(a)});
        }
    }
    return out;
}

// visit dense samples of a trajectory; stop early when fn returns true
template <typename Fn>
void dense_scan(const Trajectory& traj, double resolution, Fn&& fn) {
    for (std::size_t i = 0; i + 1 < traj.steps.size(); ++i) {
        const auto& a = traj.steps[i];
        const auto& b = traj.steps[i + 1];
        double span = std::fabs(b.t - a.t);
        double vmax = std::max(std::hypot(a.v.x, a.v.y), std::hypot(b.v.x, b.v.y));
        int nsub = 1;
        if (vmax > 0) nsub = static_cast<int>(std::ceil(span * vmax / resolution));
        nsub = std::clamp(nsub, 1, 256);
        for (int s = 1; s <= nsub; ++s) {
            double t = a.t + (b.t - a.t) * s / nsub;
            if (fn(t, traj.at(t))) return;
        }
    }
}

}  // namespace

LinkSearchReport find_link(VectorField f, const Vec2& p, const Vec2& q, double eps, double T,
                           double horizon, long budget, const IntegratorConfig& cfg) {
    if (eps <= 0 || T <= 0) throw error("link search needs eps > 0 and T > 0");
    LinkSearchReport report;
    report.horizon = horizon > 0 ? horizon : T + 15.0;
    if (budget <= 0) budget = 420;

    for (const Vec2& z : start_grid(p, eps, 25, 16)) {
        if (report.integrations >= budget) break;
        report.integrations++;
        Trajectory traj;
        try {
            traj = integrate(f, z, 0.0, report.horizon, cfg);
        } catch (const error&) {
            continue;  // blow-ups just exhaust this start
        }
        std::optional<LinkWitness> found;
        dense_scan(traj, 0.5 * eps, [&](double t, const Vec2& pt) {
            if (t >= T && dist(pt, q) < eps) {
                found = LinkWitness{z, t, pt, p, q, eps, T};
                return true;
            }
            return false;
        });
        if (found) {
            report.witness = found;
            return report;
        }
    }
    return report;
}

Lambda1Estimate estimate_lambda1(VectorField f, const Vec2& p,
                                 std::vector<std::pair<double, double>> schedule,
                                 double box_radius, double horizon, const IntegratorConfig& cfg) {
    if (schedule.empty())
        schedule = {{0.2, 2.0},   {0.1, 4.0},     {0.05, 6.0},
                    {0.025, 8.0}, {0.0125, 10.0}, {0.00625, 12.0}};
    for (std::size_t i = 1; i < schedule.size(); ++i) {
        if (schedule[i].first >= schedule[i - 1].first ||
            schedule[i].second <= schedule[i - 1].second)
            throw error("schedule must have decreasing eps and increasing T");
    }

    const double cell = 0.25;
    using Key = std::pair<long, long>;
    auto key_of = [&](const Vec2& v) {
        return Key{static_cast<long>(std::floor(v.x / cell)),
                   static_cast<long>(std::floor(v.y / cell))};
    };

    // per schedule entry: occupied buckets with accumulated sums
    std::vector<std::map<Key, std::pair<Vec2, long>>> buckets(schedule.size());
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        auto [eps, T] = schedule[i];
        for (const Vec2& z : start_grid(p, eps, 20, 12)) {
            Trajectory traj;
            try {
                traj = integrate(f, z, 0.0, horizon, cfg);
            } catch (const error&) {
                continue;
            }
            dense_scan(traj, 0.1, [&](double t, const Vec2& pt) {
                if (t < T) return false;
                if (std::fabs(pt.x - p.x) > box_radius || std::fabs(pt.y - p.y) > box_radius)
                    return false;
                auto& slot = buckets[i][key_of(pt)];
                slot.first.x += pt.x;
                slot.first.y += pt.y;
                slot.second++;
                return false;
            });
        }
    }

    Lambda1Estimate out;
    out.schedule = schedule;
    if (schedule.size() < 3) return out;
    std::size_t last = schedule.size() - 1;
    for (const auto& [key, acc] : buckets[last]) {
        if (buckets[last - 1].count(key) && buckets[last - 2].count(key)) {
            out.clusters.push_back({acc.first.x / acc.second, acc.first.y / acc.second});
        }
    }
    return out;
}

NoReturnReport no_return_check(VectorField f, const Vec2& p, double eps, double horizon,
                               const IntegratorConfig& cfg) {
    if (eps <= 0) throw error("no-return check needs eps > 0");
    NoReturnReport report;
    Trajectory traj = integrate(f, p, 0.0, horizon, cfg);
    dense_scan(traj, 0.25 * eps, [&](double t, const Vec2& pt) {
        double d = dist(pt, p);
        if (!report.left_ball) {
            if (d >= 2.0 * eps) {
                report.left_ball = true;
                report.leave_time = t;
            }
            return false;
        }
        if (d < eps) {
            report.returned = true;
            report.return_time = t;
            return true;
        }
        return false;
    });
    return report;
}

}  // namespace wanderflow
