// Acceptance suite: drives the library and the flowctl binary through the
// contract checks and prints one PASS/FAIL line per criterion.

#include "wanderflow/chordal.hpp"
#include "wanderflow/io.hpp"
#include "wanderflow/lineflow.hpp"
#include "wanderflow/numflow.hpp"
#include "wanderflow/orbitspace.hpp"

#include "testutil.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace wanderflow;
using testutil::load_fixture;

namespace {

std::string g_flowctl;

struct CommandResult {
    int exit_code;
    std::string output;
};

CommandResult run_cli(const std::string& args) {
    std::string cmd = g_flowctl + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw error("cannot spawn: " + cmd);
    std::string out;
    char buf[512];
    while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::string fx(const std::string& name) { return testutil::fixture_path(name); }

struct Harness {
    int failures = 0;
    int index = 0;

    void criterion(const std::string& label, const std::function<void(std::ostringstream&)>& fn) {
        ++index;
        std::ostringstream why;
        bool ok = true;
        try {
            fn(why);
        } catch (const std::exception& e) {
            ok = false;
            why << "exception: " << e.what();
        }
        if (!why.str().empty()) ok = false;
        std::printf("%s  %2d. %s\n", ok ? "PASS" : "FAIL", index, label.c_str());
        if (!ok) {
            std::printf("      %s\n", why.str().c_str());
            ++failures;
        }
    }
};

#define EXPECT(cond)                                        \
    do {                                                    \
        if (!(cond)) {                                      \
            why << "line " << __LINE__ << ": " #cond "  "; \
            return;                                         \
        }                                                   \
    } while (0)

std::vector<std::string> canonical_reps(const FoliationModel& m) {
    std::vector<std::string> reps = m.separatrices;
    for (const auto& o : m.orbits) reps.push_back(o.id);
    return reps;
}

const std::array<const char*, 6> kPlaneFixtures = {
    "trivial.fol",     "twoseps.fol",      "fourseps.fol",
    "sine_trunc5.fol", "sine2_trunc5.fol", "waz_trunc.fol"};

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        if (std::string(argv[i]) == "--flowctl") g_flowctl = argv[i + 1];
    }
    if (g_flowctl.empty()) {
        std::fprintf(stderr, "usage: acceptance --flowctl PATH\n");
        return 2;
    }

    Harness h;
    using Why = std::ostringstream;

    h.criterion("lambda tables, exact", [&](Why& why) {
        auto four = load_fixture("fourseps.fol");
        using Set = std::set<std::string>;
        EXPECT(lambda1(four, "s1") == Set{"s2"});
        EXPECT(lambda1(four, "s2") == Set{"s3"});
        EXPECT(lambda1(four, "s3") == Set{"s4"});
        EXPECT(lambda1(four, "s4") == Set{});
        EXPECT((lambda2(four, "s1") == Set{"s2", "s3", "s4"}));
        EXPECT((lambda2(four, "s2") == Set{"s3", "s4"}));
        EXPECT(lambda2(four, "s3") == Set{"s4"});
        auto two = load_fixture("twoseps.fol");
        EXPECT(lambda1(two, "s-") == Set{"s+"});
        auto r1 = run_cli("model lambda " + fx("fourseps.fol") + " --order 1");
        EXPECT(r1.exit_code == 0);
        EXPECT(r1.output == "s1 -> {s2}\ns2 -> {s3}\ns3 -> {s4}\ns4 -> {}\n");
        auto r2 = run_cli("model lambda " + fx("fourseps.fol") + " --order 2");
        EXPECT(r2.exit_code == 0);
        EXPECT(r2.output ==
               "s1 -> {s2, s3, s4}\ns2 -> {s3, s4}\ns3 -> {s4}\ns4 -> {}\n");
        auto r3 = run_cli("model lambda " + fx("twoseps.fol") + " --orbit s-");
        EXPECT(r3.exit_code == 0);
        EXPECT(r3.output == "s- -> {s+}\n");
    });

    h.criterion("ranks, exact", [&](Why& why) {
        const std::array<std::pair<const char*, int>, 5> expected = {{{"trivial.fol", 0},
                                                                      {"twoseps.fol", 1},
                                                                      {"sine_trunc5.fol", 1},
                                                                      {"fourseps.fol", 2},
                                                                      {"sine2_trunc5.fol", 2}}};
        for (const auto& [name, want] : expected) {
            EXPECT(rank(load_fixture(name)) == want);
            auto r = run_cli("model rank " + fx(name));
            EXPECT(r.exit_code == 0);
            EXPECT(r.output == "rank " + std::to_string(want) + "\n");
        }
    });

    h.criterion("generalized recurrence, exact", [&](Why& why) {
        for (const char* name : kPlaneFixtures)
            EXPECT(generalized_recurrent(load_fixture(name)).empty());
        EXPECT(generalized_recurrent(load_fixture("cylinder_f1.fol")).empty());
        EXPECT(generalized_recurrent(load_fixture("cylinder_f2.fol")) ==
               (std::set<std::string>{"s1", "s2"}));
        auto r = run_cli("model recurrent " + fx("cylinder_f2.fol"));
        EXPECT(r.exit_code == 0);
        EXPECT(r.output == "recurrent {s1, s2}\n");
        auto r1 = run_cli("model recurrent " + fx("cylinder_f1.fol"));
        EXPECT(r1.output == "recurrent {}\n");
    });

    h.criterion("Lyapunov witness levels", [&](Why& why) {
        for (const char* name : kPlaneFixtures) {
            auto m = load_fixture(name);
            auto levels = lyapunov_levels(m);
            for (const auto& e : m.insep_edges)
                EXPECT(levels.at(e.src) > levels.at(e.dst));
            auto r = run_cli("model lyapunov " + fx(name));
            EXPECT(r.exit_code == 0);
        }
        auto bad = run_cli("model lyapunov " + fx("cylinder_f2.fol"));
        EXPECT(bad.exit_code == 1);
        EXPECT(bad.output.find("recurrent") != std::string::npos);
    });

    h.criterion("chordal axioms and mutation sensitivity", [&](Why& why) {
        std::mt19937_64 rng(424242);
        for (const char* name : kPlaneFixtures) {
            auto m = load_fixture(name);
            auto cs = derive_chordal(m, canonical_reps(m));
            EXPECT(validate_axioms(cs).empty());
            auto r = run_cli("model chordal " + fx(name) + " --check-axioms");
            EXPECT(r.exit_code == 0);
            const auto& el = cs.elements.labels();
            for (int trial = 0; trial < 20; ++trial) {
                ChordalSystem mutated = cs;
                std::uniform_int_distribution<std::size_t> pick(0, el.size() - 1);
                std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
                while (j == i) j = pick(rng);
                while (k == i || k == j) k = pick(rng);
                const std::string &a = el[i], &b = el[j], &c = el[k];
                struct Alt {
                    ChordalSystem::TripleKind kind;
                    Triple t;
                };
                std::vector<Alt> alts = {{ChordalSystem::TripleKind::between, {a, b, c}},
                                         {ChordalSystem::TripleKind::between, {b, a, c}},
                                         {ChordalSystem::TripleKind::between, {a, c, b}},
                                         {ChordalSystem::TripleKind::cyclic, {a, b, c}},
                                         {ChordalSystem::TripleKind::cyclic, {a, c, b}}};
                std::vector<std::size_t> others;
                for (std::size_t n = 0; n < alts.size(); ++n) {
                    bool holds = alts[n].kind == ChordalSystem::TripleKind::between
                                     ? mutated.has_between(alts[n].t[0], alts[n].t[1],
                                                           alts[n].t[2])
                                     : mutated.has_cyclic_pos(alts[n].t[0], alts[n].t[1],
                                                              alts[n].t[2]);
                    if (!holds) others.push_back(n);
                }
                const Alt& tgt = alts[others[std::uniform_int_distribution<std::size_t>(
                    0, others.size() - 1)(rng)]];
                mutated.set_triple(tgt.t[0], tgt.t[1], tgt.t[2], tgt.kind);
                EXPECT(!validate_axioms(mutated).empty());
            }
        }
    });

    h.criterion("equivalence trichotomy with verified witnesses", [&](Why& why) {
        auto two = load_fixture("twoseps.fol");
        auto two_mirror = load_fixture("twoseps_mirror.fol");
        auto four = load_fixture("fourseps.fol");
        auto sine = load_fixture("sine_trunc5.fol");
        auto sine2 = load_fixture("sine2_trunc5.fol");

        auto self = equivalent(two, two);
        EXPECT(self.kind == EquivalenceKind::o_equivalent);
        EXPECT(self.witness.has_value());
        for (const auto& [a, b] : *self.witness) EXPECT(a == b);

        auto mir = equivalent(two, two_mirror);
        EXPECT(mir.kind == EquivalenceKind::n_equivalent);
        EXPECT(mir.witness.has_value());

        EXPECT(equivalent(two, four).kind == EquivalenceKind::inequivalent);
        EXPECT(equivalent(sine, sine2).kind == EquivalenceKind::inequivalent);

        // verify the witnesses against derived chordal systems over synthetic
        // per-band representatives
        auto with_tokens = [](FoliationModel m) {
            for (const auto& b : m.bands)
                m.orbits.push_back({"@" + b.id, b.id, Rational(1, 3)});
            m.sort_canonical();
            return m;
        };
        auto reps_of = [](const FoliationModel& m) {
            std::vector<std::string> reps = m.separatrices;
            for (const auto& o : m.orbits)
                if (o.id[0] == '@') reps.push_back(o.id);
            return reps;
        };
        auto verify = [&](const FoliationModel& a, const FoliationModel& b,
                          const std::map<std::string, std::string>& phi, bool flip) {
            auto ta = with_tokens(a), tb = with_tokens(b);
            auto ca = derive_chordal(ta, reps_of(ta));
            auto cb = derive_chordal(tb, reps_of(tb));
            auto img = [&](const std::string& x) {
                if (!x.empty() && x[0] == '@') return "@" + phi.at(x.substr(1));
                return phi.at(x);
            };
            for (const auto& t : ca.between)
                if (!cb.has_between(img(t[0]), img(t[1]), img(t[2]))) return false;
            for (const auto& t : ca.cyclic_pos) {
                bool ok = flip ? cb.has_cyclic_pos(img(t[0]), img(t[2]), img(t[1]))
                               : cb.has_cyclic_pos(img(t[0]), img(t[1]), img(t[2]));
                if (!ok) return false;
            }
            return true;
        };
        EXPECT(verify(two, two, *self.witness, false));
        EXPECT(verify(two, two_mirror, *mir.witness, true));

        auto cli = run_cli("model equiv " + fx("twoseps.fol") + " " + fx("twoseps_mirror.fol"));
        EXPECT(cli.exit_code == 0);
        EXPECT(cli.output.find("n-equivalent") == 0);
        auto cli2 = run_cli("model equiv " + fx("twoseps.fol") + " " + fx("fourseps.fol"));
        EXPECT(cli2.exit_code == 1);
        EXPECT(cli2.output == "inequivalent\n");
    });

    h.criterion("1-D exactness on interval and circle", [&](Why& why) {
        LinFile f = load_lin(fx("xn_depth12.lin"));
        EXPECT(f.spec.has_value());
        // the quoted formula [0, x_{k+1}] with x_n = 1 - 1/n
        for (unsigned k = 1; k <= 10; ++k) {
            PointSet1D expect(Topology::interval);
            expect.add_interval(Rational(0), Rational(1) - Rational(1, k + 1), true, true);
            EXPECT(lambda1k_point(*f.spec, Rational(0), k) == expect);
        }
        auto r = run_cli("line lambda " + fx("xn_depth12.lin") + " --x 0 --k 3");
        EXPECT(r.exit_code == 0);
        EXPECT(r.output == "[0,3/4]\n");

        LinFile c = load_lin(fx("circle3.lin"));
        EXPECT(c.spec.has_value());
        PointSet1D arc(Topology::circle);
        arc.add_interval(Rational(0), Rational(1, 3), true, true);
        EXPECT(lambda1_point(*c.spec, Rational(0)) == arc);
        EXPECT(lambda1k_point(*c.spec, Rational(0), 3).is_full_circle());
        auto rc = run_cli("line lambda " + fx("circle3.lin") + " --x 0 --k 3");
        EXPECT(rc.exit_code == 0);
        EXPECT(rc.output == "S1\n");
    });

    h.criterion("ordinal stabilization ranks in CNF", [&](Why& why) {
        auto tower = [](unsigned k) {
            RecursiveSpec s = RecursiveSpec::leaf();
            for (unsigned i = 0; i < k; ++i) s = RecursiveSpec::accum(std::move(s));
            return s;
        };
        EXPECT(stabilization_rank(tower(1)).rank == Ordinal::finite(2));
        for (unsigned k = 1; k <= 4; ++k)
            EXPECT(stabilization_rank(tower(k)).rank == Ordinal::finite(k + 1));
        auto Gw = RecursiveSpec::accum_list({tower(1), tower(2)});
        EXPECT(stabilization_rank(Gw).rank == Ordinal::omega());
        for (unsigned k = 1; k <= 3; ++k) {
            std::vector<RecursiveSpec> parts{Gw};
            for (unsigned i = 0; i < k; ++i) parts.push_back(tower(1));
            EXPECT(stabilization_rank(RecursiveSpec::concat(parts)).rank ==
                   Ordinal::omega() + Ordinal::finite(k));
        }
        EXPECT(stabilization_rank(RecursiveSpec::concat({Gw, Gw})).rank.str() == "w*2");
        EXPECT(stabilization_rank(RecursiveSpec::accum(Gw)).rank.str() == "w^2");

        for (const auto& [file, want] :
             std::vector<std::pair<std::string, std::string>>{{"gomega.lin", "rank w\n"},
                                                              {"gomega_plus3.lin", "rank w+3\n"},
                                                              {"gomega_double.lin", "rank w*2\n"},
                                                              {"gomega2.lin", "rank w^2\n"}}) {
            auto r = run_cli("line rank " + fx(file));
            EXPECT(r.exit_code == 0);
            EXPECT(r.output == want);
        }
    });

    h.criterion("saddle closed form vs integrator", [&](Why& why) {
        for (int n : {2, 5, 10, 50}) {
            Vec2 p0{0.0, 1.0 / n - 1.0};
            Trajectory traj = integrate(VectorField::saddle, p0, 0.0, saddle_t_n(n));
            Vec2 want{0.0, 1.0 - 1.0 / n};
            EXPECT(dist(traj.end(), want) <= 1e-6);
            Vec2 mid = saddle_closed_form(n, saddle_tau_n(n));
            double expect_x = std::log((2.0 * n - 1.0) / (static_cast<double>(n) * n));
            EXPECT(std::fabs(mid.x - expect_x) <= 1e-9);
            EXPECT(std::fabs(mid.y) <= 1e-9);
        }
    });

    h.criterion("first integral conservation, 100 seeded starts", [&](Why& why) {
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> coord(-2.0, 2.0);
        for (VectorField f : {VectorField::constant, VectorField::saddle, VectorField::sine,
                              VectorField::sine2}) {
            int done = 0;
            while (done < 100) {
                Vec2 p{coord(rng), coord(rng)};
                if (f == VectorField::sine2 && std::fabs(std::cos(p.y)) < 0.05) continue;
                ++done;
                double h0 = first_integral_value(f, p);
                for (double dir : {1.0, -1.0}) {
                    Trajectory traj = integrate(f, p, 0.0, dir * 10.0);
                    for (const auto& s : traj.steps) {
                        double drift = std::fabs(first_integral_value(f, s.p) - h0);
                        if (drift > 1e-6) {
                            why << field_name(f) << " start (" << p.x << "," << p.y
                                << ") drift " << drift;
                            return;
                        }
                    }
                }
            }
        }
    });

    h.criterion("link detection and persistent clusters", [&](Why& why) {
        for (auto [eps, T] : std::vector<std::pair<double, double>>{{0.05, 5.0}, {0.02, 10.0}}) {
            auto rep = find_link(VectorField::saddle, {0, -1}, {0, 1}, eps, T);
            EXPECT(rep.witness.has_value());
            EXPECT(rep.witness->tau >= T);
            EXPECT(dist(rep.witness->start, {0, -1}) < eps);
            EXPECT(dist(rep.witness->end, {0, 1}) < eps);
        }
        auto none = find_link(VectorField::saddle, {0, 0}, {0, 0}, 0.01, 10.0);
        EXPECT(!none.witness.has_value());

        auto cli = run_cli("num link --field saddle --p 0,-1 --q 0,1 --eps 0.05 --T 5");
        EXPECT(cli.exit_code == 0);
        EXPECT(cli.output.find("witness") == 0);
        auto cli2 = run_cli("num link --field saddle --p 0,0 --q 0,0 --eps 0.01 --T 10");
        EXPECT(cli2.exit_code == 1);
        EXPECT(cli2.output.find("not found under budget") == 0);

        auto est = estimate_lambda1(VectorField::sine, {0, 3 * M_PI / 2});
        EXPECT(!est.clusters.empty());
        bool lo = false, hi = false;
        for (const auto& c : est.clusters) {
            bool near_lo = std::fabs(c.y - M_PI / 2) < 0.1;
            bool near_hi = std::fabs(c.y - 5 * M_PI / 2) < 0.1;
            if (!near_lo && !near_hi) {
                why << "stray cluster at (" << c.x << "," << c.y << ")";
                return;
            }
            lo = lo || near_lo;
            hi = hi || near_hi;
        }
        EXPECT(lo);
        EXPECT(hi);
    });

    h.criterion("property suites: closure oracle and orbit-space invariants", [&](Why& why) {
        std::mt19937_64 rng(777);
        for (int trial = 0; trial < 200; ++trial) {
            Relation r = testutil::random_relation(rng);
            EXPECT(transitive_closure(r).pairs == testutil::closure_by_fixpoint(r));
            LabelPairSet expect = transitive_closure(r).pairs;
            for (const auto& l : r.base.labels()) expect.insert({l, l});
            EXPECT(smallest_stream(r).pairs == expect);
            if (r.base.size() <= 4)
                EXPECT(smallest_stream(r).pairs == testutil::stream_by_enumeration(r));
        }
        std::vector<FoliationModel> models;
        for (const char* name : kPlaneFixtures) models.push_back(load_fixture(name));
        for (int i = 0; i < 100; ++i) models.push_back(testutil::random_model(rng));
        for (const auto& m : models) {
            EXPECT(is_valid(validate(m)));
            EXPECT(rank(m) <= 2);
            EXPECT(generalized_recurrent(m).empty());
            auto stream = smallest_stream(prolongation_edges(m));
            for (const auto& s : m.separatrices) {
                auto l2 = lambda2(m, s);
                l2.insert(s);
                EXPECT(down_set(stream, s) == l2);
            }
            EXPECT(prolongation_edges(reverse(m)) == transpose(prolongation_edges(m)));
        }
    });

    std::printf("%d criteria, %d failed\n", h.index, h.failures);
    return h.failures == 0 ? 0 : 1;
}
