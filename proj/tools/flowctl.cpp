// flowctl: command-line front end for the wandering-flow toolkit.

#include "wanderflow/chordal.hpp"
#include "wanderflow/io.hpp"
#include "wanderflow/lineflow.hpp"
#include "wanderflow/numflow.hpp"
#include "wanderflow/orbitspace.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace wanderflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;

std::string set_str(const std::set<std::string>& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& x : s) {
        if (!first) out += ", ";
        out += x;
        first = false;
    }
    return out + "}";
}

Vec2 parse_point(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw error("point wants 'x,y', got '" + text + "'");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw error("bad point literal '" + text + "'");
    }
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string rest = text;
    while (!rest.empty()) {
        auto comma = rest.find(',');
        out.push_back(rest.substr(0, comma));
        if (comma == std::string::npos) break;
        rest = rest.substr(comma + 1);
    }
    return out;
}

struct Options {
    std::string format = "text";
    long seed = 0;
    long budget = 0;
    bool csv() const { return format == "csv"; }
};

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot write '" + path + "'");
    out << content;
}

LineFlowSpec need_spec(const LinFile& f, const std::string& path) {
    if (!f.spec) throw error(path + " has no fixed list; unroll its rec term with truncate");
    return *f.spec;
}

RecursiveSpec need_rec(const LinFile& f, const std::string& path) {
    if (!f.rec) throw error(path + " has no rec term");
    return *f.rec;
}

// ---- model subcommands -----------------------------------------------------

int run_model_validate(const std::string& file) {
    auto m = load_fol(file);
    auto diags = validate(m);
    for (const auto& d : diags) {
        std::cout << (d.severity == Diagnostic::Severity::error ? "error: " : "warning: ")
                  << d.code << ": " << d.message << "\n";
    }
    if (!is_valid(diags)) return kExitNegative;
    std::cout << "ok\n";
    return kExitOk;
}

int run_model_lambda(const std::string& file, const std::string& orbit, const std::string& order,
                     unsigned k, const Options& opt) {
    auto m = load_fol(file);
    require_valid(m);
    std::vector<std::string> subjects;
    if (!orbit.empty()) subjects.push_back(orbit);
    else subjects = m.separatrices;

    for (const auto& id : subjects) {
        std::set<std::string> result;
        if (m.find_orbit(id)) {
            // an ordinary orbit is not a separatrix: its limit sets are empty
            result = {};
        } else if (k > 0) {
            result = lambda1k(m, id, k);
        } else if (order == "1") {
            result = lambda1(m, id);
        } else {  // "2" and "star" coincide: rank is at most two
            result = lambda2(m, id);
        }
        if (opt.csv()) {
            std::string row = id;
            for (const auto& x : result) row += "," + x;
            std::cout << row << "\n";
        } else {
            std::cout << id << " -> " << set_str(result) << "\n";
        }
    }
    return kExitOk;
}

int run_model_rank(const std::string& file) {
    int r = rank(load_fol(file));
    std::cout << "rank " << r << "\n";
    return kExitOk;
}

int run_model_recurrent(const std::string& file) {
    auto rec = generalized_recurrent(load_fol(file));
    std::cout << "recurrent " << set_str(rec) << "\n";
    return kExitOk;
}

int run_model_lyapunov(const std::string& file, const Options& opt) {
    auto m = load_fol(file);
    std::map<std::string, int> levels;
    try {
        levels = lyapunov_levels(m);
    } catch (const error& e) {
        std::cout << e.what() << "\n";
        return kExitNegative;
    }
    for (const auto& [node, level] : levels) {
        if (opt.csv()) std::cout << node << "," << level << "\n";
        else std::cout << node << " " << level << "\n";
    }
    return kExitOk;
}

int run_model_sigma(const std::string& file, const std::string& orbit) {
    auto r = reachable_set(load_fol(file), orbit);
    std::cout << "sigma " << set_str(r.sigma) << "\n";
    std::cout << "boundary " << set_str(r.boundary) << "\n";
    return kExitOk;
}

int run_model_reverse(const std::string& file, const std::string& out_path) {
    emit(out_path, print_fol(reverse(load_fol(file))));
    return kExitOk;
}

int run_model_equiv(const std::string& file1, const std::string& file2) {
    auto verdict = equivalent(load_fol(file1), load_fol(file2));
    std::cout << to_string(verdict.kind) << "\n";
    if (verdict.witness) {
        for (const auto& [a, b] : *verdict.witness) std::cout << "  " << a << " -> " << b << "\n";
    }
    return verdict.kind == EquivalenceKind::inequivalent ? kExitNegative : kExitOk;
}

int run_model_chordal(const std::string& file, bool check_axioms, bool derive,
                      const std::string& reps_arg) {
    auto m = load_fol(file);
    std::vector<std::string> reps;
    if (!reps_arg.empty()) {
        reps = split_commas(reps_arg);
    } else {
        reps = m.separatrices;
        for (const auto& o : m.orbits) reps.push_back(o.id);
    }
    ChordalSystem cs = derive_chordal(m, reps);
    if (derive) {
        std::set<Triple> between_done, cyclic_done;
        for (const auto& t : cs.between) {
            if (between_done.count(t)) continue;
            Triple r{t[2], t[1], t[0]};
            between_done.insert(t);
            between_done.insert(r);
            std::cout << t[0] << "|" << t[1] << "|" << t[2] << "\n";
        }
        for (const auto& t : cs.cyclic_pos) {
            if (cyclic_done.count(t)) continue;
            cyclic_done.insert(t);
            cyclic_done.insert({t[1], t[2], t[0]});
            cyclic_done.insert({t[2], t[0], t[1]});
            std::cout << "|" << t[0] << "," << t[1] << "," << t[2] << "|+\n";
        }
    }
    if (check_axioms) {
        auto violations = validate_axioms(cs);
        for (const auto& v : violations) {
            std::cout << "axiom " << v.axiom << " violated (" << v.detail << "):";
            for (const auto& e : v.elements) std::cout << " " << e;
            std::cout << "\n";
        }
        if (!violations.empty()) return kExitNegative;
        std::cout << "axioms ok (" << cs.elements.size() << " elements)\n";
    }
    return kExitOk;
}

// ---- line subcommands -------------------------------------------------------

int run_line_lambda(const std::string& file, const std::string& x_arg, unsigned k) {
    LinFile f = load_lin(file);
    LineFlowSpec spec = need_spec(f, file);
    Rational x = parse_rational(x_arg);
    PointSet1D result = k > 0 ? lambda1k_point(spec, x, k) : lambda1_point(spec, x);
    std::cout << result.str() << "\n";
    return kExitOk;
}

int run_line_nw(const std::string& file) {
    LinFile f = load_lin(file);
    std::cout << nonwandering(need_spec(f, file)).str() << "\n";
    return kExitOk;
}

int run_line_rank(const std::string& file) {
    LinFile f = load_lin(file);
    RankResult r = stabilization_rank(need_rec(f, file));
    std::cout << "rank " << r.rank.str();
    if (r.derived_rule) std::cout << " (derived rule)";
    std::cout << "\n";
    return kExitOk;
}

int run_line_truncate(const std::string& file, unsigned depth, const std::string& out_path) {
    LinFile f = load_lin(file);
    LinFile out;
    out.spec = truncate(need_rec(f, file), depth);
    emit(out_path, print_lin(out));
    return kExitOk;
}

// ---- num subcommands --------------------------------------------------------

int run_num_integrate(const std::string& field, const std::string& p0, double t,
                      const std::string& emit_path, const Options& opt) {
    Trajectory traj = integrate(field_from_name(field), parse_point(p0), 0.0, t);
    if (opt.csv() || !emit_path.empty()) {
        emit(emit_path, trajectory_csv(traj));
    } else {
        Vec2 e = traj.end();
        std::cout << "end " << e.x << " " << e.y << " after t=" << traj.t1() << " ("
                  << traj.steps.size() << " steps)";
        if (traj.clamped) std::cout << " [clamped at t=" << traj.clamp_time << "]";
        std::cout << "\n";
    }
    return kExitOk;
}

int run_num_link(const std::string& field, const std::string& p, const std::string& q, double eps,
                 double T, const Options& opt) {
    auto rep = find_link(field_from_name(field), parse_point(p), parse_point(q), eps, T, 0.0,
                         opt.budget);
    if (!rep.witness) {
        std::cout << "not found under budget (" << rep.integrations
                  << " integrations, horizon " << rep.horizon << ")\n";
        return kExitNegative;
    }
    if (opt.csv()) {
        std::cout << link_csv(*rep.witness);
    } else {
        const auto& w = *rep.witness;
        std::cout << "witness start (" << w.start.x << ", " << w.start.y << ") tau " << w.tau
                  << " end (" << w.end.x << ", " << w.end.y << ")\n";
    }
    return kExitOk;
}

int run_num_lambda1(const std::string& field, const std::string& p, double box, double horizon,
                    const Options& opt) {
    auto est = estimate_lambda1(field_from_name(field), parse_point(p), {}, box, horizon);
    if (opt.csv()) {
        std::cout << "x,y\n";
        for (const auto& c : est.clusters) std::cout << c.x << "," << c.y << "\n";
    } else {
        std::cout << est.clusters.size() << " persistent clusters\n";
        for (const auto& c : est.clusters)
            std::cout << "  (" << c.x << ", " << c.y << ")\n";
    }
    return kExitOk;
}

int run_num_check_h(const std::string& field, const std::string& p0, double t, double tol) {
    VectorField f = field_from_name(field);
    Vec2 p = parse_point(p0);
    double h0 = first_integral_value(f, p);
    double drift = 0;
    for (double dir : {1.0, -1.0}) {
        Trajectory traj = integrate(f, p, 0.0, dir * t);
        for (const auto& s : traj.steps)
            drift = std::max(drift, std::fabs(first_integral_value(f, s.p) - h0));
    }
    std::cout << "max |H drift| " << drift << " over [-" << t << ", " << t << "]\n";
    return drift <= tol ? kExitOk : kExitNegative;
}

int run_num_no_return(const std::string& field, const std::string& p0, double eps,
                      double horizon) {
    auto rep = no_return_check(field_from_name(field), parse_point(p0), eps, horizon);
    if (rep.returned) {
        std::cout << "returned at t=" << rep.return_time << " (left at t=" << rep.leave_time
                  << ")\n";
        return kExitNegative;
    }
    if (rep.left_ball) std::cout << "no return after leaving at t=" << rep.leave_time << "\n";
    else std::cout << "never left the ball within the horizon\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wandering planar flow toolkit"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "csv"}));
    app.add_option("--seed", opt.seed, "seed for randomized sweeps");
    app.add_option("--budget", opt.budget, "search budget (integrations)");

    int rc = kExitOk;
    auto set = [&rc](int v) { rc = v; };

    // model ------------------------------------------------------------------
    auto* model = app.add_subcommand("model", "combinatorial orbit-space models");
    model->require_subcommand(1);
    {
        static std::string file, orbit, order = "1", out_path, file2, reps;
        static unsigned k = 0;
        static bool check_axioms = false, do_derive = false;

        auto* v = model->add_subcommand("validate", "check model invariants");
        v->add_option("file", file)->required();
        v->callback([&] { set(run_model_validate(file)); });

        auto* l = model->add_subcommand("lambda", "prolongational limit sets");
        l->add_option("file", file)->required();
        l->add_option("--orbit", orbit, "separatrix or orbit id (default: all separatrices)");
        l->add_option("--order", order, "1, 2 or star")->check(CLI::IsMember({"1", "2", "star"}));
        l->add_option("--k", k, "walk length for the k-fold composition");
        l->callback([&] { set(run_model_lambda(file, orbit, order, k, opt)); });

        auto* r = model->add_subcommand("rank", "prolongational rank");
        r->add_option("file", file)->required();
        r->callback([&] { set(run_model_rank(file)); });

        auto* g = model->add_subcommand("recurrent", "generalized recurrent separatrices");
        g->add_option("file", file)->required();
        g->callback([&] { set(run_model_recurrent(file)); });

        auto* ly = model->add_subcommand("lyapunov", "strict Lyapunov witness levels");
        ly->add_option("file", file)->required();
        ly->callback([&] { set(run_model_lyapunov(file, opt)); });

        auto* sg = model->add_subcommand("sigma", "transverse reachability");
        sg->add_option("file", file)->required();
        sg->add_option("--orbit", orbit, "starting orbit or separatrix")->required();
        sg->callback([&] { set(run_model_sigma(file, orbit)); });

        auto* rv = model->add_subcommand("reverse", "time-reversed model");
        rv->add_option("file", file)->required();
        rv->add_option("--out", out_path, "output path (default stdout)");
        rv->callback([&] { set(run_model_reverse(file, out_path)); });

        auto* eq = model->add_subcommand("equiv", "decide topological equivalence");
        eq->add_option("file1", file)->required();
        eq->add_option("file2", file2)->required();
        eq->callback([&] { set(run_model_equiv(file, file2)); });

        auto* ch = model->add_subcommand("chordal", "chordal system derivation and axioms");
        ch->add_option("file", file)->required();
        ch->add_flag("--check-axioms", check_axioms, "validate the derived system");
        ch->add_flag("--derive", do_derive, "print the derived relations");
        ch->add_option("--reps", reps, "comma-separated representative ids");
        ch->callback([&] {
            if (!check_axioms && !do_derive)
                throw CLI::ValidationError("chordal", "pass --check-axioms and/or --derive");
            set(run_model_chordal(file, check_axioms, do_derive, reps));
        });
    }

    // line --------------------------------------------------------------------
    auto* line = app.add_subcommand("line", "1-D flows with fixed point sets");
    line->require_subcommand(1);
    {
        static std::string file, x, out_path;
        static unsigned k = 0, depth = 1;

        auto* l = line->add_subcommand("lambda", "prolongational limit sets");
        l->add_option("file", file)->required();
        l->add_option("--x", x, "base point (rational)")->required();
        l->add_option("--k", k, "composition order (default: single application)");
        l->callback([&] { set(run_line_lambda(file, x, k)); });

        auto* n = line->add_subcommand("nw", "non-wandering set");
        n->add_option("file", file)->required();
        n->callback([&] { set(run_line_nw(file)); });

        auto* r = line->add_subcommand("rank", "ordinal stabilization rank");
        r->add_option("file", file)->required();
        r->callback([&] { set(run_line_rank(file)); });

        auto* t = line->add_subcommand("truncate", "unroll a recursive spec");
        t->add_option("file", file)->required();
        t->add_option("--depth", depth, "blocks kept per accumulation")->required();
        t->add_option("--out", out_path, "output path (default stdout)");
        t->callback([&] { set(run_line_truncate(file, depth, out_path)); });
    }

    // num ---------------------------------------------------------------------
    auto* num = app.add_subcommand("num", "numerical engine for the reference fields");
    num->require_subcommand(1);
    {
        static std::string field = "saddle", p0, q, emit_path;
        static double t = 10.0, eps = 0.05, T = 5.0, tol = 1e-6, horizon = 30.0, box = 4.0;

        auto* in = num->add_subcommand("integrate", "integrate one trajectory");
        in->add_option("--field", field)->required();
        in->add_option("--p0", p0, "start point x,y")->required();
        in->add_option("--t", t, "time horizon (signed)");
        in->add_option("--emit", emit_path, "write CSV here ('-' for stdout)");
        in->callback([&] { set(run_num_integrate(field, p0, t, emit_path, opt)); });

        auto* lk = num->add_subcommand("link", "search for an (eps,T)-link");
        lk->add_option("--field", field)->required();
        lk->add_option("--p", p0, "source point x,y")->required();
        lk->add_option("--q", q, "target point x,y")->required();
        lk->add_option("--eps", eps)->required();
        lk->add_option("--T", T)->required();
        lk->callback([&] { set(run_num_link(field, p0, q, eps, T, opt)); });

        auto* le = num->add_subcommand("lambda1", "persistent limit-set clusters");
        le->add_option("--field", field)->required();
        le->add_option("--p", p0, "base point x,y")->required();
        le->add_option("--box", box, "half-width of the sampling box");
        le->add_option("--horizon", horizon);
        le->callback([&] { set(run_num_lambda1(field, p0, box, horizon, opt)); });

        auto* ch = num->add_subcommand("check-h", "first-integral conservation check");
        ch->add_option("--field", field)->required();
        ch->add_option("--p0", p0, "start point x,y")->required();
        ch->add_option("--t", t, "symmetric horizon");
        ch->add_option("--tol", tol, "drift tolerance");
        ch->callback([&] { set(run_num_check_h(field, p0, t, tol)); });

        auto* nr = num->add_subcommand("no-return", "wandering sanity check");
        nr->add_option("--field", field)->required();
        nr->add_option("--p0", p0, "base point x,y")->required();
        nr->add_option("--eps", eps);
        nr->add_option("--horizon", horizon);
        nr->callback([&] { set(run_num_no_return(field, p0, eps, horizon)); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return rc;
}
