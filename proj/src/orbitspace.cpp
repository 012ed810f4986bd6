#include "wanderflow/orbitspace.hpp"

#include <algorithm>
#include <deque>

namespace wanderflow {

Relation prolongation_edges(const FoliationModel& m) {
    require_valid(m);
    LabelPairSet pairs;
    for (const auto& e : m.insep_edges) pairs.insert({e.src, e.dst});
    return Relation(NodeSet(m.separatrices), std::move(pairs));
}

namespace {

void require_separatrix(const FoliationModel& m, const std::string& sep) {
    if (!m.has_separatrix(sep)) throw error("unknown separatrix '" + sep + "'");
}

std::map<std::string, std::vector<std::string>> successor_map(const FoliationModel& m) {
    std::map<std::string, std::vector<std::string>> succ;
    for (const auto& s : m.separatrices) succ[s];
    for (const auto& e : m.insep_edges) {
        auto& v = succ[e.src];
        if (std::find(v.begin(), v.end(), e.dst) == v.end()) v.push_back(e.dst);
    }
    return succ;
}

}  // namespace

std::set<std::string> lambda1(const FoliationModel& m, const std::string& sep) {
    require_valid(m);
    require_separatrix(m, sep);
    return down_set(prolongation_edges(m), sep);
}

std::set<std::string> lambda1k(const FoliationModel& m, const std::string& sep, unsigned k) {
    require_valid(m);
    require_separatrix(m, sep);
    if (k < 1) throw error("walk length k must be at least 1");
    auto succ = successor_map(m);
    std::set<std::string> frontier{sep};
    for (unsigned step = 0; step < k; ++step) {
        std::set<std::string> next;
        for (const auto& s : frontier)
            for (const auto& t : succ[s]) next.insert(t);
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    return frontier;
}

std::set<std::string> lambda2(const FoliationModel& m, const std::string& sep) {
    require_valid(m);
    require_separatrix(m, sep);
    return down_set(transitive_closure(prolongation_edges(m)), sep);
}

int rank(const FoliationModel& m) {
    require_valid(m);
    if (m.insep_edges.empty()) return 0;
    Relation edges = prolongation_edges(m);
    Relation closure = transitive_closure(edges);
    for (const auto& s : m.separatrices) {
        if (down_set(edges, s) != down_set(closure, s)) return 2;
    }
    return 1;
}

std::set<std::string> generalized_recurrent(const FoliationModel& m) {
    return recurrent_nodes(prolongation_edges(m));
}

std::map<std::string, int> lyapunov_levels(const FoliationModel& m) {
    require_valid(m);
    auto rec = generalized_recurrent(m);
    if (!rec.empty())
        throw error("no strict Lyapunov witness: generalized recurrent separatrices present (" +
                    *rec.begin() + ")");
    // longest-chain depth on the precedence DAG
    auto succ = successor_map(m);
    std::map<std::string, int> depth;
    std::vector<std::string> order = m.separatrices;  // resolve by repeated relaxation
    bool changed = true;
    for (const auto& s : order) depth[s] = 0;
    while (changed) {
        changed = false;
        for (const auto& s : order) {
            int best = 0;
            for (const auto& t : succ[s]) best = std::max(best, depth[t] + 1);
            if (best > depth[s]) {
                depth[s] = best;
                changed = true;
            }
        }
    }
    std::map<std::string, int> out = depth;
    for (const auto& b : m.bands) {
        int level = 0;
        for (EndTag tag : {EndTag::lo, EndTag::hi}) {
            for (const auto& att : b.end(tag).attachments) {
                if (att.dir == Direction::snk) level = std::max(level, depth[att.sep]);
            }
        }
        out[b.id] = level;
    }
    return out;
}

// ---------------------------------------------------------------------------
// transverse reachability

namespace {

std::map<std::pair<std::string, Side>, std::pair<std::string, EndTag>> side_map(
    const FoliationModel& m) {
    std::map<std::pair<std::string, Side>, std::pair<std::string, EndTag>> out;
    for (const auto& b : m.bands) {
        for (EndTag tag : {EndTag::lo, EndTag::hi}) {
            for (const auto& att : b.end(tag).attachments)
                out[{att.sep, att.side}] = {b.id, tag};
        }
    }
    return out;
}

}  // namespace

ReachableSet reachable_set(const FoliationModel& m, const std::string& id) {
    require_valid(m);
    if (m.surface != Surface::plane)
        throw error("transverse reachability is supported on plane models only");

    auto sides = side_map(m);
    ReachableSet result;
    std::set<std::string> touched_seps;
    // ends of each reached band whose attachments the sweep may touch
    std::map<std::string, std::set<EndTag>> open_ends;
    std::deque<std::pair<std::string, EndTag>> queue;  // band, touchable end

    auto reach_band = [&](const std::string& band, std::optional<EndTag> entered_at) {
        result.sigma.insert(band);
        for (EndTag tag : {EndTag::lo, EndTag::hi}) {
            if (entered_at && *entered_at == tag) continue;
            if (open_ends[band].insert(tag).second) queue.push_back({band, tag});
        }
    };

    auto cross_separatrix = [&](const std::string& sep, Side arriving_side) {
        touched_seps.insert(sep);
        result.sigma.insert(sep);
        auto it = sides.find({sep, other(arriving_side)});
        if (it == sides.end()) return;  // nothing modeled beyond this side
        reach_band(it->second.first, it->second.second);
    };

    if (const RepOrbit* o = m.find_orbit(id)) {
        reach_band(o->band, std::nullopt);
    } else if (m.has_separatrix(id)) {
        touched_seps.insert(id);
        result.sigma.insert(id);
        for (Side side : {Side::L, Side::R}) {
            auto it = sides.find({id, side});
            if (it != sides.end()) reach_band(it->second.first, it->second.second);
        }
    } else {
        throw error("unknown orbit or separatrix '" + id + "'");
    }

    while (!queue.empty()) {
        auto [band, tag] = queue.front();
        queue.pop_front();
        const Band* b = m.find_band(band);
        for (const auto& att : b->end(tag).attachments) cross_separatrix(att.sep, att.side);
    }

    for (const auto& o : m.orbits)
        if (result.sigma.count(o.band)) result.sigma.insert(o.id);

    // separatrices in the closure of sigma that the sweeps could not touch
    for (const auto& band : result.sigma) {
        const Band* b = m.find_band(band);
        if (!b) continue;
        for (EndTag tag : {EndTag::lo, EndTag::hi}) {
            for (const auto& att : b->end(tag).attachments) {
                if (!touched_seps.count(att.sep)) result.boundary.insert(att.sep);
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// reversal and mirroring

namespace {

FoliationModel transform(const FoliationModel& m, bool swap_dir, bool swap_side,
                         bool transpose_edges, bool flip_signs) {
    FoliationModel out = m;
    for (auto& b : out.bands) {
        for (EndTag tag : {EndTag::lo, EndTag::hi}) {
            for (auto& att : b.end(tag).attachments) {
                if (swap_dir)
                    att.dir = att.dir == Direction::src ? Direction::snk : Direction::src;
                if (swap_side) att.side = other(att.side);
            }
        }
    }
    for (auto& e : out.insep_edges) {
        if (transpose_edges) std::swap(e.src, e.dst);
        if (flip_signs) e.sign = flipped(e.sign);
    }
    out.sort_canonical();
    return out;
}

}  // namespace

FoliationModel reverse(const FoliationModel& m) {
    // reversing time transposes precedence and reverses every loop traversal
    return transform(m, /*swap_dir=*/true, /*swap_side=*/true, /*transpose_edges=*/true,
                     /*flip_signs=*/true);
}

FoliationModel mirror(const FoliationModel& m) {
    return transform(m, /*swap_dir=*/false, /*swap_side=*/true, /*transpose_edges=*/false,
                     /*flip_signs=*/true);
}

// ---------------------------------------------------------------------------
// separation

namespace {

// Atoms: separatrices, listed orbits and the band pieces between them.
struct SeparationGraph {
    std::vector<std::string> atoms;
    std::map<std::string, std::size_t> index;
    std::vector<std::vector<std::size_t>> adj;

    std::size_t node(const std::string& id) {
        auto it = index.find(id);
        if (it != index.end()) return it->second;
        index[id] = atoms.size();
        atoms.push_back(id);
        adj.emplace_back();
        return atoms.size() - 1;
    }
    void link(std::size_t a, std::size_t b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
};

}  // namespace

namespace {

// atom keys carry a type prefix so band pieces cannot collide with user ids
std::string sep_key(const std::string& s) { return "S:" + s; }
std::string orbit_key(const std::string& o) { return "O:" + o; }

SeparationGraph build_separation_graph(const FoliationModel& m, const std::string* removed) {
    SeparationGraph g;
    auto is_removed = [&](const std::string& id) { return removed && id == *removed; };
    for (const auto& s : m.separatrices)
        if (!is_removed(s)) g.node(sep_key(s));
    for (const auto& b : m.bands) {
        // orbits of the band in parameter order, severed at the removed one
        std::vector<const RepOrbit*> cuts;
        for (const auto& o : m.orbits)
            if (o.band == b.id) cuts.push_back(&o);
        std::sort(cuts.begin(), cuts.end(),
                  [](const RepOrbit* x, const RepOrbit* y) { return x->parameter < y->parameter; });
        std::vector<std::size_t> chain;
        std::size_t piece = 0;
        chain.push_back(g.node("P:" + b.id + "#" + std::to_string(piece++)));
        for (const RepOrbit* o : cuts) {
            chain.push_back(is_removed(o->id) ? SIZE_MAX : g.node(orbit_key(o->id)));
            chain.push_back(g.node("P:" + b.id + "#" + std::to_string(piece++)));
        }
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            if (chain[i] != SIZE_MAX && chain[i + 1] != SIZE_MAX) g.link(chain[i], chain[i + 1]);
        }
        // end attachments join the outermost pieces to their separatrices
        auto attach = [&](EndTag tag, std::size_t piece_node) {
            for (const auto& att : b.end(tag).attachments) {
                if (is_removed(att.sep)) continue;
                g.link(piece_node, g.node(sep_key(att.sep)));
            }
        };
        attach(EndTag::lo, chain.front());
        attach(EndTag::hi, chain.back());
    }
    return g;
}

bool graph_connected(const SeparationGraph& g, std::size_t start, std::size_t goal) {
    std::vector<bool> seen(g.atoms.size(), false);
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop_front();
        if (u == goal) return true;
        for (std::size_t v : g.adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    return false;
}

std::size_t find_atom(const SeparationGraph& g, const std::string& id) {
    auto it = g.index.find(sep_key(id));
    if (it == g.index.end()) it = g.index.find(orbit_key(id));
    if (it == g.index.end()) throw error("unknown orbit or separatrix '" + id + "'");
    return it->second;
}

}  // namespace

bool separates(const FoliationModel& m, const std::string& a, const std::string& mid,
               const std::string& c) {
    if (a == mid || c == mid || a == c) throw error("separation test needs three distinct ids");
    SeparationGraph g = build_separation_graph(m, &mid);
    return !graph_connected(g, find_atom(g, a), find_atom(g, c));
}

bool connected_orbit_space(const FoliationModel& m) {
    SeparationGraph g = build_separation_graph(m, nullptr);
    if (g.atoms.size() <= 1) return true;
    for (std::size_t i = 1; i < g.atoms.size(); ++i)
        if (!graph_connected(g, 0, i)) return false;
    return true;
}

}  // namespace wanderflow
