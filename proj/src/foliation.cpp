#include "wanderflow/foliation.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wanderflow {

std::string to_string(Side s) { return s == Side::L ? "L" : "R"; }
std::string to_string(Direction d) { return d == Direction::src ? "src" : "snk"; }
std::string to_string(Sign s) { return s == Sign::plus ? "+" : "-"; }
std::string to_string(EndTag e) { return e == EndTag::lo ? "lo" : "hi"; }

const Band* FoliationModel::find_band(const std::string& id) const {
    for (const auto& b : bands)
        if (b.id == id) return &b;
    return nullptr;
}

const RepOrbit* FoliationModel::find_orbit(const std::string& id) const {
    for (const auto& o : orbits)
        if (o.id == id) return &o;
    return nullptr;
}

bool FoliationModel::has_separatrix(const std::string& id) const {
    return std::binary_search(separatrices.begin(), separatrices.end(), id);
}

void FoliationModel::sort_canonical() {
    std::sort(separatrices.begin(), separatrices.end());
    std::sort(bands.begin(), bands.end(),
              [](const Band& a, const Band& b) { return a.id < b.id; });
    std::sort(insep_edges.begin(), insep_edges.end());
    std::sort(orbits.begin(), orbits.end(),
              [](const RepOrbit& a, const RepOrbit& b) { return a.id < b.id; });
}

std::vector<Diagnostic> validate(const FoliationModel& m) {
    std::vector<Diagnostic> out;
    auto err = [&](std::string code, std::string msg) {
        out.push_back({Diagnostic::Severity::error, std::move(code), std::move(msg)});
    };
    auto warn = [&](std::string code, std::string msg) {
        out.push_back({Diagnostic::Severity::warning, std::move(code), std::move(msg)});
    };

    // id uniqueness across separatrices, bands and orbits
    std::set<std::string> ids;
    for (const auto& s : m.separatrices)
        if (!ids.insert(s).second) err("duplicate id", "separatrix '" + s + "' declared twice");
    for (const auto& b : m.bands)
        if (!ids.insert(b.id).second) err("duplicate id", "band '" + b.id + "' reuses an id");
    for (const auto& o : m.orbits)
        if (!ids.insert(o.id).second) err("duplicate id", "orbit '" + o.id + "' reuses an id");

    // attachment structure
    std::map<std::pair<std::string, Side>, std::pair<std::string, EndTag>> side_use;
    for (const auto& b : m.bands) {
        for (EndTag tag : {EndTag::lo, EndTag::hi}) {
            const EndSpec& e = b.end(tag);
            if (e.attachments.size() >= 3)
                warn("wide end", "band '" + b.id + "' " + to_string(tag) + " end accumulates on " +
                                     std::to_string(e.attachments.size()) + " separatrices");
            std::set<std::string> seen;
            for (const auto& att : e.attachments) {
                if (!m.has_separatrix(att.sep)) {
                    err("unknown separatrix",
                        "band '" + b.id + "' attaches unknown separatrix '" + att.sep + "'");
                    continue;
                }
                if (!seen.insert(att.sep).second)
                    err("repeated attachment", "band '" + b.id + "' " + to_string(tag) +
                                                   " end attaches '" + att.sep + "' twice");
                auto key = std::make_pair(att.sep, att.side);
                auto [it, fresh] = side_use.insert({key, {b.id, tag}});
                if (!fresh && (it->second.first != b.id || it->second.second != tag))
                    err("side conflict", "separatrix '" + att.sep + "' side " +
                                             to_string(att.side) + " is attached by band '" +
                                             it->second.first + "' and band '" + b.id + "'");
            }
        }
    }

    // orbits sit strictly inside an existing band
    std::set<std::pair<std::string, Rational>> positions;
    for (const auto& o : m.orbits) {
        if (!m.find_band(o.band))
            err("unknown band", "orbit '" + o.id + "' references unknown band '" + o.band + "'");
        if (!(o.parameter > 0 && o.parameter < 1))
            err("parameter range", "orbit '" + o.id + "' parameter " +
                                       format_rational(o.parameter) + " is not inside (0,1)");
        if (!positions.insert({o.band, o.parameter}).second)
            err("parameter clash",
                "two orbits of band '" + o.band + "' share parameter " +
                    format_rational(o.parameter));
    }

    // every separatrix participates in the inseparability structure
    std::set<std::string> touched;
    for (const auto& e : m.insep_edges) {
        touched.insert(e.src);
        touched.insert(e.dst);
    }
    for (const auto& s : m.separatrices) {
        if (!touched.count(s))
            err("isolated separatrix", "separatrix '" + s + "' appears in no insep edge");
    }

    // edge structure and witness direction
    for (const auto& e : m.insep_edges) {
        if (e.src == e.dst) {
            err("self edge", "insep edge at '" + e.src + "' has equal endpoints");
            continue;
        }
        if (!m.has_separatrix(e.src) || !m.has_separatrix(e.dst)) {
            err("unknown separatrix", "insep edge " + e.src + ">" + e.dst +
                                          " references an undeclared separatrix");
            continue;
        }
        const Band* b = m.find_band(e.witness_band);
        if (!b) {
            err("unknown band", "insep edge " + e.src + ">" + e.dst +
                                    " cites unknown band '" + e.witness_band + "'");
            continue;
        }
        const EndSpec& end = b->end(e.witness_end);
        bool src_ok = false, dst_ok = false;
        std::optional<Side> src_side;
        for (const auto& att : end.attachments) {
            if (att.sep == e.src && att.dir == Direction::src) {
                src_ok = true;
                src_side = att.side;
            }
            if (att.sep == e.dst && att.dir == Direction::snk) dst_ok = true;
        }
        if (!src_ok || !dst_ok)
            err("witness direction mismatch",
                "witness " + e.witness_band + ":" + to_string(e.witness_end) + " of " + e.src +
                    ">" + e.dst + " does not attach src as src and dst as snk");
        // chirality convention: the loop through (src, gamma, dst) is positive
        // exactly when the witnessing family sits on the right of src
        if (src_side) {
            Sign expected = *src_side == Side::R ? Sign::plus : Sign::minus;
            if (expected != e.sign)
                warn("chirality mismatch",
                     "edge " + e.src + ">" + e.dst + " sign " + to_string(e.sign) +
                         " disagrees with the side of its witnessing family");
        }
    }

    // the chain digraph of a plane model is acyclic
    if (m.surface == Surface::plane && !m.separatrices.empty()) {
        LabelPairSet pairs;
        bool edges_ok = true;
        for (const auto& e : m.insep_edges) {
            if (!m.has_separatrix(e.src) || !m.has_separatrix(e.dst) || e.src == e.dst)
                edges_ok = false;
            else
                pairs.insert({e.src, e.dst});
        }
        if (edges_ok) {
            Relation chain(NodeSet(m.separatrices), pairs);
            auto cyc = recurrent_nodes(chain);
            if (!cyc.empty())
                err("chain cycle on plane",
                    "the inseparability digraph has a cycle through '" + *cyc.begin() + "'");
        }
    }
    return out;
}

void require_valid(const FoliationModel& m) {
    for (const auto& d : validate(m)) {
        if (d.severity == Diagnostic::Severity::error)
            throw error("invalid model: " + d.code + ": " + d.message);
    }
}

}  // namespace wanderflow
