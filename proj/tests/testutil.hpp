#pragma once

#include "wanderflow/foliation.hpp"
#include "wanderflow/io.hpp"
#include "wanderflow/relation.hpp"

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace wanderflow::testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(WANDERFLOW_FIXTURES_DIR) + "/" + name;
}

inline FoliationModel load_fixture(const std::string& name) {
    return load_fol(fixture_path(name));
}

// --- independent closure oracles -------------------------------------------

// Kleene-style fixpoint: scan all triples until nothing new appears.
inline LabelPairSet closure_by_fixpoint(const Relation& r) {
    LabelPairSet pairs = r.pairs;
    bool changed = true;
    while (changed) {
        changed = false;
        LabelPairSet snapshot = pairs;
        for (const auto& [a, b] : snapshot) {
            for (const auto& [c, d] : snapshot) {
                if (b == c && !pairs.count({a, d})) {
                    pairs.insert({a, d});
                    changed = true;
                }
            }
        }
    }
    return pairs;
}

// Intersection of all reflexive-transitive supersets, by full enumeration.
// Only feasible for tiny node sets (n <= 4 means 2^16 candidate relations).
inline LabelPairSet stream_by_enumeration(const Relation& r) {
    const auto& labels = r.base.labels();
    std::size_t n = labels.size();
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cells.push_back({i, j});
    auto to_mask = [&](const LabelPairSet& pairs) {
        unsigned long mask = 0;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (pairs.count({labels[cells[c].first], labels[cells[c].second]})) mask |= 1ul << c;
        }
        return mask;
    };
    unsigned long base_mask = to_mask(r.pairs);
    auto bit = [&](unsigned long mask, std::size_t i, std::size_t j) {
        return (mask >> (i * n + j)) & 1ul;
    };
    unsigned long meet = ~0ul;
    for (unsigned long mask = 0; mask < (1ul << cells.size()); ++mask) {
        if ((mask & base_mask) != base_mask) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) ok = bit(mask, i, i);
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j)
                for (std::size_t k = 0; k < n && ok; ++k)
                    if (bit(mask, i, j) && bit(mask, j, k) && !bit(mask, i, k)) ok = false;
        if (!ok) continue;
        meet &= mask;
    }
    LabelPairSet out;
    for (std::size_t c = 0; c < cells.size(); ++c)
        if ((meet >> c) & 1ul) out.insert({labels[cells[c].first], labels[cells[c].second]});
    return out;
}

inline Relation random_relation(std::mt19937_64& rng, std::size_t max_nodes = 6) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_nodes)(rng);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("n" + std::to_string(i));
    LabelPairSet pairs;
    if (n > 0) {
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        std::size_t edges = std::uniform_int_distribution<std::size_t>(0, 2 * n)(rng);
        for (std::size_t e = 0; e < edges; ++e)
            pairs.insert({labels[pick(rng)], labels[pick(rng)]});
    }
    return Relation(NodeSet(labels), pairs);
}

// --- randomized valid plane models ------------------------------------------
//
// Zigzag chains of inseparable separatrices realized through two-attachment
// band ends, with all remaining separatrix sides closed off by one-attachment
// outer bands. Each draw passes validate() by construction.
inline FoliationModel random_model(std::mt19937_64& rng, std::size_t max_seps = 6) {
    FoliationModel m;
    m.surface = Surface::plane;
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_seps)(rng);
    for (std::size_t i = 0; i < n; ++i) m.separatrices.push_back("s" + std::to_string(i));

    std::map<std::pair<std::string, Side>, bool> side_used;
    int band_no = 0;
    std::bernoulli_distribution coin(0.7);
    std::bernoulli_distribution updown(0.5);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!coin(rng)) continue;
        // edge between consecutive separatrices, random orientation
        std::string a = m.separatrices[i], b = m.separatrices[i + 1];
        if (updown(rng)) std::swap(a, b);
        Side sa = side_used[{a, Side::L}] ? Side::R : Side::L;
        Side sb = side_used[{b, Side::L}] ? Side::R : Side::L;
        if (side_used[{a, sa}] || side_used[{b, sb}]) continue;  // slots exhausted
        side_used[{a, sa}] = side_used[{b, sb}] = true;
        Band band;
        band.id = "b" + std::to_string(band_no++);
        band.lo.attachments = {{a, sa, Direction::src}, {b, sb, Direction::snk}};
        m.bands.push_back(band);
        m.insep_edges.push_back(
            {a, b, sa == Side::R ? Sign::plus : Sign::minus, band.id, EndTag::lo});
    }
    // separatrices with no edge would violate the participation invariant
    std::set<std::string> touched;
    for (const auto& e : m.insep_edges) {
        touched.insert(e.src);
        touched.insert(e.dst);
    }
    std::erase_if(m.separatrices, [&](const std::string& s) { return !touched.count(s); });
    // close every unused side with an outer band
    for (const auto& s : m.separatrices) {
        for (Side side : {Side::L, Side::R}) {
            if (side_used[{s, side}]) continue;
            Band band;
            band.id = "b" + std::to_string(band_no++);
            band.lo.attachments = {{s, side, updown(rng) ? Direction::src : Direction::snk}};
            m.bands.push_back(band);
        }
    }
    if (m.bands.empty()) {
        Band band;
        band.id = "b0";
        m.bands.push_back(band);
    }
    // a couple of representative orbits per band
    int orbit_no = 0;
    for (const auto& b : m.bands) {
        int count = std::uniform_int_distribution<int>(0, 2)(rng);
        for (int k = 0; k < count; ++k)
            m.orbits.push_back(
                {"g" + std::to_string(orbit_no++), b.id, Rational(2 * k + 1, 2 * (count + 1))});
    }
    m.sort_canonical();
    return m;
}

}  // namespace wanderflow::testutil
