#pragma once

#include "wanderflow/foliation.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wanderflow {

using Triple = std::array<std::string, 3>;

// Kaplan-style chordal system: a finite element set with a separation
// relation a|b|c and an oriented cyclic relation |a,b,c|^+ on distinct
// triples. Both relation sets are stored with their symmetry closure
// (reversal for betweenness, rotation for cyclic triples).
struct ChordalSystem {
    NodeSet elements;
    std::set<Triple> between;     // (a,b,c) meaning b separates a from c
    std::set<Triple> cyclic_pos;  // (a,b,c) meaning |a,b,c|^+

    bool has_between(const std::string& a, const std::string& b, const std::string& c) const {
        return between.count({a, b, c}) > 0;
    }
    bool has_cyclic_pos(const std::string& a, const std::string& b, const std::string& c) const {
        return cyclic_pos.count({a, b, c}) > 0;
    }

    // Replaces whatever relation is stored at the unordered triple {a,b,c}.
    enum class TripleKind { between, cyclic };  // between: b in the middle; cyclic: |a,b,c|^+
    void set_triple(const std::string& a, const std::string& b, const std::string& c,
                    TripleKind kind);
    void clear_triple(const std::string& a, const std::string& b, const std::string& c);

    // All cyclic triples reversed; betweenness kept.
    ChordalSystem sign_flipped() const;

    bool operator==(const ChordalSystem&) const = default;
};

struct AxiomViolation {
    std::string axiom;  // "1", "2.1", "2.2", "3.1", ...
    std::vector<std::string> elements;
    std::string detail;
};

// Exhaustive check of the chordal axioms over all element tuples.
std::vector<AxiomViolation> validate_axioms(const ChordalSystem& cs);

// Chordal relations among the given representatives (separatrix or orbit
// ids), derived from the separation structure and the stored edge signs.
ChordalSystem derive_chordal(const FoliationModel& m, const std::vector<std::string>& reps);

// Bijection preserving betweenness and cyclic orientation, or nullopt.
std::optional<std::map<std::string, std::string>> isomorphic(const ChordalSystem& a,
                                                             const ChordalSystem& b);
// Bijection preserving betweenness and flipping every cyclic sign.
std::optional<std::map<std::string, std::string>> anti_isomorphic(const ChordalSystem& a,
                                                                  const ChordalSystem& b);

enum class EquivalenceKind { o_equivalent, n_equivalent, inequivalent };

struct EquivalenceVerdict {
    EquivalenceKind kind = EquivalenceKind::inequivalent;
    // separatrices to separatrices and bands to bands; present unless inequivalent
    std::optional<std::map<std::string, std::string>> witness;
};

std::string to_string(EquivalenceKind k);

// Decides topological equivalence of two plane models: o-equivalent when a
// structure-preserving model isomorphism exists, n-equivalent when only the
// mirrored variant admits one.
EquivalenceVerdict equivalent(const FoliationModel& m1, const FoliationModel& m2);

// Direct search for an orientation-preserving model isomorphism.
std::optional<std::map<std::string, std::string>> model_isomorphism(const FoliationModel& m1,
                                                                    const FoliationModel& m2);

}  // namespace wanderflow
