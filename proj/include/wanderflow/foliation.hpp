#pragma once

#include "wanderflow/rational.hpp"
#include "wanderflow/relation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wanderflow {

enum class Surface { plane, cylinder };
enum class Side { L, R };                 // relative to the flow direction
enum class Direction { src, snk };        // backward / forward asymptotic
enum class EndTag { lo, hi };
enum class Sign { plus, minus };

inline Side other(Side s) { return s == Side::L ? Side::R : Side::L; }
inline EndTag other(EndTag e) { return e == EndTag::lo ? EndTag::hi : EndTag::lo; }
inline Sign flipped(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

struct Attachment {
    std::string sep;
    Side side;
    Direction dir;
    bool operator==(const Attachment&) const = default;
    auto operator<=>(const Attachment&) const = default;
};

// One end of a band: either the family diverges (free) or it accumulates on
// the listed separatrices.
struct EndSpec {
    std::vector<Attachment> attachments;  // empty means free
    bool free() const { return attachments.empty(); }
    bool operator==(const EndSpec&) const = default;
};

// A maximal open family of ordinary orbits, an interval in orbit space
// parameterized by rationals in (0,1); lo is the parameter->0 end.
struct Band {
    std::string id;
    EndSpec lo, hi;
    const EndSpec& end(EndTag tag) const { return tag == EndTag::lo ? lo : hi; }
    EndSpec& end(EndTag tag) { return tag == EndTag::lo ? lo : hi; }
    bool operator==(const Band&) const = default;
};

// src precedes dst; sign is the chirality of the transversal loop through
// (src, gamma, dst) for gamma in the witnessing band.
struct InsepEdge {
    std::string src, dst;
    Sign sign;
    std::string witness_band;
    EndTag witness_end;
    bool operator==(const InsepEdge&) const = default;
    auto operator<=>(const InsepEdge&) const = default;
};

struct RepOrbit {
    std::string id;
    std::string band;
    Rational parameter;  // strictly inside (0,1)
    bool operator==(const RepOrbit&) const = default;
};

struct Diagnostic {
    enum class Severity { error, warning };
    Severity severity;
    std::string code;
    std::string message;
};

// Combinatorial model of the orbit space of a regular planar (or cylinder)
// wandering flow.
struct FoliationModel {
    Surface surface = Surface::plane;
    std::vector<std::string> separatrices;  // kept sorted
    std::vector<Band> bands;                // kept sorted by id
    std::vector<InsepEdge> insep_edges;     // kept sorted
    std::vector<RepOrbit> orbits;           // kept sorted by id

    const Band* find_band(const std::string& id) const;
    const RepOrbit* find_orbit(const std::string& id) const;
    bool has_separatrix(const std::string& id) const;
    void sort_canonical();

    bool operator==(const FoliationModel&) const = default;
};

std::string to_string(Side s);
std::string to_string(Direction d);
std::string to_string(Sign s);
std::string to_string(EndTag e);

// Empty of error-severity entries iff the model invariants hold; D7-style
// soft findings come back as warnings.
std::vector<Diagnostic> validate(const FoliationModel& m);

inline bool is_valid(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Diagnostic::Severity::error) return false;
    return true;
}

void require_valid(const FoliationModel& m);  // throws with the first error

}  // namespace wanderflow
