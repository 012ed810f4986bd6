#pragma once

#include "wanderflow/foliation.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace wanderflow {

// Relation on separatrix ids: (s, s') present iff some insep edge has
// src = s and dst = s'.
Relation prolongation_edges(const FoliationModel& m);

// Direct successors under the precedence relation.
std::set<std::string> lambda1(const FoliationModel& m, const std::string& sep);
// Endpoints of precedence walks of exactly length k (k >= 1).
std::set<std::string> lambda1k(const FoliationModel& m, const std::string& sep, unsigned k);
// Reachability by walks of length >= 1.
std::set<std::string> lambda2(const FoliationModel& m, const std::string& sep);

// 0: no edges; 1: lambda2 == lambda1 everywhere; 2 otherwise.
int rank(const FoliationModel& m);

// Separatrices on a cycle of the chain digraph; empty on any valid plane model.
std::set<std::string> generalized_recurrent(const FoliationModel& m);

// Integer witness levels: separatrices carry their longest-chain depth, bands
// the maximal level of their snk-attached separatrices. Throws when the chain
// digraph has a cycle (no strict witness exists).
std::map<std::string, int> lyapunov_levels(const FoliationModel& m);

struct ReachableSet {
    std::set<std::string> sigma;     // bands, separatrices and listed orbits
    std::set<std::string> boundary;  // separatrices adjacent to sigma but blocked
};

// Orbits reachable from the given orbit or separatrix by an everywhere
// transverse arc, plus the blocking boundary separatrices. Plane models only.
ReachableSet reachable_set(const FoliationModel& m, const std::string& id);

// Time reversal: edges transposed (signs flipped with the loop orientation),
// src/snk swapped, sides swapped.
FoliationModel reverse(const FoliationModel& m);

// Image under an orientation-reversing homeomorphism: sides and signs flip,
// the precedence relation is unchanged.
FoliationModel mirror(const FoliationModel& m);

// True when `mid` separates `a` from `c` in the band/attachment structure,
// i.e. a and c fall in different components once mid is removed. The ids may
// be separatrices or listed orbits.
bool separates(const FoliationModel& m, const std::string& a, const std::string& mid,
               const std::string& c);

// Whether the band/attachment structure is a single connected orbit space.
bool connected_orbit_space(const FoliationModel& m);

}  // namespace wanderflow
