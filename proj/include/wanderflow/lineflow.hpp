#pragma once

#include "wanderflow/ordinal.hpp"
#include "wanderflow/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wanderflow {

enum class Topology { interval, circle };

// A 1-D flow on [0,1] (or the circle [0,1)) with a finite fixed-point set.
// Every non-fixed point moves rightward (clockwise) toward the next fixed
// point; when the interval end 1 is not fixed it behaves as an open end and
// orbits beyond the last fixed point escape.
struct LineFlowSpec {
    Topology topology = Topology::interval;
    std::vector<Rational> fixed;  // strictly increasing, in [0,1] ([0,1) on the circle)

    LineFlowSpec() = default;
    LineFlowSpec(Topology t, std::vector<Rational> fixed_points);  // validates

    bool is_fixed(const Rational& x) const;
    // Next fixed point strictly after x (cyclically next on the circle).
    std::optional<Rational> successor(const Rational& x) const;

    bool operator==(const LineFlowSpec&) const = default;
};

// Finite union of intervals and isolated points with exact endpoints, kept in
// canonical form (disjoint, sorted, maximal components). On the circle a
// component may wrap through 0, written [a,b] with a > b.
class PointSet1D {
  public:
    struct Component {
        Rational lo, hi;
        bool lo_closed = true, hi_closed = true;
        bool wraps = false;  // circle component passing through 0
        bool is_point() const { return !wraps && lo == hi; }
        bool operator==(const Component&) const = default;
    };

    explicit PointSet1D(Topology t = Topology::interval) : topology_(t) {}

    static PointSet1D empty(Topology t) { return PointSet1D(t); }
    static PointSet1D full_circle();

    bool is_empty() const { return !full_ && components_.empty(); }
    bool is_full_circle() const { return full_; }
    Topology topology() const { return topology_; }
    const std::vector<Component>& components() const { return components_; }

    void add_point(const Rational& x);
    // Closed/open interval [lo,hi] on the line; on the circle the clockwise
    // arc lo -> hi (wrapping when hi <= lo; a wrapping arc with lo == hi is
    // the full circle).
    void add_interval(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed);
    void add(const PointSet1D& other);

    bool contains(const Rational& x) const;
    bool contains(const PointSet1D& other) const;

    bool operator==(const PointSet1D&) const = default;

    std::string str() const;

  private:
    void normalize();

    Topology topology_;
    bool full_ = false;  // circle only
    std::vector<Component> components_;
};

// First prolongational limit set of a point, exactly.
PointSet1D lambda1_point(const LineFlowSpec& spec, const Rational& x);
// Extension of the above to sets by union.
PointSet1D lambda1_set(const LineFlowSpec& spec, const PointSet1D& s);
// k-fold composition, k >= 1.
PointSet1D lambda1k_point(const LineFlowSpec& spec, const Rational& x, unsigned k);

// Exactly the fixed set.
PointSet1D nonwandering(const LineFlowSpec& spec);
// {} when the forward orbit escapes, {next fixed point} otherwise, {x} when fixed.
PointSet1D omega_limit(const LineFlowSpec& spec, const Rational& x);
// The spec reflected through x -> 1-x; models the time-reversed flow with the
// rightward convention restored.
LineFlowSpec mirror(const LineFlowSpec& spec);

// Recursive accumulation structures. `accum` repeats its child on blocks
// [x_n, x_{n+1}], x_n = 1-1/n, accumulating at the right endpoint; `concat`
// lays its children side by side; `accum_list` carries its n-th listed child
// on the n-th block and continues past the list by repeatedly applying accum
// to the last entry.
struct RecursiveSpec {
    enum class Kind { leaf, accum, concat, accum_list };
    Kind kind = Kind::leaf;
    std::vector<RecursiveSpec> children;

    static RecursiveSpec leaf() { return {}; }
    static RecursiveSpec accum(RecursiveSpec sub);
    static RecursiveSpec concat(std::vector<RecursiveSpec> parts);
    static RecursiveSpec accum_list(std::vector<RecursiveSpec> parts);

    bool operator==(const RecursiveSpec&) const = default;
};

struct RankResult {
    Ordinal rank;
    // true when the value comes from extrapolated rules rather than one of the
    // canonical construction families
    bool derived_rule = false;
};

// Ordinal at which the prolongational hierarchy of the leftmost point
// stabilizes, by structural recursion on the spec.
RankResult stabilization_rank(const RecursiveSpec& spec);

// Finite unrolling: each accumulation keeps `depth` blocks.
LineFlowSpec truncate(const RecursiveSpec& spec, unsigned depth);

}  // namespace wanderflow
