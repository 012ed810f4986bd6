#include "wanderflow/lineflow.hpp"

#include <algorithm>

namespace wanderflow {

namespace {

Rational mod1(Rational x) {
    // exact reduction into [0,1)
    BigInt n = numerator(x), d = denominator(x);
    BigInt q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return x - Rational(q);
}

}  // namespace

LineFlowSpec::LineFlowSpec(Topology t, std::vector<Rational> fixed_points)
    : topology(t), fixed(std::move(fixed_points)) {
    for (std::size_t i = 0; i + 1 < fixed.size(); ++i) {
        if (!(fixed[i] < fixed[i + 1])) throw error("fixed points must be strictly increasing");
    }
    for (const Rational& f : fixed) {
        if (f < 0 || f > 1) throw error("fixed point outside [0,1]: " + format_rational(f));
        if (topology == Topology::circle && f == 1)
            throw error("circle fixed points live in [0,1)");
    }
}

bool LineFlowSpec::is_fixed(const Rational& x) const {
    return std::binary_search(fixed.begin(), fixed.end(), x);
}

std::optional<Rational> LineFlowSpec::successor(const Rational& x) const {
    auto it = std::upper_bound(fixed.begin(), fixed.end(), x);
    if (it != fixed.end()) return *it;
    if (topology == Topology::circle && !fixed.empty()) return fixed.front();
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// PointSet1D

PointSet1D PointSet1D::full_circle() {
    PointSet1D s(Topology::circle);
    s.full_ = true;
    return s;
}

void PointSet1D::add_point(const Rational& x) {
    Rational v = topology_ == Topology::circle ? mod1(x) : x;
    components_.push_back({v, v, true, true, false});
    normalize();
}

void PointSet1D::add_interval(const Rational& lo, const Rational& hi, bool lo_closed,
                              bool hi_closed) {
    if (topology_ == Topology::interval) {
        if (lo > hi) throw error("interval endpoints out of order");
        if (lo == hi) {
            if (lo_closed && hi_closed) add_point(lo);
            return;  // degenerate open interval is empty
        }
        components_.push_back({lo, hi, lo_closed, hi_closed, false});
        normalize();
        return;
    }
    Rational a = mod1(lo), b = mod1(hi);
    if (a == b) {
        // a full turn
        full_ = true;
        components_.clear();
        return;
    }
    components_.push_back({a, b, lo_closed, hi_closed, b < a});
    normalize();
}

void PointSet1D::add(const PointSet1D& other) {
    if (other.topology_ != topology_) throw error("mixing topologies in a point set");
    if (other.full_) {
        full_ = true;
        components_.clear();
        return;
    }
    for (const auto& c : other.components_) components_.push_back(c);
    normalize();
}

namespace {

struct Cut {  // non-wrapping piece in [0,1]
    Rational lo, hi;
    bool lo_closed, hi_closed;
};

bool cut_less(const Cut& a, const Cut& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
}

bool cuts_mergeable(const Cut& a, const Cut& b) {  // requires a.lo <= b.lo
    if (b.lo < a.hi) return true;
    if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
    return false;
}

}  // namespace

void PointSet1D::normalize() {
    if (full_) {
        components_.clear();
        return;
    }
    std::vector<Cut> cuts;
    for (const auto& c : components_) {
        if (c.wraps) {
            cuts.push_back({c.lo, Rational(1), c.lo_closed, false});
            cuts.push_back({Rational(0), c.hi, true, c.hi_closed});
        } else {
            cuts.push_back({c.lo, c.hi, c.lo_closed, c.hi_closed});
        }
    }
    std::sort(cuts.begin(), cuts.end(), cut_less);
    std::vector<Cut> merged;
    for (const Cut& c : cuts) {
        if (!merged.empty() && cuts_mergeable(merged.back(), c)) {
            Cut& m = merged.back();
            if (c.hi > m.hi) {
                m.hi = c.hi;
                m.hi_closed = c.hi_closed;
            } else if (c.hi == m.hi) {
                m.hi_closed = m.hi_closed || c.hi_closed;
            }
        } else {
            merged.push_back(c);
        }
    }
    components_.clear();
    if (merged.empty()) return;

    if (topology_ == Topology::circle) {
        // stitch across the 0/1 seam
        bool reaches_seam = merged.back().hi == 1;
        bool starts_at_zero = merged.front().lo == 0 && merged.front().lo_closed;
        if (reaches_seam && starts_at_zero) {
            if (merged.size() == 1) {
                full_ = true;
                return;
            }
            Cut last = merged.back();
            Cut first = merged.front();
            merged.pop_back();
            merged.erase(merged.begin());
            if (first.hi > last.lo ||
                (first.hi == last.lo && (last.lo_closed || first.hi_closed))) {
                full_ = true;
                return;
            }
            components_.push_back({last.lo, first.hi, last.lo_closed, first.hi_closed, true});
        } else if (merged.size() == 1 && merged.front().lo == 0 && merged.front().hi == 1 &&
                   merged.front().lo_closed) {
            full_ = true;
            return;
        }
    }
    for (const Cut& c : merged)
        components_.push_back({c.lo, c.hi, c.lo_closed, c.hi_closed, false});
    std::sort(components_.begin(), components_.end(),
              [](const Component& a, const Component& b) { return a.lo < b.lo; });
}

namespace {

bool component_contains(const PointSet1D::Component& c, const Rational& x) {
    if (c.wraps) {
        if (x > c.lo || (x == c.lo && c.lo_closed)) return true;
        if (x < c.hi || (x == c.hi && c.hi_closed)) return true;
        return false;
    }
    if (x < c.lo || x > c.hi) return false;
    if (x == c.lo && !c.lo_closed) return false;
    if (x == c.hi && !c.hi_closed) return false;
    return true;
}

}  // namespace

bool PointSet1D::contains(const Rational& x) const {
    Rational v = topology_ == Topology::circle ? mod1(x) : x;
    if (full_) return true;
    for (const auto& c : components_)
        if (component_contains(c, v)) return true;
    return false;
}

bool PointSet1D::contains(const PointSet1D& other) const {
    if (other.topology_ != topology_) throw error("mixing topologies in a point set");
    if (full_) return true;
    if (other.full_) return false;
    // canonical forms: every component of `other` must fit inside one of ours
    for (const auto& c : other.components_) {
        bool ok = false;
        for (const auto& d : components_) {
            if (!component_contains(d, c.lo) || !component_contains(d, c.hi)) continue;
            if (c.lo == d.lo && c.lo_closed && !d.lo_closed) continue;
            if (c.hi == d.hi && c.hi_closed && !d.hi_closed) continue;
            if (topology_ == Topology::circle) {
                // spans measured clockwise from each lo
                Rational span_c = c.wraps ? Rational(1) - c.lo + c.hi : c.hi - c.lo;
                Rational span_d = d.wraps ? Rational(1) - d.lo + d.hi : d.hi - d.lo;
                Rational off = mod1(c.lo - d.lo);
                if (off + span_c > span_d) continue;
            }
            ok = true;
            break;
        }
        if (!ok) return false;
    }
    return true;
}

std::string PointSet1D::str() const {
    if (full_) return "S1";
    if (components_.empty()) return "{}";
    std::string out;
    for (const auto& c : components_) {
        if (!out.empty()) out += " u ";
        if (c.is_point()) {
            out += "{" + format_rational(c.lo) + "}";
        } else {
            out += c.lo_closed ? "[" : "(";
            out += format_rational(c.lo) + "," + format_rational(c.hi);
            out += c.hi_closed ? "]" : ")";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// lambda computations

PointSet1D lambda1_point(const LineFlowSpec& spec, const Rational& x) {
    PointSet1D out(spec.topology);
    if (spec.topology == Topology::interval) {
        if (x < 0 || x > 1) throw error("point outside [0,1]: " + format_rational(x));
        if (spec.is_fixed(x)) {
            auto succ = spec.successor(x);
            if (succ) {
                out.add_interval(x, *succ, true, true);
            } else if (x == 1) {
                out.add_point(x);
            } else {
                // nothing fixed ahead; 1 acts as an open end
                out.add_interval(x, Rational(1), true, false);
            }
        } else {
            auto succ = spec.successor(x);
            if (succ) out.add_point(*succ);
        }
        return out;
    }
    if (x < 0 || x > 1) throw error("point outside the circle: " + format_rational(x));
    Rational v = mod1(x);
    if (spec.fixed.empty()) return out;
    auto succ = spec.successor(v);
    if (spec.is_fixed(v)) {
        if (*succ == v) return PointSet1D::full_circle();
        out.add_interval(v, *succ, true, true);
    } else {
        out.add_point(*succ);
    }
    return out;
}

namespace {

struct Cell {  // maximal open stretch of non-fixed points
    PointSet1D as_set;
    bool has_right_fixed;
    Rational right;
};

std::vector<Cell> nonfixed_cells(const LineFlowSpec& spec) {
    std::vector<Cell> cells;
    const auto& f = spec.fixed;
    if (spec.topology == Topology::interval) {
        auto push = [&](const Rational& lo, bool lo_closed, const Rational& hi, bool hi_closed,
                        bool right_fixed) {
            if (lo > hi || (lo == hi && !(lo_closed && hi_closed))) return;
            PointSet1D s(Topology::interval);
            s.add_interval(lo, hi, lo_closed, hi_closed);
            cells.push_back({s, right_fixed, hi});
        };
        if (f.empty()) {
            push(Rational(0), true, Rational(1), true, false);
            return cells;
        }
        if (f.front() > 0) push(Rational(0), true, f.front(), false, true);
        for (std::size_t i = 0; i + 1 < f.size(); ++i)
            push(f[i], false, f[i + 1], false, true);
        if (f.back() < 1) push(f.back(), false, Rational(1), true, false);
        return cells;
    }
    if (f.empty()) return cells;
    if (f.size() == 1) {
        PointSet1D s(Topology::circle);
        // everything but the fixed point: two open half arcs either side
        s.add_interval(f[0], f[0] + Rational(1, 2), false, true);
        s.add_interval(f[0] + Rational(1, 2), f[0], false, false);
        cells.push_back({s, true, f[0]});
        return cells;
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
        Rational lo = f[i];
        Rational hi = f[(i + 1) % f.size()];
        PointSet1D s(Topology::circle);
        s.add_interval(lo, hi, false, false);
        cells.push_back({s, true, hi});
    }
    return cells;
}

bool intersects(const PointSet1D& a, const PointSet1D& b) {
    if (a.is_empty() || b.is_empty()) return false;
    if (a.is_full_circle() || b.is_full_circle()) return true;
    // decompose into non-wrapping cuts and do pairwise interval checks
    auto cuts = [](const PointSet1D& s) {
        std::vector<PointSet1D::Component> out;
        for (const auto& c : s.components()) {
            if (c.wraps) {
                out.push_back({c.lo, Rational(1), c.lo_closed, false, false});
                out.push_back({Rational(0), c.hi, true, c.hi_closed, false});
            } else {
                out.push_back(c);
            }
        }
        return out;
    };
    for (const auto& ca : cuts(a)) {
        for (const auto& cb : cuts(b)) {
            Rational lo = std::max(ca.lo, cb.lo);
            Rational hi = std::min(ca.hi, cb.hi);
            if (lo > hi) continue;
            if (lo < hi) return true;
            bool in_a = component_contains(ca, lo);
            bool in_b = component_contains(cb, lo);
            if (in_a && in_b) return true;
        }
    }
    return false;
}

}  // namespace

PointSet1D lambda1_set(const LineFlowSpec& spec, const PointSet1D& s) {
    if (s.topology() != spec.topology) throw error("point set topology mismatch");
    PointSet1D out(spec.topology);
    if (s.is_empty()) return out;
    for (const Rational& fp : spec.fixed) {
        if (s.contains(fp)) {
            out.add(lambda1_point(spec, fp));
            if (out.is_full_circle()) return out;
        }
    }
    for (const Cell& cell : nonfixed_cells(spec)) {
        if (!cell.has_right_fixed) continue;
        if (s.is_full_circle() || intersects(s, cell.as_set)) out.add_point(cell.right);
    }
    return out;
}

PointSet1D lambda1k_point(const LineFlowSpec& spec, const Rational& x, unsigned k) {
    if (k < 1) throw error("composition order k must be at least 1");
    PointSet1D cur = lambda1_point(spec, x);
    for (unsigned i = 1; i < k; ++i) cur = lambda1_set(spec, cur);
    return cur;
}

PointSet1D nonwandering(const LineFlowSpec& spec) {
    PointSet1D out(spec.topology);
    for (const Rational& f : spec.fixed) out.add_point(f);
    return out;
}

PointSet1D omega_limit(const LineFlowSpec& spec, const Rational& x) {
    PointSet1D out(spec.topology);
    Rational v = spec.topology == Topology::circle ? mod1(x) : x;
    if (spec.is_fixed(v)) {
        out.add_point(v);
        return out;
    }
    auto succ = spec.successor(v);
    if (succ) out.add_point(*succ);
    return out;
}

LineFlowSpec mirror(const LineFlowSpec& spec) {
    std::vector<Rational> flipped;
    for (const Rational& f : spec.fixed) {
        Rational v = Rational(1) - f;
        flipped.push_back(spec.topology == Topology::circle ? mod1(v) : v);
    }
    std::sort(flipped.begin(), flipped.end());
    return LineFlowSpec(spec.topology, std::move(flipped));
}

// ---------------------------------------------------------------------------
// recursive specs

RecursiveSpec RecursiveSpec::accum(RecursiveSpec sub) {
    RecursiveSpec s;
    s.kind = Kind::accum;
    s.children.push_back(std::move(sub));
    return s;
}

RecursiveSpec RecursiveSpec::concat(std::vector<RecursiveSpec> parts) {
    if (parts.empty()) throw error("concat needs at least one part");
    RecursiveSpec s;
    s.kind = Kind::concat;
    s.children = std::move(parts);
    return s;
}

RecursiveSpec RecursiveSpec::accum_list(std::vector<RecursiveSpec> parts) {
    if (parts.empty()) throw error("accum_list needs at least one part");
    RecursiveSpec s;
    s.kind = Kind::accum_list;
    s.children = std::move(parts);
    return s;
}

namespace {

bool is_tower(const RecursiveSpec& s) {
    if (s.kind == RecursiveSpec::Kind::leaf) return true;
    return s.kind == RecursiveSpec::Kind::accum && is_tower(s.children[0]);
}

bool is_glist(const RecursiveSpec& s) {
    if (s.kind != RecursiveSpec::Kind::accum_list) return false;
    return std::all_of(s.children.begin(), s.children.end(), is_tower);
}

// construction families whose stabilization values the examples pin down
bool is_exhibited(const RecursiveSpec& s) {
    if (is_tower(s) || is_glist(s)) return true;
    if (s.kind == RecursiveSpec::Kind::accum) return is_glist(s.children[0]);
    if (s.kind == RecursiveSpec::Kind::concat) {
        if (!is_glist(s.children[0])) return false;
        for (std::size_t i = 1; i < s.children.size(); ++i) {
            if (!is_tower(s.children[i]) && !is_glist(s.children[i])) return false;
        }
        return true;
    }
    return false;
}

Ordinal rank_of(const RecursiveSpec& s) {
    switch (s.kind) {
        case RecursiveSpec::Kind::leaf:
            return Ordinal::finite(1);
        case RecursiveSpec::Kind::accum: {
            Ordinal r = rank_of(s.children[0]);
            return r.is_finite() ? r + Ordinal::finite(1) : r.times_omega();
        }
        case RecursiveSpec::Kind::concat: {
            Ordinal r = rank_of(s.children[0]);
            for (std::size_t i = 1; i < s.children.size(); ++i) {
                Ordinal ri = rank_of(s.children[i]);
                // appending a structure costs one level less when it is finite:
                // its blocks are traversed by compositions that are already free
                Ordinal app = ri.is_finite() ? Ordinal::finite(ri.finite_value() - 1) : ri;
                r = r + app;
            }
            return r;
        }
        case RecursiveSpec::Kind::accum_list: {
            Ordinal r = Ordinal::omega();
            for (const auto& c : s.children) {
                Ordinal rc = rank_of(c);
                if (!rc.is_finite())
                    throw error("accum_list over infinite-rank blocks exceeds the w^w bound");
                r = Ordinal::max(r, rc);
            }
            return r;
        }
    }
    throw error("unreachable");
}

}  // namespace

RankResult stabilization_rank(const RecursiveSpec& spec) {
    return {rank_of(spec), !is_exhibited(spec)};
}

namespace {

void place(const RecursiveSpec& s, const Rational& a, const Rational& b, unsigned depth,
           std::vector<Rational>& out) {
    switch (s.kind) {
        case RecursiveSpec::Kind::leaf:
            out.push_back(a);
            out.push_back(b);
            return;
        case RecursiveSpec::Kind::accum: {
            Rational span = b - a;
            for (unsigned n = 1; n <= depth; ++n) {
                Rational lo = a + span * (Rational(1) - Rational(1, n));
                Rational hi = a + span * (Rational(1) - Rational(1, n + 1));
                place(s.children[0], lo, hi, depth, out);
            }
            return;
        }
        case RecursiveSpec::Kind::concat: {
            Rational span = (b - a) / Rational(s.children.size());
            for (std::size_t i = 0; i < s.children.size(); ++i)
                place(s.children[i], a + span * Rational(i), a + span * Rational(i + 1), depth,
                      out);
            return;
        }
        case RecursiveSpec::Kind::accum_list: {
            Rational span = b - a;
            for (unsigned n = 1; n <= depth; ++n) {
                Rational lo = a + span * (Rational(1) - Rational(1, n));
                Rational hi = a + span * (Rational(1) - Rational(1, n + 1));
                RecursiveSpec block =
                    n <= s.children.size() ? s.children[n - 1] : s.children.back();
                for (std::size_t extra = s.children.size(); extra < n; ++extra)
                    block = RecursiveSpec::accum(std::move(block));
                place(block, lo, hi, depth, out);
            }
            return;
        }
    }
}

}  // namespace

namespace {

double truncation_size(const RecursiveSpec& s, unsigned depth) {
    switch (s.kind) {
        case RecursiveSpec::Kind::leaf:
            return 2.0;
        case RecursiveSpec::Kind::accum:
            return depth * truncation_size(s.children[0], depth);
        case RecursiveSpec::Kind::concat: {
            double total = 0;
            for (const auto& c : s.children) total += truncation_size(c, depth);
            return total;
        }
        case RecursiveSpec::Kind::accum_list: {
            double total = 0;
            for (unsigned n = 1; n <= depth; ++n) {
                RecursiveSpec block =
                    n <= s.children.size() ? s.children[n - 1] : s.children.back();
                for (std::size_t extra = s.children.size(); extra < n; ++extra)
                    block = RecursiveSpec::accum(std::move(block));
                total += truncation_size(block, depth);
            }
            return total;
        }
    }
    return 0;
}

}  // namespace

LineFlowSpec truncate(const RecursiveSpec& spec, unsigned depth) {
    if (depth < 1) throw error("truncation depth must be at least 1");
    if (truncation_size(spec, depth) > 2e6)
        throw error("truncation too large; lower the depth");
    std::vector<Rational> fixed;
    place(spec, Rational(0), Rational(1), depth, fixed);
    std::sort(fixed.begin(), fixed.end());
    fixed.erase(std::unique(fixed.begin(), fixed.end()), fixed.end());
    return LineFlowSpec(Topology::interval, std::move(fixed));
}

}  // namespace wanderflow
