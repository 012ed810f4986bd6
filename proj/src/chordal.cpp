#include "wanderflow/chordal.hpp"

#include "wanderflow/orbitspace.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>

namespace wanderflow {

namespace {

Triple rot(const Triple& t) { return {t[1], t[2], t[0]}; }
Triple rev(const Triple& t) { return {t[2], t[1], t[0]}; }

void insert_cyclic(std::set<Triple>& s, Triple t) {
    s.insert(t);
    s.insert(rot(t));
    s.insert(rot(rot(t)));
}

void insert_between(std::set<Triple>& s, const Triple& t) {
    s.insert(t);
    s.insert(rev(t));
}

}  // namespace

void ChordalSystem::clear_triple(const std::string& a, const std::string& b,
                                 const std::string& c) {
    std::vector<Triple> perms = {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}};
    for (const auto& p : perms) {
        between.erase(p);
        cyclic_pos.erase(p);
    }
}

void ChordalSystem::set_triple(const std::string& a, const std::string& b, const std::string& c,
                               TripleKind kind) {
    clear_triple(a, b, c);
    if (kind == TripleKind::between)
        insert_between(between, {a, b, c});
    else
        insert_cyclic(cyclic_pos, {a, b, c});
}

ChordalSystem ChordalSystem::sign_flipped() const {
    ChordalSystem out;
    out.elements = elements;
    out.between = between;
    for (const auto& t : cyclic_pos) out.cyclic_pos.insert(rev(t));
    return out;
}

// ---------------------------------------------------------------------------
// axioms

std::vector<AxiomViolation> validate_axioms(const ChordalSystem& cs) {
    std::vector<AxiomViolation> out;
    const auto& el = cs.elements.labels();
    const std::size_t n = el.size();

    auto report = [&](std::string axiom, std::vector<std::string> elems, std::string detail) {
        out.push_back({std::move(axiom), std::move(elems), std::move(detail)});
    };

    for (const auto& t : cs.between) {
        for (const auto& x : t)
            if (!cs.elements.contains(x)) report("domain", {x}, "unknown element in a triple");
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            report("domain", {t[0], t[1], t[2]}, "betweenness triple repeats an element");
        if (!cs.between.count(rev(t)))
            report("2.1", {t[0], t[1], t[2]}, "betweenness not closed under reversal");
    }
    for (const auto& t : cs.cyclic_pos) {
        for (const auto& x : t)
            if (!cs.elements.contains(x)) report("domain", {x}, "unknown element in a triple");
        if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
            report("domain", {t[0], t[1], t[2]}, "cyclic triple repeats an element");
        if (!cs.cyclic_pos.count(rot(t)))
            report("2.2", {t[0], t[1], t[2]}, "cyclic relation not closed under rotation");
    }

    auto mid = [&](const std::string& a, const std::string& b, const std::string& c) {
        return cs.has_between(a, b, c) || cs.has_between(c, b, a);
    };
    auto cyc = [&](const std::string& a, const std::string& b, const std::string& c) {
        return cs.has_cyclic_pos(a, b, c) || cs.has_cyclic_pos(b, c, a) ||
               cs.has_cyclic_pos(c, a, b);
    };

    // Axiom 1: exactly one of the five alternatives per unordered triple
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                const std::string &a = el[i], &b = el[j], &c = el[k];
                int holds = (mid(a, b, c) ? 1 : 0) + (mid(b, c, a) ? 1 : 0) +
                            (mid(b, a, c) ? 1 : 0) + (cyc(a, b, c) ? 1 : 0) +
                            (cyc(a, c, b) ? 1 : 0);
                if (holds != 1)
                    report("1", {a, b, c},
                           holds == 0 ? "no relation assigned" : "multiple relations assigned");
            }
        }
    }

    // quartic axioms
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const std::string &a = el[i], &b = el[j], &c = el[k];
                for (std::size_t l = 0; l < n; ++l) {
                    if (l == i || l == j || l == k) continue;
                    const std::string& d = el[l];
                    if (cs.has_cyclic_pos(a, b, c) && cs.has_cyclic_pos(a, c, d)) {
                        if (!cs.has_cyclic_pos(a, b, d) || !cs.has_cyclic_pos(b, c, d))
                            report("3.1", {a, b, c, d}, "cyclic composition fails");
                    }
                    if (cs.has_between(a, b, d)) {
                        if (cs.has_cyclic_pos(a, b, c) &&
                            (!cs.has_cyclic_pos(a, d, c) || !cs.has_between(c, b, d)))
                            report("3.2", {a, b, c, d}, "betweenness insertion fails (+)");
                        if (cs.has_cyclic_pos(a, c, b) &&
                            (!cs.has_cyclic_pos(a, c, d) || !cs.has_between(c, b, d)))
                            report("3.2", {a, b, c, d}, "betweenness insertion fails (-)");
                    }
                    if (cs.has_between(a, b, c) && cs.has_between(b, c, d)) {
                        if (!cs.has_between(a, b, d) || !cs.has_between(a, c, d))
                            report("3.3", {a, b, c, d}, "betweenness chaining fails");
                    }
                }
            }
        }
    }

    // Axiom 3.4: at most two of b|a|c, b|a|d, c|a|d
    for (std::size_t i = 0; i < n; ++i) {
        const std::string& a = el[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (k == i) continue;
                for (std::size_t l = k + 1; l < n; ++l) {
                    if (l == i) continue;
                    const std::string &b = el[j], &c = el[k], &d = el[l];
                    int cnt = (cs.has_between(b, a, c) ? 1 : 0) +
                              (cs.has_between(b, a, d) ? 1 : 0) +
                              (cs.has_between(c, a, d) ? 1 : 0);
                    if (cnt > 2)
                        report("3.4", {a, b, c, d}, "element sits between all three pairs");
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// derivation

namespace {

enum class Region { source_side, theta, target_side };

class SeparationCache {
  public:
    explicit SeparationCache(const FoliationModel& m) : m_(m) {}
    bool separated(const std::string& a, const std::string& mid, const std::string& c) {
        auto key = a < c ? std::make_tuple(a, mid, c) : std::make_tuple(c, mid, a);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        bool r = separates(m_, a, mid, c);
        cache_[key] = r;
        return r;
    }

  private:
    const FoliationModel& m_;
    std::map<std::tuple<std::string, std::string, std::string>, bool> cache_;
};

std::optional<Region> classify(SeparationCache& sep, const std::string& x, const std::string& s1,
                               const std::string& s2) {
    if (x == s1) return Region::source_side;
    if (x == s2) return Region::target_side;
    bool beyond_src = sep.separated(x, s1, s2);
    bool beyond_tgt = sep.separated(x, s2, s1);
    if (beyond_src && beyond_tgt) return std::nullopt;  // not planar-consistent
    if (beyond_src) return Region::source_side;
    if (beyond_tgt) return Region::target_side;
    return Region::theta;
}

// +1 when (t[0],t[1],t[2]) is an even permutation of the sorted triple
int orientation_class(const Triple& t) {
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (t[i] > t[j]) ++inversions;
    return inversions % 2 == 0 ? +1 : -1;
}

}  // namespace

ChordalSystem derive_chordal(const FoliationModel& m, const std::vector<std::string>& reps) {
    require_valid(m);
    if (m.surface != Surface::plane)
        throw error("chordal derivation is unsupported on cylinder models");
    if (!connected_orbit_space(m))
        throw error("chordal derivation needs a connected orbit space; "
                    "this model splits into several components");
    for (const auto& r : reps) {
        if (!m.has_separatrix(r) && !m.find_orbit(r))
            throw error("unknown representative '" + r + "'");
    }

    ChordalSystem cs;
    cs.elements = NodeSet(reps);

    // deduplicated signed precedence pairs
    std::map<std::pair<std::string, std::string>, Sign> edges;
    for (const auto& e : m.insep_edges) {
        auto [it, fresh] = edges.insert({{e.src, e.dst}, e.sign});
        if (!fresh && it->second != e.sign)
            throw error("parallel insep edges " + e.src + ">" + e.dst + " disagree in sign");
    }

    SeparationCache sep(m);
    const auto& el = cs.elements.labels();
    for (std::size_t i = 0; i < el.size(); ++i) {
        for (std::size_t j = i + 1; j < el.size(); ++j) {
            for (std::size_t k = j + 1; k < el.size(); ++k) {
                const std::string &a = el[i], &b = el[j], &c = el[k];
                std::vector<std::string> mids;
                if (sep.separated(a, b, c)) mids.push_back(b);
                if (sep.separated(a, c, b)) mids.push_back(c);
                if (sep.separated(b, a, c)) mids.push_back(a);
                if (mids.size() > 1)
                    throw error("inconsistent separation structure at triple {" + a + "," + b +
                                "," + c + "}");
                if (mids.size() == 1) {
                    const std::string& mid = mids[0];
                    std::string lo = mid == a ? b : a;
                    std::string hi = mid == c ? b : c;
                    insert_between(cs.between, {lo, mid, hi});
                    continue;
                }
                // cyclic triple: orient through the inseparable pair it straddles
                std::optional<int> klass;
                for (const auto& [pair, sign] : edges) {
                    const auto& [s1, s2] = pair;
                    auto ra = classify(sep, a, s1, s2);
                    auto rb = classify(sep, b, s1, s2);
                    auto rc = classify(sep, c, s1, s2);
                    if (!ra || !rb || !rc) continue;
                    std::map<Region, std::vector<std::string>> byrole;
                    byrole[*ra].push_back(a);
                    byrole[*rb].push_back(b);
                    byrole[*rc].push_back(c);
                    if (byrole[Region::source_side].size() != 1 ||
                        byrole[Region::theta].size() != 1 ||
                        byrole[Region::target_side].size() != 1)
                        continue;
                    Triple oriented = {byrole[Region::source_side][0], byrole[Region::theta][0],
                                       byrole[Region::target_side][0]};
                    int cls = orientation_class(oriented) * (sign == Sign::plus ? +1 : -1);
                    if (klass && *klass != cls)
                        throw error("conflicting chirality for triple {" + a + "," + b + "," + c +
                                    "}");
                    klass = cls;
                }
                if (!klass)
                    throw error("cannot classify triple {" + a + "," + b + "," + c +
                                "}: no inseparable pair straddles it");
                Triple base = {a, b, c};  // sorted; orientation_class(base) == +1
                insert_cyclic(cs.cyclic_pos, *klass == +1 ? base : rev(base));
            }
        }
    }
    return cs;
}

// ---------------------------------------------------------------------------
// isomorphism search

namespace {

struct ElementProfile {
    int mid = 0, outer = 0, cyc = 0;
    auto operator<=>(const ElementProfile&) const = default;
};

std::map<std::string, ElementProfile> element_profiles(const ChordalSystem& cs) {
    std::map<std::string, ElementProfile> out;
    for (const auto& x : cs.elements.labels()) out[x];
    for (const auto& t : cs.between) {
        out[t[1]].mid++;
        out[t[0]].outer++;
        out[t[2]].outer++;
    }
    for (const auto& t : cs.cyclic_pos)
        for (const auto& x : t) out[x].cyc++;
    return out;
}

std::optional<std::map<std::string, std::string>> find_bijection(const ChordalSystem& a,
                                                                 const ChordalSystem& b,
                                                                 bool flip) {
    if (a.elements.size() != b.elements.size()) return std::nullopt;
    auto pa = element_profiles(a);
    auto pb = element_profiles(b);
    {
        std::vector<ElementProfile> va, vb;
        for (auto& [k, v] : pa) va.push_back(v);
        for (auto& [k, v] : pb) vb.push_back(v);
        std::sort(va.begin(), va.end());
        std::sort(vb.begin(), vb.end());
        if (va != vb) return std::nullopt;
    }
    const auto& ea = a.elements.labels();
    const auto& eb = b.elements.labels();
    std::map<std::string, std::string> phi;
    std::set<std::string> used;

    auto cyc_img = [&](const std::string& x, const std::string& y, const std::string& z) {
        return flip ? b.has_cyclic_pos(phi[x], phi[z], phi[y])
                    : b.has_cyclic_pos(phi[x], phi[y], phi[z]);
    };
    auto consistent = [&](const std::string& x) {
        for (const auto& [u, pu] : phi) {
            if (u == x) continue;
            for (const auto& [v, pv] : phi) {
                if (v == x || v == u) continue;
                if (a.has_between(u, x, v) != b.has_between(pu, phi[x], pv)) return false;
                if (a.has_between(x, u, v) != b.has_between(phi[x], pu, pv)) return false;
                if (a.has_cyclic_pos(x, u, v) != cyc_img(x, u, v)) return false;
                if (a.has_cyclic_pos(x, v, u) != cyc_img(x, v, u)) return false;
            }
        }
        return true;
    };

    std::function<bool(std::size_t)> assign = [&](std::size_t idx) {
        if (idx == ea.size()) return true;
        const std::string& x = ea[idx];
        for (const auto& y : eb) {
            if (used.count(y) || pa[x] != pb[y]) continue;
            phi[x] = y;
            used.insert(y);
            if (consistent(x) && assign(idx + 1)) return true;
            phi.erase(x);
            used.erase(y);
        }
        return false;
    };
    if (!assign(0)) return std::nullopt;
    return phi;
}

}  // namespace

std::optional<std::map<std::string, std::string>> isomorphic(const ChordalSystem& a,
                                                             const ChordalSystem& b) {
    return find_bijection(a, b, false);
}

std::optional<std::map<std::string, std::string>> anti_isomorphic(const ChordalSystem& a,
                                                                  const ChordalSystem& b) {
    return find_bijection(a, b, true);
}

// ---------------------------------------------------------------------------
// model equivalence

namespace {

using AttTuple = std::tuple<std::string, int, int>;  // mapped sep, side, dir

std::vector<AttTuple> end_shape(const EndSpec& e,
                                const std::map<std::string, std::string>* sep_map) {
    std::vector<AttTuple> v;
    for (const auto& att : e.attachments) {
        std::string s = sep_map ? sep_map->at(att.sep) : att.sep;
        v.emplace_back(s, att.side == Side::L ? 0 : 1, att.dir == Direction::src ? 0 : 1);
    }
    std::sort(v.begin(), v.end());
    return v;
}

// edge records without band identity, used before bands are matched
std::multiset<std::tuple<std::string, std::string, int>> edge_shape(
    const FoliationModel& m, const std::map<std::string, std::string>* sep_map) {
    std::multiset<std::tuple<std::string, std::string, int>> out;
    for (const auto& e : m.insep_edges) {
        std::string s = sep_map ? sep_map->at(e.src) : e.src;
        std::string d = sep_map ? sep_map->at(e.dst) : e.dst;
        out.insert({s, d, e.sign == Sign::plus ? 0 : 1});
    }
    return out;
}

}  // namespace

std::optional<std::map<std::string, std::string>> model_isomorphism(const FoliationModel& m1,
                                                                    const FoliationModel& m2) {
    require_valid(m1);
    require_valid(m2);
    if (m1.surface != m2.surface) return std::nullopt;
    if (m1.separatrices.size() != m2.separatrices.size() || m1.bands.size() != m2.bands.size() ||
        m1.insep_edges.size() != m2.insep_edges.size())
        return std::nullopt;

    // invariant profiles for separatrices: signed degrees
    auto sep_profile = [](const FoliationModel& m, const std::string& s) {
        std::vector<std::tuple<int, int>> v;  // (role, sign)
        for (const auto& e : m.insep_edges) {
            if (e.src == s) v.emplace_back(0, e.sign == Sign::plus ? 0 : 1);
            if (e.dst == s) v.emplace_back(1, e.sign == Sign::plus ? 0 : 1);
        }
        std::sort(v.begin(), v.end());
        return v;
    };

    std::map<std::string, std::string> sep_map;
    std::set<std::string> used;

    std::function<bool(std::size_t)> assign_seps = [&](std::size_t idx) -> bool {
        if (idx == m1.separatrices.size()) {
            if (edge_shape(m1, &sep_map) != edge_shape(m2, nullptr)) return false;
            // match bands, allowing each band's parameter orientation to flip
            std::map<std::string, std::string> band_map;
            std::map<std::string, bool> band_flip;
            std::set<std::string> used_bands;
            std::function<bool(std::size_t)> assign_bands = [&](std::size_t bi) -> bool {
                if (bi == m1.bands.size()) {
                    // every edge must correspond, witnesses included
                    std::multiset<std::tuple<std::string, std::string, int, std::string, int>> w1,
                        w2;
                    for (const auto& e : m1.insep_edges) {
                        EndTag tag = band_flip[e.witness_band] ? other(e.witness_end)
                                                               : e.witness_end;
                        w1.insert({sep_map[e.src], sep_map[e.dst], e.sign == Sign::plus ? 0 : 1,
                                   band_map[e.witness_band], tag == EndTag::lo ? 0 : 1});
                    }
                    for (const auto& e : m2.insep_edges)
                        w2.insert({e.src, e.dst, e.sign == Sign::plus ? 0 : 1, e.witness_band,
                                   e.witness_end == EndTag::lo ? 0 : 1});
                    return w1 == w2;
                }
                const Band& b1 = m1.bands[bi];
                auto lo1 = end_shape(b1.lo, &sep_map);
                auto hi1 = end_shape(b1.hi, &sep_map);
                for (const Band& b2 : m2.bands) {
                    if (used_bands.count(b2.id)) continue;
                    auto lo2 = end_shape(b2.lo, nullptr);
                    auto hi2 = end_shape(b2.hi, nullptr);
                    for (bool flip : {false, true}) {
                        if ((flip ? lo1 == hi2 && hi1 == lo2 : lo1 == lo2 && hi1 == hi2)) {
                            band_map[b1.id] = b2.id;
                            band_flip[b1.id] = flip;
                            used_bands.insert(b2.id);
                            if (assign_bands(bi + 1)) return true;
                            band_map.erase(b1.id);
                            band_flip.erase(b1.id);
                            used_bands.erase(b2.id);
                        }
                    }
                }
                return false;
            };
            if (!assign_bands(0)) return false;
            for (const auto& [k, v] : band_map) sep_map[k] = v;  // extend witness map
            return true;
        }
        const std::string& s = m1.separatrices[idx];
        auto prof = sep_profile(m1, s);
        for (const auto& t : m2.separatrices) {
            if (used.count(t) || sep_profile(m2, t) != prof) continue;
            sep_map[s] = t;
            used.insert(t);
            if (assign_seps(idx + 1)) return true;
            sep_map.erase(s);
            used.erase(t);
        }
        return false;
    };

    if (!assign_seps(0)) return std::nullopt;
    return sep_map;
}

std::string to_string(EquivalenceKind k) {
    switch (k) {
        case EquivalenceKind::o_equivalent: return "o-equivalent";
        case EquivalenceKind::n_equivalent: return "n-equivalent";
        case EquivalenceKind::inequivalent: return "inequivalent";
    }
    return "?";
}

EquivalenceVerdict equivalent(const FoliationModel& m1, const FoliationModel& m2) {
    require_valid(m1);
    require_valid(m2);
    if (m1.surface != Surface::plane || m2.surface != Surface::plane)
        throw error("equivalence decision is unsupported on cylinder models");
    if (auto phi = model_isomorphism(m1, m2))
        return {EquivalenceKind::o_equivalent, std::move(phi)};
    if (auto phi = model_isomorphism(m1, mirror(m2)))
        return {EquivalenceKind::n_equivalent, std::move(phi)};
    return {EquivalenceKind::inequivalent, std::nullopt};
}

}  // namespace wanderflow
