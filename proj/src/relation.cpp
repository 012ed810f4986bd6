#include "wanderflow/relation.hpp"

#include <algorithm>
#include <cctype>

namespace wanderflow {

namespace {

// big-int parsing that always reads base 10 (leading zeros must not trigger
// the octal reading of integer literals)
BigInt parse_bigint(const std::string& text) {
    std::string t = text;
    bool negative = false;
    if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
        negative = t[0] == '-';
        t = t.substr(1);
    }
    if (t.empty()) throw error("empty integer literal");
    std::size_t nz = t.find_first_not_of('0');
    t = nz == std::string::npos ? "0" : t.substr(nz);
    for (char c : t)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw error("bad digit in integer literal");
    BigInt v(t);
    return negative ? -v : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw error("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num = parse_bigint(text.substr(0, slash));
            BigInt den = parse_bigint(text.substr(slash + 1));
            if (den == 0) throw error("zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(parse_bigint(text));
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac_len = text.size() - dot - 1;
        if (frac_len == 0 || digits.empty()) throw error("bad decimal literal '" + text + "'");
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(parse_bigint(digits), den);
    } catch (const std::exception& e) {
        throw error("bad rational literal '" + text + "': " + e.what());
    }
}

std::string format_rational(const Rational& r) {
    std::string num = numerator(r).str();
    if (denominator(r) == 1) return num;
    return num + "/" + denominator(r).str();
}

NodeSet::NodeSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::sort(labels_.begin(), labels_.end());
    auto dup = std::adjacent_find(labels_.begin(), labels_.end());
    if (dup != labels_.end()) throw error("duplicate label '" + *dup + "'");
}

bool NodeSet::contains(const std::string& label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
}

std::size_t NodeSet::index_of(const std::string& label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) throw error("unknown label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

Relation::Relation(NodeSet base_, LabelPairSet pairs_)
    : base(std::move(base_)), pairs(std::move(pairs_)) {
    for (const auto& [a, b] : pairs) {
        if (!base.contains(a) || !base.contains(b))
            throw error("relation pair (" + a + ", " + b + ") leaves the node set");
    }
}

QuasiOrder::QuasiOrder(NodeSet base_, LabelPairSet pairs_)
    : base(std::move(base_)), pairs(std::move(pairs_)) {
    for (const auto& [a, b] : pairs) {
        if (!base.contains(a) || !base.contains(b))
            throw error("pair (" + a + ", " + b + ") leaves the node set");
    }
    for (const auto& x : base.labels()) {
        if (!pairs.count({x, x})) throw error("quasi-order misses reflexive pair at '" + x + "'");
    }
    for (const auto& [a, b] : pairs) {
        for (const auto& [c, d] : pairs) {
            if (b == c && !pairs.count({a, d}))
                throw error("quasi-order misses transitive pair (" + a + ", " + d + ")");
        }
    }
}

namespace {

// Index-space adjacency built once per operation.
std::vector<std::vector<std::size_t>> adjacency(const Relation& r) {
    std::vector<std::vector<std::size_t>> adj(r.base.size());
    for (const auto& [a, b] : r.pairs)
        adj[r.base.index_of(a)].push_back(r.base.index_of(b));
    return adj;
}

std::vector<bool> reachable_from(const std::vector<std::vector<std::size_t>>& adj,
                                 std::size_t start) {
    std::vector<bool> seen(adj.size(), false);
    std::vector<std::size_t> stack{start};
    // start itself is marked only if re-entered through an edge
    std::vector<bool> visited(adj.size(), false);
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                if (!visited[v]) {
                    visited[v] = true;
                    stack.push_back(v);
                }
            }
        }
    }
    return seen;
}

}  // namespace

Relation transitive_closure(const Relation& r) {
    auto adj = adjacency(r);
    LabelPairSet out;
    for (std::size_t i = 0; i < r.base.size(); ++i) {
        auto seen = reachable_from(adj, i);
        for (std::size_t j = 0; j < r.base.size(); ++j)
            if (seen[j]) out.insert({r.base.labels()[i], r.base.labels()[j]});
    }
    return Relation(r.base, std::move(out));
}

QuasiOrder smallest_stream(const Relation& r) {
    Relation tc = transitive_closure(r);
    LabelPairSet pairs = tc.pairs;
    for (const auto& x : r.base.labels()) pairs.insert({x, x});
    return QuasiOrder(r.base, std::move(pairs));
}

std::set<std::string> down_set(const Relation& r, const std::string& p) {
    r.base.index_of(p);  // reject unknown labels
    std::set<std::string> out;
    for (auto it = r.pairs.lower_bound({p, ""}); it != r.pairs.end() && it->first == p; ++it)
        out.insert(it->second);
    return out;
}

std::set<std::string> down_set(const QuasiOrder& q, const std::string& p) {
    return down_set(q.as_relation(), p);
}

Relation transpose(const Relation& r) {
    LabelPairSet out;
    for (const auto& [a, b] : r.pairs) out.insert({b, a});
    return Relation(r.base, std::move(out));
}

std::set<std::string> recurrent_nodes(const Relation& r) {
    auto adj = adjacency(r);
    std::set<std::string> out;
    for (std::size_t i = 0; i < r.base.size(); ++i) {
        if (reachable_from(adj, i)[i]) out.insert(r.base.labels()[i]);
    }
    return out;
}

}  // namespace wanderflow
