#pragma once

#include "wanderflow/rational.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wanderflow {

// A finite ordered label universe. Labels are opaque strings, kept unique and
// sorted so that every downstream computation iterates deterministically.
class NodeSet {
  public:
    NodeSet() = default;
    explicit NodeSet(std::vector<std::string> labels);

    const std::vector<std::string>& labels() const { return labels_; }
    bool contains(const std::string& label) const;
    std::size_t index_of(const std::string& label) const;  // throws on unknown label
    std::size_t size() const { return labels_.size(); }

    bool operator==(const NodeSet&) const = default;

  private:
    std::vector<std::string> labels_;
};

using LabelPair = std::pair<std::string, std::string>;
using LabelPairSet = std::set<LabelPair>;

// Finite binary relation over a NodeSet.
struct Relation {
    NodeSet base;
    LabelPairSet pairs;

    Relation() = default;
    Relation(NodeSet base_, LabelPairSet pairs_);  // checks pair membership

    bool operator==(const Relation&) const = default;
};

// Reflexive and transitive relation; the constructor enforces both.
struct QuasiOrder {
    NodeSet base;
    LabelPairSet pairs;

    QuasiOrder() = default;
    QuasiOrder(NodeSet base_, LabelPairSet pairs_);

    Relation as_relation() const { return Relation(base, pairs); }

    bool operator==(const QuasiOrder&) const = default;
};

// Smallest transitive superset.
Relation transitive_closure(const Relation& r);

// Reflexive-transitive closure; on a finite discrete node set this is the
// smallest closed transitive extension of r.
QuasiOrder smallest_stream(const Relation& r);

// {y : (p, y) in r}; throws on a label outside the base.
std::set<std::string> down_set(const Relation& r, const std::string& p);
std::set<std::string> down_set(const QuasiOrder& q, const std::string& p);

Relation transpose(const Relation& r);

// Nodes lying on a cycle of r (self-loops included): (x, x) in the
// transitive closure.
std::set<std::string> recurrent_nodes(const Relation& r);

}  // namespace wanderflow
