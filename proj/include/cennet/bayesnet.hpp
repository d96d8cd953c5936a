#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cennet/dataset.hpp"

namespace cennet {

// Discrete Bayesian network: DAG plus one conditional probability table per
// node. CPT rows are indexed by the parent-state configuration in mixed radix
// with the first parent most significant; each row is a distribution over the
// node's states.
struct BnNode {
    std::string name;
    std::vector<std::string> states;
    std::vector<std::string> parents;              // ordered as declared
    std::vector<std::vector<double>> cpt;          // rows x states
};

struct BayesNet {
    std::string name;
    std::vector<BnNode> nodes;                     // declaration order

    std::size_t index_of(const std::string& node) const;
    bool has_node(const std::string& node) const;
    const BnNode& node(const std::string& name) const { return nodes[index_of(name)]; }

    std::vector<std::size_t> parent_indices(std::size_t node) const;
    std::vector<std::vector<std::size_t>> children_lists() const;
    // Indices in a topological order (parents before children).
    std::vector<std::size_t> topological_order() const;

    // Row index into the CPT for a full assignment of parent states.
    std::size_t cpt_row(std::size_t node, const std::vector<std::int32_t>& assignment) const;

    void validate() const;  // invariants: acyclic, CPT shapes, row sums
};

// Line-oriented BIF-style grammar:
//   network <name>;
//   variable <name> { states: s1, s2, ...; }
//   probability ( <child> | <p1>, <p2> ) { (<s1>, <s2>): v1, v2, ...; ... }
//   probability ( <child> ) { table: v1, v2, ...; }
// '#' starts a comment. Throws ParseError with line/column on bad input and
// DataError on semantic violations (row sums, cycles, undeclared parents).
BayesNet parse_bn(const std::string& text);
BayesNet load_bn_file(const std::string& path);

// Canonical form: parse_bn(emit_bn(bn)) reproduces bn exactly.
std::string emit_bn(const BayesNet& bn);

// Ancestral sampling in topological order; deterministic given the seed.
// Every node becomes a categorical column.
TabularDataset sample_bn(const BayesNet& bn, std::size_t n, std::uint64_t seed);

// Candidate variables for a prediction target: ancestors up to three
// generations back, the target's children, and the children's other parents.
// The target must be a binary node.
GroundTruth build_candidates(const BayesNet& bn, const std::string& target);

}  // namespace cennet
