#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cennet/bayesnet.hpp"

namespace cennet {

// Standard d-separation by reachability over active paths. `cond` must not
// contain a or b.
bool d_separated(const BayesNet& bn, const std::string& a, const std::string& b,
                 const std::vector<std::string>& cond);

// Exact joint distribution over all nodes of a small network, built by
// enumerating every configuration. Intended for oracle checks only; the
// state space must stay small (~<= 1e6 cells).
struct ExactJoint {
    std::vector<std::string> names;
    std::vector<std::int32_t> cards;
    std::vector<double> probs;  // mixed radix, first variable most significant

    std::size_t index_of(const std::string& name) const;
    double total() const;
};

ExactJoint exact_joint(const BayesNet& bn);

// H(x | S) in nats from the exact joint.
double conditional_entropy(const ExactJoint& joint, const std::string& x,
                           const std::vector<std::string>& cond);

// Exhaustive minimum of H(x|S) over the listed sets; returns the argmin and
// the value. Distribution must be normalized within 1e-9.
std::pair<std::vector<std::string>, double> min_cond_entropy(
    const ExactJoint& joint, const std::string& x,
    const std::vector<std::vector<std::string>>& allowed);

// All sets S with parents(x) as a subset, drawn from the non-descendants of
// x: exactly the sets Theorem-style entropy comparisons quantify over.
std::vector<std::vector<std::string>> entropy_candidate_sets(const BayesNet& bn,
                                                             const std::string& x);

}  // namespace cennet
