#include "cennet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cennet/common.hpp"

namespace cennet {

bool d_separated(const BayesNet& bn, const std::string& a, const std::string& b,
                 const std::vector<std::string>& cond) {
    const std::size_t src = bn.index_of(a);
    const std::size_t dst = bn.index_of(b);
    if (src == dst) throw ArgumentError("d-separation needs two distinct nodes");

    std::vector<bool> observed(bn.nodes.size(), false);
    for (const std::string& c : cond) {
        const std::size_t idx = bn.index_of(c);
        if (idx == src || idx == dst) {
            throw ArgumentError("conditioning set must exclude the tested nodes");
        }
        observed[idx] = true;
    }

    const auto children = bn.children_lists();
    // Observed nodes and their ancestors, for the collider rule.
    std::vector<bool> anc_observed = observed;
    {
        std::vector<std::size_t> stack;
        for (std::size_t i = 0; i < observed.size(); ++i) {
            if (observed[i]) stack.push_back(i);
        }
        while (!stack.empty()) {
            const std::size_t node = stack.back();
            stack.pop_back();
            for (std::size_t p : bn.parent_indices(node)) {
                if (!anc_observed[p]) {
                    anc_observed[p] = true;
                    stack.push_back(p);
                }
            }
        }
    }

    // Reachability over (node, direction) states: direction 0 = entered via an
    // edge pointing into the node, 1 = entered from a child (or the start).
    std::vector<std::array<bool, 2>> visited(bn.nodes.size(), {false, false});
    std::vector<std::pair<std::size_t, int>> stack{{src, 1}};
    while (!stack.empty()) {
        const auto [node, dir] = stack.back();
        stack.pop_back();
        if (visited[node][dir]) continue;
        visited[node][dir] = true;
        if (node == dst) return false;

        if (dir == 1) {
            // Trail arrived from below: may go up to parents and down to
            // children while the node is unobserved.
            if (!observed[node]) {
                for (std::size_t p : bn.parent_indices(node)) stack.push_back({p, 1});
                for (std::size_t c : children[node]) stack.push_back({c, 0});
            }
        } else {
            // Trail arrived from a parent: pass down unless observed; turn
            // around at a collider only if it has an observed descendant.
            if (!observed[node]) {
                for (std::size_t c : children[node]) stack.push_back({c, 0});
            }
            if (anc_observed[node]) {
                for (std::size_t p : bn.parent_indices(node)) stack.push_back({p, 1});
            }
        }
    }
    return true;
}

std::size_t ExactJoint::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return i;
    }
    throw ArgumentError("joint has no variable: " + name);
}

double ExactJoint::total() const {
    double t = 0.0;
    for (double p : probs) t += p;
    return t;
}

ExactJoint exact_joint(const BayesNet& bn) {
    bn.validate();
    ExactJoint joint;
    std::size_t cells = 1;
    for (const BnNode& n : bn.nodes) {
        joint.names.push_back(n.name);
        joint.cards.push_back(static_cast<std::int32_t>(n.states.size()));
        cells *= n.states.size();
        if (cells > 2000000) {
            throw ArgumentError("state space too large for exact enumeration");
        }
    }

    const std::vector<std::size_t> order = bn.topological_order();
    std::vector<std::vector<std::size_t>> parent_idx(bn.nodes.size());
    for (std::size_t i = 0; i < bn.nodes.size(); ++i) parent_idx[i] = bn.parent_indices(i);

    joint.probs.assign(cells, 0.0);
    std::vector<std::int32_t> value(bn.nodes.size(), 0);
    std::vector<std::int32_t> assignment;
    for (std::size_t cell = 0; cell < cells; ++cell) {
        std::size_t rest = cell;
        for (std::size_t i = bn.nodes.size(); i-- > 0;) {
            value[i] = static_cast<std::int32_t>(rest % joint.cards[i]);
            rest /= joint.cards[i];
        }
        double p = 1.0;
        for (std::size_t node : order) {
            assignment.clear();
            for (std::size_t pi : parent_idx[node]) assignment.push_back(value[pi]);
            p *= bn.nodes[node].cpt[bn.cpt_row(node, assignment)][value[node]];
            if (p == 0.0) break;
        }
        joint.probs[cell] = p;
    }
    return joint;
}

namespace {

// Marginalize the joint onto `vars` (in the given order).
std::vector<double> marginal(const ExactJoint& joint, const std::vector<std::size_t>& vars) {
    std::size_t cells = 1;
    for (std::size_t v : vars) cells *= joint.cards[v];
    std::vector<double> out(cells, 0.0);

    std::vector<std::int32_t> value(joint.names.size());
    for (std::size_t cell = 0; cell < joint.probs.size(); ++cell) {
        std::size_t rest = cell;
        for (std::size_t i = joint.names.size(); i-- > 0;) {
            value[i] = static_cast<std::int32_t>(rest % joint.cards[i]);
            rest /= joint.cards[i];
        }
        std::size_t idx = 0;
        for (std::size_t v : vars) idx = idx * joint.cards[v] + static_cast<std::size_t>(value[v]);
        out[idx] += joint.probs[cell];
    }
    return out;
}

}  // namespace

double conditional_entropy(const ExactJoint& joint, const std::string& x,
                           const std::vector<std::string>& cond) {
    if (std::abs(joint.total() - 1.0) > 1e-9) {
        throw ArgumentError("joint distribution is not normalized");
    }
    std::vector<std::size_t> vars{joint.index_of(x)};
    for (const std::string& c : cond) vars.push_back(joint.index_of(c));

    const std::vector<double> pxs = marginal(joint, vars);
    const std::size_t cx = static_cast<std::size_t>(joint.cards[vars[0]]);
    const std::size_t n_conf = pxs.size() / cx;

    // H(X|S) = -sum p(x,s) log p(x|s); layout is x-major so configuration k
    // sits at stride n_conf.
    double h = 0.0;
    for (std::size_t k = 0; k < n_conf; ++k) {
        double ps = 0.0;
        for (std::size_t xv = 0; xv < cx; ++xv) ps += pxs[xv * n_conf + k];
        if (ps <= 0.0) continue;
        for (std::size_t xv = 0; xv < cx; ++xv) {
            const double pxy = pxs[xv * n_conf + k];
            if (pxy <= 0.0) continue;
            h -= pxy * std::log(pxy / ps);
        }
    }
    return h;
}

std::pair<std::vector<std::string>, double> min_cond_entropy(
    const ExactJoint& joint, const std::string& x,
    const std::vector<std::vector<std::string>>& allowed) {
    if (allowed.empty()) throw ArgumentError("no candidate sets given");
    std::vector<std::string> best;
    double best_h = 0.0;
    bool first = true;
    for (const auto& s : allowed) {
        const double h = conditional_entropy(joint, x, s);
        if (first || h < best_h) {
            best = s;
            best_h = h;
            first = false;
        }
    }
    return {best, best_h};
}

std::vector<std::vector<std::string>> entropy_candidate_sets(const BayesNet& bn,
                                                             const std::string& x) {
    const std::size_t t = bn.index_of(x);
    const auto children = bn.children_lists();

    // Descendants of x.
    std::vector<bool> descendant(bn.nodes.size(), false);
    std::vector<std::size_t> stack{t};
    while (!stack.empty()) {
        const std::size_t node = stack.back();
        stack.pop_back();
        for (std::size_t c : children[node]) {
            if (!descendant[c]) {
                descendant[c] = true;
                stack.push_back(c);
            }
        }
    }

    std::set<std::size_t> parents;
    for (std::size_t p : bn.parent_indices(t)) parents.insert(p);
    std::vector<std::size_t> optional;
    for (std::size_t i = 0; i < bn.nodes.size(); ++i) {
        if (i != t && !descendant[i] && !parents.count(i)) optional.push_back(i);
    }

    std::vector<std::vector<std::string>> sets;
    const std::size_t combos = std::size_t{1} << optional.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
        std::vector<std::string> s;
        for (std::size_t p : parents) s.push_back(bn.nodes[p].name);
        for (std::size_t bit = 0; bit < optional.size(); ++bit) {
            if (mask & (std::size_t{1} << bit)) s.push_back(bn.nodes[optional[bit]].name);
        }
        sets.push_back(std::move(s));
    }
    return sets;
}

}  // namespace cennet
