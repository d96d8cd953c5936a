#pragma once

#include <cstdint>
#include <string>

#include "cennet/dataset.hpp"

namespace cennet {

enum class SyntheticKind { nonlinear_additive, nonlinear_nonadditive, category };

struct SyntheticSpec {
    SyntheticKind kind = SyntheticKind::nonlinear_additive;
    std::size_t n_samples = 10000;
    std::uint64_t seed = 42;
    std::size_t n_features = 10;
};

SyntheticKind synthetic_kind_from_string(const std::string& s);
std::string to_string(SyntheticKind kind);

// Score of the additive generator: sin(0.2 x1) + 0.1 |x2| + x3 + exp(-x4).
double nonlinear_additive_score(double x1, double x2, double x3, double x4);

// Raw link of the gated generator for a given x1; `partner` receives the
// index (1-based) of the paired variable selected by the x1 branch.
double nonlinear_nonadditive_link(double x1, const std::vector<double>& x, std::size_t* partner);

// P(Y=1 | x1, x2, x3) for the categorical generator (binary inputs).
double category_table(int x1, int x2, int x3);

DatasetBundle gen_nonlinear_additive(const SyntheticSpec& spec);
DatasetBundle gen_nonlinear_nonadditive(const SyntheticSpec& spec);
DatasetBundle gen_category(const SyntheticSpec& spec);

DatasetBundle generate_synthetic(const SyntheticSpec& spec);

}  // namespace cennet
