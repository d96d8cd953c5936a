#include "cennet/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "cennet/common.hpp"

namespace cennet {

SyntheticKind synthetic_kind_from_string(const std::string& s) {
    if (s == "nonlinear-additive") return SyntheticKind::nonlinear_additive;
    if (s == "nonlinear-nonadditive") return SyntheticKind::nonlinear_nonadditive;
    if (s == "category") return SyntheticKind::category;
    throw ArgumentError("unknown synthetic kind: " + s);
}

std::string to_string(SyntheticKind kind) {
    switch (kind) {
        case SyntheticKind::nonlinear_additive: return "nonlinear-additive";
        case SyntheticKind::nonlinear_nonadditive: return "nonlinear-nonadditive";
        case SyntheticKind::category: return "category";
    }
    return "?";
}

double nonlinear_additive_score(double x1, double x2, double x3, double x4) {
    return std::sin(0.2 * x1) + 0.1 * std::abs(x2) + x3 + std::exp(-x4);
}

double nonlinear_nonadditive_link(double x1, const std::vector<double>& x, std::size_t* partner) {
    std::size_t pair_index;
    double link;
    if (x1 > 7.0) {
        pair_index = 2;
        link = std::sin(x[1]);
    } else if (x1 > 4.0) {
        pair_index = 3;
        link = std::cos(x[2]);
    } else if (x1 > 0.0) {
        pair_index = 4;
        link = std::tan(x[3]);
    } else if (x1 > -4.0) {
        pair_index = 5;
        link = std::exp(2.0 * x[4]);
    } else if (x1 > -7.0) {
        pair_index = 6;
        link = std::tanh(x[5]);
    } else {
        pair_index = 7;
        link = std::sin(x[6]);
    }
    if (partner != nullptr) *partner = pair_index;
    return link;
}

double category_table(int x1, int x2, int x3) {
    static constexpr double table[8] = {
        0.80,  // 0,0,0
        0.25,  // 0,0,1
        0.70,  // 0,1,0
        0.20,  // 0,1,1
        0.20,  // 1,0,0
        0.85,  // 1,0,1
        0.80,  // 1,1,0
        0.20,  // 1,1,1
    };
    return table[(x1 << 2) | (x2 << 1) | x3];
}

namespace {

void check_spec(const SyntheticSpec& spec, SyntheticKind expected) {
    if (spec.kind != expected) {
        throw ArgumentError("spec kind is " + to_string(spec.kind) + ", expected " +
                            to_string(expected));
    }
    if (spec.n_samples < 1) throw ArgumentError("n_samples must be at least 1");
    if (spec.n_features < 10) throw ArgumentError("generators need at least 10 features");
}

std::string var_name(std::size_t i) { return "X" + std::to_string(i); }

TabularDataset numeric_frame(std::size_t n_features) {
    TabularDataset ds;
    for (std::size_t i = 1; i <= n_features; ++i) {
        Column c;
        c.name = var_name(i);
        c.kind = ColumnKind::numeric;
        ds.columns.push_back(std::move(c));
    }
    Column y;
    y.name = "Y";
    y.kind = ColumnKind::categorical;
    y.states = {"0", "1"};
    ds.columns.push_back(std::move(y));
    ds.target = "Y";
    return ds;
}

std::vector<std::string> all_vars(std::size_t n_features) {
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= n_features; ++i) vars.push_back(var_name(i));
    return vars;
}

}  // namespace

DatasetBundle gen_nonlinear_additive(const SyntheticSpec& spec) {
    check_spec(spec, SyntheticKind::nonlinear_additive);
    const std::size_t n = spec.n_samples;
    DatasetBundle bundle;
    bundle.data = numeric_frame(spec.n_features);
    TabularDataset& ds = bundle.data;

    Rng rng(spec.seed);
    std::vector<double> scores(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<double> x(spec.n_features);
        for (std::size_t i = 0; i < spec.n_features; ++i) {
            x[i] = rng.gauss();
            ds.columns[i].num.push_back(x[i]);
        }
        scores[r] = nonlinear_additive_score(x[0], x[1], x[2], x[3]);
    }

    // Center the score at the sample median so the classes stay near-balanced.
    std::vector<double> sorted = scores;
    std::sort(sorted.begin(), sorted.end());
    const double c = n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    Column& y = ds.columns.back();
    for (std::size_t r = 0; r < n; ++r) {
        y.codes.push_back(rng.bernoulli(sigmoid(scores[r] - c)) ? 1 : 0);
    }

    bundle.meta.kind = to_string(spec.kind);
    bundle.meta.seed = spec.seed;
    bundle.meta.centering_c = c;
    GroundTruth& gt = bundle.meta.ground_truth;
    gt.candidate_vars = all_vars(spec.n_features);
    gt.important_sets = {{"X1"}, {"X2"}, {"X3"}, {"X4"}};
    return bundle;
}

DatasetBundle gen_nonlinear_nonadditive(const SyntheticSpec& spec) {
    check_spec(spec, SyntheticKind::nonlinear_nonadditive);
    const std::size_t n = spec.n_samples;
    DatasetBundle bundle;
    bundle.data = numeric_frame(spec.n_features);
    TabularDataset& ds = bundle.data;

    Rng rng(spec.seed);
    Column& y = ds.columns.back();
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<double> x(spec.n_features);
        x[0] = rng.uniform(-10.0, 10.0);
        for (std::size_t i = 1; i < spec.n_features; ++i) x[i] = rng.gauss();
        for (std::size_t i = 0; i < spec.n_features; ++i) ds.columns[i].num.push_back(x[i]);
        const double link = nonlinear_nonadditive_link(x[0], x, nullptr);
        y.codes.push_back(rng.bernoulli(sigmoid(link)) ? 1 : 0);
    }

    bundle.meta.kind = to_string(spec.kind);
    bundle.meta.seed = spec.seed;
    GroundTruth& gt = bundle.meta.ground_truth;
    gt.candidate_vars = all_vars(spec.n_features);
    gt.gate_var = "X1";
    gt.branches = {{7.0, "X2"}, {4.0, "X3"}, {0.0, "X4"}, {-4.0, "X5"}, {-7.0, "X6"}};
    gt.else_partner = "X7";
    return bundle;
}

DatasetBundle gen_category(const SyntheticSpec& spec) {
    check_spec(spec, SyntheticKind::category);
    const std::size_t n = spec.n_samples;
    DatasetBundle bundle;
    TabularDataset& ds = bundle.data;
    for (std::size_t i = 1; i <= spec.n_features; ++i) {
        Column c;
        c.name = var_name(i);
        c.kind = ColumnKind::categorical;
        c.states = {"0", "1"};
        ds.columns.push_back(std::move(c));
    }
    Column y;
    y.name = "Y";
    y.kind = ColumnKind::categorical;
    y.states = {"0", "1"};
    ds.columns.push_back(std::move(y));
    ds.target = "Y";

    Rng rng(spec.seed);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<int> x(spec.n_features);
        for (std::size_t i = 0; i < spec.n_features; ++i) {
            x[i] = rng.bernoulli(0.5) ? 1 : 0;
            ds.columns[i].codes.push_back(x[i]);
        }
        const double p = category_table(x[0], x[1], x[2]);
        ds.columns.back().codes.push_back(rng.bernoulli(p) ? 1 : 0);
    }

    bundle.meta.kind = to_string(spec.kind);
    bundle.meta.seed = spec.seed;
    GroundTruth& gt = bundle.meta.ground_truth;
    gt.candidate_vars = all_vars(spec.n_features);
    gt.important_sets = {{"X1", "X2", "X3"}};
    return bundle;
}

DatasetBundle generate_synthetic(const SyntheticSpec& spec) {
    switch (spec.kind) {
        case SyntheticKind::nonlinear_additive: return gen_nonlinear_additive(spec);
        case SyntheticKind::nonlinear_nonadditive: return gen_nonlinear_nonadditive(spec);
        case SyntheticKind::category: return gen_category(spec);
    }
    throw ArgumentError("unknown synthetic kind");
}

}  // namespace cennet
