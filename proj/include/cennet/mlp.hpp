#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cennet/dataset.hpp"

namespace cennet {

// Maps dataset rows to model inputs: numeric columns standardized on train
// statistics, categorical columns one-hot on the states seen in training
// (unseen states encode as all zeros).
struct FeatureEncoder {
    struct Field {
        std::string column;
        bool numeric = true;
        double mean = 0.0;
        double stdev = 1.0;
        std::vector<std::string> states;
    };
    std::vector<Field> fields;
    std::size_t dim = 0;

    static FeatureEncoder fit(const TabularDataset& ds, const std::vector<std::string>& features);
    void encode_row(const TabularDataset& ds, std::size_t row, std::vector<double>& out) const;
};

struct TrainConfig {
    std::size_t epochs = 100;
    std::size_t batch_size = 64;
    double learning_rate = 1e-3;
    std::uint64_t seed = 42;
    std::size_t hidden = 16;
    std::size_t nnlu = 5;
};

// Dense layer stack [d_in -> hidden -> nnlu -> 1], ReLU on hidden layers,
// logistic head. The second hidden layer is the NNLU.
struct MlpModel {
    struct Layer {
        std::size_t in = 0;
        std::size_t out = 0;
        std::vector<double> weights;  // row-major, out x in
        std::vector<double> bias;
    };
    std::vector<Layer> layers;  // layers[0], layers[1] hidden; layers[2] output
    FeatureEncoder encoder;
    std::vector<std::string> feature_columns;
    std::string target;
    TrainConfig config;
    std::size_t best_epoch = 0;
    double best_val_pr_auc = 0.0;

    std::size_t nnlu_width() const { return layers.size() < 2 ? 0 : layers[1].out; }
    const std::vector<double>& output_weights() const { return layers.back().weights; }
    double output_bias() const { return layers.back().bias[0]; }

    // Forward pass on encoded input; returns the pre-sigmoid logit and, when
    // `nnlu` is non-null, the NNLU activations.
    double forward(const std::vector<double>& input, std::vector<double>* nnlu = nullptr) const;
    double logit_for_row(const TabularDataset& ds, std::size_t row) const;

    std::string to_json() const;
    static MlpModel from_json(const std::string& text);
};

// Per-instance view of the output decomposition: the logit equals
// dot(weights, activations) + bias exactly.
struct NnluView {
    std::vector<double> activations;
    std::vector<double> weights;
    double bias = 0.0;
    double logit = 0.0;
};

MlpModel train(const TabularDataset& ds, const TrainConfig& cfg);

// Area under the precision-recall curve with rectangle integration over
// recall and thresholds at every distinct score. Needs both classes present.
double pr_auc(const std::vector<double>& scores, const std::vector<int>& labels);

NnluView nnlu_view(const MlpModel& model, const TabularDataset& ds, std::size_t row);
NnluView nnlu_view_encoded(const MlpModel& model, const std::vector<double>& input);

// Index partition of the NNLU by output-weight sign; w >= 0 goes to the
// positive set.
struct SignSplit {
    std::vector<std::size_t> positive;
    std::vector<std::size_t> negative;
};
SignSplit split_signs(const MlpModel& model);

// Training internals exposed for gradient checking.
struct LossGrad {
    double loss = 0.0;
    std::vector<std::vector<double>> weight_grads;
    std::vector<std::vector<double>> bias_grads;
};
LossGrad loss_and_gradients(const MlpModel& model, const std::vector<std::vector<double>>& inputs,
                            const std::vector<int>& labels);

}  // namespace cennet
