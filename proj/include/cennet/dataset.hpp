#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cennet {

enum class ColumnKind { numeric, categorical };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    std::vector<double> num;              // numeric values
    std::vector<std::int32_t> codes;      // categorical state indices
    std::vector<std::string> states;      // categorical state labels

    std::size_t size() const { return kind == ColumnKind::numeric ? num.size() : codes.size(); }
    const std::string& label(std::size_t row) const { return states[codes[row]]; }
};

enum class SplitTag : std::uint8_t { train = 0, val = 1, test = 2 };

struct TabularDataset {
    std::vector<Column> columns;
    std::string target;                   // column name, last column by convention
    std::vector<SplitTag> split;          // per-row tag; empty until split() ran

    std::size_t n_rows() const { return columns.empty() ? 0 : columns.front().size(); }
    std::size_t col_index(const std::string& name) const;
    const Column& col(const std::string& name) const { return columns[col_index(name)]; }
    Column& col(const std::string& name) { return columns[col_index(name)]; }
    bool has_col(const std::string& name) const;

    std::vector<std::size_t> rows_of(SplitTag tag) const;
    std::array<std::size_t, 3> split_counts() const;

    // Feature columns = everything except the target, in column order.
    std::vector<std::string> feature_names() const;
};

// Ground truth attached to a generated dataset. `important_sets` holds the
// globally important variable sets; for the gated generator the per-sample
// important pair is {gate_var, partner(gate value)} resolved via `branches`.
struct GroundTruth {
    std::vector<std::vector<std::string>> important_sets;
    std::vector<std::string> candidate_vars;
    std::vector<std::string> parents_of_target;

    struct GateBranch {
        double threshold;     // branch taken when gate value > threshold
        std::string partner;
    };
    std::string gate_var;                 // empty when no gating applies
    std::vector<GateBranch> branches;     // ordered; falls through to `else_partner`
    std::string else_partner;

    bool gated() const { return !gate_var.empty(); }
    // Important set for a row given the gate variable's value.
    std::vector<std::string> important_set_for(double gate_value) const;
};

struct DatasetMeta {
    std::string name;
    std::string kind;                     // generator kind or "bayesnet"
    std::uint64_t seed = 0;
    std::optional<double> centering_c;    // nonlinear-additive centering constant
    std::array<double, 3> split_ratios{0, 0, 0};
    std::uint64_t split_seed = 0;
    GroundTruth ground_truth;
};

struct DatasetBundle {
    TabularDataset data;
    DatasetMeta meta;
};

// Assigns per-row split tags by seeded shuffle. Ratios must sum to 1 within
// 1e-9 and the dataset must have at least 3 rows.
void assign_split(TabularDataset& ds, const std::array<double, 3>& ratios, std::uint64_t seed);

// data.csv + metadata.json in `dir` (created if missing). Writes are
// deterministic: identical bundle -> identical bytes.
void write_dataset(const std::string& dir, const DatasetBundle& bundle);
DatasetBundle load_dataset(const std::string& dir);

std::string format_double(double v);

}  // namespace cennet
