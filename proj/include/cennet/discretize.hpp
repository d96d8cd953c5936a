#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cennet/dataset.hpp"

namespace cennet {

// Equal-frequency binning for a single numeric column. Values with at least
// 1/n_bins of the training mass get a dedicated bin; the rest of the mass is
// split equal-frequency over the remaining bins. Edges sit at midpoints
// between adjacent distinct values, so application is a pure edge lookup.
struct NumericBinning {
    std::vector<double> edges;   // strictly increasing; edges.size() + 1 bins
    bool degenerate = false;     // constant column collapsed to one bin

    std::size_t n_bins() const { return edges.size() + 1; }
    std::int32_t bin_of(double v) const;
};

NumericBinning fit_equal_frequency(std::vector<double> values, std::size_t n_bins);

// Per-column discretization over a dataset: numeric columns get equal
// frequency bins fit on the train split, categorical columns keep their
// state dictionary as-is.
class Discretizer {
public:
    static Discretizer fit(const TabularDataset& ds, std::size_t n_bins = 3);

    std::size_t n_bins_of(const std::string& column) const;
    // Total on any value: out-of-range numerics clamp to the edge bins and
    // unseen categorical labels map to bin 0.
    std::int32_t apply(const std::string& column, double value) const;
    std::int32_t apply_label(const std::string& column, const std::string& label) const;
    std::vector<std::int32_t> apply_column(const TabularDataset& ds, const std::string& column) const;

    bool has_column(const std::string& column) const;
    const NumericBinning& binning(const std::string& column) const;
    bool is_numeric(const std::string& column) const;

    std::string to_json() const;
    static Discretizer from_json(const std::string& text);

    std::size_t requested_bins = 3;

private:
    struct Entry {
        std::string name;
        bool numeric = true;
        NumericBinning binning;                // numeric
        std::vector<std::string> states;       // categorical
    };
    const Entry& entry(const std::string& column) const;
    std::vector<Entry> entries_;
};

// Column-major table of discrete codes; the lingua franca of the causal and
// explanation modules.
struct DiscreteTable {
    std::vector<std::string> names;
    std::vector<std::vector<std::int32_t>> codes;  // per column
    std::vector<std::int32_t> cards;               // state count per column

    std::size_t n_rows() const { return codes.empty() ? 0 : codes.front().size(); }
    std::size_t n_cols() const { return names.size(); }
    std::size_t index_of(const std::string& name) const;
    void add_column(std::string name, std::vector<std::int32_t> col, std::int32_t card);
};

// Discretized view of `columns` restricted to `rows`.
DiscreteTable make_discrete_table(const TabularDataset& ds, const Discretizer& disc,
                                  const std::vector<std::string>& columns,
                                  const std::vector<std::size_t>& rows);

}  // namespace cennet
