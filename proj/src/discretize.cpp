#include "cennet/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "cennet/common.hpp"

namespace cennet {

using nlohmann::json;

std::int32_t NumericBinning::bin_of(double v) const {
    const auto it = std::upper_bound(edges.begin(), edges.end(), v);
    return static_cast<std::int32_t>(it - edges.begin());
}

namespace {

struct Segment {
    std::size_t first;   // distinct-value index range [first, last]
    std::size_t last;
    std::size_t mass;
    bool heavy;
    std::size_t bins = 0;
};

}  // namespace

NumericBinning fit_equal_frequency(std::vector<double> values, std::size_t n_bins) {
    if (values.empty()) throw ArgumentError("cannot fit a discretizer on an empty column");
    if (n_bins < 1) throw ArgumentError("n_bins must be at least 1");
    std::sort(values.begin(), values.end());

    std::vector<double> distinct;
    std::vector<std::size_t> counts;
    for (double v : values) {
        if (distinct.empty() || v != distinct.back()) {
            distinct.push_back(v);
            counts.push_back(1);
        } else {
            counts.back()++;
        }
    }

    NumericBinning out;
    const std::size_t n = values.size();
    const std::size_t n_distinct = distinct.size();
    const std::size_t bins = std::min(n_bins, n_distinct);
    if (bins <= 1) {
        out.degenerate = true;
        if (n_distinct == 1) {
            log_warn("constant column collapsed to a single bin");
        }
        return out;
    }

    // A value holding at least 1/bins of the mass gets a dedicated bin; the
    // remaining bins are spread over the gaps between heavy values in
    // proportion to their mass.
    std::vector<Segment> segments;
    std::size_t heavy_count = 0;
    for (std::size_t j = 0; j < n_distinct; ++j) {
        const bool heavy = counts[j] * bins >= n;
        if (heavy) {
            segments.push_back({j, j, counts[j], true, 1});
            ++heavy_count;
        } else if (!segments.empty() && !segments.back().heavy) {
            segments.back().last = j;
            segments.back().mass += counts[j];
        } else {
            segments.push_back({j, j, counts[j], false, 0});
        }
    }

    std::size_t remaining = bins > heavy_count ? bins - heavy_count : 0;
    std::size_t gap_mass = 0;
    for (const Segment& s : segments) {
        if (!s.heavy) gap_mass += s.mass;
    }
    if (remaining > 0 && gap_mass > 0) {
        // Largest-remainder allocation, capped at each gap's distinct count.
        std::vector<std::size_t> gap_idx;
        std::vector<double> quota;
        for (std::size_t i = 0; i < segments.size(); ++i) {
            if (!segments[i].heavy) {
                gap_idx.push_back(i);
                quota.push_back(static_cast<double>(remaining) * static_cast<double>(segments[i].mass) /
                                static_cast<double>(gap_mass));
            }
        }
        std::size_t assigned = 0;
        for (std::size_t k = 0; k < gap_idx.size(); ++k) {
            segments[gap_idx[k]].bins = static_cast<std::size_t>(std::floor(quota[k]));
            assigned += segments[gap_idx[k]].bins;
        }
        std::vector<std::size_t> order(gap_idx.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const double ra = quota[a] - std::floor(quota[a]);
            const double rb = quota[b] - std::floor(quota[b]);
            return ra > rb;
        });
        for (std::size_t k = 0; assigned < remaining && k < order.size(); ++k) {
            segments[gap_idx[order[k]]].bins++;
            ++assigned;
        }
        // Cap at gap width; push overflow to any gap with spare room.
        for (std::size_t pass = 0; pass < segments.size(); ++pass) {
            std::size_t overflow = 0;
            for (Segment& s : segments) {
                if (s.heavy) continue;
                const std::size_t width = s.last - s.first + 1;
                if (s.bins > width) {
                    overflow += s.bins - width;
                    s.bins = width;
                }
            }
            if (overflow == 0) break;
            for (Segment& s : segments) {
                if (s.heavy || overflow == 0) continue;
                const std::size_t width = s.last - s.first + 1;
                while (s.bins < width && overflow > 0) {
                    s.bins++;
                    --overflow;
                }
            }
            if (overflow > 0) break;
        }
    }

    // Cuts between segments; a zero-bin gap merges into its right neighbour
    // (or left when it is the final segment).
    std::vector<std::size_t> cut_after;  // distinct index j -> edge between j and j+1
    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        const Segment& cur = segments[i];
        const Segment& nxt = segments[i + 1];
        const bool cur_merges_right = !cur.heavy && cur.bins == 0;
        const bool nxt_merges_left = !nxt.heavy && nxt.bins == 0 && i + 2 == segments.size();
        if (!cur_merges_right && !nxt_merges_left) cut_after.push_back(cur.last);
    }
    // Internal equal-frequency cuts inside each gap.
    for (const Segment& s : segments) {
        if (s.heavy || s.bins <= 1) continue;
        std::size_t cum = 0;
        std::size_t next_cut = 1;
        for (std::size_t j = s.first; j <= s.last && next_cut < s.bins; ++j) {
            cum += counts[j];
            const double target = static_cast<double>(s.mass) * static_cast<double>(next_cut) /
                                  static_cast<double>(s.bins);
            if (static_cast<double>(cum) >= target && j < s.last) {
                cut_after.push_back(j);
                ++next_cut;
            }
        }
    }

    std::sort(cut_after.begin(), cut_after.end());
    cut_after.erase(std::unique(cut_after.begin(), cut_after.end()), cut_after.end());
    for (std::size_t j : cut_after) {
        out.edges.push_back(0.5 * (distinct[j] + distinct[j + 1]));
    }
    return out;
}

Discretizer Discretizer::fit(const TabularDataset& ds, std::size_t n_bins) {
    Discretizer disc;
    disc.requested_bins = n_bins;
    const std::vector<std::size_t> train_rows =
        ds.split.empty() ? std::vector<std::size_t>{} : ds.rows_of(SplitTag::train);
    for (const Column& c : ds.columns) {
        Entry e;
        e.name = c.name;
        if (c.kind == ColumnKind::numeric) {
            e.numeric = true;
            std::vector<double> train_values;
            if (train_rows.empty() && ds.split.empty()) {
                train_values = c.num;
            } else {
                train_values.reserve(train_rows.size());
                for (std::size_t r : train_rows) train_values.push_back(c.num[r]);
            }
            if (train_values.empty()) {
                throw ArgumentError("no training rows available to fit discretizer");
            }
            e.binning = fit_equal_frequency(std::move(train_values), n_bins);
        } else {
            e.numeric = false;
            e.states = c.states;
        }
        disc.entries_.push_back(std::move(e));
    }
    return disc;
}

const Discretizer::Entry& Discretizer::entry(const std::string& column) const {
    for (const Entry& e : entries_) {
        if (e.name == column) return e;
    }
    throw ArgumentError("discretizer has no column: " + column);
}

bool Discretizer::has_column(const std::string& column) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const Entry& e) { return e.name == column; });
}

bool Discretizer::is_numeric(const std::string& column) const { return entry(column).numeric; }

const NumericBinning& Discretizer::binning(const std::string& column) const {
    const Entry& e = entry(column);
    if (!e.numeric) throw ArgumentError("column " + column + " is categorical");
    return e.binning;
}

std::size_t Discretizer::n_bins_of(const std::string& column) const {
    const Entry& e = entry(column);
    return e.numeric ? e.binning.n_bins() : e.states.size();
}

std::int32_t Discretizer::apply(const std::string& column, double value) const {
    const Entry& e = entry(column);
    if (e.numeric) return e.binning.bin_of(value);
    const auto code = static_cast<std::int32_t>(value);
    if (code < 0 || static_cast<std::size_t>(code) >= e.states.size()) return 0;
    return code;
}

std::int32_t Discretizer::apply_label(const std::string& column, const std::string& label) const {
    const Entry& e = entry(column);
    if (e.numeric) throw ArgumentError("column " + column + " is numeric");
    const auto it = std::find(e.states.begin(), e.states.end(), label);
    if (it == e.states.end()) return 0;
    return static_cast<std::int32_t>(it - e.states.begin());
}

std::vector<std::int32_t> Discretizer::apply_column(const TabularDataset& ds,
                                                    const std::string& column) const {
    const Column& c = ds.col(column);
    std::vector<std::int32_t> out;
    out.reserve(ds.n_rows());
    if (c.kind == ColumnKind::numeric) {
        const NumericBinning& b = binning(column);
        for (double v : c.num) out.push_back(b.bin_of(v));
    } else {
        out = c.codes;
    }
    return out;
}

std::string Discretizer::to_json() const {
    json j;
    j["n_bins"] = requested_bins;
    json cols = json::array();
    for (const Entry& e : entries_) {
        json jc;
        jc["name"] = e.name;
        if (e.numeric) {
            jc["kind"] = "numeric";
            jc["edges"] = e.binning.edges;
            if (e.binning.degenerate) jc["degenerate"] = true;
        } else {
            jc["kind"] = "categorical";
            jc["states"] = e.states;
        }
        cols.push_back(jc);
    }
    j["columns"] = cols;
    return j.dump(2);
}

Discretizer Discretizer::from_json(const std::string& text) {
    json j = json::parse(text);
    Discretizer disc;
    disc.requested_bins = j.value("n_bins", std::size_t{3});
    for (const json& jc : j.at("columns")) {
        Entry e;
        e.name = jc.at("name").get<std::string>();
        if (jc.at("kind").get<std::string>() == "numeric") {
            e.numeric = true;
            e.binning.edges = jc.at("edges").get<std::vector<double>>();
            e.binning.degenerate = jc.value("degenerate", false);
        } else {
            e.numeric = false;
            e.states = jc.at("states").get<std::vector<std::string>>();
        }
        disc.entries_.push_back(std::move(e));
    }
    return disc;
}

std::size_t DiscreteTable::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return i;
    }
    throw ArgumentError("discrete table has no column: " + name);
}

void DiscreteTable::add_column(std::string name, std::vector<std::int32_t> col, std::int32_t card) {
    if (!codes.empty() && codes.front().size() != col.size()) {
        throw ArgumentError("column length mismatch in discrete table");
    }
    names.push_back(std::move(name));
    codes.push_back(std::move(col));
    cards.push_back(card);
}

DiscreteTable make_discrete_table(const TabularDataset& ds, const Discretizer& disc,
                                  const std::vector<std::string>& columns,
                                  const std::vector<std::size_t>& rows) {
    DiscreteTable table;
    for (const std::string& name : columns) {
        const std::vector<std::int32_t> full = disc.apply_column(ds, name);
        std::vector<std::int32_t> sel;
        sel.reserve(rows.size());
        for (std::size_t r : rows) sel.push_back(full[r]);
        table.add_column(name, std::move(sel), static_cast<std::int32_t>(disc.n_bins_of(name)));
    }
    return table;
}

}  // namespace cennet
