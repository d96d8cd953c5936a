#include "cennet/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cennet/common.hpp"

namespace cennet {

using nlohmann::json;

std::size_t TabularDataset::col_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    throw ArgumentError("unknown column: " + name);
}

bool TabularDataset::has_col(const std::string& name) const {
    return std::any_of(columns.begin(), columns.end(),
                       [&](const Column& c) { return c.name == name; });
}

std::vector<std::size_t> TabularDataset::rows_of(SplitTag tag) const {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < split.size(); ++i) {
        if (split[i] == tag) rows.push_back(i);
    }
    return rows;
}

std::array<std::size_t, 3> TabularDataset::split_counts() const {
    std::array<std::size_t, 3> counts{0, 0, 0};
    for (SplitTag t : split) counts[static_cast<std::size_t>(t)]++;
    return counts;
}

std::vector<std::string> TabularDataset::feature_names() const {
    std::vector<std::string> names;
    for (const Column& c : columns) {
        if (c.name != target) names.push_back(c.name);
    }
    return names;
}

std::vector<std::string> GroundTruth::important_set_for(double gate_value) const {
    if (!gated()) {
        throw ArgumentError("ground truth has no gating variable");
    }
    for (const GateBranch& br : branches) {
        if (gate_value > br.threshold) return {gate_var, br.partner};
    }
    return {gate_var, else_partner};
}

void assign_split(TabularDataset& ds, const std::array<double, 3>& ratios, std::uint64_t seed) {
    const double total = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(total - 1.0) > 1e-9) {
        throw ArgumentError("split ratios must sum to 1");
    }
    const std::size_t n = ds.n_rows();
    if (n < 3) {
        throw ArgumentError("need at least 3 rows to split");
    }

    std::size_t n_train = static_cast<std::size_t>(std::llround(ratios[0] * static_cast<double>(n)));
    std::size_t n_val = static_cast<std::size_t>(std::llround(ratios[1] * static_cast<double>(n)));
    n_train = std::min(n_train, n);
    n_val = std::min(n_val, n - n_train);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    ds.split.assign(n, SplitTag::test);
    for (std::size_t i = 0; i < n_train; ++i) ds.split[order[i]] = SplitTag::train;
    for (std::size_t i = n_train; i < n_train + n_val; ++i) ds.split[order[i]] = SplitTag::val;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw NumericError("failed to format double");
    return std::string(buf, ptr);
}

namespace {

constexpr char kSplitChar[3] = {'t', 'v', 's'};

json ground_truth_to_json(const GroundTruth& gt) {
    json j;
    j["important_sets"] = gt.important_sets;
    j["candidate_vars"] = gt.candidate_vars;
    j["parents_of_target"] = gt.parents_of_target;
    if (gt.gated()) {
        json gate;
        gate["var"] = gt.gate_var;
        json branches = json::array();
        for (const auto& br : gt.branches) {
            branches.push_back({{"gt", br.threshold}, {"partner", br.partner}});
        }
        gate["branches"] = branches;
        gate["else_partner"] = gt.else_partner;
        j["gate"] = gate;
    }
    return j;
}

GroundTruth ground_truth_from_json(const json& j) {
    GroundTruth gt;
    gt.important_sets = j.value("important_sets", std::vector<std::vector<std::string>>{});
    gt.candidate_vars = j.value("candidate_vars", std::vector<std::string>{});
    gt.parents_of_target = j.value("parents_of_target", std::vector<std::string>{});
    if (j.contains("gate")) {
        const json& gate = j.at("gate");
        gt.gate_var = gate.at("var").get<std::string>();
        for (const json& br : gate.at("branches")) {
            gt.branches.push_back({br.at("gt").get<double>(), br.at("partner").get<std::string>()});
        }
        gt.else_partner = gate.at("else_partner").get<std::string>();
    }
    return gt;
}

}  // namespace

void write_dataset(const std::string& dir, const DatasetBundle& bundle) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const TabularDataset& ds = bundle.data;
    if (ds.columns.empty()) throw ArgumentError("cannot write an empty dataset");

    {
        std::ofstream csv(fs::path(dir) / "data.csv", std::ios::binary);
        if (!csv) throw DataError("cannot open " + dir + "/data.csv for writing");
        for (std::size_t c = 0; c < ds.columns.size(); ++c) {
            if (c) csv << ',';
            csv << ds.columns[c].name;
        }
        csv << '\n';
        const std::size_t n = ds.n_rows();
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < ds.columns.size(); ++c) {
                if (c) csv << ',';
                const Column& col = ds.columns[c];
                if (col.kind == ColumnKind::numeric) {
                    csv << format_double(col.num[r]);
                } else {
                    csv << col.label(r);
                }
            }
            csv << '\n';
        }
    }

    json meta;
    meta["name"] = bundle.meta.name;
    meta["kind"] = bundle.meta.kind;
    meta["seed"] = bundle.meta.seed;
    if (bundle.meta.centering_c) meta["centering_c"] = *bundle.meta.centering_c;
    meta["target"] = ds.target;
    json cols = json::array();
    for (const Column& c : ds.columns) {
        json jc;
        jc["name"] = c.name;
        jc["kind"] = c.kind == ColumnKind::numeric ? "numeric" : "categorical";
        if (c.kind == ColumnKind::categorical) jc["states"] = c.states;
        cols.push_back(jc);
    }
    meta["columns"] = cols;
    if (!ds.split.empty()) {
        std::string tags;
        tags.reserve(ds.split.size());
        for (SplitTag t : ds.split) tags.push_back(kSplitChar[static_cast<std::size_t>(t)]);
        json split;
        split["ratios"] = bundle.meta.split_ratios;
        split["seed"] = bundle.meta.split_seed;
        split["tags"] = tags;
        meta["split"] = split;
    }
    meta["ground_truth"] = ground_truth_to_json(bundle.meta.ground_truth);

    std::ofstream out(fs::path(dir) / "metadata.json", std::ios::binary);
    if (!out) throw DataError("cannot open " + dir + "/metadata.json for writing");
    out << meta.dump(2) << '\n';
}

DatasetBundle load_dataset(const std::string& dir) {
    namespace fs = std::filesystem;
    std::ifstream meta_in(fs::path(dir) / "metadata.json");
    if (!meta_in) throw DataError("missing metadata.json in " + dir);
    json meta;
    try {
        meta_in >> meta;
    } catch (const json::parse_error& e) {
        throw DataError("malformed metadata.json in " + dir + ": " + e.what());
    }

    DatasetBundle bundle;
    bundle.meta.name = meta.value("name", "");
    bundle.meta.kind = meta.value("kind", "");
    bundle.meta.seed = meta.value("seed", std::uint64_t{0});
    if (meta.contains("centering_c")) bundle.meta.centering_c = meta["centering_c"].get<double>();
    bundle.meta.ground_truth = ground_truth_from_json(meta.value("ground_truth", json::object()));

    TabularDataset& ds = bundle.data;
    ds.target = meta.value("target", "");
    for (const json& jc : meta.at("columns")) {
        Column c;
        c.name = jc.at("name").get<std::string>();
        c.kind = jc.at("kind").get<std::string>() == "numeric" ? ColumnKind::numeric
                                                               : ColumnKind::categorical;
        if (c.kind == ColumnKind::categorical) c.states = jc.at("states").get<std::vector<std::string>>();
        ds.columns.push_back(std::move(c));
    }

    std::ifstream csv(fs::path(dir) / "data.csv");
    if (!csv) throw DataError("missing data.csv in " + dir);
    std::string line;
    if (!std::getline(csv, line)) throw DataError("empty data.csv in " + dir);
    {
        std::stringstream header(line);
        std::string field;
        std::size_t idx = 0;
        while (std::getline(header, field, ',')) {
            if (idx >= ds.columns.size() || field != ds.columns[idx].name) {
                throw DataError("data.csv header does not match metadata in " + dir);
            }
            ++idx;
        }
        if (idx != ds.columns.size()) throw DataError("data.csv header too short in " + dir);
    }

    std::vector<std::vector<std::string>> state_lookup(ds.columns.size());
    std::size_t line_no = 1;
    while (std::getline(csv, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string field;
        std::size_t idx = 0;
        while (std::getline(row, field, ',')) {
            if (idx >= ds.columns.size()) {
                throw DataError("too many fields at data.csv line " + std::to_string(line_no));
            }
            Column& c = ds.columns[idx];
            if (c.kind == ColumnKind::numeric) {
                double v = 0.0;
                const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
                if (ec != std::errc() || ptr != field.data() + field.size()) {
                    throw DataError("bad numeric value '" + field + "' at data.csv line " +
                                    std::to_string(line_no));
                }
                c.num.push_back(v);
            } else {
                const auto it = std::find(c.states.begin(), c.states.end(), field);
                if (it == c.states.end()) {
                    throw DataError("unknown state '" + field + "' for column " + c.name +
                                    " at data.csv line " + std::to_string(line_no));
                }
                c.codes.push_back(static_cast<std::int32_t>(it - c.states.begin()));
            }
            ++idx;
        }
        if (idx != ds.columns.size()) {
            throw DataError("too few fields at data.csv line " + std::to_string(line_no));
        }
    }

    if (meta.contains("split")) {
        const json& split = meta["split"];
        const std::string tags = split.at("tags").get<std::string>();
        if (tags.size() != ds.n_rows()) throw DataError("split tags do not cover all rows");
        ds.split.reserve(tags.size());
        for (char t : tags) {
            switch (t) {
                case 't': ds.split.push_back(SplitTag::train); break;
                case 'v': ds.split.push_back(SplitTag::val); break;
                case 's': ds.split.push_back(SplitTag::test); break;
                default: throw DataError("bad split tag in metadata");
            }
        }
        const auto ratios = split.at("ratios").get<std::vector<double>>();
        if (ratios.size() == 3) {
            bundle.meta.split_ratios = {ratios[0], ratios[1], ratios[2]};
        }
        bundle.meta.split_seed = split.value("seed", std::uint64_t{0});
    }

    return bundle;
}

}  // namespace cennet
