#include "cennet/bayesnet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cennet/common.hpp"

namespace cennet {

std::size_t BayesNet::index_of(const std::string& node) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].name == node) return i;
    }
    throw ArgumentError("unknown node: " + node);
}

bool BayesNet::has_node(const std::string& node) const {
    return std::any_of(nodes.begin(), nodes.end(),
                       [&](const BnNode& n) { return n.name == node; });
}

std::vector<std::size_t> BayesNet::parent_indices(std::size_t node) const {
    std::vector<std::size_t> out;
    out.reserve(nodes[node].parents.size());
    for (const std::string& p : nodes[node].parents) out.push_back(index_of(p));
    return out;
}

std::vector<std::vector<std::size_t>> BayesNet::children_lists() const {
    std::vector<std::vector<std::size_t>> children(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t p : parent_indices(i)) children[p].push_back(i);
    }
    return children;
}

std::vector<std::size_t> BayesNet::topological_order() const {
    std::vector<std::size_t> in_degree(nodes.size(), 0);
    const auto children = children_lists();
    for (std::size_t i = 0; i < nodes.size(); ++i) in_degree[i] = nodes[i].parents.size();

    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (in_degree[i] == 0) ready.push_back(i);
    }
    std::vector<std::size_t> order;
    order.reserve(nodes.size());
    while (!ready.empty()) {
        // Smallest declaration index first keeps the order deterministic.
        const auto it = std::min_element(ready.begin(), ready.end());
        const std::size_t node = *it;
        ready.erase(it);
        order.push_back(node);
        for (std::size_t c : children[node]) {
            if (--in_degree[c] == 0) ready.push_back(c);
        }
    }
    if (order.size() != nodes.size()) {
        throw DataError("cycle detected in network " + name);
    }
    return order;
}

std::size_t BayesNet::cpt_row(std::size_t node, const std::vector<std::int32_t>& assignment) const {
    const BnNode& n = nodes[node];
    std::size_t row = 0;
    for (std::size_t k = 0; k < n.parents.size(); ++k) {
        const BnNode& parent = nodes[index_of(n.parents[k])];
        row = row * parent.states.size() + static_cast<std::size_t>(assignment[k]);
    }
    return row;
}

void BayesNet::validate() const {
    topological_order();  // throws on cycles
    for (const BnNode& n : nodes) {
        if (n.states.empty()) throw DataError("node " + n.name + " has no states");
        std::size_t expected_rows = 1;
        for (const std::string& p : n.parents) {
            if (!has_node(p)) throw DataError("undeclared parent " + p + " of node " + n.name);
            expected_rows *= node(p).states.size();
        }
        if (n.cpt.size() != expected_rows) {
            throw DataError("node " + n.name + " has " + std::to_string(n.cpt.size()) +
                            " CPT rows, expected " + std::to_string(expected_rows));
        }
        for (const auto& row : n.cpt) {
            if (row.size() != n.states.size()) {
                throw DataError("CPT row width mismatch for node " + n.name);
            }
            double sum = 0.0;
            for (double v : row) {
                if (v < 0.0 || v > 1.0) {
                    throw DataError("CPT entry out of [0,1] for node " + n.name);
                }
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-6) {
                throw DataError("CPT row for node " + n.name + " sums to " + format_double(sum) +
                                ", expected 1");
            }
        }
    }
}

namespace {

struct Token {
    enum Kind { ident, number, punct, end } kind;
    std::string text;
    double value = 0.0;
    int line = 0;
    int column = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_space();
        Token t;
        t.line = line_;
        t.column = col_;
        if (pos_ >= text_.size()) {
            t.kind = Token::end;
            return t;
        }
        const char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_' || text_[pos_] == '-')) {
                t.text.push_back(text_[pos_]);
                advance();
            }
            t.kind = Token::ident;
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                    text_[pos_] == '-' || text_[pos_] == '+')) {
                t.text.push_back(text_[pos_]);
                advance();
            }
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec == std::errc() && ptr == t.text.data() + t.text.size()) {
                t.kind = Token::number;
                t.value = v;
            } else {
                t.kind = Token::ident;  // numeric-looking state label such as "0"
            }
            return t;
        }
        t.kind = Token::punct;
        t.text.push_back(c);
        advance();
        return t;
    }

private:
    void skip_space() {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(const std::string& text) : lexer_(text) { shift(); }

    BayesNet parse() {
        expect_ident("network");
        bn_.name = expect_name();
        expect_punct(";");
        while (cur_.kind != Token::end) {
            if (cur_.kind == Token::ident && cur_.text == "variable") {
                parse_variable();
            } else if (cur_.kind == Token::ident && cur_.text == "probability") {
                parse_probability();
            } else {
                fail("expected 'variable' or 'probability'");
            }
        }
        for (const BnNode& n : bn_.nodes) {
            if (n.cpt.empty()) {
                throw DataError("node " + n.name + " has no probability block");
            }
        }
        bn_.validate();
        return bn_;
    }

private:
    void shift() { cur_ = lexer_.next(); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, cur_.line, cur_.column);
    }

    void expect_ident(const std::string& word) {
        if (cur_.kind != Token::ident || cur_.text != word) fail("expected '" + word + "'");
        shift();
    }

    std::string expect_name() {
        if (cur_.kind != Token::ident) fail("expected an identifier");
        std::string name = cur_.text;
        shift();
        return name;
    }

    void expect_punct(const std::string& p) {
        if (cur_.kind != Token::punct || cur_.text != p) fail("expected '" + p + "'");
        shift();
    }

    bool peek_punct(const std::string& p) const {
        return cur_.kind == Token::punct && cur_.text == p;
    }

    double expect_number() {
        if (cur_.kind != Token::number) fail("expected a number");
        const double v = cur_.value;
        shift();
        return v;
    }

    // State labels may be arbitrary identifiers or numeric-looking tokens.
    std::string expect_label() {
        if (cur_.kind != Token::ident && cur_.kind != Token::number) fail("expected a state label");
        std::string label = cur_.text;
        shift();
        return label;
    }

    void parse_variable() {
        expect_ident("variable");
        const std::string name = expect_name();
        if (bn_.has_node(name)) fail("variable " + name + " declared twice");
        expect_punct("{");
        expect_ident("states");
        expect_punct(":");
        BnNode node;
        node.name = name;
        node.states.push_back(expect_label());
        while (peek_punct(",")) {
            shift();
            node.states.push_back(expect_label());
        }
        expect_punct(";");
        expect_punct("}");
        for (std::size_t i = 0; i < node.states.size(); ++i) {
            for (std::size_t j = i + 1; j < node.states.size(); ++j) {
                if (node.states[i] == node.states[j]) {
                    throw DataError("duplicate state " + node.states[i] + " in node " + name);
                }
            }
        }
        bn_.nodes.push_back(std::move(node));
    }

    void parse_probability() {
        expect_ident("probability");
        const Token open = cur_;
        expect_punct("(");
        const std::string child = expect_name();
        if (!bn_.has_node(child)) {
            throw ParseError("undeclared variable " + child, open.line, open.column);
        }
        BnNode& node = bn_.nodes[bn_.index_of(child)];
        if (!node.cpt.empty()) {
            throw DataError("duplicate probability block for node " + child);
        }
        std::vector<std::size_t> parent_cards;
        if (peek_punct("|")) {
            shift();
            for (;;) {
                const Token ptok = cur_;
                const std::string parent = expect_name();
                if (!bn_.has_node(parent)) {
                    throw ParseError("undeclared parent " + parent + " of node " + child,
                                     ptok.line, ptok.column);
                }
                node.parents.push_back(parent);
                parent_cards.push_back(bn_.node(parent).states.size());
                if (!peek_punct(",")) break;
                shift();
            }
        }
        expect_punct(")");
        expect_punct("{");

        std::size_t n_rows = 1;
        for (std::size_t c : parent_cards) n_rows *= c;
        node.cpt.assign(n_rows, {});
        std::vector<bool> seen(n_rows, false);

        if (node.parents.empty()) {
            expect_ident("table");
            expect_punct(":");
            node.cpt[0] = parse_row(node);
            seen[0] = true;
            expect_punct(";");
        } else {
            while (peek_punct("(")) {
                shift();
                std::vector<std::int32_t> assignment;
                for (std::size_t k = 0; k < node.parents.size(); ++k) {
                    if (k) expect_punct(",");
                    const Token stok = cur_;
                    const std::string label = expect_label();
                    const BnNode& parent = bn_.node(node.parents[k]);
                    const auto it = std::find(parent.states.begin(), parent.states.end(), label);
                    if (it == parent.states.end()) {
                        throw ParseError("unknown state " + label + " of parent " + parent.name,
                                         stok.line, stok.column);
                    }
                    assignment.push_back(static_cast<std::int32_t>(it - parent.states.begin()));
                }
                expect_punct(")");
                expect_punct(":");
                const std::size_t row = bn_.cpt_row(bn_.index_of(child), assignment);
                if (seen[row]) {
                    throw DataError("duplicate CPT row for node " + child);
                }
                node.cpt[row] = parse_row(node);
                seen[row] = true;
                expect_punct(";");
            }
        }
        expect_punct("}");
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (!seen[r]) {
                throw DataError("missing CPT row " + std::to_string(r) + " for node " + child);
            }
        }
    }

    std::vector<double> parse_row(const BnNode& node) {
        std::vector<double> row;
        row.push_back(expect_number());
        while (peek_punct(",")) {
            shift();
            row.push_back(expect_number());
        }
        if (row.size() != node.states.size()) {
            throw DataError("CPT row for node " + node.name + " has " +
                            std::to_string(row.size()) + " entries, expected " +
                            std::to_string(node.states.size()));
        }
        double sum = 0.0;
        for (double v : row) sum += v;
        if (std::abs(sum - 1.0) > 1e-6) {
            throw DataError("CPT row for node " + node.name + " sums to " + format_double(sum) +
                            ", expected 1");
        }
        return row;
    }

    Lexer lexer_;
    Token cur_;
    BayesNet bn_;
};

}  // namespace

BayesNet parse_bn(const std::string& text) { return Parser(text).parse(); }

BayesNet load_bn_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open network file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_bn(buf.str());
}

std::string emit_bn(const BayesNet& bn) {
    std::ostringstream out;
    out << "network " << bn.name << ";\n\n";
    for (const BnNode& n : bn.nodes) {
        out << "variable " << n.name << " { states: ";
        for (std::size_t i = 0; i < n.states.size(); ++i) {
            if (i) out << ", ";
            out << n.states[i];
        }
        out << "; }\n";
    }
    out << "\n";
    for (std::size_t i = 0; i < bn.nodes.size(); ++i) {
        const BnNode& n = bn.nodes[i];
        if (n.parents.empty()) {
            out << "probability ( " << n.name << " ) { table: ";
            for (std::size_t k = 0; k < n.cpt[0].size(); ++k) {
                if (k) out << ", ";
                out << format_double(n.cpt[0][k]);
            }
            out << "; }\n";
            continue;
        }
        out << "probability ( " << n.name << " | ";
        for (std::size_t k = 0; k < n.parents.size(); ++k) {
            if (k) out << ", ";
            out << n.parents[k];
        }
        out << " ) {\n";
        std::vector<std::size_t> cards;
        for (const std::string& p : n.parents) cards.push_back(bn.node(p).states.size());
        for (std::size_t row = 0; row < n.cpt.size(); ++row) {
            // Decode the row index back into parent states (first parent most
            // significant) so the emitted labels are canonical.
            std::vector<std::size_t> assignment(cards.size());
            std::size_t rest = row;
            for (std::size_t k = cards.size(); k-- > 0;) {
                assignment[k] = rest % cards[k];
                rest /= cards[k];
            }
            out << "  (";
            for (std::size_t k = 0; k < cards.size(); ++k) {
                if (k) out << ", ";
                out << bn.node(n.parents[k]).states[assignment[k]];
            }
            out << "): ";
            for (std::size_t k = 0; k < n.cpt[row].size(); ++k) {
                if (k) out << ", ";
                out << format_double(n.cpt[row][k]);
            }
            out << ";\n";
        }
        out << "}\n";
    }
    return out.str();
}

TabularDataset sample_bn(const BayesNet& bn, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw ArgumentError("sample count must be at least 1");
    bn.validate();
    const std::vector<std::size_t> order = bn.topological_order();

    TabularDataset ds;
    ds.columns.resize(bn.nodes.size());
    for (std::size_t i = 0; i < bn.nodes.size(); ++i) {
        ds.columns[i].name = bn.nodes[i].name;
        ds.columns[i].kind = ColumnKind::categorical;
        ds.columns[i].states = bn.nodes[i].states;
        ds.columns[i].codes.reserve(n);
    }

    Rng rng(seed);
    std::vector<std::int32_t> value(bn.nodes.size());
    std::vector<std::vector<std::size_t>> parent_idx(bn.nodes.size());
    for (std::size_t i = 0; i < bn.nodes.size(); ++i) parent_idx[i] = bn.parent_indices(i);

    std::vector<std::int32_t> assignment;
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t node : order) {
            assignment.clear();
            for (std::size_t p : parent_idx[node]) assignment.push_back(value[p]);
            const std::size_t row = bn.cpt_row(node, assignment);
            value[node] = static_cast<std::int32_t>(rng.categorical(bn.nodes[node].cpt[row]));
        }
        for (std::size_t i = 0; i < bn.nodes.size(); ++i) ds.columns[i].codes.push_back(value[i]);
    }
    return ds;
}

GroundTruth build_candidates(const BayesNet& bn, const std::string& target) {
    const std::size_t t = bn.index_of(target);
    if (bn.nodes[t].states.size() != 2) {
        throw ArgumentError("target " + target + " is not binary (" +
                            std::to_string(bn.nodes[t].states.size()) + " states)");
    }

    std::set<std::size_t> picked;
    // Ancestors up to three generations back.
    std::set<std::size_t> frontier{t};
    for (int gen = 0; gen < 3; ++gen) {
        std::set<std::size_t> next;
        for (std::size_t node : frontier) {
            for (std::size_t p : bn.parent_indices(node)) {
                picked.insert(p);
                next.insert(p);
            }
        }
        frontier = std::move(next);
    }
    // Children and their other parents (the moralized neighbourhood).
    const auto children = bn.children_lists();
    for (std::size_t c : children[t]) {
        picked.insert(c);
        for (std::size_t p : bn.parent_indices(c)) picked.insert(p);
    }
    picked.erase(t);

    GroundTruth gt;
    for (std::size_t i = 0; i < bn.nodes.size(); ++i) {
        if (picked.count(i)) gt.candidate_vars.push_back(bn.nodes[i].name);
    }
    gt.parents_of_target = bn.nodes[t].parents;
    gt.important_sets.push_back(gt.parents_of_target);
    return gt;
}

}  // namespace cennet
