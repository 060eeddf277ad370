// quiver.cpp

#include "cq/quiver.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "internal.hpp"

namespace cq {

using nlohmann::json;

// ---------------------------------------------------------------- ExchangeMatrix

ExchangeMatrix ExchangeMatrix::zero(int n) {
    ExchangeMatrix m;
    m.n = n;
    m.b.assign(n, std::vector<long long>(n, 0));
    return m;
}

bool ExchangeMatrix::is_skew_symmetric() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (b[i][j] != -b[j][i]) return false;
    return true;
}

long long ExchangeMatrix::max_abs_entry() const {
    long long m = 0;
    for (const auto& row : b)
        for (long long v : row) m = std::max(m, std::llabs(v));
    return m;
}

// ---------------------------------------------------------------------- Quiver

Quiver::Quiver(int n_vertices) {
    for (int i = 0; i < n_vertices; ++i) add_vertex();
}

int Quiver::add_vertex(std::string label) {
    int id = num_vertices();
    if (label.empty()) label = std::to_string(id);
    vertices_.push_back(Vertex{id, std::move(label)});
    return id;
}

void Quiver::add_arrow(std::string name, int source, int target) {
    if (source < 0 || source >= num_vertices() || target < 0 || target >= num_vertices())
        throw invalid_input("arrow '" + name + "' references a vertex outside the quiver");
    if (source == target)
        throw parse_error("loop declared at vertex " + vertices_[source].label +
                          " (arrow '" + name + "'); loops are not allowed");
    if (arrow_names_.count(name))
        throw parse_error("duplicate arrow name '" + name + "'");
    arrow_names_[name] = num_arrows();
    arrows_.push_back(Arrow{std::move(name), source, target});
}

void Quiver::set_label(int id, std::string label) {
    vertices_.at(id).label = std::move(label);
}

int Quiver::arrow_index(const std::string& name) const {
    auto it = arrow_names_.find(name);
    return it == arrow_names_.end() ? -1 : it->second;
}

int Quiver::vertex_by_label(const std::string& label) const {
    for (const auto& v : vertices_)
        if (v.label == label) return v.id;
    return -1;
}

std::vector<int> Quiver::out_arrows(int v) const {
    std::vector<int> r;
    for (int i = 0; i < num_arrows(); ++i)
        if (arrows_[i].source == v) r.push_back(i);
    return r;
}

std::vector<int> Quiver::in_arrows(int v) const {
    std::vector<int> r;
    for (int i = 0; i < num_arrows(); ++i)
        if (arrows_[i].target == v) r.push_back(i);
    return r;
}

int Quiver::count_arrows(int src, int tgt) const {
    int c = 0;
    for (const auto& a : arrows_)
        if (a.source == src && a.target == tgt) ++c;
    return c;
}

bool Quiver::has_two_cycle() const {
    for (const auto& a : arrows_)
        if (count_arrows(a.target, a.source) > 0) return true;
    return false;
}

bool Quiver::has_multiple_arrow() const {
    for (const auto& a : arrows_)
        if (count_arrows(a.source, a.target) > 1) return true;
    return false;
}

bool Quiver::is_acyclic() const {
    // Kahn's algorithm.
    int n = num_vertices();
    std::vector<int> indeg(n, 0);
    for (const auto& a : arrows_) indeg[a.target]++;
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    int seen = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++seen;
        for (const auto& a : arrows_)
            if (a.source == v && --indeg[a.target] == 0) stack.push_back(a.target);
    }
    return seen == n;
}

bool Quiver::is_connected() const {
    int n = num_vertices();
    if (n == 0) return true;
    std::vector<char> vis(n, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& a : arrows_) {
            int w = -1;
            if (a.source == v) w = a.target;
            else if (a.target == v) w = a.source;
            if (w >= 0 && !vis[w]) {
                vis[w] = 1;
                stack.push_back(w);
            }
        }
    }
    return std::all_of(vis.begin(), vis.end(), [](char c) { return c != 0; });
}

// ------------------------------------------------------------------- dictionary

ExchangeMatrix to_exchange_matrix(const Quiver& q) {
    if (q.has_two_cycle())
        throw invalid_input("quiver has an oriented 2-cycle; exchange matrix undefined");
    ExchangeMatrix m = ExchangeMatrix::zero(q.num_vertices());
    for (const auto& a : q.arrows()) {
        m.b[a.source][a.target] += 1;
        m.b[a.target][a.source] -= 1;
    }
    return m;
}

Quiver from_exchange_matrix(const ExchangeMatrix& m, const std::vector<std::string>& labels) {
    if (!m.is_skew_symmetric())
        throw invalid_input("matrix is not skew-symmetric");
    for (int i = 0; i < m.n; ++i)
        if (m.b[i][i] != 0) throw invalid_input("matrix has a nonzero diagonal entry");
    Quiver q;
    for (int i = 0; i < m.n; ++i)
        q.add_vertex(i < static_cast<int>(labels.size()) ? labels[i] : "");
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            for (long long k = 0; k < m.b[i][j]; ++k)
                q.add_arrow("a" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                std::to_string(k),
                            i, j);
    return q;
}

// ------------------------------------------------------------------- subquivers

SubquiverResult delete_vertices(const Quiver& q, const std::vector<int>& keep) {
    std::vector<int> index_map(q.num_vertices(), -1);
    std::vector<int> sorted_keep = keep;
    std::sort(sorted_keep.begin(), sorted_keep.end());
    sorted_keep.erase(std::unique(sorted_keep.begin(), sorted_keep.end()), sorted_keep.end());

    SubquiverResult r;
    r.index_map = std::move(index_map);
    for (int v : sorted_keep) {
        if (v < 0 || v >= q.num_vertices())
            throw invalid_input("delete_vertices: vertex " + std::to_string(v) +
                                " outside the quiver");
        r.index_map[v] = r.quiver.add_vertex(q.vertex(v).label);
    }
    for (const auto& a : q.arrows()) {
        int s = r.index_map[a.source], t = r.index_map[a.target];
        if (s >= 0 && t >= 0) r.quiver.add_arrow(a.name, s, t);
    }
    return r;
}

Quiver delete_arrows(const Quiver& q, const std::vector<int>& arrow_indices) {
    std::vector<char> drop(q.num_arrows(), 0);
    for (int i : arrow_indices) drop.at(i) = 1;
    Quiver r;
    for (const auto& v : q.vertices()) r.add_vertex(v.label);
    for (int i = 0; i < q.num_arrows(); ++i)
        if (!drop[i]) r.add_arrow(q.arrow(i).name, q.arrow(i).source, q.arrow(i).target);
    return r;
}

// --------------------------------------------------------------- canonical form

namespace {

// Iterated degree refinement. Colors are isomorphism-invariant signatures;
// the final color order is the sort order of the signatures themselves, so
// it does not depend on the input labeling.
std::vector<int> refine_colors(const Quiver& q, int& num_colors) {
    int n = q.num_vertices();
    std::vector<std::string> sig(n);
    for (int v = 0; v < n; ++v) {
        int indeg = 0, outdeg = 0;
        for (const auto& a : q.arrows()) {
            if (a.target == v) ++indeg;
            if (a.source == v) ++outdeg;
        }
        sig[v] = std::to_string(indeg) + "," + std::to_string(outdeg);
    }
    std::vector<int> color(n, 0);
    auto assign = [&](const std::vector<std::string>& s) {
        std::vector<std::string> uniq(s);
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (int v = 0; v < n; ++v)
            color[v] = static_cast<int>(
                std::lower_bound(uniq.begin(), uniq.end(), s[v]) - uniq.begin());
        return static_cast<int>(uniq.size());
    };
    num_colors = assign(sig);

    for (int round = 0; round < n; ++round) {
        std::vector<std::string> next(n);
        for (int v = 0; v < n; ++v) {
            std::vector<int> out, in;
            for (const auto& a : q.arrows()) {
                if (a.source == v) out.push_back(color[a.target]);
                if (a.target == v) in.push_back(color[a.source]);
            }
            std::sort(out.begin(), out.end());
            std::sort(in.begin(), in.end());
            std::ostringstream os;
            os << color[v] << "|";
            for (int c : out) os << c << ",";
            os << "|";
            for (int c : in) os << c << ",";
            next[v] = os.str();
        }
        int nc = assign(next);
        if (nc == num_colors) break;
        num_colors = nc;
    }
    return color;
}

using ArrowPairs = std::vector<std::pair<int, int>>;

ArrowPairs apply_perm(const Quiver& q, const std::vector<int>& perm) {
    ArrowPairs pairs;
    pairs.reserve(q.num_arrows());
    for (const auto& a : q.arrows()) pairs.emplace_back(perm[a.source], perm[a.target]);
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

} // namespace

CanonicalResult canonical_form(const Quiver& q) {
    int n = q.num_vertices();
    int num_colors = 0;
    std::vector<int> color = refine_colors(q, num_colors);

    // Vertices grouped by color; colors already sorted by signature.
    std::vector<std::vector<int>> classes(num_colors);
    for (int v = 0; v < n; ++v) classes[color[v]].push_back(v);

    double space = 1;
    for (const auto& c : classes) {
        for (size_t k = 2; k <= c.size(); ++k) space *= static_cast<double>(k);
        if (space > 1e7)
            throw indeterminate_error("canonical form search space too large");
    }

    // Block of new indices per color class, in color order.
    std::vector<int> base(num_colors, 0);
    for (int c = 1; c < num_colors; ++c)
        base[c] = base[c - 1] + static_cast<int>(classes[c - 1].size());

    std::vector<int> best_perm;
    ArrowPairs best_pairs;

    // Enumerate within-class orderings lexicographically (classes[] members are
    // in increasing old-id order, std::next_permutation walks their orderings).
    std::vector<std::vector<int>> order = classes;
    std::vector<int> perm(n, 0);
    bool more = true;
    while (more) {
        for (int c = 0; c < num_colors; ++c)
            for (size_t i = 0; i < order[c].size(); ++i)
                perm[order[c][i]] = base[c] + static_cast<int>(i);
        ArrowPairs pairs = apply_perm(q, perm);
        if (best_perm.empty() || pairs < best_pairs) {
            best_pairs = std::move(pairs);
            best_perm = perm;
        }
        // Advance the product of permutations, odometer style.
        more = false;
        for (int c = 0; c < num_colors; ++c) {
            if (std::next_permutation(order[c].begin(), order[c].end())) {
                more = true;
                break;
            }
            // wrapped; order[c] is back to sorted, carry on to the next class
        }
    }

    CanonicalResult r;
    r.perm = best_perm;
    // Fresh default labels: the canonical form depends only on the
    // isomorphism class, so byte comparison decides isomorphism.
    for (int newid = 0; newid < n; ++newid) r.quiver.add_vertex();
    std::map<std::pair<int, int>, int> multiplicity;
    for (const auto& [s, t] : best_pairs) {
        int k = multiplicity[{s, t}]++;
        r.quiver.add_arrow("a" + std::to_string(s) + "_" + std::to_string(t) + "_" +
                               std::to_string(k),
                           s, t);
    }
    std::ostringstream os;
    os << n << ";";
    for (const auto& [s, t] : best_pairs) os << s << ">" << t << ";";
    r.key = os.str();
    return r;
}

std::string canonical_key(const Quiver& q) {
    return canonical_form(q).key;
}

// ---------------------------------------------------------------- serialization

namespace {

std::string quiver_text(const Quiver& q) {
    std::ostringstream os;
    os << "vertices";
    for (const auto& v : q.vertices()) os << " " << v.label;
    os << "\n";
    for (const auto& a : q.arrows())
        os << "arrow " << a.name << ": " << q.vertex(a.source).label << " -> "
           << q.vertex(a.target).label << "\n";
    return os.str();
}

bool default_labels(const Quiver& q) {
    for (const auto& v : q.vertices())
        if (v.label != std::to_string(v.id)) return false;
    return true;
}

} // namespace

json quiver_to_json(const Quiver& q) {
    json j;
    std::vector<int> ids;
    for (const auto& v : q.vertices()) ids.push_back(v.id);
    j["vertices"] = ids;
    if (!default_labels(q)) {
        json labels = json::object();
        for (const auto& v : q.vertices()) labels[std::to_string(v.id)] = v.label;
        j["labels"] = labels;
    }
    j["arrows"] = json::array();
    for (const auto& a : q.arrows())
        j["arrows"].push_back({{"name", a.name}, {"source", a.source}, {"target", a.target}});
    return j;
}

Quiver quiver_from_json(const json& j) {
    Quiver q;
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw parse_error("quiver json: missing 'vertices' array");
    int n = static_cast<int>(j["vertices"].size());
    for (int i = 0; i < n; ++i) {
        if (!j["vertices"][i].is_number_integer() || j["vertices"][i].get<int>() != i)
            throw parse_error("quiver json: vertex ids must be 0..n-1 in order");
        q.add_vertex();
    }
    if (j.contains("labels")) {
        for (auto it = j["labels"].begin(); it != j["labels"].end(); ++it) {
            int id = std::stoi(it.key());
            if (id < 0 || id >= n) throw parse_error("quiver json: label for unknown vertex");
            q.set_label(id, it.value().get<std::string>());
        }
    }
    if (!j.contains("arrows") || !j["arrows"].is_array())
        throw parse_error("quiver json: missing 'arrows' array");
    for (const auto& a : j["arrows"]) {
        int s = a.at("source").get<int>(), t = a.at("target").get<int>();
        if (s < 0 || s >= n || t < 0 || t >= n)
            throw parse_error("quiver json: arrow endpoint outside vertex range");
        q.add_arrow(a.at("name").get<std::string>(), s, t);
    }
    return q;
}

Quiver quiver_from_json_text(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw parse_error("invalid JSON");
    return quiver_from_json(j);
}

std::string serialize_quiver_dot(const Quiver& q,
                                 const std::map<std::string, char>& arrow_classes) {
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (const auto& v : q.vertices())
        os << "  v" << v.id << " [label=\"" << v.label << "\"];\n";
    for (const auto& a : q.arrows()) {
        os << "  v" << a.source << " -> v" << a.target << " [label=\"" << a.name << "\"";
        auto it = arrow_classes.find(a.name);
        if (it != arrow_classes.end() && it->second == 'f') os << ", style=dashed";
        os << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string serialize_quiver(const Quiver& q, QuiverFormat format) {
    switch (format) {
        case QuiverFormat::text: return quiver_text(q);
        case QuiverFormat::json: return quiver_to_json(q).dump(2) + "\n";
        case QuiverFormat::dot: return serialize_quiver_dot(q, {});
    }
    return {};
}

// ------------------------------------------------------------------------ parse

namespace detail {

// Whitespace-delimited tokens with positions, comments stripped.
std::vector<std::vector<Token>> tokenize_lines(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::vector<Token> toks;
        size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            if (raw[i] == '#') break;
            size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j])) &&
                   raw[j] != '#')
                ++j;
            toks.push_back(Token{raw.substr(i, j - i), lineno, static_cast<int>(i + 1)});
            i = j;
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

// "name:" or "name" ":" — returns name, advances idx past the colon.
std::string take_name_colon(const std::vector<Token>& toks, size_t& idx,
                            const char* what) {
    if (idx >= toks.size())
        throw parse_error(std::string("expected ") + what,
                          toks.empty() ? 0 : toks.back().line, 0);
    Token t = toks[idx];
    std::string name = t.text;
    if (!name.empty() && name.back() == ':') {
        name.pop_back();
        ++idx;
    } else {
        ++idx;
        if (idx >= toks.size() || toks[idx].text != ":")
            throw parse_error(std::string("expected ':' after ") + what, t.line, t.col);
        ++idx;
    }
    if (name.empty())
        throw parse_error(std::string("empty ") + what, t.line, t.col);
    return name;
}

} // namespace detail

// Parses quiver declarations; when allow_relations is set, returns the raw
// relation lines for the presentation layer to interpret.
Quiver parse_quiver_impl(const std::string& text, bool allow_relations,
                         std::vector<std::vector<detail::Token>>* rel_lines) {
    auto lines = detail::tokenize_lines(text);
    Quiver q;
    bool have_vertices = false;
    for (const auto& toks : lines) {
        const auto& head = toks[0];
        if (head.text == "vertices") {
            if (have_vertices)
                throw parse_error("duplicate 'vertices' line", head.line, head.col);
            if (toks.size() < 2)
                throw parse_error("'vertices' line lists no vertices", head.line, head.col);
            for (size_t i = 1; i < toks.size(); ++i) {
                if (q.vertex_by_label(toks[i].text) >= 0)
                    throw parse_error("duplicate vertex id '" + toks[i].text + "'",
                                      toks[i].line, toks[i].col);
                q.add_vertex(toks[i].text);
            }
            have_vertices = true;
        } else if (head.text == "arrow") {
            if (!have_vertices)
                throw parse_error("'arrow' before 'vertices'", head.line, head.col);
            size_t idx = 1;
            std::string name = detail::take_name_colon(toks, idx, "arrow name");
            if (idx + 2 >= toks.size() || toks[idx + 1].text != "->")
                throw parse_error("expected '<src> -> <tgt>'", head.line, head.col);
            int s = q.vertex_by_label(toks[idx].text);
            int t = q.vertex_by_label(toks[idx + 2].text);
            if (s < 0)
                throw parse_error("unknown vertex '" + toks[idx].text + "'",
                                  toks[idx].line, toks[idx].col);
            if (t < 0)
                throw parse_error("unknown vertex '" + toks[idx + 2].text + "'",
                                  toks[idx + 2].line, toks[idx + 2].col);
            if (idx + 3 != toks.size())
                throw parse_error("trailing tokens after arrow declaration", head.line,
                                  head.col);
            try {
                q.add_arrow(name, s, t);
            } catch (const parse_error& e) {
                throw parse_error(std::string(e.what()), head.line, head.col);
            }
        } else if (head.text == "rel") {
            if (!allow_relations)
                throw parse_error("relation line in a plain quiver file", head.line,
                                  head.col);
            rel_lines->push_back(toks);
        } else {
            throw parse_error("unknown declaration '" + head.text + "'", head.line,
                              head.col);
        }
    }
    if (!have_vertices && !lines.empty())
        throw parse_error("missing 'vertices' line", 1, 1);
    return q;
}

Quiver parse_quiver(const std::string& text) {
    return parse_quiver_impl(text, false, nullptr);
}

} // namespace cq
