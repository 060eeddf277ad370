// relations.cpp

#include "cq/relations.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "cq/errors.hpp"
#include "cq/mutation.hpp"
#include "internal.hpp"

namespace cq {

using nlohmann::json;

// ----------------------------------------------------------------------- paths

bool path_composable(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return false;
    for (size_t i = 0; i < p.arrows.size(); ++i) {
        int a = p.arrows[i];
        if (a < 0 || a >= q.num_arrows()) return false;
        if (i > 0 && q.arrow(p.arrows[i - 1]).target != q.arrow(a).source) return false;
    }
    return true;
}

static void require_path(const Quiver& q, const Path& p) {
    if (!path_composable(q, p))
        throw invalid_input("path is empty or not composable");
}

int path_source(const Quiver& q, const Path& p) {
    require_path(q, p);
    return q.arrow(p.arrows.front()).source;
}

int path_target(const Quiver& q, const Path& p) {
    require_path(q, p);
    return q.arrow(p.arrows.back()).target;
}

std::vector<std::string> path_names(const Quiver& q, const Path& p) {
    std::vector<std::string> r;
    r.reserve(p.arrows.size());
    for (int a : p.arrows) r.push_back(q.arrow(a).name);
    return r;
}

// ------------------------------------------------------------------- relations

bool Relation::operator==(const Relation& o) const {
    if (kind != o.kind || terms.size() != o.terms.size()) return false;
    for (size_t i = 0; i < terms.size(); ++i)
        if (terms[i].coeff != o.terms[i].coeff || !(terms[i].path == o.terms[i].path))
            return false;
    return true;
}

Relation make_relation(const Quiver& q, std::vector<Relation::Term> terms) {
    if (terms.empty()) throw invalid_input("relation with no terms");

    // Combine duplicate paths, validate each term.
    std::map<Path, Rat> combined;
    int src = -1, tgt = -1;
    for (auto& t : terms) {
        require_path(q, t.path);
        if (t.path.length() < 2)
            throw invalid_input("relation term of length < 2 is not allowed");
        int s = q.arrow(t.path.arrows.front()).source;
        int g = q.arrow(t.path.arrows.back()).target;
        if (src == -1) {
            src = s;
            tgt = g;
        } else if (s != src || g != tgt) {
            throw invalid_input("relation terms are not parallel paths");
        }
        combined[t.path] += t.coeff;
    }
    Relation r;
    for (auto& [p, c] : combined)
        if (c != 0) r.terms.push_back({c, p});
    if (r.terms.empty()) throw invalid_input("relation is identically zero");

    if (r.terms.size() == 1) {
        r.kind = RelationKind::zero;
        r.terms[0].coeff = 1;
    } else if (r.terms.size() == 2) {
        // Two parallel paths are a commutativity relation; the scalar between
        // them is normalizable to -1 by rescaling arrows, so ingestion pins
        // the coefficients to (1, -1) with the path-lexicographically smaller
        // term first (the map ordering above already sorted them).
        r.kind = RelationKind::commutativity;
        r.terms[0].coeff = 1;
        r.terms[1].coeff = -1;
    } else {
        r.kind = RelationKind::general;
    }
    return r;
}

Relation make_zero_relation(const Quiver& q, Path p) {
    return make_relation(q, {{Rat(1), std::move(p)}});
}

Relation make_commutativity_relation(const Quiver& q, Path left, Path right) {
    Relation r = make_relation(q, {{Rat(1), std::move(left)}, {Rat(-1), std::move(right)}});
    if (r.kind != RelationKind::commutativity)
        throw invalid_input("the two paths do not form a commutativity relation");
    return r;
}

// ----------------------------------------------------------------- full cycles

std::vector<int> FullCycle::vertices(const Quiver& q) const {
    std::vector<int> v;
    v.reserve(arrows.size());
    for (int a : arrows) v.push_back(q.arrow(a).source);
    return v;
}

namespace {

// No arrows other than the cycle's own inside the induced subquiver.
bool cycle_is_full(const Quiver& q, const std::vector<int>& cycle_arrows) {
    std::set<int> verts;
    for (int a : cycle_arrows) verts.insert(q.arrow(a).source);
    int inside = 0;
    for (const auto& a : q.arrows())
        if (verts.count(a.source) && verts.count(a.target)) ++inside;
    return inside == static_cast<int>(cycle_arrows.size());
}

void sort_by_length_then_names(const Quiver& q, std::vector<std::vector<int>>& seqs) {
    std::sort(seqs.begin(), seqs.end(),
              [&](const std::vector<int>& x, const std::vector<int>& y) {
                  if (x.size() != y.size()) return x.size() < y.size();
                  return path_names(q, Path{x}) < path_names(q, Path{y});
              });
}

} // namespace

std::vector<FullCycle> enumerate_full_cycles(const Quiver& q) {
    int n = q.num_vertices();
    std::vector<std::vector<int>> found;

    // Simple directed cycles, each discovered once, rooted at its smallest vertex.
    std::vector<int> arrow_stack;
    std::vector<char> visited(n, 0);
    int root = 0;

    std::function<void(int)> dfs = [&](int v) {
        for (int ai : q.out_arrows(v)) {
            int w = q.arrow(ai).target;
            if (w == root) {
                arrow_stack.push_back(ai);
                if (cycle_is_full(q, arrow_stack)) found.push_back(arrow_stack);
                arrow_stack.pop_back();
            } else if (w > root && !visited[w]) {
                visited[w] = 1;
                arrow_stack.push_back(ai);
                dfs(w);
                arrow_stack.pop_back();
                visited[w] = 0;
            }
        }
    };

    for (root = 0; root < n; ++root) {
        std::fill(visited.begin(), visited.end(), 0);
        visited[root] = 1;
        dfs(root);
    }

    sort_by_length_then_names(q, found);
    std::vector<FullCycle> out;
    out.reserve(found.size());
    for (auto& c : found) out.push_back(FullCycle{std::move(c)});
    return out;
}

std::vector<Path> shortest_paths(const Quiver& q, int arrow_index) {
    if (arrow_index < 0 || arrow_index >= q.num_arrows())
        throw invalid_input("arrow index outside the quiver");
    const Arrow& a = q.arrow(arrow_index);

    std::vector<std::vector<int>> found;
    std::vector<char> visited(q.num_vertices(), 0);
    std::vector<int> arrow_stack;

    // Simple paths from target(a) back to source(a); the path closed up by a
    // must form a full cycle.
    std::function<void(int)> dfs = [&](int v) {
        if (v == a.source) {
            std::vector<int> cyc = arrow_stack;
            cyc.push_back(arrow_index);
            if (cycle_is_full(q, cyc)) found.push_back(arrow_stack);
            return;
        }
        for (int ai : q.out_arrows(v)) {
            int w = q.arrow(ai).target;
            if (visited[w]) continue;
            visited[w] = 1;
            arrow_stack.push_back(ai);
            dfs(w);
            arrow_stack.pop_back();
            visited[w] = 0;
        }
    };
    visited[a.target] = 1;
    dfs(a.target);

    sort_by_length_then_names(q, found);
    std::vector<Path> out;
    out.reserve(found.size());
    for (auto& p : found) out.push_back(Path{std::move(p)});
    return out;
}

// ------------------------------------------------------------------- synthesis

AlgebraPresentation synthesize_relations(const Quiver& q) {
    if (q.has_two_cycle())
        throw invalid_input("quiver has an oriented 2-cycle; no relations can be read off");
    if (!is_finite_cluster_type(q))
        throw invalid_input("quiver is not of finite cluster type; relations are only "
                            "determined by the quiver in the finite case");

    std::vector<int> order(q.num_arrows());
    for (int i = 0; i < q.num_arrows(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return q.arrow(x).name < q.arrow(y).name; });

    AlgebraPresentation p;
    p.quiver = q;
    for (int ai : order) {
        std::vector<Path> sp = shortest_paths(q, ai);
        if (sp.empty()) continue;
        if (sp.size() == 1) {
            p.relations.push_back(make_zero_relation(q, sp[0]));
        } else if (sp.size() == 2) {
            p.relations.push_back(make_commutativity_relation(q, sp[0], sp[1]));
        } else {
            throw invalid_input("arrow '" + q.arrow(ai).name + "' has " +
                                std::to_string(sp.size()) +
                                " shortest paths; more than two cannot occur for "
                                "finite cluster type");
        }
    }
    return p;
}

// ---------------------------------------------------------------- IdealSolver

namespace {

using SparseRow = std::map<int, Rat>;

// Forward elimination against an echelon set keyed by leading path id
// (leads normalized to 1).  Afterwards v has no entry at any lead.
void reduce_against(const std::map<int, SparseRow>& rows, SparseRow& v) {
    auto it = v.begin();
    while (it != v.end()) {
        auto r = rows.find(it->first);
        if (r == rows.end()) {
            ++it;
            continue;
        }
        int lead = it->first;
        Rat c = it->second;
        for (const auto& [k, val] : r->second) {
            auto slot = v.find(k);
            if (slot == v.end()) {
                Rat nv = -c * val;
                if (nv != 0) v.emplace(k, std::move(nv));
            } else {
                slot->second -= c * val;
                if (slot->second == 0) v.erase(slot);
            }
        }
        it = v.upper_bound(lead);
    }
}

// Returns true if the (reduced) row was independent and inserted.
bool insert_row(std::map<int, SparseRow>& rows, SparseRow v) {
    reduce_against(rows, v);
    if (v.empty()) return false;
    Rat lead = v.begin()->second;
    for (auto& [k, val] : v) val /= lead;
    int key = v.begin()->first;
    rows.emplace(key, std::move(v));
    return true;
}

constexpr int kPathLimit = 500000;

} // namespace

IdealSolver::IdealSolver(const AlgebraPresentation& p, int cap) : pres_(p), cap_(cap) {
    if (cap_ < 1) throw invalid_input("nilpotency cap must be positive");
    for (const auto& rel : pres_.relations)
        for (const auto& t : rel.terms) {
            require_path(pres_.quiver, t.path);
            if (t.path.length() < 2)
                throw invalid_input("relation term of length < 2");
        }

    int maxgen = 2;
    for (const auto& rel : pres_.relations)
        for (const auto& t : rel.terms) maxgen = std::max(maxgen, t.path.length());

    // Grow the horizon until the candidate bound is stable across two
    // consecutive builds and certified with slack.  Low-degree pieces of the
    // truncated ideal are not monotone in the horizon (a long tail that falls
    // off the end can fake a low-degree member), which is exactly what the
    // stability requirement screens out.
    const int hlimit = cap_ + 2 * maxgen + 2;
    int h = std::min(hlimit, maxgen + 2);
    int prev = -2;
    for (;;) {
        build(h);
        int found = -1;
        for (int len = 1; len <= horizon_; ++len) {
            bool all_in = true;
            for (int id = 0; id < static_cast<int>(paths_.size()); ++id) {
                if (static_cast<int>(paths_[id].size()) != len) continue;
                SparseRow v{{id, Rat(1)}};
                reduce_against(ideal_rows_, v);
                if (!v.empty()) {
                    all_in = false;
                    break;
                }
            }
            if (all_in) {
                found = len;
                break;
            }
        }
        if (found != -1 && found == prev && found + maxgen <= h) {
            if (found > cap_)
                throw indeterminate_error("nilpotency bound " + std::to_string(found) +
                                          " exceeds cap (cap=" + std::to_string(cap_) +
                                          ")");
            nilpotency_ = found;
            return;
        }
        if (h >= hlimit)
            throw indeterminate_error(
                "no nilpotency bound certified within cap (cap=" +
                std::to_string(cap_) + "); the presentation is not admissible "
                "or the cap is too small");
        prev = found;
        h = std::min(hlimit, h + maxgen);
    }
}

void IdealSolver::build(int horizon) {
    const Quiver& q = pres_.quiver;
    horizon_ = horizon;
    paths_.clear();
    path_ids_.clear();
    path_ends_.clear();
    ideal_rows_.clear();
    boundary_rows_.clear();

    auto add_path = [&](std::vector<int> arrows, int s, int t) {
        int id = static_cast<int>(paths_.size());
        path_ids_[arrows] = id;
        paths_.push_back(std::move(arrows));
        path_ends_.emplace_back(s, t);
        return id;
    };

    // Paths of length 1..horizon, generated lengthwise, arrows in index order.
    std::vector<int> frontier;
    for (int a = 0; a < q.num_arrows(); ++a)
        frontier.push_back(add_path({a}, q.arrow(a).source, q.arrow(a).target));
    for (int len = 2; len <= horizon; ++len) {
        std::vector<int> next;
        for (int id : frontier) {
            for (int a : q.out_arrows(path_ends_[id].second)) {
                std::vector<int> seq = paths_[id];
                seq.push_back(a);
                next.push_back(
                    add_path(std::move(seq), path_ends_[id].first, q.arrow(a).target));
                if (static_cast<int>(paths_.size()) > kPathLimit)
                    throw indeterminate_error("path table exceeded its cap while "
                                              "bounding nilpotency");
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }

    // Multiply a row by an arrow on the left/right; non-composable terms die,
    // terms that outgrow the horizon are truncated away.
    auto mult = [&](const SparseRow& row, int arrow, bool left) {
        SparseRow out;
        for (const auto& [id, c] : row) {
            if (static_cast<int>(paths_[id].size()) + 1 > horizon_) continue;
            if (left) {
                if (q.arrow(arrow).target != path_ends_[id].first) continue;
                std::vector<int> seq;
                seq.reserve(paths_[id].size() + 1);
                seq.push_back(arrow);
                seq.insert(seq.end(), paths_[id].begin(), paths_[id].end());
                out[path_ids_.at(seq)] += c;
            } else {
                if (path_ends_[id].second != q.arrow(arrow).source) continue;
                std::vector<int> seq = paths_[id];
                seq.push_back(arrow);
                out[path_ids_.at(seq)] += c;
            }
        }
        for (auto it = out.begin(); it != out.end();)
            it = it->second == 0 ? out.erase(it) : std::next(it);
        return out;
    };

    // Breadth-first closure of an echelon set under one-arrow multiplication.
    // Only independent (inserted) rows need multiplying: a dependent product
    // is a combination of products of rows that are themselves in the list.
    auto close_under_multiplication = [&](std::map<int, SparseRow>& rows) {
        std::vector<SparseRow> all;
        for (const auto& [lead, row] : rows) all.push_back(row);
        size_t cursor = 0;
        while (cursor < all.size()) {
            SparseRow row = all[cursor++];
            for (int a = 0; a < q.num_arrows(); ++a)
                for (bool left : {true, false}) {
                    SparseRow prod = mult(row, a, left);
                    if (prod.empty()) continue;
                    reduce_against(rows, prod);
                    if (prod.empty()) continue;
                    Rat lead = prod.begin()->second;
                    for (auto& [k, val] : prod) val /= lead;
                    all.push_back(prod);
                    rows.emplace(prod.begin()->first, std::move(prod));
                }
        }
    };

    // Ideal generated by the relations.
    std::vector<SparseRow> gen_rows;
    for (const auto& rel : pres_.relations) {
        SparseRow r;
        for (const auto& t : rel.terms)
            if (t.path.length() <= horizon_) r[path_ids_.at(t.path.arrows)] += t.coeff;
        if (!r.empty()) gen_rows.push_back(std::move(r));
    }
    for (const auto& g : gen_rows) {
        SparseRow copy = g;
        insert_row(ideal_rows_, std::move(copy));
    }
    close_under_multiplication(ideal_rows_);

    // Boundary span r*I + I*r: seeds are one-arrow left/right multiples of the
    // generators; closure under further multiplication fills in the rest.
    std::vector<SparseRow> boundary_seeds;
    for (const auto& g : gen_rows)
        for (int a = 0; a < q.num_arrows(); ++a)
            for (bool left : {true, false}) {
                SparseRow prod = mult(g, a, left);
                if (!prod.empty()) boundary_seeds.push_back(std::move(prod));
            }
    for (auto& s : boundary_seeds) insert_row(boundary_rows_, std::move(s));
    close_under_multiplication(boundary_rows_);
}

int IdealSolver::id_of(const std::vector<int>& arrows) const {
    auto it = path_ids_.find(arrows);
    return it == path_ids_.end() ? -1 : it->second;
}

std::map<int, Rat> IdealSolver::to_sparse(const Element& x) const {
    // Combine like terms first; the caller interprets absent/overlong paths.
    std::map<std::vector<int>, Rat> combined;
    for (const auto& [c, p] : x.terms) {
        require_path(pres_.quiver, p);
        combined[p.arrows] += c;
    }
    SparseRow v;
    for (auto& [arrows, c] : combined) {
        if (c == 0) continue;
        int id = id_of(arrows);
        if (id == -1)
            throw invalid_input("element term lies beyond the materialized horizon");
        v[id] += c;
    }
    return v;
}

bool IdealSolver::reduces_to_zero(const std::map<int, SparseRow>& rows, SparseRow v) {
    reduce_against(rows, v);
    return v.empty();
}

bool IdealSolver::contains(const Element& x) const {
    // Degree >= nilpotency is automatically inside the ideal.
    Element trimmed;
    for (const auto& [c, p] : x.terms) {
        require_path(pres_.quiver, p);
        if (p.length() >= nilpotency_) continue;
        trimmed.terms.push_back({c, p});
    }
    if (trimmed.terms.empty()) return true;
    SparseRow v = to_sparse(trimmed);
    // Admissible ideals live inside the square of the arrow ideal: a combined
    // term of degree 1 can never be a member.
    for (const auto& [id, c] : v)
        if (paths_[id].size() < 2) return false;
    return reduces_to_zero(ideal_rows_, std::move(v));
}

bool IdealSolver::contains_in_boundary(const Element& x) const {
    // r^(L+1) = r * r^L lies in r*I, so only degrees <= L need the row test.
    Element trimmed;
    for (const auto& [c, p] : x.terms) {
        require_path(pres_.quiver, p);
        if (p.length() > nilpotency_) continue;
        trimmed.terms.push_back({c, p});
    }
    if (trimmed.terms.empty()) return true;
    SparseRow v = to_sparse(trimmed);
    for (const auto& [id, c] : v)
        if (paths_[id].size() < 2) return false;
    return reduces_to_zero(boundary_rows_, std::move(v));
}

// --------------------------------------------------------------- free wrappers

Element element_of(const Relation& rel) {
    Element e;
    for (const auto& t : rel.terms) e.terms.push_back({t.coeff, t.path});
    return e;
}

int nilpotency_bound(AlgebraPresentation& p, int cap) {
    if (p.nilpotency) return *p.nilpotency;
    IdealSolver s(p, cap);
    p.nilpotency = s.nilpotency();
    return s.nilpotency();
}

bool is_zero_in_algebra(const AlgebraPresentation& p, const Element& x) {
    IdealSolver s(p);
    return s.contains(x);
}

namespace {

// Combinatorial minimality, evaluated term-by-term on the relation itself.
bool minimal_by_factorization(const IdealSolver& s, const Relation& rel) {
    const Quiver& q = s.presentation().quiver;
    if (rel.kind == RelationKind::zero) {
        const auto& w = rel.terms[0].path.arrows;
        int len = static_cast<int>(w.size());
        // A proper contiguous subpath lying in the ideal factors the relation
        // through shorter members.
        for (int sub = 2; sub < len; ++sub)
            for (int off = 0; off + sub <= len; ++off) {
                Path piece{std::vector<int>(w.begin() + off, w.begin() + off + sub)};
                if (s.contains(Element{{{Rat(1), piece}}})) return false;
            }
        return true;
    }
    if (rel.kind == RelationKind::commutativity) {
        const auto& w = rel.terms[0].path.arrows;
        const auto& m = rel.terms[1].path.arrows;
        if (s.contains(Element{{{Rat(1), Path{w}}}})) return false;
        if (s.contains(Element{{{Rat(1), Path{m}}}})) return false;
        int lw = static_cast<int>(w.size()), lm = static_cast<int>(m.size());
        int maxk = std::min(lw, lm);
        for (int k = 0; k <= maxk; ++k) {
            if (!std::equal(w.begin(), w.begin() + k, m.begin())) break;
            for (int l = 0; k + l <= maxk; ++l) {
                if (k + l == 0) continue;
                if (lw - k - l < 1 || lm - k - l < 1) continue;
                if (!std::equal(w.end() - l, w.end(), m.end() - l)) break;
                Path mid_w{std::vector<int>(w.begin() + k, w.end() - l)};
                Path mid_m{std::vector<int>(m.begin() + k, m.end() - l)};
                if (s.contains(Element{{{Rat(1), mid_w}, {Rat(-1), mid_m}}}))
                    return false;
            }
        }
        return true;
    }
    (void)q;
    throw invalid_input("minimality of general relations is only decided by the "
                        "subspace test; tag the relation as zero or commutativity");
}

} // namespace

bool is_minimal_relation(const AlgebraPresentation& p, const Relation& rel) {
    IdealSolver s(p);
    return is_minimal_relation(s, rel);
}

bool is_minimal_relation(const IdealSolver& s, const Relation& rel) {
    Element e = element_of(rel);
    if (!s.contains(e))
        throw invalid_input("relation is not a member of the ideal");

    bool by_subspace = !s.contains_in_boundary(e);
    if (rel.kind == RelationKind::general) return by_subspace;

    bool by_factorization = minimal_by_factorization(s, rel);
    if (by_subspace != by_factorization) {
        std::ostringstream os;
        os << "minimality criteria disagree on a "
           << (rel.kind == RelationKind::zero ? "zero" : "commutativity")
           << " relation (subspace test: " << (by_subspace ? "minimal" : "consequence")
           << ", factorization test: "
           << (by_factorization ? "minimal" : "consequence")
           << "); please report this presentation";
        throw invalid_input(os.str());
    }
    return by_subspace;
}

// ------------------------------------------------------------------------- I/O

namespace {

Path path_from_names(const Quiver& q, const std::vector<detail::Token>& toks,
                     size_t from, size_t to) {
    Path p;
    for (size_t i = from; i < to; ++i) {
        int a = q.arrow_index(toks[i].text);
        if (a < 0)
            throw parse_error("unknown arrow '" + toks[i].text + "' in relation",
                              toks[i].line, toks[i].col);
        p.arrows.push_back(a);
    }
    return p;
}

Relation relation_from_tokens(const Quiver& q, const std::vector<detail::Token>& toks) {
    // toks: rel zero: a b   |   rel comm: a b = c d
    size_t idx = 1;
    std::string kind = detail::take_name_colon(toks, idx, "relation kind");
    try {
        if (kind == "zero") {
            if (idx >= toks.size())
                throw parse_error("zero relation lists no arrows", toks[0].line,
                                  toks[0].col);
            return make_zero_relation(q, path_from_names(q, toks, idx, toks.size()));
        }
        if (kind == "comm") {
            size_t eq = idx;
            while (eq < toks.size() && toks[eq].text != "=") ++eq;
            if (eq == idx || eq == toks.size() || eq + 1 == toks.size())
                throw parse_error("commutativity relation needs '<path> = <path>'",
                                  toks[0].line, toks[0].col);
            return make_commutativity_relation(
                q, path_from_names(q, toks, idx, eq),
                path_from_names(q, toks, eq + 1, toks.size()));
        }
    } catch (const invalid_input& e) {
        throw parse_error(std::string("bad relation: ") + e.what(), toks[0].line,
                          toks[0].col);
    }
    throw parse_error("unknown relation kind '" + kind + "' (expected zero or comm)",
                      toks[1].line, toks[1].col);
}

} // namespace

AlgebraPresentation parse_presentation(const std::string& text) {
    std::vector<std::vector<detail::Token>> rel_lines;
    AlgebraPresentation p;
    p.quiver = parse_quiver_impl(text, true, &rel_lines);
    for (const auto& toks : rel_lines)
        p.relations.push_back(relation_from_tokens(p.quiver, toks));
    return p;
}

namespace {

json relation_to_json(const Quiver& q, const Relation& rel) {
    json j;
    switch (rel.kind) {
        case RelationKind::zero:
            j["kind"] = "zero";
            j["path"] = path_names(q, rel.terms[0].path);
            break;
        case RelationKind::commutativity:
            j["kind"] = "comm";
            j["left"] = path_names(q, rel.terms[0].path);
            j["right"] = path_names(q, rel.terms[1].path);
            break;
        case RelationKind::general:
            throw invalid_input("general relations have no file representation");
    }
    return j;
}

Path path_from_json_names(const Quiver& q, const json& arr) {
    if (!arr.is_array() || arr.empty())
        throw parse_error("relation path must be a non-empty array of arrow names");
    Path p;
    for (const auto& nm : arr) {
        int a = q.arrow_index(nm.get<std::string>());
        if (a < 0)
            throw parse_error("unknown arrow '" + nm.get<std::string>() +
                              "' in relation");
        p.arrows.push_back(a);
    }
    return p;
}

} // namespace

AlgebraPresentation presentation_from_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw parse_error("invalid JSON");
    AlgebraPresentation p;
    p.quiver = quiver_from_json(j);
    if (j.contains("relations")) {
        if (!j["relations"].is_array())
            throw parse_error("presentation json: 'relations' must be an array");
        for (const auto& r : j["relations"]) {
            std::string kind = r.at("kind").get<std::string>();
            try {
                if (kind == "zero") {
                    p.relations.push_back(make_zero_relation(
                        p.quiver, path_from_json_names(p.quiver, r.at("path"))));
                } else if (kind == "comm") {
                    p.relations.push_back(make_commutativity_relation(
                        p.quiver, path_from_json_names(p.quiver, r.at("left")),
                        path_from_json_names(p.quiver, r.at("right"))));
                } else {
                    throw parse_error("unknown relation kind '" + kind + "'");
                }
            } catch (const invalid_input& e) {
                throw parse_error(std::string("bad relation: ") + e.what());
            }
        }
    }
    if (j.contains("nilpotency")) p.nilpotency = j["nilpotency"].get<int>();
    return p;
}

std::string serialize_presentation(const AlgebraPresentation& p, QuiverFormat format) {
    const Quiver& q = p.quiver;
    if (format == QuiverFormat::dot) return serialize_quiver(q, QuiverFormat::dot);
    if (format == QuiverFormat::text) {
        std::ostringstream os;
        os << serialize_quiver(q, QuiverFormat::text);
        for (const auto& rel : p.relations) {
            switch (rel.kind) {
                case RelationKind::zero: {
                    os << "rel zero:";
                    for (const auto& nm : path_names(q, rel.terms[0].path))
                        os << " " << nm;
                    os << "\n";
                    break;
                }
                case RelationKind::commutativity: {
                    os << "rel comm:";
                    for (const auto& nm : path_names(q, rel.terms[0].path))
                        os << " " << nm;
                    os << " =";
                    for (const auto& nm : path_names(q, rel.terms[1].path))
                        os << " " << nm;
                    os << "\n";
                    break;
                }
                case RelationKind::general:
                    throw invalid_input("general relations have no file representation");
            }
        }
        return os.str();
    }
    json j = quiver_to_json(q);
    j["relations"] = json::array();
    for (const auto& rel : p.relations) j["relations"].push_back(relation_to_json(q, rel));
    if (p.nilpotency) j["nilpotency"] = *p.nilpotency;
    return j.dump(2) + "\n";
}

} // namespace cq
