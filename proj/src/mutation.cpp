// mutation.cpp

#include "cq/mutation.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>

#include "cq/errors.hpp"

namespace cq {

namespace {

ExchangeMatrix mutate_matrix(const ExchangeMatrix& m, int k) {
    ExchangeMatrix r = m;
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            if (i == k || j == k) {
                r.b[i][j] = -m.b[i][j];
            } else {
                long long bik = m.b[i][k], bkj = m.b[k][j];
                r.b[i][j] = m.b[i][j] + (std::llabs(bik) * bkj + bik * std::llabs(bkj)) / 2;
            }
        }
    return r;
}

std::vector<std::string> labels_of(const Quiver& q) {
    std::vector<std::string> l;
    l.reserve(q.num_vertices());
    for (const auto& v : q.vertices()) l.push_back(v.label);
    return l;
}

} // namespace

Quiver mutate(const Quiver& q, int vertex) {
    if (vertex < 0 || vertex >= q.num_vertices())
        throw invalid_input("mutation vertex " + std::to_string(vertex) +
                            " outside the quiver");
    ExchangeMatrix m = to_exchange_matrix(q); // rejects 2-cycles
    return from_exchange_matrix(mutate_matrix(m, vertex), labels_of(q));
}

MutationClass mutation_class(const Quiver& seed, const MutationClassOptions& opts) {
    ExchangeMatrix m0 = to_exchange_matrix(seed);
    MutationClass out;

    auto truncate = [&](MutationClass::Truncation kind) {
        out.truncated = true;
        out.truncation_kind = kind;
        out.truncation_reason =
            kind == MutationClass::Truncation::entry_cap
                ? "exchange matrix entry exceeds " + std::to_string(opts.max_entry)
                : "member cap " + std::to_string(opts.max_members) + " reached";
    };

    if (m0.max_abs_entry() > opts.max_entry) {
        truncate(MutationClass::Truncation::entry_cap);
        return out;
    }

    std::set<std::string> seen;
    std::deque<std::pair<ExchangeMatrix, std::vector<int>>> queue;
    std::vector<std::string> labels = labels_of(seed);

    // Returns false when a genuinely new member would overflow the cap.
    auto push = [&](const ExchangeMatrix& m, const std::vector<int>& witness) {
        CanonicalResult c = canonical_form(from_exchange_matrix(m, labels));
        if (!seen.insert(c.key).second) return true;
        if (static_cast<long long>(out.members.size()) >= opts.max_members) return false;
        out.members.push_back(std::move(c.quiver));
        out.witnesses.push_back(witness);
        queue.emplace_back(m, witness);
        return true;
    };

    if (!push(m0, {})) {
        truncate(MutationClass::Truncation::member_cap);
        return out;
    }

    while (!queue.empty()) {
        auto [m, witness] = queue.front();
        queue.pop_front();
        for (int k = 0; k < m.n; ++k) {
            ExchangeMatrix next = mutate_matrix(m, k);
            if (next.max_abs_entry() > opts.max_entry) {
                truncate(MutationClass::Truncation::entry_cap);
                return out;
            }
            std::vector<int> w = witness;
            w.push_back(k);
            if (!push(next, w)) {
                truncate(MutationClass::Truncation::member_cap);
                return out;
            }
        }
    }
    return out;
}

bool is_finite_cluster_type(const Quiver& q, long long max_members) {
    if (q.num_vertices() == 0) return true;
    MutationClassOptions opts;
    opts.max_members = max_members;
    opts.max_entry = 1;
    // With the entry bound at 1 the reachable region is finite (finitely many
    // sign patterns), so this terminates for every input: either the region is
    // exhausted (finite type) or an entry of modulus 2 shows up (not).
    MutationClass c = mutation_class(q, opts);
    if (!c.truncated) return true;
    if (c.truncation_kind == MutationClass::Truncation::entry_cap) return false;
    throw indeterminate_error("mutation class exceeded " + std::to_string(max_members) +
                              " members before finiteness was decided");
}

namespace {

std::optional<DynkinType> classify_tree(const Quiver& acyclic) {
    int n = acyclic.num_vertices();
    if (n == 0) return std::nullopt;

    // Underlying simple graph; a Dynkin diagram is a tree.
    std::set<std::pair<int, int>> edges;
    for (const auto& a : acyclic.arrows())
        edges.insert({std::min(a.source, a.target), std::max(a.source, a.target)});
    if (static_cast<int>(edges.size()) != n - 1) return std::nullopt;
    if (!acyclic.is_connected()) return std::nullopt;

    std::vector<std::vector<int>> adj(n);
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }

    int branches = 0, branch_vertex = -1;
    for (int v = 0; v < n; ++v) {
        if (adj[v].size() >= 4) return std::nullopt;
        if (adj[v].size() == 3) {
            ++branches;
            branch_vertex = v;
        }
    }
    if (branches == 0) return DynkinType{'A', n};
    if (branches > 1) return std::nullopt;

    // Arm lengths from the unique degree-3 vertex.
    std::vector<int> arms;
    for (int start : adj[branch_vertex]) {
        int len = 1, prev = branch_vertex, cur = start;
        while (adj[cur].size() == 2) {
            int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = next;
            ++len;
        }
        if (adj[cur].size() != 1) return std::nullopt; // hit another branch point
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return DynkinType{'D', n};
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
        return DynkinType{'E', n}; // n = 6, 7, 8 as arms are (1,2,2..4)
    return std::nullopt;
}

} // namespace

std::optional<DynkinType> dynkin_type_of(const Quiver& q, long long max_members) {
    if (q.num_vertices() == 0 || !q.is_connected()) return std::nullopt;
    if (q.has_two_cycle()) return std::nullopt;

    MutationClassOptions opts;
    opts.max_members = max_members;
    opts.max_entry = 1;
    MutationClass c = mutation_class(q, opts);
    if (c.truncated) {
        if (c.truncation_kind == MutationClass::Truncation::entry_cap)
            return std::nullopt; // not finite cluster type
        throw indeterminate_error("mutation class exceeded " +
                                  std::to_string(max_members) +
                                  " members before the type was decided");
    }
    for (const auto& member : c.members)
        if (member.is_acyclic()) return classify_tree(member);
    return std::nullopt; // finite type always has acyclic members; defensive
}

bool is_double_path_avoiding(const Quiver& q, long long max_states) {
    if (q.has_multiple_arrow()) return false;
    std::set<std::string> seen;
    std::deque<Quiver> queue;

    auto visit = [&](const Quiver& g) {
        if (g.has_multiple_arrow()) return false;
        std::string key = canonical_key(g);
        if (seen.insert(key).second) {
            if (static_cast<long long>(seen.size()) > max_states)
                throw indeterminate_error(
                    "double-path avoidance search exceeded " +
                    std::to_string(max_states) + " states");
            queue.push_back(g);
        }
        return true;
    };

    if (!visit(q)) return false;
    while (!queue.empty()) {
        Quiver g = queue.front();
        queue.pop_front();
        int n = g.num_vertices();
        for (int k = 0; k < n; ++k)
            if (!visit(mutate(g, k))) return false;
        if (n >= 1) {
            for (int v = 0; v < n; ++v) {
                std::vector<int> keep;
                for (int u = 0; u < n; ++u)
                    if (u != v) keep.push_back(u);
                if (!visit(delete_vertices(g, keep).quiver)) return false;
            }
        }
    }
    return true;
}

} // namespace cq
