// mutation.hpp
// Quiver mutation, mutation-class enumeration, finite-cluster-type and
// Dynkin-type recognition, and the double-path-avoidance check (closure
// under mutation and vertex deletion stays free of multiple arrows).

#ifndef CQ_MUTATION_HPP
#define CQ_MUTATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "cq/quiver.hpp"

namespace cq {

// Simply-laced Dynkin diagram: family in {'A', 'D', 'E'}, rank = number of
// vertices (A: n >= 1, D: n >= 4, E: n in {6, 7, 8}).
struct DynkinType {
    char family;
    int rank;

    std::string to_string() const { return std::string(1, family) + std::to_string(rank); }
    bool operator==(const DynkinType& o) const {
        return family == o.family && rank == o.rank;
    }
};

// Mutation at a vertex.  Defined for quivers without loops or oriented
// 2-cycles; throws invalid_input otherwise or when the vertex is out of
// range.  An involution: mutate(mutate(q, k), k) is isomorphic to q (equal
// up to arrow naming).  Vertex labels are preserved; arrow names are
// regenerated from the resulting exchange matrix.
Quiver mutate(const Quiver& q, int vertex);

struct MutationClassOptions {
    long long max_members = 100000; // stop after this many distinct members
    long long max_entry = 12;       // stop when |b_ij| exceeds this
};

struct MutationClass {
    enum class Truncation { none, member_cap, entry_cap };

    // First representative encountered of each isomorphism class, in
    // breadth-first order from the seed (mutating vertices in increasing
    // order).  witnesses[i] is a mutation sequence carrying the seed to
    // members[i].
    std::vector<Quiver> members;
    std::vector<std::vector<int>> witnesses;
    bool truncated = false;
    Truncation truncation_kind = Truncation::none;
    std::string truncation_reason;
};

MutationClass mutation_class(const Quiver& seed, const MutationClassOptions& opts = {});

// Finite cluster type: every member of the mutation class has all exchange
// matrix entries in {-1, 0, 1}.  The enumeration aborts (answer: false) as
// soon as a larger entry appears, so this terminates without artificial
// caps on finite input sizes; a member cap still guards against blowup and
// trips indeterminate_error.
bool is_finite_cluster_type(const Quiver& q, long long max_members = 100000);

// The Dynkin type of the cluster, when q is connected and of finite
// cluster type: the underlying diagram of any acyclic member of the
// mutation class.  nullopt when q is empty, disconnected, or not of
// finite cluster type.
std::optional<DynkinType> dynkin_type_of(const Quiver& q,
                                         long long max_members = 100000);

// True when no quiver reachable from q by any sequence of mutations and
// vertex deletions has a multiple arrow.  Throws indeterminate_error when
// the memoized search exceeds max_states distinct quivers.
bool is_double_path_avoiding(const Quiver& q, long long max_states = 100000);

} // namespace cq

#endif
