// relations.hpp
// Paths, relations, bound-quiver presentations, and the exact ideal
// machinery: full-cycle / shortest-path enumeration, relation synthesis
// from the quiver alone, nilpotency bounds, ideal membership and
// minimality of relations.  All linear algebra is over the rationals,
// exact (cq::Rat).

#ifndef CQ_RELATIONS_HPP
#define CQ_RELATIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cq/quiver.hpp"
#include "cq/rational.hpp"

namespace cq {

// A path is a composable sequence of arrow indices into a fixed quiver.
// Composition is written left to right: {a, b} means "a then b", and is
// valid when target(a) == source(b).  The empty sequence is not used; a
// trivial (length-0) path at a vertex is represented separately where
// needed.
struct Path {
    std::vector<int> arrows;

    int length() const { return static_cast<int>(arrows.size()); }
    bool operator==(const Path& o) const { return arrows == o.arrows; }
    bool operator<(const Path& o) const { return arrows < o.arrows; }
};

// Source/target vertex of a path in q.  Throws invalid_input if the path
// is empty or not composable.
int path_source(const Quiver& q, const Path& p);
int path_target(const Quiver& q, const Path& p);
bool path_composable(const Quiver& q, const Path& p);
std::vector<std::string> path_names(const Quiver& q, const Path& p);

enum class RelationKind { zero, commutativity, general };

// A relation is a finite linear combination of parallel paths (all with a
// common source and a common target), each of length >= 2, with nonzero
// rational coefficients.  Zero-relations have one term; commutativity
// relations are normalized to coefficients (1, -1) with the
// lexicographically smaller term (by arrow-index sequence) first.
struct Relation {
    struct Term {
        Rat coeff;
        Path path;
    };
    std::vector<Term> terms;
    RelationKind kind = RelationKind::general;

    bool operator==(const Relation& o) const;
};

// Validates parallelism/composability/length and normalizes.  Throws
// invalid_input on malformed input.  One term -> zero; two terms with
// coefficients k, -k -> commutativity; anything else -> general.
Relation make_relation(const Quiver& q, std::vector<Relation::Term> terms);

Relation make_zero_relation(const Quiver& q, Path p);
Relation make_commutativity_relation(const Quiver& q, Path left, Path right);

// A quiver together with an admissible set of relation generators.  The
// nilpotency field caches the least L with (arrow ideal)^L contained in
// the relation ideal, once computed.
struct AlgebraPresentation {
    Quiver quiver;
    std::vector<Relation> relations;
    std::optional<int> nilpotency;
};

// An oriented cycle with no repeated vertices whose induced subquiver
// contains no arrows other than the cycle's own.  Stored in canonical
// rotation: the cycle starts at its smallest vertex id.
struct FullCycle {
    std::vector<int> arrows; // arrow indices, composable, closing up
    std::vector<int> vertices(const Quiver& q) const;
    int length() const { return static_cast<int>(arrows.size()); }
};

// All full cycles of q, sorted by (length, arrow-name sequence).
// Multiple arrows never lie on a full cycle, and loops/2-cycles are
// rejected upstream, so the enumeration is over simple directed cycles.
std::vector<FullCycle> enumerate_full_cycles(const Quiver& q);

// The shortest paths associated with an arrow a: i -> j are the paths
// from j to i such that the path followed by a is a full cycle.  Sorted
// by (length, arrow-name sequence).
std::vector<Path> shortest_paths(const Quiver& q, int arrow_index);

// Defining relations of the quotient algebra read off from the quiver
// alone: for every arrow a: i -> j, with p1, ..., pt the shortest paths
// for a, emit nothing (t = 0), a zero-relation p1 (t = 1), or a
// commutativity relation p1 - p2 (t = 2).  t > 2 cannot occur for
// quivers whose cluster type is a simply-laced Dynkin diagram; the
// function checks finiteness internally and throws invalid_input
// otherwise (or on loops/2-cycles).
AlgebraPresentation synthesize_relations(const Quiver& q);

// -------------------------------------------------------------------------
// Exact ideal arithmetic in the truncated path algebra.
//
// The solver materializes all paths of length <= horizon, spans the
// two-sided ideal generated by the presentation's relations (closing the
// generator set under left/right multiplication by arrows), and row-
// reduces over Q.  The horizon grows until the nilpotency bound L is
// certified with slack (L + max generator length <= horizon), so that
// membership queries for elements supported in degrees < L are exact in
// the (non-truncated) path algebra.  If no bound <= cap exists the
// presentation is not admissible and construction throws
// indeterminate_error.
// -------------------------------------------------------------------------

// A linear combination of paths (including trivial paths, keyed by
// length-0 "paths" at a vertex).  Used for membership queries.
struct Element {
    // term: coefficient on a path given by its arrow sequence
    std::vector<std::pair<Rat, Path>> terms;
};

Element element_of(const Relation& rel);

class IdealSolver {
public:
    // Builds the truncated model.  cap bounds the admissible nilpotency
    // index that will be certified; horizons up to cap + max generator
    // length may be materialized.
    IdealSolver(const AlgebraPresentation& p, int cap = 24);

    // Least L >= 1 with every path of length L in the ideal.
    int nilpotency() const { return nilpotency_; }

    // Exact membership of x in the relation ideal.  Terms of length >=
    // nilpotency() are reduced away first (they are always members).
    bool contains(const Element& x) const;

    // Membership in r*I + I*r (r = arrow ideal, I = relation ideal):
    // the subspace of relations that are consequences of compositions.
    bool contains_in_boundary(const Element& x) const;

    const AlgebraPresentation& presentation() const { return pres_; }

private:
    struct Row; // sparse vector over path ids
    struct Impl;

    AlgebraPresentation pres_;
    int cap_;
    int horizon_ = 0;
    int nilpotency_ = 0;

    // path table at the final horizon
    std::vector<std::vector<int>> paths_;        // id -> arrow sequence
    std::map<std::vector<int>, int> path_ids_;   // arrow sequence -> id
    std::vector<std::pair<int, int>> path_ends_; // id -> (source, target)

    // reduced row spans, keyed by leading path id
    std::map<int, std::map<int, Rat>> ideal_rows_;
    std::map<int, std::map<int, Rat>> boundary_rows_;

    void build(int horizon);
    int id_of(const std::vector<int>& arrows) const; // -1 if absent
    std::map<int, Rat> to_sparse(const Element& x) const;
    static bool reduces_to_zero(const std::map<int, std::map<int, Rat>>& rows,
                                std::map<int, Rat> v);
};

// Least L >= 1 such that every path of length L lies in the relation
// ideal (vacuously true once L exceeds the longest path).  Caches the
// result in p.nilpotency.  Throws indeterminate_error if no such L <= cap
// exists, with the cap named in the message.
int nilpotency_bound(AlgebraPresentation& p, int cap = 24);

// Is x zero in the quotient algebra (i.e. a member of the ideal)?
bool is_zero_in_algebra(const AlgebraPresentation& p, const Element& x);

// Is rel a minimal relation of the presentation: a member of the ideal
// that is not a consequence of compositions (not in r*I + I*r)?  Two
// independent criteria are evaluated -- the subspace test above and a
// combinatorial factorization test on the terms -- and any disagreement
// is reported by throwing invalid_input rather than silently picking
// one.
bool is_minimal_relation(const AlgebraPresentation& p, const Relation& rel);

// Same, reusing an already-built solver (the relation must belong to the
// solver's presentation quiver).
bool is_minimal_relation(const IdealSolver& s, const Relation& rel);

// ---------------------------------------------------------------------
// Presentation I/O.  Text format extends the quiver format with
//   rel zero: a b
//   rel comm: a b = c d
// lines referring to arrows by name.  JSON mirrors the quiver schema
// with a "relations" array.
// ---------------------------------------------------------------------

AlgebraPresentation parse_presentation(const std::string& text);
AlgebraPresentation presentation_from_json_text(const std::string& text);
std::string serialize_presentation(const AlgebraPresentation& p,
                                   QuiverFormat format);

} // namespace cq

#endif
