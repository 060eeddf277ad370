// quiver.hpp
// Core quiver data model: finite directed multigraphs with named arrows,
// exchange-matrix dictionary, induced subquivers, canonical labeling,
// and text/JSON/DOT serialization.

#ifndef CQ_QUIVER_HPP
#define CQ_QUIVER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cq/errors.hpp"

namespace cq {

struct Vertex {
    int id = 0;          // contiguous from 0 within one quiver
    std::string label;   // display name, defaults to decimal id

    bool operator==(const Vertex&) const = default;
};

struct Arrow {
    std::string name;    // unique within one quiver
    int source = 0;
    int target = 0;

    bool operator==(const Arrow&) const = default;
};

// Skew-symmetric integer matrix with zero diagonal.
struct ExchangeMatrix {
    int n = 0;
    std::vector<std::vector<long long>> b;

    static ExchangeMatrix zero(int n);
    bool is_skew_symmetric() const;
    long long max_abs_entry() const;
    bool operator==(const ExchangeMatrix&) const = default;
};

// Finite directed multigraph. No loops, ever. Oriented 2-cycles are
// representable (a parsed file may contain them) but every mutation-side
// operation rejects them up front.
class Quiver {
public:
    Quiver() = default;
    explicit Quiver(int n_vertices);

    int add_vertex(std::string label = "");
    // Throws parse_error on loops and duplicate arrow names,
    // invalid_input on out-of-range endpoints.
    void add_arrow(std::string name, int source, int target);

    int num_vertices() const { return static_cast<int>(vertices_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int idx) const { return arrows_.at(idx); }
    const Vertex& vertex(int id) const { return vertices_.at(id); }

    void set_label(int id, std::string label);
    // Index of the arrow with this name, or -1.
    int arrow_index(const std::string& name) const;
    // Internal id of the vertex with this label, or -1.
    int vertex_by_label(const std::string& label) const;

    std::vector<int> out_arrows(int v) const;  // arrow indices, stored order
    std::vector<int> in_arrows(int v) const;

    int count_arrows(int src, int tgt) const;
    bool has_two_cycle() const;
    bool has_multiple_arrow() const;
    bool is_acyclic() const;
    bool is_connected() const;  // weakly, in the underlying graph

    // Structural equality: vertex count, labels, and the arrow list
    // (name, source, target) in order.
    bool operator==(const Quiver&) const = default;

private:
    std::vector<Vertex> vertices_;
    std::vector<Arrow> arrows_;
    std::map<std::string, int> arrow_names_;
};

// --- exchange-matrix dictionary ---------------------------------------------

// b[i][j] = #(i->j) - #(j->i). Throws invalid_input if the quiver has a
// 2-cycle (the dictionary would be lossy).
ExchangeMatrix to_exchange_matrix(const Quiver& q);

// Inverse dictionary; arrow names generated as "a<i>_<j>_<k>".
// Throws invalid_input on non-skew input. Labels, when provided, are applied
// to the fresh vertices.
Quiver from_exchange_matrix(const ExchangeMatrix& m,
                            const std::vector<std::string>& labels = {});

// --- subquivers --------------------------------------------------------------

struct SubquiverResult {
    Quiver quiver;
    std::vector<int> index_map;  // old vertex id -> new id, or -1 if deleted
};

// Full subquiver induced on `keep` (original arrow names preserved).
SubquiverResult delete_vertices(const Quiver& q, const std::vector<int>& keep);

// Copy of q without the arrows at the given indices (all vertices kept).
Quiver delete_arrows(const Quiver& q, const std::vector<int>& arrow_indices);

// --- canonical form -----------------------------------------------------------

struct CanonicalResult {
    Quiver quiver;              // canonically relabeled, generated arrow names
    std::vector<int> perm;      // perm[old id] = new id
    std::string key;            // label-free isomorphism key of `quiver`
};

// Deterministic canonical relabeling: two quivers are isomorphic iff their
// canonical keys are byte-identical. Exhaustive search within classes of an
// iterated degree refinement; throws indeterminate_error if the refined
// search space is unreasonably large (never at Dynkin scale).
CanonicalResult canonical_form(const Quiver& q);

// Label-free serialization of canonical_form(q).quiver; the isomorphism key.
std::string canonical_key(const Quiver& q);

// --- serialization -------------------------------------------------------------

enum class QuiverFormat { text, json, dot };

std::string serialize_quiver(const Quiver& q, QuiverFormat format);

// DOT with per-arrow style control; arrows whose name maps to 'f' render dashed.
std::string serialize_quiver_dot(const Quiver& q,
                                 const std::map<std::string, char>& arrow_classes);

// Parses the quiver text format:
//   # comment
//   vertices 1 2 3
//   arrow a: 1 -> 2
// Rejects `rel` lines (use parse_presentation for those).
Quiver parse_quiver(const std::string& text);

Quiver quiver_from_json_text(const std::string& json_text);

} // namespace cq

#endif
