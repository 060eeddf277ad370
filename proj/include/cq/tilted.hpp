// tilted.hpp
// The main construction: from a validated tilted-algebra presentation
// KQ'/I', build the cluster-tilted quiver Q by adjoining one f-arrow per
// minimal relation (running opposite to the relation's paths), synthesize
// the relations of the resulting algebra from Q alone, classify arrows as
// m/f, and verify the structural consequences.

#ifndef CQ_TILTED_HPP
#define CQ_TILTED_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cq/mutation.hpp"
#include "cq/relations.hpp"

namespace cq {

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> problems; // one line per failed check
};

// Necessary conditions for a presentation to be a tilted algebra of Dynkin
// type given by minimal relations: quiver acyclic, no multiple arrows,
// every relation a zero- or commutativity relation, ideal admissible with
// a finite nilpotency bound, every stated relation minimal.  (Sufficiency
// is not decidable here; cluster_tilt post-checks the constructed quiver.)
ValidationReport validate_tilted_presentation(const AlgebraPresentation& p,
                                              int nilpotency_cap = 24);

struct ClusterTiltOutput {
    AlgebraPresentation source; // the validated input
    AlgebraPresentation gamma;  // constructed quiver + synthesized relations
    std::map<std::string, char> classes;   // arrow name -> 'm' or 'f'
    std::map<std::string, int> provenance; // f-arrow name -> source relation index
    std::optional<DynkinType> dynkin;      // set whenever gamma is connected
};

// The main construction.  Throws invalid_input when validation fails,
// when the constructed quiver is not of finite cluster type (the input was
// not a tilted algebra of Dynkin type), or when an input relation fails to
// lie in the synthesized ideal (internal consistency failure: abort loudly
// rather than emit a wrong presentation).
ClusterTiltOutput cluster_tilt(const AlgebraPresentation& p, int nilpotency_cap = 24);

struct StructureReport {
    struct Check {
        std::string name;
        bool passed;
        std::string detail; // empty when passed
    };
    std::vector<Check> checks;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

// Verifies on a constructed output: (1) every full cycle contains exactly
// one f-arrow; (2) every f-arrow has a shortest path consisting of m-arrows
// only; (3) deleting the f-arrows recovers the source quiver exactly;
// (4) every source relation reappears among the synthesized relations.
StructureReport check_structure(const ClusterTiltOutput& o);

struct TiltedCandidate {
    std::vector<std::string> deleted_arrows; // arrow names, sorted
    Quiver quiver;                           // input minus those arrows
};

// Exploratory inverse: all subsets S of the arrows lying on full cycles
// such that S meets every full cycle exactly once and deleting S leaves an
// acyclic quiver.  No claim that every candidate is a genuine tilted
// algebra.  Throws invalid_input if the input is not of finite cluster
// type, indeterminate_error if the subset search space is too large.
std::vector<TiltedCandidate> round_trip_census(const Quiver& gamma_quiver);

// Plain serialization (text / json / dot; dot renders f-arrows dashed).
std::string serialize_cluster_tilt(const ClusterTiltOutput& o, QuiverFormat format);

// Canonically relabeled JSON (canonical gamma quiver, relations renamed and
// re-sorted, classes/provenance keyed by canonical arrow names): two runs
// agree byte-for-byte iff the outputs are isomorphic as presentations.
// Golden corpus files store exactly this.
std::string serialize_cluster_tilt_canonical(const ClusterTiltOutput& o);

} // namespace cq

#endif
