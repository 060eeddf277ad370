// tilted.cpp

#include "cq/tilted.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "cq/errors.hpp"
#include "internal.hpp"

namespace cq {

using nlohmann::json;

namespace {

std::string render_relation(const Quiver& q, const Relation& rel) {
    std::ostringstream os;
    if (rel.kind == RelationKind::zero) {
        os << "zero:";
        for (const auto& nm : path_names(q, rel.terms[0].path)) os << " " << nm;
    } else if (rel.kind == RelationKind::commutativity) {
        os << "comm:";
        for (const auto& nm : path_names(q, rel.terms[0].path)) os << " " << nm;
        os << " =";
        for (const auto& nm : path_names(q, rel.terms[1].path)) os << " " << nm;
    } else {
        os << "general (" << rel.terms.size() << " terms)";
    }
    return os.str();
}

} // namespace

ValidationReport validate_tilted_presentation(const AlgebraPresentation& p,
                                              int nilpotency_cap) {
    ValidationReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.problems.push_back(std::move(msg));
    };

    if (!p.quiver.is_acyclic())
        fail("quiver has an oriented cycle; tilted algebras have acyclic quivers");
    if (p.quiver.has_multiple_arrow())
        fail("quiver has a multiple arrow");

    bool forms_ok = true;
    for (size_t i = 0; i < p.relations.size(); ++i) {
        if (p.relations[i].kind == RelationKind::general) {
            forms_ok = false;
            fail("relation #" + std::to_string(i + 1) +
                 " is neither a zero-relation nor a commutativity relation");
        }
    }

    std::unique_ptr<IdealSolver> solver;
    try {
        solver = std::make_unique<IdealSolver>(p, nilpotency_cap);
    } catch (const indeterminate_error& e) {
        fail(std::string("ideal is not admissible: ") + e.what());
    } catch (const invalid_input& e) {
        fail(std::string("ideal is malformed: ") + e.what());
    }

    if (solver && forms_ok) {
        for (size_t i = 0; i < p.relations.size(); ++i) {
            try {
                if (!is_minimal_relation(*solver, p.relations[i]))
                    fail("relation #" + std::to_string(i + 1) + " (" +
                         render_relation(p.quiver, p.relations[i]) +
                         ") is not a minimal relation");
            } catch (const invalid_input& e) {
                fail("relation #" + std::to_string(i + 1) +
                     ": minimality undecided: " + e.what());
            }
        }
    }
    return rep;
}

ClusterTiltOutput cluster_tilt(const AlgebraPresentation& p, int nilpotency_cap) {
    ValidationReport rep = validate_tilted_presentation(p, nilpotency_cap);
    if (!rep.ok) {
        std::ostringstream os;
        os << "tilted presentation rejected:";
        for (const auto& pr : rep.problems) os << "\n  - " << pr;
        throw invalid_input(os.str());
    }

    ClusterTiltOutput out;
    out.source = p;
    out.gamma.quiver = p.quiver;

    for (const auto& a : p.quiver.arrows()) out.classes[a.name] = 'm';

    // One adjoined arrow per minimal relation, pointing opposite to the
    // relation's paths so each path becomes a shortest path for it.
    for (size_t i = 0; i < p.relations.size(); ++i) {
        const Relation& rel = p.relations[i];
        int a = path_source(p.quiver, rel.terms[0].path);
        int b = path_target(p.quiver, rel.terms[0].path);
        std::string name = "f_" + std::to_string(i + 1);
        while (out.gamma.quiver.arrow_index(name) >= 0) name += "_";
        out.gamma.quiver.add_arrow(name, b, a);
        out.classes[name] = 'f';
        out.provenance[name] = static_cast<int>(i);
    }

    if (out.gamma.quiver.has_two_cycle())
        throw invalid_input("constructed quiver has a 2-cycle; the input is not a "
                            "tilted presentation of Dynkin type");
    if (out.gamma.quiver.has_multiple_arrow())
        throw invalid_input("constructed quiver has a multiple arrow; the input is "
                            "not a tilted presentation of Dynkin type");
    if (!is_finite_cluster_type(out.gamma.quiver))
        throw invalid_input("constructed quiver is not of finite cluster type; the "
                            "input is not a tilted algebra of Dynkin type");

    AlgebraPresentation syn = synthesize_relations(out.gamma.quiver);
    IdealSolver solver(syn, nilpotency_cap);

    // Consistency: the input relations must hold in the constructed algebra.
    for (size_t i = 0; i < p.relations.size(); ++i) {
        if (!solver.contains(element_of(p.relations[i])))
            throw invalid_input(
                "internal consistency failure: input relation #" +
                std::to_string(i + 1) + " (" +
                render_relation(p.quiver, p.relations[i]) +
                ") is not implied by the synthesized relations; refusing to emit");
    }

    out.gamma.relations = std::move(syn.relations);
    out.gamma.nilpotency = solver.nilpotency();
    out.dynkin = dynkin_type_of(out.gamma.quiver);
    return out;
}

StructureReport check_structure(const ClusterTiltOutput& o) {
    StructureReport rep;
    const Quiver& g = o.gamma.quiver;
    auto is_f = [&](int arrow_idx) {
        auto it = o.classes.find(g.arrow(arrow_idx).name);
        return it != o.classes.end() && it->second == 'f';
    };

    {
        bool ok = true;
        std::string detail;
        for (const auto& cyc : enumerate_full_cycles(g)) {
            int nf = 0;
            for (int a : cyc.arrows) nf += is_f(a) ? 1 : 0;
            if (nf != 1) {
                ok = false;
                std::ostringstream os;
                os << "cycle";
                for (int a : cyc.arrows) os << " " << g.arrow(a).name;
                os << " has " << nf << " f-arrows";
                detail = os.str();
                break;
            }
        }
        rep.checks.push_back({"every full cycle has exactly one f-arrow", ok, detail});
    }

    {
        bool ok = true;
        std::string detail;
        for (int ai = 0; ai < g.num_arrows(); ++ai) {
            if (!is_f(ai)) continue;
            bool has_m_path = false;
            for (const Path& sp : shortest_paths(g, ai)) {
                bool all_m = true;
                for (int a : sp.arrows) all_m = all_m && !is_f(a);
                if (all_m) {
                    has_m_path = true;
                    break;
                }
            }
            if (!has_m_path) {
                ok = false;
                detail = "f-arrow " + g.arrow(ai).name +
                         " has no shortest path made of m-arrows";
                break;
            }
        }
        rep.checks.push_back(
            {"every f-arrow has an all-m shortest path", ok, detail});
    }

    {
        std::vector<int> f_indices;
        for (int ai = 0; ai < g.num_arrows(); ++ai)
            if (is_f(ai)) f_indices.push_back(ai);
        bool ok = delete_arrows(g, f_indices) == o.source.quiver;
        rep.checks.push_back({"deleting f-arrows recovers the source quiver", ok,
                              ok ? "" : "quiver mismatch after deletion"});
    }

    {
        bool ok = true;
        std::string detail;
        for (size_t i = 0; i < o.source.relations.size(); ++i) {
            const Relation& rel = o.source.relations[i];
            bool found = false;
            for (const auto& srel : o.gamma.relations)
                if (srel == rel) {
                    found = true;
                    break;
                }
            if (!found) {
                ok = false;
                detail = "source relation #" + std::to_string(i + 1) + " (" +
                         render_relation(o.source.quiver, rel) +
                         ") is not among the synthesized relations";
                break;
            }
        }
        rep.checks.push_back(
            {"every source relation reappears among the synthesized relations", ok,
             detail});
    }
    return rep;
}

std::vector<TiltedCandidate> round_trip_census(const Quiver& gamma_quiver) {
    if (!is_finite_cluster_type(gamma_quiver))
        throw invalid_input("round-trip census requires finite cluster type");

    std::vector<FullCycle> cycles = enumerate_full_cycles(gamma_quiver);

    // Arrows lying on at least one full cycle, in index order.
    std::vector<int> pool;
    {
        std::vector<char> on(gamma_quiver.num_arrows(), 0);
        for (const auto& c : cycles)
            for (int a : c.arrows) on[a] = 1;
        for (int a = 0; a < gamma_quiver.num_arrows(); ++a)
            if (on[a]) pool.push_back(a);
    }
    if (pool.size() > 20)
        throw indeterminate_error("round-trip census: too many cycle arrows (" +
                                  std::to_string(pool.size()) + " > 20)");

    // Per-cycle bitmask over pool positions.
    std::vector<uint32_t> cycle_masks;
    for (const auto& c : cycles) {
        uint32_t mask = 0;
        for (int a : c.arrows) {
            auto it = std::lower_bound(pool.begin(), pool.end(), a);
            mask |= 1u << (it - pool.begin());
        }
        cycle_masks.push_back(mask);
    }

    std::vector<TiltedCandidate> out;
    for (uint32_t sel = 0; sel < (1u << pool.size()); ++sel) {
        bool ok = true;
        for (uint32_t cm : cycle_masks)
            if (__builtin_popcount(sel & cm) != 1) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::vector<int> drop;
        for (size_t i = 0; i < pool.size(); ++i)
            if (sel & (1u << i)) drop.push_back(pool[i]);
        Quiver reduced = delete_arrows(gamma_quiver, drop);
        if (!reduced.is_acyclic()) continue;
        TiltedCandidate cand;
        for (int a : drop) cand.deleted_arrows.push_back(gamma_quiver.arrow(a).name);
        std::sort(cand.deleted_arrows.begin(), cand.deleted_arrows.end());
        cand.quiver = std::move(reduced);
        out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), [](const TiltedCandidate& x, const TiltedCandidate& y) {
        if (x.deleted_arrows.size() != y.deleted_arrows.size())
            return x.deleted_arrows.size() < y.deleted_arrows.size();
        return x.deleted_arrows < y.deleted_arrows;
    });
    return out;
}

// ---------------------------------------------------------------- serialization

namespace {

json classes_json(const std::map<std::string, char>& classes) {
    json j = json::object();
    for (const auto& [name, cls] : classes) j[name] = std::string(1, cls);
    return j;
}

} // namespace

std::string serialize_cluster_tilt(const ClusterTiltOutput& o, QuiverFormat format) {
    if (format == QuiverFormat::dot)
        return serialize_quiver_dot(o.gamma.quiver, o.classes);

    if (format == QuiverFormat::text) {
        std::ostringstream os;
        os << serialize_presentation(o.gamma, QuiverFormat::text);
        for (const auto& a : o.gamma.quiver.arrows())
            os << "# class " << a.name << ": " << o.classes.at(a.name) << "\n";
        for (const auto& [fname, idx] : o.provenance)
            os << "# " << fname << " from relation " << (idx + 1) << ": "
               << render_relation(o.source.quiver, o.source.relations.at(idx)) << "\n";
        os << "# dynkin: " << (o.dynkin ? o.dynkin->to_string() : "none") << "\n";
        return os.str();
    }

    json j;
    j["source"] = json::parse(serialize_presentation(o.source, QuiverFormat::json));
    j["gamma"] = json::parse(serialize_presentation(o.gamma, QuiverFormat::json));
    j["classes"] = classes_json(o.classes);
    json prov = json::object();
    for (const auto& [fname, idx] : o.provenance)
        prov[fname] = {{"relation_index", idx},
                       {"relation", render_relation(o.source.quiver,
                                                    o.source.relations.at(idx))}};
    j["provenance"] = prov;
    j["dynkin"] = o.dynkin ? json(o.dynkin->to_string()) : json(nullptr);
    return j.dump(2) + "\n";
}

std::string serialize_cluster_tilt_canonical(const ClusterTiltOutput& o) {
    const Quiver& g = o.gamma.quiver;
    CanonicalResult c = canonical_form(g);

    // Arrow map old -> new: match endpoint pairs through the vertex
    // permutation; parallel bundles (none in finite type, but be exact)
    // are matched in order.
    std::map<std::pair<int, int>, std::vector<int>> buckets;
    for (int i = 0; i < c.quiver.num_arrows(); ++i) {
        const Arrow& a = c.quiver.arrow(i);
        buckets[{a.source, a.target}].push_back(i);
    }
    std::map<std::pair<int, int>, size_t> used;
    std::vector<int> arrow_map(g.num_arrows(), -1);
    for (int i = 0; i < g.num_arrows(); ++i) {
        const Arrow& a = g.arrow(i);
        std::pair<int, int> key{c.perm[a.source], c.perm[a.target]};
        arrow_map[i] = buckets.at(key).at(used[key]++);
    }

    AlgebraPresentation canon;
    canon.quiver = c.quiver;
    for (const auto& rel : o.gamma.relations) {
        std::vector<Relation::Term> terms;
        for (const auto& t : rel.terms) {
            Path p;
            for (int a : t.path.arrows) p.arrows.push_back(arrow_map[a]);
            terms.push_back({t.coeff, std::move(p)});
        }
        canon.relations.push_back(make_relation(canon.quiver, std::move(terms)));
    }
    std::sort(canon.relations.begin(), canon.relations.end(),
              [](const Relation& x, const Relation& y) {
                  std::vector<std::vector<int>> kx, ky;
                  for (const auto& t : x.terms) kx.push_back(t.path.arrows);
                  for (const auto& t : y.terms) ky.push_back(t.path.arrows);
                  return kx < ky;
              });
    canon.nilpotency = o.gamma.nilpotency;

    json j;
    j["gamma"] = json::parse(serialize_presentation(canon, QuiverFormat::json));
    json cls = json::object();
    json prov = json::object();
    for (int i = 0; i < g.num_arrows(); ++i) {
        const std::string& old_name = g.arrow(i).name;
        const std::string& new_name = c.quiver.arrow(arrow_map[i]).name;
        cls[new_name] = std::string(1, o.classes.at(old_name));
        auto it = o.provenance.find(old_name);
        if (it != o.provenance.end()) prov[new_name] = it->second;
    }
    j["classes"] = cls;
    j["provenance"] = prov;
    j["dynkin"] = o.dynkin ? json(o.dynkin->to_string()) : json(nullptr);
    return j.dump(2) + "\n";
}

} // namespace cq
