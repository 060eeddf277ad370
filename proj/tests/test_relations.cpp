#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "cq/errors.hpp"
#include "cq/mutation.hpp"
#include "cq/quiver.hpp"
#include "cq/relations.hpp"

#include "support.hpp"

using namespace cq;

namespace {

Quiver linear_a(int n) {
    Quiver q(n);
    for (int i = 0; i + 1 < n; ++i)
        q.add_arrow("a" + std::to_string(i), i, i + 1);
    return q;
}

Quiver oriented_cycle(int n) {
    Quiver q(n);
    for (int i = 0; i < n; ++i)
        q.add_arrow("a" + std::to_string(i), i, (i + 1) % n);
    return q;
}

// The five-vertex output quiver of the two-relation corpus case, by hand:
// a square 0 -> {1,2} -> 3 with a tail 2 -> 4, closed up by 3 -> 0 and
// 4 -> 0.
Quiver gamma_d5() {
    Quiver q(5);
    q.add_arrow("alpha", 0, 1);
    q.add_arrow("beta", 0, 2);
    q.add_arrow("gamma", 1, 3);
    q.add_arrow("delta", 2, 3);
    q.add_arrow("epsilon", 2, 4);
    q.add_arrow("f_1", 3, 0);
    q.add_arrow("f_2", 4, 0);
    return q;
}

Path path_of(const Quiver& q, const std::vector<std::string>& names) {
    Path p;
    for (const auto& nm : names) {
        int a = q.arrow_index(nm);
        REQUIRE(a >= 0);
        p.arrows.push_back(a);
    }
    return p;
}

Element unit(const Path& p) { return Element{{{Rat(1), p}}}; }

// ---------------------------------------------------------------------------
// Independent dense oracle: materializes every path up to a horizon,
// spans all shifted generators pre * g * post directly (no incremental
// closure), and row-reduces a dense matrix. Shares no code with
// IdealSolver beyond the presentation types.
// ---------------------------------------------------------------------------
struct DenseOracle {
    const Quiver& q;
    int horizon;
    std::vector<std::vector<int>> paths; // id -> arrow sequence
    std::map<std::vector<int>, int> ids;
    std::vector<std::vector<Rat>> rows;  // echelon, by leading index

    DenseOracle(const AlgebraPresentation& p, int h) : q(p.quiver), horizon(h) {
        std::vector<std::vector<int>> frontier;
        for (int a = 0; a < q.num_arrows(); ++a) frontier.push_back({a});
        while (!frontier.empty()) {
            std::vector<std::vector<int>> next;
            for (auto& seq : frontier) {
                ids.emplace(seq, static_cast<int>(paths.size()));
                paths.push_back(seq);
                if (static_cast<int>(seq.size()) < horizon) {
                    int end = q.arrow(seq.back()).target;
                    for (int a = 0; a < q.num_arrows(); ++a)
                        if (q.arrow(a).source == end) {
                            auto e = seq;
                            e.push_back(a);
                            next.push_back(std::move(e));
                        }
                }
            }
            frontier = std::move(next);
        }

        // Pre/post path lists per endpoint vertex (empty path included as {}).
        auto ending_at = [&](int v) {
            std::vector<std::vector<int>> r{{}};
            for (const auto& seq : paths)
                if (q.arrow(seq.back()).target == v) r.push_back(seq);
            return r;
        };
        auto starting_at = [&](int v) {
            std::vector<std::vector<int>> r{{}};
            for (const auto& seq : paths)
                if (q.arrow(seq.front()).source == v) r.push_back(seq);
            return r;
        };

        for (const auto& rel : p.relations) {
            int s = path_source(q, rel.terms[0].path);
            int t = path_target(q, rel.terms[0].path);
            for (const auto& pre : ending_at(s))
                for (const auto& post : starting_at(t)) {
                    std::vector<Rat> v(paths.size(), Rat(0));
                    bool nonempty = false;
                    for (const auto& term : rel.terms) {
                        std::vector<int> full = pre;
                        full.insert(full.end(), term.path.arrows.begin(),
                                    term.path.arrows.end());
                        full.insert(full.end(), post.begin(), post.end());
                        // Terms beyond the horizon vanish in the truncated
                        // model, matching the solver's semantics.
                        if (static_cast<int>(full.size()) > horizon) continue;
                        v[ids.at(full)] += term.coeff;
                        nonempty = true;
                    }
                    if (nonempty) insert(std::move(v));
                }
        }
    }

    void reduce(std::vector<Rat>& v) const {
        for (const auto& row : rows) {
            size_t lead = 0;
            while (lead < row.size() && row[lead] == 0) ++lead;
            if (v[lead] == 0) continue;
            Rat f = v[lead] / row[lead];
            for (size_t i = lead; i < v.size(); ++i) v[i] -= f * row[i];
        }
    }

    void insert(std::vector<Rat> v) {
        reduce(v);
        for (const Rat& x : v)
            if (x != 0) {
                rows.push_back(std::move(v));
                std::sort(rows.begin(), rows.end(),
                          [](const std::vector<Rat>& a, const std::vector<Rat>& b) {
                              size_t la = 0, lb = 0;
                              while (la < a.size() && a[la] == 0) ++la;
                              while (lb < b.size() && b[lb] == 0) ++lb;
                              return la < lb;
                          });
                return;
            }
    }

    bool member(const Element& x) const {
        std::vector<Rat> v(paths.size(), Rat(0));
        for (const auto& [c, p] : x.terms) {
            if (static_cast<int>(p.arrows.size()) > horizon) continue;
            v[ids.at(p.arrows)] += c;
        }
        std::vector<Rat> w = v;
        reduce(w);
        for (const Rat& e : w)
            if (e != 0) return false;
        return true;
    }

    // Least L <= horizon with every length-L path a member (0 if none).
    int nilpotency() const {
        for (int L = 1; L <= horizon; ++L) {
            bool all = true;
            for (const auto& seq : paths)
                if (static_cast<int>(seq.size()) == L &&
                    !member(unit(Path{seq})))
                    all = false;
            if (all) return L;
        }
        return 0;
    }
};

void cross_check(const AlgebraPresentation& p, int expected_nilpotency) {
    AlgebraPresentation copy = p;
    IdealSolver solver(copy);
    CHECK(solver.nilpotency() == expected_nilpotency);

    int maxgen = 2;
    for (const auto& rel : p.relations)
        for (const auto& t : rel.terms)
            maxgen = std::max(maxgen, t.path.length());
    DenseOracle oracle(p, expected_nilpotency + maxgen + 2);
    CHECK(oracle.nilpotency() == expected_nilpotency);

    // Membership agreement on every path within the trusted band, and on
    // pairwise sums.
    std::vector<Path> sample;
    for (const auto& seq : oracle.paths)
        if (static_cast<int>(seq.size()) <= expected_nilpotency + 1)
            sample.push_back(Path{seq});
    for (const auto& p1 : sample)
        CHECK(solver.contains(unit(p1)) == oracle.member(unit(p1)));
    for (size_t i = 0; i < sample.size(); ++i)
        for (size_t j = i + 1; j < sample.size(); j += 3) {
            Element e{{{Rat(1), sample[i]}, {Rat(-2), sample[j]}}};
            CHECK(solver.contains(e) == oracle.member(e));
        }
}

} // namespace

TEST_CASE("paths") {
    Quiver q = linear_a(3);
    Path p = path_of(q, {"a0", "a1"});
    CHECK(path_composable(q, p));
    CHECK(path_source(q, p) == 0);
    CHECK(path_target(q, p) == 2);
    CHECK(path_names(q, p) == std::vector<std::string>{"a0", "a1"});

    Path bad;
    bad.arrows = {1, 0}; // a1 then a0: not composable
    CHECK(!path_composable(q, bad));
    CHECK_THROWS_AS(path_source(q, bad), invalid_input);
    CHECK_THROWS_AS(path_source(q, Path{}), invalid_input);
}

TEST_CASE("make_relation normalization") {
    Quiver q(4); // two parallel length-2 paths 0 -> 3
    q.add_arrow("a", 0, 1);
    q.add_arrow("b", 1, 3);
    q.add_arrow("c", 0, 2);
    q.add_arrow("d", 2, 3);
    Path ab = path_of(q, {"a", "b"});
    Path cd = path_of(q, {"c", "d"});

    SUBCASE("zero relation gets coefficient one") {
        Relation r = make_relation(q, {{Rat(7), ab}});
        CHECK(r.kind == RelationKind::zero);
        CHECK(r.terms[0].coeff == 1);
    }
    SUBCASE("any two-term relation normalizes to (1, -1), smaller path first") {
        Relation r = make_relation(q, {{Rat(5), cd}, {Rat(2), ab}});
        CHECK(r.kind == RelationKind::commutativity);
        CHECK(r.terms[0].path == ab); // arrow indices {0,1} < {2,3}
        CHECK(r.terms[0].coeff == 1);
        CHECK(r.terms[1].coeff == -1);
        CHECK(r == make_commutativity_relation(q, cd, ab));
    }
    SUBCASE("duplicate paths combine") {
        Relation r = make_relation(q, {{Rat(1), ab}, {Rat(1), ab}});
        CHECK(r.kind == RelationKind::zero);
        CHECK_THROWS_AS(make_relation(q, {{Rat(1), ab}, {Rat(-1), ab}}),
                        invalid_input);
    }
    SUBCASE("guards") {
        Path a;
        a.arrows = {0};
        CHECK_THROWS_AS(make_relation(q, {{Rat(1), a}}), invalid_input); // too short
        Quiver q2 = linear_a(4);
        CHECK_THROWS_AS(make_relation(q2, {{Rat(1), path_of(q2, {"a0", "a1"})},
                                           {Rat(-1), path_of(q2, {"a1", "a2"})}}),
                        invalid_input); // not parallel
    }
}

TEST_CASE("full cycles") {
    SUBCASE("oriented cycles have exactly one, themselves") {
        for (int n = 3; n <= 6; ++n) {
            auto cycles = enumerate_full_cycles(oriented_cycle(n));
            REQUIRE(cycles.size() == 1);
            CHECK(cycles[0].length() == n);
        }
    }
    SUBCASE("a chord disqualifies the long cycle") {
        Quiver q = oriented_cycle(4);
        q.add_arrow("e", 0, 2); // chord
        auto cycles = enumerate_full_cycles(q);
        REQUIRE(cycles.size() == 1);
        CHECK(cycles[0].length() == 3);
        std::set<std::string> names;
        for (int a : cycles[0].arrows) names.insert(q.arrow(a).name);
        CHECK(names == std::set<std::string>{"e", "a2", "a3"});
    }
    SUBCASE("the five-vertex output quiver has three triangles") {
        Quiver g = gamma_d5();
        auto cycles = enumerate_full_cycles(g);
        REQUIRE(cycles.size() == 3);
        for (const auto& c : cycles) CHECK(c.length() == 3);
    }
    SUBCASE("acyclic quivers have none") {
        CHECK(enumerate_full_cycles(linear_a(5)).empty());
    }
}

TEST_CASE("shortest paths per arrow") {
    Quiver g = gamma_d5();
    auto names = [&](int arrow) {
        std::vector<std::vector<std::string>> r;
        for (const auto& p : shortest_paths(g, arrow)) r.push_back(path_names(g, p));
        return r;
    };
    CHECK(names(g.arrow_index("alpha")) ==
          std::vector<std::vector<std::string>>{{"gamma", "f_1"}});
    CHECK(names(g.arrow_index("beta")) ==
          std::vector<std::vector<std::string>>{{"delta", "f_1"}, {"epsilon", "f_2"}});
    CHECK(names(g.arrow_index("f_2")) ==
          std::vector<std::vector<std::string>>{{"beta", "epsilon"}});
    CHECK(shortest_paths(linear_a(3), 0).empty());
}

TEST_CASE("relation synthesis from the quiver alone") {
    SUBCASE("acyclic: no relations") {
        AlgebraPresentation p = synthesize_relations(linear_a(4));
        CHECK(p.relations.empty());
    }
    SUBCASE("oriented n-cycle: n zero relations of length n-1") {
        for (int n = 3; n <= 6; ++n) {
            AlgebraPresentation p = synthesize_relations(oriented_cycle(n));
            REQUIRE(p.relations.size() == static_cast<size_t>(n));
            for (const auto& r : p.relations) {
                CHECK(r.kind == RelationKind::zero);
                CHECK(r.terms[0].path.length() == n - 1);
            }
        }
    }
    SUBCASE("the five-vertex output quiver, by hand") {
        Quiver g = gamma_d5();
        AlgebraPresentation p = synthesize_relations(g);
        REQUIRE(p.relations.size() == 7);
        auto has = [&](const Relation& want) {
            return std::count(p.relations.begin(), p.relations.end(), want) == 1;
        };
        CHECK(has(make_zero_relation(g, path_of(g, {"gamma", "f_1"}))));
        CHECK(has(make_commutativity_relation(g, path_of(g, {"delta", "f_1"}),
                                              path_of(g, {"epsilon", "f_2"}))));
        CHECK(has(make_zero_relation(g, path_of(g, {"f_1", "alpha"}))));
        CHECK(has(make_zero_relation(g, path_of(g, {"f_1", "beta"}))));
        CHECK(has(make_zero_relation(g, path_of(g, {"f_2", "beta"}))));
        CHECK(has(make_commutativity_relation(g, path_of(g, {"alpha", "gamma"}),
                                              path_of(g, {"beta", "delta"}))));
        CHECK(has(make_zero_relation(g, path_of(g, {"beta", "epsilon"}))));
    }
    SUBCASE("rejects non-Dynkin input") {
        Quiver kron(2);
        kron.add_arrow("a", 0, 1);
        kron.add_arrow("b", 0, 1);
        CHECK_THROWS_AS(synthesize_relations(kron), invalid_input);
        Quiver two(2);
        two.add_arrow("a", 0, 1);
        two.add_arrow("b", 1, 0);
        CHECK_THROWS_AS(synthesize_relations(two), invalid_input);
    }
}

TEST_CASE("nilpotency bounds") {
    SUBCASE("acyclic: one more than the longest path") {
        AlgebraPresentation p;
        p.quiver = linear_a(3);
        CHECK(nilpotency_bound(p) == 3);
        CHECK(p.nilpotency == 3);

        AlgebraPresentation single;
        single.quiver = Quiver(1);
        CHECK(nilpotency_bound(single) == 1);
    }
    SUBCASE("oriented n-cycle with synthesized relations: n-1") {
        for (int n = 3; n <= 6; ++n) {
            AlgebraPresentation p = synthesize_relations(oriented_cycle(n));
            CHECK(nilpotency_bound(p) == n - 1);
        }
    }
    SUBCASE("cycle without relations is not admissible") {
        AlgebraPresentation p;
        p.quiver = oriented_cycle(3);
        CHECK_THROWS_WITH_AS(nilpotency_bound(p), doctest::Contains("cap"),
                             indeterminate_error);
    }
    SUBCASE("bound above the cap reports the cap") {
        AlgebraPresentation p;
        p.quiver = linear_a(30); // bound would be 30
        CHECK_THROWS_AS(nilpotency_bound(p), indeterminate_error);
        CHECK(nilpotency_bound(p, 40) == 30);
    }
}

TEST_CASE("ideal membership against the dense oracle") {
    SUBCASE("linear A3 with the composition killed") {
        AlgebraPresentation p;
        p.quiver = linear_a(3);
        p.relations.push_back(
            make_zero_relation(p.quiver, path_of(p.quiver, {"a0", "a1"})));
        cross_check(p, 2);
    }
    SUBCASE("square with a commutativity relation") {
        Quiver q(4);
        q.add_arrow("a", 0, 1);
        q.add_arrow("b", 1, 3);
        q.add_arrow("c", 0, 2);
        q.add_arrow("d", 2, 3);
        AlgebraPresentation p;
        p.quiver = q;
        p.relations.push_back(make_commutativity_relation(
            q, path_of(q, {"a", "b"}), path_of(q, {"c", "d"})));
        cross_check(p, 3);

        IdealSolver s(p);
        CHECK(!s.contains(unit(path_of(q, {"a", "b"})))); // each path nonzero
        Element diff{{{Rat(3), path_of(q, {"a", "b"})},
                      {Rat(-3), path_of(q, {"c", "d"})}}};
        CHECK(s.contains(diff));
    }
    SUBCASE("oriented 4-cycle with synthesized relations") {
        cross_check(synthesize_relations(oriented_cycle(4)), 3);
    }
    SUBCASE("the five-vertex output quiver") {
        cross_check(synthesize_relations(gamma_d5()), 3);
    }
    SUBCASE("redundant generators do not disturb membership") {
        AlgebraPresentation p;
        p.quiver = linear_a(4);
        p.relations.push_back(
            make_zero_relation(p.quiver, path_of(p.quiver, {"a0", "a1"})));
        p.relations.push_back(
            make_zero_relation(p.quiver, path_of(p.quiver, {"a0", "a1", "a2"})));
        cross_check(p, 3);
    }
}

TEST_CASE("zero-in-algebra on oriented cycles") {
    for (int n = 3; n <= 5; ++n) {
        Quiver q = oriented_cycle(n);
        AlgebraPresentation p = synthesize_relations(q);
        for (int start = 0; start < n; ++start) {
            Path shorter, longer;
            for (int k = 0; k < n - 2; ++k) shorter.arrows.push_back((start + k) % n);
            for (int k = 0; k < n - 1; ++k) longer.arrows.push_back((start + k) % n);
            CHECK(!is_zero_in_algebra(p, unit(shorter)));
            CHECK(is_zero_in_algebra(p, unit(longer)));
        }
    }
}

TEST_CASE("minimality of relations") {
    SUBCASE("a lone zero relation is minimal") {
        AlgebraPresentation p;
        p.quiver = linear_a(3);
        Relation r = make_zero_relation(p.quiver, path_of(p.quiver, {"a0", "a1"}));
        p.relations.push_back(r);
        CHECK(is_minimal_relation(p, r));
    }
    SUBCASE("a consequence by composition is not") {
        AlgebraPresentation p;
        p.quiver = linear_a(4);
        Relation ab = make_zero_relation(p.quiver, path_of(p.quiver, {"a0", "a1"}));
        Relation abc =
            make_zero_relation(p.quiver, path_of(p.quiver, {"a0", "a1", "a2"}));
        p.relations.push_back(ab);
        p.relations.push_back(abc);
        CHECK(is_minimal_relation(p, ab));
        CHECK(!is_minimal_relation(p, abc));
    }
    SUBCASE("an extended commutativity relation is not") {
        Quiver q(5); // square 0 -> {1,2} -> 3 plus tail 3 -> 4
        q.add_arrow("a", 0, 1);
        q.add_arrow("b", 1, 3);
        q.add_arrow("c", 0, 2);
        q.add_arrow("d", 2, 3);
        q.add_arrow("e", 3, 4);
        AlgebraPresentation p;
        p.quiver = q;
        Relation comm = make_commutativity_relation(q, path_of(q, {"a", "b"}),
                                                    path_of(q, {"c", "d"}));
        p.relations.push_back(comm);
        CHECK(is_minimal_relation(p, comm));
        Relation extended = make_commutativity_relation(
            q, path_of(q, {"a", "b", "e"}), path_of(q, {"c", "d", "e"}));
        CHECK(!is_minimal_relation(p, extended));
    }
    SUBCASE("membership is a precondition") {
        AlgebraPresentation p;
        p.quiver = linear_a(3);
        p.relations.push_back(
            make_zero_relation(p.quiver, path_of(p.quiver, {"a0", "a1"})));
        Quiver q2 = linear_a(4);
        AlgebraPresentation p2;
        p2.quiver = q2;
        p2.relations = p.relations;
        Relation outside =
            make_zero_relation(q2, path_of(q2, {"a1", "a2"}));
        CHECK_THROWS_AS(is_minimal_relation(p2, outside), invalid_input);
    }
    SUBCASE("every synthesized relation of small class members is minimal") {
        std::vector<Quiver> seeds{linear_a(4), oriented_cycle(4)};
        for (const auto& seed : seeds)
            for (const auto& m : mutation_class(seed).members) {
                AlgebraPresentation p = synthesize_relations(m);
                IdealSolver s(p);
                for (const auto& r : p.relations) CHECK(is_minimal_relation(s, r));
            }
    }
}

TEST_CASE("synthesized commutativity relations have disjoint interiors") {
    Quiver d5_tree(5);
    d5_tree.add_arrow("a", 0, 1);
    d5_tree.add_arrow("b", 0, 2);
    d5_tree.add_arrow("c", 0, 3);
    d5_tree.add_arrow("d", 3, 4);
    std::vector<Quiver> seeds{linear_a(4), linear_a(5), d5_tree};
    for (const auto& seed : seeds)
        for (const auto& m : mutation_class(seed).members)
            for (const auto& r : synthesize_relations(m).relations) {
                if (r.kind != RelationKind::commutativity) continue;
                auto interior = [&](const Path& p) {
                    std::set<int> v;
                    for (size_t i = 1; i < p.arrows.size(); ++i)
                        v.insert(m.arrow(p.arrows[i]).source);
                    return v;
                };
                std::set<int> left = interior(r.terms[0].path);
                std::set<int> shared;
                for (int v : interior(r.terms[1].path))
                    if (left.count(v)) shared.insert(v);
                CHECK(shared.empty());
            }
}

TEST_CASE("presentation parsing and serialization") {
    const std::string text =
        "vertices 1 2 3 4\n"
        "arrow a: 1 -> 2\n"
        "arrow b: 2 -> 3\n"
        "arrow c: 3 -> 4\n"
        "rel zero: a b\n";
    AlgebraPresentation p = parse_presentation(text);
    CHECK(p.quiver.num_arrows() == 3);
    REQUIRE(p.relations.size() == 1);
    CHECK(p.relations[0].kind == RelationKind::zero);

    SUBCASE("text round trip") {
        std::string out = serialize_presentation(p, QuiverFormat::text);
        CHECK(out == text);
    }
    SUBCASE("json round trip") {
        std::string js = serialize_presentation(p, QuiverFormat::json);
        AlgebraPresentation back = presentation_from_json_text(js);
        CHECK(back.quiver == p.quiver);
        CHECK(back.relations.size() == 1);
        CHECK(back.relations[0] == p.relations[0]);
    }
    SUBCASE("comm relations parse with an equals sign") {
        AlgebraPresentation sq = parse_presentation(
            "vertices 1 2 3 4\narrow a: 1 -> 2\narrow b: 2 -> 4\n"
            "arrow c: 1 -> 3\narrow d: 3 -> 4\nrel comm: a b = c d\n");
        REQUIRE(sq.relations.size() == 1);
        CHECK(sq.relations[0].kind == RelationKind::commutativity);
    }
    SUBCASE("errors carry positions") {
        CHECK_THROWS_WITH_AS(
            parse_presentation("vertices 1 2\narrow a: 1 -> 2\nrel zero: nope\n"),
            doctest::Contains("line 3"), parse_error);
        CHECK_THROWS_AS(
            parse_presentation("vertices 1 2\narrow a: 1 -> 2\nrel zero: a\n"),
            parse_error); // too short
        CHECK_THROWS_AS(
            parse_presentation("vertices 1 2\narrow a: 1 -> 2\nrel comm: a = a\n"),
            parse_error);
    }
}
