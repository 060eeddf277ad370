// triangulation.hpp
// Triangulations of a convex polygon as an independent combinatorial model
// of type-A cluster structures: diagonal flips mirror quiver mutation.
// Deliberately shares no machinery with the mutation module beyond the
// Quiver type itself, so it can serve as an oracle in tests.

#ifndef CQ_TRIANGULATION_HPP
#define CQ_TRIANGULATION_HPP

#include <vector>

#include "cq/quiver.hpp"

namespace cq {

// Chord of a convex m-gon with vertices 0..m-1 in counterclockwise order;
// endpoints non-adjacent, stored with a < b.
struct Diagonal {
    int a;
    int b;

    bool operator==(const Diagonal& o) const { return a == o.a && b == o.b; }
    bool operator<(const Diagonal& o) const {
        return a != o.a ? a < o.a : b < o.b;
    }
};

// Maximal set of pairwise non-crossing diagonals (always m-3 of them),
// kept sorted.
struct Triangulation {
    int m;
    std::vector<Diagonal> diagonals;

    bool operator==(const Triangulation& o) const {
        return m == o.m && diagonals == o.diagonals;
    }
    bool operator<(const Triangulation& o) const {
        return m != o.m ? m < o.m : diagonals < o.diagonals;
    }
};

// All m(m-3)/2 diagonals, sorted. Throws invalid_input for m < 4.
std::vector<Diagonal> diagonals_of(int m);

// Open-segment intersection: endpoints strictly interleave around the
// polygon. Shared endpoints do not cross.
bool crossing(const Diagonal& d1, const Diagonal& d2);

// Every triangulation exactly once, in sorted order. Throws invalid_input
// for m < 4.
std::vector<Triangulation> enumerate_triangulations(int m);

// The quiver of a triangulation: one vertex per diagonal (in sorted order,
// labeled "a-b"), and for each internal triangle one arrow between each
// pair of its diagonal sides, oriented counterclockwise (side (a,b) ->
// side (b,c) -> side (a,c) -> side (a,b) for a triangle a < b < c).
Quiver quiver_of(const Triangulation& t);

// Replaces d by the other diagonal of the quadrilateral formed by the two
// triangles adjacent to d. Involution. Throws invalid_input if d is not
// in t.
Triangulation flip(const Triangulation& t, const Diagonal& d);

} // namespace cq

#endif
