#pragma once
// Commuting squares and cubes.

#include "mncat/core.hpp"

namespace mncat {

// Square convention: right . top == bottom . left, i.e.
//
//        top
//     X ----> Z
//     |       |
// left|       | right
//     v       v
//     Y ----> W
//       bottom
//
// For a pushout square the span is (left, top) and the cocone (bottom, right);
// for a pullback square the cospan is (right, bottom) and the cone (top, left).
struct Square {
  Morphism top, left, right, bottom;

  bool operator==(const Square&) const = default;
};

// Endpoint compatibility of the four arrows.
bool square_well_formed(const Square& s);
bool square_commutes(const Square& s);
// Throws CategoryError when malformed.
void require_commuting_square(const Square& s, const char* where);

// Commutative cube over a bottom square (m, n, p, q) with a top square
// (m', n', p', q') and vertical arrows x, y, z, w:
//
//   bottom: m : X -> Y, n : X -> Z, q : Y -> W, p : Z -> W  (q.m == p.n)
//   top:    m': X'-> Y', n': X'-> Z', q': Y'-> W', p': Z'-> W'
//   vertical: x : X'-> X, y : Y'-> Y, z : Z'-> Z, w : W'-> W
struct Cube {
  Morphism m, n, p, q;      // bottom face
  Morphism mp, np, pp, qp;  // top face (primed)
  Morphism x, y, z, w;      // verticals

  Square bottom_face() const { return {n, m, p, q}; }
  Square top_face() const { return {np, mp, pp, qp}; }
  Square left_face() const { return {mp, x, y, m}; }    // y.m' == m.x
  Square back_face() const { return {np, x, z, n}; }    // z.n' == n.x
  Square front_face() const { return {qp, y, w, q}; }   // w.q' == q.y
  Square right_face() const { return {pp, z, w, p}; }   // w.p' == p.z

  bool operator==(const Cube&) const = default;
};

bool cube_well_formed(const Cube& c);
bool cube_commutes(const Cube& c);

}  // namespace mncat
