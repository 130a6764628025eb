#include "mncat/diagram.hpp"

namespace mncat {

bool square_well_formed(const Square& s) {
  return s.top.dom == s.left.dom && s.top.cod == s.right.dom &&
         s.left.cod == s.bottom.dom && s.right.cod == s.bottom.cod;
}

bool square_commutes(const Square& s) {
  if (!square_well_formed(s)) return false;
  return compose(s.right, s.top) == compose(s.bottom, s.left);
}

void require_commuting_square(const Square& s, const char* where) {
  if (!square_well_formed(s))
    throw CategoryError(std::string(where) + ": square endpoints do not match");
  if (!square_commutes(s))
    throw CategoryError(std::string(where) + ": square does not commute");
}

bool cube_well_formed(const Cube& c) {
  return square_well_formed(c.bottom_face()) &&
         square_well_formed(c.top_face()) &&
         square_well_formed(c.left_face()) &&
         square_well_formed(c.back_face()) &&
         square_well_formed(c.front_face()) &&
         square_well_formed(c.right_face());
}

bool cube_commutes(const Cube& c) {
  return square_commutes(c.bottom_face()) && square_commutes(c.top_face()) &&
         square_commutes(c.left_face()) && square_commutes(c.back_face()) &&
         square_commutes(c.front_face()) && square_commutes(c.right_face());
}

}  // namespace mncat
