#pragma once

#include <string>

#include "algebra.hpp"
#include "lattice.hpp"
#include "relations.hpp"

namespace corrfun {

// Parsers for the line-oriented text formats. Errors carry the offending
// line number.

// "corr <target> <source>" followed by target rows of 0/1 characters.
Correspondence parse_correspondence_text(const std::string& text);

// "lattice <size>" followed by "cover a b" lines.
Lattice parse_lattice_text(const std::string& text);

// Algebra functor truncated at pairs: dimensions, units and structure
// constants per size, then action matrices for a generating list of
// correspondences. The actions of all remaining correspondences between
// sets of size at most two are filled in by composition and every algebra
// law is validated on load.
//
//   algebra
//   dims <d0> <d1> <d2>
//   unit <n>
//   <one line of d_n rationals>
//   mul <n>
//   <d_n lines of d_n*d_n rationals; column order pairs (i,j) -> i*d_n+j>
//   action
//   corr <y> <x>
//   <y rows of 0/1>
//   <d_y lines of d_x rationals>
AlgebraFunctorRep parse_algebra_text(const std::string& text,
                                     const VerifyPolicy& policy = {});

// Whole file contents; unreadable paths raise an io error.
std::string read_file(const std::string& path);

// Catalog name or path to a lattice file.
Lattice resolve_lattice_input(const std::string& spec);

// "ft:<lattice input>" built at the given bound, or a path to an algebra
// file (whose bound is fixed by the format).
AlgebraFunctorRep resolve_algebra_input(const std::string& spec, int bound,
                                        const VerifyPolicy& policy = {});

}  // namespace corrfun
