#pragma once

// Text formats: scalar and polynomial expressions, and matrix files.
//
// Matrix file:
//   # comment
//   root i: x^2 + 1          adjoins a root of a monic irreducible quadratic
//   matrix 2
//   0 1
//   -1 0
// Entries are whitespace-separated expressions without spaces; they may use
// declared root names, + - * / ^ and parentheses.

#include <string>

#include "bigalois/freealg.hpp"
#include "bigalois/matrix.hpp"

namespace bigalois {

/// Parses an expression over `alphabet` whose constants may use the
/// generators of `tower` by name.
NcPoly parse_poly(const std::string& text, const AlphabetPtr& alphabet, const TowerPtr& tower);

Scalar parse_scalar(const std::string& text, const TowerPtr& tower = Tower::rationals());

struct MatrixFile {
  TowerPtr tower;
  Matrix matrix;
};

MatrixFile parse_matrix_file(const std::string& text, const TowerPtr& base = Tower::rationals());

/// Parses and checks invertibility, reporting the matrix line on failure.
FormMatrix parse_form_file(const std::string& text, const TowerPtr& base = Tower::rationals());

std::string write_matrix_file(const Matrix& m);

std::string read_text_file(const std::string& path);

}  // namespace bigalois
