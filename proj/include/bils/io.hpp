#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bils/linalg.hpp"

namespace bils {

struct Box;
struct LinearInstance;

/// Matrix text format, shared project-wide:
///   line 1: "m n"
///   then m lines of n decimal numbers, single spaces, no trailing blanks.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& a);
void write_matrix_file(const std::string& path, const Matrix& a);

/// Plain vector: whitespace-separated reals.
std::vector<double> read_vector_file(const std::string& path);

/// Box file: n lines "l_i u_i".
Box read_box_file(const std::string& path);

/// Instance dump: matrix block, then "x <ints>", "sigma <real>", "y <reals>".
void write_instance(std::ostream& out, const LinearInstance& inst);
LinearInstance read_instance(std::istream& in);

std::string format_real(double v);

} // namespace bils
