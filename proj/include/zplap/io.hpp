#pragma once

#include <iosfwd>
#include <string>

#include "zplap/matrix.hpp"

namespace zplap {

class ParseError : public Error {
 public:
  using Error::Error;
};

// %%ZpMatrix / p <prime> / rows <m> cols <n> / 1-indexed "i j v" lines.
// Lines starting with '%' after the header and blank lines are ignored.
SparseMatrix read_matrix(std::istream& in);
// Same format, read as symmetric: (i, j) fills both triangles. A file may
// list both (i, j) and (j, i) only if the values agree.
SpSymMatrix read_symmetric(std::istream& in);
void write_matrix(std::ostream& out, const SparseMatrix& m);
// Lists i <= j only.
void write_symmetric(std::ostream& out, const SpSymMatrix& m);

struct VectorFile {
  Prime p;
  Vec v;
};

// %%ZpVector / p <prime> / len <n> / 1-indexed "i v" lines; missing entries are 0.
VectorFile read_vector(std::istream& in);
void write_vector(std::ostream& out, const Vec& v, Prime p);

// Extension-field variants: header %%ZpExtMatrix / %%ZpExtVector, a second
// line "p <prime> t <t>", entries carry the pair "a b" for a + b sqrt(t).
void write_ext_symmetric(std::ostream& out, const ExtSymMatrix& m);
void write_ext_vector(std::ostream& out, const ExtVec& v, const ExtField& f);

SparseMatrix read_matrix_file(const std::string& path);
SpSymMatrix read_symmetric_file(const std::string& path);
VectorFile read_vector_file(const std::string& path);

}  // namespace zplap
