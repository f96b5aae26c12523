#include "zplap/io.hpp"

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

namespace zplap {

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next line that is neither blank nor a comment.
  std::optional<std::string> next(bool allow_comments = true) {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (allow_comments && line[first] == '%') continue;
      return line.substr(first);
    }
    return std::nullopt;
  }

  std::string need(const char* what, bool allow_comments = true) {
    auto l = next(allow_comments);
    if (!l) fail(std::string("missing ") + what);
    return *l;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(lineno_) + ": " + msg);
  }

 private:
  std::istream& in_;
  std::size_t lineno_ = 0;
};

u64 parse_u64(LineReader& r, std::istringstream& ss, const char* what) {
  std::string tok;
  if (!(ss >> tok)) r.fail(std::string("missing ") + what);
  try {
    std::size_t used = 0;
    if (tok.empty() || tok[0] == '-' || tok[0] == '+') throw std::invalid_argument(tok);
    const u64 v = std::stoull(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    r.fail(std::string("bad ") + what + " '" + tok + "'");
  }
}

void expect_keyword(LineReader& r, std::istringstream& ss, const char* kw) {
  std::string tok;
  if (!(ss >> tok) || tok != kw) r.fail(std::string("expected '") + kw + "'");
}

void expect_end(LineReader& r, std::istringstream& ss) {
  std::string extra;
  if (ss >> extra) r.fail("trailing token '" + extra + "'");
}

Prime parse_prime_line(LineReader& r) {
  std::istringstream ss(r.need("prime line"));
  expect_keyword(r, ss, "p");
  const u64 p = parse_u64(r, ss, "prime");
  expect_end(r, ss);
  try {
    return Prime(p);
  } catch (const Error& e) {
    r.fail(e.what());
  }
}

struct Triplets {
  Prime p;
  std::size_t rows, cols;
  std::vector<std::tuple<std::size_t, std::size_t, u64>> entries;
};

Triplets read_triplets(std::istream& in) {
  LineReader r(in);
  if (r.need("header", false) != "%%ZpMatrix") r.fail("expected %%ZpMatrix header");
  const Prime p = parse_prime_line(r);
  std::istringstream dims(r.need("dimension line"));
  expect_keyword(r, dims, "rows");
  const u64 rows = parse_u64(r, dims, "row count");
  expect_keyword(r, dims, "cols");
  const u64 cols = parse_u64(r, dims, "column count");
  expect_end(r, dims);
  Triplets t{p, rows, cols, {}};
  while (auto line = r.next()) {
    std::istringstream ss(*line);
    const u64 i = parse_u64(r, ss, "row index");
    const u64 j = parse_u64(r, ss, "column index");
    const u64 v = parse_u64(r, ss, "value");
    expect_end(r, ss);
    if (i < 1 || i > rows || j < 1 || j > cols) r.fail("index out of range");
    if (v >= p.value()) r.fail("value not reduced mod p");
    t.entries.emplace_back(i - 1, j - 1, v);
  }
  return t;
}

template <class T>
T open_and(const std::string& path, T (*reader)(std::istream&)) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  return reader(f);
}

}  // namespace

SparseMatrix read_matrix(std::istream& in) {
  const Triplets t = read_triplets(in);
  SparseMatrix m(t.p, t.rows, t.cols);
  for (const auto& [i, j, v] : t.entries) {
    if (!m.get(i, j).is_zero()) throw ParseError("duplicate entry");
    m.set(i, j, Fp(v, t.p));
  }
  return m;
}

SpSymMatrix read_symmetric(std::istream& in) {
  const Triplets t = read_triplets(in);
  if (t.rows != t.cols) throw ParseError("symmetric matrix must be square");
  SpSymMatrix m(t.p, t.rows);
  for (const auto& [i, j, v] : t.entries) {
    const Fp cur = m.get(i, j);
    if (!cur.is_zero() && cur.value() != v) throw ParseError("asymmetric entries");
    m.set(i, j, Fp(v, t.p));
  }
  return m;
}

void write_matrix(std::ostream& out, const SparseMatrix& m) {
  out << "%%ZpMatrix\np " << m.prime().value() << "\nrows " << m.rows() << " cols " << m.cols() << "\n";
  for (const auto& [ij, v] : m.entries()) out << ij.first + 1 << ' ' << ij.second + 1 << ' ' << v << '\n';
}

void write_symmetric(std::ostream& out, const SpSymMatrix& m) {
  out << "%%ZpMatrix\np " << m.prime().value() << "\nrows " << m.dim() << " cols " << m.dim() << "\n";
  for (const auto& [ij, v] : m.upper_entries()) out << ij.first + 1 << ' ' << ij.second + 1 << ' ' << v.value() << '\n';
}

VectorFile read_vector(std::istream& in) {
  LineReader r(in);
  if (r.need("header", false) != "%%ZpVector") r.fail("expected %%ZpVector header");
  const Prime p = parse_prime_line(r);
  std::istringstream ls(r.need("length line"));
  expect_keyword(r, ls, "len");
  const u64 n = parse_u64(r, ls, "length");
  expect_end(r, ls);
  VectorFile f{p, zeros(p, n)};
  std::vector<char> seen(n, 0);
  while (auto line = r.next()) {
    std::istringstream ss(*line);
    const u64 i = parse_u64(r, ss, "index");
    const u64 v = parse_u64(r, ss, "value");
    expect_end(r, ss);
    if (i < 1 || i > n) r.fail("index out of range");
    if (v >= p.value()) r.fail("value not reduced mod p");
    if (seen[i - 1]) r.fail("duplicate index");
    seen[i - 1] = 1;
    f.v[i - 1] = Fp(v, p);
  }
  return f;
}

void write_vector(std::ostream& out, const Vec& v, Prime p) {
  out << "%%ZpVector\np " << p.value() << "\nlen " << v.size() << "\n";
  for (std::size_t i = 0; i < v.size(); ++i) out << i + 1 << ' ' << v[i].value() << '\n';
}

void write_ext_symmetric(std::ostream& out, const ExtSymMatrix& m) {
  const ExtField& f = m.field();
  out << "%%ZpExtMatrix\np " << f.prime().value() << " t " << f.t().value() << "\nrows " << m.dim() << " cols "
      << m.dim() << "\n";
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (auto it = m.row(i).lower_bound(i); it != m.row(i).end(); ++it) {
      out << i + 1 << ' ' << it->first + 1 << ' ' << it->second.a().value() << ' ' << it->second.b().value() << '\n';
    }
  }
}

void write_ext_vector(std::ostream& out, const ExtVec& v, const ExtField& f) {
  out << "%%ZpExtVector\np " << f.prime().value() << " t " << f.t().value() << "\nlen " << v.size() << "\n";
  for (std::size_t i = 0; i < v.size(); ++i) out << i + 1 << ' ' << v[i].a().value() << ' ' << v[i].b().value() << '\n';
}

SparseMatrix read_matrix_file(const std::string& path) { return open_and<SparseMatrix>(path, read_matrix); }

SpSymMatrix read_symmetric_file(const std::string& path) { return open_and<SpSymMatrix>(path, read_symmetric); }

VectorFile read_vector_file(const std::string& path) { return open_and<VectorFile>(path, read_vector); }

}  // namespace zplap
