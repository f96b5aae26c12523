#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "zplap/gadget.hpp"
#include "zplap/reduce.hpp"
#include "zplap/schur.hpp"
#include "zplap/solve.hpp"
#include "zplap/symbolic.hpp"

namespace py = pybind11;
using namespace zplap;

namespace {

using Dense = std::vector<std::vector<u64>>;
using Triplet = std::tuple<std::size_t, std::size_t, u64>;

Vec to_vec(Prime p, const std::vector<u64>& v) {
  Vec out;
  out.reserve(v.size());
  for (u64 x : v) out.push_back(Fp(x % p.value(), p));
  return out;
}

std::vector<u64> from_vec(const Vec& v) {
  std::vector<u64> out;
  out.reserve(v.size());
  for (const Fp& x : v) out.push_back(x.value());
  return out;
}

SparseMatrix to_sparse(Prime p, const Dense& a) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  SparseMatrix m(p, a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != cols) throw py::value_error("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) {
      if (a[i][j] % p.value()) m.set(i, j, Fp(a[i][j] % p.value(), p));
    }
  }
  return m;
}

SpSymMatrix to_symmetric(Prime p, const Dense& a) {
  SpSymMatrix m(p, a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) throw py::value_error("matrix must be square");
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i][j] % p.value() != a[j][i] % p.value()) throw py::value_error("matrix must be symmetric");
      if (i <= j && a[i][j] % p.value()) m.set(i, j, Fp(a[i][j] % p.value(), p));
    }
  }
  return m;
}

Dense dense(const SpSymMatrix& m) {
  Dense out(m.dim(), std::vector<u64>(m.dim(), 0));
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (const auto& [j, v] : m.row(i)) out[i][j] = v;
  }
  return out;
}

std::vector<Triplet> triplets(const SpSymMatrix& m) {
  std::vector<Triplet> out;
  for (const auto& [ij, v] : m.upper_entries()) out.emplace_back(ij.first, ij.second, v.value());
  return out;
}

py::dict stats_dict(const ReductionStats& s) {
  py::dict d;
  d["nnz_in"] = s.nnz_in;
  d["nnz_out"] = s.nnz_out;
  d["maxdeg_out"] = s.maxdeg_out;
  d["maxdeg_weighted_out"] = s.maxdeg_weighted_out;
  d["replacements"] = s.replacements;
  d["micros"] = s.micros;
  return d;
}

py::dict space_dict(const AffineSpace<Fp>& s) {
  py::dict d;
  d["empty"] = s.empty;
  d["dim"] = s.dim;
  d["particular"] = from_vec(s.particular);
  std::vector<std::vector<u64>> basis;
  for (const auto& v : s.basis) basis.push_back(from_vec(v));
  d["basis"] = basis;
  return d;
}

// A reduction together with the system it came from, so it can check itself.
struct PyReduction {
  LinSystem<Fp> input;
  Reduction red;

  bool verify() const {
    return spaces_equal_under_map(solve_all(input), solve_all(red.system()), red.back);
  }
};

struct PyExtReduction {
  LinSystem<Fp> input;
  ExtReduction red;

  bool verify() const {
    return spaces_equal_under_map(solve_all(input), solve_all(red.system()), red.back, red.matrix.field());
  }
};

PyReduction reduce_general(const std::string& to, u64 p, const Dense& a, const std::vector<u64>& b) {
  const Prime q(p);
  const SparseMatrix m = to_sparse(q, a);
  const Vec rhs = to_vec(q, b);
  if (to == "laplacian") return {make_system(m, rhs), general_to_laplacian(m, rhs)};
  if (to == "walk") return {make_system(m, rhs), general_to_walk(m, rhs)};
  throw py::value_error("unknown target '" + to + "' for a general matrix");
}

PyReduction reduce_laplacian(const std::string& to, u64 p, const Dense& l, const std::vector<u64>& b) {
  const Prime q(p);
  const SpSymMatrix m = to_symmetric(q, l);
  const Vec rhs = to_vec(q, b);
  if (to == "unit") return {make_system(m, rhs), laplacian_to_unitweight(m, rhs)};
  if (to == "lowdeg") return {make_system(m, rhs), laplacian_to_lowdegree(m, rhs)};
  throw py::value_error("unknown target '" + to + "' for a Laplacian");
}

SymMatrix mult3(u64 p, const Dense& a) { return reduce_to_mult3(to_sparse(Prime(p), a)); }

}  // namespace

PYBIND11_MODULE(_zplap, m) {
  m.doc() = "Exact Laplacian reductions over prime fields";

  // Translators run newest first, so the base class goes in first.
  const auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ZeroRow>(m, "ZeroRowError", base);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<TooLarge>(m, "TooLargeError", base);

  m.def("is_prime", &is_prime, py::arg("n"));
  m.def("prev_prime", &prev_prime, py::arg("n"), "Largest prime strictly below n.");

  py::class_<Circuit>(m, "Circuit")
      .def_property_readonly("p", [](const Circuit& c) { return c.prime().value(); })
      .def_property_readonly("dim", &Circuit::dim)
      .def_property_readonly("nnz", &Circuit::nnz)
      .def_property_readonly("max_degree", &Circuit::max_degree)
      .def_property_readonly("weight", [](const Circuit& c) { return c.weight().value(); })
      .def_property_readonly("resistance", [](const Circuit& c) { return c.resistance().value(); })
      .def("is_unit_weight", &Circuit::is_unit_weight)
      .def("verify", [](const Circuit& c) { return verify_circuit(c); })
      .def("laplacian", [](const Circuit& c) { return dense(c.laplacian()); })
      .def("entries", [](const Circuit& c) { return triplets(c.laplacian()); },
           "Upper-triangle (i, j, value) triplets, 0-indexed.");

  m.def(
      "build_resistance",
      [](u64 p, u64 r, bool naive) { return naive ? build_resistance_naive(Prime(p), r) : build_resistance(Prime(p), r); },
      py::arg("p"), py::arg("r"), py::arg("naive") = false,
      "Unit-weight circuit whose terminal resistance is r mod p.");

  m.def(
      "schur",
      [](u64 p, const Dense& l, const std::vector<std::size_t>& terminals) {
        return dense(schur(to_symmetric(Prime(p), l), terminals));
      },
      py::arg("p"), py::arg("matrix"), py::arg("terminals"));

  m.def(
      "solve",
      [](u64 p, const Dense& a, const std::vector<u64>& b) {
        const Prime q(p);
        return space_dict(solve_all(make_system(to_sparse(q, a), to_vec(q, b))));
      },
      py::arg("p"), py::arg("matrix"), py::arg("rhs"),
      "Full solution set {empty, dim, particular, basis} of A x = b.");

  py::class_<PyReduction>(m, "Reduction")
      .def_property_readonly("name", [](const PyReduction& r) { return r.red.name; })
      .def_property_readonly("dim", [](const PyReduction& r) { return r.red.matrix.dim(); })
      .def_property_readonly("rhs", [](const PyReduction& r) { return from_vec(r.red.rhs); })
      .def_property_readonly("backmap_kind", [](const PyReduction& r) { return std::string(to_string(r.red.back.kind)); })
      .def_property_readonly("stats", [](const PyReduction& r) { return stats_dict(r.red.stats); })
      .def("matrix", [](const PyReduction& r) { return dense(r.red.matrix); })
      .def("entries", [](const PyReduction& r) { return triplets(r.red.matrix); })
      .def("is_laplacian", [](const PyReduction& r) { return is_laplacian(r.red.matrix); })
      .def("is_unit_weight", [](const PyReduction& r) { return is_unit_weight(r.red.matrix); })
      .def("back", [](const PyReduction& r, const std::vector<u64>& y) {
        return from_vec(r.red.back.apply(to_vec(r.red.matrix.prime(), y)));
      })
      .def("verify", &PyReduction::verify, "Compare solution sets through the back-map.");

  py::class_<PyExtReduction>(m, "ExtReduction")
      .def_property_readonly("name", [](const PyExtReduction& r) { return r.red.name; })
      .def_property_readonly("dim", [](const PyExtReduction& r) { return r.red.matrix.dim(); })
      .def_property_readonly("t", [](const PyExtReduction& r) { return r.red.matrix.field().t().value(); })
      .def_property_readonly("stats", [](const PyExtReduction& r) { return stats_dict(r.red.stats); })
      .def("entries",
           [](const PyExtReduction& r) {
             std::vector<std::tuple<std::size_t, std::size_t, u64, u64>> out;
             const auto& mat = r.red.matrix;
             for (std::size_t i = 0; i < mat.dim(); ++i) {
               for (auto it = mat.row(i).lower_bound(i); it != mat.row(i).end(); ++it) {
                 out.emplace_back(i, it->first, it->second.a().value(), it->second.b().value());
               }
             }
             return out;
           },
           "Upper-triangle (i, j, a, b) entries meaning a + b sqrt(t).")
      .def("verify", &PyExtReduction::verify);

  m.def("general_to_laplacian",
        [](u64 p, const Dense& a, const std::vector<u64>& b) { return reduce_general("laplacian", p, a, b); },
        py::arg("p"), py::arg("matrix"), py::arg("rhs"));
  m.def("general_to_walk",
        [](u64 p, const Dense& a, const std::vector<u64>& b) { return reduce_general("walk", p, a, b); },
        py::arg("p"), py::arg("matrix"), py::arg("rhs"));
  m.def("laplacian_to_unitweight",
        [](u64 p, const Dense& l, const std::vector<u64>& b) { return reduce_laplacian("unit", p, l, b); },
        py::arg("p"), py::arg("matrix"), py::arg("rhs"));
  m.def("laplacian_to_lowdegree",
        [](u64 p, const Dense& l, const std::vector<u64>& b) { return reduce_laplacian("lowdeg", p, l, b); },
        py::arg("p"), py::arg("matrix"), py::arg("rhs"));
  m.def(
      "laplacian_to_normalized_walk",
      [](u64 p, const Dense& l, const std::vector<u64>& b) {
        const Prime q(p);
        const SpSymMatrix mat = to_symmetric(q, l);
        const Vec rhs = to_vec(q, b);
        return PyExtReduction{make_system(mat, rhs), laplacian_to_normalized_walk(mat, rhs)};
      },
      py::arg("p"), py::arg("matrix"), py::arg("rhs"));

  m.def(
      "symdet",
      [](u64 p, const Dense& a, int trials, u64 seed) {
        const SymMatrix s = mult3(p, a);
        py::dict d;
        d["N"] = s.dim();
        d["pdeg"] = s.pdeg();
        d["maxm"] = s.maxm();
        d["nnz"] = s.nnz();
        try {
          d["det_zero_exact"] = det_zero_exact(s);
        } catch (const TooLarge&) {
          d["det_zero_exact"] = py::none();
        }
        std::mt19937_64 rng(seed);
        try {
          d["det_zero_randomized"] = det_zero_randomized(s, trials, rng);
        } catch (const DomainError&) {
          d["det_zero_randomized"] = py::none();
        }
        return d;
      },
      py::arg("p"), py::arg("matrix"), py::arg("trials") = 20, py::arg("seed") = 0x5eed,
      "Multiplicity-3 reduction of a square matrix plus zero tests of its determinant.");
}
