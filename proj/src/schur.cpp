#include "zplap/schur.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "zplap/gadget.hpp"

namespace zplap {

namespace {

using WorkRow = std::unordered_map<std::size_t, u64>;

// Generic elimination of the vertices in `rest` from the dense matrix over
// rest + terminals. Rows may be swapped within the eliminated block, which
// leaves the complement unchanged.
SpSymMatrix dense_fallback(const std::vector<WorkRow>& rows, const std::vector<std::size_t>& rest,
                           const std::vector<std::size_t>& terminals, Prime prime) {
  const u64 p = prime.value();
  std::vector<std::size_t> order = rest;
  order.insert(order.end(), terminals.begin(), terminals.end());
  const std::size_t k = order.size(), r = rest.size();
  std::vector<std::vector<u64>> d(k, std::vector<u64>(k, 0));
  for (std::size_t a = 0; a < k; ++a) {
    const WorkRow& row = rows[order[a]];
    for (std::size_t b = 0; b < k; ++b) {
      auto it = row.find(order[b]);
      if (it != row.end()) d[a][b] = it->second;
    }
  }
  for (std::size_t s = 0; s < r; ++s) {
    std::size_t piv = s;
    while (piv < r && d[piv][s] == 0) ++piv;
    if (piv == r) throw SingularBlock();
    std::swap(d[s], d[piv]);
    const u64 inv = inv_mod(d[s][s], p);
    for (std::size_t a = s + 1; a < k; ++a) {
      if (d[a][s] == 0) continue;
      const u64 f = mul_mod(d[a][s], inv, p);
      for (std::size_t b = s; b < k; ++b) {
        if (d[s][b]) d[a][b] = sub_mod(d[a][b], mul_mod(f, d[s][b], p), p);
      }
    }
  }
  SpSymMatrix out(prime, terminals.size());
  for (std::size_t a = 0; a < terminals.size(); ++a) {
    for (std::size_t b = a; b < terminals.size(); ++b) {
      u64 v = d[r + a][r + b];
      if (v != d[r + b][r + a]) throw std::logic_error("asymmetric complement");
      out.set(a, b, Fp::raw(v, p));
    }
  }
  return out;
}

}  // namespace

std::vector<std::size_t> first_indices(std::size_t k) {
  std::vector<std::size_t> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = i;
  return t;
}

SpSymMatrix schur(const SpSymMatrix& m, const std::vector<std::size_t>& terminals) {
  const std::size_t n = m.dim();
  const u64 p = m.prime().value();
  if (terminals.empty()) throw std::invalid_argument("empty terminal set");
  std::vector<char> is_terminal(n, 0);
  for (std::size_t k = 0; k < terminals.size(); ++k) {
    if (terminals[k] >= n) throw std::out_of_range("terminal index");
    if (k && terminals[k] <= terminals[k - 1]) throw std::invalid_argument("terminals must be sorted and distinct");
    is_terminal[terminals[k]] = 1;
  }

  std::vector<WorkRow> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].reserve(m.row(i).size());
    for (const auto& [j, v] : m.row(i)) rows[i][j] = v;
  }
  std::vector<char> alive(n, 1);

  // Min-degree order; a vertex with a zero pivot waits until a later
  // elimination touches it.
  using Item = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t v = 0; v < n; ++v) {
    if (!is_terminal[v]) heap.push({rows[v].size(), v});
  }
  std::vector<std::pair<std::size_t, u64>> nbrs;
  while (!heap.empty()) {
    auto [deg, v] = heap.top();
    heap.pop();
    if (!alive[v] || deg != rows[v].size()) continue;
    auto dit = rows[v].find(v);
    if (dit == rows[v].end()) continue;
    const u64 inv = inv_mod(dit->second, p);
    nbrs.clear();
    for (const auto& [u, a] : rows[v]) {
      if (u != v) nbrs.push_back({u, a});
    }
    std::sort(nbrs.begin(), nbrs.end());
    for (const auto& [u, a] : nbrs) rows[u].erase(v);
    rows[v].clear();
    alive[v] = 0;
    for (std::size_t x = 0; x < nbrs.size(); ++x) {
      const auto [u, a] = nbrs[x];
      const u64 au = mul_mod(a, inv, p);
      for (std::size_t y = x; y < nbrs.size(); ++y) {
        const auto [w, b] = nbrs[y];
        const u64 delta = mul_mod(au, b, p);
        u64 cur = 0;
        auto it = rows[u].find(w);
        if (it != rows[u].end()) cur = it->second;
        const u64 nv = sub_mod(cur, delta, p);
        if (nv == 0) {
          rows[u].erase(w);
          if (u != w) rows[w].erase(u);
        } else {
          rows[u][w] = nv;
          if (u != w) rows[w][u] = nv;
        }
      }
    }
    for (const auto& [u, a] : nbrs) {
      if (!is_terminal[u]) heap.push({rows[u].size(), u});
    }
  }

  std::vector<std::size_t> rest;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v] && !is_terminal[v]) rest.push_back(v);
  }
  if (!rest.empty()) return dense_fallback(rows, rest, terminals, m.prime());

  std::vector<std::size_t> pos(n, SIZE_MAX);
  for (std::size_t k = 0; k < terminals.size(); ++k) pos[terminals[k]] = k;
  SpSymMatrix out(m.prime(), terminals.size());
  for (std::size_t k = 0; k < terminals.size(); ++k) {
    for (const auto& [j, v] : rows[terminals[k]]) {
      if (pos[j] >= k && pos[j] != SIZE_MAX) out.set(k, pos[j], Fp::raw(v, p));
    }
  }
  return out;
}

void replace_edge_in_place(SpSymMatrix& l, std::size_t i0, std::size_t j0, const Circuit& r) {
  if (i0 == j0) throw std::invalid_argument("replace_edge needs an off-diagonal entry");
  const Fp w = l.edge_weight(i0, j0);
  if (w.is_zero()) throw std::invalid_argument("replace_edge on a missing edge");
  if (!(r.weight() == w)) throw WeightMismatch();
  const SpSymMatrix& c = r.laplacian();
  const std::size_t first = l.add_vertices(c.dim() - 2);
  auto at = [&](std::size_t k) { return k == 0 ? i0 : k == 1 ? j0 : first + k - 2; };
  l.add_edge(i0, j0, -w);
  for (const auto& [ij, v] : c.upper_entries()) l.add(at(ij.first), at(ij.second), v);
}

EdgeReplacement replace_edge(const SpSymMatrix& l, std::size_t i0, std::size_t j0, const Circuit& r) {
  LaplacianView check(l);
  EdgeReplacement out{l, l.dim()};
  replace_edge_in_place(out.u, i0, j0, r);
  return out;
}

SpSymMatrix star_mesh(const SpSymMatrix& l, std::size_t center) {
  LaplacianView check(l);
  const Prime p = l.prime();
  const std::size_t n = l.dim();
  if (center >= n) throw std::out_of_range("center");
  std::vector<std::pair<std::size_t, Fp>> leaves;
  Fp total = Fp::zero(p);
  for (const auto& [u, v] : l.row(center)) {
    if (u == center) continue;
    Fp w = -Fp::raw(v, p.value());
    leaves.push_back({u, w});
    total += w;
  }
  if (total.is_zero()) throw SingularCenter();
  SpSymMatrix work = l;
  for (const auto& [u, w] : leaves) work.add_edge(center, u, -w);
  const Fp ti = total.inv();
  for (std::size_t a = 0; a < leaves.size(); ++a) {
    for (std::size_t b = a + 1; b < leaves.size(); ++b) {
      work.add_edge(leaves[a].first, leaves[b].first, leaves[a].second * leaves[b].second * ti);
    }
  }
  std::vector<std::size_t> keep;
  for (std::size_t v = 0; v < n; ++v) {
    if (v != center) keep.push_back(v);
  }
  return work.principal(keep);
}

bool check_commutativity(const SpSymMatrix& l, const std::vector<std::size_t>& t1, const std::vector<std::size_t>& t2) {
  std::vector<std::size_t> inner;
  for (std::size_t v : t1) {
    auto it = std::lower_bound(t2.begin(), t2.end(), v);
    if (it == t2.end() || *it != v) throw std::invalid_argument("T1 must be a subset of T2");
    inner.push_back(static_cast<std::size_t>(it - t2.begin()));
  }
  return schur(l, t1) == schur(schur(l, t2), inner);
}

}  // namespace zplap
