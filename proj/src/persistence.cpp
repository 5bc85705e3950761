#include "aerotda/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <limits>
#include <string>
#include <tuple>
#include <unordered_map>

#include "aerotda/union_find.hpp"

namespace aerotda {

namespace {

constexpr std::size_t kNoColumn = std::numeric_limits<std::size_t>::max();

using Column = std::vector<std::size_t>;

// col <- col + other over the two-element field; both sorted ascending.
void add_column(Column& col, const Column& other, Column& scratch) {
  scratch.clear();
  std::ranges::set_symmetric_difference(col, other, std::back_inserter(scratch));
  col.swap(scratch);
}

// Number of edges that close a cycle rather than merge two components.
std::size_t count_cycle_edges(const Filtration& f) {
  std::unordered_map<int, std::size_t> vertex_slot;
  for (const auto& e : f) {
    if (e.simplex.dim() == 0) vertex_slot.emplace(e.simplex[0], vertex_slot.size());
  }
  UnionFind uf(vertex_slot.size());
  std::size_t cycles = 0;
  for (const auto& e : f) {
    if (e.simplex.dim() != 1) continue;
    if (!uf.unite(vertex_slot.at(e.simplex[0]), vertex_slot.at(e.simplex[1]))) ++cycles;
  }
  return cycles;
}

// Rank over the two-element field of a matrix given as packed bit columns.
int gf2_rank(std::vector<std::vector<std::uint64_t>> cols) {
  int rank = 0;
  std::unordered_map<std::size_t, std::size_t> pivot_col;  // lowest set bit -> column
  auto low = [](const std::vector<std::uint64_t>& c) -> std::size_t {
    for (std::size_t w = c.size(); w-- > 0;) {
      if (c[w] != 0) return w * 64 + (63 - static_cast<std::size_t>(__builtin_clzll(c[w])));
    }
    return kNoColumn;
  };
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::size_t l = low(cols[j]);
    while (l != kNoColumn) {
      auto it = pivot_col.find(l);
      if (it == pivot_col.end()) break;
      const auto& p = cols[it->second];
      for (std::size_t w = 0; w < p.size(); ++w) cols[j][w] ^= p[w];
      l = low(cols[j]);
    }
    if (l != kNoColumn) {
      pivot_col.emplace(l, j);
      ++rank;
    }
  }
  return rank;
}

}  // namespace

BoundaryMatrix BoundaryMatrix::from_filtration(const Filtration& f) {
  BoundaryMatrix m;
  m.columns.resize(f.size());
  m.dims.resize(f.size());
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const Simplex& s = f[j].simplex;
    m.dims[j] = s.dim();
    if (s.dim() < kMaxSimplexDim) index.emplace(s.key(), j);
  }
  for (std::size_t j = 0; j < f.size(); ++j) {
    const Simplex& s = f[j].simplex;
    if (s.dim() == 0) continue;
    Column& col = m.columns[j];
    for (const Simplex& facet : s.facets()) {
      auto it = index.find(facet.key());
      if (it == index.end() || it->second >= j) {
        fail(ErrorKind::InvalidFiltration,
             "boundary matrix: a facet of simplex #" + std::to_string(j) +
                 " is missing or appears after it");
      }
      col.push_back(it->second);
    }
    std::ranges::sort(col);
  }
  return m;
}

PersistencePairing reduce(const Filtration& f) {
  const BoundaryMatrix m = BoundaryMatrix::from_filtration(f);
  const std::size_t n = f.size();
  const int top = f.max_dim();

  std::vector<std::size_t> pivot_of_row(n, kNoColumn);
  std::vector<Column> reduced(n);
  std::vector<bool> paired(n, false);
  PersistencePairing out;
  Column col, scratch;

  for (int d = top; d >= 1; --d) {
    std::size_t budget = kNoColumn;
    if (d == 2) budget = count_cycle_edges(f);
    std::size_t found = 0;
    for (std::size_t j = 0; j < n && found != budget; ++j) {
      if (m.dims[j] != d || paired[j]) continue;  // cleared: j is a birth
      col = m.columns[j];
      while (!col.empty() && pivot_of_row[col.back()] != kNoColumn) {
        add_column(col, reduced[pivot_of_row[col.back()]], scratch);
      }
      if (col.empty()) continue;
      const std::size_t low = col.back();
      pivot_of_row[low] = j;
      paired[low] = paired[j] = true;
      out.pairs.emplace_back(low, j);
      reduced[j].swap(col);
      ++found;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!paired[j]) out.essentials.push_back(j);
  }
  std::ranges::sort(out.pairs);
  return out;
}

std::vector<PersistencePoint> pairing_intervals(const PersistencePairing& p, const Filtration& f) {
  const std::size_t n = f.size();
  std::vector<bool> seen(n, false);
  auto mark = [&](std::size_t i) {
    if (i >= n || seen[i]) {
      fail(ErrorKind::ContractViolation, "pairing does not match the filtration (index " +
                                             std::to_string(i) + ")");
    }
    seen[i] = true;
  };
  std::vector<PersistencePoint> out;
  for (const auto& [b, d] : p.pairs) {
    mark(b);
    mark(d);
    if (b >= d) fail(ErrorKind::ContractViolation, "pairing has birth index >= death index");
    const int dim = f[b].simplex.dim();
    if (dim <= 1) out.push_back({f[b].value, f[d].value, dim});
  }
  for (const std::size_t e : p.essentials) {
    mark(e);
    const int dim = f[e].simplex.dim();
    if (dim <= 1) out.push_back({f[e].value, kInfinity, dim});
  }
  if (2 * p.pairs.size() + p.essentials.size() != n) {
    fail(ErrorKind::ContractViolation, "pairing covers " +
                                           std::to_string(2 * p.pairs.size() + p.essentials.size()) +
                                           " simplices, filtration has " + std::to_string(n));
  }
  return out;
}

PersistenceDiagram pairing_to_diagram(const PersistencePairing& p, const Filtration& f) {
  PersistenceDiagram d;
  for (const auto& pt : pairing_intervals(p, f)) {
    if (pt.death > pt.birth) d.add(pt);
  }
  return d;
}

PersistenceDiagram h0_unionfind(const DistanceMatrix& d, double max_value) {
  const std::size_t n = d.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) <= max_value) edges.emplace_back(d(i, j), i, j);
    }
  }
  std::ranges::sort(edges);
  UnionFind uf(n);
  PersistenceDiagram out;
  for (const auto& [w, i, j] : edges) {
    if (uf.unite(i, j) && w > 0.0) out.add({0.0, w, 0});
    if (uf.components() == 1) break;
  }
  for (std::size_t c = 0; c < uf.components(); ++c) out.add({0.0, kInfinity, 0});
  return out;
}

PersistenceDiagram vr_persistence(const DistanceMatrix& d, int max_dim, double max_value) {
  const Filtration f = vietoris_rips(d, max_dim, max_value);
  return pairing_to_diagram(reduce(f), f);
}

int brute_force_homology(const Filtration& f, double value, int k) {
  if (k < 0 || k > 1) {
    fail(ErrorKind::UnsupportedDimension, "brute_force_homology supports k in {0, 1}");
  }
  const std::vector<Simplex> complex = f.sublevel(value);
  std::vector<std::vector<Simplex>> by_dim(kMaxSimplexDim + 1);
  for (const Simplex& s : complex) by_dim[s.dim()].push_back(s);
  if (by_dim[0].size() > kBruteForceMaxVertices) {
    fail(ErrorKind::ContractViolation, "brute_force_homology: sublevel complex has " +
                                           std::to_string(by_dim[0].size()) +
                                           " vertices, limit is " +
                                           std::to_string(kBruteForceMaxVertices));
  }
  // Boundary map from dimension q to q - 1 as packed bit columns.
  auto boundary = [&](int q) {
    std::vector<std::vector<std::uint64_t>> cols;
    if (q == 0 || q > kMaxSimplexDim) return cols;
    std::unordered_map<std::uint64_t, std::size_t> row;
    for (std::size_t i = 0; i < by_dim[q - 1].size(); ++i) row.emplace(by_dim[q - 1][i].key(), i);
    const std::size_t words = (by_dim[q - 1].size() + 63) / 64;
    for (const Simplex& s : by_dim[q]) {
      std::vector<std::uint64_t> c(words, 0);
      for (const Simplex& facet : s.facets()) {
        const std::size_t r = row.at(facet.key());
        c[r / 64] ^= std::uint64_t{1} << (r % 64);
      }
      cols.push_back(std::move(c));
    }
    return cols;
  };
  const int chains = static_cast<int>(by_dim[k].size());
  const int rank_k = gf2_rank(boundary(k));
  const int rank_k1 = gf2_rank(boundary(k + 1));
  return chains - rank_k - rank_k1;
}

}  // namespace aerotda
