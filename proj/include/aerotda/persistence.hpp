#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "aerotda/diagram.hpp"
#include "aerotda/filtration.hpp"

namespace aerotda {

/// Sparse boundary matrix over the two-element field, one column per simplex
/// in filtration order. Column j lists the row indices of its facets.
struct BoundaryMatrix {
  std::vector<std::vector<std::size_t>> columns;
  std::vector<int> dims;

  /// Throws InvalidFiltration if a facet is missing or does not precede its coface.
  static BoundaryMatrix from_filtration(const Filtration& f);
};

/// Simplex-index pairs (birth < death) plus unpaired (essential) births.
struct PersistencePairing {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> essentials;
};

/// Standard column reduction with clearing. Columns of the top dimension are
/// reduced first and the reduction stops once every cycle-creating simplex of
/// the dimension below has been paired; remaining columns are reported as
/// essential.
PersistencePairing reduce(const Filtration& f);

/// All intervals of dimension 0 and 1, including zero-length ones.
std::vector<PersistencePoint> pairing_intervals(const PersistencePairing& p, const Filtration& f);

/// Diagram of dimensions 0 and 1 with zero-persistence intervals dropped.
PersistenceDiagram pairing_to_diagram(const PersistencePairing& p, const Filtration& f);

/// H0 diagram by Kruskal-style merging of sorted edges.
PersistenceDiagram h0_unionfind(const DistanceMatrix& d, double max_value = kInfinity);

/// VR filtration, reduction and diagram in one call.
PersistenceDiagram vr_persistence(const DistanceMatrix& d, int max_dim = kMaxSimplexDim,
                                  double max_value = kInfinity);

/// Vertex cap for brute_force_homology.
inline constexpr std::size_t kBruteForceMaxVertices = 12;

/// Betti number of the sublevel complex at `value`, computed from ranks of
/// boundary maps by Gaussian elimination. Refuses complexes with more than
/// kBruteForceMaxVertices vertices.
int brute_force_homology(const Filtration& f, double value, int k);

}  // namespace aerotda
