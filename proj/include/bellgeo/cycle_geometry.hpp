#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace bellgeo {

/// Exact k! for k <= 33 (fits in 128 bits).
unsigned __int128 factorial_exact(int k);

/// Volume of a regular v-simplex with edge length s: s^v / v! * sqrt((v+1) / 2^v).
template <typename Scalar = double>
Scalar simplex_volume(int v, Scalar s) {
  using std::pow;
  using std::sqrt;
  return pow(s, Scalar(v)) / static_cast<Scalar>(factorial_exact(v)) *
         sqrt(Scalar(v + 1) / pow(Scalar(2), Scalar(v)));
}

/// Volume of one nonlocal pyramid cut from [-1,1]^(2n): 2^(2n) / (2n)!.
/// Throws NumericalFailure if the base-times-height form disagrees beyond 1e-12.
double pyramid_volume(int n);

/// Same value as base_area * height / (2n): regular (2n-1)-simplex of edge
/// sqrt(8) at distance 2 / sqrt(2n) from the cut vertex.
template <typename Scalar = double>
Scalar pyramid_volume_from_base(int n) {
  using std::sqrt;
  const Scalar base = simplex_volume<Scalar>(2 * n - 1, sqrt(Scalar(8)));
  const Scalar height = Scalar(2) / sqrt(Scalar(2 * n));
  return height * base / Scalar(2 * n);
}

/// Local fraction of the full-correlator cycle box: 1 - 2^(2n-1) / (2n)!.
/// Valid for 2 <= n <= 12.
double local_volume_ratio(int n);

/// Sign vectors of length 2n as bitmasks (bit k set = entry k is -1).
struct VertexPartition {
  std::vector<std::uint32_t> local;     // even number of -1 entries
  std::vector<std::uint32_t> nonlocal;  // odd number of -1 entries
};

VertexPartition cycle_vertex_partition(int n);

/// Bitmask to a +-1 vector of length 2n.
std::vector<double> sign_vector(std::uint32_t mask, int n);

}  // namespace bellgeo
