#include "bellgeo/cycle_geometry.hpp"

#include "bellgeo/errors.hpp"

#include <bit>
#include <sstream>

namespace bellgeo {

unsigned __int128 factorial_exact(int k) {
  if (k < 0 || k > 33) throw InvalidArgument("factorial_exact supports 0 <= k <= 33");
  unsigned __int128 f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<unsigned>(i);
  return f;
}

double pyramid_volume(int n) {
  if (n < 2 || n > 12) throw InvalidArgument("pyramid_volume supports 2 <= n <= 12");
  const double exact = std::ldexp(1.0, 2 * n) / static_cast<double>(factorial_exact(2 * n));
  const double via_base = pyramid_volume_from_base<double>(n);
  if (std::abs(via_base - exact) > 1e-12 * std::max(1.0, exact)) {
    std::ostringstream os;
    os << "pyramid volume cross-check failed for n=" << n << ": " << exact << " vs " << via_base;
    throw NumericalFailure(os.str());
  }
  return exact;
}

double local_volume_ratio(int n) {
  if (n < 2 || n > 12) throw InvalidArgument("local_volume_ratio supports 2 <= n <= 12");
  // 2^(2n-1) pyramids of volume 2^(2n)/(2n)! removed from a box of volume 2^(2n).
  // Numerator and denominator are exact integers; one extended division keeps
  // the result correctly rounded.
  const unsigned __int128 f = factorial_exact(2 * n);
  const unsigned __int128 kept = f - (static_cast<unsigned __int128>(1) << (2 * n - 1));
  return static_cast<double>(static_cast<long double>(kept) / static_cast<long double>(f));
}

VertexPartition cycle_vertex_partition(int n) {
  if (n < 2 || n > 12) throw InvalidArgument("cycle_vertex_partition supports 2 <= n <= 12");
  VertexPartition out;
  const std::uint32_t count = std::uint32_t(1) << (2 * n);
  out.local.reserve(count / 2);
  out.nonlocal.reserve(count / 2);
  for (std::uint32_t mask = 0; mask < count; ++mask)
    (std::popcount(mask) % 2 == 0 ? out.local : out.nonlocal).push_back(mask);
  return out;
}

std::vector<double> sign_vector(std::uint32_t mask, int n) {
  std::vector<double> v(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < 2 * n; ++k) v[static_cast<std::size_t>(k)] = (mask >> k) & 1 ? -1.0 : 1.0;
  return v;
}

}  // namespace bellgeo
