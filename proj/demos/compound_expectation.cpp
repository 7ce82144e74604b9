// The compound-distribution example: a Poisson number of iid values, read as
// a point process on the one-point space. Its expected count factors into
// the product of the two expectations, which shows up identically through
// the exact engine, the intensity combinators and plain sampling.

#include <cstdio>

#include "pointproc/pointproc.hpp"

int main() {
  using namespace pointproc;

  auto counts = from_nat_dist(poisson_trunc(3.0, 1e-9));
  auto values = from_nat_dist(
      DiscreteDist<std::uint64_t>::from_weights({{1, 0.5}, {2, 0.5}}));
  auto compound = pp_bind(counts, [values](const Point&) { return values; });

  Region star = Region::points({Point::star()});
  double compositional = compound.intensity().eval(star);

  const BagDist& exact = *compound.exact();
  double series = 0;
  for (std::size_t k = 1; k <= max_support_bag_size(exact); ++k)
    series += static_cast<double>(k) * prob_count(exact, star, k);

  auto mc = intensity_empirical_stats(compound, star, 10000, SeedState{7, 0});

  std::printf("compositional: %.9f\n", compositional);
  std::printf("exact series:  %.9f\n", series);
  std::printf("monte carlo:   %.4f +- %.4f\n", mc.mean, mc.stderr_);
  return 0;
}
