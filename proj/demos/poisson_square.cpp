// Build the rate-10 Poisson process on the unit square, print a couple of
// draws and compare its closed-form intensity with a Monte Carlo estimate.

#include <cstdio>

#include "pointproc/pointproc.hpp"

int main() {
  using namespace pointproc;

  auto square = Region::rect(0, 0, 1, 1);
  auto pi = poisson_pp(10.0, square);

  SeedState root{2024, 0};
  for (std::uint64_t i = 0; i < 2; ++i) {
    auto bag = pi.sample(root.child(i));
    std::printf("draw %llu (%zu points):\n", (unsigned long long)i, bag.size());
    std::printf("%s", io::bag_csv(bag).c_str());
  }

  auto w = Region::rect(0, 0, 0.5, 0.5);
  auto st = intensity_empirical_stats(pi, w, 10000, root);
  std::printf("expected count in the quarter square: %.4f (closed form %.1f)\n",
              st.mean, pi.intensity().eval(w));
  return 0;
}
