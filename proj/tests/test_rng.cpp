#include <catch2/catch_amalgamated.hpp>

#include "pointproc/rng.hpp"

using namespace pointproc;

TEST_CASE("mix64 matches the splitmix64 reference stream") {
  // First three outputs of splitmix64 seeded with 0 (Vigna's reference).
  CHECK(mix64(0, 0) == UINT64_C(0xE220A8397B1DCDAF));
  CHECK(mix64(0, 1) == UINT64_C(0x6E789E6AA1B965F4));
  CHECK(mix64(0, 2) == UINT64_C(0x06C45D188009454F));

  SplitMix64 rng(0);
  CHECK(rng.next() == mix64(0, 0));
  CHECK(rng.next() == mix64(0, 1));
  CHECK(rng.next() == mix64(0, 2));
}

TEST_CASE("seed states derive children purely") {
  SeedState root{1234, 0};
  CHECK(root.child(7).effective() == root.child(7).effective());
  CHECK(root.child(0).effective() != root.child(1).effective());
  CHECK(root.child(3).effective() == SeedState{root.effective(), 3}.effective());
}

TEST_CASE("unit doubles stay in range") {
  SplitMix64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}
