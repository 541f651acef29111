#include <doctest.h>

#include "ctslim/morphology.hpp"
#include "ctslim/rng.hpp"
#include "oracles.hpp"

using namespace ctslim;

TEST_CASE("dilate basics") {
  BinaryMask empty(8, 8);
  CHECK(dilate(empty, 1).count() == 0);

  BinaryMask point(11, 11);
  point.at(5, 5) = 1;
  const BinaryMask d = dilate(point, 1);
  CHECK(d.count() == 9);
  for (int i = 4; i <= 6; ++i)
    for (int j = 4; j <= 6; ++j) CHECK(d.at(i, j) == 1);

  CHECK_THROWS_AS(dilate(point, 0), Error);
}

TEST_CASE("dilate matches the brute-force neighborhood scan") {
  Xoshiro256 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMask mask = oracles::random_mask(16, 16, 0.15, rng);
    const int radius = 1 + static_cast<int>(rng.below(4));
    CHECK(dilate(mask, radius).bits == oracles::brute_dilate(mask, radius).bits);
  }
}

TEST_CASE("dilate is extensive and monotone") {
  Xoshiro256 rng(22);
  const BinaryMask a = oracles::random_mask(20, 20, 0.1, rng);
  BinaryMask b = a;
  for (int trial = 0; trial < 10; ++trial)
    b.at(static_cast<int>(rng.below(20)), static_cast<int>(rng.below(20))) = 1;

  const BinaryMask da = dilate(a, 2), db = dilate(b, 2);
  for (std::size_t i = 0; i < a.bits.size(); ++i) {
    if (a.bits[i]) CHECK(da.bits[i] == 1);   // extensive
    if (da.bits[i]) CHECK(db.bits[i] == 1);  // monotone, since a <= b
  }
}

TEST_CASE("dilate commutes with translation away from borders") {
  BinaryMask mask(32, 32);
  mask.at(10, 10) = mask.at(11, 12) = mask.at(12, 10) = 1;
  BinaryMask shifted(32, 32);
  shifted.at(15, 13) = shifted.at(16, 15) = shifted.at(17, 13) = 1;

  const BinaryMask dm = dilate(mask, 2), ds = dilate(shifted, 2);
  for (int i = 0; i < 25; ++i)
    for (int j = 0; j < 25; ++j) CHECK(dm.at(i, j) == ds.at(i + 5, j + 3));
}

TEST_CASE("fill_holes basics") {
  // Solid square: unchanged.
  BinaryMask solid(10, 10);
  for (int i = 3; i <= 6; ++i)
    for (int j = 3; j <= 6; ++j) solid.at(i, j) = 1;
  CHECK(fill_holes(solid).bits == solid.bits);

  // One-pixel-thick ring: fills to the solid square.
  BinaryMask ring(10, 10);
  for (int i = 2; i <= 7; ++i) ring.at(i, 2) = ring.at(i, 7) = 1;
  for (int j = 2; j <= 7; ++j) ring.at(2, j) = ring.at(7, j) = 1;
  BinaryMask expected(10, 10);
  for (int i = 2; i <= 7; ++i)
    for (int j = 2; j <= 7; ++j) expected.at(i, j) = 1;
  CHECK(fill_holes(ring).bits == expected.bits);
}

TEST_CASE("fill_holes matches the flood-fill oracle") {
  Xoshiro256 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMask mask = oracles::random_mask(16, 16, 0.35, rng);
    CHECK(fill_holes(mask).bits == oracles::flood_fill_holes(mask).bits);
  }
}

TEST_CASE("fill_holes is idempotent and extensive") {
  Xoshiro256 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const BinaryMask mask = oracles::random_mask(12, 12, 0.4, rng);
    const BinaryMask once = fill_holes(mask);
    CHECK(fill_holes(once).bits == once.bits);
    for (std::size_t i = 0; i < mask.bits.size(); ++i)
      if (mask.bits[i]) CHECK(once.bits[i] == 1);
  }
}

TEST_CASE("slice_area counts enclosed cavity pixels") {
  // Solid block: no cavity.
  BinaryMask solid(16, 16);
  for (int i = 2; i <= 12; ++i)
    for (int j = 2; j <= 12; ++j) solid.at(i, j) = 1;
  CHECK(slice_area(solid, 1) == 0);

  // Empty mask: nothing to fill.
  CHECK(slice_area(BinaryMask(16, 16), 1) == 0);

  // Ring enclosing a 4x4 hole on a 16x16 grid: compare against the oracle
  // composition on the dilated mask.
  BinaryMask ring(16, 16);
  for (int i = 5; i <= 10; ++i)
    for (int j = 5; j <= 10; ++j)
      if (i == 5 || i == 10 || j == 5 || j == 10) ring.at(i, j) = 1;
  const int radius = 1;
  const BinaryMask dilated = oracles::brute_dilate(ring, radius);
  const BinaryMask filled = oracles::flood_fill_holes(dilated);
  std::int64_t expected = 0;
  for (std::size_t i = 0; i < filled.bits.size(); ++i)
    expected += filled.bits[i] && !dilated.bits[i];
  CHECK(expected == 4);  // dilation eats one cell of the 4x4 hole per side
  CHECK(slice_area(ring, radius) == expected);
}

TEST_CASE("slice_area is translation invariant away from borders") {
  BinaryMask ring(24, 24), moved(24, 24);
  for (int i = 4; i <= 11; ++i)
    for (int j = 4; j <= 11; ++j)
      if (i == 4 || i == 11 || j == 4 || j == 11) {
        ring.at(i, j) = 1;
        moved.at(i + 6, j + 5) = 1;
      }
  CHECK(slice_area(ring, 1) == slice_area(moved, 1));
}
