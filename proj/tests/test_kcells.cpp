#include <doctest.h>

#include <random>

#include "padicint/error.hpp"
#include "padicint/kcells.hpp"

using namespace padicint;

namespace {

using Rng = std::mt19937_64;

long pick(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

KCell cell(long p, Rational center, std::optional<long> lower, std::optional<long> upper, long modulus, long residue,
           int M, long xi) {
  return KCell{std::move(center), lower, upper, modulus, residue, M, xi, Prime(p)};
}

// A bounded cell with an integer center; membership is decided by t mod p^(upper + M).
KCell random_bounded(Rng& rng, long p) {
  const int M = static_cast<int>(pick(rng, 1, 2));
  const long mod_pm = to_long(Prime(p).pow(static_cast<unsigned long>(M)));
  long xi = 0;
  while (xi == 0 || xi % p == 0) xi = pick(rng, 1, mod_pm - 1);
  const long lower = pick(rng, -1, 2);
  const long modulus = pick(rng, 1, 2);
  return cell(p, Rational(pick(rng, 0, 2 * p * p)), lower, lower + pick(rng, 1, 3), modulus, pick(rng, 0, modulus - 1),
              M, xi);
}

int depth_for(const KCell& c) { return static_cast<int>(*c.upper) + c.ac_depth; }

}  // namespace

TEST_CASE("membership") {
  const KCell unit = cell(2, 0, -1, std::nullopt, 1, 0, 1, 1);
  CHECK(kcell_contains(Rational(3), unit));
  CHECK_FALSE(kcell_contains(Rational(0), unit));
  CHECK(kcell_contains(PAdicPoint(Rational(54), Prime(3)), cell(3, 0, 2, 4, 1, 0, 1, 2)));
  CHECK_FALSE(kcell_contains(Rational(27), cell(3, 0, 2, 4, 1, 0, 1, 2)));
  CHECK(kcell_contains(Rational(0), cell(3, 0, std::nullopt, std::nullopt, 1, 0, 1, 0)));
}

TEST_CASE("measures") {
  const AqElem m = kcell_measure(cell(2, 0, -1, std::nullopt, 1, 0, 1, 1));
  CHECK(m == AqElem::q_power(-1) * AqElem::inverse_factor(1));
  CHECK(m.evaluate(Prime(2)) == 1);
  const AqElem ball = kcell_measure(cell(3, 0, 2, 4, 1, 0, 1, 2));
  CHECK(ball == AqElem::q_power(-4));
  CHECK(ball.evaluate(Prime(3)) == Rational(1, 81));
  CHECK(kcell_measure(cell(5, 7, std::nullopt, 3, 1, 0, 1, 0)).is_zero());
  try {
    kcell_measure(cell(2, 0, std::nullopt, 3, 1, 0, 1, 1));
    FAIL("expected InfiniteMeasure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InfiniteMeasure);
  }
}

TEST_CASE("disjointness examples") {
  CHECK(kcells_disjoint(cell(2, 0, -1, std::nullopt, 2, 0, 1, 1), cell(2, 0, -1, std::nullopt, 2, 1, 1, 1)));
  CHECK(kcells_disjoint(cell(3, 0, -1, std::nullopt, 1, 0, 1, 1), cell(3, 0, -1, std::nullopt, 1, 0, 1, 2)));
  CHECK(kcells_disjoint(cell(2, 0, 5, std::nullopt, 1, 0, 1, 1), cell(2, 1, 5, std::nullopt, 1, 0, 1, 1)));
  CHECK_FALSE(kcells_disjoint(cell(2, 0, -1, std::nullopt, 1, 0, 1, 1), cell(2, 4, 0, std::nullopt, 1, 0, 1, 1)));
}

TEST_CASE("unit ball partitions") {
  CHECK(partition_unit_ball(1, 1, Prime(3)).size() == 2);
  CHECK(partition_unit_ball(1, 2, Prime(2)).size() == 2);
  CHECK(partition_unit_ball(2, 1, Prime(2)).size() == 2);
  const auto halves = partition_unit_ball(1, 2, Prime(2));
  CHECK(kcell_measure(halves[0]) == AqElem::q_power(-1) * AqElem::inverse_factor(2));
  CHECK(kcell_measure(halves[1]) == AqElem::q_power(-2) * AqElem::inverse_factor(2));
  for (long p : {2L, 3L, 5L}) {
    for (int M = 1; M <= 2; ++M) {
      for (long N = 1; N <= 3; ++N) {
        const auto cells = partition_unit_ball(M, N, Prime(p));
        AqElem total;
        for (const auto& c : cells) total += kcell_measure(c);
        CHECK(total.evaluate(Prime(p)) == 1);
        for (std::size_t i = 0; i < cells.size(); ++i) {
          for (std::size_t j = i + 1; j < cells.size(); ++j) CHECK(kcells_disjoint(cells[i], cells[j]));
        }
      }
    }
  }
}

TEST_CASE("measures do not depend on the center") {
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    const long p = i % 2 ? 2 : 3;
    const KCell c = random_bounded(rng, p);
    const AqElem reference = kcell_measure(c);
    for (int j = 0; j < 100; ++j) {
      KCell moved = c;
      moved.center = fraction(pick(rng, -1000, 1000), pick(rng, 1, 50));
      CHECK(kcell_measure(moved) == reference);
    }
  }
}

TEST_CASE("measures agree with residue counting") {
  Rng rng(23);
  for (int i = 0; i < 40; ++i) {
    const long p = i % 2 ? 2 : 3;
    const KCell c = random_bounded(rng, p);
    const int D = depth_for(c) + 1;
    const long size = to_long(Prime(p).pow(static_cast<unsigned long>(D)));
    long inside = 0;
    for (long t = 0; t < size; ++t) inside += kcell_contains(Rational(t), c) ? 1 : 0;
    CHECK(kcell_measure(c).evaluate(Prime(p)) * Rational(size) == inside);
  }
}

TEST_CASE("disjointness agrees with residue counting") {
  Rng rng(29);
  int overlapping = 0;
  for (int i = 0; i < 300; ++i) {
    const long p = i % 2 ? 2 : 3;
    const KCell a = random_bounded(rng, p);
    KCell b = random_bounded(rng, p);
    if (i % 3 == 0) b.center = a.center;
    const int D = std::max(depth_for(a), depth_for(b));
    const long size = to_long(Prime(p).pow(static_cast<unsigned long>(D)));
    bool shared = false;
    for (long t = 0; t < size && !shared; ++t) shared = kcell_contains(Rational(t), a) && kcell_contains(Rational(t), b);
    overlapping += shared ? 1 : 0;
    CHECK(kcells_disjoint(a, b) == !shared);
  }
  CHECK(overlapping > 10);
}
