#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hsph/quat.hpp>

#include <random>
#include <set>

using namespace hsph;

namespace {

// Independent divisor-sum oracle.
long sigma_oracle(long m) {
  long s = 0;
  for (long d = 1; d <= m; ++d)
    if (m % d == 0) s += d;
  return s;
}

HurwitzQuaternion random_element(std::mt19937_64& rng, long long max_norm) {
  std::uniform_int_distribution<long long> pick_m(0, max_norm / 2);
  long long m = 2 * pick_m(rng) + 1;
  auto elems = enumerate_norm(m);
  std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
  return elems[pick(rng)];
}

}  // namespace

TEST_CASE("sphere sizes: 24*sigma(m) for odd m") {
  CHECK(enumerate_norm(1).size() == 24);
  CHECK(enumerate_norm(3).size() == 96);
  CHECK(enumerate_norm(9).size() == 312);
  for (long long m = 1; m <= 99; m += 2)
    CHECK(static_cast<long>(enumerate_norm(m).size()) == 24 * sigma_oracle(m));
}

TEST_CASE("enumeration is lexicographic, exact norms, no duplicates") {
  for (long long m : {1, 3, 5, 9, 15}) {
    auto elems = enumerate_norm(m);
    std::set<std::array<long long, 4>> seen;
    for (size_t i = 0; i < elems.size(); ++i) {
      CHECK(elems[i].norm() == m);
      CHECK(seen.insert(elems[i].key()).second);
      if (i > 0) CHECK(elems[i - 1] < elems[i]);
    }
  }
}

TEST_CASE("rejected parameters") {
  CHECK_THROWS_AS(enumerate_norm(2), rejected_parameter);
  CHECK_THROWS_AS(enumerate_norm(0), rejected_parameter);
  CHECK_THROWS_AS(enumerate_norm(-3), rejected_parameter);
  CHECK_THROWS_AS(HurwitzQuaternion(1, 0, 0, 0), rejected_parameter);
}

TEST_CASE("unit group: 24 elements, closed, norm 1") {
  const auto& units = unit_group();
  REQUIRE(units.size() == 24);
  std::set<std::array<long long, 4>> keys;
  for (const auto& u : units) {
    CHECK(u.norm() == 1);
    keys.insert(u.key());
  }
  CHECK(keys.size() == 24);
  for (const auto& u : units)
    for (const auto& v : units) CHECK(keys.count(mult(u, v).key()) == 1);
  for (const auto& u : units) CHECK(keys.count(u.conj().key()) == 1);
}

TEST_CASE("multiplication: norms multiply, conj anti-homomorphism") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_element(rng, 15);
    auto q = random_element(rng, 15);
    CHECK(mult(p, q).norm() == p.norm() * q.norm());
    CHECK(mult(p, q).conj() == mult(q.conj(), p.conj()));
  }
}

TEST_CASE("rotation examples") {
  // γ = i: rotation by π about the x-axis.
  Mat3Q Ri = rotation_of(HurwitzQuaternion(0, 2, 0, 0));
  Mat3Q expect = Mat3Q::identity();
  expect(1, 1) = -1;
  expect(2, 2) = -1;
  CHECK(Ri == expect);

  // γ = (1+i+j+k)/2: cyclic rotation x -> y -> z -> x.
  Mat3Q Rc = rotation_of(HurwitzQuaternion(1, 1, 1, 1));
  Mat3Q cyc;
  cyc(1, 0) = 1;
  cyc(2, 1) = 1;
  cyc(0, 2) = 1;
  CHECK(Rc == cyc);
}

TEST_CASE("rotations are exactly orthogonal with det 1; R_γ = R_{-γ}") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_element(rng, 15);
    Mat3Q R = rotation_of(g);
    CHECK(R.transpose() * R == Mat3Q::identity());
    CHECK(R.det() == Rat(1));
    CHECK(rotation_of(-g) == R);
  }
}

TEST_CASE("rotation is a homomorphism") {
  std::mt19937_64 rng(999);
  for (int trial = 0; trial < 40; ++trial) {
    auto p = random_element(rng, 15);
    auto q = random_element(rng, 15);
    CHECK(rotation_of(mult(p, q)) == rotation_of(p) * rotation_of(q));
  }
}

TEST_CASE("unit rotations: 12 signed permutations forming a group") {
  auto rots = unit_rotations();
  REQUIRE(rots.size() == 12);
  for (const auto& R : rots) {
    // Signed permutation: every entry in {-1,0,1}, one nonzero per row/column.
    for (int i = 0; i < 3; ++i) {
      int nz_row = 0, nz_col = 0;
      for (int j = 0; j < 3; ++j) {
        Rat e = R(i, j);
        CHECK((e == 0 || e == 1 || e == -1));
        if (R(i, j) != 0) ++nz_row;
        if (R(j, i) != 0) ++nz_col;
      }
      CHECK(nz_row == 1);
      CHECK(nz_col == 1);
    }
  }
  // Exhaustive closure.
  for (const auto& A : rots)
    for (const auto& B : rots) {
      Mat3Q C = A * B;
      bool found = false;
      for (const auto& R : rots) found = found || (R == C);
      CHECK(found);
    }
}

TEST_CASE("rational sphere points normalize to primitive directions") {
  RationalSpherePoint p(Int(2), Int(4), Int(-6));
  CHECK(p.u == 1);
  CHECK(p.v == 2);
  CHECK(p.w == -3);
  CHECK(p.h == 14);
  CHECK_THROWS_AS(RationalSpherePoint(Int(0), Int(0), Int(0)), rejected_parameter);
}

TEST_CASE("act: height change example") {
  // γ = 1+i+j (norm 3) sends (1,0,0) to (1,2,-2)/3, height 9.
  HurwitzQuaternion g(2, 2, 2, 0);
  CHECK(g.norm() == 3);
  auto y = act(g, RationalSpherePoint(Int(1), Int(0), Int(0)));
  CHECK(y.u == 1);
  CHECK(y.v == 2);
  CHECK(y.w == -2);
  CHECK(y.h == 9);
}

TEST_CASE("act composition law on 100 random pairs") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<long> coord(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = random_element(rng, 15);
    auto d = random_element(rng, 15);
    Int U = coord(rng), V = coord(rng), W = coord(rng);
    if (U == 0 && V == 0 && W == 0) U = 1;
    RationalSpherePoint x(U, V, W);
    CHECK(act(g, act(d, x)) == act(mult(g, d), x));
  }
}

TEST_CASE("coset representatives: sigma(m) disjoint cosets covering the sphere") {
  for (long long m : {1, 3, 5, 9, 15}) {
    auto reps = coset_representatives(m);
    CHECK(static_cast<long>(reps.size()) == sigma_oracle(m));
    std::set<std::array<long long, 4>> covered;
    for (const auto& r : reps)
      for (const auto& u : unit_group()) CHECK(covered.insert(mult(u, r).key()).second);
    CHECK(covered.size() == enumerate_norm(m).size());
  }
}

TEST_CASE("elements up to sign halve the sphere") {
  for (long long m : {1, 3, 9}) {
    auto half = elements_up_to_sign(m);
    CHECK(half.size() == enumerate_norm(m).size() / 2);
    for (const auto& g : half) CHECK(rotation_of(g) == rotation_of(-g));
  }
}
