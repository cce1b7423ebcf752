#pragma once

#include <hsph/rational.hpp>

#include <array>
#include <compare>
#include <vector>

namespace hsph {

// Hurwitz quaternion stored in doubled coordinates: q = (a2 + b2*i + c2*j +
// d2*k)/2 with a2,b2,c2,d2 integers of equal parity (all even = Lipschitz
// integer, all odd = half-integer point).
struct HurwitzQuaternion {
  long long a2 = 0, b2 = 0, c2 = 0, d2 = 0;

  HurwitzQuaternion() = default;
  HurwitzQuaternion(long long A, long long B, long long C, long long D);

  // Reduced norm, exact: (a2^2+b2^2+c2^2+d2^2)/4.
  long long norm() const;

  HurwitzQuaternion conj() const { return {a2, -b2, -c2, -d2}; }
  HurwitzQuaternion operator-() const { return {-a2, -b2, -c2, -d2}; }

  std::array<long long, 4> key() const { return {a2, b2, c2, d2}; }
  auto operator<=>(const HurwitzQuaternion& o) const { return key() <=> o.key(); }
  bool operator==(const HurwitzQuaternion& o) const { return key() == o.key(); }
};

HurwitzQuaternion mult(const HurwitzQuaternion& p, const HurwitzQuaternion& q);

// The 24 units of the Hurwitz order, lexicographic in doubled coordinates.
const std::vector<HurwitzQuaternion>& unit_group();

// All elements of reduced norm m (m odd, positive), lexicographic; size is
// 24*sigma(m).
std::vector<HurwitzQuaternion> enumerate_norm(long long m);

// Lex-least representatives of the sigma(m) left cosets  O^x γ  inside the
// norm-m sphere.
std::vector<HurwitzQuaternion> coset_representatives(long long m);

// One element per pair {γ, -γ}: the rotation action factors through it.
std::vector<HurwitzQuaternion> elements_up_to_sign(long long m);

// Integer matrix M with M = norm(γ) * R_γ, where R_γ x = γ x γ̄ / norm(γ) on
// imaginary quaternions x = (x1, x2, x3).
std::array<std::array<Int, 3>, 3> int_rotation(const HurwitzQuaternion& g);

// Exact rational rotation matrix R_γ (orthogonal, det 1).
Mat3Q rotation_of(const HurwitzQuaternion& g);

// The 12 distinct rotations realized by the unit group (signed permutation
// matrices forming the rotation group of the tetrahedron).
std::vector<Mat3Q> unit_rotations();

// Point of the rational sphere: primitive integer direction (u,v,w) with
// height h = u^2+v^2+w^2; the point itself is (u,v,w)/sqrt(h).
struct RationalSpherePoint {
  Int u = 0, v = 0, w = 0;
  Int h = 0;

  RationalSpherePoint() = default;
  RationalSpherePoint(Int U, Int V, Int W);

  std::array<double, 3> unit() const;
  bool operator==(const RationalSpherePoint& o) const {
    return u == o.u && v == o.v && w == o.w;
  }
};

// γ.x: apply R_γ; the image is again a rational point, with (in general) a
// different height.
RationalSpherePoint act(const HurwitzQuaternion& g, const RationalSpherePoint& x);

}  // namespace hsph
