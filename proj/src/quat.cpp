#include <hsph/quat.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace hsph {

HurwitzQuaternion::HurwitzQuaternion(long long A, long long B, long long C, long long D)
    : a2(A), b2(B), c2(C), d2(D) {
  long long p = ((A % 2) + 2) % 2;
  for (long long t : {B, C, D})
    if (((t % 2) + 2) % 2 != p)
      throw rejected_parameter("HurwitzQuaternion: mixed-parity doubled coordinates");
}

long long HurwitzQuaternion::norm() const {
  return (a2 * a2 + b2 * b2 + c2 * c2 + d2 * d2) / 4;
}

HurwitzQuaternion mult(const HurwitzQuaternion& p, const HurwitzQuaternion& q) {
  // Doubled coordinates of the product carry a residual factor 1/2.
  long long E = (p.a2 * q.a2 - p.b2 * q.b2 - p.c2 * q.c2 - p.d2 * q.d2) / 2;
  long long F = (p.a2 * q.b2 + p.b2 * q.a2 + p.c2 * q.d2 - p.d2 * q.c2) / 2;
  long long G = (p.a2 * q.c2 - p.b2 * q.d2 + p.c2 * q.a2 + p.d2 * q.b2) / 2;
  long long H = (p.a2 * q.d2 + p.b2 * q.c2 - p.c2 * q.b2 + p.d2 * q.a2) / 2;
  return {E, F, G, H};
}

std::vector<HurwitzQuaternion> enumerate_norm(long long m) {
  if (m <= 0) throw rejected_parameter("enumerate_norm: m must be positive");
  if (m % 2 == 0) throw rejected_parameter("enumerate_norm: m must be odd");
  std::vector<HurwitzQuaternion> out;
  long long four_m = 4 * m;
  long long L = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(four_m)))) + 1;
  while (L * L > four_m) --L;
  for (long long A = -L; A <= L; ++A)
    for (long long B = -L; B <= L; ++B) {
      long long rAB = four_m - A * A - B * B;
      if (rAB < 0) continue;
      if (((A ^ B) & 1) != 0) continue;
      for (long long C = -L; C <= L; ++C) {
        long long r = rAB - C * C;
        if (r < 0) continue;
        if (((A ^ C) & 1) != 0) continue;
        long long D = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(r))));
        while (D * D > r) --D;
        while ((D + 1) * (D + 1) <= r) ++D;
        if (D * D != r) continue;
        if (((A ^ D) & 1) != 0) continue;
        if (D > 0) out.push_back({A, B, C, -D});
        out.push_back({A, B, C, D});
      }
    }
  return out;  // loops emit doubled coordinates in lexicographic order
}

const std::vector<HurwitzQuaternion>& unit_group() {
  static const std::vector<HurwitzQuaternion> units = enumerate_norm(1);
  return units;
}

std::vector<HurwitzQuaternion> coset_representatives(long long m) {
  std::vector<HurwitzQuaternion> reps;
  std::set<std::array<long long, 4>> covered;
  for (const auto& g : enumerate_norm(m)) {
    if (covered.count(g.key())) continue;
    reps.push_back(g);
    for (const auto& u : unit_group()) covered.insert(mult(u, g).key());
  }
  if (static_cast<long long>(reps.size()) != sigma_divisors(m))
    throw invariant_violation("coset_representatives: coset count != sigma(m)");
  return reps;
}

std::vector<HurwitzQuaternion> elements_up_to_sign(long long m) {
  std::vector<HurwitzQuaternion> out;
  for (const auto& g : enumerate_norm(m)) {
    long long lead = g.a2 ? g.a2 : g.b2 ? g.b2 : g.c2 ? g.c2 : g.d2;
    if (lead > 0) out.push_back(g);
  }
  return out;
}

std::array<std::array<Int, 3>, 3> int_rotation(const HurwitzQuaternion& g) {
  Int A = to_int(g.a2), B = to_int(g.b2), C = to_int(g.c2), D = to_int(g.d2);
  std::array<std::array<Int, 3>, 3> M;
  M[0][0] = (A * A + B * B - C * C - D * D) / 4;
  M[0][1] = (B * C - A * D) / 2;
  M[0][2] = (B * D + A * C) / 2;
  M[1][0] = (B * C + A * D) / 2;
  M[1][1] = (A * A - B * B + C * C - D * D) / 4;
  M[1][2] = (C * D - A * B) / 2;
  M[2][0] = (B * D - A * C) / 2;
  M[2][1] = (C * D + A * B) / 2;
  M[2][2] = (A * A - B * B - C * C + D * D) / 4;
  return M;
}

Mat3Q rotation_of(const HurwitzQuaternion& g) {
  auto M = int_rotation(g);
  Int n = to_int(g.norm());
  Mat3Q R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      R(i, j) = Rat(M[i][j], n);
      R(i, j).canonicalize();
    }
  return R;
}

std::vector<Mat3Q> unit_rotations() {
  std::vector<Mat3Q> rots;
  for (const auto& u : unit_group()) {
    Mat3Q R = rotation_of(u);
    if (std::find(rots.begin(), rots.end(), R) == rots.end()) rots.push_back(R);
  }
  if (rots.size() != 12) throw invariant_violation("unit_rotations: expected 12 rotations");
  return rots;
}

RationalSpherePoint::RationalSpherePoint(Int U, Int V, Int W) : u(U), v(V), w(W) {
  if (u == 0 && v == 0 && w == 0)
    throw rejected_parameter("RationalSpherePoint: zero direction");
  Int g = gcd(gcd(abs(u), abs(v)), abs(w));
  u /= g;
  v /= g;
  w /= g;
  h = u * u + v * v + w * w;
}

std::array<double, 3> RationalSpherePoint::unit() const {
  double s = std::sqrt(h.get_d());
  return {u.get_d() / s, v.get_d() / s, w.get_d() / s};
}

RationalSpherePoint act(const HurwitzQuaternion& g, const RationalSpherePoint& x) {
  auto M = int_rotation(g);
  Int y0 = M[0][0] * x.u + M[0][1] * x.v + M[0][2] * x.w;
  Int y1 = M[1][0] * x.u + M[1][1] * x.v + M[1][2] * x.w;
  Int y2 = M[2][0] * x.u + M[2][1] * x.v + M[2][2] * x.w;
  return RationalSpherePoint(y0, y1, y2);
}

}  // namespace hsph
