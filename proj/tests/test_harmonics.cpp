#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <hsph/harmonics.hpp>

#include <cmath>
#include <random>

using namespace hsph;

namespace {

std::array<double, 3> random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double t = U(rng), phi = M_PI * (U(rng) + 1.0);
  double s = std::sqrt(1.0 - t * t);
  return {s * std::cos(phi), s * std::sin(phi), t};
}

}  // namespace

TEST_CASE("monomial order: a desc then b desc") {
  const auto& m2 = mono_list(2);
  REQUIRE(m2.size() == 6);
  CHECK(m2[0] == std::array<int, 3>{2, 0, 0});
  CHECK(m2[1] == std::array<int, 3>{1, 1, 0});
  CHECK(m2[2] == std::array<int, 3>{1, 0, 1});
  CHECK(m2[3] == std::array<int, 3>{0, 2, 0});
  CHECK(m2[5] == std::array<int, 3>{0, 0, 2});
  for (int d : {0, 1, 5, 12})
    for (int i = 0; i < mono_count(d); ++i) {
      auto [a, b, c] = mono_list(d)[i];
      CHECK(mono_index(d, a, b) == i);
    }
}

TEST_CASE("exact sphere moments") {
  CHECK(sphere_moment(0, 0, 0) == Rat(1));
  CHECK(sphere_moment(2, 0, 0) == Rat(1, 3));
  CHECK(sphere_moment(4, 0, 0) == Rat(1, 5));
  CHECK(sphere_moment(2, 2, 0) == Rat(1, 15));
  CHECK(sphere_moment(2, 2, 2) == Rat(1, 105));
  CHECK(sphere_moment(1, 0, 0) == Rat(0));
  CHECK(sphere_moment(3, 2, 0) == Rat(0));
  // Symmetry and the trace identity Σ ∫x_i² = 1.
  CHECK(sphere_moment(2, 4, 0) == sphere_moment(4, 2, 0));
  CHECK(sphere_moment(2, 0, 0) + sphere_moment(0, 2, 0) + sphere_moment(0, 0, 2) == Rat(1));
}

TEST_CASE("formal laplacian") {
  // p = x³ + y³ + z³ at degree 3: Δp = 6x + 6y + 6z.
  std::vector<Int> p(mono_count(3), Int(0));
  p[mono_index(3, 3, 0)] = 1;
  p[mono_index(3, 0, 3)] = 1;
  p[mono_index(3, 0, 0)] = 1;
  auto lap = laplacian(3, p);
  CHECK(lap[mono_index(1, 1, 0)] == 6);
  CHECK(lap[mono_index(1, 0, 1)] == 6);
  CHECK(lap[mono_index(1, 0, 0)] == 6);
}

TEST_CASE("basis: small-l structure") {
  const auto& B0 = build_basis(0);
  CHECK(B0.dim() == 1);
  CHECK(B0.coeff[0][0] == 1);
  CHECK(B0.gram_diag[0] == Rat(1));

  const auto& B1 = build_basis(1);
  CHECK(B1.dim() == 3);
  // zonal z, then x (cos), then y (sin); all with gram 1/3.
  CHECK(B1.coeff[0][mono_index(1, 0, 0)] == 1);
  CHECK(B1.coeff[1][mono_index(1, 1, 0)] == 1);
  CHECK(B1.coeff[2][mono_index(1, 0, 1)] == 1);
  for (int j = 0; j < 3; ++j) CHECK(B1.gram_diag[j] == Rat(1, 3));

  const auto& B2 = build_basis(2);
  // zonal stored as x² + y² - 2z² with a recorded flip.
  CHECK(B2.coeff[0][mono_index(2, 2, 0)] == 1);
  CHECK(B2.coeff[0][mono_index(2, 0, 0)] == -2);
  CHECK(B2.sign_flip[0] == -1);
  CHECK(B2.gram_diag[0] == Rat(4, 5));
}

TEST_CASE("basis: dimensions, primitivity, harmonicity at moderate degree") {
  for (int l : {3, 7, 10, 16, 21}) {
    const auto& B = build_basis(l);
    REQUIRE(B.dim() == 2 * l + 1);
    for (int j = 0; j < B.dim(); ++j) {
      Int g = 0;
      const Int* first_nz = nullptr;
      for (const auto& c : B.coeff[j])
        if (c != 0) {
          if (!first_nz) first_nz = &c;
          g = gcd(g, abs(c));
        }
      CHECK(g == 1);
      CHECK(*first_nz > 0);
      // Exact harmonicity (also enforced inside the build).
      for (const auto& c : laplacian(l, B.coeff[j])) CHECK(c == 0);
    }
  }
}

TEST_CASE("gram: diagonal positive, orthonormalization exact, moment cancellation") {
  const auto& B = build_basis(16);
  auto T = B.ortho_transform();
  for (int j = 0; j < B.dim(); ++j) {
    CHECK(B.gram_diag[j] > 0);
    CHECK(std::abs(T[j] * T[j] * to_double(B.gram_diag[j]) - 1.0) < 1e-12);
  }
  // Same-parity different-m pairs cancel through genuinely nonzero moments.
  const auto& monos = mono_list(16);
  auto pair_sum = [&](int i, int j) {
    Rat s = 0;
    int nonzero_terms = 0;
    for (size_t p = 0; p < monos.size(); ++p) {
      if (B.coeff[i][p] == 0) continue;
      for (size_t q = 0; q < monos.size(); ++q) {
        if (B.coeff[j][q] == 0) continue;
        Rat m = sphere_moment(monos[p][0] + monos[q][0], monos[p][1] + monos[q][1],
                              monos[p][2] + monos[q][2]);
        if (m != 0) {
          s += Rat(B.coeff[i][p] * B.coeff[j][q]) * m;
          ++nonzero_terms;
        }
      }
    }
    CHECK(nonzero_terms > 0);
    return s;
  };
  // (cos, m=2) vs (cos, m=4) and zonal vs (cos, m=2).
  CHECK(pair_sum(3, 7) == Rat(0));
  CHECK(pair_sum(0, 3) == Rat(0));
}

TEST_CASE("coordinate read-off: exact round trip") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  for (int l : {0, 1, 2, 5, 8, 13, 16}) {
    const auto& B = build_basis(l);
    // Indicator round trip.
    for (int j = 0; j < B.dim(); ++j) {
      auto coords = coordinates_of(B, B.coeff[j], Int(1));
      for (int i = 0; i < B.dim(); ++i) CHECK(coords[i] == Rat(i == j ? 1 : 0));
    }
    // Random rational combinations.
    std::vector<Rat> want(B.dim());
    Int D(1);
    for (auto& r : want) {
      r = Rat(num(rng), den(rng));
      r.canonicalize();
      D = lcm(D, r.get_den());
    }
    std::vector<Int> poly(mono_count(l), Int(0));
    for (int j = 0; j < B.dim(); ++j) {
      Rat s = want[j] * Rat(D);
      for (size_t i = 0; i < poly.size(); ++i) poly[i] += s.get_num() * B.coeff[j][i];
    }
    auto coords = coordinates_of(B, poly, D);
    for (int j = 0; j < B.dim(); ++j) CHECK(coords[j] == want[j]);
  }
}

TEST_CASE("evaluator matches exact rational evaluation") {
  // Points with perfect-square height so that exact values are rational.
  const std::array<std::array<long, 4>, 4> pts = {
      {{3, 4, 0, 5}, {1, 2, 2, 3}, {2, 3, 6, 7}, {12, 9, 8, 17}}};
  for (int l : {1, 2, 3, 6, 11, 20, 25}) {
    const auto& B = build_basis(l);
    BasisEvaluator ev(B);
    for (const auto& P : pts) {
      Rat x(P[0], P[3]), y(P[1], P[3]), z(P[2], P[3]);
      x.canonicalize();
      y.canonicalize();
      z.canonicalize();
      std::array<double, 3> pd = {to_double(Rat(x)), to_double(Rat(y)), to_double(Rat(z))};
      auto vals = ev.values(pd);
      for (int j = 0; j < B.dim(); ++j) {
        double exact = to_double(eval_poly_exact(l, B.coeff[j], x, y, z)) /
                       std::sqrt(to_double(B.gram_diag[j]));
        CHECK(std::abs(vals[j] - exact) < 1e-11 * std::max(1.0, std::abs(exact)));
      }
    }
  }
}

TEST_CASE("explicit sign chain at the pole") {
  const auto& B = build_basis(2);
  BasisEvaluator ev(B);
  auto vals = ev.values({0.0, 0.0, 1.0});
  // e_0 = (x²+y²-2z²)/sqrt(4/5), so e_0(north pole) = -√5; the flip makes the
  // evaluator agree.
  CHECK(vals[0] == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-13));
  for (int j = 1; j < 5; ++j) CHECK(std::abs(vals[j]) < 1e-14);
}

TEST_CASE("addition theorem ties gram, evaluator and kernel together") {
  std::mt19937_64 rng(555);
  for (int l : {5, 12, 30, 60}) {
    const auto& B = build_basis(l);
    BasisEvaluator ev(B);
    for (int trial = 0; trial < 8; ++trial) {
      auto x = random_unit(rng), y = random_unit(rng);
      auto vx = ev.values(x), vy = ev.values(y);
      double s = 0;
      for (int j = 0; j < B.dim(); ++j) s += vx[j] * vy[j];
      double dot = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
      CHECK(std::abs(s - projection_kernel(l, dot)) < 1e-9 * (2 * l + 1));
    }
  }
}

TEST_CASE("theta profiles are orthonormal against independent quadrature") {
  for (int l : {4, 17, 50}) {
    const auto& B = build_basis(l);
    BasisEvaluator ev(B);
    auto q = sphere_quadrature(2 * l);
    for (int m = 0; m <= l; ++m) {
      double s = 0;
      for (size_t i = 0; i < q.t.size(); ++i) {
        auto prof = ev.theta_profile(q.t[i]);
        s += q.wt[i] * prof[m] * prof[m];
      }
      CHECK(std::abs(s - 1.0) < 1e-11);
    }
  }
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  const auto& B = build_basis(14);
  BasisEvaluator ev(B);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> c(B.dim());
  for (auto& v : c) v = U(rng);
  std::vector<double> thetas = {0.3, 1.1, 2.2}, phis = {0.1, 1.9, 3.7, 5.5};
  auto grid = ev.eval_sum_grid(c, thetas, phis);
  for (size_t i = 0; i < thetas.size(); ++i)
    for (size_t j = 0; j < phis.size(); ++j) {
      double st = std::sin(thetas[i]);
      std::array<double, 3> p = {st * std::cos(phis[j]), st * std::sin(phis[j]),
                                 std::cos(thetas[i])};
      CHECK(std::abs(grid[i * phis.size() + j] - ev.eval_sum(c, p)) < 1e-11);
    }
}

TEST_CASE("legendre: low-degree closed forms, bound, domain check") {
  for (double t : {-1.0, -0.7, -0.2, 0.0, 0.4, 0.9, 1.0}) {
    CHECK(legendre(0, t) == 1.0);
    CHECK(legendre(1, t) == t);
    CHECK(std::abs(legendre(2, t) - (1.5 * t * t - 0.5)) < 1e-15);
    CHECK(std::abs(legendre(5, t) - (63 * std::pow(t, 5) - 70 * std::pow(t, 3) + 15 * t) / 8) <
          1e-14);
  }
  CHECK_THROWS_AS(legendre(3, 1.5), rejected_parameter);
  CHECK_THROWS_AS(legendre(3, -1.0000001), rejected_parameter);
  for (int l : {10, 60, 200}) {
    for (int k = 0; k <= 1000; ++k) {
      double t = -1.0 + 2.0 * k / 1000;
      CHECK(std::abs(legendre(l, t)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("legendre sup-norm envelope: frozen constant") {
  // max over l ≤ 200 of (l sinθ)^{1/2} |P_l(cosθ)| on a 10^4-point θ-grid.
  // Measured 0.796888 on the first run (the Bernstein constant sqrt(2/π) ≈
  // 0.7979 approached from below on this grid); frozen bound 1.1.
  double C = 0;
  const int N = 10000;
  for (int k = 1; k < N; ++k) {
    double theta = M_PI * k / N;
    double t = std::cos(theta), s = std::sin(theta);
    double p0 = 1.0, p1 = t;
    for (int l = 1; l <= 200; ++l) {
      if (l > 1) {
        double p2 = ((2.0 * (l - 1) + 1) * t * p1 - (l - 1) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      C = std::max(C, std::sqrt(l * s) * std::abs(p1));
    }
  }
  CHECK(C <= 1.1);
  CHECK(C > 0.75);  // sanity: the Bernstein constant is sqrt(2/π) ≈ 0.7979
}

TEST_CASE("wavelength") {
  CHECK(wavelength(0) == doctest::Approx(3 * M_PI).epsilon(1e-15));
  for (int l : {1, 7, 120}) CHECK(std::abs(wavelength(l) * (2 * l + 1) - 3 * M_PI) < 1e-12);
  CHECK(wavelength(10) > wavelength(11));
}

TEST_CASE("equator values: exact binomial formula vs recurrence evaluation") {
  CHECK(equator_value(1, 1) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(equator_value(2, 0) == doctest::Approx(std::sqrt(5.0) / 2).epsilon(1e-14));
  CHECK(equator_value(2, 1) == 0.0);
  for (int l : {6, 13, 27, 40}) {
    const auto& B = build_basis(l);
    BasisEvaluator ev(B);
    auto prof = ev.theta_profile(0.0);
    for (int m = 0; m <= l; ++m) {
      if ((l - m) % 2) {
        CHECK(equator_value(l, m) == 0.0);
        CHECK(std::abs(prof[m]) < 1e-12);
      } else {
        CHECK(std::abs(std::abs(prof[m]) - equator_value(l, m)) < 1e-11);
      }
    }
  }
}

TEST_CASE("equator values: frozen two-sided envelope") {
  // v(l,m) = Y^m_l(0)² (1+l+m)^{1/2} (1+l-m)^{1/2} / l over even l-m, l ≤ 200.
  // Measured range [1.279600, 2.598076] on the first run (lower end at m = 0,
  // l = 200, approaching 4/π from above; upper end is l = m = 1); frozen with
  // margin.
  const double c1 = 1.25, c2 = 2.62;
  double lo = 1e300, hi = 0;
  for (int l = 1; l <= 200; ++l)
    for (int m = l % 2; m <= l; m += 2) {
      double y = equator_value(l, m);
      double v = y * y * std::sqrt((1.0 + l + m) * (1.0 + l - m)) / l;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  CHECK(lo >= c1);
  CHECK(hi <= c2);
  MESSAGE("equator envelope measured [" << lo << ", " << hi << "]");
}

TEST_CASE("projection kernel reproduces an l=4 harmonic") {
  const auto& B = build_basis(4);
  BasisEvaluator ev(B);
  auto q = sphere_quadrature(8);
  std::array<double, 3> x = {0.48, -0.6, std::sqrt(1 - 0.48 * 0.48 - 0.36)};
  for (int j : {0, 3, 8}) {
    double integral = q.integrate([&](double t, double phi) {
      double s = std::sqrt(1 - t * t);
      std::array<double, 3> y = {s * std::cos(phi), s * std::sin(phi), t};
      double dot = x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
      return projection_kernel(4, dot) * ev.values(y)[j];
    });
    double want = ev.values(x)[j];
    CHECK(std::abs(integral - want) < 1e-8 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("quadrature integrates monomials exactly") {
  auto q = sphere_quadrature(8);
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + b <= 8; ++b)
      for (int c = 0; a + b + c <= 8; ++c) {
        double integral = q.integrate([&](double t, double phi) {
          double s = std::sqrt(1 - t * t);
          return std::pow(s * std::cos(phi), a) * std::pow(s * std::sin(phi), b) *
                 std::pow(t, c);
        });
        CHECK(std::abs(integral - to_double(sphere_moment(a, b, c))) < 1e-13);
      }
}

TEST_CASE("parseval on random unit vectors") {
  std::mt19937_64 rng(42);
  for (int l : {3, 9, 15}) {
    const auto& B = build_basis(l);
    BasisEvaluator ev(B);
    auto q = sphere_quadrature(2 * l);
    std::vector<double> c(B.dim());
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double want = 0;
    for (auto& v : c) {
      v = U(rng);
      want += v * v;
    }
    double got = q.integrate([&](double t, double phi) {
      double s = std::sqrt(1 - t * t);
      std::array<double, 3> y = {s * std::cos(phi), s * std::sin(phi), t};
      double f = ev.eval_sum(c, y);
      return f * f;
    });
    CHECK(std::abs(got - want) < 1e-8 * want);
  }
}
