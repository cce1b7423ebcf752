#pragma once

#include <hsph/rational.hpp>

#include <array>
#include <cmath>
#include <utility>
#include <vector>

namespace hsph {

// Homogeneous degree-d monomials x^a y^b z^c, ordered by a descending then b
// descending; index of (a,b,c) is (d-a)(d-a+1)/2 + c.
int mono_count(int d);
int mono_index(int d, int a, int b);
const std::vector<std::array<int, 3>>& mono_list(int d);

// Exact normalized moment  ∫_{S²} x^a y^b z^c dσ  (σ the unit-mass measure);
// zero unless a,b,c are all even.
Rat sphere_moment(int a, int b, int c);

// Formal Laplacian of a degree-d coefficient vector (degree d-2 result).
std::vector<Int> laplacian(int d, const std::vector<Int>& p);

// Exact evaluation of a degree-d coefficient vector at a rational point.
Rat eval_poly_exact(int d, const std::vector<Int>& p, const Rat& x, const Rat& y,
                    const Rat& z);

// Exact basis of the harmonic space H_l.  Basis element j is
// sign_flip[j] * (primitive integer rescaling of)  T_m(x,y) * g_m(z, x²+y²),
// where T_m = Re (x+iy)^m (kind 0) or Im (x+iy)^m (kind 1) and g_m solves the
// harmonicity recursion with unit leading coefficient.  Order: m=0 zonal
// first, then for m = 1..l the cos then sin element.
struct HarmonicBasis {
  int l = 0;
  std::vector<std::vector<Int>> coeff;  // dim x N_l, primitive, lead positive
  std::vector<int> trig_m;
  std::vector<int> trig_kind;  // 0 = cos, 1 = sin
  std::vector<int> sign_flip;  // ±1 applied during normalization
  std::vector<Rat> gram_diag;  // exact ⟨f_j, f_j⟩ under σ
  // Scaled circle-Fourier coefficient of each element's lowest z-slice, used
  // for exact coordinate read-off: (Re, Im) at frequency trig_m[j].
  std::vector<std::pair<Int, Int>> slice_fourier;

  int dim() const { return 2 * l + 1; }
  Rat gram(int i, int j) const { return i == j ? gram_diag[i] : Rat(0); }
  // Diagonal of the basis-to-orthonormal transform T (e_j = T_jj f_j).
  std::vector<double> ortho_transform() const;
};

// Cached per l.  Every element is verified exactly harmonic at build time.
const HarmonicBasis& build_basis(int l);

// Exact coordinates t with  poly/denom = Σ_j t_j f_j, for an exactly harmonic
// degree-l integer coefficient vector.  Read off from the z^0/z^1 slices by
// circle-Fourier analysis; no elimination.
std::vector<Rat> coordinates_of(const HarmonicBasis& B, const std::vector<Int>& poly,
                                const Int& denom);

// Stable evaluation of the orthonormal basis e_j = f_j / sqrt(gram_jj) by
// normalized associated-Legendre recurrences; safe far beyond the degrees
// where raw monomial coefficients cancel catastrophically.
struct BasisEvaluator {
  explicit BasisEvaluator(const HarmonicBasis& B);

  // Ĉ_{l,m}(t) for m = 0..l  (normalized so ∫ Ĉ² dt/2 = 1).
  std::vector<double> theta_profile(double t) const;
  // All 2l+1 orthonormal basis values at a unit vector.
  std::vector<double> values(const std::array<double, 3>& p) const;
  // Σ_j c_j e_j(p).
  double eval_sum(const std::vector<double>& c, const std::array<double, 3>& p) const;
  // Row-major values of Σ c_j e_j on a θ×φ grid (O(l²) per row + O(l) per cell).
  std::vector<double> eval_sum_grid(const std::vector<double>& c,
                                    const std::vector<double>& thetas,
                                    const std::vector<double>& phis) const;

  int l;
  std::vector<int> trig_m, trig_kind, sign_flip;

 private:
  std::vector<double> cmm_;        // leading Ĉ_{m,m} prefactors
  std::vector<double> alm_, blm_;  // packed three-term coefficients
  double rec_a(int ll, int m) const;
  double rec_b(int ll, int m) const;
};

// Legendre polynomial P_l(t), |t| ≤ 1 (domain-checked); |P_l| ≤ 1.
double legendre(int l, double t);

// W_l = 3π/(2l+1): the paper-normalized wavelength scale.
double wavelength(int l);

// Y^m_l(0) ≥ 0: exact-binomial equator value of the normalized harmonic;
// zero for odd l-m.
double equator_value(int l, int m);

// Reproducing kernel of H_l under σ: Z_l(x·y) = (2l+1) P_l(x·y).
double projection_kernel(int l, double dot);

// Product quadrature (Gauss–Legendre in cosθ × uniform in φ), exact for
// spherical polynomials of degree ≤ `degree`, normalized to unit total mass.
struct SphereQuad {
  std::vector<double> t, wt;  // cosθ nodes and weights (Σ wt = 1)
  int nphi = 0;
  template <class F>
  double integrate(F&& f) const {  // f(t, φ)
    double s = 0;
    for (size_t i = 0; i < t.size(); ++i) {
      double row = 0;
      for (int j = 0; j < nphi; ++j) row += f(t[i], 2 * M_PI * (j + 0.5) / nphi);
      s += wt[i] * row / nphi;
    }
    return s;
  }
};
SphereQuad sphere_quadrature(int degree);

}  // namespace hsph
