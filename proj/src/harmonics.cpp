#include <hsph/harmonics.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numeric>

namespace hsph {

int mono_count(int d) { return (d + 1) * (d + 2) / 2; }

int mono_index(int d, int a, int b) {
  int c = d - a - b;
  return (d - a) * (d - a + 1) / 2 + c;
}

const std::vector<std::array<int, 3>>& mono_list(int d) {
  static std::map<int, std::vector<std::array<int, 3>>> cache;
  auto it = cache.find(d);
  if (it == cache.end()) {
    std::vector<std::array<int, 3>> v;
    v.reserve(mono_count(d));
    for (int a = d; a >= 0; --a)
      for (int b = d - a; b >= 0; --b) v.push_back({a, b, d - a - b});
    it = cache.emplace(d, std::move(v)).first;
  }
  return it->second;
}

namespace {

Int factorial(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Int binomial(unsigned n, unsigned k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

Rat sphere_moment(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw rejected_parameter("sphere_moment: negative exponent");
  if (a % 2 || b % 2 || c % 2) return Rat(0);
  int b1 = a / 2, b2 = b / 2, b3 = c / 2, B = b1 + b2 + b3;
  Rat num(2 * factorial(B + 1) * factorial(a) * factorial(b) * factorial(c));
  Rat den(factorial(b1) * factorial(b2) * factorial(b3) * factorial(2 * B + 2));
  Rat r = num / den;
  r.canonicalize();
  return r;
}

std::vector<Int> laplacian(int d, const std::vector<Int>& p) {
  std::vector<Int> out(d >= 2 ? mono_count(d - 2) : 0, Int(0));
  const auto& monos = mono_list(d);
  for (size_t i = 0; i < monos.size(); ++i) {
    if (p[i] == 0) continue;
    auto [a, b, c] = monos[i];
    if (a >= 2) out[mono_index(d - 2, a - 2, b)] += to_int(a) * (a - 1) * p[i];
    if (b >= 2) out[mono_index(d - 2, a, b - 2)] += to_int(b) * (b - 1) * p[i];
    if (c >= 2) out[mono_index(d - 2, a, b)] += to_int(c) * (c - 1) * p[i];
  }
  return out;
}

Rat eval_poly_exact(int d, const std::vector<Int>& p, const Rat& x, const Rat& y,
                    const Rat& z) {
  // Horner over the (a, b) block structure.
  Rat acc = 0;
  const auto& monos = mono_list(d);
  std::vector<Rat> xp(d + 1), yp(d + 1), zp(d + 1);
  xp[0] = yp[0] = zp[0] = 1;
  for (int i = 1; i <= d; ++i) {
    xp[i] = xp[i - 1] * x;
    yp[i] = yp[i - 1] * y;
    zp[i] = zp[i - 1] * z;
  }
  for (size_t i = 0; i < monos.size(); ++i) {
    if (p[i] == 0) continue;
    auto [a, b, c] = monos[i];
    acc += Rat(p[i]) * xp[a] * yp[b] * zp[c];
  }
  return acc;
}

namespace {

// Laurent coefficients, scaled by 2^n, of a degree-n bivariate form on the
// unit circle: out[m] = 2^n * (Re, Im) of the e^{imφ} coefficient, m = 0..n.
std::vector<std::pair<Int, Int>> circle_fourier(
    int n, const std::vector<std::pair<std::array<int, 2>, Int>>& terms) {
  std::vector<Int> re(2 * n + 1, Int(0)), im(2 * n + 1, Int(0));  // index e+n
  for (const auto& [ab, coef] : terms) {
    if (coef == 0) continue;
    auto [a, b] = ab;
    // i^{-b} rotation of the real coefficient.
    int rot = ((b % 4) + 4) % 4;  // multiply by i^{-rot}
    for (int p = 0; p <= a; ++p)
      for (int q = 0; q <= b; ++q) {
        Int v = coef * binomial(a, p) * binomial(b, q);
        if (q % 2) v = -v;
        int e = a + b - 2 * p - 2 * q;
        switch (rot) {
          case 0: re[e + n] += v; break;
          case 1: im[e + n] -= v; break;
          case 2: re[e + n] -= v; break;
          case 3: im[e + n] += v; break;
        }
      }
  }
  std::vector<std::pair<Int, Int>> out(n + 1);
  for (int m = 0; m <= n; ++m) out[m] = {re[m + n], im[m + n]};
  return out;
}

// Slice of a degree-l coefficient vector at z-degree zdeg, as bivariate terms.
std::vector<std::pair<std::array<int, 2>, Int>> z_slice(int l,
                                                        const std::vector<Int>& p,
                                                        int zdeg) {
  std::vector<std::pair<std::array<int, 2>, Int>> terms;
  const auto& monos = mono_list(l);
  for (size_t i = 0; i < monos.size(); ++i) {
    auto [a, b, c] = monos[i];
    if (c == zdeg && p[i] != 0) terms.push_back({{a, b}, p[i]});
  }
  return terms;
}

// g_m(z, s) coefficients: c_0 = 1, harmonicity recursion downward in z-degree.
std::vector<Rat> g_coeffs(int l, int m) {
  int K = (l - m) / 2;
  std::vector<Rat> c(K + 1);
  c[0] = 1;
  for (int k = 0; k < K; ++k) {
    int e = l - m - 2 * k;
    c[k + 1] = -c[k] * Rat(to_int(e) * (e - 1), to_int(4) * (k + 1) * (m + k + 1));
    c[k + 1].canonicalize();
  }
  return c;
}

// T_m coefficients over bivariate monomials x^{m-t} y^t: kind 0 = Re (x+iy)^m,
// kind 1 = Im (x+iy)^m.
std::vector<std::pair<int, Int>> trig_coeffs(int m, int kind) {
  std::vector<std::pair<int, Int>> out;
  for (int t = kind; t <= m; t += 2) {
    Int c = binomial(m, t);
    if (((t - kind) / 2) % 2) c = -c;
    out.push_back({t, c});
  }
  return out;
}

struct RawElement {
  int m, kind;
  std::vector<Rat> poly;  // dense over mono_list(l)
};

RawElement raw_element(int l, int m, int kind) {
  RawElement el{m, kind, std::vector<Rat>(mono_count(l), Rat(0))};
  auto g = g_coeffs(l, m);
  auto tm = trig_coeffs(m, kind);
  int K = (l - m) / 2;
  for (int k = 0; k <= K; ++k) {
    int zdeg = l - m - 2 * k;
    for (int u = 0; u <= k; ++u) {
      Rat s_part = Rat(binomial(k, u)) * g[k];  // x^{2u} y^{2(k-u)} z^{zdeg}
      for (const auto& [t, tc] : tm) {
        int a = (m - t) + 2 * u, b = t + 2 * (k - u);
        el.poly[mono_index(l, a, b)] += s_part * Rat(tc);
      }
    }
  }
  return el;
}

struct BasisCache {
  std::map<int, HarmonicBasis> store;
};

void moment_validate(const HarmonicBasis& B) {
  // Literal monomial-moment pair sums: full Gram for small l, diagonal up to
  // l = 24.
  int l = B.l;
  const auto& monos = mono_list(l);
  auto pair_sum = [&](int i, int j) {
    Rat s = 0;
    for (size_t p = 0; p < monos.size(); ++p) {
      if (B.coeff[i][p] == 0) continue;
      for (size_t q = 0; q < monos.size(); ++q) {
        if (B.coeff[j][q] == 0) continue;
        Rat m = sphere_moment(monos[p][0] + monos[q][0], monos[p][1] + monos[q][1],
                              monos[p][2] + monos[q][2]);
        if (m != 0) s += Rat(B.coeff[i][p] * B.coeff[j][q]) * m;
      }
    }
    return s;
  };
  if (l <= 12) {
    for (int i = 0; i < B.dim(); ++i)
      for (int j = i; j < B.dim(); ++j)
        if (pair_sum(i, j) != B.gram(i, j))
          throw invariant_violation("gram mismatch vs monomial moments");
  } else if (l <= 24) {
    for (int i = 0; i < B.dim(); ++i)
      if (pair_sum(i, i) != B.gram_diag[i])
        throw invariant_violation("gram diagonal mismatch vs monomial moments");
  }
}

HarmonicBasis make_basis(int l) {
  if (l < 0) throw rejected_parameter("build_basis: l must be nonnegative");
  HarmonicBasis B;
  B.l = l;
  std::vector<RawElement> raw;
  raw.push_back(raw_element(l, 0, 0));
  for (int m = 1; m <= l; ++m) {
    raw.push_back(raw_element(l, m, 0));
    raw.push_back(raw_element(l, m, 1));
  }

  std::vector<Rat> scale;  // signed rational factor from raw to stored
  for (const auto& el : raw) {
    // Common denominator, then content, then sign of first nonzero.
    Int den(1), num_gcd(0);
    for (const auto& q : el.poly)
      if (q != 0) {
        den = lcm(den, q.get_den());
      }
    std::vector<Int> ip(el.poly.size());
    for (size_t i = 0; i < el.poly.size(); ++i) {
      Rat v = el.poly[i] * Rat(den);
      ip[i] = v.get_num();  // exact integer after clearing denominators
      if (ip[i] != 0) num_gcd = gcd(num_gcd, abs(ip[i]));
    }
    int flip = 1;
    for (const auto& c : ip)
      if (c != 0) {
        if (c < 0) flip = -1;
        break;
      }
    for (auto& c : ip) c = c * flip / num_gcd;
    B.coeff.push_back(std::move(ip));
    B.trig_m.push_back(el.m);
    B.trig_kind.push_back(el.kind);
    B.sign_flip.push_back(flip);
    scale.push_back(Rat(to_int(flip) * den, num_gcd));

    // Exact harmonicity.
    auto lap = laplacian(l, B.coeff.back());
    for (const auto& c : lap)
      if (c != 0) throw invariant_violation("basis element not harmonic");
  }

  // Exact Gram: φ-factor × univariate t-integral of the stored elements.
  // Off-diagonal entries vanish through the exact trig orthogonality; the
  // construction is cross-checked against literal monomial moments below.
  B.gram_diag.resize(B.dim());
  for (int j = 0; j < B.dim(); ++j) {
    int m = B.trig_m[j];
    Rat phi_factor = (m == 0) ? Rat(1) : Rat(1, 2);
    // t-polynomial of g_m(t, 1-t²), then square, times (1-t²)^m.
    auto g = g_coeffs(l, m);
    int K = (l - m) / 2;
    std::vector<Rat> tp(l - m + 1, Rat(0));  // coefficients in t
    for (int k = 0; k <= K; ++k)
      for (int u = 0; u <= k; ++u) {
        Rat term = g[k] * Rat(binomial(k, u));
        if (u % 2) term = -term;  // (1-t²)^k expanded: (-1)^u t^{2u}
        tp[l - m - 2 * k + 2 * u] += term;
      }
    // Multiply tp² by (1-t²)^m and integrate: ∫ t^{2r} dt/2 = 1/(2r+1).
    Rat integral = 0;
    for (size_t p = 0; p < tp.size(); ++p) {
      if (tp[p] == 0) continue;
      for (size_t q = 0; q < tp.size(); ++q) {
        if (tp[q] == 0) continue;
        for (int u = 0; u <= m; ++u) {
          int pw = static_cast<int>(p + q) + 2 * u;
          if (pw % 2) continue;  // odd powers cannot occur; guard anyway
          Rat c = Rat(binomial(m, u));
          if (u % 2) c = -c;
          integral += tp[p] * tp[q] * c / Rat(to_int(pw + 1));
        }
      }
    }
    B.gram_diag[j] = scale[j] * scale[j] * phi_factor * integral;
    B.gram_diag[j].canonicalize();
    if (B.gram_diag[j] <= 0) throw invariant_violation("gram diagonal not positive");
  }

  // Circle-Fourier data of the lowest z-slice, for coordinate read-off.
  B.slice_fourier.resize(B.dim());
  for (int j = 0; j < B.dim(); ++j) {
    int m = B.trig_m[j];
    int zdeg = (l - m) % 2;
    int n = l - zdeg;
    auto four = circle_fourier(n, z_slice(l, B.coeff[j], zdeg));
    B.slice_fourier[j] = four[m];
  }

  moment_validate(B);
  return B;
}

}  // namespace

std::vector<double> HarmonicBasis::ortho_transform() const {
  std::vector<double> t(dim());
  for (int j = 0; j < dim(); ++j) t[j] = 1.0 / std::sqrt(to_double(gram_diag[j]));
  return t;
}

const HarmonicBasis& build_basis(int l) {
  static BasisCache cache;
  auto it = cache.store.find(l);
  if (it == cache.store.end()) it = cache.store.emplace(l, make_basis(l)).first;
  return it->second;
}

std::vector<Rat> coordinates_of(const HarmonicBasis& B, const std::vector<Int>& poly,
                                const Int& denom) {
  int l = B.l;
  if (static_cast<int>(poly.size()) != mono_count(l))
    throw rejected_parameter("coordinates_of: wrong coefficient length");
  if (denom == 0) throw rejected_parameter("coordinates_of: zero denominator");
  auto four0 = circle_fourier(l, z_slice(l, poly, 0));
  auto four1 = l >= 1 ? circle_fourier(l - 1, z_slice(l, poly, 1))
                      : std::vector<std::pair<Int, Int>>{};

  std::vector<Rat> coords(B.dim());
  for (int j = 0; j < B.dim(); ++j) {
    int m = B.trig_m[j];
    if (B.trig_kind[j] == 1) continue;  // handled with the cos partner
    bool low = (l - m) % 2 == 0;
    const auto& c = low ? four0[m] : four1[m];
    const auto& dA = B.slice_fourier[j];
    if (m == 0) {
      if (dA.first == 0) throw invariant_violation("coordinates_of: singular zonal read-off");
      coords[j] = Rat(c.first, dA.first * denom);
      coords[j].canonicalize();
      continue;
    }
    const auto& dB = B.slice_fourier[j + 1];  // sin partner is adjacent
    Int det = dA.first * dB.second - dB.first * dA.second;
    if (det == 0) throw invariant_violation("coordinates_of: singular read-off system");
    coords[j] = Rat(c.first * dB.second - dB.first * c.second, det * denom);
    coords[j + 1] = Rat(dA.first * c.second - c.first * dA.second, det * denom);
    coords[j].canonicalize();
    coords[j + 1].canonicalize();
  }
  return coords;
}

BasisEvaluator::BasisEvaluator(const HarmonicBasis& B)
    : l(B.l), trig_m(B.trig_m), trig_kind(B.trig_kind), sign_flip(B.sign_flip) {
  cmm_.resize(l + 1);
  double ratio = 1.0;  // (2m-1)!!/(2m)!!
  for (int m = 0; m <= l; ++m) {
    if (m > 0) ratio *= (2.0 * m - 1) / (2.0 * m);
    cmm_[m] = std::sqrt((2.0 * m + 1) * ratio);
  }
  alm_.assign((l + 1) * (l + 1), 0.0);
  blm_.assign((l + 1) * (l + 1), 0.0);
  for (int m = 0; m <= l; ++m)
    for (int ll = m + 2; ll <= l; ++ll) {
      alm_[m * (l + 1) + ll] = std::sqrt((2.0 * ll - 1) * (2.0 * ll + 1) /
                                         (double(ll - m) * (ll + m)));
      blm_[m * (l + 1) + ll] = std::sqrt((2.0 * ll + 1) * (ll - 1.0 - m) *
                                         (ll - 1.0 + m) /
                                         ((2.0 * ll - 3) * (ll - m) * (ll + m)));
    }
}

std::vector<double> BasisEvaluator::theta_profile(double t) const {
  std::vector<double> out(l + 1);
  double s2 = std::max(0.0, 1.0 - t * t);
  double smh = std::sqrt(s2);  // sinθ
  double spow = 1.0;
  for (int m = 0; m <= l; ++m) {
    double pmm = cmm_[m] * spow;
    double val;
    if (l == m) {
      val = pmm;
    } else {
      double p0 = pmm, p1 = std::sqrt(2.0 * m + 3) * t * pmm;
      if (l == m + 1) {
        val = p1;
      } else {
        for (int ll = m + 2; ll <= l; ++ll) {
          double p2 = alm_[m * (l + 1) + ll] * t * p1 - blm_[m * (l + 1) + ll] * p0;
          p0 = p1;
          p1 = p2;
        }
        val = p1;
      }
    }
    out[m] = val;
    spow *= smh;
  }
  return out;
}

std::vector<double> BasisEvaluator::values(const std::array<double, 3>& p) const {
  auto prof = theta_profile(p[2]);
  double phi = std::atan2(p[1], p[0]);
  std::vector<double> out(2 * l + 1);
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < 2 * l + 1; ++j) {
    int m = trig_m[j];
    double ang = m * phi;
    double tr = (m == 0) ? 1.0 : (trig_kind[j] == 0 ? r2 * std::cos(ang) : r2 * std::sin(ang));
    out[j] = sign_flip[j] * prof[m] * tr;
  }
  return out;
}

double BasisEvaluator::eval_sum(const std::vector<double>& c,
                                const std::array<double, 3>& p) const {
  auto v = values(p);
  double s = 0;
  for (size_t j = 0; j < v.size(); ++j) s += c[j] * v[j];
  return s;
}

std::vector<double> BasisEvaluator::eval_sum_grid(const std::vector<double>& c,
                                                  const std::vector<double>& thetas,
                                                  const std::vector<double>& phis) const {
  // Fold coefficients into per-frequency amplitudes.
  std::vector<double> amp_cos(l + 1, 0.0), amp_sin(l + 1, 0.0);
  const double r2 = std::sqrt(2.0);
  for (int j = 0; j < 2 * l + 1; ++j) {
    int m = trig_m[j];
    double w = sign_flip[j] * c[j] * (m == 0 ? 1.0 : r2);
    (trig_kind[j] == 0 ? amp_cos[m] : amp_sin[m]) += w;
  }
  size_t np = phis.size();
  std::vector<double> cos_tab(np * (l + 1)), sin_tab(np * (l + 1));
  for (size_t jp = 0; jp < np; ++jp)
    for (int m = 0; m <= l; ++m) {
      cos_tab[jp * (l + 1) + m] = std::cos(m * phis[jp]);
      sin_tab[jp * (l + 1) + m] = std::sin(m * phis[jp]);
    }
  std::vector<double> out(thetas.size() * np);
  std::vector<double> a(l + 1), b(l + 1);
  for (size_t it = 0; it < thetas.size(); ++it) {
    auto prof = theta_profile(std::cos(thetas[it]));
    for (int m = 0; m <= l; ++m) {
      a[m] = prof[m] * amp_cos[m];
      b[m] = prof[m] * amp_sin[m];
    }
    for (size_t jp = 0; jp < np; ++jp) {
      const double* ct = &cos_tab[jp * (l + 1)];
      const double* st = &sin_tab[jp * (l + 1)];
      double s = 0;
      for (int m = 0; m <= l; ++m) s += a[m] * ct[m] + b[m] * st[m];
      out[it * np + jp] = s;
    }
  }
  return out;
}

double legendre(int l, double t) {
  if (l < 0) throw rejected_parameter("legendre: negative degree");
  if (std::abs(t) > 1.0) throw rejected_parameter("legendre: |t| > 1");
  double p0 = 1.0, p1 = t;
  if (l == 0) return p0;
  for (int k = 1; k < l; ++k) {
    double p2 = ((2.0 * k + 1) * t * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double wavelength(int l) {
  if (l < 0) throw rejected_parameter("wavelength: negative degree");
  return 3.0 * M_PI / (2.0 * l + 1.0);
}

double equator_value(int l, int m) {
  m = std::abs(m);
  if (m > l) throw rejected_parameter("equator_value: |m| > l");
  if ((l - m) % 2) return 0.0;
  Int prod = binomial(l + m, (l + m) / 2) * binomial(l - m, (l - m) / 2);
  return std::sqrt((2.0 * l + 1) * prod.get_d()) * std::ldexp(1.0, -l);
}

double projection_kernel(int l, double dot) { return (2.0 * l + 1) * legendre(l, dot); }

SphereQuad sphere_quadrature(int degree) {
  if (degree < 0) throw rejected_parameter("sphere_quadrature: negative degree");
  int n = degree / 2 + 1;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  SphereQuad q;
  q.t.resize(n);
  q.wt.resize(n);
  for (int i = 0; i < n; ++i) {
    q.t[i] = es.eigenvalues()(i);
    double f = es.eigenvectors()(0, i);
    q.wt[i] = f * f;  // normalized: Σ wt = 1 for the unit-mass measure
  }
  q.nphi = degree + 2;
  return q;
}

}  // namespace hsph
