#include <hsph/hecke.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hsph {

namespace {

// Index maps from degree d-1 monomials to their x/y/z-multiplied successors.
struct TargetMaps {
  std::vector<int> t[3];
};

const TargetMaps& target_maps(int d) {
  static std::map<int, TargetMaps> cache;
  auto it = cache.find(d);
  if (it == cache.end()) {
    TargetMaps tm;
    const auto& prev = mono_list(d - 1);
    for (auto& v : tm.t) v.resize(prev.size());
    for (size_t k = 0; k < prev.size(); ++k) {
      auto [a, b, c] = prev[k];
      tm.t[0][k] = mono_index(d, a + 1, b);
      tm.t[1][k] = mono_index(d, a, b + 1);
      tm.t[2][k] = mono_index(d, a, b);
    }
    it = cache.emplace(d, std::move(tm)).first;
  }
  return it->second;
}

// Images of all degree-l monomials under the substitution x -> M x (M an
// integer matrix); table[μ] is dense over mono_list(l).
std::vector<std::vector<Int>> monomial_images(int l,
                                              const std::array<std::array<Int, 3>, 3>& M) {
  std::vector<std::vector<Int>> prev(1, std::vector<Int>(1, Int(1)));
  for (int d = 1; d <= l; ++d) {
    const auto& monos = mono_list(d);
    const auto& tm = target_maps(d);
    std::vector<std::vector<Int>> cur(monos.size(), std::vector<Int>(mono_count(d), Int(0)));
    for (size_t i = 0; i < monos.size(); ++i) {
      auto [a, b, c] = monos[i];
      int var, pa = a, pb = b;
      if (a > 0) {
        var = 0;
        --pa;
      } else if (b > 0) {
        var = 1;
        --pb;
      } else {
        var = 2;
      }
      const auto& par = prev[mono_index(d - 1, pa, pb)];
      auto& out = cur[i];
      for (int t = 0; t < 3; ++t) {
        if (M[var][t] == 0) continue;
        const auto& tgt = tm.t[t];
        for (size_t k = 0; k < par.size(); ++k) {
          if (par[k] == 0) continue;
          mpz_addmul(out[tgt[k]].get_mpz_t(), par[k].get_mpz_t(), M[var][t].get_mpz_t());
        }
      }
    }
    prev = std::move(cur);
  }
  return prev;
}

// Image of basis element j under a signed permutation rotation.
std::vector<Int> compose_signed(const HarmonicBasis& B, int j, const Mat3Q& R) {
  int l = B.l;
  // (Rx)_i = s[i] * x_{p[i]}: variable i in f is replaced accordingly.
  int p[3];
  int s[3];
  for (int i = 0; i < 3; ++i) {
    p[i] = -1;
    for (int k = 0; k < 3; ++k)
      if (R(i, k) != 0) {
        p[i] = k;
        s[i] = R(i, k) == 1 ? 1 : -1;
      }
  }
  std::vector<Int> out(mono_count(l), Int(0));
  const auto& monos = mono_list(l);
  for (size_t idx = 0; idx < monos.size(); ++idx) {
    if (B.coeff[j][idx] == 0) continue;
    auto [a, b, c] = monos[idx];
    int e[3] = {a, b, c}, ne[3] = {0, 0, 0};
    int sign = 1;
    for (int i = 0; i < 3; ++i) {
      ne[p[i]] += e[i];
      if (s[i] < 0 && e[i] % 2) sign = -sign;
    }
    Int v = B.coeff[j][idx];
    if (sign < 0) v = -v;
    out[mono_index(l, ne[0], ne[1])] += v;
  }
  return out;
}

void accumulate_apply(const HarmonicBasis& B, int j,
                      const std::vector<std::vector<Int>>& table, std::vector<Int>& acc) {
  for (size_t mu = 0; mu < table.size(); ++mu) {
    const Int& c = B.coeff[j][mu];
    if (c == 0) continue;
    const auto& img = table[mu];
    for (size_t k = 0; k < img.size(); ++k) {
      if (img[k] == 0) continue;
      mpz_addmul(acc[k].get_mpz_t(), c.get_mpz_t(), img[k].get_mpz_t());
    }
  }
}

std::vector<std::vector<Rat>> matmul(const std::vector<std::vector<Rat>>& A,
                                     const std::vector<std::vector<Rat>>& Bm) {
  size_t n = A.size();
  std::vector<std::vector<Rat>> C(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (A[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j) {
        if (Bm[k][j] == 0) continue;
        C[i][j] += A[i][k] * Bm[k][j];
      }
    }
  return C;
}

}  // namespace

std::vector<std::vector<Rat>> composition_matrix(const HarmonicBasis& B,
                                                 const HurwitzQuaternion& g) {
  int l = B.l;
  int dim = B.dim();
  std::vector<std::vector<Rat>> A(dim, std::vector<Rat>(dim, Rat(0)));
  if (g.norm() == 1) {
    Mat3Q R = rotation_of(g);
    for (int j = 0; j < dim; ++j) {
      auto img = compose_signed(B, j, R);
      auto coords = coordinates_of(B, img, Int(1));
      for (int i = 0; i < dim; ++i) A[i][j] = coords[i];
    }
  } else {
    auto table = monomial_images(l, int_rotation(g));
    Int denom;
    mpz_pow_ui(denom.get_mpz_t(), to_int(g.norm()).get_mpz_t(), l);
    for (int j = 0; j < dim; ++j) {
      std::vector<Int> img(mono_count(l), Int(0));
      accumulate_apply(B, j, table, img);
      auto coords = coordinates_of(B, img, denom);
      for (int i = 0; i < dim; ++i) A[i][j] = coords[i];
    }
  }
  return A;
}

namespace {

HeckeMatrix make_hecke(int l, long long m) {
  if (l < 0) throw rejected_parameter("hecke_matrix: l must be nonnegative");
  if (m <= 0 || m % 2 == 0) throw rejected_parameter("hecke_matrix: m must be odd, positive");
  const auto& B = build_basis(l);
  int dim = B.dim();
  HeckeMatrix H;
  H.l = l;
  H.m = m;

  if (m == 1) {
    // T_1 = Σ_{u ∈ O(1)} C_u: each of the 12 unit rotations appears twice.
    H.entries.assign(dim, std::vector<Rat>(dim, Rat(0)));
    auto rots = unit_rotations();
    for (int j = 0; j < dim; ++j) {
      std::vector<Int> img(mono_count(l), Int(0));
      for (const auto& R : rots) {
        auto part = compose_signed(B, j, R);
        for (size_t k = 0; k < img.size(); ++k) img[k] += part[k];
      }
      for (auto& c : img) c *= 2;
      auto coords = coordinates_of(B, img, Int(1));
      for (int i = 0; i < dim; ++i) H.entries[i][j] = coords[i];
    }
  } else {
    // Coset decomposition: T_m = S_m ∘ T_1 with S_m g = Σ_r g ∘ R_{γ_r}.
    const auto& A1 = hecke_matrix(l, 1).entries;
    std::vector<std::vector<Int>> img_sum(dim, std::vector<Int>(mono_count(l), Int(0)));
    for (const auto& rep : coset_representatives(m)) {
      auto table = monomial_images(l, int_rotation(rep));
      for (int j = 0; j < dim; ++j) accumulate_apply(B, j, table, img_sum[j]);
    }
    Int denom;
    mpz_pow_ui(denom.get_mpz_t(), to_int(m).get_mpz_t(), l);
    std::vector<std::vector<Rat>> AS(dim, std::vector<Rat>(dim, Rat(0)));
    for (int j = 0; j < dim; ++j) {
      auto coords = coordinates_of(B, img_sum[j], denom);
      for (int i = 0; i < dim; ++i) AS[i][j] = coords[i];
    }
    H.entries = matmul(AS, A1);
  }

  if (l == 0 && H.entries[0][0] != Rat(to_int(24 * sigma_divisors(m))))
    throw invariant_violation("hecke_matrix: trace on H_0 != 24 sigma(m)");
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (B.gram_diag[i] * H.entries[i][j] != H.entries[j][i] * B.gram_diag[j])
        throw invariant_violation("hecke_matrix: not self-adjoint for the exact Gram");
  return H;
}

}  // namespace

const HeckeMatrix& hecke_matrix(int l, long long m) {
  static std::map<std::pair<int, long long>, HeckeMatrix> cache;
  auto key = std::make_pair(l, m);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_hecke(l, m)).first;
  return it->second;
}

std::vector<double> HeckeMatrix::ortho(const HarmonicBasis& B) const {
  int dim = B.dim();
  std::vector<double> g(dim);
  for (int i = 0; i < dim; ++i) g[i] = std::sqrt(to_double(B.gram_diag[i]));
  std::vector<double> out(dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      out[i * dim + j] = g[i] * to_double(entries[i][j]) / g[j];
  return out;
}

long invariant_dimension_character(int l) {
  if (l < 0) throw rejected_parameter("invariant_dimension: l must be nonnegative");
  int c = l % 3 == 0 ? 1 : (l % 3 == 1 ? 0 : -1);
  long num = 2L * l + 1 + 3 * (l % 2 ? -1 : 1) + 8 * c;
  if (num % 12) throw invariant_violation("character sum not divisible by 12");
  return num / 12;
}

namespace {

long perm_trace(const Mat3Q& R, int d) {
  if (d < 0) return 0;
  int p[3];
  int s[3];
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      if (R(i, k) != 0) {
        p[i] = k;
        s[i] = R(i, k) == 1 ? 1 : -1;
      }
  long tr = 0;
  for (const auto& e : mono_list(d)) {
    bool fixed = true;
    for (int i = 0; i < 3 && fixed; ++i) fixed = e[p[i]] == e[i];
    if (!fixed) continue;
    int sign = 1;
    for (int i = 0; i < 3; ++i)
      if (s[i] < 0 && e[i] % 2) sign = -sign;
    tr += sign;
  }
  return tr;
}

}  // namespace

long invariant_dimension_trace(int l) {
  if (l < 0) throw rejected_parameter("invariant_dimension: l must be nonnegative");
  long sum = 0;
  for (const auto& R : unit_rotations()) sum += perm_trace(R, l) - perm_trace(R, l - 2);
  if (sum % 12) throw invariant_violation("projector trace not divisible by 12");
  return sum / 12;
}

namespace {

long exact_rank(std::vector<std::vector<Rat>> M) {
  size_t n = M.size();
  long rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < n && row < n; ++col) {
    size_t piv = row;
    while (piv < n && M[piv][col] == 0) ++piv;
    if (piv == n) continue;
    std::swap(M[piv], M[row]);
    for (size_t r = row + 1; r < n; ++r) {
      if (M[r][col] == 0) continue;
      Rat f = M[r][col] / M[row][col];
      for (size_t c = col; c < n; ++c) M[r][c] -= f * M[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

InvariantBasis make_invariant(int l) {
  long dim_char = invariant_dimension_character(l);
  long dim_trace = invariant_dimension_trace(l);
  if (dim_char != dim_trace)
    throw invariant_violation("invariant dimension: character sum != projector trace");
  InvariantBasis IB;
  IB.l = l;
  IB.dim = dim_char;
  if (dim_char == 0) return IB;

  const auto& B = build_basis(l);
  // Elements fixed by the diagonal sign rotations: cos-type with even m for
  // even l, sin-type with even m for odd l.
  std::vector<int> S;
  for (int j = 0; j < B.dim(); ++j)
    if (B.trig_m[j] % 2 == 0 && B.trig_kind[j] == (l % 2 ? 1 : 0)) S.push_back(j);
  size_t ns = S.size();

  auto Ac = composition_matrix(B, HurwitzQuaternion(1, 1, 1, 1));
  // The candidate block must be invariant under the 3-cycle.
  for (size_t je = 0; je < ns; ++je)
    for (int i = 0; i < B.dim(); ++i)
      if (Ac[i][S[je]] != 0 && std::find(S.begin(), S.end(), i) == S.end())
        throw invariant_violation("invariant_subspace: candidate block not cycle-invariant");

  std::vector<std::vector<Rat>> M(ns, std::vector<Rat>(ns, Rat(0)));
  for (size_t i = 0; i < ns; ++i)
    for (size_t j = 0; j < ns; ++j) M[i][j] = Ac[S[i]][S[j]];
  auto M2 = matmul(M, M);
  std::vector<std::vector<Rat>> P(ns, std::vector<Rat>(ns, Rat(0)));
  for (size_t i = 0; i < ns; ++i)
    for (size_t j = 0; j < ns; ++j) {
      P[i][j] = (Rat(i == j ? 1 : 0) + M[i][j] + M2[i][j]) / Rat(3);
      P[i][j].canonicalize();
    }
  auto P2 = matmul(P, P);
  for (size_t i = 0; i < ns; ++i)
    for (size_t j = 0; j < ns; ++j)
      if (P2[i][j] != P[i][j]) throw invariant_violation("averaging projector not idempotent");
  if (exact_rank(P) != dim_char)
    throw invariant_violation("invariant_subspace: projector rank != dimension formulas");

  // Symmetric form in orthonormal coordinates and its unit eigenvectors.
  Eigen::MatrixXd Po(ns, ns);
  std::vector<double> D(ns);
  for (size_t i = 0; i < ns; ++i) D[i] = std::sqrt(to_double(B.gram_diag[S[i]]));
  for (size_t i = 0; i < ns; ++i)
    for (size_t j = 0; j < ns; ++j) Po(i, j) = D[i] * to_double(P[i][j]) / D[j];
  if ((Po - Po.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw invariant_violation("invariant_subspace: projector not symmetric in orthonormal form");
  Eigen::MatrixXd Ps = 0.5 * (Po + Po.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Ps);
  std::vector<std::vector<double>> cols;
  for (int k = 0; k < static_cast<int>(ns); ++k) {
    if (es.eigenvalues()(k) < 0.5) continue;
    if (std::abs(es.eigenvalues()(k) - 1.0) > 1e-9)
      throw invariant_violation("invariant_subspace: projector eigenvalue far from 0/1");
    std::vector<double> v(B.dim(), 0.0);
    for (size_t i = 0; i < ns; ++i) v[S[i]] = es.eigenvectors()(i, k);
    cols.push_back(std::move(v));
  }
  if (static_cast<long>(cols.size()) != dim_char)
    throw invariant_violation("invariant_subspace: unit-eigenvalue count != dimension");
  // Canonical sign and order.
  for (auto& v : cols) {
    size_t arg = 0;
    for (size_t i = 1; i < v.size(); ++i)
      if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    if (v[arg] < 0)
      for (auto& x : v) x = -x;
  }
  std::sort(cols.begin(), cols.end());
  IB.columns = std::move(cols);
  return IB;
}

}  // namespace

const InvariantBasis& invariant_subspace(int l) {
  static std::map<int, InvariantBasis> cache;
  auto it = cache.find(l);
  if (it == cache.end()) it = cache.emplace(l, make_invariant(l)).first;
  return it->second;
}

namespace {

struct QuadCache {
  std::vector<std::array<double, 3>> nodes;
  std::vector<double> w;
  Eigen::MatrixXd baseU;  // nnodes x dim_inv
};

const QuadCache& quad_cache(int l) {
  static std::map<int, QuadCache> cache;
  auto it = cache.find(l);
  if (it == cache.end()) {
    const auto& U = invariant_subspace(l);
    const auto& B = build_basis(l);
    BasisEvaluator ev(B);
    auto q = sphere_quadrature(2 * l + 1);
    QuadCache qc;
    for (size_t i = 0; i < q.t.size(); ++i) {
      double s = std::sqrt(std::max(0.0, 1.0 - q.t[i] * q.t[i]));
      for (int j = 0; j < q.nphi; ++j) {
        double phi = 2 * M_PI * (j + 0.5) / q.nphi;
        qc.nodes.push_back({s * std::cos(phi), s * std::sin(phi), q.t[i]});
        qc.w.push_back(q.wt[i] / q.nphi);
      }
    }
    qc.baseU.resize(qc.nodes.size(), U.dim);
    for (size_t n = 0; n < qc.nodes.size(); ++n) {
      auto vals = ev.values(qc.nodes[n]);
      for (long k = 0; k < U.dim; ++k) {
        double s = 0;
        for (int i = 0; i < B.dim(); ++i) s += U.columns[k][i] * vals[i];
        qc.baseU(n, k) = s;
      }
    }
    it = cache.emplace(l, std::move(qc)).first;
  }
  return it->second;
}

std::vector<double> make_hecke_invariant(int l, long long m) {
  if (m <= 0 || m % 2 == 0)
    throw rejected_parameter("hecke_invariant: m must be odd, positive");
  const auto& U = invariant_subspace(l);
  long n = U.dim;
  if (n == 0) return {};
  const auto& B = build_basis(l);
  BasisEvaluator ev(B);
  const auto& qc = quad_cache(l);
  size_t nn = qc.nodes.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd rotU(nn, n);
  for (const auto& rep : coset_representatives(m)) {
    Mat3Q R = rotation_of(rep);
    double Rd[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) Rd[i][j] = to_double(R(i, j));
    for (size_t nd = 0; nd < nn; ++nd) {
      const auto& x = qc.nodes[nd];
      std::array<double, 3> y = {Rd[0][0] * x[0] + Rd[0][1] * x[1] + Rd[0][2] * x[2],
                                 Rd[1][0] * x[0] + Rd[1][1] * x[1] + Rd[1][2] * x[2],
                                 Rd[2][0] * x[0] + Rd[2][1] * x[1] + Rd[2][2] * x[2]};
      auto vals = ev.values(y);
      for (long k = 0; k < n; ++k) {
        double s = 0;
        for (int i = 0; i < B.dim(); ++i) s += U.columns[k][i] * vals[i];
        rotU(nd, k) = s;
      }
    }
    H += qc.baseU.transpose() * qc.w_asDiagonal_times(rotU);
  }
  H *= 24.0;
  double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  if ((H - H.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw invariant_violation("hecke_invariant: matrix not symmetric");
  Eigen::MatrixXd Hs = 0.5 * (H + H.transpose());
  std::vector<double> out(n * n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out[i * n + j] = Hs(i, j);
  return out;
}

}  // namespace

const std::vector<double>& hecke_invariant(int l, long long m) {
  static std::map<std::pair<int, long long>, std::vector<double>> cache;
  auto key = std::make_pair(l, m);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_hecke_invariant(l, m)).first;
  return it->second;
}

double Eigenfunction::nu(long long p) const {
  auto it = lambda.find(p);
  if (it == lambda.end())
    throw rejected_parameter("nu: eigenvalue for requested m not computed");
  return it->second / (24.0 * std::sqrt(static_cast<double>(p)));
}

namespace {

std::map<int, EigenBasis>& eigen_cache() {
  static std::map<int, EigenBasis> cache;
  return cache;
}

EigenBasis make_eigenbasis(int l) {
  if (l < 0 || l % 2)
    throw rejected_parameter("eigenbasis: defined for even l only");
  const auto& U = invariant_subspace(l);
  const auto& B = build_basis(l);
  EigenBasis EB;
  EB.l = l;
  long n = U.dim;
  if (n == 0) return EB;

  auto getH = [&](long long m) {
    return Eigen::Map<const Eigen::MatrixXd>(hecke_invariant(l, m).data(), n, n);
  };

  // T_3 eigenvectors, clustered by spectral gap, refined by T_5 then T_7.
  Eigen::MatrixXd H3 = getH(3);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H3);
  std::vector<Eigen::MatrixXd> blocks;
  {
    double gap = 1e-6 * std::max(1.0, H3.cwiseAbs().maxCoeff());
    long start = 0;
    for (long k = 1; k <= n; ++k) {
      if (k == n || es.eigenvalues()(k) - es.eigenvalues()(k - 1) > gap) {
        blocks.push_back(es.eigenvectors().middleCols(start, k - start));
        start = k;
      }
    }
  }
  for (long long mr : {5LL, 7LL}) {
    std::vector<Eigen::MatrixXd> next;
    Eigen::MatrixXd Hm = getH(mr);
    double gap = 1e-6 * std::max(1.0, Hm.cwiseAbs().maxCoeff());
    for (const auto& W : blocks) {
      if (W.cols() == 1) {
        next.push_back(W);
        continue;
      }
      Eigen::MatrixXd Hc = W.transpose() * Hm * W;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(0.5 * (Hc + Hc.transpose()));
      long start = 0;
      for (long k = 1; k <= W.cols(); ++k) {
        if (k == W.cols() || es2.eigenvalues()(k) - es2.eigenvalues()(k - 1) > gap) {
          next.push_back(W * es2.eigenvectors().middleCols(start, k - start));
          start = k;
        }
      }
    }
    blocks = std::move(next);
  }
  for (const auto& W : blocks)
    if (W.cols() != 1) {
      std::ostringstream msg;
      msg << "eigenbasis: unresolved degeneracy at l=" << l << ", multiplicity "
          << W.cols() << " with lambda(3)=" << (W.col(0).transpose() * H3 * W.col(0));
      throw invariant_violation(msg.str());
    }

  const std::vector<long long> default_ms = {1, 3, 5, 7, 9, 11, 13, 15};
  for (const auto& W : blocks) {
    Eigenfunction f;
    f.l = l;
    Eigen::VectorXd w = W.col(0);
    w.normalize();
    for (long long m : default_ms) {
      Eigen::MatrixXd Hm = getH(m);
      double lam = w.dot(Hm * w);
      if ((Hm * w - lam * w).norm() > 1e-8)
        throw invariant_violation("eigenbasis: residual above tolerance");
      f.lambda[m] = lam;
    }
    // Full-space coordinates and the invariance certificate.
    std::vector<double> v(B.dim(), 0.0);
    for (long k = 0; k < n; ++k)
      for (int i = 0; i < B.dim(); ++i) v[i] += w(k) * U.columns[k][i];
    f.coeffs = std::move(v);
    // Canonical sign: largest-|coordinate| entry positive.
    size_t arg = 0;
    for (size_t i = 1; i < f.coeffs.size(); ++i)
      if (std::abs(f.coeffs[i]) > std::abs(f.coeffs[arg])) arg = i;
    if (f.coeffs[arg] < 0) {
      for (auto& x : f.coeffs) x = -x;
      w = -w;
    }
    f.inv_coords.assign(w.data(), w.data() + n);
    EB.funcs.push_back(std::move(f));
  }

  std::sort(EB.funcs.begin(), EB.funcs.end(), [](const Eigenfunction& a, const Eigenfunction& b) {
    auto ka = std::make_tuple(a.lambda.at(3), a.lambda.at(5), a.lambda.at(7));
    auto kb = std::make_tuple(b.lambda.at(3), b.lambda.at(5), b.lambda.at(7));
    return ka < kb;
  });

  // T_1-averaging fixes every eigenfunction: P_1 v = v within 1e-10.
  auto A1o = hecke_matrix(l, 1).ortho(B);
  int dim = B.dim();
  for (const auto& f : EB.funcs) {
    double err = 0;
    for (int i = 0; i < dim; ++i) {
      double s = 0;
      for (int j = 0; j < dim; ++j) s += A1o[i * dim + j] * f.coeffs[j];
      err += std::pow(s / 24.0 - f.coeffs[i], 2);
    }
    if (std::sqrt(err) > 1e-10)
      throw invariant_violation("eigenbasis: averaging projector does not fix eigenfunction");
  }
  return EB;
}

}  // namespace

const EigenBasis& eigenbasis(int l) {
  auto& cache = eigen_cache();
  auto it = cache.find(l);
  if (it == cache.end()) it = cache.emplace(l, make_eigenbasis(l)).first;
  return it->second;
}

double eigenvalue(int l, int idx, long long m) {
  auto& cache = eigen_cache();
  auto it = cache.find(l);
  if (it == cache.end()) {
    eigenbasis(l);
    it = cache.find(l);
  }
  auto& EB = it->second;
  if (idx < 0 || idx >= static_cast<int>(EB.funcs.size()))
    throw rejected_parameter("eigenvalue: index out of range");
  auto& f = EB.funcs[idx];
  auto hit = f.lambda.find(m);
  if (hit != f.lambda.end()) return hit->second;
  long n = invariant_subspace(l).dim;
  Eigen::Map<const Eigen::MatrixXd> Hm(hecke_invariant(l, m).data(), n, n);
  Eigen::Map<const Eigen::VectorXd> w(f.inv_coords.data(), n);
  double lam = w.dot(Hm * w);
  if ((Hm * w - lam * w).norm() > 1e-8)
    throw invariant_violation("eigenvalue: residual above tolerance");
  f.lambda[m] = lam;
  return lam;
}

}  // namespace hsph
