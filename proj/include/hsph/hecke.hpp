#pragma once

#include <hsph/harmonics.hpp>
#include <hsph/quat.hpp>

#include <map>
#include <vector>

namespace hsph {

// Exact matrix of the composition operator  f ↦ f ∘ R_γ  on H_l, in the
// integer basis of build_basis(l); column j holds the coordinates of the
// image of basis element j.
std::vector<std::vector<Rat>> composition_matrix(const HarmonicBasis& B,
                                                 const HurwitzQuaternion& g);

// Exact Hecke matrix of T_m on H_l (normalized unit-mass convention:
// T_m f(x) = Σ_{γ ∈ O(m)} f(γ.x)).  Built through the coset decomposition
// T_m = S_m ∘ T_1; exactly self-adjoint with respect to the exact Gram.
struct HeckeMatrix {
  int l = 0;
  long long m = 1;
  std::vector<std::vector<Rat>> entries;  // (2l+1) x (2l+1), row-major

  // Symmetric float matrix in the orthonormal basis e_j = f_j/√gram_jj.
  std::vector<double> ortho(const HarmonicBasis& B) const;
};

const HeckeMatrix& hecke_matrix(int l, long long m);  // cached per (l, m)

// dim H_l^{O×} by the tetrahedral character sum.
long invariant_dimension_character(int l);

// The same dimension as the exact rank (= trace) of the averaging projector,
// counted combinatorially over monomials fixed by the 12 signed permutations;
// no linear algebra involved.
long invariant_dimension_trace(int l);

// Orthonormal float basis of H_l^{O×}, expressed in the orthonormal basis of
// H_l.  Construction: exact rational projector (I + M_c + M_c²)/3 on the
// subspace fixed by the diagonal sign rotations, then eigenvectors of its
// symmetric orthonormal-coordinate form.  The exact rank of the projector is
// verified against both dimension formulas.
struct InvariantBasis {
  int l = 0;
  long dim = 0;
  std::vector<std::vector<double>> columns;  // dim vectors of length 2l+1
};
const InvariantBasis& invariant_subspace(int l);  // cached

// Float matrix of T_m restricted to H_l^{O×} in the invariant_subspace basis,
// computed as 24 Σ_r ⟨u_j ∘ R_{γ_r}, u_i⟩ by quadrature exact for degree 2l.
// Symmetric; cached per (l, m).
const std::vector<double>& hecke_invariant(int l, long long m);

struct Eigenfunction {
  int l = 0;
  std::vector<double> coeffs;            // orthonormal-basis coordinates in H_l
  std::map<long long, double> lambda;    // eigenvalues T_m φ = λ(m) φ
  double nu(long long p) const;          // λ(p) / (24 √p)
};

// Joint eigenbasis B_l of the T_m on H_l^{O×} (even l): T_3 eigenspaces split
// by T_5 then T_7; ordered by (λ(3), λ(5), λ(7)); sign fixed by making the
// largest-|coordinate| entry positive.  λ(m) prefilled for odd m ≤ 15.
struct EigenBasis {
  int l = 0;
  std::vector<Eigenfunction> funcs;
};
const EigenBasis& eigenbasis(int l);  // cached

// λ_φ(m) for any odd m (Rayleigh quotient on the invariant subspace, with a
// residual check); extends the prefilled set on demand.
double eigenvalue(int l, int idx, long long m);

}  // namespace hsph
