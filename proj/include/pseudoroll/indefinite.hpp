#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pseudoroll/signature.hpp"

namespace pseudoroll {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Indefinite scalar product <x,y> = x^T J y.
double j_inner(const VectorXd& x, const VectorXd& y, const Signature& sig);

/// Causal character of a vector; the zero vector counts as Spacelike.
CausalClass causal_class(const VectorXd& x, const Signature& sig,
                         double tol = kCausalTol);

/// J-adjoint A -> J A^T J (entrywise (i,j) -> eps_i eps_j a_ji).
/// Satisfies (A^J)^J = A and (AB)^J = B^J A^J; on the group it is the inverse,
/// on the algebra it is -A.
MatrixXd j_adjoint(const MatrixXd& a, const Signature& sig);

/// Does a satisfy the group constraint a^T J a = J within tol (max norm)?
bool is_group_element(const MatrixXd& a, const Signature& sig,
                      double tol = kConstraintTol);

/// Does a satisfy the algebra constraint a^T J = -J a within tol (max norm)?
bool is_algebra_element(const MatrixXd& a, const Signature& sig,
                        double tol = kConstraintTol);

/// Invariant matrix scalar product <<A,B>> = tr(A^J B).
/// Bi-invariant under the pseudo-orthogonal group; on algebra elements
/// <<A,A>> = -tr(A^2).
double matrix_j_inner(const MatrixXd& a, const MatrixXd& b,
                      const Signature& sig);

/// Causal character of a matrix under <<.,.>>; the zero matrix is Spacelike.
CausalClass matrix_causal_class(const MatrixXd& a, const Signature& sig,
                                double tol = kCausalTol);

/// Element of the pseudo-orthogonal group O_nu(n).  `checked` enforces the
/// defining constraint; `trusted` skips it for values produced by operations
/// that guarantee it structurally (e.g. the matrix exponential of an algebra
/// element, whose residual is pure rounding and may exceed a strict tol for
/// large hyperbolic generators).
struct GroupElement {
  MatrixXd mat;
  Signature sig;

  static GroupElement checked(MatrixXd m, const Signature& sig,
                              double tol = kConstraintTol);
  static GroupElement trusted(MatrixXd m, const Signature& sig);

  /// Group inverse, computed as the J-adjoint (no linear solve needed).
  GroupElement inverse() const;

 private:
  GroupElement(MatrixXd m, const Signature& s) : mat(std::move(m)), sig(s) {}
};

/// Element of the Lie algebra o_nu(n).
struct AlgebraElement {
  MatrixXd mat;
  Signature sig;

  static AlgebraElement checked(MatrixXd m, const Signature& sig,
                                double tol = kConstraintTol);
  static AlgebraElement trusted(MatrixXd m, const Signature& sig);

 private:
  AlgebraElement(MatrixXd m, const Signature& s) : mat(std::move(m)), sig(s) {}
};

/// Connected-component tag of O_nu(n): signs of (det A_T, det A_S), the
/// determinants of the leading nu x nu and trailing (n-nu) x (n-nu) diagonal
/// blocks, in this order.  An absent block (nu = 0 or nu = n) contributes +.
enum class Orientation { PP, PM, MP, MM };

const char* to_string(Orientation o);

/// Component of a group element.  Throws DegenerateBlockError when a block
/// determinant is within tol of zero (cannot happen in exact arithmetic for a
/// true group element, but can for near-group numerical input).
Orientation orientation_component(const GroupElement& a, double tol = 1e-12);

/// Component of a product from the components of the factors.
Orientation compose(Orientation a, Orientation b);

/// Matrix exponential of an algebra element; lands in the group.
GroupElement matrix_exp(const AlgebraElement& a);

/// Raw matrix exponential (no constraint bookkeeping); used by integrators.
MatrixXd matrix_exp_raw(const MatrixXd& a);

/// Standard algebra basis element W_ij = E_ij - eps_i eps_j E_ji for
/// 1 <= i < j <= n (indices 1-based, matching the usual double-index
/// labeling of this basis).  Spans o_nu(n) as i < j ranges over all pairs.
AlgebraElement lie_basis(int i, int j, const Signature& sig);

/// Commutator [W_ij, W_kl] in closed form (exact integer arithmetic on the
/// basis).  1-based indices, i < j and k < l required.
MatrixXd commutator_w(int i, int j, int k, int l, const Signature& sig);

/// Coefficients c_(rs) of the expansion  W_ij * A = sum_{r<s} c_rs A * W_rs
/// for a group element A: converts left translation of a basis element into
/// right translations.  Returns an upper-triangular matrix holding c_rs at
/// (r-1, s-1) (1-based pair indices, zero elsewhere).
MatrixXd left_right_convert(const GroupElement& a, int i, int j);

/// Result of indefinite orthonormalization: vectors f_i with
/// <f_i, f_j> = signs_i * delta_ij, ordered timelike-first.
struct IndefiniteFrame {
  std::vector<VectorXd> vectors;
  VectorXd signs;
};

/// Gram-Schmidt with causal pivoting under an arbitrary symmetric bilinear
/// form given by its Gram matrix.  At each step the remaining vector with the
/// largest |<v,v>| (after projecting out the accepted ones) is normalized;
/// a pivot with |<v,v>| <= tol raises DegenerateSubspaceError.  The input
/// vectors must be linearly independent.
IndefiniteFrame orthonormalize_with_gram(const std::vector<VectorXd>& vecs,
                                         const MatrixXd& gram,
                                         double tol = 1e-10);

/// Same, for the ambient product of `sig`.
IndefiniteFrame indefinite_orthonormalize(const std::vector<VectorXd>& vecs,
                                          const Signature& sig,
                                          double tol = 1e-10);

/// Pick an orthonormal basis of the span of `vecs` (which may be linearly
/// dependent) of the prescribed dimension, skipping degenerate pivots as long
/// as some admissible pivot remains.  Used to build tangent-space bases out
/// of projected coordinate vectors.
IndefiniteFrame orthonormalize_spanning(const std::vector<VectorXd>& vecs,
                                        const MatrixXd& gram, int target_dim,
                                        double tol = 1e-10);

}  // namespace pseudoroll
