#include "pseudoroll/indefinite.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pseudoroll {

namespace {

void require_square(const MatrixXd& a, const Signature& sig, const char* who) {
  if (a.rows() != sig.n || a.cols() != sig.n)
    throw DimensionError(std::string(who) + ": expected " +
                         std::to_string(sig.n) + "x" + std::to_string(sig.n) +
                         " matrix, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
}

void require_pair_order(int i, int j, int n, const char* who) {
  if (!(1 <= i && i < j && j <= n))
    throw IndexOrderError(std::string(who) + ": need 1 <= i < j <= n, got i=" +
                          std::to_string(i) + " j=" + std::to_string(j) +
                          " n=" + std::to_string(n));
}

}  // namespace

double j_inner(const VectorXd& x, const VectorXd& y, const Signature& sig) {
  if (x.size() != sig.n || y.size() != sig.n)
    throw DimensionError("j_inner: operand dimensions do not match signature");
  double acc = 0.0;
  for (int i = 0; i < sig.n; ++i) acc += sig.eps(i) * x(i) * y(i);
  return acc;
}

CausalClass causal_class(const VectorXd& x, const Signature& sig, double tol) {
  const double q = j_inner(x, x, sig);
  return classify_causal_value(q, x.isZero(0.0), tol);
}

MatrixXd j_adjoint(const MatrixXd& a, const Signature& sig) {
  require_square(a, sig, "j_adjoint");
  MatrixXd out(sig.n, sig.n);
  for (int i = 0; i < sig.n; ++i)
    for (int j = 0; j < sig.n; ++j)
      out(i, j) = sig.eps(i) * sig.eps(j) * a(j, i);
  return out;
}

bool is_group_element(const MatrixXd& a, const Signature& sig, double tol) {
  if (a.rows() != sig.n || a.cols() != sig.n) return false;
  const MatrixXd j = sig.gram();
  return (a.transpose() * j * a - j).cwiseAbs().maxCoeff() <= tol;
}

bool is_algebra_element(const MatrixXd& a, const Signature& sig, double tol) {
  if (a.rows() != sig.n || a.cols() != sig.n) return false;
  const MatrixXd j = sig.gram();
  return (a.transpose() * j + j * a).cwiseAbs().maxCoeff() <= tol;
}

double matrix_j_inner(const MatrixXd& a, const MatrixXd& b,
                      const Signature& sig) {
  require_square(a, sig, "matrix_j_inner");
  require_square(b, sig, "matrix_j_inner");
  // tr(A^J B) = sum_{i,j} eps_i eps_j a_ji b_ji, accumulated directly.
  double acc = 0.0;
  for (int i = 0; i < sig.n; ++i)
    for (int j = 0; j < sig.n; ++j)
      acc += sig.eps(i) * sig.eps(j) * a(j, i) * b(j, i);
  return acc;
}

CausalClass matrix_causal_class(const MatrixXd& a, const Signature& sig,
                                double tol) {
  const double q = matrix_j_inner(a, a, sig);
  return classify_causal_value(q, a.isZero(0.0), tol);
}

GroupElement GroupElement::checked(MatrixXd m, const Signature& sig,
                                   double tol) {
  require_square(m, sig, "GroupElement");
  if (!is_group_element(m, sig, tol))
    throw GroupConstraintError("GroupElement: X^T J X = J violated beyond tol");
  return GroupElement(std::move(m), sig);
}

GroupElement GroupElement::trusted(MatrixXd m, const Signature& sig) {
  require_square(m, sig, "GroupElement");
  return GroupElement(std::move(m), sig);
}

GroupElement GroupElement::inverse() const {
  return GroupElement(j_adjoint(mat, sig), sig);
}

AlgebraElement AlgebraElement::checked(MatrixXd m, const Signature& sig,
                                       double tol) {
  require_square(m, sig, "AlgebraElement");
  if (!is_algebra_element(m, sig, tol))
    throw AlgebraConstraintError(
        "AlgebraElement: A^T J = -J A violated beyond tol");
  return AlgebraElement(std::move(m), sig);
}

AlgebraElement AlgebraElement::trusted(MatrixXd m, const Signature& sig) {
  require_square(m, sig, "AlgebraElement");
  return AlgebraElement(std::move(m), sig);
}

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::PP: return "PP";
    case Orientation::PM: return "PM";
    case Orientation::MP: return "MP";
    default: return "MM";
  }
}

Orientation orientation_component(const GroupElement& a, double tol) {
  const int n = a.sig.n, nu = a.sig.nu;
  // Absent blocks (definite signature) contribute a + sign.
  double det_t = 1.0, det_s = 1.0;
  if (nu > 0) det_t = a.mat.topLeftCorner(nu, nu).determinant();
  if (nu < n) det_s = a.mat.bottomRightCorner(n - nu, n - nu).determinant();
  if (std::abs(det_t) <= tol || std::abs(det_s) <= tol)
    throw DegenerateBlockError(
        "orientation_component: block determinant too close to zero");
  if (det_t > 0) return det_s > 0 ? Orientation::PP : Orientation::PM;
  return det_s > 0 ? Orientation::MP : Orientation::MM;
}

Orientation compose(Orientation a, Orientation b) {
  const auto sign_t = [](Orientation o) {
    return (o == Orientation::PP || o == Orientation::PM) ? 1 : -1;
  };
  const auto sign_s = [](Orientation o) {
    return (o == Orientation::PP || o == Orientation::MP) ? 1 : -1;
  };
  const int t = sign_t(a) * sign_t(b), s = sign_s(a) * sign_s(b);
  if (t > 0) return s > 0 ? Orientation::PP : Orientation::PM;
  return s > 0 ? Orientation::MP : Orientation::MM;
}

MatrixXd matrix_exp_raw(const MatrixXd& a) { return a.exp(); }

GroupElement matrix_exp(const AlgebraElement& a) {
  // exp maps the algebra into the group up to rounding, so skip the strict
  // constraint re-check: for hyperbolic generators of norm ~10 the unavoidable
  // residual is ~|exp|^2 * eps_mach, far above any fixed absolute tolerance.
  return GroupElement::trusted(a.mat.exp(), a.sig);
}

AlgebraElement lie_basis(int i, int j, const Signature& sig) {
  require_pair_order(i, j, sig.n, "lie_basis");
  MatrixXd w = MatrixXd::Zero(sig.n, sig.n);
  w(i - 1, j - 1) = 1.0;
  w(j - 1, i - 1) = -sig.eps(i - 1) * sig.eps(j - 1);
  return AlgebraElement::trusted(std::move(w), sig);
}

MatrixXd commutator_w(int i, int j, int k, int l, const Signature& sig) {
  require_pair_order(i, j, sig.n, "commutator_w");
  require_pair_order(k, l, sig.n, "commutator_w");
  // [W_ij, W_kl] closes on delta-contractions of the four indices.  Work it
  // out as E-matrix combinations; every coefficient is a signed product of
  // eps's, so the result is exact.
  const auto E = [&](int r, int c) {
    MatrixXd e = MatrixXd::Zero(sig.n, sig.n);
    e(r - 1, c - 1) = 1.0;
    return e;
  };
  const auto eps = [&](int r) { return sig.eps(r - 1); };
  const auto d = [](int r, int c) { return r == c ? 1.0 : 0.0; };

  MatrixXd out = MatrixXd::Zero(sig.n, sig.n);
  // W_ij = E_ij - eps_i eps_j E_ji; expand the commutator of two such sums.
  // [E_ab, E_cd] = d(b,c) E_ad - d(d,a) E_cb.
  struct Term { int a, b; double coeff; };
  const Term left[2] = {{i, j, 1.0}, {j, i, -eps(i) * eps(j)}};
  const Term right[2] = {{k, l, 1.0}, {l, k, -eps(k) * eps(l)}};
  for (const Term& p : left)
    for (const Term& q : right) {
      const double c = p.coeff * q.coeff;
      if (d(p.b, q.a) != 0.0) out += c * E(p.a, q.b);
      if (d(q.b, p.a) != 0.0) out -= c * E(q.a, p.b);
    }
  return out;
}

MatrixXd left_right_convert(const GroupElement& g, int i, int j) {
  const Signature& sig = g.sig;
  require_pair_order(i, j, sig.n, "left_right_convert");
  const MatrixXd& a = g.mat;
  // W_ij(1) A = sum_{r<s} eps_i eps_r (a_js a_ir - a_is a_jr) A W_rs(1);
  // indices 1-based in the formula, shifted below.
  MatrixXd c = MatrixXd::Zero(sig.n, sig.n);
  for (int r = 1; r <= sig.n; ++r)
    for (int s = r + 1; s <= sig.n; ++s)
      c(r - 1, s - 1) = sig.eps(i - 1) * sig.eps(r - 1) *
                        (a(j - 1, s - 1) * a(i - 1, r - 1) -
                         a(i - 1, s - 1) * a(j - 1, r - 1));
  return c;
}

namespace {

IndefiniteFrame orthonormalize_core(const std::vector<VectorXd>& vecs,
                                    const MatrixXd& gram, int target_dim,
                                    bool allow_skip, double tol) {
  if (vecs.empty()) throw DimensionError("orthonormalize: empty input");
  const auto dim = vecs.front().size();
  for (const auto& v : vecs)
    if (v.size() != dim)
      throw DimensionError("orthonormalize: mixed vector dimensions");
  if (gram.rows() != dim || gram.cols() != dim)
    throw DimensionError("orthonormalize: Gram matrix dimension mismatch");

  const auto inner = [&](const VectorXd& x, const VectorXd& y) {
    return double(x.dot(gram * y));
  };

  std::vector<VectorXd> work = vecs;
  std::vector<bool> used(work.size(), false);
  std::vector<VectorXd> frame;
  std::vector<double> signs;

  while (int(frame.size()) < target_dim) {
    // Causal pivoting: take the remaining vector with the largest |<v,v>|.
    int best = -1;
    double best_q = 0.0;
    for (std::size_t c = 0; c < work.size(); ++c) {
      if (used[c]) continue;
      const double q = std::abs(inner(work[c], work[c]));
      if (best < 0 || q > best_q) {
        best = int(c);
        best_q = q;
      }
    }
    if (best < 0 || best_q <= tol) {
      if (allow_skip && best >= 0) {
        // Spanning mode: since every remaining candidate has degenerate
        // product, no pivot can be extracted — the span really degenerates.
        throw DegenerateSubspaceError(
            "orthonormalize: span does not contain enough nondegenerate "
            "directions");
      }
      throw DegenerateSubspaceError(
          "orthonormalize: scalar product degenerates on the span "
          "(pivot |<v,v>| <= tol)");
    }

    const double q = inner(work[best], work[best]);
    const double s = q > 0 ? 1.0 : -1.0;
    VectorXd f = work[best] / std::sqrt(std::abs(q));
    used[best] = true;
    frame.push_back(f);
    signs.push_back(s);

    // Modified Gram-Schmidt sweep against the newly accepted vector.
    for (std::size_t c = 0; c < work.size(); ++c)
      if (!used[c]) work[c] -= s * inner(f, work[c]) * f;
  }

  // Order timelike-first (stable, so ties keep pivot order).
  std::vector<int> order(frame.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return signs[a] < signs[b]; });

  IndefiniteFrame out;
  out.signs.resize(Eigen::Index(frame.size()));
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.vectors.push_back(frame[order[k]]);
    out.signs(Eigen::Index(k)) = signs[order[k]];
  }
  return out;
}

}  // namespace

IndefiniteFrame orthonormalize_with_gram(const std::vector<VectorXd>& vecs,
                                         const MatrixXd& gram, double tol) {
  return orthonormalize_core(vecs, gram, int(vecs.size()), false, tol);
}

IndefiniteFrame indefinite_orthonormalize(const std::vector<VectorXd>& vecs,
                                          const Signature& sig, double tol) {
  for (const auto& v : vecs)
    if (v.size() != sig.n)
      throw DimensionError(
          "indefinite_orthonormalize: vector dimension != signature dimension");
  return orthonormalize_with_gram(vecs, sig.gram(), tol);
}

IndefiniteFrame orthonormalize_spanning(const std::vector<VectorXd>& vecs,
                                        const MatrixXd& gram, int target_dim,
                                        double tol) {
  if (target_dim < 1 || target_dim > int(vecs.size()))
    throw DimensionError("orthonormalize_spanning: bad target dimension");
  return orthonormalize_core(vecs, gram, target_dim, true, tol);
}

}  // namespace pseudoroll
