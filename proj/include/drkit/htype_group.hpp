#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace drkit {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Two-step algebra v + z with [e_i, e_j] = sum_k b(k)(i, j) e_{dv+k}.
template <typename Scalar>
class HTypeAlgebra {
 public:
  HTypeAlgebra(int dim_v, int dim_z, std::vector<Mat<Scalar>> bracket)
      : dim_v_(dim_v), dim_z_(dim_z), b_(std::move(bracket)) {
    if (dim_v < 1 || dim_z < 1) throw std::invalid_argument("algebra dimensions must be positive");
    if (static_cast<int>(b_.size()) != dim_z) throw std::invalid_argument("bracket needs dim_z slices");
    for (const auto& B : b_) {
      if (B.rows() != dim_v || B.cols() != dim_v) throw std::invalid_argument("bracket slice has wrong shape");
      if ((B + B.transpose()).cwiseAbs().maxCoeff() > Scalar(0))
        throw std::invalid_argument("bracket tensor is not antisymmetric");
    }
    Mat<Scalar> flat(dim_v * dim_v, dim_z);
    for (int k = 0; k < dim_z; ++k) flat.col(k) = Eigen::Map<const Vec<Scalar>>(b_[k].data(), dim_v * dim_v);
    if (Eigen::FullPivLU<Mat<Scalar>>(flat).rank() < dim_z)
      throw std::invalid_argument("bracket is not onto the center");
  }

  int dim_v() const { return dim_v_; }
  int dim_z() const { return dim_z_; }
  int n() const { return dim_v_ + dim_z_; }
  Scalar Q() const { return Scalar(dim_v_ + 2 * dim_z_) / Scalar(2); }
  const Mat<Scalar>& slice(int k) const { return b_[k]; }

  // [x, y] in R^{dz}.
  Vec<Scalar> bracket(const Vec<Scalar>& x, const Vec<Scalar>& y) const {
    check_v(x);
    check_v(y);
    Vec<Scalar> out(dim_z_);
    for (int k = 0; k < dim_z_; ++k) out(k) = x.dot(b_[k] * y);
    return out;
  }

  // J_mu x, defined by <J_mu x, y> = mu . [x, y].
  Vec<Scalar> j_map(const Vec<Scalar>& mu, const Vec<Scalar>& x) const {
    check_v(x);
    if (mu.size() != dim_z_) throw std::invalid_argument("mu has wrong dimension");
    Vec<Scalar> out = Vec<Scalar>::Zero(dim_v_);
    for (int k = 0; k < dim_z_; ++k) out.noalias() += mu(k) * (b_[k].transpose() * x);
    return out;
  }

  // [x, e_j] . z, the coefficient in X_j = d/dx_j + (1/2)[x, e_j] . grad_z.
  Scalar bracket_ej_dot(const Vec<Scalar>& x, int j, const Vec<Scalar>& z) const {
    Scalar s(0);
    for (int k = 0; k < dim_z_; ++k) s += z(k) * b_[k].col(j).dot(x);
    return s;
  }

 private:
  void check_v(const Vec<Scalar>& x) const {
    if (x.size() != dim_v_) throw std::invalid_argument("vector has wrong dimension");
  }

  int dim_v_, dim_z_;
  std::vector<Mat<Scalar>> b_;
};

template <typename Scalar>
struct NPoint {
  Vec<Scalar> x;
  Vec<Scalar> z;
};

enum class AlgebraKind { heisenberg, quaternionic, custom };

// Standard structure: b(e_{2i-1}, e_{2i}) = 1.
template <typename Scalar>
HTypeAlgebra<Scalar> heisenberg(int d) {
  if (d < 1) throw std::invalid_argument("heisenberg(d) needs d >= 1");
  Mat<Scalar> B = Mat<Scalar>::Zero(2 * d, 2 * d);
  for (int i = 0; i < d; ++i) {
    B(2 * i, 2 * i + 1) = Scalar(1);
    B(2 * i + 1, 2 * i) = Scalar(-1);
  }
  return HTypeAlgebra<Scalar>(2 * d, 1, {B});
}

// J_{e_k} acts on each R^4 block as left multiplication by i, j, k on the quaternions.
template <typename Scalar>
HTypeAlgebra<Scalar> quaternionic(int nq) {
  if (nq < 1) throw std::invalid_argument("quaternionic(n) needs n >= 1");
  const int L[3][4][4] = {
      {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}},
      {{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}},
      {{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}};
  std::vector<Mat<Scalar>> b;
  for (int k = 0; k < 3; ++k) {
    Mat<Scalar> B = Mat<Scalar>::Zero(4 * nq, 4 * nq);
    for (int blk = 0; blk < nq; ++blk)
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) B(4 * blk + c, 4 * blk + r) = Scalar(L[k][r][c]);
    b.push_back(B);
  }
  return HTypeAlgebra<Scalar>(4 * nq, 3, b);
}

// Entries (i, j, k, value) with 1-based indices, i, j <= dv, k <= dz.
struct BracketEntry {
  int i, j, k;
  double value;
};

template <typename Scalar>
HTypeAlgebra<Scalar> custom_algebra(int dim_v, int dim_z, const std::vector<BracketEntry>& entries) {
  if (dim_v < 1 || dim_z < 1) throw std::invalid_argument("algebra dimensions must be positive");
  std::vector<Mat<Scalar>> b(dim_z, Mat<Scalar>::Zero(dim_v, dim_v));
  for (const auto& e : entries) {
    if (e.i < 1 || e.i > dim_v || e.j < 1 || e.j > dim_v || e.k < 1 || e.k > dim_z)
      throw std::invalid_argument("bracket entry index out of range");
    b[e.k - 1](e.i - 1, e.j - 1) = Scalar(e.value);
  }
  return HTypeAlgebra<Scalar>(dim_v, dim_z, b);
}

// Loads {dim_v, dim_z, entries: [[i, j, k, value], ...]}.
HTypeAlgebra<double> load_algebra_json(const std::string& path);

template <typename Scalar>
NPoint<Scalar> compose_n(const HTypeAlgebra<Scalar>& alg, const NPoint<Scalar>& p, const NPoint<Scalar>& q) {
  if (p.z.size() != alg.dim_z() || q.z.size() != alg.dim_z()) throw std::invalid_argument("center dimension mismatch");
  return {p.x + q.x, p.z + q.z + Scalar(0.5) * alg.bracket(p.x, q.x)};
}

template <typename Scalar>
NPoint<Scalar> inverse_n(const NPoint<Scalar>& p) {
  return {-p.x, -p.z};
}

template <typename Scalar>
NPoint<Scalar> dilate_n(const NPoint<Scalar>& p, Scalar a) {
  using std::sqrt;
  return {sqrt(a) * p.x, a * p.z};
}

struct HTypeReport {
  double max_violation = 0.0;
};

// Max of ||J_mu x| - |mu||x|| / (|mu||x|) over basis pairs and random samples.
HTypeReport verify_htype(const HTypeAlgebra<double>& alg, int samples, std::uint64_t seed);

// Fourth-order central difference with one Richardson step.
template <class G>
double richardson_derivative(G&& g, double h) {
  auto d4 = [&](double s) { return (g(-2 * s) - 8 * g(-s) + 8 * g(s) - g(2 * s)) / (12 * s); };
  const double coarse = d4(h), fine = d4(h / 2);
  return (16 * fine - coarse) / 15;
}

// X_j^N f(p), j = 1..n, along the flow p . exp(s e_j).
template <class F>
double left_invariant_derivative_n(const HTypeAlgebra<double>& alg, int j, F&& f, const NPoint<double>& p,
                                   double step = -1.0) {
  if (j < 1 || j > alg.n()) throw std::invalid_argument("field index out of range");
  if (step <= 0) step = 1e-4 * (1.0 + std::sqrt(p.x.squaredNorm() + p.z.squaredNorm()));
  auto g = [&](double s) {
    NPoint<double> q = p;
    if (j <= alg.dim_v()) {
      q.x(j - 1) += s;
      for (int k = 0; k < alg.dim_z(); ++k) q.z(k) += 0.5 * s * alg.slice(k).col(j - 1).dot(p.x);
    } else {
      q.z(j - 1 - alg.dim_v()) += s;
    }
    return f(q);
  };
  return richardson_derivative(g, step);
}

}  // namespace drkit
