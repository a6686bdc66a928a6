#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/LU>

#include "curvedfem/errors.hpp"
#include "curvedfem/types.hpp"

namespace curvedfem {

enum class CorrectionKind { Identity, ArcBlend, PolyEdgeBlend };

/// Curved correction Psi acting on affine-core coordinates.
///
/// Blend variants deform one edge (a, b) of the core triangle (a, b, c) onto a
/// boundary curve gamma and leave the two other edges fixed:
///
///   Psi(y) = y + lambda_a lambda_b Q(sigma),  sigma = (1 + lambda_b - lambda_a) / 2,
///   Q(s) = (gamma(s) - ((1 - s) a + s b)) / (s (1 - s)),
///
/// with (lambda_a, lambda_b, lambda_c) the barycentric coordinates of y. On
/// the edge (a, b) sigma is the chord parameter and lambda_a lambda_b =
/// s (1 - s), so Psi maps the chord point onto gamma(s). Q extends smoothly to
/// s = 0 and s = 1, which makes Psi a polynomial-like C-infinity map on the
/// whole core.
///
/// For ArcBlend gamma is the exact unit-circle arc between the angles theta_a
/// and theta_b; for PolyEdgeBlend it is the degree-q Lagrange interpolant of
/// that arc at q + 1 equally spaced angles, and Q is then a polynomial of
/// degree q - 2.
template <typename Scalar> class CurvedCorrection {
public:
  using Vec = Point2<Scalar>;
  using Mat = Mat2<Scalar>;

  CurvedCorrection() = default;

  static CurvedCorrection identity() { return CurvedCorrection(); }

  static CurvedCorrection arc_blend(const Vec &a, const Vec &b, const Vec &c,
                                    Scalar theta_a, Scalar theta_b) {
    CurvedCorrection out(CorrectionKind::ArcBlend, a, b, c, theta_a, theta_b);
    out.init_arc_series();
    return out;
  }

  static CurvedCorrection poly_blend(const Vec &a, const Vec &b, const Vec &c,
                                     Scalar theta_a, Scalar theta_b, int order) {
    if (order < 1 || order > 8)
      throw UnsupportedDegree("poly edge blend order must be in 1..8, got " +
                              std::to_string(order));
    CurvedCorrection out(CorrectionKind::PolyEdgeBlend, a, b, c, theta_a,
                         theta_b);
    out.order_ = order;
    // Q interpolates the divided gap at the interior nodes, which is exact
    // because the gap of the degree-q interpolant vanishes at s = 0 and 1.
    for (int i = 1; i < order; ++i) {
      const Scalar s = Scalar(i) / Scalar(order);
      const Vec point = arc_point(theta_a + s * (theta_b - theta_a));
      out.nodes_.push_back(s);
      out.values_.push_back((point - ((Scalar(1) - s) * a + s * b)) /
                            (s * (Scalar(1) - s)));
    }
    return out;
  }

  CorrectionKind kind() const { return kind_; }
  bool is_identity() const { return kind_ == CorrectionKind::Identity; }
  /// Polynomial order of the boundary curve; 0 for the exact arc.
  int order() const { return order_; }
  const Vec &edge_start() const { return a_; }
  const Vec &edge_end() const { return b_; }
  const Vec &apex() const { return c_; }
  Scalar theta_a() const { return theta_a_; }
  Scalar theta_b() const { return theta_b_; }
  Scalar core_diameter() const { return diameter_; }

  /// Boundary curve gamma(s) = Psi((1 - s) a + s b).
  Vec boundary_curve(Scalar s) const {
    return (*this)((Scalar(1) - s) * a_ + s * b_);
  }

  Vec operator()(const Vec &y) const {
    if (is_identity())
      return y;
    const auto st = local(y);
    return y + st.la * st.lb * divided_gap(st.sigma, 0);
  }

  Mat jacobian(const Vec &y) const {
    if (is_identity())
      return Mat::Identity();
    const auto st = local(y);
    const Vec grad_p = st.lb * grad_la_ + st.la * grad_lb_;
    return Mat::Identity() + divided_gap(st.sigma, 0) * grad_p.transpose() +
           (st.la * st.lb) * divided_gap(st.sigma, 1) * grad_sigma_.transpose();
  }

  Tensor222<Scalar> hessian(const Vec &y) const {
    if (is_identity())
      return zero_tensor<Scalar>();
    const auto st = local(y);
    const Scalar p = st.la * st.lb;
    const Vec grad_p = st.lb * grad_la_ + st.la * grad_lb_;
    const Mat hess_p =
        grad_la_ * grad_lb_.transpose() + grad_lb_ * grad_la_.transpose();
    const Mat mixed = grad_p * grad_sigma_.transpose() +
                      grad_sigma_ * grad_p.transpose();
    const Mat ss = grad_sigma_ * grad_sigma_.transpose();
    const Vec q0 = divided_gap(st.sigma, 0);
    const Vec q1 = divided_gap(st.sigma, 1);
    const Vec q2 = divided_gap(st.sigma, 2);
    Tensor222<Scalar> out;
    for (int m = 0; m < 2; ++m)
      out[m] = q0[m] * hess_p + q1[m] * mixed + p * q2[m] * ss;
    return out;
  }

  /// Psi^{-1}(x) by damped Newton seeded at y = x. Converges to
  /// |Psi(y) - x| <= tol_factor * diameter.
  Vec inverse(const Vec &x, Scalar tol_factor = Scalar(1e-12),
              int max_iterations = 50) const {
    using std::isfinite;
    if (is_identity())
      return x;
    const Scalar tol = tol_factor * diameter_;
    Vec y = x;
    Vec r = (*this)(y) - x;
    Scalar res = r.norm();
    for (int it = 0; it < max_iterations; ++it) {
      if (res <= tol)
        return y;
      const Mat J = jacobian(y);
      const Scalar det = J.determinant();
      if (!(det > Scalar(0)))
        break;
      const Vec step = -J.inverse() * r;
      Scalar damping = 1;
      Vec trial = y + step;
      Vec r_trial = (*this)(trial)-x;
      for (int k = 0; k < 30 && !(r_trial.norm() < res); ++k) {
        damping /= 2;
        trial = y + damping * step;
        r_trial = (*this)(trial)-x;
      }
      if (!isfinite(r_trial.norm()))
        break;
      y = trial;
      r = r_trial;
      res = r.norm();
    }
    if (res <= tol)
      return y;
    std::ostringstream os;
    os << "Newton iteration for the inverse curved correction did not converge "
          "at x = ("
       << x.transpose() << "), residual " << res;
    throw NewtonDivergence(os.str());
  }

  /// D(Psi^{-1})(x) = DPsi(Psi^{-1}(x))^{-1}.
  Mat inverse_jacobian(const Vec &x) const {
    return jacobian(inverse(x)).inverse();
  }

  /// D^2(Psi^{-1}) at x = Psi(y), from differentiating DPsi^{-1} DPsi = I:
  /// D^2(Psi^{-1})_r = -sum_m B_rm B^T D^2Psi_m B with B = DPsi(y)^{-1}.
  Tensor222<Scalar> inverse_hessian_at(const Vec &y) const {
    const Mat B = jacobian(y).inverse();
    const Tensor222<Scalar> out = left_apply<Scalar>(B, congruence(hessian(y), B));
    return {-out[0], -out[1]};
  }

  Tensor222<Scalar> inverse_hessian(const Vec &x) const {
    return inverse_hessian_at(inverse(x));
  }

private:
  struct Local {
    Scalar la, lb, sigma;
  };

  CurvedCorrection(CorrectionKind kind, const Vec &a, const Vec &b,
                   const Vec &c, Scalar theta_a, Scalar theta_b)
      : kind_(kind), a_(a), b_(b), c_(c), theta_a_(theta_a), theta_b_(theta_b) {
    using std::abs;
    Mat edges;
    edges.col(0) = b - a;
    edges.col(1) = c - a;
    if (!(abs(edges.determinant()) > Scalar(0)))
      throw DegenerateTriangle("curved correction on a degenerate core");
    const Mat inv = edges.inverse();
    grad_lb_ = inv.row(0).transpose();
    const Vec grad_lc = inv.row(1).transpose();
    grad_la_ = -grad_lb_ - grad_lc;
    grad_sigma_ = (grad_lb_ - grad_la_) / Scalar(2);
    diameter_ = std::max({(b - a).norm(), (c - a).norm(), (c - b).norm()});
  }

  static Vec arc_point(Scalar theta) {
    using std::cos;
    using std::sin;
    return Vec(cos(theta), sin(theta));
  }

  Local local(const Vec &y) const {
    const Vec d = y - a_;
    const Scalar lb = grad_lb_.dot(d);
    const Scalar la = Scalar(1) + grad_la_.dot(d);
    return {la, lb, (Scalar(1) + lb - la) / Scalar(2)};
  }

  // With c = (theta_b - theta_a) / 2, u = 2 s - 1 and (e_r, e_t) the radial
  // and tangential unit vectors at the arc midpoint,
  //   gamma - chord = (cos(u c) - cos c) e_r + (sin(u c) - u sin c) e_t.
  // Dividing the Taylor series by s (1 - s) = (1 - u^2) / 4 termwise gives
  //   Q = sum_j A_j u^{2j} e_r + sum_j B_j u^{2j+1} e_t,
  //   A_j = -4 sum_{k>j} (-1)^k c^{2k} / (2k)!,
  //   B_j = -4 sum_{k>j} (-1)^k c^{2k+1} / (2k+1)!.
  void init_arc_series() {
    using std::cos;
    using std::sin;
    const Scalar c = (theta_b_ - theta_a_) / Scalar(2);
    const Scalar mid = (theta_a_ + theta_b_) / Scalar(2);
    e_r_ = Vec(cos(mid), sin(mid));
    e_t_ = Vec(-sin(mid), cos(mid));
    std::vector<Scalar> even(kSeriesTerms + 2), odd(kSeriesTerms + 2);
    Scalar term = 1; // c^n / n!
    for (int n = 1; n <= 2 * kSeriesTerms + 3; ++n) {
      term *= c / Scalar(n);
      const int k = n / 2;
      if (k > kSeriesTerms + 1)
        break;
      const Scalar sign = (k % 2 == 0) ? Scalar(1) : Scalar(-1);
      if (n % 2 == 0)
        even[k] = sign * term;
      else
        odd[k] = sign * term;
    }
    arc_even_.assign(kSeriesTerms, Scalar(0));
    arc_odd_.assign(kSeriesTerms, Scalar(0));
    Scalar tail_even = 0, tail_odd = 0;
    for (int j = kSeriesTerms - 1; j >= 0; --j) {
      tail_even += even[j + 1];
      tail_odd += odd[j + 1];
      arc_even_[j] = Scalar(-4) * tail_even;
      arc_odd_[j] = Scalar(-4) * tail_odd;
    }
  }

  /// Derivative of order `deriv` in s of Q(s).
  Vec divided_gap(Scalar s, int deriv) const {
    if (kind_ == CorrectionKind::ArcBlend) {
      const Scalar u = Scalar(2) * s - Scalar(1);
      // Horner for p(u) = sum_j A_j u^{2j} (even) and u sum_j B_j u^{2j}.
      Scalar ev[3] = {0, 0, 0}, od[3] = {0, 0, 0};
      for (int j = kSeriesTerms - 1; j >= 0; --j) {
        const Scalar pw = Scalar(2 * j);
        // Accumulate values and u-derivatives of u^{2j} and u^{2j+1}.
        const Scalar u2j = power(u, 2 * j);
        ev[0] += arc_even_[j] * u2j;
        od[0] += arc_odd_[j] * u2j * u;
        if (j >= 1)
          ev[1] += arc_even_[j] * pw * power(u, 2 * j - 1);
        od[1] += arc_odd_[j] * (pw + 1) * u2j;
        if (j >= 1) {
          ev[2] += arc_even_[j] * pw * (pw - 1) * power(u, 2 * j - 2);
          od[2] += arc_odd_[j] * (pw + 1) * pw * power(u, 2 * j - 1);
        }
      }
      const Scalar chain = deriv == 0 ? Scalar(1) : (deriv == 1 ? Scalar(2) : Scalar(4));
      return chain * (ev[deriv] * e_r_ + od[deriv] * e_t_);
    }
    Vec out = Vec::Zero();
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      out += lagrange(i, s, deriv) * values_[i];
    return out;
  }

  static Scalar power(Scalar x, int n) {
    Scalar r = 1;
    for (int i = 0; i < n; ++i)
      r *= x;
    return r;
  }

  /// Derivative of order `deriv` (0, 1 or 2) of the i-th Lagrange basis
  /// polynomial on `nodes_`.
  Scalar lagrange(std::size_t i, Scalar s, int deriv) const {
    const std::size_t n = nodes_.size();
    auto factor = [&](std::size_t j) {
      return (s - nodes_[j]) / (nodes_[i] - nodes_[j]);
    };
    Scalar total = 0;
    if (deriv == 0) {
      total = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i)
          total *= factor(j);
      return total;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i)
        continue;
      const Scalar dk = Scalar(1) / (nodes_[i] - nodes_[k]);
      if (deriv == 1) {
        Scalar prod = dk;
        for (std::size_t j = 0; j < n; ++j)
          if (j != i && j != k)
            prod *= factor(j);
        total += prod;
        continue;
      }
      for (std::size_t l = 0; l < n; ++l) {
        if (l == i || l == k)
          continue;
        Scalar prod = dk / (nodes_[i] - nodes_[l]);
        for (std::size_t j = 0; j < n; ++j)
          if (j != i && j != k && j != l)
            prod *= factor(j);
        total += prod;
      }
    }
    return total;
  }

  static constexpr int kSeriesTerms = 24;

  CorrectionKind kind_{CorrectionKind::Identity};
  int order_{0};
  Vec a_{Vec::Zero()}, b_{Vec::Zero()}, c_{Vec::Zero()};
  Scalar theta_a_{0}, theta_b_{0};
  Vec grad_la_{Vec::Zero()}, grad_lb_{Vec::Zero()}, grad_sigma_{Vec::Zero()};
  Scalar diameter_{1};
  // PolyEdgeBlend: interior nodes and divided gaps.
  std::vector<Scalar> nodes_;
  std::vector<Vec> values_;
  // ArcBlend: series coefficients and midpoint frame.
  std::vector<Scalar> arc_even_, arc_odd_;
  Vec e_r_{Vec::UnitX()}, e_t_{Vec::UnitY()};
};

using CurvedCorrectiond = CurvedCorrection<double>;

} // namespace curvedfem
