#include <cmath>

#include <gtest/gtest.h>

#include "curvedfem/errors.hpp"
#include "curvedfem/quadrature.hpp"

using namespace curvedfem;

namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Integral of x^a y^b over the reference triangle.
double monomial_integral(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

} // namespace

TEST(Quadrature, CentroidRule) {
  const QuadratureRule &q = quadrature_rule(1);
  ASSERT_EQ(q.size(), 1u);
  EXPECT_DOUBLE_EQ(q.points[0].x(), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(q.points[0].y(), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(q.weights[0], 0.5);
}

TEST(Quadrature, ExactForMonomialsUpToDegree) {
  for (int degree = 1; degree <= 8; ++degree) {
    const QuadratureRule &q = quadrature_rule(degree);
    EXPECT_GE(q.degree, degree);
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) {
        double sum = 0;
        for (std::size_t i = 0; i < q.size(); ++i)
          sum += q.weights[i] * std::pow(q.points[i].x(), a) *
                 std::pow(q.points[i].y(), b);
        EXPECT_NEAR(sum, monomial_integral(a, b), 1e-15)
            << "degree " << degree << " monomial " << a << "," << b;
      }
  }
}

TEST(Quadrature, DegreeEightQuarticProduct) {
  const QuadratureRule &q = quadrature_rule(8);
  double sum = 0;
  for (std::size_t i = 0; i < q.size(); ++i)
    sum += q.weights[i] * std::pow(q.points[i].x(), 4) * std::pow(q.points[i].y(), 4);
  EXPECT_NEAR(sum, 576.0 / 3628800.0, 1e-13);
}

TEST(Quadrature, PositiveWeightsInsideTriangle) {
  for (int degree = 1; degree <= 8; ++degree) {
    const QuadratureRule &q = quadrature_rule(degree);
    ASSERT_EQ(q.points.size(), q.weights.size());
    double total = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      EXPECT_GT(q.weights[i], 0.0);
      EXPECT_GT(q.points[i].x(), 0.0);
      EXPECT_GT(q.points[i].y(), 0.0);
      EXPECT_LT(q.points[i].x() + q.points[i].y(), 1.0);
      total += q.weights[i];
    }
    EXPECT_NEAR(total, 0.5, 1e-15);
  }
}

TEST(Quadrature, UnsupportedDegrees) {
  EXPECT_THROW(quadrature_rule(0), UnsupportedDegree);
  EXPECT_THROW(quadrature_rule(9), UnsupportedDegree);
  EXPECT_THROW(quadrature_rule(-1), UnsupportedDegree);
}
