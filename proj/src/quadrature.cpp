#include "curvedfem/quadrature.hpp"

#include <array>
#include <string>

#include "curvedfem/errors.hpp"

namespace curvedfem {
namespace {

// Weights below are normalized to 1 and halved on expansion.
void add_centroid(QuadratureRule &rule, double w) {
  rule.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
  rule.weights.push_back(w / 2);
}

void add_orbit21(QuadratureRule &rule, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  for (const auto &p : {Point2d(a, a), Point2d(a, b), Point2d(b, a)}) {
    rule.points.push_back(p);
    rule.weights.push_back(w / 2);
  }
}

void add_orbit111(QuadratureRule &rule, double a, double b, double w) {
  const double c = 1.0 - a - b;
  for (const auto &p : {Point2d(a, b), Point2d(b, a), Point2d(a, c),
                        Point2d(c, a), Point2d(b, c), Point2d(c, b)}) {
    rule.points.push_back(p);
    rule.weights.push_back(w / 2);
  }
}

QuadratureRule centroid_rule() {
  QuadratureRule r;
  r.degree = 1;
  add_centroid(r, 1.0);
  return r;
}

QuadratureRule strang_fix_3() {
  QuadratureRule r;
  r.degree = 2;
  add_orbit21(r, 1.0 / 6.0, 1.0 / 3.0);
  return r;
}

// Dunavant rules; coefficients re-solved from the moment equations to full
// double precision.
QuadratureRule dunavant_6pt() {
  QuadratureRule r;
  r.degree = 4;
  add_orbit21(r, 0.44594849091596488632, 0.22338158967801146570);
  add_orbit21(r, 0.09157621350977074346, 0.10995174365532186764);
  return r;
}

QuadratureRule radon_7pt() {
  QuadratureRule r;
  r.degree = 5;
  add_centroid(r, 0.225);
  add_orbit21(r, 0.47014206410511508977, 0.13239415278850618074);
  add_orbit21(r, 0.10128650732345633880, 0.12593918054482715260);
  return r;
}

QuadratureRule dunavant_12pt() {
  QuadratureRule r;
  r.degree = 6;
  add_orbit21(r, 0.24928674517091042129, 0.11678627572637936603);
  add_orbit21(r, 0.06308901449150222834, 0.050844906370206816921);
  add_orbit111(r, 0.053145049844816947353, 0.31035245103378440542,
               0.082851075618373575194);
  return r;
}

QuadratureRule dunavant_16pt() {
  QuadratureRule r;
  r.degree = 8;
  add_centroid(r, 0.14431560767778716825);
  add_orbit21(r, 0.45929258829272315603, 0.095091634267284624794);
  add_orbit21(r, 0.17056930775176020662, 0.10321737053471825028);
  add_orbit21(r, 0.050547228317030975458, 0.032458497623198080311);
  add_orbit111(r, 0.0083947774099576053372, 0.26311282963463811342,
               0.027230314174434994265);
  return r;
}

} // namespace

const QuadratureRule &quadrature_rule(int degree) {
  static const std::array<QuadratureRule, 6> rules{
      centroid_rule(), strang_fix_3(),  dunavant_6pt(),
      radon_7pt(),     dunavant_12pt(), dunavant_16pt()};
  switch (degree) {
  case 1:
    return rules[0];
  case 2:
    return rules[1];
  case 3:
  case 4:
    return rules[2];
  case 5:
    return rules[3];
  case 6:
    return rules[4];
  case 7:
  case 8:
    return rules[5];
  default:
    throw UnsupportedDegree("quadrature degree must be in 1..8, got " +
                            std::to_string(degree));
  }
}

} // namespace curvedfem
