#include "liesurf/pde_coefficients.hpp"

#include "liesurf/frame_positive.hpp"

namespace liesurf {

namespace {

struct Common {
  double s, B;
  cplx gb;
  double Pa, Pb, Pc;
  cplx D1;  // shared denominator factor of G1
};

Common common(cplx x, cplx g, double m1, double m3) {
  Common c;
  c.s = std::norm(g);
  c.B = 1 + c.s;
  c.gb = std::conj(g);
  const double s = c.s, B = c.B;
  c.Pa = poly_P({m1, 2 * m3, m1, 0, 0}, s);
  c.Pb = poly_P({m1, 4 * m3 - 2 * m1, m1, 0, 0}, s);
  c.Pc = poly_P({m1 * m1, 8 * m1 * m3 - 6 * m1 * m1, m1 * m1, 0, 0}, s);
  const double q = (B - 2) * (B - 2) * m1 + 4 * s * m3;
  c.D1 = std::pow(B, 4) * x * x + m1 * m1 * q * q +
         2.0 * x *
             (poly_P({1, 0, 6, 0, 1}, s) * m1 * m1 + poly_P({0, 4, -8, 4, 0}, s) * m1 * m3 +
              8 * s * s * m3 * m3);
  return c;
}

cplx g1_head(const Common& c, cplx x, double m1, double m3) {
  const double s = c.s, B = c.B;
  return std::pow(B, 6) * x * x +
         2.0 * B * B * x *
             (poly_P({0, 4, 2, 1, 1}, s) * m1 * m1 + poly_P({1, -5, 1, 3, 0}, s) * m1 * m3 +
              poly_P({0, 5, 3, 0, 0}, s) * m3 * m3);
}

GTable shared(const Common& c, cplx x, cplx sx, cplx g, double m1, double m3) {
  const double B = c.B, B2 = B * B, B4 = B2 * B2, B3 = B2 * B;
  const cplx dd = B3 * sx * (x + m1 * m1) * (B4 * x + c.Pb * c.Pb);
  GTable G{};
  G[1] = 2.0 * I * g * (B - 2) * (m3 - m1) *
         (2 * B4 * x * x + B4 * x * m1 * m1 - I * B2 * sx * (x + m1 * m1) * c.Pa -
          m1 * m1 * c.Pb * c.Pb) /
         dd;
  G[2] = 2.0 * I * g * (B - 2) * (m1 - m3) *
         (2 * B4 * x * x + B4 * x * m1 * m1 + I * B2 * sx * (x + m1 * m1) * c.Pa -
          m1 * m1 * c.Pb * c.Pb) /
         dd;
  G[3] = -4.0 * g * g * g * (B - 2) * (m1 - m3) * (m1 - m3) * (-3 * B2 * x + c.Pc) /
         (B3 * (x + m1 * m1) * (B4 * x + c.Pb * c.Pb));
  G[4] = (B2 * x + m1 * c.Pb) / (4.0 * x * (sx + I * m1) * (B2 * sx + I * c.Pb));
  G[5] = -I * g * g * (m1 - m3) / (sx * (sx + I * m1) * (B2 * sx + I * c.Pb));
  return G;
}

}  // namespace

GTable pde_coefficients(cplx x, cplx sx, cplx g, double m1, double m3) {
  const Common c = common(x, g, m1, m3);
  GTable G = shared(c, x, sx, g, m1, m3);
  const double s = c.s, B = c.B;
  const cplx tail = (1 + 6 * s - s * s * poly_P({13, -10, 3, 0, 1}, s)) * std::pow(m1, 3) -
                    2 * (B - 2) * poly_P({-1, -6, 18, 2, 3}, s) * m1 * m1 * m3 -
                    poly_P({0, 2, 66, -18, 14}, s) * m1 * m3 * m3;
  G[0] = (2.0 * c.gb * (g1_head(c, x, m1, m3) + 16 * s * s * (B - 2) * m1 * std::pow(m3, 3)) -
          2.0 * c.gb * m1 * tail) /
         (std::pow(B, 3) * c.D1);
  const double B2 = B * B;
  G[6] = (B2 * x + m1 * c.Pb) / (4.0 * x * (sx - I * m1) * (B2 * sx - I * c.Pb));
  G[7] = I * g * g * (m1 - m3) / (sx * (sx - I * m1) * (B2 * sx - I * c.Pb));
  return G;
}

GTable pde_coefficients_literal(cplx x, cplx sx, cplx g, double m1, double m3) {
  const Common c = common(x, g, m1, m3);
  GTable G = shared(c, x, sx, g, m1, m3);
  const double s = c.s, B = c.B;
  const cplx tail = (1 + 6 * s - s * s * poly_P({13, -10, 3, 0, 1}, s)) * std::pow(m1, 3) +
                    2 * (B - 2) * poly_P({-1, -6, 18, 2, 3}, s) * m1 * m1 * m3 +
                    poly_P({0, 2, 66, -18, 14}, s) * m1 * m3 * m3;
  G[0] = (2.0 * c.gb * (g1_head(c, x, m1, m3) - 32 * s * s * (B - 2) * m1 * std::pow(m3, 3)) -
          2.0 * c.gb * m1 * tail) /
         (std::pow(B, 3) * c.D1);
  G[6] = std::conj(G[4]);
  G[7] = std::conj(G[5]);
  return G;
}

cplx pde_rhs(const GTable& G, cplx d1g, cplx d2g, cplx d1gb, cplx d2gb, cplx d1K, cplx d2K) {
  return G[0] * d1g * d2g + G[1] * d1g * d2gb + G[2] * d1gb * d2g + G[3] * d1gb * d2gb +
         G[4] * d1K * d2g + G[5] * d1K * d2gb + G[6] * d2K * d1g + G[7] * d2K * d1gb;
}

}  // namespace liesurf
