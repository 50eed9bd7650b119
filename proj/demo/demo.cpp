// Small tour of the library on T_{2,2}: the shift element, its witness
// bounds, one Fourier coefficient, a Britton reduction and a Hecke algebra.

#include <iostream>

#include "neretin/bruhat.hpp"
#include "neretin/dsl.hpp"
#include "neretin/hecke.hpp"
#include "neretin/hnn.hpp"
#include "neretin/orbit.hpp"

using namespace neretin;

int main() {
  const TreeShape T22(2, 2);
  auto s = shift_element();
  std::cout << "shift        " << s.to_string() << "\n";
  std::cout << "shift^2      " << (s * s).to_string() << "\n";
  std::cout << "shift^-1     " << s.inverse().to_string() << "\n";

  auto ball = find_displaced_ball(s);
  std::cout << "displaced ball at height " << ball.n0 << "\n";
  for (const auto& r : star_table(s, 2, 6)) {
    std::cout << "  n=" << r.n << "  LB=" << r.lower_bound << "  LB*mu^2=" << r.product << "\n";
  }
  auto cert = growth_certificate(s);
  std::cout << "LB(n) mu(K^(n))^2 increases from n=" << cert.n1 << " on\n";

  auto f = BruhatMeasure::atom(s) + BruhatMeasure::indicator({Element::identity(T22), 1}, Rational(3));
  std::cout << "phi^f(sK^(2)) = " << fourier_coefficient(f, {s, 2}) << "\n";
  std::cout << "phi^f(K^(1))  = " << fourier_coefficient(f, {Element::identity(T22), 1}) << "\n";

  BaumslagSolitarBase bs(2, 3);
  auto w = hnn_parse(bs, "t a^2 t^-1 a t a^3");
  auto r = britton_reduce(bs, w);
  std::cout << "BS(2,3): t a^2 t^-1 a t a^3 has " << r.tau() << " stable letter(s)\n";

  auto p = hecke_preset("s3");
  HeckeAlgebra H(p.Q, p.k);
  std::cout << "Hecke algebra of (S3, <(0 1)>): dimension " << H.dimension() << ", c(1,1,0)=" << H.structure_constant(1, 1, 0)
            << ", c(1,1,1)=" << H.structure_constant(1, 1, 1) << "\n";
  return 0;
}
