// Orbit of a rational point under z^2 - 3z + 1, its code word and the inverse stream.

#include <iostream>

#include "streamzero/streamzero.hpp"

int main() {
  using namespace streamzero;
  const LaurentPoly p = parse_poly("z^2-3z+1");

  auto o = periodic_orbit(p, {Rational(0), Rational(1, 2)});
  std::cout << "period:";
  for (const auto& v : o->values) std::cout << ' ' << to_string(v);
  CodeWord w = encode(p, *o);
  std::cout << "\nword from " << w.start << ':';
  for (long l : w.letters) std::cout << ' ' << l;
  std::cout << "\nadmissible: " << verdict_name(is_admissible(p, w)) << '\n';

  TorusSeq back = decode(p, w, -3, 3);
  std::cout << "decoded [-3,3]:";
  for (const auto& v : back.values) std::cout << ' ' << to_string(v);

  QuadraticInverse inv(p);
  std::cout << "\ninverse entries:\n";
  for (long n = -2; n <= 2; ++n) std::cout << "  " << n << ": " << inv.at(n).to_string() << '\n';
  std::cout << "entropy: " << entropy_exact(p) << '\n';
}
