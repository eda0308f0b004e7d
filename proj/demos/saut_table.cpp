// Strong automorphism classes for a few quadratic polynomials.

#include <iostream>

#include "streamzero/streamzero.hpp"

int main() {
  using namespace streamzero;
  for (const char* s : {"z^2-3z+1", "-3z^2+1", "z^2-2z+1", "2z^2+3z+1", "z^2-4z+1", "-z^2+6z+1"}) {
    LaurentPoly p = parse_poly(s);
    SautReport r = saut_group(p);
    std::cout << s << "  D=" << r.discriminant << "  " << saut_kind_name(r.cls.kind);
    if (r.cls.generator) std::cout << "  generator " << r.cls.generator->to_string();
    if (r.cf) std::cout << "  cf " << r.cf->to_string();
    if (r.pell) std::cout << "  pell (" << r.pell->w << ", " << r.pell->v << ", " << r.pell->sign << ")";
    std::cout << '\n';
  }
}
