#pragma once

#include <cstdint>
#include <random>

#include "proca/symforms/form.hpp"

namespace proca::sym {

struct SectionSampler {
  int max_degree = 3;
  int max_terms = 3;
  int coeff_range = 3;
  int max_denominator = 2;

  Rational rational(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> num(-coeff_range, coeff_range);
    std::uniform_int_distribution<int> den(1, max_denominator);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
  }

  CRational coefficient(std::mt19937_64& rng) const {
    CRational c;
    do {
      c = CRational(rational(rng), rational(rng));
    } while (c.is_zero());
    return c;
  }

  // Real-valued coefficients, used for background potentials and couplings.
  CRational real_coefficient(std::mt19937_64& rng) const {
    Rational r;
    do {
      r = rational(rng);
    } while (sgn(r) == 0);
    return CRational(r);
  }

  Monomial monomial(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> var(0, 3);
    int e[4] = {0, 0, 0, 0};
    int total = deg(rng);
    for (int k = 0; k < total; ++k) ++e[var(rng)];
    return make_monomial(e[0], e[1], e[2], e[3]);
  }

  Poly poly(std::mt19937_64& rng, bool real = false) const {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    Poly p;
    int n = nterms(rng);
    for (int k = 0; k < n; ++k) p.add_term(monomial(rng), real ? real_coefficient(rng) : coefficient(rng));
    return p;
  }

  PolyForm form(std::mt19937_64& rng, int degree, bool real = false) const {
    PolyForm w(degree);
    for (int i = 0; i < w.size(); ++i) w[i] = poly(rng, real);
    return w;
  }
};

}  // namespace proca::sym
