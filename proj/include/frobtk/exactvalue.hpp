#ifndef FROBTK_EXACTVALUE_HPP
#define FROBTK_EXACTVALUE_HPP

#include "frobtk/rational.hpp"

#include <vector>
#include <string>

namespace frobtk {

// coeff * pi^pi_pow * i^i_pow  (closed-form constants such as -i pi^3/54)
struct PiValue {
    Rat coeff = Rat(0);
    int pi_pow = 0;
    int i_pow = 0;  // 0..3

    APComplex to_ap(mpfr_prec_t prec) const;
    std::string str() const;
    bool is_zero() const { return coeff == 0; }
};

// pi^{2a} * prod zeta(odd)  with weight 2a + sum of odd arguments
struct ZetaMonomial {
    int pi_pow = 0;                 // even
    std::vector<int> zeta_odd;      // sorted odd arguments >= 3

    int weight() const {
        int w = pi_pow;
        for (int k : zeta_odd) w += k;
        return w;
    }
    APReal to_ap(mpfr_prec_t prec) const;
    std::string str() const;
    friend bool operator==(const ZetaMonomial& a, const ZetaMonomial& b) {
        return a.pi_pow == b.pi_pow && a.zeta_odd == b.zeta_odd;
    }
    friend bool operator<(const ZetaMonomial& a, const ZetaMonomial& b) {
        if (a.pi_pow != b.pi_pow) return a.pi_pow < b.pi_pow;
        return a.zeta_odd < b.zeta_odd;
    }
};

// Q-linear combination of zeta monomials.
struct ZetaCombo {
    std::vector<std::pair<Rat, ZetaMonomial>> terms;  // kept sorted by monomial, nonzero coeffs

    static ZetaCombo zero() { return {}; }
    static ZetaCombo constant(const Rat& r);
    static ZetaCombo zeta(int k);  // zeta(k): even k collapses to a pi power

    void add_term(const Rat& c, const ZetaMonomial& m);
    bool is_zero() const { return terms.empty(); }
    APReal to_ap(mpfr_prec_t prec) const;
    std::string str() const;

    friend ZetaCombo operator+(const ZetaCombo& a, const ZetaCombo& b);
    friend ZetaCombo operator*(const Rat& c, const ZetaCombo& a);
    friend ZetaCombo operator*(const ZetaCombo& a, const ZetaCombo& b);
    friend bool operator==(const ZetaCombo& a, const ZetaCombo& b) { return a.terms == b.terms; }
};

// zeta(2n) / pi^(2n), exact
Rat zeta_even_over_pi_power(int two_n);

}  // namespace frobtk

#endif
