#include "frobtk/exactvalue.hpp"

#include <algorithm>
#include <stdexcept>

namespace frobtk {

APComplex PiValue::to_ap(mpfr_prec_t prec) const {
    APReal mag = APReal(coeff, prec) * ap_pow_si(ap_pi(prec), pi_pow);
    APComplex r(prec);
    switch (((i_pow % 4) + 4) % 4) {
        case 0: r = APComplex(mag, APReal(prec)); break;
        case 1: r = APComplex(APReal(prec), mag); break;
        case 2: r = APComplex(-mag, APReal(prec)); break;
        case 3: r = APComplex(APReal(prec), -mag); break;
    }
    return r;
}

std::string PiValue::str() const {
    if (coeff == 0) return "0";
    std::string s = rat_str(coeff);
    if (pi_pow == 1) s += "*pi";
    else if (pi_pow != 0) s += "*pi^" + std::to_string(pi_pow);
    int ip = ((i_pow % 4) + 4) % 4;
    if (ip == 1) s += "*i";
    else if (ip == 2) s = "-(" + s + ")";
    else if (ip == 3) s += "*(-i)";
    return s;
}

APReal ZetaMonomial::to_ap(mpfr_prec_t prec) const {
    APReal v = ap_pow_si(ap_pi(prec), pi_pow);
    for (int k : zeta_odd) v *= ap_zeta_ui(static_cast<unsigned long>(k), prec);
    return v;
}

std::string ZetaMonomial::str() const {
    std::string s;
    if (pi_pow) s = "pi^" + std::to_string(pi_pow);
    for (int k : zeta_odd) {
        if (!s.empty()) s += "*";
        s += "zeta(" + std::to_string(k) + ")";
    }
    return s.empty() ? "1" : s;
}

Rat zeta_even_over_pi_power(int two_n) {
    if (two_n <= 0 || two_n % 2 != 0) throw std::invalid_argument("zeta_even_over_pi_power: even positive argument required");
    unsigned long n = static_cast<unsigned long>(two_n);
    // zeta(2n) = (-1)^{n+1} B_{2n} (2 pi)^{2n} / (2 (2n)!)
    Rat b = bernoulli_number(n);
    Rat fact(1);
    for (unsigned long k = 2; k <= n; ++k) fact *= static_cast<long>(k);
    Rat two_pow(1);
    for (unsigned long k = 0; k < n; ++k) two_pow *= 2;
    Rat val = b * two_pow / (2 * fact);
    if ((n / 2) % 2 == 0) val = -val;
    return val;
}

ZetaCombo ZetaCombo::constant(const Rat& r) {
    ZetaCombo c;
    if (r != 0) c.terms.push_back({r, ZetaMonomial{}});
    return c;
}

ZetaCombo ZetaCombo::zeta(int k) {
    ZetaCombo c;
    if (k % 2 == 0) c.add_term(zeta_even_over_pi_power(k), ZetaMonomial{k, {}});
    else c.add_term(Rat(1), ZetaMonomial{0, {k}});
    return c;
}

void ZetaCombo::add_term(const Rat& c, const ZetaMonomial& m) {
    if (c == 0) return;
    auto it = std::lower_bound(terms.begin(), terms.end(), m,
                               [](const auto& t, const ZetaMonomial& mm) { return t.second < mm; });
    if (it != terms.end() && it->second == m) {
        it->first += c;
        if (it->first == 0) terms.erase(it);
    } else {
        terms.insert(it, {c, m});
    }
}

APReal ZetaCombo::to_ap(mpfr_prec_t prec) const {
    APReal acc(prec);
    for (const auto& [c, m] : terms) acc += APReal(c, prec) * m.to_ap(prec);
    return acc;
}

std::string ZetaCombo::str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [c, m] : terms) {
        std::string cs = rat_str(c);
        if (!s.empty()) {
            if (!cs.empty() && cs[0] == '-') { s += " - "; cs = cs.substr(1); }
            else s += " + ";
        }
        s += cs;
        std::string ms = m.str();
        if (ms != "1") s += "*" + ms;
    }
    return s;
}

ZetaCombo operator+(const ZetaCombo& a, const ZetaCombo& b) {
    ZetaCombo r = a;
    for (const auto& [c, m] : b.terms) r.add_term(c, m);
    return r;
}

ZetaCombo operator*(const Rat& c, const ZetaCombo& a) {
    ZetaCombo r;
    if (c == 0) return r;
    r.terms = a.terms;
    for (auto& t : r.terms) t.first *= c;
    return r;
}

ZetaCombo operator*(const ZetaCombo& a, const ZetaCombo& b) {
    ZetaCombo r;
    for (const auto& [ca, ma] : a.terms)
        for (const auto& [cb, mb] : b.terms) {
            ZetaMonomial m;
            m.pi_pow = ma.pi_pow + mb.pi_pow;
            m.zeta_odd = ma.zeta_odd;
            m.zeta_odd.insert(m.zeta_odd.end(), mb.zeta_odd.begin(), mb.zeta_odd.end());
            std::sort(m.zeta_odd.begin(), m.zeta_odd.end());
            r.add_term(ca * cb, m);
        }
    return r;
}

}  // namespace frobtk
