#include "frobtk/ap.hpp"

#include <vector>
#include <cstdio>

namespace frobtk {

std::string APReal::str(long digits) const {
    if (digits <= 0) digits = static_cast<long>(prec() / 3.32) - 2;
    if (digits < 2) digits = 2;
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%ldRg", digits);
    char* out = nullptr;
    mpfr_asprintf(&out, fmt, v_);
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

APReal ap_pi(mpfr_prec_t prec) { APReal r(prec); mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }
APReal ap_log2(mpfr_prec_t prec) { APReal r(prec); mpfr_const_log2(r.raw(), MPFR_RNDN); return r; }
APReal ap_exp(const APReal& x) { APReal r(x.prec()); mpfr_exp(r.raw(), x.raw(), MPFR_RNDN); return r; }
APReal ap_log(const APReal& x) { APReal r(x.prec()); mpfr_log(r.raw(), x.raw(), MPFR_RNDN); return r; }
APReal ap_sqrt(const APReal& x) { APReal r(x.prec()); mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN); return r; }
APReal ap_abs(const APReal& x) { APReal r(x.prec()); mpfr_abs(r.raw(), x.raw(), MPFR_RNDN); return r; }
APReal ap_sin(const APReal& x) { APReal r(x.prec()); mpfr_sin(r.raw(), x.raw(), MPFR_RNDN); return r; }
APReal ap_cos(const APReal& x) { APReal r(x.prec()); mpfr_cos(r.raw(), x.raw(), MPFR_RNDN); return r; }
APReal ap_atan2(const APReal& y, const APReal& x) {
    APReal r(APReal::pmax(y, x)); mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN); return r;
}
APReal ap_pow(const APReal& x, const APReal& y) {
    APReal r(APReal::pmax(x, y)); mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN); return r;
}
APReal ap_pow_si(const APReal& x, long n) { APReal r(x.prec()); mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN); return r; }
APReal ap_digamma(const APReal& x) { APReal r(x.prec()); mpfr_digamma(r.raw(), x.raw(), MPFR_RNDN); return r; }
APReal ap_gamma(const APReal& x) { APReal r(x.prec()); mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN); return r; }
APReal ap_zeta_ui(unsigned long k, mpfr_prec_t prec) { APReal r(prec); mpfr_zeta_ui(r.raw(), k, MPFR_RNDN); return r; }
APReal ap_exp10(long e, mpfr_prec_t prec) {
    APReal r(prec); mpfr_ui_pow_ui(r.raw(), 10u, static_cast<unsigned long>(e >= 0 ? e : -e), MPFR_RNDN);
    if (e < 0) mpfr_si_div(r.raw(), 1, r.raw(), MPFR_RNDN);
    return r;
}

APReal APComplex::abs() const {
    APReal r(prec());
    mpfr_hypot(r.raw(), re_.raw(), im_.raw(), MPFR_RNDN);
    return r;
}

std::string APComplex::str(long digits) const {
    return "(" + re_.str(digits) + (im_.sign() < 0 ? " - " : " + ") + ap_abs(im_).str(digits) + "i)";
}

APComplex ap_exp(const APComplex& z) {
    mpfr_prec_t p = z.prec();
    APReal m(p), s(p), c(p);
    mpfr_exp(m.raw(), z.re().raw(), MPFR_RNDN);
    mpfr_sin_cos(s.raw(), c.raw(), z.im().raw(), MPFR_RNDN);
    return {m * c, m * s};
}

APComplex ap_log(const APComplex& z) {
    APReal m = z.abs();
    return {ap_log(m), ap_atan2(z.im(), z.re())};
}

APComplex ap_i(mpfr_prec_t prec) { return {APReal(0L, prec), APReal(1L, prec)}; }

APComplex ap_exp_mul(const APComplex& w, const APComplex& log_base) { return ap_exp(w * log_base); }

APComplex ap_pow_si(const APComplex& z, long n) {
    mpfr_prec_t p = z.prec();
    APComplex r(1L, p);
    APComplex base = z;
    unsigned long k = n >= 0 ? n : -n;
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    if (n < 0) r = APComplex(1L, p) / r;
    return r;
}

APComplex ap_root_of_unity(long k, long n, mpfr_prec_t prec) {
    APReal ang = ap_pi(prec) * (2 * k) / n;
    return {ap_cos(ang), ap_sin(ang)};
}

}  // namespace frobtk
