#ifndef FROBTK_AP_HPP
#define FROBTK_AP_HPP

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>
#include <stdexcept>

namespace frobtk {

using Rat = mpq_class;
using Int = mpz_class;

inline mpfr_prec_t bits_for_digits(long digits) {
    // ceil(digits * log2(10)) plus guard
    return static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 16);
}

// Arbitrary-precision real scalar. Every value carries its working precision;
// binary operations use the larger precision of the operands.
class APReal {
public:
    explicit APReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    APReal(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    APReal(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    APReal(const Rat& x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
    APReal(const Int& x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    APReal(const char* s, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        if (mpfr_set_str(v_, s, 10, MPFR_RNDN) != 0)
            throw std::invalid_argument(std::string("APReal: cannot parse '") + s + "'");
    }

    APReal(const APReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    APReal(APReal&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
    APReal& operator=(const APReal& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    APReal& operator=(APReal&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~APReal() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }

    std::string str(long digits = 0) const;

    APReal& operator+=(const APReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    APReal& operator-=(const APReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    APReal& operator*=(const APReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    APReal& operator/=(const APReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend APReal operator+(const APReal& a, const APReal& b) { APReal r(pmax(a, b)); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend APReal operator-(const APReal& a, const APReal& b) { APReal r(pmax(a, b)); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend APReal operator*(const APReal& a, const APReal& b) { APReal r(pmax(a, b)); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend APReal operator/(const APReal& a, const APReal& b) { APReal r(pmax(a, b)); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend APReal operator-(const APReal& a) { APReal r(a.prec()); mpfr_neg(r.v_, a.v_, MPFR_RNDN); return r; }
    friend APReal operator*(long a, const APReal& b) { APReal r(b.prec()); mpfr_mul_si(r.v_, b.v_, a, MPFR_RNDN); return r; }
    friend APReal operator*(const APReal& a, long b) { return b * a; }
    friend APReal operator/(const APReal& a, long b) { APReal r(a.prec()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend APReal operator+(const APReal& a, long b) { APReal r(a.prec()); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend APReal operator-(const APReal& a, long b) { APReal r(a.prec()); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend APReal operator-(long a, const APReal& b) { APReal r(b.prec()); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }

    friend bool operator<(const APReal& a, const APReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const APReal& a, const APReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const APReal& a, const APReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const APReal& a, const APReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const APReal& a, const APReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    static mpfr_prec_t pmax(const APReal& a, const APReal& b) {
        return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
    }

private:
    mpfr_t v_;
};

APReal ap_pi(mpfr_prec_t prec);
APReal ap_log2(mpfr_prec_t prec);
APReal ap_exp(const APReal& x);
APReal ap_log(const APReal& x);
APReal ap_sqrt(const APReal& x);
APReal ap_abs(const APReal& x);
APReal ap_sin(const APReal& x);
APReal ap_cos(const APReal& x);
APReal ap_atan2(const APReal& y, const APReal& x);
APReal ap_pow(const APReal& x, const APReal& y);  // x > 0
APReal ap_pow_si(const APReal& x, long n);
APReal ap_digamma(const APReal& x);
APReal ap_gamma(const APReal& x);
APReal ap_zeta_ui(unsigned long k, mpfr_prec_t prec);
// 10^e at the given precision
APReal ap_exp10(long e, mpfr_prec_t prec);

// Complex scalar over two APReals of equal precision.
class APComplex {
public:
    explicit APComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
    APComplex(APReal re, APReal im) : re_(std::move(re)), im_(std::move(im)) {}
    APComplex(const APReal& re) : re_(re), im_(re.prec()) {}
    APComplex(long re, mpfr_prec_t prec) : re_(re, prec), im_(prec) {}

    const APReal& re() const { return re_; }
    const APReal& im() const { return im_; }
    APReal& re() { return re_; }
    APReal& im() { return im_; }
    mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }

    friend APComplex operator+(const APComplex& a, const APComplex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
    friend APComplex operator-(const APComplex& a, const APComplex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
    friend APComplex operator-(const APComplex& a) { return {-a.re_, -a.im_}; }
    friend APComplex operator*(const APComplex& a, const APComplex& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend APComplex operator*(const APReal& a, const APComplex& b) { return {a * b.re_, a * b.im_}; }
    friend APComplex operator*(const APComplex& a, const APReal& b) { return b * a; }
    friend APComplex operator*(long a, const APComplex& b) { return {a * b.re_, a * b.im_}; }
    friend APComplex operator/(const APComplex& a, const APComplex& b) {
        APReal d = b.re_ * b.re_ + b.im_ * b.im_;
        return {(a.re_ * b.re_ + a.im_ * b.im_) / d, (a.im_ * b.re_ - a.re_ * b.im_) / d};
    }
    friend APComplex operator/(const APComplex& a, const APReal& b) { return {a.re_ / b, a.im_ / b}; }
    friend APComplex operator/(const APComplex& a, long b) { return {a.re_ / b, a.im_ / b}; }
    APComplex& operator+=(const APComplex& o) { re_ += o.re_; im_ += o.im_; return *this; }
    APComplex& operator-=(const APComplex& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    APComplex& operator*=(const APComplex& o) { *this = *this * o; return *this; }

    APComplex conj() const { return {re_, -im_}; }
    APReal abs() const;
    std::string str(long digits = 0) const;

private:
    APReal re_, im_;
};

APComplex ap_exp(const APComplex& z);
// principal branch
APComplex ap_log(const APComplex& z);
APComplex ap_i(mpfr_prec_t prec);
// exp(w * log_base) for a precomputed log
APComplex ap_exp_mul(const APComplex& w, const APComplex& log_base);
// z^n for integer n
APComplex ap_pow_si(const APComplex& z, long n);
// e^{2*pi*i*k/n}
APComplex ap_root_of_unity(long k, long n, mpfr_prec_t prec);

}  // namespace frobtk

#endif
