#ifndef FROBTK_RATIONAL_HPP
#define FROBTK_RATIONAL_HPP

#include "frobtk/ap.hpp"

#include <vector>
#include <string>

namespace frobtk {

// Exact element of Q(i). Values of the mod-5 character live here; the other
// built-in characters only need the rational part.
struct GaussRat {
    Rat re, im;

    GaussRat() : re(0), im(0) {}
    GaussRat(long x) : re(x), im(0) {}
    GaussRat(Rat r) : re(std::move(r)), im(0) {}
    GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_rational() const { return im == 0; }
    GaussRat conj() const { return {re, -im}; }

    friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
        Rat d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
    GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
    GaussRat& operator*=(const GaussRat& o) { *this = *this * o; return *this; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

    APComplex to_ap(mpfr_prec_t prec) const { return {APReal(re, prec), APReal(im, prec)}; }
    std::string str() const;
};

Rat binomial(unsigned long n, unsigned long k);

// Bernoulli numbers B_0, B_1 = -1/2, B_2, ... (exact, cached, thread-safe).
Rat bernoulli_number(unsigned long n);

// Bernoulli polynomial B_n(x) evaluated at an exact rational.
Rat bernoulli_poly(unsigned long n, const Rat& x);

std::string rat_str(const Rat& r);
Rat rat_from_str(const std::string& s);

}  // namespace frobtk

#endif
