#include "frobtk/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace frobtk {
namespace lfunc {

using qseries::CaseLabel;

namespace {

// (a)^{-s} for real a > 0, complex s
APComplex neg_pow(const APReal& a, const APComplex& s, mpfr_prec_t prec) {
    if (s.im().is_zero()) {
        APReal r(prec);
        APReal ms = -s.re();
        mpfr_pow(r.raw(), a.raw(), ms.raw(), MPFR_RNDN);
        return APComplex(r);
    }
    APReal la = ap_log(a);
    return ap_exp(APComplex(-(s.re() * la), -(s.im() * la)));
}

// cached factorial-scaled Bernoulli coefficients B_{2j}/(2j)!
const Rat& bern_over_fact(long j) {
    static std::vector<Rat> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    while (static_cast<long>(cache.size()) <= j) {
        long jj = static_cast<long>(cache.size());
        Rat b = bernoulli_number(2 * static_cast<unsigned long>(jj));
        for (long t = 2; t <= 2 * jj; ++t) b /= t;
        cache.push_back(b);
    }
    return cache[static_cast<size_t>(j)];
}

}  // namespace

APComplex hurwitz_zeta(const APComplex& s, const APReal& a, mpfr_prec_t prec) {
    if (a.sign() <= 0) throw std::domain_error("hurwitz_zeta: a must be positive");
    if (s.im().is_zero() && s.re() == APReal(1L, prec)) throw std::domain_error("hurwitz_zeta: pole at s = 1");
    mpfr_prec_t wp = prec + 48;
    double smod = std::hypot(s.re().to_double(), s.im().to_double());

    long M = static_cast<long>(std::max({8.0, 0.14 * wp, 0.6 * smod})) + 2;
    for (int attempt = 0; attempt < 8; ++attempt) {
        APComplex acc(wp);
        for (long k = 0; k < M; ++k) acc += neg_pow(a + k, s, wp);
        APReal am = a + M;
        APComplex amps = neg_pow(am, s, wp);  // (a+M)^{-s}
        APComplex sm1 = s - APComplex(1L, wp);
        acc += amps * APComplex(am, APReal(wp)) / sm1;  // (a+M)^{1-s}/(s-1)
        acc += amps / 2L;
        // correction sum: B_{2j}/(2j)! * (s)_{2j-1} * (a+M)^{-s-2j+1}
        APComplex rising = s;                             // (s)_1
        APComplex pw = amps * APComplex(am, APReal(wp));  // (a+M)^{-s+1}
        APReal inv_am2 = APReal(1L, wp) / (am * am);
        bool converged = false;
        APReal prev_mag(wp);
        bool have_prev = false;
        for (long j = 1; j <= 80; ++j) {
            pw = pw * inv_am2;  // (a+M)^{-s-2j+1}
            APComplex term = APReal(bern_over_fact(j), wp) * (rising * pw);
            acc += term;
            APReal mag = term.abs();
            APReal thresh = acc.abs();
            mpfr_mul_2si(thresh.raw(), thresh.raw(), -(prec + 10), MPFR_RNDN);
            if (mag.is_zero() || mag < thresh) {
                converged = true;
                break;
            }
            if (have_prev && mag > prev_mag) break;  // asymptotic floor reached too early
            prev_mag = mag;
            have_prev = true;
            rising = rising * (s + APComplex(2 * j - 1, wp)) * (s + APComplex(2 * j, wp));
        }
        if (converged) return acc;
        M = M * 2 + 8;
    }
    throw std::runtime_error("hurwitz_zeta: Euler-Maclaurin failed to converge");
}

APReal hurwitz_zeta(const APReal& s, const APReal& a, mpfr_prec_t prec) {
    APComplex r = hurwitz_zeta(APComplex(s), a, prec);
    return r.re();
}

APReal riemann_zeta(const APReal& s, mpfr_prec_t prec) {
    return hurwitz_zeta(s, APReal(1L, prec), prec);
}

APComplex dirichlet_l(const DirichletCharacter& chi, const APComplex& s, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    long N = chi.modulus;
    bool at_one = s.im().is_zero() && s.re() == APReal(1L, wp);
    if (at_one) {
        GaussRat total;
        for (long k = 1; k <= N; ++k) total += chi(k);
        if (!total.is_zero()) throw std::domain_error("dirichlet_l: pole at s = 1 for the trivial character");
        // L(chi,1) = -(1/N) sum_k chi(k) psi(k/N)
        APComplex acc(wp);
        for (long k = 1; k <= N; ++k) {
            const GaussRat& c = chi(k);
            if (c.is_zero()) continue;
            APReal dg = ap_digamma(APReal(Rat(k, N), wp));
            acc += c.to_ap(wp) * APComplex(dg);
        }
        return -(acc / APReal(static_cast<long>(N), wp));
    }
    APComplex acc(wp);
    for (long k = 1; k <= N; ++k) {
        const GaussRat& c = chi(k);
        if (c.is_zero()) continue;
        acc += c.to_ap(wp) * hurwitz_zeta(s, APReal(Rat(k, N), wp), wp);
    }
    return neg_pow(APReal(static_cast<long>(N), wp), s, wp) * acc;
}

GaussRat l_negative_int(const DirichletCharacter& chi, long n) {
    if (n < 1) throw std::invalid_argument("l_negative_int: n >= 1 required (n = 0 unsupported)");
    return l_value_negative(chi, static_cast<unsigned long>(n));
}

APComplex periodic_power_tail(const APComplex& omega, bool omega_is_one, const APComplex& s,
                              long m0, mpfr_prec_t prec, APReal* err_out) {
    mpfr_prec_t wp = prec + 48;
    if (omega_is_one) {
        // sum_{m > m0} m^{-s} = zeta_H(s, m0+1)
        APComplex v = hurwitz_zeta(s, APReal(m0 + 1, wp), wp);
        if (err_out) *err_out = ap_exp10(-static_cast<long>(prec / 3.32), 64);
        return v;
    }
    // Euler transform of sum_{j>=0} omega^j c_j, c_j = (m0+1+j)^{-s}
    long kmax = 2 * m0 + 64;
    std::vector<APComplex> c;
    c.reserve(static_cast<size_t>(kmax) + 2);
    for (long j = 0; j <= kmax + 1; ++j) c.push_back(neg_pow(APReal(m0 + 1 + j, wp), s, wp));
    APComplex one(1L, wp);
    APComplex inv1m = one / (one - omega);
    APComplex xfac = omega * inv1m;
    APComplex pref = ap_pow_si(omega, m0 + 1) * inv1m;
    APComplex acc(wp);
    APReal minterm(wp);
    bool have_min = false;
    int grow = 0;
    APReal tol = ap_exp10(-static_cast<long>(prec / 3.32) - 6, 64);
    for (long k = 0; k <= kmax; ++k) {
        APComplex term = pref * c[0];
        APReal mag = term.abs();
        if (!have_min || mag < minterm) {
            minterm = mag;
            have_min = true;
            grow = 0;
        } else if (mag > 3L * minterm) {
            if (++grow >= 3) break;  // past the asymptotic minimum
        }
        acc += term;
        if (mag < tol) break;
        pref = pref * xfac;
        for (size_t j = 0; j + 1 < c.size(); ++j) c[j] = c[j + 1] - c[j];
        c.pop_back();
        if (c.empty()) break;
    }
    if (err_out) *err_out = 8L * minterm;
    return acc;
}

APComplex progression_power_tail(long r, long P, long X, const APComplex& s, mpfr_prec_t prec) {
    // smallest d > X with d = r mod P, then sum (d0 + P j)^{-s} = P^{-s} zeta_H(s, d0/P)
    long d0 = X + 1;
    long rr = ((r % P) + P) % P;
    while (((d0 % P) + P) % P != rr) ++d0;
    mpfr_prec_t wp = prec + 32;
    APComplex z = hurwitz_zeta(s, APReal(Rat(d0, P), wp), wp);
    return neg_pow(APReal(P, wp), s, wp) * z;
}

TwistedLData make_twisted_data(CaseLabel label, long terms) {
    TwistedLData d;
    d.label = label;
    d.b = qseries::family(label).b;
    switch (label) {
        case CaseLabel::A:
        case CaseLabel::C:
            d.period = 6;
            d.psi = {0, -1, -1, 0, 1, 1};  // psi[d mod 6], psi(d) = (-1)^d chi3(d)
            d.closed_form = (label == CaseLabel::A);
            break;
        case CaseLabel::D:
            d.period = 5;
            d.psi = {0, -2, -1, 1, 2};
            d.closed_form = true;
            break;
        case CaseLabel::E:
        case CaseLabel::G:
            d.period = 8;
            d.psi = {0, 0, -1, 0, 0, 0, 1, 0};
            d.closed_form = false;
            break;
        case CaseLabel::F:
            d.period = 0;  // no divisor-sum structure after the (-1)^n twist
            d.closed_form = false;
            break;
    }
    // honest coefficient window from the expansion itself
    qseries::RatSeries g = qseries::g_expansion(label, terms,
                                                qseries::family(label).g_half_shift
                                                    ? qseries::GRoute::HalfShift
                                                    : qseries::GRoute::Eisenstein);
    d.coeffs.resize(static_cast<size_t>(terms));
    double c = 0;
    for (long n = 1; n <= terms; ++n) {
        if (g[n].get_den() != 1) throw std::logic_error("make_twisted_data: non-integer coefficient");
        d.coeffs[static_cast<size_t>(n - 1)] = g[n].get_num().get_si();
        double ratio = std::abs(static_cast<double>(d.coeffs[static_cast<size_t>(n - 1)])) /
                       (static_cast<double>(n) * n);
        c = std::max(c, ratio);
    }
    d.growth_c = 2.0 * c;
    return d;
}

TailValue twisted_l_partial(const TwistedLData& data, const APComplex& s, mpfr_prec_t prec, long terms) {
    if (s.re().to_double() <= 3.5) throw std::domain_error("twisted_l_partial: Re(s) > 3.5 required");
    mpfr_prec_t wp = prec + 32;
    terms = std::min<long>(terms, static_cast<long>(data.coeffs.size()));
    APComplex zb = ap_root_of_unity(1, data.b, wp);
    APComplex zn(1L, wp);
    APComplex acc(wp);
    for (long n = 1; n <= terms; ++n) {
        zn *= zb;
        long a = data.coeffs[static_cast<size_t>(n - 1)];
        if (a == 0) continue;
        acc += (a * zn) * neg_pow(APReal(n, wp), s, wp);
    }
    // tail bound C sum_{n>M} n^{2-Re s} <= C M^{3-Re s}/(Re s - 3)
    double sig = s.re().to_double();
    double lbound = std::log(data.growth_c) + (3.0 - sig) * std::log(static_cast<double>(terms)) -
                    std::log(sig - 3.0);
    return {acc, ap_exp(APReal(lbound, 64))};
}

TailValue twisted_l_direct(const TwistedLData& data, const APComplex& s, mpfr_prec_t prec,
                           long cutoff_d) {
    if (data.period == 0)
        throw std::invalid_argument("twisted_l_direct: no periodic divisor structure for this case");
    if (s.re().to_double() <= 3.5) throw std::domain_error("twisted_l_direct: Re(s) > 3.5 required");
    mpfr_prec_t wp = prec + 48;
    long digits = static_cast<long>(prec / 3.32);
    long D = cutoff_d > 0 ? cutoff_d : std::max<long>(120, static_cast<long>(2.5 * digits) + 30);
    long M = D * D;
    if (M > static_cast<long>(data.coeffs.size()))
        throw std::invalid_argument("twisted_l_direct: coefficient window too small (need " +
                                    std::to_string(M) + " terms)");
    long P = std::lcm(data.period, data.b);
    APReal err_total(64);

    // honest partial sum over n <= M = D^2
    APComplex acc(wp);
    {
        APComplex zb = ap_root_of_unity(1, data.b, wp);
        APComplex zn(1L, wp);
        for (long n = 1; n <= M; ++n) {
            zn *= zb;
            long a = data.coeffs[static_cast<size_t>(n - 1)];
            if (a == 0) continue;
            acc += (a * zn) * neg_pow(APReal(n, wp), s, wp);
        }
    }

    auto psi_of = [&](long d) { return data.psi[static_cast<size_t>(d % data.period)]; };
    APComplex s_minus_2 = s - APComplex(2L, wp);

    // roots of unity zeta_b^j, j mod b
    std::vector<APComplex> zb_pow;
    for (long j = 0; j < data.b; ++j) zb_pow.push_back(ap_root_of_unity(j, data.b, wp));

    // part 1: d <= D, m > M/d (Euler tails; omega = zeta_b^d != 1 whenever psi(d) != 0)
    for (long d = 1; d <= D; ++d) {
        long pd = psi_of(d);
        if (pd == 0) continue;
        long rd = d % data.b;
        if (rd == 0)
            throw std::logic_error("twisted_l_direct: non-oscillating class with nonzero psi");
        APReal err(64);
        APComplex tail = periodic_power_tail(zb_pow[static_cast<size_t>(rd)], false, s, M / d, wp, &err);
        APComplex dpow = neg_pow(APReal(d, wp), s_minus_2, wp);  // d^{2-s}
        acc += (pd * dpow) * tail;
        err_total += static_cast<long>(std::abs(pd)) * dpow.abs() * err;
    }

    // part 2: m <= D, d > M/m (progression tails by residue class of d mod P)
    for (long m = 1; m <= D; ++m) {
        APComplex mpow = neg_pow(APReal(m, wp), s, wp);
        long X = M / m;
        for (long r = 0; r < P; ++r) {
            long pr = data.psi[static_cast<size_t>(r % data.period)];
            if (pr == 0) continue;
            // phase of d = r class: zeta_b^{d m} depends on d mod b only
            APComplex phase = zb_pow[static_cast<size_t>((r * m) % data.b)];
            APComplex tail = progression_power_tail(r, P, X, s_minus_2, wp);
            acc += (pr * mpow) * (phase * tail);
        }
    }

    // part 3: d > D and m > D
    for (long r = 0; r < P; ++r) {
        long pr = data.psi[static_cast<size_t>(r % data.period)];
        if (pr == 0) continue;
        long rb = r % data.b;
        APReal err(64);
        APComplex ptail = periodic_power_tail(zb_pow[static_cast<size_t>(rb)], rb == 0, s, D, wp, &err);
        APComplex dtail = progression_power_tail(r, P, D, s_minus_2, wp);
        acc += pr * (dtail * ptail);
        err_total += static_cast<long>(std::abs(pr)) * dtail.abs() * err;
    }

    err_total += ap_exp10(-digits, 64) * acc.abs() * 4L;
    return {acc, err_total};
}

// ---------------------------------------------------------------------------
// closed forms

namespace {

// (1 - k^{w}) with w = e - s, as APComplex
APComplex one_minus_pow(long k, long e, const APComplex& s, mpfr_prec_t wp) {
    APComplex w = APComplex(static_cast<long>(e), wp) - s;
    APReal lk = ap_log(APReal(k, wp));
    return APComplex(1L, wp) - ap_exp(APComplex(w.re() * lk, w.im() * lk));
}

bool exactly_at(const APComplex& s, long v) {
    return s.im().is_zero() && s.re() == APReal(v, s.prec());
}

}  // namespace

APComplex twisted_l_closed_A(const APComplex& s, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    if (exactly_at(s, 3)) throw std::domain_error("twisted_l_closed_A: simple pole at s = 3");
    DirichletCharacter chi = build_character(CharacterKind::Legendre3);
    APComplex i = ap_i(wp);
    APReal sqrt3 = ap_sqrt(APReal(3L, wp));
    if (exactly_at(s, 1)) {
        // (1-3^{1-s}) zeta(s) -> log 3; the second row is killed by its exact
        // (1-2^{1-s}) factor. What remains carries L(chi,-1):
        // row1(1) = -1/2 * log 3 * (1-2) * (1+1) * L(chi,-1) = log(3) L(chi,-1).
        APComplex lm1 = dirichlet_l(chi, APComplex(-1L, wp), wp);
        return APComplex(ap_log(APReal(3L, wp))) * lm1;
    }
    APComplex z_s = hurwitz_zeta(s, APReal(1L, wp), wp);
    APComplex z_sm2 = hurwitz_zeta(s - APComplex(2L, wp), APReal(1L, wp), wp);
    APComplex l_sm2 = dirichlet_l(chi, s - APComplex(2L, wp), wp);
    APComplex l_s = dirichlet_l(chi, s, wp);
    APComplex row1 = APReal(Rat(-1, 2), wp) * one_minus_pow(3, 1, s, wp) * one_minus_pow(2, 2, s, wp) *
                     (APComplex(2L, wp) - one_minus_pow(2, 1, s, wp)) * z_s * l_sm2;
    APComplex row2 = (-(i * (sqrt3 * half))) * one_minus_pow(3, 2, s, wp) * one_minus_pow(2, 1, s, wp) *
                     (APComplex(2L, wp) - one_minus_pow(2, 2, s, wp)) * z_sm2 * l_s;
    return row1 + row2;
}

namespace {

// L(a Re(chi5) + b Im(chi5), s): linear combination of Hurwitz zetas by
// residue class mod 5; handles the removable point s = 1 via digamma.
APComplex l_re_im_comb(long a, long b, const APComplex& s, mpfr_prec_t wp) {
    long coef[5] = {0, a, b, -b, -a};
    if (exactly_at(s, 1)) {
        APReal acc(wp);
        for (long k = 1; k <= 4; ++k) {
            if (!coef[k]) continue;
            acc += coef[k] * ap_digamma(APReal(Rat(k, 5), wp));
        }
        return APComplex(-(acc / 5L));
    }
    APComplex acc(wp);
    for (long k = 1; k <= 4; ++k) {
        if (!coef[k]) continue;
        acc += APComplex(APReal(coef[k], wp)) * hurwitz_zeta(s, APReal(Rat(k, 5), wp), wp);
    }
    return neg_pow(APReal(5L, wp), s, wp) * acc;
}

APComplex l_chi5_squared(const APComplex& s, mpfr_prec_t wp) {
    DirichletCharacter chi5 = build_character(CharacterKind::Chi5);
    DirichletCharacter chi2 = build_character(CharacterKind::SquareOf, &chi5);
    return dirichlet_l(chi2, s, wp);
}

}  // namespace

APComplex twisted_l_closed_D(const APComplex& s, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    if (exactly_at(s, 3)) throw std::domain_error("twisted_l_closed_D: simple pole at s = 3");
    APComplex i = ap_i(wp);
    APReal pi5 = ap_pi(wp) / 5L;
    APReal c2 = ap_cos(pi5 * 2L), c4 = ap_cos(pi5 * 4L);
    APReal s2 = ap_sin(pi5 * 2L), s4 = ap_sin(pi5 * 4L);
    APComplex sm2 = s - APComplex(2L, wp);

    if (exactly_at(s, 1)) {
        // Rows with the zeta(s) pole: the scalar factor W(s) = (5/4)5^{-s} - 1/4
        // vanishes at s = 1, so the limit is -L(2Re+Im, -1) W'(1) with
        // W'(1) = -(log 5)/4; the L(chi^2, s) terms survive directly.
        APComplex l21 = l_re_im_comb(2, 1, APComplex(-1L, wp), wp);
        APComplex l2m1 = l_re_im_comb(2, -1, APComplex(-1L, wp), wp);
        APComplex rows123 = APComplex(ap_log(APReal(5L, wp)) / 4L) * l21 +
                            APComplex((c4 - c2) / 2L) * l2m1 * l_chi5_squared(APComplex(1L, wp), wp);
        APComplex zeta_m1 = hurwitz_zeta(APComplex(-1L, wp), APReal(1L, wp), wp);
        APComplex lsq_m1 = l_chi5_squared(APComplex(-1L, wp), wp);
        APComplex f14 = APComplex(1L, wp) - APComplex(5L, wp);  // (1 - 5^{2-s}) at s = 1
        APComplex row4 = (i * APComplex(s2 / 2L)) *
                         (-(l_re_im_comb(2, -1, APComplex(1L, wp), wp) * zeta_m1 * f14) -
                          l_re_im_comb(2, 1, APComplex(1L, wp), wp) * lsq_m1);
        APComplex row5 = (i * APComplex(s4 / 2L)) *
                         (-(l_re_im_comb(1, 2, APComplex(1L, wp), wp) * zeta_m1 * f14) +
                          l_re_im_comb(1, -2, APComplex(1L, wp), wp) * lsq_m1);
        return rows123 + row4 + row5;
    }

    APComplex zeta_s = hurwitz_zeta(s, APReal(1L, wp), wp);
    APComplex zeta_sm2 = hurwitz_zeta(sm2, APReal(1L, wp), wp);
    APComplex lsq_s = l_chi5_squared(s, wp);
    APComplex lsq_sm2 = l_chi5_squared(sm2, wp);
    APComplex l21_sm2 = l_re_im_comb(2, 1, sm2, wp);
    APComplex l2m1_sm2 = l_re_im_comb(2, -1, sm2, wp);
    APComplex pow5 = neg_pow(APReal(5L, wp), s, wp);
    APComplex row1 = -(l21_sm2 * pow5 * zeta_s);
    APComplex zfac = zeta_s * (APComplex(1L, wp) - pow5);
    APComplex row2 = APComplex(c2 / 2L) * (-(l21_sm2 * zfac) - l2m1_sm2 * lsq_s);
    APComplex row3 = APComplex(c4 / 2L) * (-(l21_sm2 * zfac) + l2m1_sm2 * lsq_s);
    APComplex f5 = APComplex(1L, wp) - ap_exp((APComplex(2L, wp) - s) * APComplex(ap_log(APReal(5L, wp))));
    APComplex row4 = (i * APComplex(s2 / 2L)) *
                     (-(l_re_im_comb(2, -1, s, wp) * zeta_sm2 * f5) -
                      l_re_im_comb(2, 1, s, wp) * lsq_sm2);
    APComplex row5 = (i * APComplex(s4 / 2L)) *
                     (-(l_re_im_comb(1, 2, s, wp) * zeta_sm2 * f5) +
                      l_re_im_comb(1, -2, s, wp) * lsq_sm2);
    return row1 + row2 + row3 + row4 + row5;
}

SpecialValues twisted_l_special(CaseLabel label, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    SpecialValues sv{label, {}, {}, APComplex(wp), APComplex(wp)};
    switch (label) {
        case CaseLabel::A:
        case CaseLabel::C: {
            sv.l1_exact = PiValue{Rat(0), 0, 0};
            sv.res3_exact = PiValue{Rat(-1, 54), 3, 1};
            sv.l1_numeric = twisted_l_closed_A(APComplex(1L, wp), wp);
            // residue: second row of the closed form with zeta(s-2) replaced by its residue 1
            DirichletCharacter chi = build_character(CharacterKind::Legendre3);
            APComplex i = ap_i(wp);
            APReal half(Rat(1, 2), wp);
            APComplex s3(3L, wp);
            sv.res3_numeric = (-(i * (ap_sqrt(APReal(3L, wp)) * half))) * one_minus_pow(3, 2, s3, wp) *
                              one_minus_pow(2, 1, s3, wp) * (APComplex(2L, wp) - one_minus_pow(2, 2, s3, wp)) *
                              dirichlet_l(chi, s3, wp);
            break;
        }
        case CaseLabel::D: {
            sv.l1_exact = PiValue{Rat(-1, 60), 1, 1};
            sv.res3_exact = PiValue{Rat(-4, 125), 3, 1};
            sv.l1_numeric = twisted_l_closed_D(APComplex(1L, wp), wp);
            APComplex i = ap_i(wp);
            APReal pi5 = ap_pi(wp) / 5L;
            APReal s2 = ap_sin(pi5 * 2L), s4 = ap_sin(pi5 * 4L);
            APComplex s3(3L, wp);
            APReal f(Rat(4, 5), wp);  // (1 - 5^{2-s}) residue factor at s = 3
            sv.res3_numeric = (i * APComplex(s2 / 2L)) * (-(l_re_im_comb(2, -1, s3, wp))) * APComplex(f) +
                              (i * APComplex(s4 / 2L)) * (-(l_re_im_comb(1, 2, s3, wp))) * APComplex(f);
            break;
        }
        default:
            throw std::invalid_argument("twisted_l_special: cases E, F, G are routed elsewhere");
    }
    return sv;
}

APComplex antiderivative_F(CaseLabel label, const APReal& t, mpfr_prec_t prec, long max_terms) {
    if (t.sign() <= 0) throw std::domain_error("antiderivative_F: t > 0 required");
    mpfr_prec_t wp = prec + 16;
    auto ev = qseries::shared_evaluator(label, wp);
    long b = qseries::family(label).b;
    // q~ = zeta_b e^{-2 pi t}
    APReal r = ap_exp(-(ap_pi(wp) * 2L * t));
    APComplex q = ap_root_of_unity(1, b, wp) * APComplex(r);
    APReal tol = ap_exp10(-static_cast<long>(prec / 3.32) - 4, 64);
    return ev->eval_series(qseries::CaseEvaluator::FANT, q, tol, max_terms);
}

const char* provenance_str(Provenance p) {
    switch (p) {
        case Provenance::ClosedFormLemma: return "closed-form-lemma";
        case Provenance::CaseGSeries: return "case-G-series";
        case Provenance::Cocycle: return "cocycle";
    }
    return "?";
}

std::string RegularizedValueReport::json() const {
    std::ostringstream os;
    os << "{\"case\":\"" << qseries::case_char(label) << "\","
       << "\"L1\":{\"re\":\"" << l1.re().str(40) << "\",\"im\":\"" << l1.im().str(40) << "\"},"
       << "\"res3\":{\"re\":\"" << res3.re().str(40) << "\",\"im\":\"" << res3.im().str(40) << "\"},"
       << "\"reg_value\":\"" << rat_str(reg_value_exact) << "\","
       << "\"reg_value_numeric\":\"" << reg_value.str(40) << "\","
       << "\"kappa2\":\"" << kappa2.str(40) << "\","
       << "\"kappa2_over_pi2\":\"" << rat_str(kappa2_over_pi2) << "\","
       << "\"provenance\":\"" << provenance_str(provenance) << "\"}";
    return os.str();
}

RegularizedValueReport regularized_value(CaseLabel label, mpfr_prec_t prec) {
    mpfr_prec_t wp = prec + 32;
    long b = qseries::family(label).b;
    APReal pi = ap_pi(wp);
    switch (label) {
        case CaseLabel::A:
        case CaseLabel::C:
        case CaseLabel::D: {
            SpecialValues sv = twisted_l_special(label, wp);
            // value = 1/b + L1/(2 pi i) - b^2/(8 pi^3 i) Res
            APComplex i = ap_i(wp);
            APComplex v = APComplex(APReal(Rat(1, b), wp)) + sv.l1_numeric / (i * APComplex(pi * 2L)) -
                          APComplex(APReal(Rat(b * b, 8), wp)) * sv.res3_numeric /
                              (i * APComplex(ap_pow_si(pi, 3)));
            // exact: both special values are i * rational * pi^k, so the result is rational
            Rat reg = Rat(1, b);
            if (!sv.l1_exact.is_zero()) {
                // (c pi^1 i) / (2 pi i) = c/2
                if (sv.l1_exact.pi_pow != 1 || sv.l1_exact.i_pow != 1)
                    throw std::logic_error("regularized_value: unexpected L1 shape");
                reg += sv.l1_exact.coeff / 2;
            }
            if (sv.res3_exact.pi_pow != 3 || sv.res3_exact.i_pow != 1)
                throw std::logic_error("regularized_value: unexpected residue shape");
            // -(b^2/(8 pi^3 i)) * (c pi^3 i) = -b^2 c / 8
            reg -= Rat(b * b, 8) * sv.res3_exact.coeff;
            RegularizedValueReport rep{label, sv.l1_numeric, sv.res3_numeric, reg,
                                       v.re(), APReal(wp), Rat(), Provenance::ClosedFormLemma};
            rep.kappa2 = -(pi * pi * 4L / b) * rep.reg_value;
            rep.kappa2_over_pi2 = Rat(-4, b) * reg;
            if (ap_abs(v.im()) > ap_exp10(-static_cast<long>(prec / 3.32) + 4, 64) * v.abs())
                throw std::runtime_error("regularized_value: regularized integral not real");
            return rep;
        }
        case CaseLabel::E:
        case CaseLabel::G: {
            // kappa2 = -pi^2/12 from the hypergeometric closed form; b = 8
            Rat k2(-1, 12);
            Rat reg = k2 * Rat(-b, 4);  // value = -kappa2 b / (4 pi^2) in units of pi^0
            RegularizedValueReport rep{label, APComplex(wp), APComplex(wp), reg,
                                       APReal(reg, wp), APReal(wp), k2, Provenance::CaseGSeries};
            rep.kappa2 = APReal(k2, wp) * pi * pi;
            return rep;
        }
        case CaseLabel::F:
            throw std::invalid_argument(
                "regularized_value: case F comes from the cocycle module (period-polynomial route)");
    }
    throw std::logic_error("regularized_value: unreachable");
}

}  // namespace lfunc
}  // namespace frobtk
