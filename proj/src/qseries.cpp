#include "frobtk/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace frobtk {
namespace qseries {

GaussSeries promote(const RatSeries& a) {
    GaussSeries r(a.order());
    for (long n = 0; n <= a.order(); ++n) r[n] = GaussRat(a[n]);
    return r;
}

RatSeries demote_exact(const GaussSeries& a) {
    RatSeries r(a.order());
    for (long n = 0; n <= a.order(); ++n) {
        if (a[n].im != 0) throw std::domain_error("demote_exact: nonzero imaginary coefficient at q^" + std::to_string(n));
        r[n] = a[n].re;
    }
    return r;
}

template <class T>
Series<T> add(const Series<T>& a, const Series<T>& b) {
    Series<T> r(std::min(a.order(), b.order()));
    for (long n = 0; n <= r.order(); ++n) r[n] = a[n] + b[n];
    return r;
}

template <class T>
Series<T> sub(const Series<T>& a, const Series<T>& b) {
    Series<T> r(std::min(a.order(), b.order()));
    for (long n = 0; n <= r.order(); ++n) r[n] = a[n] - b[n];
    return r;
}

template <class T>
Series<T> mul(const Series<T>& a, const Series<T>& b) {
    long order = std::min(a.order(), b.order());
    Series<T> r(order);
    for (long i = 0; i <= order; ++i) {
        if (a[i] == T(0)) continue;
        for (long j = 0; i + j <= order; ++j) {
            if (b[j] == T(0)) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

template <class T>
Series<T> inverse(const Series<T>& a) {
    if (a[0] == T(0)) throw std::domain_error("series inverse: zero constant term");
    long order = a.order();
    Series<T> r(order);
    T inv0 = T(1) / a[0];
    r[0] = inv0;
    for (long n = 1; n <= order; ++n) {
        T s(0);
        for (long k = 1; k <= n; ++k) {
            if (a[k] == T(0)) continue;
            s += a[k] * r[n - k];
        }
        r[n] = -(s * inv0);
    }
    return r;
}

template <class T>
Series<T> div(const Series<T>& a, const Series<T>& b) {
    return mul(a, inverse(b));
}

template <class T>
Series<T> pow_int(const Series<T>& a, long k) {
    long order = a.order();
    Series<T> r(order);
    r[0] = T(1);
    Series<T> base = a;
    long kk = k >= 0 ? k : -k;
    while (kk) {
        if (kk & 1) r = mul(r, base);
        kk >>= 1;
        if (kk) base = mul(base, base);
    }
    if (k < 0) r = inverse(r);
    return r;
}

template <class T>
Series<T> theta(const Series<T>& a) {
    Series<T> r(a.order());
    for (long n = 0; n <= a.order(); ++n) r[n] = a[n] * T(n);
    return r;
}

RatSeries sqrt_one(const RatSeries& a) {
    if (a[0] != 1) throw std::domain_error("series sqrt: constant term must be 1");
    long order = a.order();
    RatSeries x(0);
    x[0] = 1;
    long reach = 0;
    while (reach < order) {
        reach = std::min(2 * reach + 1, order);
        RatSeries xt(reach);
        for (long n = 0; n <= std::min(x.order(), reach); ++n) xt[n] = x[n];
        // x <- (x + a/x)/2 at the new order
        RatSeries ax = mul(a.truncated(reach), inverse(xt));
        RatSeries next(reach);
        for (long n = 0; n <= reach; ++n) next[n] = (xt[n] + ax[n]) / 2;
        x = std::move(next);
    }
    return x;
}

RatSeries log_one(const RatSeries& a) {
    if (a[0] != 1) throw std::domain_error("series log: constant term must be 1");
    // log(a) = integral of theta(a)/a: coefficient n is [theta(a)/a]_n / n
    RatSeries ratio = mul(theta(a), inverse(a));
    RatSeries r(a.order());
    for (long n = 1; n <= a.order(); ++n) r[n] = ratio[n] / n;
    return r;
}

template <class T>
Series<T> scale_q(const Series<T>& a, long m, long order) {
    Series<T> r(order);
    for (long n = 0; n <= a.order() && n * m <= order; ++n) r[n * m] = a[n];
    return r;
}

// explicit instantiations
template Series<Rat> add(const Series<Rat>&, const Series<Rat>&);
template Series<GaussRat> add(const Series<GaussRat>&, const Series<GaussRat>&);
template Series<Rat> sub(const Series<Rat>&, const Series<Rat>&);
template Series<GaussRat> sub(const Series<GaussRat>&, const Series<GaussRat>&);
template Series<Rat> mul(const Series<Rat>&, const Series<Rat>&);
template Series<GaussRat> mul(const Series<GaussRat>&, const Series<GaussRat>&);
template Series<Rat> inverse(const Series<Rat>&);
template Series<GaussRat> inverse(const Series<GaussRat>&);
template Series<Rat> div(const Series<Rat>&, const Series<Rat>&);
template Series<GaussRat> div(const Series<GaussRat>&, const Series<GaussRat>&);
template Series<Rat> pow_int(const Series<Rat>&, long);
template Series<GaussRat> pow_int(const Series<GaussRat>&, long);
template Series<Rat> theta(const Series<Rat>&);
template Series<GaussRat> theta(const Series<GaussRat>&);
template Series<Rat> scale_q(const Series<Rat>&, long, long);
template Series<GaussRat> scale_q(const Series<GaussRat>&, long, long);

RatSeries eta_normalized(long order) {
    if (order < 0) throw std::invalid_argument("eta_normalized: negative order");
    std::vector<Int> c(static_cast<size_t>(order) + 1);
    c[0] = 1;
    for (long n = 1; n <= order; ++n)
        for (long j = order; j >= n; --j) c[j] -= c[j - n];
    RatSeries r(order);
    for (long n = 0; n <= order; ++n) r[n] = Rat(c[static_cast<size_t>(n)]);
    return r;
}

Rat EtaQuotientSpec::leading_q_power() const {
    Rat e(0);
    for (const auto& f : factors) e += Rat(f.multiplier * f.exponent, 24);
    e += residue_rule_exponent;  // the rule carries its own q-prefactor
    return e;
}

namespace {

// multiply integer coefficient array in place by (1 - q^step)^pow, pow integer
void apply_binomial(std::vector<Int>& c, long step, long pow) {
    long order = static_cast<long>(c.size()) - 1;
    if (pow >= 0) {
        for (long rep = 0; rep < pow; ++rep)
            for (long j = order; j >= step; --j) c[j] -= c[j - step];
    } else {
        // multiply by geometric series (1-q^step)^{-1} repeatedly
        for (long rep = 0; rep < -pow; ++rep)
            for (long j = step; j <= order; ++j) c[j] += c[j - step];
    }
}

int legendre_mod5(long n) {
    switch (((n % 5) + 5) % 5) {
        case 1: case 4: return 1;
        case 2: case 3: return -1;
        default: return 0;
    }
}

}  // namespace

EtaQuotientExpansion eta_quotient(const EtaQuotientSpec& spec, long order) {
    Rat lead = spec.leading_q_power();
    if (lead.get_den() != 1)
        throw std::domain_error("eta_quotient: leading q-power is not an integer: " + rat_str(lead));
    std::vector<Int> c(static_cast<size_t>(order) + 1);
    c[0] = 1;
    for (const auto& f : spec.factors) {
        if (f.multiplier <= 0) throw std::invalid_argument("eta_quotient: multiplier must be positive");
        for (long n = f.multiplier; n <= order; n += f.multiplier)
            apply_binomial(c, n, f.exponent);
    }
    if (spec.residue_rule_exponent != 0) {
        for (long n = 1; n <= order; ++n) {
            long pw = 5L * legendre_mod5(n) * spec.residue_rule_exponent;
            if (pw) apply_binomial(c, n, pw);
        }
    }
    EtaQuotientExpansion out{lead.get_num().get_si(), RatSeries(order)};
    for (long n = 0; n <= order; ++n) out.h[n] = Rat(c[static_cast<size_t>(n)]);
    if (out.h[0] == 0) throw std::domain_error("eta_quotient: vanishing unit part");
    return out;
}

GaussSeries eisenstein_g3(const DirichletCharacter& chi, long scale, long order) {
    if (!chi.odd) throw std::domain_error("eisenstein_g3: character must be odd");
    if (scale <= 0) throw std::invalid_argument("eisenstein_g3: positive scale required");
    long inner = order / scale;
    // divisor-sum sieve over small Gaussian integers
    std::vector<std::int64_t> re(static_cast<size_t>(inner) + 1, 0), im(re);
    for (long d = 1; d <= inner; ++d) {
        const GaussRat& v = chi(d);
        if (v.is_zero()) continue;
        std::int64_t vr = v.re.get_num().get_si(), vi = v.im.get_num().get_si();
        std::int64_t d2 = static_cast<std::int64_t>(d) * d;
        for (long n = d; n <= inner; n += d) {
            re[static_cast<size_t>(n)] += vr * d2;
            im[static_cast<size_t>(n)] += vi * d2;
        }
    }
    GaussSeries r(order);
    r[0] = l_value_negative(chi, 3) / GaussRat(2);
    for (long n = 1; n <= inner; ++n)
        r[n * scale] = GaussRat(Rat(static_cast<long>(re[static_cast<size_t>(n)])),
                                Rat(static_cast<long>(im[static_cast<size_t>(n)])));
    return r;
}

char case_char(CaseLabel c) {
    switch (c) {
        case CaseLabel::A: return 'A';
        case CaseLabel::C: return 'C';
        case CaseLabel::D: return 'D';
        case CaseLabel::E: return 'E';
        case CaseLabel::F: return 'F';
        case CaseLabel::G: return 'G';
    }
    return '?';
}

CaseLabel case_from_char(char c) {
    switch (c) {
        case 'A': case 'a': return CaseLabel::A;
        case 'C': case 'c': return CaseLabel::C;
        case 'D': case 'd': return CaseLabel::D;
        case 'E': case 'e': return CaseLabel::E;
        case 'F': case 'f': return CaseLabel::F;
        case 'G': case 'g': return CaseLabel::G;
    }
    throw std::invalid_argument(std::string("unknown case label '") + c + "'");
}

const std::vector<CaseLabel>& all_cases() {
    static const std::vector<CaseLabel> v = {CaseLabel::A, CaseLabel::C, CaseLabel::D,
                                             CaseLabel::E, CaseLabel::F, CaseLabel::G};
    return v;
}

std::string QuadValue::str() const {
    if (b == 0 || d == 1) return rat_str(d == 1 ? Rat(a + b) : a);
    std::string s = rat_str(a);
    s += (b > 0 ? "+" : "-");
    Rat ab = b > 0 ? b : Rat(-b);
    s += rat_str(ab) + "*sqrt(" + std::to_string(d) + ")";
    return s;
}

namespace {

std::vector<FamilyCase> build_families() {
    DirichletCharacter chi3 = build_character(CharacterKind::Legendre3);
    DirichletCharacter chi4 = build_character(CharacterKind::Legendre4);
    DirichletCharacter chi5 = build_character(CharacterKind::Chi5);
    DirichletCharacter chi5bar = build_character(CharacterKind::ConjugateOf, &chi5);
    DirichletCharacter trivial;
    trivial.modulus = 1;
    trivial.values = {GaussRat(1)};
    trivial.odd = false;

    GaussRat half_i(Rat(0), Rat(1, 2));

    std::vector<FamilyCase> v;
    v.push_back({CaseLabel::A, 7, -8, 2, 6, 6, chi3,
                 {{{1, 3}, {6, 9}, {2, -3}, {3, -9}}, 0},
                 {{{2, 1}, {3, 6}, {1, -2}, {6, -3}}, 0},
                 false,
                 {{GaussRat(-1), chi3, 1}, {GaussRat(-8), chi3, 2}},
                 false,
                 {Rat(1, 8), Rat(0), 1}});
    v.push_back({CaseLabel::C, 10, 9, 3, 6, 6, chi3,
                 {{{1, 4}, {6, 8}, {2, -8}, {3, -4}}, 0},
                 {{{2, 6}, {3, 1}, {1, -3}, {6, -2}}, 0},
                 false,
                 {{GaussRat(-1), chi3, 1}, {GaussRat(-8), chi3, 2}},
                 false,
                 {Rat(1, 9), Rat(0), 1}});
    v.push_back({CaseLabel::D, 11, -1, 3, 5, 5, trivial,
                 {{{1, 0}}, 1},
                 {{{5, 5}, {1, -1}}, -1},
                 true,
                 {{GaussRat(-1) + half_i, chi5, 1}, {GaussRat(-1) - half_i, chi5bar, 1}},
                 false,
                 {Rat(-11, 2), Rat(5, 2), 5}});
    v.push_back({CaseLabel::E, 12, 32, 4, 8, 8, chi4,
                 {{{1, 4}, {4, 2}, {8, 4}, {2, -10}}, 0},
                 {{{2, 10}, {1, -4}, {4, -4}}, 0},
                 false,
                 {{GaussRat(-4), chi4, 2}},
                 false,
                 {Rat(1, 8), Rat(0), 1}});
    v.push_back({CaseLabel::F, 17, 72, 6, 12, 12, chi3,
                 {{{1, 5}, {3, 1}, {4, 5}, {6, 2}, {12, 1}, {2, -14}}, 0},
                 {{{2, 15}, {3, 2}, {12, 2}, {1, -6}, {4, -6}, {6, -5}}, 0},
                 false,
                 {},
                 true,
                 {Rat(1, 9), Rat(0), 1}});
    v.push_back({CaseLabel::G, 0, -16, 0, 8, 8, chi4,
                 {{{2, 4}, {8, 8}, {4, -12}}, 0},
                 {{{4, 10}, {2, -4}, {8, -4}}, 0},
                 false,
                 {{GaussRat(-4), chi4, 2}},
                 false,
                 {Rat(1, 4), Rat(0), 1}});
    return v;
}

}  // namespace

const FamilyCase& family(CaseLabel label) {
    static const std::vector<FamilyCase> fams = build_families();
    for (const auto& f : fams)
        if (f.label == label) return f;
    throw std::logic_error("family: unreachable");
}

EtaQuotientExpansion t_expansion(CaseLabel label, long order) {
    return eta_quotient(family(label).t_spec, order);
}

RatSeries f_expansion(CaseLabel label, long order) {
    const FamilyCase& fc = family(label);
    EtaQuotientExpansion e = eta_quotient(fc.f_spec, order);
    if (fc.f_needs_sqrt) {
        if (e.exponent != 0) throw std::domain_error("f_expansion: sqrt argument must start at q^0");
        return sqrt_one(e.h);
    }
    if (e.exponent != 0) throw std::domain_error("f_expansion: weight-1 form must start at q^0");
    return e.h;
}

RatSeries g_expansion(CaseLabel label, long order, GRoute route) {
    const FamilyCase& fc = family(label);
    switch (route) {
        case GRoute::Eta: {
            EtaQuotientExpansion t = t_expansion(label, order);
            RatSeries f = f_expansion(label, order);
            // g = f * (e + theta(h)/h) since theta(q^e h)/(q^e h) = e + theta(h)/h
            RatSeries lg = mul(theta(t.h), inverse(t.h));
            lg[0] += t.exponent;
            return mul(f, lg);
        }
        case GRoute::Eisenstein: {
            if (fc.g_recipe.empty())
                throw std::invalid_argument("g_expansion: no Eisenstein recipe for this case");
            GaussSeries acc(order);
            for (const auto& term : fc.g_recipe) {
                GaussSeries e = eisenstein_g3(term.chi, term.scale, order);
                for (long n = 0; n <= order; ++n) acc[n] += term.coeff * e[n];
            }
            return demote_exact(acc);
        }
        case GRoute::HalfShift: {
            if (!fc.g_half_shift)
                throw std::invalid_argument("g_expansion: half-shift route only applies to case F");
            RatSeries base = g_expansion(CaseLabel::A, order, GRoute::Eisenstein);
            for (long n = 1; n <= order; n += 2) base[n] = -base[n];
            return base;
        }
    }
    throw std::logic_error("g_expansion: unreachable");
}

std::vector<Rat> phi0_coefficients(CaseLabel label, long n) {
    if (n < 0) throw std::invalid_argument("phi0_coefficients: negative n");
    const FamilyCase& fc = family(label);
    std::vector<Rat> u;
    u.reserve(static_cast<size_t>(n) + 1);
    u.push_back(Rat(1));
    for (long m = 1; m <= n; ++m) {
        Rat val = Rat(fc.A * (m - 1) * m + fc.lambda) * u[static_cast<size_t>(m - 1)];
        if (m >= 2) val -= Rat(fc.B) * (m - 1) * (m - 1) * u[static_cast<size_t>(m - 2)];
        u.push_back(val / Rat(m * m));
    }
    return u;
}

CompositionResult composition_check(CaseLabel label, long order) {
    EtaQuotientExpansion t = t_expansion(label, order);
    RatSeries f = f_expansion(label, order);
    std::vector<Rat> u = phi0_coefficients(label, order);
    // t^m = q^{em} h^m; with e = 1 the m-th term starts at q^m
    long e = t.exponent;
    RatSeries acc(order);
    RatSeries hpow(order);
    hpow[0] = 1;
    for (long m = 0; m * e <= order; ++m) {
        if (m > 0) hpow = mul(hpow, t.h);
        for (long j = 0; m * e + j <= order; ++j) acc[m * e + j] += u[static_cast<size_t>(m)] * hpow[j];
    }
    for (long n = 0; n <= order; ++n)
        if (acc[n] != f[n]) return {false, n};
    return {true, -1};
}

// ---------------------------------------------------------------------------
// numeric evaluation

struct CaseEvaluator::Impl {
    std::mutex mutex;
    long exact_order = -1;
    RatSeries h, f, logh, fant;
    RatSeries g;  // integer coefficients
    long logh_order = -1, f_order = -1;

    std::vector<APReal> num[5];
    long num_order[5] = {-1, -1, -1, -1, -1};
    double env_c[5] = {0, 0, 0, 0, 0};     // fitted growth exponent: |c_n| <= exp(env_c sqrt(n) + env_b)
    double env_b[5] = {0, 0, 0, 0, 0};
};

namespace {

double log_abs(const Rat& r) {
    if (r == 0) return -1e300;
    double ln = static_cast<double>(mpz_sizeinbase(r.get_num().get_mpz_t(), 2));
    double ld = static_cast<double>(mpz_sizeinbase(r.get_den().get_mpz_t(), 2));
    return (ln - ld) * 0.6931471805599453;
}

void fit_envelope(const RatSeries& s, double& c_out, double& b_out) {
    // |coeff_n| <= exp(c sqrt(n) + b) over the computed range, with margin
    double c = 0.0, b = 0.0;
    for (long n = 1; n <= s.order(); ++n) {
        double la = log_abs(s[n]);
        if (la < -1e290) continue;
        double sq = std::sqrt(static_cast<double>(n));
        if (la - b > c * sq) c = (la - b) / sq;
        if (la > b) b = la;
    }
    c_out = c * 1.05 + 0.05;
    b_out = b + 0.7;
}

}  // namespace

CaseEvaluator::CaseEvaluator(CaseLabel label, mpfr_prec_t prec)
    : label_(label), prec_(prec), exponent_(0), impl_(std::make_shared<Impl>()) {
    EtaQuotientExpansion t = t_expansion(label, 64);
    exponent_ = t.exponent;
}

const FamilyCase& CaseEvaluator::data() const { return family(label_); }

void CaseEvaluator::extend_exact(long order) {
    // caller holds the lock
    if (impl_->exact_order >= order) return;
    EtaQuotientExpansion t = t_expansion(label_, order);
    impl_->h = std::move(t.h);
    impl_->g = family(label_).g_half_shift ? g_expansion(label_, order, GRoute::HalfShift)
                                           : g_expansion(label_, order, GRoute::Eisenstein);
    impl_->fant = RatSeries(order);
    for (long n = 1; n <= order; ++n) impl_->fant[n] = impl_->g[n] / n;
    impl_->exact_order = order;
}

const std::vector<APReal>& CaseEvaluator::coeffs(Which w, long order) {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    if (impl_->num_order[w] >= order) return impl_->num[w];
    const RatSeries* src = nullptr;
    switch (w) {
        case H: case GG: case FANT: {
            if (impl_->exact_order < order) extend_exact(order + order / 4);
            src = (w == H) ? &impl_->h : (w == GG) ? &impl_->g : &impl_->fant;
            break;
        }
        case FF: {
            if (impl_->f_order < order) {
                impl_->f = f_expansion(label_, order);
                impl_->f_order = order;
            }
            src = &impl_->f;
            break;
        }
        case LOGH: {
            if (impl_->logh_order < order) {
                if (order > 16384)
                    throw std::domain_error("log-series order too large; point too close to the real axis");
                if (impl_->exact_order < order) extend_exact(order + order / 4);
                impl_->logh = log_one(impl_->h.truncated(order));
                impl_->logh_order = order;
            }
            src = &impl_->logh;
            break;
        }
    }
    auto& dst = impl_->num[w];
    dst.clear();
    dst.reserve(static_cast<size_t>(order) + 1);
    for (long n = 0; n <= order; ++n) dst.emplace_back((*src)[n], prec_);
    impl_->num_order[w] = order;
    fit_envelope(src->truncated(order), impl_->env_c[w], impl_->env_b[w]);
    return dst;
}

double CaseEvaluator::envelope_c(Which w) const { return impl_->env_c[w]; }

long CaseEvaluator::needed_terms(Which w, const APReal& qa, const APReal& tol) {
    double lq = ap_log(qa).to_double();
    if (lq >= 0) throw std::domain_error("needed_terms: |q| must be < 1");
    double ltol = ap_log(tol).to_double() - 3.0;  // margin factor ~e^3 under tol
    bool built;
    {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        built = impl_->num_order[w] >= 0;
    }
    if (!built) coeffs(w, 256);
    for (int rounds = 0; rounds < 40; ++rounds) {
        double c, b;
        long cur;
        {
            std::lock_guard<std::mutex> lock(impl_->mutex);
            c = impl_->env_c[w];
            b = impl_->env_b[w];
            cur = impl_->num_order[w];
        }
        // smallest n with c sqrt(n) + b + n lq <= ltol
        double n = 16;
        for (int it = 0; it < 80; ++it) n = std::max(4.0, (ltol - b - c * std::sqrt(n)) / lq);
        long need = static_cast<long>(n * 1.05) + 16;
        if (need <= cur) return need;
        coeffs(w, need + need / 8);
    }
    throw std::runtime_error("needed_terms: did not stabilize");
}

CaseEvaluator::AxisValues CaseEvaluator::eval_axis(const APReal& y, const APReal& tol, long max_terms) {
    mpfr_prec_t p = prec_;
    AxisValues out(p);
    APReal two_pi_y = ap_pi(p) * 2 * y;
    APReal q = ap_exp(-two_pi_y);
    long n_h = needed_terms(H, q, tol);
    long n_g = needed_terms(GG, q, tol);
    long N = std::max(n_h, n_g);
    if (N > max_terms)
        throw std::domain_error("eval_axis: term budget exceeded at Im(z) = " + y.str(6) + " (" +
                                std::to_string(N) + " terms needed)");
    const auto& hc = coeffs(H, N);
    const auto& gc = coeffs(GG, N);

    APReal qn(1L, p), hv(p), gv(p);
    for (long n = 0; n <= N; ++n) {
        mpfr_fma(hv.raw(), hc[static_cast<size_t>(n)].raw(), qn.raw(), hv.raw(), MPFR_RNDN);
        mpfr_fma(gv.raw(), gc[static_cast<size_t>(n)].raw(), qn.raw(), gv.raw(), MPFR_RNDN);
        mpfr_mul(qn.raw(), qn.raw(), q.raw(), MPFR_RNDN);
    }
    // geometric tail estimate from the growth envelope
    double lq = ap_log(q).to_double();
    double c = std::max(impl_->env_c[H], impl_->env_c[GG]);
    double b = std::max(impl_->env_b[H], impl_->env_b[GG]);
    double rho = std::exp(lq + c / (2.0 * std::sqrt(static_cast<double>(N) + 1)));
    double ltail = b + c * std::sqrt(static_cast<double>(N) + 1) + (N + 1) * lq - std::log1p(-std::min(rho, 0.999999));
    out.tail = ap_exp(APReal(ltail, 64));
    if (out.tail > tol) throw std::domain_error("eval_axis: certified tail exceeds tolerance");
    if (hv.sign() <= 0) throw std::domain_error("eval_axis: unit part not positive on the axis");
    // t = q^e h
    APReal qe = (exponent_ == 1) ? q : ap_pow_si(q, exponent_);
    out.t = qe * hv;
    out.g = gv;
    out.logt = -(two_pi_y * exponent_) + ap_log(hv);
    return out;
}

APComplex CaseEvaluator::eval_series(Which w, const APComplex& q, const APReal& tol, long max_terms,
                                     APReal* tail_out) {
    mpfr_prec_t p = prec_;
    APReal qa = q.abs();
    long N = needed_terms(w, qa, tol);
    if (N > max_terms)
        throw std::domain_error("eval_series: term budget exceeded (" + std::to_string(N) + " > " +
                                std::to_string(max_terms) + ")");
    const auto& cc = coeffs(w, N);
    APComplex qn(1L, p), acc(p);
    for (long n = 0; n <= N; ++n) {
        const APReal& c = cc[static_cast<size_t>(n)];
        if (!c.is_zero()) {
            acc += APComplex(c * qn.re(), c * qn.im());
        }
        qn *= q;
    }
    if (tail_out) {
        double lq = ap_log(qa).to_double();
        double c = impl_->env_c[w], b = impl_->env_b[w];
        double rho = std::exp(lq + c / (2.0 * std::sqrt(static_cast<double>(N) + 1)));
        double ltail = b + c * std::sqrt(static_cast<double>(N) + 1) + (N + 1) * lq - std::log1p(-std::min(rho, 0.999999));
        *tail_out = ap_exp(APReal(ltail, 64));
    }
    return acc;
}

CaseEvaluator::PathValues CaseEvaluator::eval_path(const APComplex& z, const APReal& tol, long max_terms) {
    mpfr_prec_t p = prec_;
    if (z.im().sign() <= 0) throw std::domain_error("eval_path: Im(z) must be positive");
    PathValues out(p);
    APComplex two_pi_i_z = APComplex(-(ap_pi(p) * 2) * z.im(), ap_pi(p) * 2 * z.re());
    APComplex q = ap_exp(two_pi_i_z);
    APComplex hv = eval_series(H, q, tol, max_terms);
    out.g = eval_series(GG, q, tol, max_terms);
    out.logt = two_pi_i_z * APComplex(APReal(exponent_, p), APReal(p)) + eval_series(LOGH, q, tol, max_terms);
    out.t = ap_exp(two_pi_i_z * APComplex(APReal(exponent_, p), APReal(p))) * hv;
    return out;
}

namespace {
std::mutex g_eval_mutex;
std::map<std::pair<int, long>, std::shared_ptr<CaseEvaluator>> g_evaluators;
}

std::shared_ptr<CaseEvaluator> shared_evaluator(CaseLabel label, mpfr_prec_t prec) {
    std::lock_guard<std::mutex> lock(g_eval_mutex);
    auto key = std::make_pair(static_cast<int>(label), static_cast<long>(prec));
    auto it = g_evaluators.find(key);
    if (it != g_evaluators.end()) return it->second;
    auto ev = std::make_shared<CaseEvaluator>(label, prec);
    g_evaluators[key] = ev;
    return ev;
}

PointValue point_eval(CaseLabel label, PointObject which, const APComplex& z,
                      const APReal& tol, long max_terms) {
    if (z.im().sign() <= 0) throw std::domain_error("point_eval: Im(z) must be positive");
    if (tol.sign() <= 0) throw std::invalid_argument("point_eval: tolerance must be positive");
    mpfr_prec_t p = std::max<mpfr_prec_t>(z.prec(), 96);
    auto ev = shared_evaluator(label, p);
    APReal tail(p);
    APComplex two_pi_i_z = APComplex(-(ap_pi(p) * 2) * z.im(), ap_pi(p) * 2 * z.re());
    APComplex q = ap_exp(two_pi_i_z);
    long e = ev->exponent();
    switch (which) {
        case PointObject::T: {
            APComplex h = ev->eval_series(CaseEvaluator::H, q, tol, max_terms, &tail);
            return {ap_exp(two_pi_i_z * APComplex(APReal(e, p), APReal(p))) * h, tail};
        }
        case PointObject::F: {
            APComplex f = ev->eval_series(CaseEvaluator::FF, q, tol, max_terms, &tail);
            return {f, tail};
        }
        case PointObject::G: {
            APComplex g = ev->eval_series(CaseEvaluator::GG, q, tol, max_terms, &tail);
            return {g, tail};
        }
        case PointObject::LogT: {
            APComplex lh = ev->eval_series(CaseEvaluator::LOGH, q, tol, max_terms, &tail);
            return {two_pi_i_z * APComplex(APReal(e, p), APReal(p)) + lh, tail};
        }
    }
    throw std::logic_error("point_eval: unreachable");
}

std::string dump_series_json(CaseLabel label, const std::string& object, const RatSeries& s) {
    std::ostringstream os;
    os << "{\"case\":\"" << case_char(label) << "\",\"object\":\"" << object
       << "\",\"order\":" << s.order() << ",\"coefficients\":[";
    for (long n = 0; n <= s.order(); ++n) {
        if (n) os << ",";
        os << "{\"n\":" << n << ",\"numerator\":\"" << s[n].get_num().get_str()
           << "\",\"denominator\":\"" << s[n].get_den().get_str() << "\"}";
    }
    os << "]}";
    return os.str();
}

std::string dump_series_json(CaseLabel label, const std::string& object, const GaussSeries& s) {
    std::ostringstream os;
    os << "{\"case\":\"" << case_char(label) << "\",\"object\":\"" << object
       << "\",\"order\":" << s.order() << ",\"coefficients\":[";
    for (long n = 0; n <= s.order(); ++n) {
        if (n) os << ",";
        os << "{\"n\":" << n << ",\"re\":\"" << rat_str(s[n].re) << "\",\"im\":\"" << rat_str(s[n].im) << "\"}";
    }
    os << "]}";
    return os.str();
}

}  // namespace qseries
}  // namespace frobtk
