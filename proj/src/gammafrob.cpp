#include "frobtk/gammafrob.hpp"
#include "frobtk/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace frobtk {
namespace gammafrob {

double QuadratureSpec::resolved_y_min(long b) const {
    if (y_min > 0) return y_min;
    double target = (digits + 10) * 2.302585092994046;
    return 2.0 * 3.141592653589793 / (b * target);
}

double QuadratureSpec::resolved_y_max() const {
    if (y_max > 0) return y_max;
    return (digits + 10) * 2.302585092994046 / (2.0 * 3.141592653589793) + 2.0;
}

long QuadratureSpec::resolved_nodes() const {
    if (nodes > 0) return nodes;
    return digits > 50 ? 96 : 64;
}

long QuadratureSpec::resolved_panels_per_decade() const {
    if (panels_per_decade > 0) return panels_per_decade;
    return digits > 50 ? 7 : 5;
}

namespace {
std::mutex g_nodes_mutex;
std::map<std::pair<long, long>, std::vector<std::pair<APReal, APReal>>> g_nodes_cache;
}

const std::vector<std::pair<APReal, APReal>>& gl_nodes(long n, mpfr_prec_t prec) {
    std::lock_guard<std::mutex> lock(g_nodes_mutex);
    auto key = std::make_pair(n, static_cast<long>(prec));
    auto it = g_nodes_cache.find(key);
    if (it != g_nodes_cache.end()) return it->second;

    mpfr_prec_t wp = prec + 32;
    std::vector<std::pair<APReal, APReal>> out;
    APReal pi = ap_pi(wp);
    APReal eps(wp);
    mpfr_set_ui_2exp(eps.raw(), 1, -(prec + 8), MPFR_RNDN);
    for (long k = 1; 2 * k <= n + 1; ++k) {
        // Newton for the k-th positive root of P_n from the Chebyshev guess
        APReal x = ap_cos(pi * (APReal(4 * k - 1, wp) / (4 * n + 2)));
        APReal dp(wp);
        for (int it2 = 0; it2 < 200; ++it2) {
            APReal p0(1L, wp), p1 = x;
            for (long j = 2; j <= n; ++j) {
                APReal p2 = (APReal(2 * j - 1, wp) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = APReal(n, wp) * (x * p1 - p0) / (x * x - 1);
            APReal dx = p1 / dp;
            x -= dx;
            if (ap_abs(dx) < eps) break;
        }
        {
            APReal p0(1L, wp), p1 = x;
            for (long j = 2; j <= n; ++j) {
                APReal p2 = (APReal(2 * j - 1, wp) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = APReal(n, wp) * (x * p1 - p0) / (x * x - 1);
        }
        APReal w = APReal(2L, wp) / ((1 - x * x) * dp * dp);
        out.emplace_back(x, w);
        if (!(2 * k == n + 1))  // skip the mirrored twin of a central zero
            out.emplace_back(-x, w);
    }
    return g_nodes_cache.emplace(key, std::move(out)).first->second;
}

SegmentResult integrate_segment(const std::function<APComplex(const APComplex&)>& f,
                                const APComplex& za, const APComplex& zb,
                                const APReal& tol, mpfr_prec_t prec,
                                long nodes, int max_refine) {
    const auto& nd = gl_nodes(nodes, prec);
    APComplex dz = zb - za;
    APComplex prev(prec);
    bool have_prev = false;
    APReal err = tol * 0L + APReal(1L, 64);
    for (int r = 0; r <= max_refine; ++r) {
        long panels = 1L << r;
        APComplex acc(prec);
        for (long p = 0; p < panels; ++p) {
            APReal mid(Rat(2 * p + 1, 2 * panels), prec);
            APReal hw(Rat(1, 2 * panels), prec);
            for (const auto& [x, w] : nd) {
                APReal u = mid + hw * x;
                APComplex z = za + APComplex(u) * dz;
                acc += APComplex(w * hw) * f(z);
            }
        }
        acc = acc * dz;
        if (have_prev) {
            err = (acc - prev).abs();
            if (err < tol) return {acc, err};
        }
        prev = acc;
        have_prev = true;
    }
    return {prev, err};
}

namespace {

struct PanelGrid {
    std::vector<APReal> lo, hi;  // panel bounds in y
};

PanelGrid make_grid(double y_min, double y_max, long panels, mpfr_prec_t prec) {
    PanelGrid g;
    double la = std::log(y_min), lb = std::log(y_max);
    for (long p = 0; p < panels; ++p) {
        g.lo.push_back(ap_exp(APReal(la + (lb - la) * p / panels, prec)));
        g.hi.push_back(ap_exp(APReal(la + (lb - la) * (p + 1) / panels, prec)));
    }
    return g;
}

}  // namespace

AxisMoments axis_log_moments(CaseLabel label, long m_max, const QuadratureSpec& spec) {
    mpfr_prec_t wp = spec.prec();
    const auto& fam = qseries::family(label);
    double ymin = spec.resolved_y_min(fam.b);
    double ymax = spec.resolved_y_max();
    long nodes = spec.resolved_nodes();
    auto ev = qseries::shared_evaluator(label, wp);
    APReal tol = ap_exp10(static_cast<long>(spec.tol_log10()) - 2, 64);

    auto run_pass = [&](long ppd) {
        long panels = std::max<long>(4, static_cast<long>(ppd * std::log10(ymax / ymin)) + 1);
        PanelGrid grid = make_grid(ymin, ymax, panels, wp);
        const auto& nd = gl_nodes(nodes, wp);
        std::vector<APReal> RI(static_cast<size_t>(m_max) + 1, APReal(wp));
        std::vector<APReal> RJ(static_cast<size_t>(m_max) + 1, APReal(wp));
        for (long p = 0; p < panels; ++p) {
            APReal mid = (grid.lo[static_cast<size_t>(p)] + grid.hi[static_cast<size_t>(p)]) / 2L;
            APReal hw = (grid.hi[static_cast<size_t>(p)] - grid.lo[static_cast<size_t>(p)]) / 2L;
            for (const auto& [x, w] : nd) {
                APReal y = mid + hw * x;
                auto vals = ev->eval_axis(y, tol, spec.max_terms);
                APReal base = w * hw * y * vals.t * vals.g;
                APReal lp(1L, wp);
                for (long m = 0; m <= m_max; ++m) {
                    APReal term = base * lp;
                    RI[static_cast<size_t>(m)] += term;
                    RJ[static_cast<size_t>(m)] += term * vals.t;
                    if (m < m_max) lp *= vals.logt;
                }
            }
        }
        return std::make_pair(std::move(RI), std::move(RJ));
    };

    long ppd = spec.resolved_panels_per_decade();
    auto cur = run_pass(ppd);
    AxisMoments out;
    out.err.assign(static_cast<size_t>(m_max) + 1, APReal(1L, 64));
    for (int r = 0; r < spec.max_refine; ++r) {
        ppd *= 2;
        auto next = run_pass(ppd);
        bool ok = true;
        for (long m = 0; m <= m_max; ++m) {
            out.err[static_cast<size_t>(m)] =
                ap_abs(next.first[static_cast<size_t>(m)] - cur.first[static_cast<size_t>(m)]) +
                ap_abs(next.second[static_cast<size_t>(m)] - cur.second[static_cast<size_t>(m)]);
            APReal scale = ap_abs(next.first[static_cast<size_t>(m)]) + APReal(1L, 64);
            if (!(out.err[static_cast<size_t>(m)] < tol * scale)) ok = false;
        }
        cur = std::move(next);
        if (ok) break;
    }

    if (spec.validate_tails) {
        // the integrand decays like exp(-2 pi/(b y)) below y_min and like
        // exp(-2 pi y) (times log powers) above y_max; bound both ends from
        // the endpoint magnitudes
        APReal yv(ymin, wp);
        auto vals = ev->eval_axis(yv, tol, spec.max_terms);
        APReal mag = ap_abs(yv * vals.t * vals.g) * ap_pow_si(ap_abs(vals.logt), static_cast<long>(m_max));
        APReal low_tail = mag * yv * yv * fam.b * 2L;
        if (!(low_tail < tol))
            throw std::runtime_error("axis_log_moments: lower tail bound fails at y_min");
        APReal yv2(ymax, wp);
        auto vals2 = ev->eval_axis(yv2, tol, spec.max_terms);
        APReal mag2 = ap_abs(yv2 * vals2.t * vals2.g) * ap_pow_si(ap_abs(vals2.logt), static_cast<long>(m_max));
        APReal high_tail = mag2 * 2L;
        if (!(high_tail < tol))
            throw std::runtime_error("axis_log_moments: upper tail bound fails at y_max");
    }

    out.RI = std::move(cur.first);
    out.RJ = std::move(cur.second);
    return out;
}

std::vector<APComplex> axis_integrals(CaseLabel label, long m_max, int include_t_factor,
                                      const QuadratureSpec& spec) {
    AxisMoments m = axis_log_moments(label, m_max, spec);
    mpfr_prec_t wp = spec.prec();
    APReal two_pi = ap_pi(wp) * 2L;
    std::vector<APComplex> out;
    const auto& R = include_t_factor ? m.RJ : m.RI;
    for (const auto& r : R) out.push_back(APComplex(APReal(wp), -(two_pi * r)));
    return out;
}

namespace {

// int_0^{i inf} t^w z g dz = - int_0^inf y t(iy)^w g(iy) dy (complex for complex w)
APComplex axis_power_integral(CaseLabel label, const APComplex& w, const QuadratureSpec& spec) {
    mpfr_prec_t wp = spec.prec();
    const auto& fam = qseries::family(label);
    double ymin = spec.resolved_y_min(fam.b);
    double ymax = spec.resolved_y_max();
    long nodes = spec.resolved_nodes();
    auto ev = qseries::shared_evaluator(label, wp);
    APReal tol = ap_exp10(static_cast<long>(spec.tol_log10()) - 2, 64);

    auto run_pass = [&](long ppd) {
        long panels = std::max<long>(4, static_cast<long>(ppd * std::log10(ymax / ymin)) + 1);
        PanelGrid grid = make_grid(ymin, ymax, panels, wp);
        const auto& nd = gl_nodes(nodes, wp);
        APComplex acc(wp);
        for (long p = 0; p < panels; ++p) {
            APReal mid = (grid.lo[static_cast<size_t>(p)] + grid.hi[static_cast<size_t>(p)]) / 2L;
            APReal hw = (grid.hi[static_cast<size_t>(p)] - grid.lo[static_cast<size_t>(p)]) / 2L;
            for (const auto& [x, wgt] : nd) {
                APReal y = mid + hw * x;
                auto vals = ev->eval_axis(y, tol, spec.max_terms);
                // t^w = exp(w log t) with the axis branch of log t (real negative)
                APComplex tw = ap_exp(w * APComplex(vals.logt));
                acc += APComplex(wgt * hw * y * vals.g) * tw;
            }
        }
        return acc;
    };

    long ppd = spec.resolved_panels_per_decade();
    APComplex cur = run_pass(ppd);
    for (int r = 0; r < spec.max_refine; ++r) {
        ppd *= 2;
        APComplex next = run_pass(ppd);
        APReal delta = (next - cur).abs();
        cur = next;
        if (delta < tol * (cur.abs() + APReal(1L, 64))) break;
    }
    return -cur;
}

}  // namespace

APComplex gamma_eval(CaseLabel label, const APComplex& s, const QuadratureSpec& spec) {
    if (!(s.re().to_double() > 0)) throw std::domain_error("gamma_eval: Re(s) > 0 required");
    mpfr_prec_t wp = spec.prec();
    APComplex i2pi(APReal(wp), ap_pi(wp) * 2L);
    return i2pi * axis_power_integral(label, s, spec);
}

APComplex kappa_eval(CaseLabel label, const APComplex& s, const QuadratureSpec& spec) {
    if (!(s.re().to_double() > -1)) throw std::domain_error("kappa_eval: Re(s) > -1 required");
    mpfr_prec_t wp = spec.prec();
    const auto& fam = qseries::family(label);
    APComplex one(1L, wp);
    APComplex sw = s;
    // Gamma(s+1) = int t^s z f t' dz (no 2 pi i): axis_power_integral directly
    APComplex g1 = axis_power_integral(label, sw, spec);
    APComplex g2 = axis_power_integral(label, sw + one, spec);
    APComplex i2pi(APReal(wp), ap_pi(wp) * 2L);
    APComplex poly = APComplex(APReal(fam.A, wp)) * sw * (sw + one) + APComplex(APReal(fam.lambda, wp));
    APComplex sp1 = sw + one;
    return i2pi * (i2pi * (poly * g1 - APComplex(APReal(fam.B, wp)) * sp1 * sp1 * g2));
}

APReal verify_functional_eq(CaseLabel label, const APComplex& s, const QuadratureSpec& spec) {
    if (!(s.re().to_double() > 0)) throw std::domain_error("verify_functional_eq: Re(s) > 0 required");
    mpfr_prec_t wp = spec.prec();
    const auto& fam = qseries::family(label);
    APComplex one(1L, wp);
    APComplex G0 = gamma_eval(label, s, spec);
    APComplex G1 = gamma_eval(label, s + one, spec);
    APComplex G2 = gamma_eval(label, s + one + one, spec);
    APComplex lhs = s * s * G0;
    APComplex sp1 = s + one;
    APComplex rhs = (APComplex(APReal(fam.A, wp)) * s * sp1 + APComplex(APReal(fam.lambda, wp))) * G1 -
                    APComplex(APReal(fam.B, wp)) * sp1 * sp1 * G2;
    return (lhs - rhs).abs() / lhs.abs();
}

std::string KappaExpansion::json() const {
    std::ostringstream os;
    os << "{\"case\":\"" << qseries::case_char(label) << "\",\"coefficients\":[";
    for (size_t n = 0; n < kappa.size(); ++n) {
        if (n) os << ",";
        os << "{\"n\":" << n << ",\"kappa\":{\"re\":\"" << kappa[n].re().str(spec.digits)
           << "\",\"im\":\"" << kappa[n].im().str(spec.digits) << "\"},\"est_digits\":"
           << static_cast<long>(est_digits[n]) << "}";
    }
    os << "],\"spec\":{\"digits\":" << spec.digits << ",\"y_min\":" << spec.resolved_y_min(qseries::family(label).b)
       << ",\"y_max\":" << spec.resolved_y_max() << ",\"nodes\":" << spec.resolved_nodes()
       << ",\"panels_per_decade\":" << spec.resolved_panels_per_decade() << "}}";
    return os.str();
}

KappaExpansion kappa_coefficients(CaseLabel label, long n_max, const QuadratureSpec& spec) {
    if (n_max < 0 || n_max > 8) throw std::invalid_argument("kappa_coefficients: n_max out of range");
    mpfr_prec_t wp = spec.prec();
    const auto& fam = qseries::family(label);
    AxisMoments mom = axis_log_moments(label, n_max, spec);
    APReal two_pi = ap_pi(wp) * 2L;

    // power series in s: X(s) = sum I_m s^m / m!, Y(s) = sum J_m s^m / m!
    // kappa(s) = 2 pi i [(A s^2 + A s + lambda) X(s) - B (s^2 + 2 s + 1) Y(s)]
    std::vector<APComplex> X, Y;
    APReal fact(1L, wp);
    for (long m = 0; m <= n_max; ++m) {
        if (m > 0) fact *= m;
        X.push_back(APComplex(APReal(wp), -(two_pi * mom.RI[static_cast<size_t>(m)] / fact)));
        Y.push_back(APComplex(APReal(wp), -(two_pi * mom.RJ[static_cast<size_t>(m)] / fact)));
    }
    KappaExpansion out{label, {}, {}, spec};
    APComplex i2pi(APReal(wp), two_pi);
    for (long n = 0; n <= n_max; ++n) {
        APComplex v(wp);
        v += APComplex(APReal(fam.lambda, wp)) * X[static_cast<size_t>(n)];
        if (n >= 1) v += APComplex(APReal(fam.A, wp)) * X[static_cast<size_t>(n - 1)];
        if (n >= 2) v += APComplex(APReal(fam.A, wp)) * X[static_cast<size_t>(n - 2)];
        APComplex w(wp);
        w += Y[static_cast<size_t>(n)];
        if (n >= 1) w += 2L * Y[static_cast<size_t>(n - 1)];
        if (n >= 2) w += Y[static_cast<size_t>(n - 2)];
        v -= APComplex(APReal(fam.B, wp)) * w;
        out.kappa.push_back(i2pi * v);
        // error ledger: propagated refinement deltas, scaled like the assembly
        double e = 0;
        for (long k = std::max<long>(0, n - 2); k <= n; ++k)
            e += mom.err[static_cast<size_t>(k)].to_double() *
                 (std::abs(static_cast<double>(fam.A)) + std::abs(static_cast<double>(fam.B)) +
                  std::abs(static_cast<double>(fam.lambda)) + 2.0);
        e *= 2 * 3.14159265358979 * 6.2832;
        double mag = out.kappa.back().abs().to_double();
        double digits = (e <= 0) ? spec.digits : -std::log10(e / std::max(mag, 1e-30) + 1e-300);
        out.est_digits.push_back(std::min<double>(digits, spec.digits + 6));
    }
    return out;
}

GSeriesResult kappa_case_G_series(long n_max, mpfr_prec_t prec) {
    if (n_max < 0) throw std::invalid_argument("kappa_case_G_series: n_max >= 0");
    // log kappa(s) = sum_{k>=2} ell_k s^k, ell_k = 2 (-1)^k (2^{1-k}-1) zeta(k)/k
    std::vector<ZetaCombo> logc(static_cast<size_t>(n_max) + 1);
    for (long k = 2; k <= n_max; ++k) {
        Rat base = Rat(2, k) * (Rat(1, (1L << (k - 1))) - 1);
        if (k % 2) base = -base;
        logc[static_cast<size_t>(k)] = base * ZetaCombo::zeta(static_cast<int>(k));
    }
    // exp of the series: E_0 = 1, E_n = (1/n) sum_{k=2}^{n} k ell_k E_{n-k}
    std::vector<ZetaCombo> E(static_cast<size_t>(n_max) + 1);
    E[0] = ZetaCombo::constant(Rat(1));
    for (long n = 1; n <= n_max; ++n) {
        ZetaCombo acc;
        for (long k = 2; k <= n; ++k)
            acc = acc + (Rat(k) * logc[static_cast<size_t>(k)]) * E[static_cast<size_t>(n - k)];
        E[static_cast<size_t>(n)] = Rat(1, n) * acc;
    }
    GSeriesResult r;
    r.exact = E;
    for (const auto& e : E) r.numeric.push_back(e.to_ap(prec));
    return r;
}

std::vector<APReal> legendre_kappa(long n_max, mpfr_prec_t prec) {
    GSeriesResult g = kappa_case_G_series(n_max, prec + 16);
    // 16^s kappa_G(2s): coeff_n = sum_{j+k=n} (log 16)^j / j! * 2^k kappa_G[k]
    APReal log16 = ap_log2(prec + 16) * 4L;
    std::vector<APReal> out;
    for (long n = 0; n <= n_max; ++n) {
        APReal acc(static_cast<mpfr_prec_t>(prec + 16));
        APReal pw(1L, prec + 16);
        APReal fact(1L, prec + 16);
        for (long j = 0; j <= n; ++j) {
            if (j > 0) {
                pw *= log16;
                fact *= j;
            }
            long k = n - j;
            APReal twok = ap_pow_si(APReal(2L, prec + 16), k);
            acc += pw / fact * twok * g.numeric[static_cast<size_t>(k)];
        }
        out.push_back(acc);
    }
    return out;
}

APComplex integral_of_g(CaseLabel label, const APComplex& za, const APComplex& zb,
                        mpfr_prec_t prec, const APReal& tol) {
    auto ev = qseries::shared_evaluator(label, prec);
    APReal two_pi = ap_pi(prec) * 2L;
    auto F_at = [&](const APComplex& z) {
        APComplex q = ap_exp(APComplex(-(two_pi * z.im()), two_pi * z.re()));
        return ev->eval_series(qseries::CaseEvaluator::FANT, q, tol, 4'000'000);
    };
    APComplex i2pi(APReal(prec), two_pi);
    return (zb - za) + (F_at(zb) - F_at(za)) / i2pi;
}

std::vector<CuspAsymptoticCheck> sigma_c_asymptotic_check(const std::vector<double>& ys,
                                                          mpfr_prec_t prec) {
    std::vector<CuspAsymptoticCheck> out;
    APReal tol = ap_exp10(-static_cast<long>(prec / 3.32) + 6, 64);
    for (double y : ys) {
        APComplex z0(APReal(0L, prec), APReal(y, prec));
        APComplex z1 = z0 / (6L * z0 + APComplex(1L, prec));
        APComplex val = integral_of_g(CaseLabel::A, z0, z1, prec, tol);
        APComplex expect = APComplex(APReal(Rat(1, 4), prec)) + 3L * z0 * z0;
        out.emplace_back(y, (val - expect).abs());
    }
    return out;
}

APReal sigma_c_route_crosscheck(double y, mpfr_prec_t prec, const APReal& tol) {
    APComplex z0(APReal(0L, prec), APReal(y, prec));
    APComplex z1 = z0 / (6L * z0 + APComplex(1L, prec));
    APComplex anti = integral_of_g(CaseLabel::A, z0, z1, prec, tol);
    auto ev = qseries::shared_evaluator(CaseLabel::A, prec);
    auto f = [&](const APComplex& z) {
        auto v = ev->eval_path(z, tol, 4'000'000);
        return v.g;
    };
    SegmentResult seg = integrate_segment(f, z0, z1, tol, prec, 48, 10);
    return (anti - seg.value).abs();
}

APReal verify_two_gammas(CaseLabel label, const APComplex& s, const APComplex& z0,
                         const QuadratureSpec& spec, const APReal& path_tol) {
    mpfr_prec_t wp = spec.prec();
    const auto& fam = qseries::family(label);
    auto ev = qseries::shared_evaluator(label, wp);
    APComplex i2pi(APReal(wp), ap_pi(wp) * 2L);
    APComplex E = ap_exp(i2pi * s);
    APComplex one(1L, wp);

    auto integrand = [&](const APComplex& Q0a, const APComplex& Q0b) {
        // weight polynomial Q(z) = Q0a z + Q0b
        return [&, Q0a, Q0b](const APComplex& z) {
            auto v = ev->eval_path(z, path_tol, 200'000);
            APComplex ts = ap_exp(s * v.logt);
            return ts * (Q0a * z + Q0b) * v.g;
        };
    };

    // path 1: z0 -> z0 + 1 with Q0 = (1-E) z + E
    auto f1 = integrand(one - E, E);
    SegmentResult I1 = integrate_segment(f1, z0, z0 + one, path_tol, wp, 48, 10);
    // path 2: z0 -> z0/(b z0 + 1) with Qc = (1-E)^2 / b
    APComplex qc = (one - E) * (one - E) / APReal(fam.b, wp);
    auto f2 = integrand(APComplex(wp), qc);
    APComplex z1 = z0 / (APComplex(APReal(fam.b, wp)) * z0 + one);
    SegmentResult I2 = integrate_segment(f2, z0, z1, path_tol, wp, 48, 11);

    APComplex lhs = I1.value + I2.value;
    APComplex G = gamma_eval(label, s, spec);
    APComplex rhs = (E - one) * (E - one) * G / i2pi;
    return (lhs - rhs).abs() / G.abs();
}

}  // namespace gammafrob
}  // namespace frobtk
