#ifndef FROBTK_GAMMAFROB_HPP
#define FROBTK_GAMMAFROB_HPP

#include "frobtk/qseries.hpp"
#include "frobtk/exactvalue.hpp"

#include <functional>
#include <vector>

namespace frobtk {
namespace gammafrob {

using qseries::CaseLabel;

// Contour work happens on z = iy with log-spaced Gauss-Legendre panels.
// The integrand decays like exp(-2 pi/(b y)) at y -> 0 and exponentially at
// y -> infinity; y_min/y_max = 0 selects defaults from digits and b.
struct QuadratureSpec {
    long digits = 40;
    double y_min = 0;
    double y_max = 0;
    long panels_per_decade = 0;  // 0: auto
    long nodes = 0;              // 0: auto
    int max_refine = 3;
    long max_terms = 2'000'000;
    bool validate_tails = true;

    mpfr_prec_t prec() const { return bits_for_digits(digits + 10); }
    double tol_log10() const { return -(static_cast<double>(digits) + 6); }
    double resolved_y_min(long b) const;
    double resolved_y_max() const;
    long resolved_nodes() const;
    long resolved_panels_per_decade() const;
};

// Gauss-Legendre nodes/weights on [-1, 1], cached per (n, prec).
const std::vector<std::pair<APReal, APReal>>& gl_nodes(long n, mpfr_prec_t prec);

struct SegmentResult {
    APComplex value;
    APReal error;
    SegmentResult(APComplex v, APReal e) : value(std::move(v)), error(std::move(e)) {}
};

// Composite Gauss-Legendre along the straight segment [za, zb] with panel
// doubling until two refinements agree within tol.
SegmentResult integrate_segment(const std::function<APComplex(const APComplex&)>& f,
                                const APComplex& za, const APComplex& zb,
                                const APReal& tol, mpfr_prec_t prec,
                                long nodes = 32, int max_refine = 12);

struct AxisMoments {
    // R^I_m = int y t g log^m t dy and R^J_m with an extra factor of t,
    // so that I_m = -2 pi i R^I_m, J_m = -2 pi i R^J_m.
    std::vector<APReal> RI, RJ;
    std::vector<APReal> err;  // per-m refinement deltas (shared between I and J)
};

// int_0^{i inf} log^m(t) z f t' dz and the t-weighted variant, for m <= m_max.
// f t' = 2 pi i t g, so only t, g, log t point values enter.
AxisMoments axis_log_moments(CaseLabel label, long m_max, const QuadratureSpec& spec);

// I_m (include_t_factor = 0) or J_m (1) as complex values.
std::vector<APComplex> axis_integrals(CaseLabel label, long m_max, int include_t_factor,
                                      const QuadratureSpec& spec);

// Gamma(s) = int_0^{i inf} t^{s-1} z f dt = 2 pi i int t^s z g dz, Re(s) > 0.
APComplex gamma_eval(CaseLabel label, const APComplex& s, const QuadratureSpec& spec);

// kappa(s) = 2 pi i [(A s(s+1) + lambda) Gamma(s+1) - B (s+1)^2 Gamma(s+2)],
// well-defined for Re(s) > -1.
APComplex kappa_eval(CaseLabel label, const APComplex& s, const QuadratureSpec& spec);

// |s^2 Gamma(s) - (A s(s+1)+lambda) Gamma(s+1) + B (s+1)^2 Gamma(s+2)| / |s^2 Gamma(s)|
APReal verify_functional_eq(CaseLabel label, const APComplex& s, const QuadratureSpec& spec);

struct KappaExpansion {
    CaseLabel label;
    std::vector<APComplex> kappa;      // kappa_0..kappa_n
    std::vector<double> est_digits;    // per coefficient
    QuadratureSpec spec;
    std::string json() const;
};

KappaExpansion kappa_coefficients(CaseLabel label, long n_max, const QuadratureSpec& spec);

struct GSeriesResult {
    std::vector<APReal> numeric;       // kappa_0..kappa_n
    std::vector<ZetaCombo> exact;      // zeta-monomial descriptors
};

// exp(2 sum_{k>=2} zeta(k)/k (2^{1-k}-1)(-s)^k): exact zeta-monomial
// coefficients plus numeric values.
GSeriesResult kappa_case_G_series(long n_max, mpfr_prec_t prec);

// Coefficients of 16^s * [case-G series](2s); kappa_1 = 4 log 2.
std::vector<APReal> legendre_kappa(long n_max, mpfr_prec_t prec);

// Two-route identity for the homological gamma function:
// |Gamma_cycle(s) - (e^{2 pi i s}-1)^2 Gamma(s)/(2 pi i)| / |Gamma(s)|.
// The cycle pairs path z0 -> z0+1 with weight (1-E)z + E and path
// z0 -> z0/(b z0+1) with weight (1-E)^2/b, E = e^{2 pi i s}.
APReal verify_two_gammas(CaseLabel label, const APComplex& s, const APComplex& z0,
                         const QuadratureSpec& spec, const APReal& path_tol);

struct CuspAsymptoticCheck {
    double y;
    APReal deviation;       // |integral - (1/4 + 3 z0^2)|
    CuspAsymptoticCheck(double yy, APReal d) : y(yy), deviation(std::move(d)) {}
};

// Case A: int_{z0}^{z0/(6 z0+1)} g dz = 1/4 + 3 z0^2 + o(1) at z0 = iy.
// Evaluated through the termwise antiderivative of g - 1 (no quadrature).
std::vector<CuspAsymptoticCheck> sigma_c_asymptotic_check(const std::vector<double>& ys,
                                                          mpfr_prec_t prec);

// antiderivative route vs integrate_segment route for the same integral
APReal sigma_c_route_crosscheck(double y, mpfr_prec_t prec, const APReal& tol);

// int_{za}^{zb} g dz = (zb - za) + [F(zb) - F(za)]/(2 pi i), F = sum a_n/n q^n
APComplex integral_of_g(CaseLabel label, const APComplex& za, const APComplex& zb,
                        mpfr_prec_t prec, const APReal& tol);

}  // namespace gammafrob
}  // namespace frobtk

#endif
