#include "levyliq/numerics.hpp"
#include "levyliq/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace levyliq::numerics {

namespace {

// Gauss(7)/Kronrod(15) nodes and weights on [-1, 1].
constexpr double kGK[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

struct PanelEstimate {
    double value;
    double err;
};

PanelEstimate gk15(const std::function<Real(Real)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = kGK[0][1] * f0;
    double k15 = kGK[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK[i][0];
        const double fi = f(mid + dx) + f(mid - dx);
        g7 += kGK[i][1] * fi;
        k15 += kGK[i][2] * fi;
    }
    g7 *= half;
    k15 *= half;
    const double diff = 200.0 * std::abs(g7 - k15);
    return {k15, diff * std::sqrt(diff)};
}

void integrate_panel(const std::function<Real(Real)>& f, double a, double b,
                     const QuadratureSpec& spec, int depth, double& value, double& err) {
    const PanelEstimate est = gk15(f, a, b);
    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(est.value));
    if (est.err <= tol || depth >= spec.max_depth) {
        if (depth >= spec.max_depth && est.err > tol)
            throw NumericFailure("quadrature: max depth exceeded, best error " +
                                 std::to_string(est.err));
        value += est.value;
        err += est.err;
        return;
    }
    const double mid = 0.5 * (a + b);
    integrate_panel(f, a, mid, spec, depth + 1, value, err);
    integrate_panel(f, mid, b, spec, depth + 1, value, err);
}

} // namespace

Complex poly_eval(const std::vector<Real>& c, Complex x) {
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::vector<Complex> poly_roots(const std::vector<Real>& coeffs) {
    int degree = static_cast<int>(coeffs.size()) - 1;
    while (degree > 0 && coeffs[static_cast<size_t>(degree)] == 0.0) --degree;
    if (degree < 1 || degree > 8)
        throw InvalidArgument("poly_roots: degree must be 1..8 with nonzero leading coefficient");

    const double lead = coeffs[static_cast<size_t>(degree)];
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coeffs[static_cast<size_t>(i)] / lead;
    for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericFailure("poly_roots: eigenvalue iteration failed");

    std::vector<Real> dcoeffs(static_cast<size_t>(degree));
    for (int i = 1; i <= degree; ++i)
        dcoeffs[static_cast<size_t>(i - 1)] = coeffs[static_cast<size_t>(i)] * i;

    std::vector<Complex> roots(static_cast<size_t>(degree));
    for (int i = 0; i < degree; ++i) {
        Complex r = solver.eigenvalues()(i);
        for (int it = 0; it < 2; ++it) {
            const Complex p = poly_eval(coeffs, r);
            const Complex dp = poly_eval(dcoeffs, r);
            if (std::abs(dp) == 0.0) break;
            r -= p / dp;
        }
        roots[static_cast<size_t>(i)] = r;
    }

    // Enforce conjugate closure: tiny imaginary parts collapse to the real
    // axis, remaining complex roots are paired and symmetrized.
    double scale = 0.0;
    for (const Real c : coeffs) scale = std::max(scale, std::abs(c));
    double rscale = 0.0;
    for (const Complex& r : roots) rscale = std::max(rscale, std::abs(r));
    const double imag_snap = 1e-10 * std::max(1.0, rscale);
    for (Complex& r : roots)
        if (std::abs(r.imag()) < imag_snap) r = Complex(r.real(), 0.0);
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (size_t i = 0; i < roots.size(); ++i) {
        if (roots[i].imag() <= 0.0) continue;
        size_t best = i;
        double best_d = std::numeric_limits<double>::max();
        for (size_t j = 0; j < roots.size(); ++j) {
            if (roots[j].imag() >= 0.0) continue;
            const double d = std::abs(roots[j] - std::conj(roots[i]));
            if (d < best_d) { best_d = d; best = j; }
        }
        if (best != i) {
            const Complex avg = 0.5 * (roots[i] + std::conj(roots[best]));
            roots[i] = avg;
            roots[best] = std::conj(avg);
        }
    }

    for (const Complex& r : roots) {
        const double residual = std::abs(poly_eval(coeffs, r));
        if (!(residual < 1e-10 * std::max(scale, 1.0) * std::max(1.0, std::pow(std::abs(r), degree))))
            throw NumericFailure("poly_roots: residual " + std::to_string(residual) +
                                 " too large after polish (ill-conditioned polynomial)");
    }
    return roots;
}

Real min_relative_root_gap(const std::vector<Complex>& roots) {
    if (roots.size() < 2) return std::numeric_limits<Real>::infinity();
    double max_mag = 0.0;
    for (const Complex& r : roots) max_mag = std::max(max_mag, std::abs(r));
    double min_gap = std::numeric_limits<double>::max();
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j)
            min_gap = std::min(min_gap, std::abs(roots[i] - roots[j]));
    return min_gap / std::max(max_mag, 1e-300);
}

QuadratureResult integrate(const std::function<Real(Real)>& f, Real lo, Real hi,
                           const QuadratureSpec& spec) {
    if (!(lo <= hi)) throw InvalidArgument("integrate: lo > hi");
    if (lo == hi) return {0.0, 0.0};

    std::vector<Real> cuts{lo};
    for (const Real k : spec.kinks)
        if (k > lo && k < hi) cuts.push_back(k);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());

    QuadratureSpec panel_spec = spec;
    panel_spec.abs_tol = spec.abs_tol / static_cast<double>(cuts.size() - 1);

    double value = 0.0, err = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i])
            integrate_panel(f, cuts[i], cuts[i + 1], panel_spec, 0, value, err);
    return {value, err};
}

QuadratureResult integrate_semi_inf(const std::function<Real(Real)>& f, Real lo,
                                    Real decay_rate, const QuadratureSpec& spec) {
    if (!(decay_rate > 0.0)) throw InvalidArgument("integrate_semi_inf: decay_rate must be > 0");

    // Estimate the envelope constant from a few probes, then place the cut so
    // the certified tail (C/r) e^{-r Y} sits below abs_tol/10.
    double envelope = 0.0;
    for (const double probe : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        const double y = lo + probe;
        envelope = std::max(envelope, std::abs(f(y)) * std::exp(decay_rate * probe));
    }
    envelope = std::max(envelope, 1e-300);
    const double tail_target = spec.abs_tol / 10.0;
    double span = std::log(envelope / (decay_rate * tail_target)) / decay_rate;
    span = std::clamp(span, 1.0, 2000.0);

    QuadratureResult res = integrate(f, lo, lo + span, spec);
    res.err_est += tail_target;
    return res;
}

Chebyshev::Chebyshev(const std::function<Real(Real)>& f, Real lo, Real hi, int n)
    : lo_(lo), hi_(hi), nodes_(static_cast<size_t>(n + 1)), values_(static_cast<size_t>(n + 1)) {
    if (!(hi > lo) || n < 2) throw InvalidArgument("Chebyshev: need hi > lo and n >= 2");
    for (int k = 0; k <= n; ++k) {
        const double t = std::cos(M_PI * k / n);
        nodes_[static_cast<size_t>(k)] = t;
        values_[static_cast<size_t>(k)] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * t);
    }
}

Real Chebyshev::operator()(Real x) const {
    const double t = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
    const size_t n = nodes_.size() - 1;
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k <= n; ++k) {
        const double diff = t - nodes_[k];
        if (std::abs(diff) < 1e-14) return values_[k];
        double w = (k % 2 == 0) ? 1.0 : -1.0;
        if (k == 0 || k == n) w *= 0.5;
        const double c = w / diff;
        num += c * values_[k];
        den += c;
    }
    return num / den;
}

Real central_diff(const std::function<Real(Real)>& f, Real x, Real h, bool richardson) {
    if (!(h > 0.0)) throw InvalidArgument("central_diff: h must be > 0");
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    if (!richardson) return d1;
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace levyliq::numerics
