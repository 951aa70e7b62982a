#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace levyliq::numerics {

using Real = double;
using Complex = std::complex<double>;

// Controls for the adaptive quadrature routines.  `kinks` lists interior
// points where the integrand is continuous but not smooth; the integrator
// splits there before subdividing adaptively.
struct QuadratureSpec {
    Real abs_tol = 1e-10;
    Real rel_tol = 1e-8;
    std::vector<Real> kinks;
    int max_depth = 48;
};

struct QuadratureResult {
    Real value = 0.0;
    Real err_est = 0.0;
};

// All roots of c[0] + c[1] x + ... + c[n] x^n, degree 1..8.  Companion-matrix
// eigenvalues followed by one Newton polish; the result is conjugate-closed.
// Throws NumericFailure when the polished residual stays above
// 1e-10 * max|c|, InvalidArgument on a vanishing leading coefficient.
std::vector<Complex> poly_roots(const std::vector<Real>& coeffs);

Complex poly_eval(const std::vector<Real>& coeffs, Complex x);

// Smallest pairwise root distance relative to the largest magnitude; used by
// callers that require simple roots.
Real min_relative_root_gap(const std::vector<Complex>& roots);

QuadratureResult integrate(const std::function<Real(Real)>& f, Real lo, Real hi,
                           const QuadratureSpec& spec = {});

// Integral over [lo, inf) of a function the caller certifies to satisfy
// |f(y)| <= C exp(-decay_rate * y) for y beyond lo.  The truncation point is
// chosen so the certified tail is below abs_tol / 10.
QuadratureResult integrate_semi_inf(const std::function<Real(Real)>& f, Real lo,
                                    Real decay_rate, const QuadratureSpec& spec = {});

// (f(x+h) - f(x-h)) / 2h; with `richardson` the step is halved once and the
// two estimates extrapolated.
Real central_diff(const std::function<Real(Real)>& f, Real x, Real h, bool richardson = false);

// Barycentric Chebyshev interpolant on [lo, hi]; geometric accuracy for
// analytic functions.  Used to cache expensive smooth kernels inside nested
// quadratures.
class Chebyshev {
  public:
    Chebyshev(const std::function<Real(Real)>& f, Real lo, Real hi, int n);
    Real operator()(Real x) const;

  private:
    Real lo_, hi_;
    std::vector<Real> nodes_;  // on [-1, 1]
    std::vector<Real> values_;
};

} // namespace levyliq::numerics
