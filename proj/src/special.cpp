#include "hagkit/special.hpp"

#include <cmath>
#include <sstream>

#include "hagkit/errors.hpp"

namespace hagkit {

namespace {

void require_order(int k, const char* what) {
    if (k < 0) throw DomainError(std::string(what) + ": negative order");
}

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binomial(double n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b *= (n - k + i) / i;
    return b;
}

cplx hermite_poly(int k, cplx x) {
    require_order(k, "hermite_poly");
    cplx h0 = 1.0;
    if (k == 0) return h0;
    cplx h1 = 2.0 * x;
    for (int j = 1; j < k; ++j) {
        cplx h2 = 2.0 * x * h1 - 2.0 * double(j) * h0;
        h0 = h1;
        h1 = h2;
    }
    if (!finite(h1)) {
        std::ostringstream os;
        os << "hermite_poly: non-finite result for k = " << k;
        throw NumericalError(os.str());
    }
    return h1;
}

cplx laguerre_poly(int k, double gamma, cplx x) {
    require_order(k, "laguerre_poly");
    if (!std::isfinite(gamma) || !finite(x)) throw DataError("laguerre_poly: non-finite input");
    cplx l0 = 1.0;
    if (k == 0) return l0;
    cplx l1 = 1.0 + gamma - x;
    for (int j = 1; j < k; ++j) {
        cplx l2 = ((2.0 * j + 1.0 + gamma - x) * l1 - (j + gamma) * l0) / double(j + 1);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

cplx laguerre_monomial(int k, double gamma, cplx x) {
    require_order(k, "laguerre_monomial");
    cplx s = 0.0;
    cplx xp = 1.0;
    for (int j = 0; j <= k; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        s += sign * binomial(k + gamma, k - j) * xp / factorial(j);
        xp *= x;
    }
    return s;
}

std::vector<double> hermite_functions(int n, double x) {
    require_order(n, "hermite_functions");
    std::vector<double> f(n + 1);
    f[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (n >= 1) f[1] = std::sqrt(2.0) * x * f[0];
    for (int k = 1; k < n; ++k)
        f[k + 1] = (std::sqrt(2.0) * x * f[k] - std::sqrt(double(k)) * f[k - 1]) / std::sqrt(k + 1.0);
    return f;
}

double hermite_function(int k, double x) { return hermite_functions(k, x)[k]; }

cplx laguerre_kernel_two(int m, int n, cplx eta, cplx zeta) {
    require_order(m, "laguerre_kernel_two");
    require_order(n, "laguerre_kernel_two");
    const cplx arg = -2.0 * eta * zeta;
    if (m <= n)
        return std::pow(2.0, n) * factorial(m) * std::pow(zeta, n - m) * laguerre_poly(m, n - m, arg);
    return std::pow(2.0, m) * factorial(n) * std::pow(eta, m - n) * laguerre_poly(n, m - n, arg);
}

cplx laguerre_kernel_one(int m, int n, cplx zeta) {
    return laguerre_kernel_two(m, n, zeta, -std::conj(zeta));
}

cplx laguerre_kernel_one_scaled(int m, int n, cplx zeta) {
    require_order(m, "laguerre_kernel_one_scaled");
    require_order(n, "laguerre_kernel_one_scaled");
    const int lo = std::min(m, n);
    const int hi = std::max(m, n);
    // 2^{(hi-lo)/2} sqrt(lo!/hi!)
    double c = std::pow(2.0, 0.5 * (hi - lo));
    for (int j = lo + 1; j <= hi; ++j) c /= std::sqrt(double(j));
    const cplx lag = laguerre_poly(lo, hi - lo, cplx(2.0 * std::norm(zeta), 0.0));
    // For m == n the power is exactly 1, which keeps diagonal values real.
    cplx pw = 1.0;
    const cplx base = (m <= n) ? -std::conj(zeta) : zeta;
    for (int j = 0; j < hi - lo; ++j) pw *= base;
    return c * pw * lag;
}

cplx hermite_wigner(int k, int l, double x, double xi) {
    require_order(k, "hermite_wigner");
    require_order(l, "hermite_wigner");
    if (k > l) return std::conj(hermite_wigner(l, k, x, xi));
    const cplx z(x, xi);
    const double r2 = std::norm(z);
    double c = std::pow(2.0, 0.5 * (l - k));
    for (int j = k + 1; j <= l; ++j) c /= std::sqrt(double(j));
    cplx pw = 1.0;
    for (int j = 0; j < l - k; ++j) pw *= std::conj(z);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign / kPi * c * pw * std::exp(-r2) * laguerre_poly(k, l - k, cplx(2.0 * r2, 0.0));
}

cplx hermite_fbi(int k, double x, double xi) {
    require_order(k, "hermite_fbi");
    const cplx zb(x, -xi);
    // zbar^k / sqrt(2^k k!) accumulated term by term
    cplx pw = 1.0;
    for (int j = 1; j <= k; ++j) pw *= zb / std::sqrt(2.0 * j);
    return std::exp(cplx(-0.25 * std::norm(zb), 0.5 * x * xi)) * pw / std::sqrt(2.0 * kPi);
}

double hermite_husimi(int k, double x, double xi) { return std::norm(hermite_fbi(k, x, xi)); }

}  // namespace hagkit
