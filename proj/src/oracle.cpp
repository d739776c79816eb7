#include "sinter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sinter {

namespace {
constexpr double kPi = std::numbers::pi;
}

double Curve::at(double tq) const {
    if (t.size() < 2 || t.size() != x.size())
        throw std::invalid_argument("Curve::at: need at least two samples");
    if (tq <= t.front()) return x.front();
    if (tq >= t.back()) return x.back();
    auto it = std::upper_bound(t.begin(), t.end(), tq);
    std::size_t k = static_cast<std::size_t>(it - t.begin());
    double w = (tq - t[k - 1]) / (t[k] - t[k - 1]);
    return x[k - 1] + w * (x[k] - x[k - 1]);
}

double elliptic_K(double k) {
    if (!(k >= 0.0) || k >= 1.0)
        throw std::invalid_argument("elliptic_K: modulus must lie in [0,1)");
    double a = 1.0, b = std::sqrt(1.0 - k * k);
    while (std::abs(a - b) > 1e-16 * a) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return kPi / (2.0 * a);
}

namespace {

double simpson_val(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_val(a, fa, flm, m, fm);
    double right = simpson_val(m, fm, frm, b, fb);
    if (depth > 48 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    double whole = simpson_val(a, fa, fm, b, fb);
    return adapt(f, a, fa, b, fb, m, fm, whole, tol, 0);
}

namespace {

// neck parameter from neck value: m = (1 - sqrt(1 - w^2)) / w with w = 1 - X*^2
double m_of_X(double X) {
    double w = 1.0 - X * X;
    if (w >= 1.0) return 1.0;
    return w / (1.0 + std::sqrt(1.0 - w * w)); // stable form of (1 - sqrt(1-w^2))/w
}

double time_integrand(double m) {
    if (m >= 1.0) return 0.0; // K diverges logarithmically, integrand vanishes
    return 1.0 / (m * std::sqrt(1.0 + m * m) * elliptic_K(m));
}

} // namespace

Curve hopper_curve(int n, double X_max, double tol) {
    if (n < 2) throw std::invalid_argument("hopper_curve: need at least two samples");
    if (!(X_max > 0.0) || X_max >= 1.0)
        throw std::invalid_argument("hopper_curve: X_max must lie in (0,1)");
    Curve c;
    c.t.resize(n + 1);
    c.x.resize(n + 1);
    const double pref = kPi / std::sqrt(2.0);
    double t_acc = 0.0;
    double m_prev = 1.0;
    c.t[0] = 0.0;
    c.x[0] = 0.0;
    for (int k = 1; k <= n; ++k) {
        double X = X_max * k / n;
        double m = m_of_X(X);
        // integrand is finite on (0,1]; K -> inf at m = 1 makes it vanish there
        t_acc += pref * adaptive_simpson(time_integrand, m, m_prev, tol / n);
        c.t[k] = t_acc;
        c.x[k] = X;
        m_prev = m;
    }
    return c;
}

double curve_distance(const Curve& a, const Curve& b) {
    if (a.t.size() < 2 || b.t.size() < 2)
        throw std::invalid_argument("curve_distance: need at least two samples per curve");
    double lo = std::max(a.t.front(), b.t.front());
    double hi = std::min(a.t.back(), b.t.back());
    if (!(hi > lo)) throw std::invalid_argument("curve_distance: time ranges do not overlap");
    double d = 0.0;
    for (double tq : a.t)
        if (tq >= lo && tq <= hi) d = std::max(d, std::abs(a.at(tq) - b.at(tq)));
    for (double tq : b.t)
        if (tq >= lo && tq <= hi) d = std::max(d, std::abs(a.at(tq) - b.at(tq)));
    // include the overlap endpoints in case neither curve has a knot there
    d = std::max(d, std::abs(a.at(lo) - b.at(lo)));
    d = std::max(d, std::abs(a.at(hi) - b.at(hi)));
    return d;
}

double curve_first_time_reaching(const Curve& c, double level) {
    for (std::size_t k = 0; k < c.t.size(); ++k) {
        if (c.x[k] >= level) {
            if (k == 0) return c.t[0];
            double w = (level - c.x[k - 1]) / (c.x[k] - c.x[k - 1]);
            return c.t[k - 1] + w * (c.t[k] - c.t[k - 1]);
        }
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace sinter
