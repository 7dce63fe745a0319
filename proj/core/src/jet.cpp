#include "gaffine/jet.hpp"

#include "gaffine/errors.hpp"

#include <cmath>
#include <fmt/format.h>
#include <string>

namespace gaffine {

namespace {

constexpr std::size_t N = kJetOrder;

constexpr std::array<double, N + 1> kFactorial = {1, 1, 2, 6, 24, 120, 720};

bool is_integral(double r) { return std::isfinite(r) && r == std::nearbyint(r) && std::abs(r) <= 1024; }

} // namespace

Jet Jet::from_derivatives(std::span<const double> derivs)
{
    if (derivs.size() > N + 1)
        throw InvalidArgument("jet order exceeds 6");
    Jet j;
    for (std::size_t n = 0; n < derivs.size(); ++n)
        j.c_[n] = derivs[n] / kFactorial[n];
    return j;
}

double Jet::derivative(std::size_t n) const noexcept { return kFactorial[n] * c_[n]; }

Jet Jet::differentiate() const noexcept
{
    Jet d;
    for (std::size_t n = 0; n < N; ++n)
        d.c_[n] = static_cast<double>(n + 1) * c_[n + 1];
    return d;
}

Jet Jet::integrate(double c0) const noexcept
{
    Jet r;
    r.c_[0] = c0;
    for (std::size_t n = 1; n <= N; ++n)
        r.c_[n] = c_[n - 1] / static_cast<double>(n);
    return r;
}

bool Jet::is_constant() const noexcept
{
    for (std::size_t n = 1; n <= N; ++n)
        if (c_[n] != 0.0)
            return false;
    return true;
}

Jet operator+(const Jet& a, const Jet& b) noexcept
{
    Jet r;
    for (std::size_t n = 0; n <= N; ++n)
        r.c_[n] = a.c_[n] + b.c_[n];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) noexcept
{
    Jet r;
    for (std::size_t n = 0; n <= N; ++n)
        r.c_[n] = a.c_[n] - b.c_[n];
    return r;
}

Jet operator-(const Jet& a) noexcept
{
    Jet r;
    for (std::size_t n = 0; n <= N; ++n)
        r.c_[n] = -a.c_[n];
    return r;
}

Jet operator*(const Jet& a, const Jet& b) noexcept
{
    Jet r;
    for (std::size_t n = 0; n <= N; ++n) {
        double s = 0.0;
        for (std::size_t k = 0; k <= n; ++k)
            s += a.c_[k] * b.c_[n - k];
        r.c_[n] = s;
    }
    return r;
}

Jet operator/(const Jet& a, const Jet& b)
{
    const double b0 = b.c_[0];
    if (b0 == 0.0)
        throw DivisionByZeroJet("jet division by a series with zero constant term");
    Jet r;
    for (std::size_t n = 0; n <= N; ++n) {
        double s = a.c_[n];
        for (std::size_t k = 1; k <= n; ++k)
            s -= b.c_[k] * r.c_[n - k];
        r.c_[n] = s / b0;
    }
    return r;
}

Jet operator+(const Jet& a, double b) noexcept
{
    Jet r = a;
    r.c_[0] += b;
    return r;
}
Jet operator+(double a, const Jet& b) noexcept { return b + a; }
Jet operator-(const Jet& a, double b) noexcept { return a + (-b); }
Jet operator-(double a, const Jet& b) noexcept { return (-b) + a; }

Jet operator*(const Jet& a, double b) noexcept
{
    Jet r;
    for (std::size_t n = 0; n <= N; ++n)
        r.c_[n] = a.c_[n] * b;
    return r;
}
Jet operator*(double a, const Jet& b) noexcept { return b * a; }

Jet operator/(const Jet& a, double b)
{
    if (b == 0.0)
        throw DivisionByZeroJet("jet division by zero scalar");
    return a * (1.0 / b);
}

Jet exp(const Jet& a) noexcept
{
    Jet r;
    r[0] = std::exp(a[0]);
    for (std::size_t n = 1; n <= N; ++n) {
        double s = 0.0;
        for (std::size_t k = 1; k <= n; ++k)
            s += static_cast<double>(k) * a[k] * r[n - k];
        r[n] = s / static_cast<double>(n);
    }
    return r;
}

Jet log(const Jet& a)
{
    const double a0 = a[0];
    if (!(a0 > 0.0))
        throw DomainError(fmt::format("log of a series with non-positive constant term {}", a0));
    Jet r;
    r[0] = std::log(a0);
    for (std::size_t n = 1; n <= N; ++n) {
        double s = 0.0;
        for (std::size_t k = 1; k < n; ++k)
            s += static_cast<double>(k) * r[k] * a[n - k];
        r[n] = (a[n] - s / static_cast<double>(n)) / a0;
    }
    return r;
}

namespace {

void sin_cos(const Jet& a, Jet& s, Jet& c) noexcept
{
    s[0] = std::sin(a[0]);
    c[0] = std::cos(a[0]);
    for (std::size_t n = 1; n <= N; ++n) {
        double ss = 0.0;
        double cc = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            const double ka = static_cast<double>(k) * a[k];
            ss += ka * c[n - k];
            cc += ka * s[n - k];
        }
        s[n] = ss / static_cast<double>(n);
        c[n] = -cc / static_cast<double>(n);
    }
}

} // namespace

Jet sin(const Jet& a) noexcept
{
    Jet s, c;
    sin_cos(a, s, c);
    return s;
}

Jet cos(const Jet& a) noexcept
{
    Jet s, c;
    sin_cos(a, s, c);
    return c;
}

Jet atan(const Jet& a) noexcept
{
    // atan(a)' = a' / (1 + a^2); the denominator never vanishes.
    const Jet q = a.differentiate() / (1.0 + a * a);
    return q.integrate(std::atan(a[0]));
}

Jet sqrt(const Jet& a)
{
    if (!(a[0] > 0.0))
        throw DomainError(fmt::format("sqrt of a series with non-positive constant term {}", a[0]));
    return pow(a, 0.5);
}

Jet abs(const Jet& a)
{
    if (a[0] == 0.0)
        throw DomainError("abs of a series through zero is not smooth");
    return a[0] > 0.0 ? a : -a;
}

Jet pow(const Jet& a, int n)
{
    if (n < 0) {
        if (a[0] == 0.0)
            throw DomainError("negative power of a series with zero constant term");
        return Jet::constant(1.0) / pow(a, -n);
    }
    Jet result = Jet::constant(1.0);
    Jet base = a;
    unsigned e = static_cast<unsigned>(n);
    while (e != 0) {
        if (e & 1u)
            result = result * base;
        e >>= 1u;
        if (e != 0)
            base = base * base;
    }
    return result;
}

Jet pow(const Jet& a, double r)
{
    if (is_integral(r))
        return pow(a, static_cast<int>(r));
    const double a0 = a[0];
    if (!(a0 > 0.0))
        throw DomainError(fmt::format("non-integer power of a series with non-positive constant term {}", a0));
    Jet b;
    b[0] = std::pow(a0, r);
    for (std::size_t n = 1; n <= N; ++n) {
        double s = 0.0;
        for (std::size_t k = 1; k <= n; ++k)
            s += (r * static_cast<double>(k) - static_cast<double>(n - k)) * a[k] * b[n - k];
        b[n] = s / (static_cast<double>(n) * a0);
    }
    return b;
}

Jet compose(const Jet& outer, const Jet& inner) noexcept
{
    Jet u = inner;
    u[0] = 0.0;
    // Horner in u; u has no constant term so each product stays truncated.
    Jet r = Jet::constant(outer[N]);
    for (std::size_t n = N; n-- > 0;)
        r = r * u + outer[n];
    return r;
}

Jet GraphJet::as_jet() const noexcept
{
    Jet j;
    j[0] = y;
    for (std::size_t k = 1; k <= N; ++k)
        j[k] = d[k - 1] / kFactorial[k];
    return j;
}

bool GraphJet::all_finite() const noexcept
{
    if (!std::isfinite(x) || !std::isfinite(y))
        return false;
    for (double v : d)
        if (!std::isfinite(v))
            return false;
    return true;
}

GraphJet graph_jet_from_parametric(const Jet& xj, const Jet& yj)
{
    const Jet xdot = xj.differentiate();
    if (xdot[0] == 0.0 || std::abs(xdot[0]) <= 1e-12 * std::abs(yj[1]))
        throw NotAGraph("dx/dt vanishes; the curve is not a graph y(x) here");
    GraphJet g;
    g.x = xj[0];
    g.y = yj[0];
    // Each pass differentiates in t and divides by dx/dt, losing one order of
    // validity; six passes leave exactly the constant term of d^6y/dx^6.
    Jet cur = yj;
    for (std::size_t k = 1; k <= N; ++k) {
        cur = cur.differentiate() / xdot;
        g.d[k - 1] = cur[0];
    }
    return g;
}

} // namespace gaffine
