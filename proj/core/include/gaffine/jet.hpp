#pragma once

/**
 * @file jet.hpp
 * @brief Truncated Taylor series of fixed order 6.
 *
 * A Jet stores c0..c6 with f(t0 + u) = sum c_n u^n + O(u^7), so the n-th
 * derivative is n!·c_n. Arithmetic and the elementary functions follow the
 * usual Taylor-mode recurrences and are exact on polynomials of degree <= 6
 * up to rounding.
 */

#include <array>
#include <cstddef>
#include <span>

namespace gaffine {

inline constexpr std::size_t kJetOrder = 6;

class Jet {
public:
    using Coeffs = std::array<double, kJetOrder + 1>;

    constexpr Jet() noexcept : c_{} {}
    constexpr explicit Jet(const Coeffs& c) noexcept : c_(c) {}

    static constexpr Jet constant(double v) noexcept
    {
        Jet j;
        j.c_[0] = v;
        return j;
    }

    /// The independent variable expanded at t0: t0 + u.
    static constexpr Jet variable(double t0) noexcept
    {
        Jet j;
        j.c_[0] = t0;
        j.c_[1] = 1.0;
        return j;
    }

    /// Builds the jet from derivative values f, f', ..., f^(k), k <= 6.
    static Jet from_derivatives(std::span<const double> derivs);

    constexpr double operator[](std::size_t n) const noexcept { return c_[n]; }
    constexpr double& operator[](std::size_t n) noexcept { return c_[n]; }
    constexpr const Coeffs& coeffs() const noexcept { return c_; }

    constexpr double value() const noexcept { return c_[0]; }

    /// n-th derivative, n!·c_n.
    double derivative(std::size_t n) const noexcept;

    /// Jet of f'. The top coefficient is unknown at this order and set to 0.
    Jet differentiate() const noexcept;

    /// Antiderivative with constant term c0; drops the (unknowable) term of order 7.
    Jet integrate(double c0) const noexcept;

    /// True when all coefficients of order >= 1 are exactly zero.
    bool is_constant() const noexcept;

    friend Jet operator+(const Jet& a, const Jet& b) noexcept;
    friend Jet operator-(const Jet& a, const Jet& b) noexcept;
    friend Jet operator*(const Jet& a, const Jet& b) noexcept;
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a) noexcept;

    friend Jet operator+(const Jet& a, double b) noexcept;
    friend Jet operator+(double a, const Jet& b) noexcept;
    friend Jet operator-(const Jet& a, double b) noexcept;
    friend Jet operator-(double a, const Jet& b) noexcept;
    friend Jet operator*(const Jet& a, double b) noexcept;
    friend Jet operator*(double a, const Jet& b) noexcept;
    friend Jet operator/(const Jet& a, double b);

private:
    Coeffs c_;
};

Jet exp(const Jet& a) noexcept;
Jet log(const Jet& a);
Jet sin(const Jet& a) noexcept;
Jet cos(const Jet& a) noexcept;
Jet atan(const Jet& a) noexcept;
Jet sqrt(const Jet& a);
Jet abs(const Jet& a);
/// Real power. Integral r accepts any base (negative r needs c0 != 0);
/// otherwise c0 > 0 is required.
Jet pow(const Jet& a, double r);
/// Integer power by repeated multiplication.
Jet pow(const Jet& a, int n);

/// Series of outer∘inner, where outer is expanded at inner.c0.
Jet compose(const Jet& outer, const Jet& inner) noexcept;

/// A curve jet in graph form: base point and dy/dx, ..., d^6y/dx^6.
struct GraphJet {
    double x = 0.0;
    double y = 0.0;
    std::array<double, kJetOrder> d{};

    /// k-th derivative of y with respect to x, 1 <= k <= 6.
    constexpr double dy(std::size_t k) const noexcept { return d[k - 1]; }

    /// Jet of y(x + u) in u.
    Jet as_jet() const noexcept;

    bool all_finite() const noexcept;
};

/// Re-graphs a parametric jet (x(t), y(t)) as y(x). Throws NotAGraph when
/// x'(t) = 0 or |x'(t)| <= 1e-12·|y'(t)|.
GraphJet graph_jet_from_parametric(const Jet& xj, const Jet& yj);

} // namespace gaffine
