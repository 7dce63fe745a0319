#include "gaffine/curve.hpp"

#include "gaffine/errors.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace gaffine {

Curve Curve::graph(Expr y)
{
    return Curve([y = std::move(y)](double x0) {
        const Jet x = Jet::variable(x0);
        return std::pair{x, eval(y, x)};
    });
}

Curve Curve::parametric(Expr x, Expr y)
{
    return Curve([x = std::move(x), y = std::move(y)](double t0) {
        const Jet t = Jet::variable(t0);
        return std::pair{eval(x, t), eval(y, t)};
    });
}

Curve Curve::orbit(Generator x, Point p)
{
    return Curve([x = std::move(x), p](double t) { return orbit_jet(x, p, t); });
}

Point Curve::point(double param) const
{
    const auto [xj, yj] = fn_(param);
    return {xj[0], yj[0]};
}

CurveSample Curve::sample(double param) const
{
    const auto [xj, yj] = fn_(param);
    return {graph_jet_from_parametric(xj, yj), xj[1]};
}

namespace {

struct CatalogEntry {
    const char* name;
    std::map<std::string, double> defaults;
};

const std::vector<CatalogEntry>& entries()
{
    static const std::vector<CatalogEntry> s = {
        {"line", {{"m", 1.0}, {"c", 0.0}}},
        {"parabola", {{"a", 1.0}}},
        {"power", {{"a", 3.0}}},
        {"xlogx", {{"a", 0.0}, {"b", 1.0}}},
        {"spiral", {{"a", 1.0}, {"b", 1.0}}},
        {"exp", {}},
        {"ellipse", {{"p", 2.0}, {"q", 1.0}}},
        {"hyperbola", {{"p", 1.0}, {"q", 1.0}}},
    };
    return s;
}

// Shortest round-trip text, parenthesized when negative so it can be spliced
// into an expression.
std::string num(double v)
{
    if (std::signbit(v))
        return fmt::format("({})", v);
    return fmt::format("{}", v);
}

} // namespace

Curve CatalogCurve::curve() const
{
    if (parametric())
        return Curve::parametric(parse(x_expr, "t"), parse(y_expr, "t"));
    return Curve::graph(parse(y_expr, "x"));
}

const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& s : entries())
            n.emplace_back(s.name);
        return n;
    }();
    return names;
}

CatalogCurve catalog_curve(const std::string& name, const std::map<std::string, double>& params)
{
    const CatalogEntry* entry = nullptr;
    for (const auto& s : entries())
        if (name == s.name)
            entry = &s;
    if (entry == nullptr)
        throw InvalidArgument(fmt::format("unknown catalog curve '{}'", name));

    CatalogCurve c;
    c.name = name;
    c.params = entry->defaults;
    for (const auto& [key, value] : params) {
        if (!c.params.contains(key))
            throw InvalidArgument(fmt::format("catalog curve '{}' has no parameter '{}'", name, key));
        if (!std::isfinite(value))
            throw InvalidArgument(fmt::format("parameter '{}' must be finite", key));
        c.params[key] = value;
    }
    const auto& p = c.params;

    if (name == "line") {
        c.y_expr = fmt::format("{}*x + {}", num(p.at("m")), num(p.at("c")));
        c.window_lo = -1.0;
        c.window_hi = 1.0;
    } else if (name == "parabola") {
        c.y_expr = fmt::format("{}*x^2", num(p.at("a")));
        c.window_lo = -1.0;
        c.window_hi = 1.0;
    } else if (name == "power") {
        c.y_expr = fmt::format("x^{}", num(p.at("a")));
        c.window_lo = 0.5;
        c.window_hi = 2.0;
    } else if (name == "xlogx") {
        c.y_expr = fmt::format("{}*x + {}*x*ln(abs(x))", num(p.at("a")), num(p.at("b")));
        c.window_lo = 0.5;
        c.window_hi = 2.0;
    } else if (name == "spiral") {
        // r = e^{(a/b)θ}, counter-clockwise in θ. Vertical tangents sit at
        // θ = atan(a/b) + mπ; the default window lies strictly between two.
        const double b = p.at("b");
        if (b == 0.0)
            throw InvalidArgument("spiral requires b != 0");
        const double rho = p.at("a") / b;
        c.x_expr = fmt::format("exp({}*t)*cos(t)", num(rho));
        c.y_expr = fmt::format("exp({}*t)*sin(t)", num(rho));
        c.window_lo = std::atan(rho) + 0.2;
        c.window_hi = std::atan(rho) + std::numbers::pi - 0.2;
    } else if (name == "exp") {
        c.y_expr = "exp(x)";
        c.window_lo = -1.0;
        c.window_hi = 1.0;
    } else if (name == "ellipse") {
        c.x_expr = fmt::format("{}*cos(t)", num(p.at("p")));
        c.y_expr = fmt::format("{}*sin(t)", num(p.at("q")));
        c.window_lo = 0.3;
        c.window_hi = 2.8;
    } else if (name == "hyperbola") {
        c.x_expr = fmt::format("{}*(exp(t) + exp(-t))/2", num(p.at("p")));
        c.y_expr = fmt::format("{}*(exp(t) - exp(-t))/2", num(p.at("q")));
        c.window_lo = 0.2;
        c.window_hi = 1.5;
    }
    return c;
}

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> v;
    if (n == 0)
        return v;
    if (n == 1) {
        v.push_back(lo);
        return v;
    }
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    v.back() = hi;
    return v;
}

} // namespace gaffine
