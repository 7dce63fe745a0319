#pragma once

/**
 * @file curve.hpp
 * @brief Curves as families of parametric jets, and the built-in catalog.
 *
 * Every curve answers one question: the Taylor jets (x(p + u), y(p + u)) at
 * parameter p. Graph curves use p = x; parametric curves, orbits and
 * reconstructions use their own parameter.
 */

#include "gaffine/affine.hpp"
#include "gaffine/expr.hpp"
#include "gaffine/jet.hpp"

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gaffine {

struct CurveSample {
    GraphJet jet;
    /// dx/dp, converting parameter derivatives to x-derivatives.
    double dx_dparam = 1.0;
};

class Curve {
public:
    using JetFn = std::function<std::pair<Jet, Jet>(double)>;

    explicit Curve(JetFn fn) : fn_(std::move(fn)) {}

    /// y = f(x); the parameter is x.
    static Curve graph(Expr y);
    static Curve parametric(Expr x, Expr y);
    static Curve orbit(Generator x, Point p);

    std::pair<Jet, Jet> jets(double param) const { return fn_(param); }
    Point point(double param) const;
    /// Throws NotAGraph where dx/dp vanishes.
    CurveSample sample(double param) const;

private:
    JetFn fn_;
};

/// Catalog names: line, parabola, power, xlogx, spiral, exp, ellipse, hyperbola.
struct CatalogCurve {
    std::string name;
    std::map<std::string, double> params;
    /// Expression text; for parametric entries the variable is t.
    std::string y_expr;
    std::string x_expr; // empty for graph entries
    double window_lo = 0.0;
    double window_hi = 1.0;

    bool parametric() const noexcept { return !x_expr.empty(); }
    Curve curve() const;
};

const std::vector<std::string>& catalog_names();

/// Throws InvalidArgument for unknown names or parameters.
CatalogCurve catalog_curve(const std::string& name, const std::map<std::string, double>& params = {});

/// n equally spaced parameters over [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, std::size_t n);

} // namespace gaffine
