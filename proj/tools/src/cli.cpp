#include "gaffine_cli/cli.hpp"

#include "gaffine_cli/format.hpp"
#include "gaffine_cli/svg.hpp"
#include "gaffine_cli/verify.hpp"

#include <gaffine/curve.hpp>
#include <gaffine/errors.hpp>
#include <gaffine/expr.hpp>
#include <gaffine/frames.hpp>
#include <gaffine/invariants.hpp>
#include <gaffine/reconstruct.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

namespace gaffine::cli {

namespace {

using nlohmann::json;

constexpr double kConstantKsTol = 1e-6;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Fault size injected by the hidden verify flag.
constexpr double kInjectedFault = 1e-6;

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error(fmt::format("cannot open '{}' for writing", path));
    f << content;
    if (!f)
        throw Error(fmt::format("failed writing '{}'", path));
}

json number_or_null(double v)
{
    if (std::isfinite(v))
        return v;
    return nullptr;
}

json number_or_null(const std::optional<double>& v) { return v ? number_or_null(*v) : json(nullptr); }

// ---------------------------------------------------------------------------
// Curve selection shared by invariants, classify and plot
// ---------------------------------------------------------------------------

struct CurveOptions {
    std::string catalog;
    std::vector<std::string> params;
    std::string curve;
    std::vector<std::string> parametric;
    std::vector<double> window;
    std::size_t n = 0;
};

struct ResolvedCurve {
    Curve curve;
    std::string label;
    double lo;
    double hi;
    std::size_t n;
};

void add_curve_options(CLI::App* app, CurveOptions& o, std::size_t default_n)
{
    o.n = default_n;
    auto* cat = app->add_option("--catalog", o.catalog, "Catalog curve: " + fmt::format("{}", fmt::join(catalog_names(), ", ")));
    app->add_option("--param", o.params, "Catalog parameter as name=value (repeatable)")->needs(cat);
    auto* cur = app->add_option("--curve", o.curve, "Graph y = f(x), e.g. \"x^3\"");
    auto* par = app->add_option("--parametric", o.parametric, "Parametric x(t) y(t)")->expected(2);
    cat->excludes(cur)->excludes(par);
    cur->excludes(par);
    app->add_option("--window", o.window, "Parameter window A B")->expected(2);
    app->add_option("-n,--count", o.n, "Number of samples (>= 2)");
}

std::map<std::string, double> parse_params(const std::vector<std::string>& items)
{
    std::map<std::string, double> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InvalidArgument(fmt::format("--param expects name=value, got '{}'", item));
        const std::string value = item.substr(eq + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(value, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != value.size() || value.empty())
            throw InvalidArgument(fmt::format("--param value '{}' is not a number", value));
        out[item.substr(0, eq)] = v;
    }
    return out;
}

ResolvedCurve resolve(const CurveOptions& o)
{
    std::optional<Curve> curve;
    std::string label;
    double lo = 0.0;
    double hi = 1.0;
    if (!o.catalog.empty()) {
        const CatalogCurve c = catalog_curve(o.catalog, parse_params(o.params));
        curve = c.curve();
        lo = c.window_lo;
        hi = c.window_hi;
        label = c.parametric() ? fmt::format("{}: x = {}, y = {}", c.name, c.x_expr, c.y_expr)
                               : fmt::format("{}: y = {}", c.name, c.y_expr);
    } else if (!o.curve.empty()) {
        const Expr e = parse(o.curve);
        curve = Curve::graph(e);
        label = fmt::format("y = {}", to_string(e));
    } else if (o.parametric.size() == 2) {
        const Expr x = parse(o.parametric[0], "t");
        const Expr y = parse(o.parametric[1], "t");
        curve = Curve::parametric(x, y);
        label = fmt::format("x = {}, y = {}", to_string(x, "t"), to_string(y, "t"));
    } else {
        throw InvalidArgument("one of --catalog, --curve or --parametric is required");
    }
    if (o.window.size() == 2) {
        lo = o.window[0];
        hi = o.window[1];
    }
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
        throw InvalidArgument("--window needs finite A < B");
    if (o.n < 2)
        throw InvalidArgument("-n must be at least 2");
    return {std::move(*curve), std::move(label), lo, hi, o.n};
}

// ---------------------------------------------------------------------------
// invariants
// ---------------------------------------------------------------------------

struct InvariantsOptions {
    CurveOptions source;
    std::string out_path;
    bool json = false;
};

int cmd_invariants(const InvariantsOptions& o, std::ostream& out, std::ostream& err)
{
    const ResolvedCurve rc = resolve(o.source);
    const std::vector<std::string> header = {"param", "x",     "y",    "S1",    "S2", "S3",
                                             "sigma", "regular", "kind", "ds_dx", "k",  "k_s"};
    std::vector<std::vector<std::string>> table, csv;
    json records = json::array();

    for (double p : linspace(rc.lo, rc.hi, rc.n)) {
        CurveSample smp;
        try {
            smp = rc.curve.sample(p);
        } catch (const NotAGraph&) {
            err << fmt::format("warning: vertical tangent at parameter {}; sample skipped\n", table_number(p));
            continue;
        }
        const InvariantRecord r = invariant_record(smp.jet);
        const std::string kind = r.regular ? "-" : std::string(to_string(r.kind));
        const std::string regular = r.regular ? "true" : "false";
        const double vals[] = {p,      r.x,   r.y,   r.s.s1, r.s.s2, r.s.s3, r.ds_dx.value_or(kNan),
                               r.k.value_or(kNan), r.k_s.value_or(kNan)};
        auto row = [&](auto&& fmtnum) {
            return std::vector<std::string>{fmtnum(vals[0]), fmtnum(vals[1]), fmtnum(vals[2]), fmtnum(vals[3]),
                                            fmtnum(vals[4]), fmtnum(vals[5]), std::to_string(r.sigma), regular,
                                            kind,            fmtnum(vals[6]), fmtnum(vals[7]), fmtnum(vals[8])};
        };
        table.push_back(row(table_number));
        csv.push_back(row(file_number));
        records.push_back({{"param", p},
                           {"x", r.x},
                           {"y", r.y},
                           {"S1", r.s.s1},
                           {"S2", r.s.s2},
                           {"S3", r.s.s3},
                           {"sigma", r.sigma},
                           {"regular", r.regular},
                           {"kind", r.regular ? json(nullptr) : json(std::string(to_string(r.kind)))},
                           {"ds_dx", number_or_null(r.ds_dx)},
                           {"k", number_or_null(r.k)},
                           {"k_s", number_or_null(r.k_s)}});
    }

    if (!o.out_path.empty())
        write_file(o.out_path, render_csv(header, csv));
    if (o.json)
        out << json{{"schema", 1}, {"command", "invariants"}, {"curve", rc.label}, {"records", records}}.dump(2)
            << '\n';
    else
        out << "# " << rc.label << '\n' << render_table(header, table);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyOptions {
    CurveOptions source;
    bool json = false;
};

int cmd_classify(const ClassifyOptions& o, std::ostream& out, std::ostream& err)
{
    const ResolvedCurve rc = resolve(o.source);
    double sum_k = 0.0;
    double max_ks = 0.0;
    int sigma = 0;
    bool sigma_changes = false;
    std::size_t count = 0;
    for (double p : linspace(rc.lo, rc.hi, rc.n)) {
        const auto [xj, yj] = rc.curve.jets(p);
        ChartInvariants ci;
        try {
            ci = parametric_invariants(xj, yj);
        } catch (const SingularPoint&) {
            throw SingularPoint(fmt::format("curve is singular at parameter {}; classify needs a regular window",
                                            table_number(p)));
        }
        if (sigma != 0 && ci.sigma != sigma)
            sigma_changes = true;
        sigma = ci.sigma;
        sum_k += ci.k;
        max_ks = std::max(max_ks, std::abs(ci.k_s));
        ++count;
    }
    const double k = sum_k / static_cast<double>(count);

    if (sigma_changes || !(max_ks <= kConstantKsTol)) {
        const std::string why = sigma_changes ? "sigma changes sign on the window"
                                              : fmt::format("max |k_s| = {} exceeds {}", table_number(max_ks),
                                                            table_number(kConstantKsTol));
        if (o.json)
            out << json{{"schema", 1},
                        {"family", nullptr},
                        {"error", "NotConstantCurvature"},
                        {"max_abs_k_s", number_or_null(max_ks)},
                        {"sigma_changes", sigma_changes}}
                       .dump(2)
                << '\n';
        else
            out << "NotConstantCurvature: " << why << '\n';
        err << "error: curvature is not constant (" << why << ")\n";
        return kExitNotConstant;
    }

    const Family f = classify_constant(k, sigma);
    if (o.json) {
        out << json{{"schema", 1},
                    {"family", std::string(to_string(f.tag))},
                    {"params", f.params},
                    {"congruent_params", f.congruent_params},
                    {"k", k},
                    {"sigma", sigma},
                    {"orientation", f.orientation}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    auto params_text = [](const std::map<std::string, double>& m) {
        std::vector<std::string> parts;
        for (const auto& [name, v] : m)
            parts.push_back(fmt::format("{}={}", name, table_number(v)));
        return parts.empty() ? std::string("-") : fmt::format("{}", fmt::join(parts, " "));
    };
    out << "family: " << to_string(f.tag) << '\n'
        << "k: " << table_number(k) << '\n'
        << "sigma: " << sigma << '\n'
        << "orientation: " << f.orientation << '\n'
        << "params: " << params_text(f.params) << '\n'
        << "congruent_params: " << params_text(f.congruent_params) << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// reconstruct
// ---------------------------------------------------------------------------

struct ProfileOptions {
    std::optional<double> k;
    std::string k_expr;
    int sigma = 0;
    std::vector<double> span = {0.0, 1.0};
    double step = 1e-3;
    std::vector<double> frame;
    bool rk4 = false;
};

void add_profile_options(CLI::App* app, ProfileOptions& o, bool required)
{
    auto* k = app->add_option("--k", o.k, "Constant curvature");
    auto* ke = app->add_option("--k-expr", o.k_expr, "Curvature as an expression in s");
    k->excludes(ke);
    auto* sg = app->add_option("--sigma", o.sigma, "Signature, +1 or -1");
    if (required)
        sg->required();
    app->add_option("--span", o.span, "Arc-length span A B")->expected(2);
    app->add_option("--step", o.step, "Step in arc length");
    app->add_option("--frame", o.frame, "Initial frame tx ty nx ny rx ry")->expected(6);
    app->add_flag("--rk4", o.rk4, "Integrate constant profiles with RK4 instead of the matrix exponential");
}

struct ReconstructedSample {
    double s;
    FrenetState f;
    double k_profile;
    double k = kNan;
    int sigma = 0;
};

std::vector<ReconstructedSample> reconstruct_samples(const ProfileOptions& o)
{
    if (o.sigma != 1 && o.sigma != -1)
        throw InvalidArgument("--sigma must be +1 or -1");
    if (!o.k && o.k_expr.empty())
        throw InvalidArgument("one of --k or --k-expr is required");
    if (!(o.step > 0.0) || !std::isfinite(o.step))
        throw InvalidArgument("--step must be positive");
    const double s0 = o.span[0];
    const double s1 = o.span[1];
    if (!std::isfinite(s0) || !std::isfinite(s1))
        throw InvalidArgument("--span must be finite");

    FrenetState f0;
    if (o.frame.size() == 6)
        f0 = FrenetState({o.frame[0], o.frame[1]}, {o.frame[2], o.frame[3]}, {o.frame[4], o.frame[5]});

    const CurvatureProfile profile = o.k ? CurvatureProfile::constant(*o.k, o.sigma)
                                         : CurvatureProfile::expression(parse(o.k_expr, "s"), o.sigma);

    std::vector<FrenetSample> states;
    if (o.k && !o.rk4) {
        const auto steps = static_cast<std::size_t>(std::ceil(std::abs(s1 - s0) / o.step - 1e-9));
        std::vector<double> offsets;
        for (std::size_t i = 0; i <= steps; ++i)
            offsets.push_back(steps == 0 ? 0.0 : (s1 - s0) * static_cast<double>(i) / static_cast<double>(steps));
        states = reconstruct_constant(*o.k, o.sigma, offsets, f0);
        for (auto& st : states)
            st.s += s0;
    } else {
        states = integrate_frenet(profile, f0, s0, s1, o.step);
    }

    std::vector<ReconstructedSample> out;
    out.reserve(states.size());
    for (const auto& st : states) {
        ReconstructedSample r{st.s, st.f, profile.k(st.s)};
        try {
            const auto [xj, yj] = frenet_point_jets(profile, st.f, st.s);
            const ChartInvariants ci = parametric_invariants(xj, yj);
            r.k = ci.k;
            r.sigma = ci.sigma;
        } catch (const Error&) {
        }
        out.push_back(r);
    }
    return out;
}

struct ReconstructOptions {
    ProfileOptions profile;
    std::string out_path;
    std::string svg_path;
    bool json = false;
};

PlotData reconstruction_plot(const std::vector<ReconstructedSample>& samples, int sigma, std::size_t frames_every);

int cmd_reconstruct(const ReconstructOptions& o, std::ostream& out, std::ostream&)
{
    const auto samples = reconstruct_samples(o.profile);
    const std::vector<std::string> header = {"s", "x", "y", "k", "sigma"};
    std::vector<std::vector<std::string>> csv;
    json arr = json::array();
    double max_dev = 0.0;
    bool sigma_ok = true;
    for (const auto& r : samples) {
        const Point p = r.f.r();
        csv.push_back({file_number(r.s), file_number(p.x()), file_number(p.y()), file_number(r.k),
                       std::to_string(r.sigma)});
        arr.push_back({{"s", r.s}, {"x", p.x()}, {"y", p.y()}, {"k", number_or_null(r.k)}, {"sigma", r.sigma}});
        const double dev = std::abs(r.k - r.k_profile);
        max_dev = std::isnan(dev) ? std::numeric_limits<double>::infinity() : std::max(max_dev, dev);
        sigma_ok = sigma_ok && r.sigma == o.profile.sigma;
    }
    if (!o.out_path.empty())
        write_file(o.out_path, render_csv(header, csv));
    if (!o.svg_path.empty())
        write_file(o.svg_path, render_svg(reconstruction_plot(samples, o.profile.sigma, 0)));

    if (o.json) {
        out << json{{"schema", 1},
                    {"command", "reconstruct"},
                    {"sigma", o.profile.sigma},
                    {"max_k_deviation", number_or_null(max_dev)},
                    {"samples", arr}}
                   .dump(2)
            << '\n';
        return kExitOk;
    }
    const Point end = samples.back().f.r();
    out << "samples: " << samples.size() << '\n'
        << "span: " << table_number(samples.front().s) << ' ' << table_number(samples.back().s) << '\n'
        << "endpoint: " << table_number(end.x()) << ' ' << table_number(end.y()) << '\n'
        << "max |k - k_profile|: " << table_number(max_dev) << '\n'
        << "sigma consistent: " << (sigma_ok ? "yes" : "no") << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// orbit
// ---------------------------------------------------------------------------

struct OrbitOptions {
    std::vector<double> generator;
    std::vector<double> point;
    std::vector<double> window = {0.0, 1.0};
    std::size_t n = 11;
    std::string out_path;
    std::string svg_path;
    bool json = false;
};

std::string_view canonical_name(CanonicalForm f)
{
    switch (f) {
    case CanonicalForm::None: return "none";
    case CanonicalForm::Diagonal: return "diagonal";
    case CanonicalForm::Jordan: return "jordan";
    case CanonicalForm::RotationScaling: return "rotation-scaling";
    case CanonicalForm::TranslationScaling: return "translation-scaling";
    case CanonicalForm::Parabolic: return "parabolic";
    }
    return "none";
}

int cmd_orbit(const OrbitOptions& o, std::ostream& out, std::ostream& err)
{
    if (o.window.size() != 2 || !(o.window[0] < o.window[1]))
        throw InvalidArgument("--window needs A < B");
    if (o.n < 2)
        throw InvalidArgument("-n must be at least 2");
    const auto& g = o.generator;
    const Generator x = Generator::from_rows(g[0], g[1], g[2], g[3], g[4], g[5]);
    const Point p(o.point[0], o.point[1]);
    const auto grid = linspace(o.window[0], o.window[1], o.n);
    const Orbit orbit = orbit_curve(x, p, grid);
    for (double t : orbit.skipped)
        err << fmt::format("warning: vertical tangent at t = {}; sample skipped\n", table_number(t));

    const std::vector<std::string> header = {"t", "x", "y", "S1", "S2", "sigma", "regular", "k"};
    std::vector<std::vector<std::string>> table;
    std::vector<std::vector<std::string>> csv;
    json arr = json::array();
    for (const auto& smp : orbit.samples) {
        const InvariantRecord r = invariant_record(smp.jet);
        const double k = r.k.value_or(kNan);
        table.push_back({table_number(smp.t), table_number(smp.point.x()), table_number(smp.point.y()),
                         table_number(r.s.s1), table_number(r.s.s2), std::to_string(r.sigma),
                         r.regular ? "true" : "false", table_number(k)});
        csv.push_back({file_number(smp.t), file_number(smp.point.x()), file_number(smp.point.y()), file_number(k),
                       std::to_string(r.sigma)});
        arr.push_back({{"t", smp.t},
                       {"x", smp.point.x()},
                       {"y", smp.point.y()},
                       {"S1", r.s.s1},
                       {"S2", r.s.s2},
                       {"sigma", r.sigma},
                       {"regular", r.regular},
                       {"k", number_or_null(k)}});
    }
    if (!o.out_path.empty())
        write_file(o.out_path, render_csv({"t", "x", "y", "k", "sigma"}, csv));
    if (!o.svg_path.empty()) {
        PlotData plot;
        for (double t : linspace(o.window[0], o.window[1], std::max<std::size_t>(o.n, 200)))
            plot.curve.push_back(apply_point(one_param_subgroup(x, t), p));
        write_file(o.svg_path, render_svg(plot));
    }
    if (o.json) {
        json gen = json::array();
        for (int r = 0; r < 3; ++r)
            gen.push_back({x.matrix()(r, 0), x.matrix()(r, 1), x.matrix()(r, 2)});
        out << json{{"schema", 1},
                    {"command", "orbit"},
                    {"generator", gen},
                    {"canonical_form", std::string(canonical_name(canonical_form(x)))},
                    {"point", {p.x(), p.y()}},
                    {"skipped", orbit.skipped},
                    {"samples", arr}}
                   .dump(2)
            << '\n';
    } else {
        out << "# canonical form: " << canonical_name(canonical_form(x)) << '\n' << render_table(header, table);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyOptions {
    long long trials = 1000;
    std::uint64_t seed = 42;
    bool json = false;
    bool inject_fault = false;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err)
{
    if (o.trials < 1)
        throw InvalidArgument("--trials must be at least 1");
    ClosedFormFault fault;
    if (o.inject_fault)
        fault.n_relative = kInjectedFault;
    const VerifyReport r = run_verify(static_cast<std::size_t>(o.trials), o.seed, fault);

    std::vector<std::string> failed;
    for (const auto& l : r.laws)
        if (!l.pass)
            failed.push_back(l.name);

    if (o.json) {
        json laws = json::array();
        for (const auto& l : r.laws)
            laws.push_back({{"law", l.name},
                            {"max_rel_err", number_or_null(l.max_rel_err)},
                            {"tolerance", l.tolerance},
                            {"pass", l.pass}});
        out << json{{"schema", 1},
                    {"sweep", r.sweep},
                    {"trials", r.trials},
                    {"seed", r.seed},
                    {"max_rel_err", number_or_null(r.max_rel_err)},
                    {"pass", r.pass},
                    {"laws", laws}}
                   .dump(2)
            << '\n';
    } else {
        std::vector<std::vector<std::string>> rows;
        for (const auto& l : r.laws)
            rows.push_back({l.name, table_number(l.max_rel_err), table_number(l.tolerance), l.pass ? "pass" : "FAIL"});
        out << render_table({"law", "max_rel_err", "tolerance", "status"}, rows);
        out << fmt::format("verify: {} (trials {}, seed {}, max rel err {})\n", r.pass ? "PASS" : "FAIL", r.trials,
                           r.seed, table_number(r.max_rel_err));
    }
    if (!r.pass) {
        err << fmt::format("error: transformation laws violated: {}\n", fmt::join(failed, ", "));
        return kExitCheckFailed;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// plot
// ---------------------------------------------------------------------------

struct PlotOptions {
    CurveOptions source;
    ProfileOptions profile;
    std::string svg_path;
    std::size_t frames = 0;
};

Glyph make_glyph(const Point& base, const Eigen::Vector2d& e1, const Eigen::Vector2d& e2,
                 const Eigen::Vector2d& t, const Eigen::Vector2d& n)
{
    return Glyph{{{base, e1, "e1"}, {base, e2, "e2"}, {base, t, "t"}, {base, n, "n"}}};
}

PlotData reconstruction_plot(const std::vector<ReconstructedSample>& samples, int sigma, std::size_t frames_every)
{
    PlotData plot;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& r = samples[i];
        plot.curve.push_back(r.f.r());
        if (frames_every > 0 && i % frames_every == 0) {
            const Eigen::Vector2d t = r.f.t();
            const Eigen::Vector2d n = r.f.n();
            // n = −σk/2·t + e2
            const Eigen::Vector2d e2 = n + 0.5 * sigma * r.k_profile * t;
            plot.glyphs.push_back(make_glyph(r.f.r(), t, e2, t, n));
        }
    }
    return plot;
}

int cmd_plot(const PlotOptions& o, std::ostream&, std::ostream& err)
{
    const bool from_profile = o.profile.k.has_value() || !o.profile.k_expr.empty();
    PlotData plot;
    if (from_profile) {
        const auto samples = reconstruct_samples(o.profile);
        plot = reconstruction_plot(samples, o.profile.sigma, o.frames);
    } else {
        const ResolvedCurve rc = resolve(o.source);
        std::size_t regular = 0;
        const auto grid = linspace(rc.lo, rc.hi, rc.n);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Point p = rc.curve.point(grid[i]);
            if (!p.allFinite())
                continue;
            plot.curve.push_back(p);
            if (o.frames == 0 || i % o.frames != 0)
                continue;
            try {
                const GraphJet j = rc.curve.sample(grid[i]).jet;
                if (!is_regular(j))
                    continue;
                const FrameRecord fr = right_frame(j);
                plot.glyphs.push_back(make_glyph(fr.base, fr.e1, fr.e2, fr.t, fr.n));
                ++regular;
            } catch (const NotAGraph&) {
            }
        }
        if (o.frames > 0 && regular == 0)
            err << "warning: no regular samples; frame glyphs omitted\n";
    }
    if (plot.curve.size() < 2)
        throw DomainError("fewer than two drawable samples");
    write_file(o.svg_path, render_svg(plot));
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"General-affine differential invariants of plane curves", "gaffine"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "gaffine 0.1.0");
    app.footer("Expressions: + - * / ^, unary minus, exp ln sin cos atan sqrt abs, pi; "
               "the variable is x for --curve, t for --parametric and s for --k-expr.");

    InvariantsOptions inv;
    auto* c_inv = app.add_subcommand("invariants", "Invariant table along a curve");
    add_curve_options(c_inv, inv.source, 11);
    c_inv->add_option("--out", inv.out_path, "Write CSV to PATH");
    c_inv->add_flag("--json", inv.json, "Print JSON instead of a table");

    ClassifyOptions cls;
    auto* c_cls = app.add_subcommand("classify", "Constant-curvature family of a curve");
    add_curve_options(c_cls, cls.source, 21);
    c_cls->add_flag("--json", cls.json, "Print JSON");

    ReconstructOptions rec;
    auto* c_rec = app.add_subcommand("reconstruct", "Rebuild a curve from its curvature profile");
    add_profile_options(c_rec, rec.profile, true);
    c_rec->add_option("--out", rec.out_path, "Write CSV (s, x, y, k, sigma) to PATH");
    c_rec->add_option("--svg", rec.svg_path, "Write an SVG plot to PATH");
    c_rec->add_flag("--json", rec.json, "Print JSON");

    OrbitOptions orb;
    auto* c_orb = app.add_subcommand("orbit", "Orbit exp(tX)p of a one-parameter subgroup");
    c_orb->add_option("--generator", orb.generator, "Generator rows m00 m01 m02 m10 m11 m12")
        ->expected(6)
        ->required();
    c_orb->add_option("--point", orb.point, "Start point px py")->expected(2)->required();
    c_orb->add_option("--window", orb.window, "Parameter window A B")->expected(2);
    c_orb->add_option("-n,--count", orb.n, "Number of samples (>= 2)");
    c_orb->add_option("--out", orb.out_path, "Write CSV (t, x, y, k, sigma) to PATH");
    c_orb->add_option("--svg", orb.svg_path, "Write an SVG plot to PATH");
    c_orb->add_flag("--json", orb.json, "Print JSON");

    VerifyOptions ver;
    auto* c_ver = app.add_subcommand("verify", "Random sweep of the affine transformation laws");
    c_ver->add_option("--trials", ver.trials, "Number of random trials");
    c_ver->add_option("--seed", ver.seed, "Random seed");
    c_ver->add_flag("--json", ver.json, "Print JSON");
    c_ver->add_flag("--inject-fault", ver.inject_fault)->group("");

    PlotOptions plt;
    auto* c_plt = app.add_subcommand("plot", "SVG plot of a curve or a reconstruction");
    add_curve_options(c_plt, plt.source, 200);
    add_profile_options(c_plt, plt.profile, false);
    c_plt->add_option("--svg", plt.svg_path, "Output SVG path")->required();
    c_plt->add_option("--frames", plt.frames, "Draw frame glyphs every M-th sample");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        err << "run with --help for usage\n";
        return kExitError;
    }

    try {
        if (c_inv->parsed())
            return cmd_invariants(inv, out, err);
        if (c_cls->parsed())
            return cmd_classify(cls, out, err);
        if (c_rec->parsed())
            return cmd_reconstruct(rec, out, err);
        if (c_orb->parsed())
            return cmd_orbit(orb, out, err);
        if (c_ver->parsed())
            return cmd_verify(ver, out, err);
        if (c_plt->parsed())
            return cmd_plot(plt, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace gaffine::cli
