#include "gaffine/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include <fmt/format.h>

namespace gaffine {

Expr Expr::constant(double v) { return Expr(std::make_shared<const ExprNode>(ExprNode{ConstantNode{v}})); }

Expr Expr::variable() { return Expr(std::make_shared<const ExprNode>(ExprNode{VariableNode{}})); }

Expr Expr::unary(UnaryOp op, Expr arg)
{
    return Expr(std::make_shared<const ExprNode>(ExprNode{UnaryNode{op, std::move(arg)}}));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs)
{
    return Expr(std::make_shared<const ExprNode>(ExprNode{BinaryNode{op, std::move(lhs), std::move(rhs)}}));
}

namespace {

struct NodeEqual {
    bool operator()(const ConstantNode& a, const ConstantNode& b) const { return a.value == b.value; }
    bool operator()(const VariableNode&, const VariableNode&) const { return true; }
    bool operator()(const UnaryNode& a, const UnaryNode& b) const { return a.op == b.op && a.arg == b.arg; }
    bool operator()(const BinaryNode& a, const BinaryNode& b) const
    {
        return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
    }
    template <class A, class B>
    bool operator()(const A&, const B&) const
    {
        return false;
    }
};

} // namespace

bool operator==(const Expr& a, const Expr& b) noexcept
{
    if (a.node_ == b.node_)
        return true;
    return std::visit(NodeEqual{}, a.node_->v, b.node_->v);
}

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : Error(std::move(message)), offset_(offset), expected_(std::move(expected))
{
}

ExprDomainError::ExprDomainError(const std::string& cause, std::string subexpr)
    : DomainError(cause + " in '" + subexpr + "'"), subexpr_(std::move(subexpr))
{
}

// ----------------------------------------------------------------------------
// Parser
// ----------------------------------------------------------------------------

namespace {

struct FunctionName {
    std::string_view name;
    UnaryOp op;
};

constexpr FunctionName kFunctions[] = {
    {"exp", UnaryOp::Exp}, {"ln", UnaryOp::Ln},     {"sin", UnaryOp::Sin}, {"cos", UnaryOp::Cos},
    {"atan", UnaryOp::Atan}, {"sqrt", UnaryOp::Sqrt}, {"abs", UnaryOp::Abs},
};

std::string_view function_name(UnaryOp op)
{
    for (const auto& f : kFunctions)
        if (f.op == op)
            return f.name;
    return "-";
}

class Parser {
public:
    Parser(std::string_view src, std::string_view var) : src_(src), var_(var) {}

    Expr parse_all()
    {
        skip_ws();
        if (pos_ == src_.size())
            fail("empty expression", {"expression"});
        Expr e = parse_sum();
        skip_ws();
        if (pos_ != src_.size())
            fail("unexpected trailing input", {"operator", "end of input"});
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const
    {
        std::string msg = fmt::format("parse error at offset {}: {}; expected one of:", pos_, what);
        for (const auto& e : expected)
            msg += " " + e;
        throw ParseError(std::move(msg), pos_, std::move(expected));
    }

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr parse_sum()
    {
        Expr lhs = parse_product();
        for (;;) {
            if (accept('+'))
                lhs = Expr::binary(BinaryOp::Add, lhs, parse_product());
            else if (accept('-'))
                lhs = Expr::binary(BinaryOp::Sub, lhs, parse_product());
            else
                return lhs;
        }
    }

    Expr parse_product()
    {
        Expr lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = Expr::binary(BinaryOp::Mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = Expr::binary(BinaryOp::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    Expr parse_unary()
    {
        if (accept('-'))
            return Expr::unary(UnaryOp::Neg, parse_unary());
        if (accept('+'))
            return parse_unary();
        return parse_power();
    }

    Expr parse_power()
    {
        Expr base = parse_primary();
        if (accept('^'))
            return Expr::binary(BinaryOp::Pow, base, parse_unary());
        return base;
    }

    Expr parse_primary()
    {
        skip_ws();
        if (pos_ == src_.size())
            fail("unexpected end of input", {"number", std::string(var_), "function", "("});
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            Expr inner = parse_sum();
            if (!accept(')'))
                fail("unbalanced parenthesis", {")"});
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return parse_identifier();
        fail(fmt::format("unexpected character '{}'", c), {"number", std::string(var_), "function", "("});
    }

    Expr parse_number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0) {
            pos_ = start;
            fail("malformed number", {"digit"});
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                ++pos_;
            if (digits() == 0) {
                pos_ = mark;
                fail("malformed exponent", {"digit"});
            }
        }
        double v = 0.0;
        const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (res.ec != std::errc{} || res.ptr != src_.data() + pos_) {
            pos_ = start;
            fail("number out of range", {"number"});
        }
        check_no_implicit_multiplication();
        return Expr::constant(v);
    }

    Expr parse_identifier()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
            ++pos_;
        const std::string_view id = src_.substr(start, pos_ - start);
        if (id == var_) {
            check_no_implicit_multiplication();
            return Expr::variable();
        }
        if (id == "pi") {
            check_no_implicit_multiplication();
            return Expr::constant(std::numbers::pi);
        }
        for (const auto& f : kFunctions) {
            if (f.name == id) {
                if (!accept('('))
                    fail(fmt::format("function '{}' requires an argument", id), {"("});
                Expr arg = parse_sum();
                if (!accept(')'))
                    fail("unbalanced parenthesis", {")"});
                return Expr::unary(f.op, arg);
            }
        }
        pos_ = start;
        fail(fmt::format("unknown identifier '{}'", id), {std::string(var_), "pi", "function"});
    }

    // "2x" or "2(x)" would otherwise silently parse as a trailing-input error
    // at a confusing offset; report it where it happens.
    void check_no_implicit_multiplication()
    {
        if (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_' || c == '.')
                fail("implicit multiplication is not supported", {"operator", ")", "end of input"});
        }
    }

    std::string_view src_;
    std::string_view var_;
    std::size_t pos_ = 0;
};

// ----------------------------------------------------------------------------
// Printer
// ----------------------------------------------------------------------------

enum Prec : int { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

int precedence(const Expr& e)
{
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, BinaryNode>) {
                switch (n.op) {
                case BinaryOp::Add:
                case BinaryOp::Sub:
                    return kSum;
                case BinaryOp::Mul:
                case BinaryOp::Div:
                    return kProduct;
                case BinaryOp::Pow:
                    return kPower;
                }
                return kAtom;
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                return n.op == UnaryOp::Neg ? kUnary : kAtom;
            } else {
                return kAtom;
            }
        },
        e.node().v);
}

void print(const Expr& e, std::string_view var, std::string& out);

void print_wrapped(const Expr& e, bool parens, std::string_view var, std::string& out)
{
    if (parens)
        out += '(';
    print(e, var, out);
    if (parens)
        out += ')';
}

void print(const Expr& e, std::string_view var, std::string& out)
{
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ConstantNode>) {
                if (std::signbit(n.value))
                    out += fmt::format("({})", n.value);
                else
                    out += fmt::format("{}", n.value);
            } else if constexpr (std::is_same_v<T, VariableNode>) {
                out += var;
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                if (n.op == UnaryOp::Neg) {
                    out += '-';
                    print_wrapped(n.arg, precedence(n.arg) < kUnary, var, out);
                } else {
                    out += function_name(n.op);
                    out += '(';
                    print(n.arg, var, out);
                    out += ')';
                }
            } else {
                const int p = precedence(e);
                if (n.op == BinaryOp::Pow) {
                    print_wrapped(n.lhs, precedence(n.lhs) <= kPower, var, out);
                    out += '^';
                    print_wrapped(n.rhs, precedence(n.rhs) < kUnary, var, out);
                    return;
                }
                print_wrapped(n.lhs, precedence(n.lhs) < p, var, out);
                switch (n.op) {
                case BinaryOp::Add: out += " + "; break;
                case BinaryOp::Sub: out += " - "; break;
                case BinaryOp::Mul: out += '*'; break;
                case BinaryOp::Div: out += '/'; break;
                case BinaryOp::Pow: break;
                }
                print_wrapped(n.rhs, precedence(n.rhs) <= p, var, out);
            }
        },
        e.node().v);
}

// ----------------------------------------------------------------------------
// Evaluation
// ----------------------------------------------------------------------------

template <class F>
auto annotate(const Expr& e, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const ExprDomainError&) {
        throw;
    } catch (const DomainError& err) {
        throw ExprDomainError(err.what(), to_string(e));
    } catch (const DivisionByZeroJet& err) {
        throw ExprDomainError(err.what(), to_string(e));
    }
}

Jet apply(UnaryOp op, const Jet& a)
{
    switch (op) {
    case UnaryOp::Neg: return -a;
    case UnaryOp::Exp: return exp(a);
    case UnaryOp::Ln: return log(a);
    case UnaryOp::Sin: return sin(a);
    case UnaryOp::Cos: return cos(a);
    case UnaryOp::Atan: return atan(a);
    case UnaryOp::Sqrt: return sqrt(a);
    case UnaryOp::Abs: return abs(a);
    }
    return a;
}

Jet apply(BinaryOp op, const Jet& a, const Jet& b)
{
    switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div: return a / b;
    case BinaryOp::Pow:
        if (b.is_constant())
            return pow(a, b[0]);
        if (!(a[0] > 0.0))
            throw DomainError("variable exponent requires a positive base");
        return exp(b * log(a));
    }
    return a;
}

double apply(UnaryOp op, double a)
{
    switch (op) {
    case UnaryOp::Neg: return -a;
    case UnaryOp::Exp: return std::exp(a);
    case UnaryOp::Ln:
        if (!(a > 0.0))
            throw DomainError("ln of a non-positive value");
        return std::log(a);
    case UnaryOp::Sin: return std::sin(a);
    case UnaryOp::Cos: return std::cos(a);
    case UnaryOp::Atan: return std::atan(a);
    case UnaryOp::Sqrt:
        if (a < 0.0)
            throw DomainError("sqrt of a negative value");
        return std::sqrt(a);
    case UnaryOp::Abs: return std::abs(a);
    }
    return a;
}

double apply(BinaryOp op, double a, double b)
{
    switch (op) {
    case BinaryOp::Add: return a + b;
    case BinaryOp::Sub: return a - b;
    case BinaryOp::Mul: return a * b;
    case BinaryOp::Div:
        if (b == 0.0)
            throw DomainError("division by zero");
        return a / b;
    case BinaryOp::Pow:
        if (a < 0.0 && b != std::nearbyint(b))
            throw DomainError("non-integer power of a negative value");
        return std::pow(a, b);
    }
    return a;
}

template <class V>
V eval_impl(const Expr& e, const V& var)
{
    return std::visit(
        [&](const auto& n) -> V {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ConstantNode>) {
                if constexpr (std::is_same_v<V, Jet>)
                    return Jet::constant(n.value);
                else
                    return n.value;
            } else if constexpr (std::is_same_v<T, VariableNode>) {
                return var;
            } else if constexpr (std::is_same_v<T, UnaryNode>) {
                const V a = eval_impl(n.arg, var);
                return annotate(e, [&] { return apply(n.op, a); });
            } else {
                const V a = eval_impl(n.lhs, var);
                const V b = eval_impl(n.rhs, var);
                return annotate(e, [&] { return apply(n.op, a, b); });
            }
        },
        e.node().v);
}

} // namespace

Expr parse(std::string_view src, std::string_view var) { return Parser(src, var).parse_all(); }

std::string to_string(const Expr& e, std::string_view var)
{
    std::string out;
    print(e, var, out);
    return out;
}

Jet eval(const Expr& e, const Jet& var) { return eval_impl<Jet>(e, var); }

double eval(const Expr& e, double var) { return eval_impl<double>(e, var); }

GraphJet eval_jet(const Expr& e, double x0)
{
    const Jet y = eval(e, Jet::variable(x0));
    GraphJet g;
    g.x = x0;
    g.y = y[0];
    for (std::size_t k = 1; k <= kJetOrder; ++k)
        g.d[k - 1] = y.derivative(k);
    return g;
}

} // namespace gaffine
