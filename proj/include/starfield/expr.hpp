#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "starfield/ordering.hpp"
#include "starfield/serialize.hpp"
#include "starfield/star.hpp"

namespace starfield::expr {

enum class NodeKind {
    ModeRef,     // label, resolved at evaluation time
    Num,         // exact nonnegative rational literal
    Hbar,
    Add,         // binary; a - b parses as Add(a, Neg(b))
    Neg,
    SymMul,      // '.' — the symmetric product
    Star,        // '*' — star product, pairing form chosen by context
    Poisson,
    Commutator,
    Theta,
    ThetaW,
    Pi0,
};

struct Ast;
using AstPtr = std::shared_ptr<const Ast>;

struct Ast {
    NodeKind kind;
    std::vector<AstPtr> children;
    std::string label;      // ModeRef
    BigRational num;        // Num (nonnegative; '-' parses as Neg)
    std::string form_name;  // Star

    static AstPtr mode(std::string l) {
        auto n = std::make_shared<Ast>();
        n->kind = NodeKind::ModeRef;
        n->label = std::move(l);
        return n;
    }
    static AstPtr number(BigRational r) {
        auto n = std::make_shared<Ast>();
        n->kind = NodeKind::Num;
        n->num = std::move(r);
        return n;
    }
    static AstPtr make(NodeKind k, std::vector<AstPtr> ch, std::string form = "") {
        auto n = std::make_shared<Ast>();
        n->kind = k;
        n->children = std::move(ch);
        n->form_name = std::move(form);
        return n;
    }
};

inline bool ast_equal(const Ast& a, const Ast& b) {
    if (a.kind != b.kind || a.label != b.label || a.num != b.num ||
        a.form_name != b.form_name || a.children.size() != b.children.size())
        return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!ast_equal(*a.children[i], *b.children[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Parser.  Precedence, low to high:  + -  |  *  |  .  |  unary -  |  ^n
// so  a * b . c  parses as  a * (b . c).
// ---------------------------------------------------------------------------

namespace detail {

struct ExprParser {
    starfield::detail::Cursor cur;
    std::string default_form;

    AstPtr parse_sum() {
        AstPtr lhs = parse_star();
        for (;;) {
            if (cur.accept('+'))
                lhs = Ast::make(NodeKind::Add, {lhs, parse_star()});
            else if (cur.accept('-'))
                lhs = Ast::make(NodeKind::Add,
                                {lhs, Ast::make(NodeKind::Neg, {parse_star()})});
            else
                return lhs;
        }
    }

    AstPtr parse_star() {
        AstPtr lhs = parse_sym();
        while (cur.accept('*'))
            lhs = Ast::make(NodeKind::Star, {lhs, parse_sym()}, default_form);
        return lhs;
    }

    AstPtr parse_sym() {
        AstPtr lhs = parse_unary();
        while (cur.accept('.'))
            lhs = Ast::make(NodeKind::SymMul, {lhs, parse_unary()});
        return lhs;
    }

    AstPtr parse_unary() {
        if (cur.accept('-')) return Ast::make(NodeKind::Neg, {parse_unary()});
        return parse_postfix();
    }

    AstPtr parse_postfix() {
        AstPtr base = parse_atom();
        while (cur.accept('^')) {
            std::uint32_t n = cur.uint_value();
            if (n == 0) {
                base = Ast::number(BigRational(1));
            } else {
                AstPtr acc = base;
                for (std::uint32_t i = 1; i < n; ++i)
                    acc = Ast::make(NodeKind::SymMul, {acc, base});
                base = acc;
            }
        }
        return base;
    }

    AstPtr parse_atom() {
        cur.skip_ws();
        if (cur.pos >= cur.src.size()) throw ParseError(cur.pos, "unexpected end of input");
        char ch = cur.src[cur.pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            return Ast::number(starfield::detail::parse_rational(cur));
        }
        if (ch == '(') {
            ++cur.pos;
            AstPtr inner = parse_sum();
            cur.expect(')', "')'");
            return inner;
        }
        std::size_t at = cur.pos;
        std::string name = cur.ident();
        if (name == "hbar") return Ast::make(NodeKind::Hbar, {});
        if (cur.accept('(')) {
            NodeKind kind;
            std::size_t arity;
            if (name == "poisson") {
                kind = NodeKind::Poisson;
                arity = 2;
            } else if (name == "comm") {
                kind = NodeKind::Commutator;
                arity = 2;
            } else if (name == "theta") {
                kind = NodeKind::Theta;
                arity = 1;
            } else if (name == "thetaW") {
                kind = NodeKind::ThetaW;
                arity = 1;
            } else if (name == "pi0") {
                kind = NodeKind::Pi0;
                arity = 1;
            } else {
                throw ParseError(at, "unknown function '" + name + "'");
            }
            std::vector<AstPtr> args;
            args.push_back(parse_sum());
            for (std::size_t i = 1; i < arity; ++i) {
                cur.expect(',', "','");
                args.push_back(parse_sum());
            }
            cur.expect(')', "')'");
            return Ast::make(kind, std::move(args));
        }
        return Ast::mode(name);
    }
};

}  // namespace detail

/// Parses an expression.  Star nodes are tagged with `default_form`
/// (normally the CLI's active pairing form).  Throws ParseError with the
/// byte offset on malformed input.
inline AstPtr parse(std::string_view src, const std::string& default_form = "sigma") {
    detail::ExprParser p{{src}, default_form};
    AstPtr ast = p.parse_sum();
    if (!p.cur.done()) throw ParseError(p.cur.pos, "trailing characters after expression");
    return ast;
}

/// Prints with the minimal parenthesization the grammar needs;
/// parse(print(ast)) is structurally equal to ast.
inline std::string print(const Ast& ast) {
    auto prec = [](NodeKind k) {
        switch (k) {
            case NodeKind::Add: return 1;
            case NodeKind::Star: return 2;
            case NodeKind::SymMul: return 3;
            case NodeKind::Neg: return 4;
            default: return 5;
        }
    };
    auto rec = [&](auto&& self, const Ast& n) -> std::string {
        auto child = [&](const Ast& c, bool needs_paren) {
            std::string s = self(self, c);
            return needs_paren ? "(" + s + ")" : s;
        };
        switch (n.kind) {
            case NodeKind::ModeRef: return n.label;
            case NodeKind::Num: return n.num.str();
            case NodeKind::Hbar: return std::string("hbar");
            case NodeKind::Add: {
                const Ast& l = *n.children[0];
                const Ast& r = *n.children[1];
                // left-associative: parenthesize a right child at the same level
                std::string ls = child(l, prec(l.kind) < prec(n.kind));
                if (r.kind == NodeKind::Neg)
                    return ls + " - " +
                           child(*r.children[0],
                                 prec(r.children[0]->kind) <= prec(NodeKind::Add));
                return ls + " + " + child(r, prec(r.kind) <= prec(n.kind));
            }
            case NodeKind::Star:
            case NodeKind::SymMul: {
                const char* op = n.kind == NodeKind::Star ? " * " : " . ";
                const Ast& l = *n.children[0];
                const Ast& r = *n.children[1];
                return child(l, prec(l.kind) < prec(n.kind)) + op +
                       child(r, prec(r.kind) <= prec(n.kind));
            }
            case NodeKind::Neg: {
                // unary minus binds tighter than '*' and '.'
                const Ast& c = *n.children[0];
                return "-" + child(c, prec(c.kind) < prec(NodeKind::Neg));
            }
            case NodeKind::Poisson:
                return "poisson(" + self(self, *n.children[0]) + ", " +
                       self(self, *n.children[1]) + ")";
            case NodeKind::Commutator:
                return "comm(" + self(self, *n.children[0]) + ", " +
                       self(self, *n.children[1]) + ")";
            case NodeKind::Theta: return "theta(" + self(self, *n.children[0]) + ")";
            case NodeKind::ThetaW: return "thetaW(" + self(self, *n.children[0]) + ")";
            case NodeKind::Pi0: return "pi0(" + self(self, *n.children[0]) + ")";
        }
        throw InternalError("unhandled AST node kind");
    };
    return rec(rec, ast);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

using Value = std::variant<AlgebraElement<Complex>, fock::FockOperator>;

struct EvalEnv {
    ModeSpacePtr space;
    std::map<std::string, PairingForm<Complex>> forms;
    std::string active_form = "sigma";
    const fock::FockContext* fock_ctx = nullptr;  // required for theta / thetaW

    const PairingForm<Complex>& form(const std::string& name) const {
        const std::string& key = name.empty() ? active_form : name;
        auto it = forms.find(key);
        if (it == forms.end()) throw DomainError("no pairing form named '" + key + "'");
        return it->second;
    }
};

inline Value eval(const Ast& ast, const EvalEnv& env) {
    using Elem = AlgebraElement<Complex>;
    auto as_elem = [](Value v, const char* where) -> Elem {
        if (!std::holds_alternative<Elem>(v))
            throw DomainError(std::string(where) + " expects algebra elements, got an operator");
        return std::get<Elem>(std::move(v));
    };

    switch (ast.kind) {
        case NodeKind::ModeRef:
            if (!env.space->contains(ast.label))
                throw DomainError("unbound mode label '" + ast.label + "'");
            return Elem::generator(env.space, ast.label);
        case NodeKind::Num:
            return Elem::constant(env.space,
                                  Complex{static_cast<double>(ast.num), 0.0});
        case NodeKind::Hbar: return Elem::hbar(env.space);
        case NodeKind::Add: {
            Value l = eval(*ast.children[0], env);
            Value r = eval(*ast.children[1], env);
            if (std::holds_alternative<Elem>(l) && std::holds_alternative<Elem>(r))
                return std::get<Elem>(l) + std::get<Elem>(r);
            if (std::holds_alternative<fock::FockOperator>(l) &&
                std::holds_alternative<fock::FockOperator>(r))
                return std::get<fock::FockOperator>(l) + std::get<fock::FockOperator>(r);
            throw DomainError("cannot add an algebra element and an operator");
        }
        case NodeKind::Neg: {
            Value v = eval(*ast.children[0], env);
            if (std::holds_alternative<Elem>(v)) return -std::get<Elem>(v);
            return std::get<fock::FockOperator>(v).scaled(Complex{-1.0, 0.0});
        }
        case NodeKind::SymMul:
            return sym_mul(as_elem(eval(*ast.children[0], env), "'.'"),
                           as_elem(eval(*ast.children[1], env), "'.'"));
        case NodeKind::Star:
            return star(env.form(ast.form_name),
                        as_elem(eval(*ast.children[0], env), "'*'"),
                        as_elem(eval(*ast.children[1], env), "'*'"));
        case NodeKind::Poisson:
            return poisson(env.form(""), as_elem(eval(*ast.children[0], env), "poisson"),
                           as_elem(eval(*ast.children[1], env), "poisson"));
        case NodeKind::Commutator:
            return commutator(env.form(""), as_elem(eval(*ast.children[0], env), "comm"),
                              as_elem(eval(*ast.children[1], env), "comm"));
        case NodeKind::Theta:
        case NodeKind::ThetaW: {
            if (!env.fock_ctx)
                throw ConfigError("theta/thetaW need a configured Fock space");
            Elem e = as_elem(eval(*ast.children[0], env), "theta");
            return ast.kind == NodeKind::Theta ? fock::theta(*env.fock_ctx, e)
                                               : fock::theta_wick(*env.fock_ctx, e);
        }
        case NodeKind::Pi0:
            return project_pi(as_elem(eval(*ast.children[0], env), "pi0"));
    }
    throw InternalError("unhandled AST node kind");
}

/// True when the tree contains theta/thetaW (the CLI builds the Fock
/// context only when needed).
inline bool mentions_operators(const Ast& ast) {
    if (ast.kind == NodeKind::Theta || ast.kind == NodeKind::ThetaW) return true;
    for (const AstPtr& c : ast.children)
        if (mentions_operators(*c)) return true;
    return false;
}

}  // namespace starfield::expr
