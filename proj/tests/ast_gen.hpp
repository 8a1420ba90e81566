#pragma once

// Shared test helper: seeded random ASTs for parser round-trip checks.

#include <string>
#include <vector>

#include "starfield/expr.hpp"
#include "starfield/testkit.hpp"

namespace starfield::testgen {

inline expr::AstPtr random_ast(testkit::RandomStream& rng, int depth,
                               const std::vector<std::string>& labels) {
    using expr::Ast;
    using expr::NodeKind;
    if (depth <= 0 || rng.below(5) == 0) {
        switch (rng.below(3)) {
            case 0: return Ast::mode(labels[rng.below(labels.size())]);
            case 1: {
                long long num = static_cast<long long>(rng.below(10));
                long long den = 1 + static_cast<long long>(rng.below(9));
                return Ast::number(BigRational(num, den));
            }
            default: return Ast::make(NodeKind::Hbar, {});
        }
    }
    auto sub = [&] { return random_ast(rng, depth - 1, labels); };
    switch (rng.below(9)) {
        case 0: return Ast::make(NodeKind::Add, {sub(), sub()});
        case 1: return Ast::make(NodeKind::Neg, {sub()});
        case 2: return Ast::make(NodeKind::SymMul, {sub(), sub()});
        case 3: return Ast::make(NodeKind::Star, {sub(), sub()}, "sigma");
        case 4: return Ast::make(NodeKind::Poisson, {sub(), sub()});
        case 5: return Ast::make(NodeKind::Commutator, {sub(), sub()});
        case 6: return Ast::make(NodeKind::Theta, {sub()});
        case 7: return Ast::make(NodeKind::ThetaW, {sub()});
        default: return Ast::make(NodeKind::Pi0, {sub()});
    }
}

}  // namespace starfield::testgen
