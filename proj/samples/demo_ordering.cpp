// Verifies both operator-ordering morphisms on a small Klein-Gordon setup
// and prints the guarded deviation reports.

#include <iostream>

#include "starfield/ordering.hpp"

using namespace starfield;
using Elem = AlgebraElement<Complex>;

int main() {
    kg::KGConfig cfg;  // m = 1, L = 2*pi, kmax = 1
    kg::ModeTable table = kg::ModeTable::standard(cfg);
    fock::FockContext ctx(table, /*ncap=*/8);

    auto sigma = kg::sigma_pairing_form(table);
    auto wick = kg::wick_pairing_form(table);

    Elem s0 = Elem::generator(table.space(), "s0");
    Elem c0 = Elem::generator(table.space(), "c0");
    Elem quad = sym_mul(s0, s0);

    std::cout << "theorem\tdegA\tdegB\tNcap\tmax_abs_dev\tguard_dim\n";
    for (const auto& [a, b] : {std::pair{s0, c0}, {quad, c0}, {quad, sym_mul(c0, c0)}}) {
        std::cout << verify_ordering_theorem(ctx, a, b, fock::OrderingKind::Hbar, sigma)
                         .to_tsv()
                  << "\n";
        std::cout << verify_ordering_theorem(ctx, a, b, fock::OrderingKind::Wick, wick)
                         .to_tsv()
                  << "\n";
    }
    return 0;
}
