// Exact star products over an abstract 2-mode space: builds u and v, takes
// their star product against a hand-filled pairing, and shows the bracket
// falling out of the commutator.

#include <iostream>

#include "starfield/serialize.hpp"
#include "starfield/star.hpp"

using namespace starfield;
using GR = GaussianRational;
using Elem = AlgebraElement<GR>;

int main() {
    ModeSpacePtr space = make_mode_space({"u", "v"});
    Elem u = Elem::generator(space, "u");
    Elem v = Elem::generator(space, "v");

    PairingForm<GR> B(space, "demo");
    B.set(0, 1, GR::ratio(1, 2));   // B[u][v] = 1/2
    B.set(1, 0, GR::ratio(-1, 3));  // B[v][u] = -1/3

    Elem uv = star(B, u, v);
    std::cout << "u * v        = " << print_element(uv) << "\n";

    Elem uu_v = star(B, sym_mul(u, u), v);
    std::cout << "(u.u) * v    = " << print_element(uu_v) << "\n";

    Elem comm = commutator(B, u, v);
    std::cout << "[u, v]       = " << print_element(comm) << "\n";
    std::cout << "{u, v}       = " << print_element(poisson(B, u, v)) << "\n";

    std::cout << "pi(u * v)    = " << print_element(project_pi(uv)) << "\n";
    return 0;
}
