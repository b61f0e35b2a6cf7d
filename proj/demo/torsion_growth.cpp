// Torsion of E1 : y^2 = x^3 - x^2 + x and its twist over Q(sqrt D), |D| <= 30.

#include <apsq/ellcurve.hpp>

#include <iostream>

int main() {
    using namespace apsq;
    WeierstrassCurve E1(QuadElem(-1), QuadElem(1), QuadElem(0), "E1");
    for (const WeierstrassCurve& E : {E1, quadratic_twist(E1, -1)}) {
        std::cout << E.str() << "  over Q: " << compute_torsion(E, 0).structure() << "\n";
        for (long D = -30; D <= 30; ++D) {
            if (D == 0 || D == 1 || !is_squarefree_long(D)) continue;
            auto T = compute_torsion(E, D);
            if (T.points.size() == compute_torsion(E, 0).points.size()) continue;
            std::cout << "  D = " << D << ": " << T.structure() << "\n";
            for (auto& P : T.points) std::cout << "    " << P << "\n";
        }
    }
}
