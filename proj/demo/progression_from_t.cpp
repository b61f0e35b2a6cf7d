// Walk a few t values through the parametrization and print what comes out.

#include <apsq/progression.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace apsq;
    std::vector<std::string> ts = {"4", "2", "1/2", "1+sqrt(2)", "2+i", "3/2+1/2*sqrt(5)"};
    if (argc > 1) ts.assign(argv + 1, argv + argc);
    for (auto& s : ts) {
        QuadElem t = parse_quad(s);
        FiveTermAP ap = ap_from_t(t);
        APClass cls = normalize_ap(ap);
        std::cout << "t = " << t << "\n"
                  << "  terms " << ap.str() << "\n"
                  << "  class " << cls.canonical.str() << "\n"
                  << "  " << classify_t(t).str() << ", field " << proper_field_of_definition(ap).str() << "\n";
    }
}
