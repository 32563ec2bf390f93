#include "pqf/errors.hpp"
#include "pqf/exact.hpp"

namespace pqf {

namespace {

const char *inverse_of(const std::string &g) {
    if (g == "VX") {
        return "VXdg";
    }
    if (g == "VXdg") {
        return "VX";
    }
    if (g == "VY") {
        return "VYdg";
    }
    if (g == "VYdg") {
        return "VY";
    }
    if (g == "VZ") {
        return "VZdg";
    }
    return "VZ";
}

} // namespace

Circuit synth_v(const ExactUnitary &u) {
    if (u.m != RingOrder::M4) {
        throw PreconditionViolated("synth_v needs m = 4");
    }
    u.validate();
    static const char *gens[] = {"VX", "VXdg", "VY", "VYdg", "VZ", "VZdg"};
    ExactMatrix M = u.matrix().reduced();
    std::vector<std::string> steps;
    while (M.L > 0) {
        bool moved = false;
        for (const char *g : gens) {
            const ExactMatrix N = gate_matrix(Basis::V, g) * M;
            auto a = N.a.div_exact(5);
            auto b = N.b.div_exact(5);
            auto c = N.c.div_exact(5);
            auto d = N.d.div_exact(5);
            if (a && b && c && d) {
                M = ExactMatrix{RingOrder::M4, *a, *b, *c, *d, N.L - 2}.reduced();
                steps.emplace_back(g);
                moved = true;
                break;
            }
        }
        if (!moved) {
            throw InternalError("no V generator lowers the sqrt5 exponent");
        }
    }
    Circuit c = monomial_circuit(Basis::V, M);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        c.gates.emplace_back(inverse_of(*it));
    }
    if (c.cost() > u.L) {
        throw InternalError("V synthesis exceeded V-count L");
    }
    return c;
}

} // namespace pqf
