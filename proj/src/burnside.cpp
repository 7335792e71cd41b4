#include "stablecoh/burnside.hpp"

#include <fmt/format.h>

namespace stablecoh::burnside {

BurnsideElement burnside_add(BurnsideElement x, BurnsideElement y) {
    return {x.a + y.a, x.b + y.b};
}

BurnsideElement burnside_mul(BurnsideElement x, BurnsideElement y) {
    // bilinear over [Z2]*[Z2] = 2[Z2], [Z2]*[pt] = [Z2], [pt]*[pt] = [pt]
    return {2 * x.a * y.a + x.a * y.b + y.a * x.b, x.b * y.b};
}

std::string to_string(BurnsideElement x) {
    if (x.a == 0 && x.b == 0)
        return "0";
    std::string s;
    if (x.a != 0)
        s += fmt::format("{}[Z2]", x.a);
    if (x.b != 0)
        s += fmt::format("{}{}[pt]", s.empty() ? "" : " + ", x.b);
    return s;
}

Marks marks(BurnsideElement x) {
    return {2 * x.a + x.b, x.b};
}

BurnsideElement from_degrees(long long deg_total, long long deg_fixed) {
    if (((deg_total - deg_fixed) % 2 + 2) % 2 != 0)
        throw DomainError("ParityViolation",
                          fmt::format("degree pair ({}, {}) disagrees mod 2", deg_total,
                                      deg_fixed));
    return {(deg_total - deg_fixed) / 2, deg_fixed};
}

BurnsideElement res_s1_to_z2(long long n) {
    return {0, n};
}

RepDescriptor rep_sum(RepDescriptor x, RepDescriptor y) {
    return {x.trivial_dim + y.trivial_dim, x.twisted_dim + y.twisted_dim};
}

std::string rep_to_string(RepDescriptor r) {
    if (r.trivial_dim == 0 && r.twisted_dim == 0)
        return "0";
    std::string s;
    if (r.trivial_dim > 0)
        s += r.trivial_dim == 1 ? "R" : fmt::format("R^{}", r.trivial_dim);
    if (r.twisted_dim > 0) {
        if (!s.empty())
            s += "+";
        s += r.twisted_dim == 1 ? "R~" : fmt::format("R~^{}", r.twisted_dim);
    }
    return s;
}

ClassDescriptor identity_class() {
    return ClassDescriptor{{0, 0}, {0, 0}, "id"};
}

ClassDescriptor smash(const ClassDescriptor& x, const ClassDescriptor& y) {
    ClassDescriptor out;
    out.source = rep_sum(x.source, y.source);
    out.target = rep_sum(x.target, y.target);
    out.label = x.label + " ∧ " + y.label;
    return out;
}

ClassDescriptor restrict_s1_to_z2(ClassDescriptor x) {
    x.label = "Res(" + x.label + ")";
    return x;
}

std::string group_home(const ClassDescriptor& c) {
    int i = c.target.trivial_dim + c.target.twisted_dim - c.source.trivial_dim;
    int d = c.source.twisted_dim - c.target.twisted_dim;
    return fmt::format("π^{}_{{Z₂,H}}(*; R̃^{})", i, d);
}

std::string class_to_string(const ClassDescriptor& c) {
    return fmt::format("{}: ({})+ -> ({})+", c.label, rep_to_string(c.source),
                       rep_to_string(c.target));
}

}  // namespace stablecoh::burnside
