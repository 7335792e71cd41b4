#include "stablecoh/rpcohomology.hpp"

namespace stablecoh::rpcoh {

using abelian::GroupHom;
using abelian::Int;
using abelian::IntMatrix;

bool is_valid_coefficient(const CoefficientGroup& g) {
    return g.factors().size() <= 1;
}

namespace {

// d_k: C_k -> C_{k-1} of the cellular chain complex of RP^n
GroupHom boundary(int n, int k) {
    AbelianGroup Z = AbelianGroup::cyclic(0);
    AbelianGroup src = (k >= 0 && k <= n) ? Z : AbelianGroup::trivial();
    AbelianGroup dst = (k - 1 >= 0 && k - 1 <= n) ? Z : AbelianGroup::trivial();
    IntMatrix m(dst.generator_count(), src.generator_count());
    if (m.rows == 1 && m.cols == 1 && k >= 1)
        m.at(0, 0) = 1 + (k % 2 == 0 ? 1 : -1);
    return GroupHom::make(src, dst, m);
}

}  // namespace

AbelianGroup homology_rp(int n, int p) {
    if (n < 1)
        throw std::invalid_argument("homology_rp: n >= 1 required");
    if (p < 0 || p > n)
        return AbelianGroup::trivial();
    return abelian::kernel_mod_image(boundary(n, p + 1), boundary(n, p));
}

AbelianGroup cohomology_rp(int n, int p, const CoefficientGroup& coeff) {
    if (n < 1)
        throw std::invalid_argument("cohomology_rp: n >= 1 required");
    if (!is_valid_coefficient(coeff))
        throw std::invalid_argument("cohomology_rp: coefficient group must be cyclic");
    if (p < 0 || p > n)
        return AbelianGroup::trivial();
    return abelian::direct_sum(abelian::hom_group(homology_rp(n, p), coeff),
                               p == 0 ? AbelianGroup::trivial()
                                      : abelian::ext_group(homology_rp(n, p - 1), coeff));
}

SteenrodCoefficient sq(int i, int j, int n) {
    if (i < 0 || j < 0)
        throw std::invalid_argument("sq: i, j >= 0 required");
    SteenrodCoefficient s{i, j, 0};
    if (i > j || i + j > n)
        return s;  // binom(j,i) = 0, or the target class vanishes
    s.value = ((i & j) == i) ? 1 : 0;  // Lucas: binom(j,i) odd iff bits of i lie in j
    return s;
}

}  // namespace stablecoh::rpcoh
