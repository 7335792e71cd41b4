#pragma once

#include "stablecoh/abelian.hpp"

namespace stablecoh::rpcoh {

using abelian::AbelianGroup;

/* Coefficient groups are single cyclic factors (Z or Z_m); cohomology_rp
 * rejects anything else. */
using CoefficientGroup = AbelianGroup;
bool is_valid_coefficient(const CoefficientGroup& g);

/* H_p(RP^n; Z) from the cellular chain complex with boundary maps
 * alternating x0 and x2 (d_k = 1 + (-1)^k). */
AbelianGroup homology_rp(int n, int p);

/* H^p(RP^n; G) by universal coefficients: Hom(H_p, G) + Ext(H_{p-1}, G);
 * trivial outside 0 <= p <= n. */
AbelianGroup cohomology_rp(int n, int p, const CoefficientGroup& coeff);

/* Coefficient of Sq^i on the degree-j class of H^*(RP^n; Z_2):
 * binom(j, i) mod 2, forced to 0 when the target degree i+j exceeds n. */
struct SteenrodCoefficient {
    int i = 0;
    int j = 0;
    int value = 0;  // bit
};

SteenrodCoefficient sq(int i, int j, int n);

}  // namespace stablecoh::rpcoh
