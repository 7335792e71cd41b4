#pragma once

#include <string>

#include "stablecoh/abelian.hpp"

namespace stablecoh::burnside {

/****************************************************
 *              The Burnside ring A(Z2)
 ***************************************************/

/* a * [Z2] + b * [Z2/Z2]; the ring identity is the point [Z2/Z2]. */
struct BurnsideElement {
    long long a = 0;
    long long b = 0;

    friend bool operator==(const BurnsideElement&, const BurnsideElement&) = default;
};

inline BurnsideElement burnside_identity() { return {0, 1}; }
BurnsideElement burnside_add(BurnsideElement x, BurnsideElement y);
/* [Z2]*[Z2] = 2[Z2], [Z2]*[pt] = [Z2]. */
BurnsideElement burnside_mul(BurnsideElement x, BurnsideElement y);
std::string to_string(BurnsideElement x);  // e.g. "3[Z2] + 2[pt]"

/* The injective mark homomorphism (total degree, fixed-point degree). */
struct Marks {
    long long deg_total = 0;
    long long deg_fixed = 0;

    friend bool operator==(const Marks&, const Marks&) = default;
};

Marks marks(BurnsideElement x);
/* Inverse of marks; ParityViolation when deg_total and deg_fixed disagree
 * mod 2 (no equivariant map realizes such a degree pair). */
BurnsideElement from_degrees(long long deg_total, long long deg_fixed);
/* Restriction along Z2 < S1 sends n times the identity to n[pt]. */
BurnsideElement res_s1_to_z2(long long n);

/****************************************************
 *      Representation spheres and class descriptors
 ***************************************************/

/* R^trivial_dim + R~^twisted_dim (R~ the sign representation of Z2). */
struct RepDescriptor {
    int trivial_dim = 0;
    int twisted_dim = 0;

    friend bool operator==(const RepDescriptor&, const RepDescriptor&) = default;
};

RepDescriptor rep_sum(RepDescriptor x, RepDescriptor y);
std::string rep_to_string(RepDescriptor r);  // "R^2+R~^4", "0"

/* Symbolic stable class: representation data plus a label. The group it
 * lives in is derived, not computed. */
struct ClassDescriptor {
    RepDescriptor source;
    RepDescriptor target;
    std::string label;

    friend bool operator==(const ClassDescriptor&, const ClassDescriptor&) = default;
};

ClassDescriptor identity_class();
/* Componentwise sum of representation data; labels joined with a smash. */
ClassDescriptor smash(const ClassDescriptor& x, const ClassDescriptor& y);
ClassDescriptor restrict_s1_to_z2(ClassDescriptor x);  // label becomes Res(...)
/* "π^i_{Z₂,H}(*; R̃^d)" with i = target total dim - source trivial dim and
 * d the source twisted dim. */
std::string group_home(const ClassDescriptor& c);
std::string class_to_string(const ClassDescriptor& c);

}  // namespace stablecoh::burnside
