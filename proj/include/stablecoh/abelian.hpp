#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stablecoh {

/* Failure with a stable machine-readable code ("CompositionNonzero",
 * "IndexNotIntegral", ...). The CLI maps these to exit status 1. */
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace abelian {

using Int = std::int64_t;

/****************************************************
 *              Integer matrices
 ***************************************************/

struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Int> entries;  // row-major, rows*cols

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), entries(size_t(r) * size_t(c), 0) {}
    IntMatrix(int r, int c, std::vector<Int> e);

    static IntMatrix identity(int n);
    static IntMatrix diagonal(const std::vector<Int>& diag);

    Int& at(int i, int j) { return entries[size_t(i) * cols + j]; }
    Int at(int i, int j) const { return entries[size_t(i) * cols + j]; }

    IntMatrix transposed() const;
    std::vector<Int> column(int j) const;
    bool is_zero() const;
    std::string to_string() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
Int determinant(const IntMatrix& m);  // square matrices, fraction-free elimination

/****************************************************
 *              Smith normal form
 ***************************************************/

/* d = left * input * right with left/right unimodular and d diagonal,
 * diagonal entries nonnegative and forming a divisibility chain. */
struct SmithResult {
    IntMatrix d;
    IntMatrix left;
    IntMatrix right;
    std::vector<Int> invariants;  // diagonal of d, length min(rows, cols)
};

SmithResult smith_normal_form(const IntMatrix& m);

/****************************************************
 *        Finitely generated abelian groups
 ***************************************************/

/* Invariant-factor normal form: finite factors (each >= 2) in a divisibility
 * chain, followed by one 0 per infinite cyclic summand. Empty = trivial group.
 * Equality of groups is equality of factor lists. */
class AbelianGroup {
public:
    AbelianGroup() = default;
    explicit AbelianGroup(std::vector<Int> factors);  // validates normal form

    static AbelianGroup trivial() { return AbelianGroup(); }
    static AbelianGroup cyclic(Int n);  // n = 0 -> Z, n = 1 -> trivial, n >= 2 -> Z_n
    static AbelianGroup free(int rank);

    const std::vector<Int>& factors() const { return factors_; }
    int generator_count() const { return int(factors_.size()); }
    int rank() const;
    bool is_trivial() const { return factors_.empty(); }
    bool is_finite() const { return rank() == 0; }
    bool is_cyclic() const { return factors_.size() <= 1; }
    Int order() const;  // finite groups only
    std::string order_string() const;  // "8" or "infinite"
    std::string to_string() const;     // "0", "Z", "Z2", "Z2+Z4+Z"

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
    friend bool operator<(const AbelianGroup& a, const AbelianGroup& b) {
        return a.factors_ < b.factors_;
    }

private:
    std::vector<Int> factors_;
};

/* Normal form of a direct sum of cyclic groups; 0 = Z, 1s are dropped. */
AbelianGroup group_from_cyclics(const std::vector<Int>& orders);
/* Z^generators modulo the columns of `relations`. */
AbelianGroup group_from_presentation(int generators, const IntMatrix& relations);
AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

AbelianGroup hom_group(const AbelianGroup& a, const AbelianGroup& b);
AbelianGroup ext_group(const AbelianGroup& a, const AbelianGroup& b);

/****************************************************
 *              Homomorphisms
 ***************************************************/

/* Stored on the chosen cyclic generators: column j of `matrix` is the image
 * of source generator j in target generators. Construction validates shape
 * and well-definedness (order of generator kills its image) and reduces
 * entries modulo the finite target factors. */
class GroupHom {
public:
    static GroupHom make(AbelianGroup source, AbelianGroup target, IntMatrix matrix);
    static GroupHom zero(AbelianGroup source, AbelianGroup target);

    const AbelianGroup& source() const { return source_; }
    const AbelianGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }
    bool is_zero() const { return matrix_.is_zero(); }

    friend bool operator==(const GroupHom&, const GroupHom&) = default;

private:
    GroupHom() = default;
    AbelianGroup source_, target_;
    IntMatrix matrix_;
};

GroupHom compose(const GroupHom& outer, const GroupHom& inner);

AbelianGroup kernel_group(const GroupHom& f);
AbelianGroup image_group(const GroupHom& f);
AbelianGroup cokernel_group(const GroupHom& f);

/* ker(outgoing) / im(incoming); requires incoming.target == outgoing.source
 * and outgoing o incoming == 0 (error CompositionNonzero otherwise). */
AbelianGroup kernel_mod_image(const GroupHom& incoming, const GroupHom& outgoing);

/****************************************************
 *          Lattice helpers (exposed for tests)
 ***************************************************/

/* Staircase basis of the lattice spanned by the columns of `gens`:
 * basis column c has its topmost nonzero entry at pivot_rows[c], positive. */
struct LatticeBasis {
    IntMatrix basis;
    std::vector<int> pivot_rows;
};

LatticeBasis lattice_basis(const IntMatrix& gens);
/* Solve basis * z = v exactly; nullopt when v is not in the lattice. */
std::optional<std::vector<Int>> lattice_solve(const LatticeBasis& lb, const std::vector<Int>& v);
/* Invariant factors of (span a_gens)/(span b_gens); requires containment. */
AbelianGroup lattice_quotient(const IntMatrix& a_gens, const IntMatrix& b_gens);
/* Generators of {x : f(x) = 0 in target}, as a lattice in Z^{source gens}. */
IntMatrix kernel_lattice(const GroupHom& f);

}  // namespace abelian
}  // namespace stablecoh
