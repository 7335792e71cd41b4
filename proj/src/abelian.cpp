#include "stablecoh/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace stablecoh::abelian {

/****************************************************
 *              IntMatrix
 ***************************************************/

IntMatrix::IntMatrix(int r, int c, std::vector<Int> e) : rows(r), cols(c), entries(std::move(e)) {
    if (entries.size() != size_t(r) * size_t(c))
        throw std::invalid_argument("IntMatrix: entries.size() != rows*cols");
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Int>& diag) {
    IntMatrix m(int(diag.size()), int(diag.size()));
    for (int i = 0; i < int(diag.size()); ++i)
        m.at(i, i) = diag[i];
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

std::vector<Int> IntMatrix::column(int j) const {
    std::vector<Int> v(rows);
    for (int i = 0; i < rows; ++i)
        v[i] = at(i, j);
    return v;
}

bool IntMatrix::is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](Int x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows; ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < cols; ++j)
            os << (j ? "," : "") << at(i, j);
    }
    os << "]";
    return os.str();
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols != b.rows)
        throw std::invalid_argument("mat_mul: dimension mismatch");
    IntMatrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            Int aik = a.at(i, k);
            if (aik == 0)
                continue;
            for (int j = 0; j < b.cols; ++j)
                c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

// Bareiss fraction-free elimination, 128-bit intermediates.
Int determinant(const IntMatrix& m) {
    if (m.rows != m.cols)
        throw std::invalid_argument("determinant: matrix not square");
    int n = m.rows;
    if (n == 0)
        return 1;
    std::vector<__int128> a(m.entries.begin(), m.entries.end());
    auto at = [&](int i, int j) -> __int128& { return a[size_t(i) * n + j]; };
    __int128 sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (at(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            if (swap_row < 0)
                return 0;
            for (int j = 0; j < n; ++j)
                std::swap(at(k, j), at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    __int128 det = sign * at(n - 1, n - 1);
    if (det > INT64_MAX || det < INT64_MIN)
        throw std::overflow_error("determinant: result exceeds 64 bits");
    return Int(det);
}

/****************************************************
 *              Smith normal form
 ***************************************************/

namespace {

// rounded-to-nearest quotient; keeps Euclidean remainders balanced, which
// keeps the tracked transforms from blowing up
Int div_round(Int a, Int b) {
    Int q = a / b, rem = a % b;
    if (std::abs(rem) * 2 > std::abs(b))
        q += ((rem > 0) == (b > 0)) ? 1 : -1;
    return q;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& input) {
    const int r = input.rows, c = input.cols;
    SmithResult res{input, IntMatrix::identity(r), IntMatrix::identity(c), {}};
    IntMatrix& d = res.d;
    IntMatrix& u = res.left;
    IntMatrix& v = res.right;

    auto row_add = [&](int dst, int src, Int q) {  // row dst += q * row src
        for (int j = 0; j < c; ++j)
            d.at(dst, j) += q * d.at(src, j);
        for (int j = 0; j < r; ++j)
            u.at(dst, j) += q * u.at(src, j);
    };
    auto col_add = [&](int dst, int src, Int q) {
        for (int i = 0; i < r; ++i)
            d.at(i, dst) += q * d.at(i, src);
        for (int i = 0; i < c; ++i)
            v.at(i, dst) += q * v.at(i, src);
    };
    auto row_swap = [&](int i1, int i2) {
        if (i1 == i2)
            return;
        for (int j = 0; j < c; ++j)
            std::swap(d.at(i1, j), d.at(i2, j));
        for (int j = 0; j < r; ++j)
            std::swap(u.at(i1, j), u.at(i2, j));
    };
    auto col_swap = [&](int j1, int j2) {
        if (j1 == j2)
            return;
        for (int i = 0; i < r; ++i)
            std::swap(d.at(i, j1), d.at(i, j2));
        for (int i = 0; i < c; ++i)
            std::swap(v.at(i, j1), v.at(i, j2));
    };
    auto row_negate = [&](int i) {
        for (int j = 0; j < c; ++j)
            d.at(i, j) = -d.at(i, j);
        for (int j = 0; j < r; ++j)
            u.at(i, j) = -u.at(i, j);
    };

    const int nmin = std::min(r, c);
    for (int t = 0; t < nmin; ++t) {
        // smallest-magnitude nonzero pivot of the trailing submatrix
        int pi = -1, pj = -1;
        for (int i = t; i < r; ++i)
            for (int j = t; j < c; ++j) {
                Int x = d.at(i, j);
                if (x != 0 && (pi < 0 || std::abs(x) < std::abs(d.at(pi, pj)))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0)
            break;  // trailing submatrix is zero
        row_swap(t, pi);
        col_swap(t, pj);

        for (;;) {
            // clear column and row t; a nonzero remainder becomes the new,
            // strictly smaller pivot, so this terminates
            bool dirty = true;
            while (dirty) {
                dirty = false;
                for (int i = t + 1; i < r; ++i) {
                    if (d.at(i, t) == 0)
                        continue;
                    row_add(i, t, -div_round(d.at(i, t), d.at(t, t)));
                    if (d.at(i, t) != 0) {
                        row_swap(t, i);
                        dirty = true;
                    }
                }
                for (int j = t + 1; j < c; ++j) {
                    if (d.at(t, j) == 0)
                        continue;
                    col_add(j, t, -div_round(d.at(t, j), d.at(t, t)));
                    if (d.at(t, j) != 0) {
                        col_swap(t, j);
                        dirty = true;
                    }
                }
            }
            // divisibility: pivot must divide the whole trailing submatrix
            int bi = -1, bj = -1;
            for (int i = t + 1; i < r && bi < 0; ++i)
                for (int j = t + 1; j < c; ++j)
                    if (d.at(i, j) % d.at(t, t) != 0) {
                        bi = i;
                        bj = j;
                        break;
                    }
            if (bi < 0)
                break;
            row_add(t, bi, 1);  // pull the offending row up, re-clear
        }
        if (d.at(t, t) < 0)
            row_negate(t);
    }

    res.invariants.reserve(nmin);
    for (int t = 0; t < nmin; ++t)
        res.invariants.push_back(d.at(t, t));
    return res;
}

/****************************************************
 *              AbelianGroup
 ***************************************************/

AbelianGroup::AbelianGroup(std::vector<Int> factors) : factors_(std::move(factors)) {
    size_t i = 0;
    for (; i < factors_.size() && factors_[i] != 0; ++i) {
        if (factors_[i] < 2)
            throw std::invalid_argument("AbelianGroup: finite factors must be >= 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw std::invalid_argument("AbelianGroup: factors must form a divisibility chain");
    }
    for (; i < factors_.size(); ++i)
        if (factors_[i] != 0)
            throw std::invalid_argument("AbelianGroup: free factors must come last");
}

AbelianGroup AbelianGroup::cyclic(Int n) {
    if (n < 0)
        throw std::invalid_argument("AbelianGroup::cyclic: negative order");
    if (n == 1)
        return AbelianGroup();
    return AbelianGroup({n});
}

AbelianGroup AbelianGroup::free(int rank) {
    return AbelianGroup(std::vector<Int>(size_t(rank), 0));
}

int AbelianGroup::rank() const {
    return int(std::count(factors_.begin(), factors_.end(), Int(0)));
}

Int AbelianGroup::order() const {
    if (!is_finite())
        throw std::logic_error("AbelianGroup::order: group is infinite");
    Int n = 1;
    for (Int f : factors_)
        n *= f;
    return n;
}

std::string AbelianGroup::order_string() const {
    return is_finite() ? std::to_string(order()) : "infinite";
}

std::string AbelianGroup::to_string() const {
    if (factors_.empty())
        return "0";
    std::string s;
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i)
            s += "+";
        s += factors_[i] == 0 ? "Z" : "Z" + std::to_string(factors_[i]);
    }
    return s;
}

AbelianGroup group_from_cyclics(const std::vector<Int>& orders) {
    int rank = 0;
    std::vector<Int> finite;
    for (Int n : orders) {
        if (n < 0)
            throw std::invalid_argument("group_from_cyclics: negative order");
        if (n == 0)
            ++rank;
        else if (n >= 2)
            finite.push_back(n);
    }
    // combine the finite part into a divisibility chain
    std::vector<Int> chain;
    if (!finite.empty()) {
        auto snf = smith_normal_form(IntMatrix::diagonal(finite));
        for (Int x : snf.invariants)
            if (x >= 2)
                chain.push_back(x);
    }
    for (int i = 0; i < rank; ++i)
        chain.push_back(0);
    return AbelianGroup(chain);
}

AbelianGroup group_from_presentation(int generators, const IntMatrix& relations) {
    if (relations.rows != generators)
        throw std::invalid_argument("group_from_presentation: relation rows != generators");
    auto snf = smith_normal_form(relations);
    std::vector<Int> factors;
    int nonzero = 0;
    for (Int x : snf.invariants)
        if (x != 0) {
            ++nonzero;
            if (x >= 2)
                factors.push_back(x);
        }
    for (int i = 0; i < generators - nonzero; ++i)
        factors.push_back(0);
    return AbelianGroup(factors);
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> all = a.factors();
    all.insert(all.end(), b.factors().begin(), b.factors().end());
    return group_from_cyclics(all);
}

AbelianGroup hom_group(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> pieces;
    for (Int s : a.factors())
        for (Int t : b.factors()) {
            if (s == 0)
                pieces.push_back(t);  // Hom(Z, Z_t) = Z_t, Hom(Z, Z) = Z
            else if (t != 0)
                pieces.push_back(std::gcd(s, t));  // Hom(Z_s, Z) = 0 is skipped
        }
    return group_from_cyclics(pieces);
}

AbelianGroup ext_group(const AbelianGroup& a, const AbelianGroup& b) {
    std::vector<Int> pieces;
    for (Int s : a.factors()) {
        if (s == 0)
            continue;  // Ext(Z, -) = 0
        for (Int t : b.factors())
            pieces.push_back(t == 0 ? s : std::gcd(s, t));  // Ext(Z_s, B) = B/sB
    }
    return group_from_cyclics(pieces);
}

/****************************************************
 *              GroupHom
 ***************************************************/

GroupHom GroupHom::make(AbelianGroup source, AbelianGroup target, IntMatrix matrix) {
    if (matrix.rows != target.generator_count() || matrix.cols != source.generator_count())
        throw std::invalid_argument("GroupHom: matrix shape does not match generator counts");
    const auto& sf = source.factors();
    const auto& tf = target.factors();
    // canonical representatives mod the finite target factors
    for (int i = 0; i < matrix.rows; ++i) {
        if (tf[i] == 0)
            continue;
        for (int j = 0; j < matrix.cols; ++j) {
            Int m = matrix.at(i, j) % tf[i];
            matrix.at(i, j) = m < 0 ? m + tf[i] : m;
        }
    }
    // well-definedness: the order of each source generator kills its image
    for (int j = 0; j < matrix.cols; ++j) {
        Int s = sf[j];
        if (s == 0)
            continue;
        for (int i = 0; i < matrix.rows; ++i) {
            Int x = s * matrix.at(i, j);
            bool ok = tf[i] == 0 ? x == 0 : x % tf[i] == 0;
            if (!ok)
                throw DomainError("IllDefinedHom",
                                  "generator " + std::to_string(j) + " of order " +
                                      std::to_string(s) + " maps to an element it does not kill");
        }
    }
    GroupHom h;
    h.source_ = std::move(source);
    h.target_ = std::move(target);
    h.matrix_ = std::move(matrix);
    return h;
}

GroupHom GroupHom::zero(AbelianGroup source, AbelianGroup target) {
    IntMatrix m(target.generator_count(), source.generator_count());
    return make(std::move(source), std::move(target), std::move(m));
}

GroupHom compose(const GroupHom& outer, const GroupHom& inner) {
    if (inner.target() != outer.source())
        throw std::invalid_argument("compose: inner.target != outer.source");
    return GroupHom::make(inner.source(), outer.target(), mat_mul(outer.matrix(), inner.matrix()));
}

/****************************************************
 *              Lattice arithmetic
 ***************************************************/

LatticeBasis lattice_basis(const IntMatrix& gens) {
    IntMatrix h = gens;
    const int n = h.rows, m = h.cols;
    std::vector<int> pivots;
    int lead = 0;
    for (int row = 0; row < n && lead < m; ++row) {
        // gcd-sweep the row down to a single nonzero column at `lead`
        for (;;) {
            int best = -1;
            for (int j = lead; j < m; ++j)
                if (h.at(row, j) != 0 &&
                    (best < 0 || std::abs(h.at(row, j)) < std::abs(h.at(row, best))))
                    best = j;
            if (best < 0)
                break;
            if (best != lead)
                for (int i = 0; i < n; ++i)
                    std::swap(h.at(i, best), h.at(i, lead));
            bool clean = true;
            for (int j = lead + 1; j < m; ++j) {
                if (h.at(row, j) == 0)
                    continue;
                Int q = h.at(row, j) / h.at(row, lead);
                for (int i = 0; i < n; ++i)
                    h.at(i, j) -= q * h.at(i, lead);
                if (h.at(row, j) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (h.at(row, lead) != 0) {
            if (h.at(row, lead) < 0)
                for (int i = 0; i < n; ++i)
                    h.at(i, lead) = -h.at(i, lead);
            pivots.push_back(row);
            ++lead;
        }
    }
    IntMatrix basis(n, lead);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < lead; ++j)
            basis.at(i, j) = h.at(i, j);
    return LatticeBasis{std::move(basis), std::move(pivots)};
}

std::optional<std::vector<Int>> lattice_solve(const LatticeBasis& lb, const std::vector<Int>& v) {
    const IntMatrix& b = lb.basis;
    if (int(v.size()) != b.rows)
        throw std::invalid_argument("lattice_solve: vector length != lattice dimension");
    std::vector<Int> residue = v;
    std::vector<Int> z(size_t(b.cols), 0);
    for (int c = 0; c < b.cols; ++c) {
        int pr = lb.pivot_rows[c];
        Int num = residue[pr], den = b.at(pr, c);
        if (num % den != 0)
            return std::nullopt;
        z[c] = num / den;
        if (z[c] != 0)
            for (int i = 0; i < b.rows; ++i)
                residue[i] -= z[c] * b.at(i, c);
    }
    for (Int x : residue)
        if (x != 0)
            return std::nullopt;
    return z;
}

AbelianGroup lattice_quotient(const IntMatrix& a_gens, const IntMatrix& b_gens) {
    if (a_gens.rows != b_gens.rows)
        throw std::invalid_argument("lattice_quotient: ambient dimensions differ");
    LatticeBasis lb = lattice_basis(a_gens);
    IntMatrix rel(lb.basis.cols, b_gens.cols);
    for (int j = 0; j < b_gens.cols; ++j) {
        auto z = lattice_solve(lb, b_gens.column(j));
        if (!z)
            throw std::logic_error("lattice_quotient: second lattice not contained in first");
        for (int i = 0; i < rel.rows; ++i)
            rel.at(i, j) = (*z)[i];
    }
    return group_from_presentation(lb.basis.cols, rel);
}

namespace {

IntMatrix relations_of(const AbelianGroup& g) {
    return IntMatrix::diagonal(g.factors());
}

// columns of a, then columns of b
IntMatrix concat_cols(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows != b.rows)
        throw std::invalid_argument("concat_cols: row mismatch");
    IntMatrix m(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j)
            m.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j)
            m.at(i, a.cols + j) = b.at(i, j);
    }
    return m;
}

bool lies_in_relation_lattice(const AbelianGroup& g, const IntMatrix& m, int col) {
    for (int i = 0; i < m.rows; ++i) {
        Int f = g.factors()[i];
        Int x = m.at(i, col);
        if (f == 0 ? x != 0 : x % f != 0)
            return false;
    }
    return true;
}

}  // namespace

IntMatrix kernel_lattice(const GroupHom& f) {
    const int n = f.source().generator_count();
    const int m = f.target().generator_count();
    // x is in the kernel iff f(x) lies in the relation lattice of the target:
    // solve [F | diag(target)] (x, y)^T = 0 and project onto x
    IntMatrix stacked = concat_cols(f.matrix(), relations_of(f.target()));
    auto snf = smith_normal_form(stacked);
    int rankd = 0;
    for (Int x : snf.invariants)
        if (x != 0)
            ++rankd;
    const int kdim = (n + m) - rankd;
    IntMatrix gens(n, kdim);
    for (int j = 0; j < kdim; ++j)
        for (int i = 0; i < n; ++i)
            gens.at(i, j) = snf.right.at(i, rankd + j);
    return gens;
}

AbelianGroup kernel_group(const GroupHom& f) {
    return lattice_quotient(kernel_lattice(f), relations_of(f.source()));
}

AbelianGroup image_group(const GroupHom& f) {
    IntMatrix rel = relations_of(f.target());
    return lattice_quotient(concat_cols(f.matrix(), rel), rel);
}

AbelianGroup cokernel_group(const GroupHom& f) {
    return group_from_presentation(f.target().generator_count(),
                                   concat_cols(f.matrix(), relations_of(f.target())));
}

AbelianGroup kernel_mod_image(const GroupHom& incoming, const GroupHom& outgoing) {
    if (incoming.target() != outgoing.source())
        throw std::invalid_argument("kernel_mod_image: incoming.target != outgoing.source");
    IntMatrix comp = mat_mul(outgoing.matrix(), incoming.matrix());
    for (int j = 0; j < comp.cols; ++j)
        if (!lies_in_relation_lattice(outgoing.target(), comp, j))
            throw DomainError("CompositionNonzero",
                              "outgoing o incoming is not the zero homomorphism");
    IntMatrix ker = kernel_lattice(outgoing);
    IntMatrix sub = concat_cols(incoming.matrix(), relations_of(incoming.target()));
    return lattice_quotient(ker, sub);
}

}  // namespace stablecoh::abelian
