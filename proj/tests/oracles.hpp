#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "stablecoh/abelian.hpp"

namespace oracles {

using stablecoh::abelian::AbelianGroup;
using stablecoh::abelian::Int;
using stablecoh::abelian::IntMatrix;

/****************************************************
 *      Smith invariants via determinantal divisors
 ***************************************************/

namespace detail {

inline void combinations(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

inline Int minor_det(const IntMatrix& m, const std::vector<int>& ri, const std::vector<int>& ci) {
    int k = int(ri.size());
    IntMatrix sub(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            sub.at(i, j) = m.at(ri[i], ci[j]);
    return stablecoh::abelian::determinant(sub);
}

}  // namespace detail

// d_k = D_k / D_{k-1} with D_k the gcd of all k-by-k minors.
inline std::vector<Int> snf_invariants_by_minors(const IntMatrix& m) {
    int nmin = std::min(m.rows, m.cols);
    std::vector<Int> inv(size_t(nmin), 0);
    Int prev = 1;
    for (int k = 1; k <= nmin; ++k) {
        std::vector<std::vector<int>> rsets, csets;
        detail::combinations(m.rows, k, rsets);
        detail::combinations(m.cols, k, csets);
        Int g = 0;
        for (const auto& ri : rsets)
            for (const auto& ci : csets)
                g = std::gcd(g, detail::minor_det(m, ri, ci));
        if (g == 0)
            break;  // rank < k; remaining invariants are zero
        inv[size_t(k - 1)] = g / prev;
        prev = g;
    }
    return inv;
}

// Scramble with random elementary operations, diagonalize with a naive
// first-nonzero-pivot Euclidean sweep, then gcd/lcm-stabilize the diagonal.
inline std::vector<Int> snf_invariants_by_random_ops(const IntMatrix& m_in, std::mt19937& rng) {
    const int r = m_in.rows, c = m_in.cols;
    if (r == 0 || c == 0)
        return {};
    // work in 128-bit: the naive pivoting below has bad worst-case fill-in
    struct Wide {
        int rows, cols;
        std::vector<__int128> e;
        __int128& at(int i, int j) { return e[size_t(i) * cols + j]; }
        __int128 at(int i, int j) const { return e[size_t(i) * cols + j]; }
    };
    Wide m{r, c, std::vector<__int128>(size_t(r) * c)};
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            m.at(i, j) = m_in.at(i, j);
    auto i128_abs = [](__int128 x) { return x < 0 ? -x : x; };
    std::uniform_int_distribution<int> coin(0, 3), qdist(-2, 2);
    auto rowi = [&] { return int(rng() % unsigned(r)); };
    auto colj = [&] { return int(rng() % unsigned(c)); };
    for (int step = 0; step < 12; ++step) {
        switch (coin(rng)) {
        case 0: {
            int i1 = rowi(), i2 = rowi();
            Int q = qdist(rng);
            if (i1 != i2)
                for (int j = 0; j < c; ++j)
                    m.at(i1, j) += q * m.at(i2, j);
            break;
        }
        case 1: {
            int j1 = colj(), j2 = colj();
            Int q = qdist(rng);
            if (j1 != j2)
                for (int i = 0; i < r; ++i)
                    m.at(i, j1) += q * m.at(i, j2);
            break;
        }
        case 2: {
            int i1 = rowi(), i2 = rowi();
            for (int j = 0; j < c; ++j)
                std::swap(m.at(i1, j), m.at(i2, j));
            break;
        }
        default: {
            int i1 = rowi();
            for (int j = 0; j < c; ++j)
                m.at(i1, j) = -m.at(i1, j);
            break;
        }
        }
    }
    // naive diagonalization: first nonzero entry as pivot, remainders swapped
    // into the pivot slot (plain Euclid, no divisibility fixup)
    int nmin = std::min(r, c);
    auto swap_rows = [&](int i1, int i2) {
        if (i1 != i2)
            for (int j = 0; j < c; ++j)
                std::swap(m.at(i1, j), m.at(i2, j));
    };
    auto swap_cols = [&](int j1, int j2) {
        if (j1 != j2)
            for (int i = 0; i < r; ++i)
                std::swap(m.at(i, j1), m.at(i, j2));
    };
    for (int t = 0; t < nmin; ++t) {
        int pi = -1, pj = -1;
        for (int i = t; i < r && pi < 0; ++i)
            for (int j = t; j < c; ++j)
                if (m.at(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0)
            break;
        swap_rows(t, pi);
        swap_cols(t, pj);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < r; ++i) {
                if (m.at(i, t) == 0)
                    continue;
                __int128 q = m.at(i, t) / m.at(t, t);
                for (int j = 0; j < c; ++j)
                    m.at(i, j) -= q * m.at(t, j);
                if (m.at(i, t) != 0) {
                    swap_rows(t, i);
                    dirty = true;
                }
            }
            for (int j = t + 1; j < c; ++j) {
                if (m.at(t, j) == 0)
                    continue;
                __int128 q = m.at(t, j) / m.at(t, t);
                for (int i = 0; i < r; ++i)
                    m.at(i, j) -= q * m.at(i, t);
                if (m.at(t, j) != 0) {
                    swap_cols(t, j);
                    dirty = true;
                }
            }
        }
    }
    std::vector<Int> diag(size_t(nmin), 0);
    for (int t = 0; t < nmin; ++t) {
        __int128 a = i128_abs(m.at(t, t));
        if (a > INT64_MAX)
            throw std::overflow_error("snf_invariants_by_random_ops: entry overflow");
        diag[size_t(t)] = Int(a);
    }
    // stabilize into a divisibility chain
    for (bool stable = false; !stable;) {
        stable = true;
        for (int i = 0; i + 1 < nmin; ++i) {
            Int a = diag[size_t(i)], b = diag[size_t(i + 1)];
            if (a == 0 && b != 0) {
                std::swap(diag[size_t(i)], diag[size_t(i + 1)]);
                stable = false;
            } else if (a != 0 && b % a != 0) {
                Int g = std::gcd(a, b);
                diag[size_t(i)] = g;
                diag[size_t(i + 1)] = a / g * b;
                stable = false;
            }
        }
    }
    return diag;
}

/****************************************************
 *      Element enumeration for finite groups
 ***************************************************/

inline std::vector<std::vector<Int>> elements_of(const AbelianGroup& g) {
    for (Int f : g.factors())
        if (f == 0)
            throw std::logic_error("elements_of: infinite group");
    std::vector<std::vector<Int>> out;
    std::vector<Int> x(g.factors().size(), 0);
    for (;;) {
        out.push_back(x);
        size_t i = 0;
        while (i < x.size()) {
            if (++x[i] < g.factors()[i])
                break;
            x[i] = 0;
            ++i;
        }
        if (i == x.size())
            break;
        if (x.empty())
            break;
    }
    return out;
}

inline Int element_order(const AbelianGroup& g, const std::vector<Int>& x) {
    Int ord = 1;
    for (size_t i = 0; i < x.size(); ++i) {
        Int f = g.factors()[i];
        Int o = f / std::gcd(f, x[i] == 0 ? f : x[i]);
        ord = std::lcm(ord, o);
    }
    return ord;
}

inline std::multiset<Int> order_multiset(const AbelianGroup& g) {
    std::multiset<Int> out;
    for (const auto& x : elements_of(g))
        out.insert(element_order(g, x));
    return out;
}

/****************************************************
 *      Hom / Ext by enumeration (finite cyclic)
 ***************************************************/

inline AbelianGroup hom_cyclic_by_enumeration(Int m, Int n) {
    // maps Z_m -> Z_n: generator goes to t with m*t = 0 mod n
    Int count = 0;
    for (Int t = 0; t < n; ++t)
        if ((m * t) % n == 0)
            ++count;
    return AbelianGroup::cyclic(count);  // subgroup of a cyclic group is cyclic
}

inline AbelianGroup ext_cyclic_by_enumeration(Int m, Int n) {
    // Ext(Z_m, Z_n) = Z_n / mZ_n, counted through the image subgroup
    std::set<Int> image;
    for (Int t = 0; t < n; ++t)
        image.insert((m * t) % n);
    return AbelianGroup::cyclic(n / Int(image.size()));
}

/****************************************************
 *      ker/im by enumeration (finite groups)
 ***************************************************/

struct KerImEnumeration {
    Int kernel_size = 0;
    Int image_size = 0;
    std::multiset<Int> quotient_orders;  // element orders of ker(outgoing)/im(incoming)
};

inline KerImEnumeration enumerate_kernel_mod_image(const stablecoh::abelian::GroupHom& incoming,
                                                   const stablecoh::abelian::GroupHom& outgoing) {
    const AbelianGroup& b = outgoing.source();
    const AbelianGroup& c = outgoing.target();
    auto apply = [](const stablecoh::abelian::GroupHom& h, const std::vector<Int>& x) {
        const auto& tf = h.target().factors();
        std::vector<Int> y(tf.size(), 0);
        for (size_t i = 0; i < tf.size(); ++i) {
            Int acc = 0;
            for (size_t j = 0; j < x.size(); ++j)
                acc += h.matrix().at(int(i), int(j)) * x[j];
            y[i] = ((acc % tf[i]) + tf[i]) % tf[i];
        }
        return y;
    };
    auto add_mod = [&](const std::vector<Int>& x, const std::vector<Int>& y) {
        std::vector<Int> z(x.size());
        for (size_t i = 0; i < x.size(); ++i)
            z[i] = (x[i] + y[i]) % b.factors()[i];
        return z;
    };

    std::vector<std::vector<Int>> kernel;
    const std::vector<Int> zero_c(c.factors().size(), 0);
    for (const auto& x : elements_of(b))
        if (apply(outgoing, x) == zero_c)
            kernel.push_back(x);

    std::set<std::vector<Int>> image;
    for (const auto& a : elements_of(incoming.source()))
        image.insert(apply(incoming, a));

    KerImEnumeration res;
    res.kernel_size = Int(kernel.size());
    res.image_size = Int(image.size());

    std::set<std::vector<Int>> seen_reps;
    for (const auto& x : kernel) {
        // canonical coset representative: lexicographically smallest element
        std::vector<Int> rep = x;
        for (const auto& i : image)
            rep = std::min(rep, add_mod(x, i));
        if (!seen_reps.insert(rep).second)
            continue;
        // order of the coset [x]: least k >= 1 with k*x in the image
        std::vector<Int> acc(x.size(), 0);
        Int k = 0;
        do {
            acc = add_mod(acc, x);
            ++k;
        } while (!image.count(acc));
        res.quotient_orders.insert(k);
    }
    return res;
}

/****************************************************
 *      Burnside products by orbit counting
 ***************************************************/

// A finite Z2-set: points 0..n-1 with an involution.
struct Z2Set {
    std::vector<int> involution;
    static Z2Set free_orbit() { return {{1, 0}}; }
    static Z2Set point() { return {{0}}; }
};

inline Z2Set product(const Z2Set& a, const Z2Set& b) {
    int na = int(a.involution.size()), nb = int(b.involution.size());
    Z2Set p;
    p.involution.resize(size_t(na) * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            p.involution[size_t(i) * nb + j] = a.involution[size_t(i)] * nb + b.involution[size_t(j)];
    return p;
}

// orbit decomposition -> (free orbit count, fixed point count)
inline std::pair<Int, Int> count_orbits(const Z2Set& s) {
    Int free_orbits = 0, fixed = 0;
    std::vector<bool> seen(s.involution.size(), false);
    for (size_t i = 0; i < s.involution.size(); ++i) {
        if (seen[i])
            continue;
        seen[i] = true;
        int j = s.involution[i];
        if (j == int(i)) {
            ++fixed;
        } else {
            seen[size_t(j)] = true;
            ++free_orbits;
        }
    }
    return {free_orbits, fixed};
}

}  // namespace oracles
