#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "weilres/core/int_matrix.hpp"

namespace weilres {

/// Finitely generated abelian group Z/d_1 + ... + Z/d_t + Z^r with d_1 | d_2 | ... and d_i > 1.
/// Elements are coordinate vectors, torsion coordinates first, kept reduced into [0, d_i).
struct AbelianGroup {
    std::vector<Int> torsion;
    int free_rank = 0;

    int dim() const { return static_cast<int>(torsion.size()) + free_rank; }
    int torsion_count() const { return static_cast<int>(torsion.size()); }

    IntVec reduce(IntVec x) const {
        if (static_cast<int>(x.size()) != dim()) throw ComputeError("abelian group coordinate length mismatch");
        for (size_t i = 0; i < torsion.size(); ++i) x[i] = checked::mod(x[i], torsion[i]);
        return x;
    }

    IntVec zero() const { return IntVec(dim(), 0); }
    bool is_zero(const IntVec& x) const { return weilres::is_zero(reduce(x)); }
    bool equal(const IntVec& a, const IntVec& b) const { return reduce(sub(a, b)) == zero(); }

    /// Column generators of the relation subgroup inside Z^dim.
    IntMatrix relation_columns() const {
        IntMatrix r(dim(), torsion_count());
        for (int i = 0; i < torsion_count(); ++i) r(i, i) = torsion[i];
        return r;
    }

    std::string describe() const {
        std::ostringstream os;
        bool first = true;
        if (free_rank > 0) {
            os << "Z";
            if (free_rank > 1) os << "^" << free_rank;
            first = false;
        }
        for (Int d : torsion) {
            os << (first ? "" : " + ") << "Z/" << d;
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Presentation of Z^n / (column span of relations) as an AbelianGroup.
struct Quotient {
    int source_dim = 0;
    AbelianGroup group;
    IntMatrix proj; // group.dim() x source_dim
    IntMatrix lift; // source_dim x group.dim()

    IntVec project(std::span<const Int> x) const { return group.reduce(proj.apply(x)); }
    IntVec lift_of(std::span<const Int> c) const { return lift.apply(c); }

    /// Matrix of an endomorphism of Z^n that preserves the relations, in quotient coordinates.
    IntMatrix induced(const IntMatrix& g) const { return proj * g * lift; }
};

inline Quotient quotient(int n, const IntMatrix& relations) {
    if (relations.rows() != n) throw ComputeError("relation matrix row count mismatch");
    Quotient q;
    q.source_dim = n;
    if (relations.cols() == 0) {
        q.group.free_rank = n;
        q.proj = IntMatrix::identity(n);
        q.lift = IntMatrix::identity(n);
        return q;
    }
    SmithForm s = smith_normal_form(relations);
    std::vector<int> keep;
    for (int i = 0; i < n; ++i) {
        Int d = i < s.rank ? s.diagonal[i] : 0;
        if (d == 1) continue;
        keep.push_back(i);
        if (d > 1)
            q.group.torsion.push_back(d);
        else
            ++q.group.free_rank;
    }
    q.proj = s.U.select_rows(keep);
    q.lift = s.Uinv.select_cols(keep);
    return q;
}

/// Z^n modulo the span of x - g x over the given generators.
inline Quotient coinvariants(int n, const std::vector<IntMatrix>& generators) {
    std::vector<IntVec> cols;
    const IntMatrix id = IntMatrix::identity(n);
    for (const auto& g : generators) {
        if (g.rows() != n || g.cols() != n) throw ValidationError("action matrix has wrong size");
        IntMatrix d = id - g;
        for (int j = 0; j < n; ++j) {
            IntVec c = d.col(j);
            if (!weilres::is_zero(c)) cols.push_back(std::move(c));
        }
    }
    return quotient(n, IntMatrix::from_columns(cols, n));
}

/// A subgroup S of an AbelianGroup A, with its own presentation.
struct Subgroup {
    AbelianGroup parent;
    AbelianGroup group;
    IntMatrix embed;   // parent.dim() x group.dim()
    IntMatrix basis;   // parent.dim() x s: Z-basis of the preimage of S in Z^{parent.dim()}
    Quotient presentation; // Z^s / (parent relations expressed in basis)

    IntVec to_parent(std::span<const Int> c) const { return parent.reduce(embed.apply(c)); }

    std::optional<IntVec> coords_of(std::span<const Int> a) const {
        IntMatrix m = IntMatrix::hcat(basis, parent.relation_columns());
        auto sol = solve_integer(m, a);
        if (!sol) return std::nullopt;
        IntVec c(sol->begin(), sol->begin() + basis.cols());
        return presentation.project(c);
    }
};

/// {x in A : M x = 0 in B} where M is given on coordinates and respects the relations.
inline Subgroup kernel_subgroup(const AbelianGroup& A, const IntMatrix& M, const AbelianGroup& B) {
    const int k = A.dim();
    if (M.cols() != k || M.rows() != B.dim()) throw ComputeError("kernel_subgroup dimension mismatch");
    Subgroup sub;
    sub.parent = A;
    IntMatrix rb = B.relation_columns();
    IntMatrix neg_rb(rb.rows(), rb.cols());
    for (int i = 0; i < rb.rows(); ++i)
        for (int j = 0; j < rb.cols(); ++j) neg_rb(i, j) = -rb(i, j);
    IntMatrix big = IntMatrix::hcat(M, neg_rb);
    IntMatrix ker = big.rows() == 0 ? IntMatrix::identity(big.cols()) : kernel_basis(big);
    std::vector<int> top(k);
    for (int i = 0; i < k; ++i) top[i] = i;
    IntMatrix gens = ker.select_rows(top);

    // Z-basis of the column span of gens
    SmithForm s = smith_normal_form(gens);
    IntMatrix basis(k, s.rank);
    for (int j = 0; j < s.rank; ++j)
        for (int i = 0; i < k; ++i) basis(i, j) = checked::mul(s.Uinv(i, j), s.diagonal[j]);
    sub.basis = basis;

    // parent torsion relations in that basis
    std::vector<IntVec> rel;
    for (int j = 0; j < A.torsion_count(); ++j) {
        IntVec target(k, 0);
        target[j] = A.torsion[j];
        auto c = solve_integer(basis, target);
        if (!c) throw ComputeError("kernel subgroup does not contain parent relations");
        rel.push_back(*c);
    }
    sub.presentation = quotient(s.rank, IntMatrix::from_columns(rel, s.rank));
    sub.group = sub.presentation.group;
    sub.embed = basis * sub.presentation.lift;
    return sub;
}

/// Fixed points of a family of automorphisms of A given on coordinates.
inline Subgroup invariants(const AbelianGroup& A, const std::vector<IntMatrix>& maps) {
    const int k = A.dim();
    std::vector<IntVec> rows;
    for (const auto& g : maps) {
        IntMatrix d = g - IntMatrix::identity(k);
        for (int i = 0; i < k; ++i) rows.push_back(d.row(i));
    }
    // target is a product of copies of A; reorder so torsion coordinates come first.
    const int copies = static_cast<int>(maps.size());
    std::vector<IntVec> ordered;
    AbelianGroup Bo;
    for (int c = 0; c < copies; ++c)
        for (int i = 0; i < A.torsion_count(); ++i) {
            ordered.push_back(rows[static_cast<size_t>(c) * k + i]);
            Bo.torsion.push_back(A.torsion[i]);
        }
    for (int c = 0; c < copies; ++c)
        for (int i = A.torsion_count(); i < k; ++i) {
            ordered.push_back(rows[static_cast<size_t>(c) * k + i]);
            ++Bo.free_rank;
        }
    IntMatrix M = ordered.empty() ? IntMatrix(0, k) : IntMatrix::from_rows(ordered, k);
    return kernel_subgroup(A, M, Bo);
}

} // namespace weilres
