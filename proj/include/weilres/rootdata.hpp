#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "weilres/core/abelian_group.hpp"
#include "weilres/core/int_matrix.hpp"

namespace weilres {

/// Based root datum on X_*(T) = Z^n with X^*(T) = Z^n paired through an unimodular matrix.
/// Roots are stored in X^* coordinates; root_functionals are the same roots written as
/// row vectors acting on X_* coordinates.
class BasedRootDatum {
public:
    BasedRootDatum() = default;

    static BasedRootDatum make(std::string name, int rank, std::vector<IntVec> simple_roots,
                               std::vector<IntVec> simple_coroots, std::optional<IntMatrix> pairing = std::nullopt) {
        BasedRootDatum d;
        d.name_ = std::move(name);
        if (rank <= 0) throw ValidationError("rank: must be a positive integer");
        d.rank_ = rank;
        d.pairing_ = pairing ? *pairing : IntMatrix::identity(rank);
        if (d.pairing_.rows() != rank || d.pairing_.cols() != rank)
            throw ValidationError("pairing: must be a rank x rank matrix");
        if (!is_unimodular(d.pairing_)) throw ValidationError("pairing: matrix is not unimodular");
        if (simple_roots.size() != simple_coroots.size())
            throw ValidationError("simple_roots/simple_coroots: counts differ");
        for (const auto& v : simple_roots)
            if (static_cast<int>(v.size()) != rank) throw ValidationError("simple_roots: vector length differs from rank");
        for (const auto& v : simple_coroots)
            if (static_cast<int>(v.size()) != rank) throw ValidationError("simple_coroots: vector length differs from rank");
        d.simple_roots_ = std::move(simple_roots);
        d.simple_coroots_ = std::move(simple_coroots);
        d.complete();
        return d;
    }

    const std::string& name() const { return name_; }
    int rank() const { return rank_; }
    int semisimple_rank() const { return static_cast<int>(simple_roots_.size()); }
    const IntMatrix& pairing_matrix() const { return pairing_; }
    const std::vector<IntVec>& simple_roots() const { return simple_roots_; }
    const std::vector<IntVec>& simple_coroots() const { return simple_coroots_; }

    /// All roots; indices [0, N) positive, N + i is the negative of i.
    const std::vector<IntVec>& roots() const { return roots_; }
    const std::vector<IntVec>& coroots() const { return coroots_; }
    const std::vector<IntVec>& root_functionals() const { return functionals_; }
    const std::vector<IntVec>& root_coefficients() const { return coeffs_; }
    int num_positive() const { return npos_; }
    int num_roots() const { return static_cast<int>(roots_.size()); }
    const IntMatrix& cartan() const { return cartan_; }

    /// Index of the simple root i in roots().
    int simple_index(int i) const { return simple_pos_[i]; }

    Int pair(const IntVec& weight, const IntVec& coweight) const {
        return dot(weight, pairing_.apply(coweight));
    }
    /// <root_i, lambda>
    Int root_on(int i, const IntVec& lambda) const { return dot(functionals_[i], lambda); }

    IntVec reflect_coweight(int i, const IntVec& lambda) const {
        return sub(lambda, scale(coroots_[i], root_on(i, lambda)));
    }

    int find_root(const IntVec& alpha) const {
        auto it = root_index_.find(alpha);
        return it == root_index_.end() ? -1 : it->second;
    }
    int find_coroot(const IntVec& c) const {
        auto it = coroot_index_.find(c);
        return it == coroot_index_.end() ? -1 : it->second;
    }
    int find_functional(const IntVec& f) const {
        auto it = functional_index_.find(f);
        return it == functional_index_.end() ? -1 : it->second;
    }

    /// X^* coordinates of a functional on X_*.
    IntVec functional_to_weight(const IntVec& f) const {
        auto sol = solve_integer(pairing_.transpose(), f);
        if (!sol) throw ComputeError("functional is not integral in X^*");
        return *sol;
    }

    /// Sum of positive coroots (2 rho^vee of the datum) in X_*.
    IntVec two_rho_vee() const {
        IntVec s(rank_, 0);
        for (int i = 0; i < npos_; ++i) s = add(s, coroots_[i]);
        return s;
    }
    /// Sum of positive root functionals (2 rho) acting on X_*.
    IntVec two_rho() const {
        IntVec s(rank_, 0);
        for (int i = 0; i < npos_; ++i) s = add(s, functionals_[i]);
        return s;
    }

    bool is_dominant(const IntVec& lambda) const {
        for (int i = 0; i < semisimple_rank(); ++i)
            if (root_on(simple_pos_[i], lambda) < 0) return false;
        return true;
    }

    IntVec dominant(IntVec lambda) const {
        bool moved = true;
        while (moved) {
            moved = false;
            for (int i = 0; i < semisimple_rank(); ++i)
                if (root_on(simple_pos_[i], lambda) < 0) {
                    lambda = reflect_coweight(simple_pos_[i], lambda);
                    moved = true;
                }
        }
        return lambda;
    }

    /// Apply a lattice automorphism g of X_* to the root with index i (as a functional).
    int act_on_root(const IntMatrix& g_inverse, int i) const {
        IntVec f = g_inverse.transpose().apply(functionals_[i]);
        return find_functional(f);
    }

    friend bool operator==(const BasedRootDatum& a, const BasedRootDatum& b) {
        return a.rank_ == b.rank_ && a.pairing_ == b.pairing_ && a.simple_roots_ == b.simple_roots_ &&
               a.simple_coroots_ == b.simple_coroots_;
    }

private:
    void complete() {
        const int r = semisimple_rank();
        const IntMatrix PT = pairing_.transpose();
        cartan_ = IntMatrix(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) cartan_(i, j) = pair(simple_roots_[i], simple_coroots_[j]);
        for (int i = 0; i < r; ++i) {
            if (cartan_(i, i) != 2)
                throw ValidationError("simple_roots: <alpha, alpha^vee> != 2 for simple root " + std::to_string(i));
            for (int j = 0; j < r; ++j) {
                if (i == j) continue;
                if (cartan_(i, j) > 0) throw ValidationError("pairing: Cartan matrix has a positive off-diagonal entry");
                if ((cartan_(i, j) == 0) != (cartan_(j, i) == 0))
                    throw ValidationError("pairing: Cartan matrix is not a generalized Cartan matrix");
            }
        }
        if (r > 0) {
            IntMatrix sr = IntMatrix::from_rows(simple_roots_, rank_);
            if (smith_normal_form(sr).rank != r) throw ValidationError("simple_roots: not linearly independent");
        }

        // close (root, coroot, coefficients) under simple reflections
        struct Entry {
            IntVec root, coroot, coeff;
        };
        std::vector<Entry> all;
        std::map<IntVec, int> seen;
        for (int i = 0; i < r; ++i) {
            IntVec c(r, 0);
            c[i] = 1;
            seen.emplace(simple_roots_[i], static_cast<int>(all.size()));
            all.push_back({simple_roots_[i], simple_coroots_[i], c});
        }
        for (size_t k = 0; k < all.size(); ++k) {
            for (int i = 0; i < r; ++i) {
                const Entry e = all[k];
                Int a = pair(e.root, simple_coroots_[i]);
                Int b = pair(simple_roots_[i], e.coroot);
                Entry n{sub(e.root, scale(simple_roots_[i], a)), sub(e.coroot, scale(simple_coroots_[i], b)), e.coeff};
                n.coeff[i] = checked::sub(n.coeff[i], a);
                if (seen.count(n.root)) continue;
                if (all.size() > 4000) throw ValidationError("simple_roots: root system is not of finite type");
                seen.emplace(n.root, static_cast<int>(all.size()));
                all.push_back(n);
            }
        }
        std::vector<Entry> pos;
        for (const auto& e : all) {
            bool nonneg = std::all_of(e.coeff.begin(), e.coeff.end(), [](Int c) { return c >= 0; });
            bool nonpos = std::all_of(e.coeff.begin(), e.coeff.end(), [](Int c) { return c <= 0; });
            if (!nonneg && !nonpos) throw ValidationError("simple_roots: generated root is neither positive nor negative");
            if (nonneg) pos.push_back(e);
        }
        std::sort(pos.begin(), pos.end(), [](const Entry& a, const Entry& b) {
            Int ha = 0, hb = 0;
            for (Int c : a.coeff) ha += c;
            for (Int c : b.coeff) hb += c;
            if (ha != hb) return ha < hb;
            return a.coeff > b.coeff;
        });
        npos_ = static_cast<int>(pos.size());
        if (static_cast<int>(all.size()) != 2 * npos_) throw ValidationError("simple_roots: root set is not symmetric");
        roots_.clear();
        coroots_.clear();
        coeffs_.clear();
        for (const auto& e : pos) {
            roots_.push_back(e.root);
            coroots_.push_back(e.coroot);
            coeffs_.push_back(e.coeff);
        }
        for (const auto& e : pos) {
            roots_.push_back(scale(e.root, -1));
            coroots_.push_back(scale(e.coroot, -1));
            coeffs_.push_back(scale(e.coeff, -1));
        }
        functionals_.clear();
        root_index_.clear();
        coroot_index_.clear();
        functional_index_.clear();
        for (int i = 0; i < num_roots(); ++i) {
            functionals_.push_back(PT.apply(roots_[i]));
            root_index_[roots_[i]] = i;
            coroot_index_[coroots_[i]] = i;
            functional_index_[functionals_[i]] = i;
        }
        simple_pos_.assign(r, -1);
        for (int i = 0; i < r; ++i) simple_pos_[i] = root_index_.at(simple_roots_[i]);

        for (int i = 0; i < num_roots(); ++i) {
            if (pair(roots_[i], coroots_[i]) != 2) throw ValidationError("roots: <alpha, alpha^vee> != 2");
            for (int j = 0; j < num_roots(); ++j) {
                Int a = pair(roots_[j], coroots_[i]);
                IntVec refl = sub(roots_[j], scale(roots_[i], a));
                if (!root_index_.count(refl)) throw ValidationError("roots: reflection does not preserve the root set");
            }
        }
    }

    std::string name_;
    int rank_ = 0;
    IntMatrix pairing_;
    std::vector<IntVec> simple_roots_, simple_coroots_;
    std::vector<IntVec> roots_, coroots_, functionals_, coeffs_;
    std::map<IntVec, int> root_index_, coroot_index_, functional_index_;
    std::vector<int> simple_pos_;
    IntMatrix cartan_;
    int npos_ = 0;
};

/// Closure of a finite matrix group; throws if it exceeds the cap.
inline std::vector<IntMatrix> matrix_group_closure(const std::vector<IntMatrix>& gens, int n, size_t cap = 20000) {
    std::vector<IntMatrix> elems{IntMatrix::identity(n)};
    std::set<IntMatrix> seen{elems[0]};
    for (size_t k = 0; k < elems.size(); ++k)
        for (const auto& g : gens) {
            IntMatrix h = elems[k] * g;
            if (seen.insert(h).second) {
                if (elems.size() >= cap) throw ValidationError("galois: generated group is not finite (or too large)");
                elems.push_back(h);
            }
        }
    return elems;
}

/// Finite Galois action on X_* together with local field numerics.
struct GaloisDescentDatum {
    std::vector<IntMatrix> inertia;
    IntMatrix frobenius;
    int group_order = 1;
    Int q = 2;
    int e = 1;
    int f = 1;

    static GaloisDescentDatum trivial(int rank, Int q = 2) {
        GaloisDescentDatum g;
        g.frobenius = IntMatrix::identity(rank);
        g.q = q;
        return g;
    }

    std::vector<IntMatrix> generators() const {
        std::vector<IntMatrix> gens = inertia;
        gens.push_back(frobenius);
        return gens;
    }

    bool is_trivial() const {
        const int n = frobenius.rows();
        if (frobenius != IntMatrix::identity(n)) return false;
        for (const auto& g : inertia)
            if (g != IntMatrix::identity(n)) return false;
        return true;
    }

    /// Validate against a root datum; fills group_order when it is 0.
    void validate(const BasedRootDatum& d) {
        const int n = d.rank();
        if (frobenius.rows() == 0) frobenius = IntMatrix::identity(n);
        if (q < 2) throw ValidationError("field.q: residue cardinality must be at least 2");
        if (e < 1 || f < 1) throw ValidationError("field: e and f must be positive");
        for (const auto& g : generators()) {
            if (g.rows() != n || g.cols() != n) throw ValidationError("galois: action matrix has wrong size");
            if (!is_unimodular(g)) throw ValidationError("galois: action matrix is not invertible over Z");
            IntMatrix gi = inverse_unimodular(g);
            for (int i = 0; i < d.num_roots(); ++i) {
                int j = d.act_on_root(gi, i);
                if (j < 0) throw ValidationError("galois: action does not permute the roots");
                if (d.coroots()[j] != g.apply(d.coroots()[i]))
                    throw ValidationError("galois: action does not permute the coroots compatibly");
            }
        }
        auto all = matrix_group_closure(generators(), n);
        if (group_order == 0) group_order = static_cast<int>(all.size());
        if (static_cast<int>(all.size()) != group_order)
            throw ValidationError("galois.order: stated order " + std::to_string(group_order) +
                                  " differs from generated group order " + std::to_string(all.size()));
        auto inert = matrix_group_closure(inertia, n);
        std::set<IntMatrix> iset(inert.begin(), inert.end());
        for (const auto& g : generators()) {
            IntMatrix gi = inverse_unimodular(g);
            for (const auto& h : inert)
                if (!iset.count(g * h * gi)) throw ValidationError("galois: inertia subgroup is not normal");
        }
    }

    std::vector<IntMatrix> inertia_elements() const {
        return matrix_group_closure(inertia, frobenius.rows());
    }
};

/// A reductive group over a local field, described combinatorially.
struct GroupDatum {
    std::string name;
    BasedRootDatum root_datum;
    GaloisDescentDatum galois;

    /// Set for Weil restrictions: the datum over K and the extension degrees.
    std::shared_ptr<const GroupDatum> base;
    int restriction_e = 1;
    int restriction_f = 1;

    int rank() const { return root_datum.rank(); }

    static GroupDatum make(std::string name, BasedRootDatum d, GaloisDescentDatum g) {
        g.validate(d);
        GroupDatum gd;
        gd.name = std::move(name);
        gd.root_datum = std::move(d);
        gd.galois = std::move(g);
        return gd;
    }

    static GroupDatum split(std::string name, BasedRootDatum d, Int q = 2) {
        auto g = GaloisDescentDatum::trivial(d.rank(), q);
        return make(std::move(name), std::move(d), std::move(g));
    }
};

// ---------------------------------------------------------------- standard data

inline IntVec unit_vector(int n, int i, Int value = 1) {
    IntVec v(n, 0);
    v[i] = value;
    return v;
}

inline BasedRootDatum gl_datum(int n) {
    std::vector<IntVec> roots, coroots;
    for (int i = 0; i + 1 < n; ++i) {
        IntVec a(n, 0);
        a[i] = 1;
        a[i + 1] = -1;
        roots.push_back(a);
        coroots.push_back(a);
    }
    return BasedRootDatum::make("GL" + std::to_string(n), n, roots, coroots);
}

/// SL_n with X_* the coroot lattice, coordinates in the basis of simple coroots.
inline BasedRootDatum sl_datum(int n) {
    const int r = n - 1;
    IntMatrix C(r, r);
    for (int i = 0; i < r; ++i) {
        C(i, i) = 2;
        if (i + 1 < r) C(i, i + 1) = C(i + 1, i) = -1;
    }
    // X_* = Z^r with coroots e_i; X^* = dual with roots given by Cartan rows
    std::vector<IntVec> roots, coroots;
    for (int i = 0; i < r; ++i) {
        roots.push_back(C.row(i));
        coroots.push_back(unit_vector(r, i));
    }
    return BasedRootDatum::make("SL" + std::to_string(n), r, roots, coroots);
}

/// PGL_n with X_* the coweight lattice, coordinates dual to the simple roots.
inline BasedRootDatum pgl_datum(int n) {
    const int r = n - 1;
    IntMatrix C(r, r);
    for (int i = 0; i < r; ++i) {
        C(i, i) = 2;
        if (i + 1 < r) C(i, i + 1) = C(i + 1, i) = -1;
    }
    std::vector<IntVec> roots, coroots;
    for (int i = 0; i < r; ++i) {
        roots.push_back(unit_vector(r, i));
        coroots.push_back(C.col(i));
    }
    return BasedRootDatum::make("PGL" + std::to_string(n), r, roots, coroots);
}

/// Simply connected semisimple datum from a Cartan matrix C(i,j) = <alpha_i, alpha_j^vee>.
inline BasedRootDatum simply_connected_datum(std::string name, const IntMatrix& C) {
    const int r = C.rows();
    std::vector<IntVec> roots, coroots;
    for (int i = 0; i < r; ++i) {
        roots.push_back(C.row(i));
        coroots.push_back(unit_vector(r, i));
    }
    return BasedRootDatum::make(std::move(name), r, roots, coroots);
}

/// Cartan matrices of types A, B, C, D, G2 (Bourbaki numbering).
inline IntMatrix cartan_matrix(char type, int r) {
    IntMatrix C(r, r);
    for (int i = 0; i < r; ++i) {
        C(i, i) = 2;
        if (i + 1 < r) C(i, i + 1) = C(i + 1, i) = -1;
    }
    switch (type) {
    case 'A': break;
    case 'B': if (r >= 2) C(r - 2, r - 1) = -2; break;
    case 'C': if (r >= 2) C(r - 1, r - 2) = -2; break;
    case 'D':
        if (r < 4) throw ValidationError("type D needs rank at least 4");
        C(r - 2, r - 1) = C(r - 1, r - 2) = 0;
        C(r - 3, r - 1) = C(r - 1, r - 3) = -1;
        break;
    case 'G':
        if (r != 2) throw ValidationError("type G has rank 2");
        C(1, 0) = -3;
        break;
    default: throw ValidationError(std::string("unknown Cartan type ") + type);
    }
    return C;
}

inline BasedRootDatum torus_datum(int n) { return BasedRootDatum::make("T" + std::to_string(n), n, {}, {}); }

/// Block-diagonal product of two root data.
inline BasedRootDatum product_datum(const BasedRootDatum& a, const BasedRootDatum& b) {
    const int n = a.rank() + b.rank();
    std::vector<IntVec> roots, coroots;
    auto pad = [&](const IntVec& v, int offset) {
        IntVec w(n, 0);
        for (size_t i = 0; i < v.size(); ++i) w[offset + i] = v[i];
        return w;
    };
    for (int i = 0; i < a.semisimple_rank(); ++i) {
        roots.push_back(pad(a.simple_roots()[i], 0));
        coroots.push_back(pad(a.simple_coroots()[i], 0));
    }
    for (int i = 0; i < b.semisimple_rank(); ++i) {
        roots.push_back(pad(b.simple_roots()[i], a.rank()));
        coroots.push_back(pad(b.simple_coroots()[i], a.rank()));
    }
    IntMatrix P(n, n);
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) P(i, j) = a.pairing_matrix()(i, j);
    for (int i = 0; i < b.rank(); ++i)
        for (int j = 0; j < b.rank(); ++j) P(a.rank() + i, a.rank() + j) = b.pairing_matrix()(i, j);
    return BasedRootDatum::make(a.name() + "x" + b.name(), n, roots, coroots, P);
}

inline IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

inline GroupDatum product_group(const GroupDatum& a, const GroupDatum& b) {
    if (a.galois.q != b.galois.q) throw ValidationError("product: residue cardinalities differ");
    GaloisDescentDatum g;
    g.q = a.galois.q;
    g.e = std::max(a.galois.e, b.galois.e);
    g.f = std::max(a.galois.f, b.galois.f);
    for (const auto& h : a.galois.inertia) g.inertia.push_back(block_diag(h, IntMatrix::identity(b.rank())));
    for (const auto& h : b.galois.inertia) g.inertia.push_back(block_diag(IntMatrix::identity(a.rank()), h));
    g.frobenius = block_diag(a.galois.frobenius, b.galois.frobenius);
    g.group_order = 0;
    return GroupDatum::make(a.name + "x" + b.name, product_datum(a.root_datum, b.root_datum), g);
}

/// Integer f-th root, if exact.
inline std::optional<Int> exact_root(Int x, int f) {
    if (f == 1) return x;
    for (Int r = 1;; ++r) {
        Int p = 1;
        bool over = false;
        for (int k = 0; k < f; ++k) {
            if (__builtin_mul_overflow(p, r, &p)) {
                over = true;
                break;
            }
        }
        if (over || p > x) return std::nullopt;
        if (p == x) return r;
    }
}

/// Res_{K/F} at the lattice level. Blocks are indexed b = i * e + j with i in [0, f) along
/// Frobenius cosets and j in [0, e) along inertia cosets. The inertia generator of F cycles j,
/// applying the K-side inertia generator on wrap-around; Frobenius cycles i, applying the
/// K-side Frobenius on wrap-around.
inline GroupDatum weil_restrict(const GroupDatum& g0, int e, int f, std::optional<Int> q_F = std::nullopt) {
    if (e < 1 || f < 1) throw ValidationError("restriction: e and f must be positive");
    const auto& d0 = g0.root_datum;
    const int n = d0.rank();
    const int blocks = e * f;
    const int N = n * blocks;
    if (g0.galois.inertia.size() > 1)
        throw UnsupportedCase("restriction: base datum must have cyclic inertia (at most one generator)");
    IntMatrix tauK = g0.galois.inertia.empty() ? IntMatrix::identity(n) : g0.galois.inertia[0];
    const IntMatrix& phiK = g0.galois.frobenius;
    if (tauK * phiK != phiK * tauK)
        throw UnsupportedCase("restriction: base Frobenius must commute with base inertia in the finite quotient");
    Int qF;
    if (q_F) {
        Int p = 1;
        for (int k = 0; k < f; ++k) p = checked::mul(p, *q_F);
        if (p != g0.galois.q)
            throw ValidationError("restriction: degree mismatch, q_F^f = " + std::to_string(p) + " but q_K = " +
                                  std::to_string(g0.galois.q));
        qF = *q_F;
    } else {
        auto r = exact_root(g0.galois.q, f);
        if (!r) throw ValidationError("restriction: degree mismatch, q_K is not an f-th power");
        qF = *r;
    }

    auto block = [&](int i, int j) { return (i * e + j) * n; };
    IntMatrix tau(N, N), phi(N, N);
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < e; ++j) {
            // tau: block (i,j) -> (i,j+1), wrapping with tauK
            int src = block(i, j);
            int dst = block(i, (j + 1) % e);
            const bool wrap_t = (j + 1 == e);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) tau(dst + a, src + b) = wrap_t ? tauK(a, b) : (a == b ? 1 : 0);
            int dstp = block((i + 1) % f, j);
            const bool wrap_p = (i + 1 == f);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) phi(dstp + a, src + b) = wrap_p ? phiK(a, b) : (a == b ? 1 : 0);
        }

    std::vector<IntVec> roots, coroots;
    for (int bl = 0; bl < blocks; ++bl)
        for (int i = 0; i < d0.semisimple_rank(); ++i) {
            IntVec r(N, 0), c(N, 0);
            for (int a = 0; a < n; ++a) {
                r[bl * n + a] = d0.simple_roots()[i][a];
                c[bl * n + a] = d0.simple_coroots()[i][a];
            }
            roots.push_back(r);
            coroots.push_back(c);
        }
    IntMatrix P(N, N);
    for (int bl = 0; bl < blocks; ++bl)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) P(bl * n + a, bl * n + b) = d0.pairing_matrix()(a, b);

    std::string name = "Res" + std::to_string(e) + "," + std::to_string(f) + "(" + g0.name + ")";
    auto d = BasedRootDatum::make(name, N, roots, coroots, P);

    GaloisDescentDatum g;
    if (e > 1 || !g0.galois.inertia.empty()) g.inertia.push_back(tau);
    g.frobenius = phi;
    g.q = qF;
    g.e = e * g0.galois.e;
    g.f = f * g0.galois.f;
    g.group_order = 0;
    GroupDatum out = GroupDatum::make(name, d, g);
    out.base = std::make_shared<GroupDatum>(g0);
    out.restriction_e = e;
    out.restriction_f = f;
    return out;
}

/// The K-side sum map X_*(Res) -> X_*(G_0): sum of the f = 0 blocks over j.
inline IntMatrix restriction_sum_map(const GroupDatum& res) {
    if (!res.base) throw ValidationError("restriction_sum_map: datum is not a Weil restriction");
    const int n = res.base->rank();
    const int e = res.restriction_e;
    IntMatrix m(n, res.rank());
    for (int j = 0; j < e; ++j)
        for (int a = 0; a < n; ++a) m(a, j * n + a) = 1;
    return m;
}

// ---------------------------------------------------------------- relative roots

/// Relative (echelonnage) root system on Lambda_M = (X_*(T)_I)^Phi, with the
/// coinvariant lattices needed for the Kottwitz map.
struct RelativeRootSystem {
    Quotient coinv;          // X_*(T)_I
    IntMatrix phi_coinv;     // Frobenius on coinv coordinates
    Subgroup lambda;         // Lambda_M inside coinv.group
    Quotient pi1;            // pi_1(G)_I
    IntMatrix kappa;         // Lambda coordinates -> pi1 coordinates
    Subgroup pi1_phi;        // pi_1(G)_I^Phi
    IntMatrix lambda_to_x;   // a lift Lambda -> X_*

    std::vector<IntVec> roots;    // functionals on Lambda coordinates; [0,N) positive, N+i = -i
    std::vector<IntVec> coroots;  // Lambda coordinates
    std::vector<int> params;      // L(a) for each root
    std::vector<std::vector<int>> absolute_roots; // absolute root indices in each relative root
    std::vector<int> simple;      // indices (in [0,N)) of simple relative roots
    int num_positive = 0;

    int num_roots() const { return static_cast<int>(roots.size()); }
    int rank() const { return static_cast<int>(simple.size()); }
    const AbelianGroup& lattice() const { return lambda.group; }

    Int root_on(int i, const IntVec& lam) const { return dot(roots[i], lam); }

    /// Image of an absolute cocharacter in X_*(T)_I, then Lambda_M if Phi-fixed.
    std::optional<IntVec> lambda_of_cocharacter(const IntVec& x) const {
        return lambda.coords_of(coinv.project(x));
    }
    IntVec kottwitz(const IntVec& lam) const { return pi1.group.reduce(kappa.apply(lam)); }
};

/// Checks that inertia and Frobenius permute the simple roots.
inline bool galois_preserves_base(const GroupDatum& g) {
    const auto& d = g.root_datum;
    std::set<int> simple;
    for (int i = 0; i < d.semisimple_rank(); ++i) simple.insert(d.simple_index(i));
    for (const auto& m : g.galois.generators()) {
        IntMatrix mi = inverse_unimodular(m);
        for (int s : simple)
            if (!simple.count(d.act_on_root(mi, s))) return false;
    }
    return true;
}

inline RelativeRootSystem relative_root_data(const GroupDatum& g) {
    const auto& d = g.root_datum;
    const int n = d.rank();
    RelativeRootSystem rs;
    std::vector<IntMatrix> inert = g.galois.inertia;
    {
        std::set<int> simple;
        for (int i = 0; i < d.semisimple_rank(); ++i) simple.insert(d.simple_index(i));
        for (const auto& m : inert) {
            IntMatrix mi = inverse_unimodular(m);
            for (int s : simple)
                if (!simple.count(d.act_on_root(mi, s)))
                    throw UnsupportedCase("relative roots: inertia does not preserve a base (not quasi-split over the maximal unramified extension)");
        }
        IntMatrix fi = inverse_unimodular(g.galois.frobenius);
        for (int s : simple)
            if (!simple.count(d.act_on_root(fi, s)))
                throw UnsupportedCase("relative roots: Frobenius does not preserve the base (minimal Levi is not a torus)");
    }

    rs.coinv = coinvariants(n, inert);
    rs.phi_coinv = rs.coinv.induced(g.galois.frobenius);
    rs.lambda = invariants(rs.coinv.group, {rs.phi_coinv});
    rs.lambda_to_x = rs.coinv.lift * rs.lambda.embed;

    // pi_1(G)_I = X_* / (coroots + (1 - gamma) X_*)
    {
        std::vector<IntVec> rel;
        for (const auto& c : d.simple_coroots()) rel.push_back(c);
        for (const auto& m : inert) {
            IntMatrix dm = IntMatrix::identity(n) - m;
            for (int j = 0; j < n; ++j) rel.push_back(dm.col(j));
        }
        rs.pi1 = quotient(n, IntMatrix::from_columns(rel, n));
        rs.kappa = rs.pi1.proj * rs.lambda_to_x;
        rs.pi1_phi = invariants(rs.pi1.group, {rs.pi1.induced(g.galois.frobenius)});
    }

    // inertia orbits of absolute roots
    auto inert_elems = matrix_group_closure(inert, n);
    std::vector<IntMatrix> inert_inv;
    for (const auto& m : inert_elems) inert_inv.push_back(inverse_unimodular(m));
    const int NA = d.num_roots();
    std::vector<int> iorbit(NA, -1);
    std::vector<std::vector<int>> iorbits;
    for (int a = 0; a < NA; ++a) {
        if (iorbit[a] >= 0) continue;
        std::set<int> orb;
        for (const auto& mi : inert_inv) orb.insert(d.act_on_root(mi, a));
        for (int b : orb) iorbit[b] = static_cast<int>(iorbits.size());
        iorbits.emplace_back(orb.begin(), orb.end());
    }
    for (const auto& orb : iorbits)
        for (int a : orb)
            for (int b : orb)
                if (a != b && d.pair(d.roots()[a], d.coroots()[b]) != 0)
                    throw UnsupportedCase("relative roots: non-orthogonal inertia orbit (non-reduced echelonnage system)");

    // echelonnage functional (orbit sum) and coroot class for each inertia orbit
    const int NI = static_cast<int>(iorbits.size());
    std::vector<IntVec> ech_func(NI), ech_coroot(NI);
    for (int o = 0; o < NI; ++o) {
        IntVec f(n, 0);
        for (int a : iorbits[o]) f = add(f, d.root_functionals()[a]);
        ech_func[o] = f;
        ech_coroot[o] = rs.coinv.project(d.coroots()[iorbits[o][0]]);
    }

    // Frobenius orbits of inertia orbits
    IntMatrix fi = inverse_unimodular(g.galois.frobenius);
    std::vector<int> porbit(NI, -1);
    std::vector<std::vector<int>> porbits;
    for (int o = 0; o < NI; ++o) {
        if (porbit[o] >= 0) continue;
        std::vector<int> orb;
        int cur = o;
        while (porbit[cur] < 0) {
            porbit[cur] = static_cast<int>(porbits.size());
            orb.push_back(cur);
            cur = iorbit[d.act_on_root(fi, iorbits[cur][0])];
        }
        porbits.push_back(orb);
    }

    struct Rel {
        IntVec func, coroot;
        int L;
        std::vector<int> abs;
        bool positive;
        bool simple;
    };
    std::vector<Rel> rel;
    std::set<int> simple_abs;
    for (int i = 0; i < d.semisimple_rank(); ++i) simple_abs.insert(d.simple_index(i));
    for (const auto& orb : porbits) {
        for (int x : orb)
            for (int y : orb) {
                if (x == y) continue;
                Int p = dot(ech_func[x], rs.coinv.lift_of(ech_coroot[y]));
                if (p != 0) throw UnsupportedCase("relative roots: non-orthogonal Frobenius orbit (non-reduced relative system)");
            }
        Rel r;
        r.func = rs.lambda_to_x.transpose().apply(ech_func[orb[0]]);
        IntVec c = rs.coinv.group.zero();
        for (int x : orb) c = rs.coinv.group.reduce(add(c, ech_coroot[x]));
        auto lc = rs.lambda.coords_of(c);
        if (!lc) throw ComputeError("relative coroot is not Frobenius invariant");
        r.coroot = *lc;
        r.L = static_cast<int>(orb.size());
        for (int x : orb)
            for (int a : iorbits[x]) r.abs.push_back(a);
        std::sort(r.abs.begin(), r.abs.end());
        r.positive = r.abs[0] < d.num_positive();
        r.simple = std::any_of(r.abs.begin(), r.abs.end(), [&](int a) { return simple_abs.count(a) > 0; });
        if (dot(r.func, r.coroot) != 2) throw ComputeError("relative root does not pair to 2 with its coroot");
        rel.push_back(std::move(r));
    }
    // reducedness and multiplicity checks
    std::map<IntVec, int> func_count;
    for (const auto& r : rel) func_count[r.func]++;
    for (const auto& [f, c] : func_count) {
        if (c > 1) throw UnsupportedCase("relative roots: repeated relative root (non-quasi-split configuration)");
        if (func_count.count(scale(f, 2))) throw UnsupportedCase("relative roots: non-reduced relative system (BC type)");
    }

    std::vector<Rel> pos, neg;
    for (auto& r : rel) (r.positive ? pos : neg).push_back(r);
    if (pos.size() != neg.size()) throw ComputeError("relative roots are not symmetric");
    // order positives by absolute index of first constituent, negatives to match
    std::sort(pos.begin(), pos.end(), [](const Rel& a, const Rel& b) { return a.abs[0] < b.abs[0]; });
    std::map<IntVec, const Rel*> neg_by_func;
    for (const auto& r : neg) neg_by_func[r.func] = &r;
    rs.num_positive = static_cast<int>(pos.size());
    for (const auto& r : pos) {
        rs.roots.push_back(r.func);
        rs.coroots.push_back(r.coroot);
        rs.params.push_back(r.L);
        rs.absolute_roots.push_back(r.abs);
    }
    for (const auto& r : pos) {
        auto it = neg_by_func.find(scale(r.func, -1));
        if (it == neg_by_func.end()) throw ComputeError("relative root without negative");
        rs.roots.push_back(it->second->func);
        rs.coroots.push_back(it->second->coroot);
        rs.params.push_back(it->second->L);
        rs.absolute_roots.push_back(it->second->abs);
    }
    for (int i = 0; i < rs.num_positive; ++i)
        if (pos[i].simple) rs.simple.push_back(i);
    std::sort(rs.simple.begin(), rs.simple.end(), [&](int a, int b) {
        return rs.absolute_roots[a][0] < rs.absolute_roots[b][0];
    });
    return rs;
}

/// Adjoint quotient: X_*(T_ad) = Z^r with coordinates <alpha_i, .>. Returns the datum and
/// the projection matrix X_*(T) -> X_*(T_ad).
inline std::pair<GroupDatum, IntMatrix> adjoint_group(const GroupDatum& g) {
    const auto& d = g.root_datum;
    const int r = d.semisimple_rank();
    if (r == 0) throw ValidationError("adjoint: group has no roots");
    IntMatrix p(r, d.rank());
    for (int i = 0; i < r; ++i) {
        IntVec f = d.root_functionals()[d.simple_index(i)];
        for (int j = 0; j < d.rank(); ++j) p(i, j) = f[j];
    }
    std::vector<IntVec> roots, coroots;
    for (int i = 0; i < r; ++i) {
        roots.push_back(unit_vector(r, i));
        coroots.push_back(p.apply(d.simple_coroots()[i]));
    }
    auto dad = BasedRootDatum::make(d.name() + "_ad", r, roots, coroots);
    if (!galois_preserves_base(g)) throw UnsupportedCase("adjoint: Galois action does not preserve the base");
    auto perm_matrix = [&](const IntMatrix& m) {
        IntMatrix mi = inverse_unimodular(m);
        IntMatrix out(r, r);
        for (int i = 0; i < r; ++i) {
            // <alpha_i, m lambda> = <m^{-1} alpha_i, lambda>
            int img = d.act_on_root(mi, d.simple_index(i));
            int j = -1;
            for (int k = 0; k < r; ++k)
                if (d.simple_index(k) == img) j = k;
            out(i, j) = 1;
        }
        return out;
    };
    GaloisDescentDatum ga;
    for (const auto& m : g.galois.inertia) ga.inertia.push_back(perm_matrix(m));
    ga.frobenius = perm_matrix(g.galois.frobenius);
    ga.q = g.galois.q;
    ga.e = g.galois.e;
    ga.f = g.galois.f;
    ga.group_order = 0;
    return {GroupDatum::make(g.name + "_ad", dad, ga), p};
}

/// Short Dynkin type string of a Cartan matrix, e.g. "A2", "A1xA1", "B2".
inline std::string cartan_type(const IntMatrix& C) {
    const int r = C.rows();
    if (r == 0) return "torus";
    std::vector<int> comp(r, -1);
    int nc = 0;
    for (int i = 0; i < r; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{i};
        comp[i] = nc;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y = 0; y < r; ++y)
                if (y != x && C(x, y) != 0 && comp[y] < 0) {
                    comp[y] = nc;
                    stack.push_back(y);
                }
        }
        ++nc;
    }
    std::vector<std::string> parts;
    for (int c = 0; c < nc; ++c) {
        std::vector<int> nodes;
        for (int i = 0; i < r; ++i)
            if (comp[i] == c) nodes.push_back(i);
        const int k = static_cast<int>(nodes.size());
        int maxprod = 0, branch = 0;
        for (int x : nodes) {
            int deg = 0;
            for (int y : nodes)
                if (x != y && C(x, y) != 0) {
                    ++deg;
                    maxprod = std::max<int>(maxprod, static_cast<int>(C(x, y) * C(y, x)));
                }
            if (deg >= 3) ++branch;
        }
        std::string t;
        if (maxprod <= 1)
            t = branch ? (k == 4 || k > 8 ? "D" : (k >= 6 ? "E?" : "D")) : "A";
        else if (maxprod == 2)
            t = k == 4 ? "F?" : "BC?";
        else
            t = "G";
        if (t == "E?") {
            // distinguish D_n from E_n by arm lengths at the branch node
            int b = -1;
            for (int x : nodes) {
                int deg = 0;
                for (int y : nodes)
                    if (x != y && C(x, y) != 0) ++deg;
                if (deg == 3) b = x;
            }
            std::vector<int> arms;
            for (int y : nodes) {
                if (y == b || C(b, y) == 0) continue;
                int len = 1, prev = b, cur = y;
                while (true) {
                    int nxt = -1;
                    for (int z : nodes)
                        if (z != cur && z != prev && C(cur, z) != 0) nxt = z;
                    if (nxt < 0) break;
                    prev = cur;
                    cur = nxt;
                    ++len;
                }
                arms.push_back(len);
            }
            std::sort(arms.begin(), arms.end());
            t = (arms[0] == 1 && arms[1] == 1) ? "D" : "E";
        }
        if (t == "BC?" || t == "F?") {
            if (k == 2) {
                t = "B";
            } else {
                // find the double bond; C(long, short) = -2
                int a = -1, b = -1;
                for (int x : nodes)
                    for (int y : nodes)
                        if (x != y && C(x, y) * C(y, x) == 2 && C(x, y) == -2) {
                            a = x; // long
                            b = y; // short
                        }
                int deg_b = 0;
                for (int z : nodes)
                    if (z != b && C(b, z) != 0) ++deg_b;
                if (t == "F?") {
                    int deg_a = 0;
                    for (int z : nodes)
                        if (z != a && C(a, z) != 0) ++deg_a;
                    t = (deg_a == 2 && deg_b == 2) ? "F" : (deg_b == 1 ? "B" : "C");
                } else {
                    t = deg_b == 1 ? "B" : "C";
                }
            }
        }
        parts.push_back(t + std::to_string(k));
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) out += (i ? "x" : "") + parts[i];
    return out;
}

} // namespace weilres
