#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "weilres/core/field_matrix.hpp"
#include "weilres/rootdata.hpp"

namespace weilres {

/// Formal character: T^vee-weight (a cocharacter of T) to multiplicity.
using Character = std::map<IntVec, Int>;

// ---------------------------------------------------------------- dual root system

/// W-invariant form (x, y) = sum over roots of <a, x><a, y> on X_*.
inline Int dual_form(const BasedRootDatum& d, const IntVec& x, const IntVec& y) {
    Int s = 0;
    for (int i = 0; i < d.num_roots(); ++i) s = checked::add(s, checked::mul(d.root_on(i, x), d.root_on(i, y)));
    return s;
}

/// Elements of W acting on X_*, with signs; identity first.
inline std::pair<std::vector<IntMatrix>, std::vector<int>> weyl_group_on_cocharacters(const BasedRootDatum& d) {
    const int n = d.rank();
    std::vector<IntMatrix> gens;
    for (int i = 0; i < d.semisimple_rank(); ++i) {
        int a = d.simple_index(i);
        IntMatrix m = IntMatrix::identity(n);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) m(x, y) -= d.coroots()[a][x] * d.root_functionals()[a][y];
        gens.push_back(m);
    }
    std::vector<IntMatrix> elems{IntMatrix::identity(n)};
    std::vector<int> sign{1};
    std::map<IntMatrix, int> seen{{elems[0], 0}};
    for (size_t k = 0; k < elems.size(); ++k)
        for (const auto& g : gens) {
            IntMatrix h = elems[k] * g;
            if (seen.count(h)) continue;
            if (elems.size() > 100000) throw ComputeError("Weyl group is too large");
            seen[h] = static_cast<int>(elems.size());
            elems.push_back(h);
            sign.push_back(-sign[k]);
        }
    return {elems, sign};
}

/// Dominant weights below lam, reached by subtracting positive coroots.
inline std::vector<IntVec> dominant_weights_below(const BasedRootDatum& d, const IntVec& lam) {
    std::set<IntVec> seen{lam};
    std::vector<IntVec> queue{lam};
    for (size_t k = 0; k < queue.size(); ++k)
        for (int b = 0; b < d.num_positive(); ++b) {
            IntVec nu = sub(queue[k], d.coroots()[b]);
            if (d.is_dominant(nu) && seen.insert(nu).second) queue.push_back(nu);
        }
    return queue;
}

/// Full character of the irreducible representation of the dual group with highest weight lam (Freudenthal).
inline Character weight_multiplicities(const BasedRootDatum& d, const IntVec& lam) {
    if (static_cast<int>(lam.size()) != d.rank()) throw ValidationError("mu: length differs from the rank");
    if (!d.is_dominant(lam)) throw ValidationError("mu: not dominant");
    const IntVec h = d.two_rho();
    auto dom = dominant_weights_below(d, lam);
    std::sort(dom.begin(), dom.end(), [&](const IntVec& a, const IntVec& b) {
        Int ha = dot(h, a), hb = dot(h, b);
        return ha != hb ? ha > hb : a < b;
    });
    const IntVec tr = d.two_rho_vee();
    Character dm;
    dm[lam] = 1;
    auto mult = [&](const IntVec& nu) -> Int {
        auto it = dm.find(d.dominant(nu));
        return it == dm.end() ? 0 : it->second;
    };
    for (const auto& mu : dom) {
        if (mu == lam) continue;
        Int rhs = 0;
        for (int b = 0; b < d.num_positive(); ++b) {
            const IntVec& beta = d.coroots()[b];
            for (Int k = 1;; ++k) {
                IntVec nu = add(mu, scale(beta, k));
                Int m = mult(nu);
                if (m == 0) break;
                rhs = checked::add(rhs, checked::mul(m, dual_form(d, nu, beta)));
            }
        }
        Int denom = dual_form(d, sub(lam, mu), add(add(lam, mu), tr));
        if (denom <= 0) throw ComputeError("Freudenthal: non-positive denominator");
        if ((2 * rhs) % denom != 0) throw ComputeError("Freudenthal: non-integral multiplicity");
        Int m = 2 * rhs / denom;
        if (m > 0) dm[mu] = m;
    }
    Character full;
    auto [W, sg] = weyl_group_on_cocharacters(d);
    for (const auto& [mu, m] : dm) {
        std::set<IntVec> orbit;
        for (const auto& w : W) orbit.insert(w.apply(mu));
        for (const auto& nu : orbit) full[nu] = m;
    }
    return full;
}

inline Int character_dimension(const Character& c) {
    Int s = 0;
    for (const auto& [w, m] : c) s += m;
    return s;
}

/// Weyl character formula with the denominator divided out exactly.
inline Character weyl_character(const BasedRootDatum& d, const IntVec& lam) {
    if (!d.is_dominant(lam)) throw ValidationError("mu: not dominant");
    auto [W, sg] = weyl_group_on_cocharacters(d);
    const IntVec tr = d.two_rho_vee();
    const IntVec h = d.two_rho();
    Character num;
    for (size_t i = 0; i < W.size(); ++i) {
        IntVec shift = sub(tr, W[i].apply(tr)); // 2(rho - w rho)
        for (auto& x : shift) {
            if (x % 2 != 0) throw ComputeError("Weyl character: rho - w rho is not integral");
            x /= 2;
        }
        IntVec e = sub(W[i].apply(lam), shift);
        num[e] += sg[i];
        if (num[e] == 0) num.erase(e);
    }
    for (int b = 0; b < d.num_positive(); ++b) {
        const IntVec& beta = d.coroots()[b];
        Int hb = dot(h, beta);
        Int lo = 0, hi = 0;
        bool first = true;
        for (const auto& [x, c] : num) {
            Int hx = dot(h, x);
            if (first || hx < lo) lo = hx;
            if (first || hx > hi) hi = hx;
            first = false;
        }
        Int K = (hi - lo) / hb + 1;
        std::set<IntVec> cand;
        for (const auto& [x, c] : num)
            for (Int k = 0; k <= K; ++k) cand.insert(sub(x, scale(beta, k)));
        Character q;
        for (const auto& x : cand) {
            Int s = 0;
            for (Int k = 0; k <= 2 * K + 2; ++k) {
                auto it = num.find(add(x, scale(beta, k)));
                if (it != num.end()) s += it->second;
            }
            if (s != 0) q[x] = s;
        }
        // q (1 - e^{-beta}) must reproduce num
        Character check = q;
        for (const auto& [x, c] : q) {
            IntVec y = sub(x, beta);
            check[y] -= c;
            if (check[y] == 0) check.erase(y);
        }
        if (check != num) throw ComputeError("Weyl character: inexact division");
        num = std::move(q);
    }
    return num;
}

/// Weyl dimension formula.
inline Rational weyl_dimension(const BasedRootDatum& d, const IntVec& lam) {
    const IntVec tr = d.two_rho_vee();
    Rational r(1);
    IntVec top = add(scale(lam, 2), tr);
    for (int b = 0; b < d.num_positive(); ++b) {
        const IntVec& beta = d.coroots()[b];
        Rational f(static_cast<long>(dual_form(d, top, beta)), static_cast<long>(dual_form(d, tr, beta)));
        f.canonicalize();
        r *= f;
    }
    return r;
}

// ---------------------------------------------------------------- L-group representations

/// Representation of the L-group on a weight basis, with the Galois action as explicit matrices.
struct LGroupRep {
    GroupDatum group;
    std::vector<IntVec> weights;           // weight of each basis vector
    std::vector<IntVec> highest_weights;   // dominant highest weights of the Ghat-constituents
    std::vector<CycMatrix> inertia;        // one per inertia generator of group.galois
    CycMatrix frobenius;

    int dim() const { return static_cast<int>(weights.size()); }

    Character character() const {
        Character c;
        for (const auto& w : weights) ++c[w];
        return c;
    }

    /// Irreducible representation whose highest weights are the Galois orbit of mu; permutation action.
    static LGroupRep irreducible(const GroupDatum& g, IntVec mu) {
        const auto& d = g.root_datum;
        if (static_cast<int>(mu.size()) != d.rank()) throw ValidationError("mu: length differs from the rank");
        mu = d.dominant(mu);
        if (!galois_preserves_base(g)) throw UnsupportedCase("representation: Galois action does not preserve the base");
        auto all = matrix_group_closure(g.galois.generators(), d.rank());
        std::set<IntVec> orbit_set;
        for (const auto& m : all) orbit_set.insert(m.apply(mu));
        std::vector<IntVec> orbit(orbit_set.begin(), orbit_set.end());
        LGroupRep r;
        r.group = g;
        r.highest_weights = orbit;
        std::map<std::pair<int, IntVec>, int> index;
        std::vector<int> block_of;
        for (size_t b = 0; b < orbit.size(); ++b) {
            Character c = weight_multiplicities(d, orbit[b]);
            for (const auto& [w, m] : c) {
                if (m != 1 && !g.galois.is_trivial())
                    throw ValidationError("representation: weight multiplicity > 1 needs explicit Galois matrices");
                for (Int k = 0; k < m; ++k) {
                    if (k == 0) index[{static_cast<int>(b), w}] = static_cast<int>(r.weights.size());
                    r.weights.push_back(w);
                    block_of.push_back(static_cast<int>(b));
                }
            }
        }
        auto perm = [&](const IntMatrix& m) {
            const int n = r.dim();
            CycMatrix p(n, n);
            if (m == IntMatrix::identity(d.rank())) return CycMatrix::identity(n);
            for (int i = 0; i < n; ++i) {
                IntVec hb = m.apply(orbit[block_of[i]]);
                int b2 = static_cast<int>(std::lower_bound(orbit.begin(), orbit.end(), hb) - orbit.begin());
                auto it = index.find({b2, m.apply(r.weights[i])});
                if (it == index.end()) throw ComputeError("representation: Galois image of a weight is missing");
                p(it->second, i) = Cyclotomic(1);
            }
            return p;
        };
        for (const auto& m : g.galois.inertia) r.inertia.push_back(perm(m));
        r.frobenius = perm(g.galois.frobenius);
        return r;
    }

    /// Explicit Galois matrices on a weight basis; checked for compatibility with the lattice action.
    static LGroupRep explicit_rep(const GroupDatum& g, std::vector<IntVec> weights, std::vector<CycMatrix> inertia,
                                  CycMatrix frobenius, std::vector<IntVec> highest = {}) {
        LGroupRep r{g, std::move(weights), std::move(highest), std::move(inertia), std::move(frobenius)};
        if (r.inertia.size() != g.galois.inertia.size())
            throw ValidationError("representation: one matrix per inertia generator is required");
        auto check = [&](const CycMatrix& v, const IntMatrix& x) {
            if (v.rows() != r.dim() || v.cols() != r.dim()) throw ValidationError("representation: matrix has wrong size");
            for (int i = 0; i < r.dim(); ++i)
                for (int j = 0; j < r.dim(); ++j)
                    if (!v(i, j).is_zero() && r.weights[i] != x.apply(r.weights[j]))
                        throw ValidationError("representation: Galois matrix does not map weight spaces compatibly");
        };
        for (size_t k = 0; k < r.inertia.size(); ++k) check(r.inertia[k], g.galois.inertia[k]);
        check(r.frobenius, g.galois.frobenius);
        if (r.highest_weights.empty()) {
            for (const auto& w : r.weights)
                if (g.root_datum.is_dominant(w)) {
                    bool top = true;
                    for (int b = 0; b < g.root_datum.num_positive() && top; ++b)
                        if (std::find(r.weights.begin(), r.weights.end(), add(w, g.root_datum.coroots()[b])) != r.weights.end())
                            top = false;
                    if (top) r.highest_weights.push_back(w);
                }
        }
        return r;
    }
};

/// The finite inertia quotient acting on X_* and on V simultaneously; identity first.
struct InertiaAction {
    std::vector<IntMatrix> lattice;
    std::vector<CycMatrix> matrices;
    size_t size() const { return lattice.size(); }
};

inline InertiaAction inertia_action(const LGroupRep& r) {
    InertiaAction a;
    a.lattice.push_back(IntMatrix::identity(r.group.rank()));
    a.matrices.push_back(CycMatrix::identity(r.dim()));
    for (size_t k = 0; k < a.size(); ++k)
        for (size_t g = 0; g < r.inertia.size(); ++g) {
            IntMatrix x = a.lattice[k] * r.group.galois.inertia[g];
            CycMatrix v = a.matrices[k] * r.inertia[g];
            bool seen = false;
            for (size_t j = 0; j < a.size() && !seen; ++j) seen = a.lattice[j] == x && a.matrices[j] == v;
            if (seen) continue;
            if (a.size() > 2000) throw ComputeError("inertia action is not finite (or too large)");
            a.lattice.push_back(x);
            a.matrices.push_back(v);
        }
    return a;
}

/// Number of Frobenius lifts Phi*gamma, gamma in the inertia quotient.
inline int num_lifts(const LGroupRep& r) { return static_cast<int>(inertia_action(r).size()); }

/// Matrix of the lift Phi*gamma_k on V.
inline CycMatrix lift_matrix(const LGroupRep& r, int k) {
    auto a = inertia_action(r);
    if (k < 0 || k >= static_cast<int>(a.size())) throw ValidationError("lift: index out of range");
    return r.frobenius * a.matrices[k];
}

inline Cyclotomic trace_frobenius(const LGroupRep& r, int lift = 0) { return lift_matrix(r, lift).trace(); }

/// d_V = <2 rho, mu> mod 2, common to all highest weights.
inline int parity(const LGroupRep& r) {
    const IntVec tr = r.group.root_datum.two_rho();
    int p = -1;
    for (const auto& mu : r.highest_weights) {
        int q = static_cast<int>(checked::mod(dot(tr, mu), 2));
        if (p >= 0 && q != p) throw ValidationError("parity: constituents have different parity");
        p = q;
    }
    return p < 0 ? 0 : p;
}

/// Function on Lambda_M: class of a weight to coefficient.
using TraceFunction = std::map<IntVec, Cyclotomic>;

inline void add_to(TraceFunction& f, const IntVec& k, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, ins] = f.emplace(k, c);
    if (!ins) {
        it->second += c;
        if (it->second.is_zero()) f.erase(it);
    }
}

/// lam -> tr(Phi gamma_k | V_lam) over the classes of weights in Lambda_M.
inline TraceFunction trace_function(const LGroupRep& r, const RelativeRootSystem& rs, int lift) {
    CycMatrix m = lift_matrix(r, lift);
    TraceFunction f;
    for (int i = 0; i < r.dim(); ++i) {
        if (m(i, i).is_zero()) continue;
        auto lam = rs.lambda_of_cocharacter(r.weights[i]);
        if (!lam) throw ComputeError("trace: a weight fixed by the lift is not in Lambda_M");
        add_to(f, rs.lattice().reduce(*lam), m(i, i));
    }
    return f;
}

struct InvariantBlock {
    IntVec coinvariant_class;
    int dim = 0;
};

/// Dimensions of V^I graded by X_*(T)_I classes (kernel of the inertia generators per block).
inline std::vector<InvariantBlock> inertia_invariants(const LGroupRep& r, const RelativeRootSystem& rs) {
    std::map<IntVec, std::vector<int>> blocks;
    for (int i = 0; i < r.dim(); ++i) blocks[rs.coinv.project(r.weights[i])].push_back(i);
    std::vector<InvariantBlock> out;
    for (const auto& [cls, idx] : blocks) {
        std::vector<CycMatrix> eqs;
        for (const auto& g : r.inertia) eqs.push_back(g.submatrix(idx, idx) - CycMatrix::identity(static_cast<int>(idx.size())));
        int k = eqs.empty() ? static_cast<int>(idx.size())
                            : CycMatrix::vstack(eqs, static_cast<int>(idx.size())).kernel().cols();
        if (k > 0) out.push_back({cls, k});
    }
    return out;
}

/// lam -> tr(Phi | (V^I)_lam), computing the invariants first.
inline TraceFunction invariant_trace_function(const LGroupRep& r, const RelativeRootSystem& rs) {
    std::map<IntVec, std::vector<int>> blocks;
    for (int i = 0; i < r.dim(); ++i) blocks[rs.coinv.project(r.weights[i])].push_back(i);
    TraceFunction f;
    for (const auto& [cls, idx] : blocks) {
        auto lam = rs.lambda.coords_of(cls);
        if (!lam) continue; // not Frobenius fixed: contributes no trace
        const int n = static_cast<int>(idx.size());
        CycMatrix K;
        if (r.inertia.empty()) {
            K = CycMatrix::identity(n);
        } else {
            std::vector<CycMatrix> eqs;
            for (const auto& g : r.inertia) eqs.push_back(g.submatrix(idx, idx) - CycMatrix::identity(n));
            K = CycMatrix::vstack(eqs, n).kernel();
        }
        if (K.cols() == 0) continue;
        CycMatrix phi = r.frobenius.submatrix(idx, idx);
        add_to(f, rs.lattice().reduce(*lam), (K.left_inverse() * phi * K).trace());
    }
    return f;
}

/// (1/|H|) sum_gamma tr(gamma | V): dimension of V^I by characters.
inline Cyclotomic invariant_dimension_by_characters(const LGroupRep& r) {
    auto a = inertia_action(r);
    Cyclotomic s;
    for (const auto& m : a.matrices) s += m.trace();
    return s.scaled(Rational(1, static_cast<long>(a.size())));
}

/// Mean of a family indexed by all inertia lifts.
inline TraceFunction average_over_inertia(const std::vector<TraceFunction>& family, size_t quotient_order) {
    if (family.size() != quotient_order || quotient_order == 0)
        throw ValidationError("average: family does not cover every inertia lift");
    TraceFunction s;
    for (const auto& f : family)
        for (const auto& [k, c] : f) add_to(s, k, c);
    for (auto& [k, c] : s) c = c.scaled(Rational(1, static_cast<long>(quotient_order)));
    return s;
}

inline Cyclotomic average_over_inertia(const std::vector<Cyclotomic>& family, size_t quotient_order) {
    if (family.size() != quotient_order || quotient_order == 0)
        throw ValidationError("average: family does not cover every inertia lift");
    Cyclotomic s;
    for (const auto& c : family) s += c;
    return s.scaled(Rational(1, static_cast<long>(quotient_order)));
}

/// For a torus: common class omega_V of the weights in X_*(T)_I and tr(Phi gamma_k | V).
inline std::pair<IntVec, Cyclotomic> torus_test_scalar(const LGroupRep& r, const RelativeRootSystem& rs, int lift = 0) {
    if (r.group.root_datum.semisimple_rank() != 0) throw ValidationError("torus_test_scalar: group is not a torus");
    if (r.dim() == 0) throw ValidationError("torus_test_scalar: empty representation");
    IntVec cls = rs.coinv.project(r.weights[0]);
    for (const auto& w : r.weights)
        if (rs.coinv.project(w) != cls) throw ComputeError("torus_test_scalar: weights are not inertia-conjugate");
    return {cls, trace_frobenius(r, lift)};
}

// ---------------------------------------------------------------- induction along unramified towers

/// Operator v_0 (x) ... (x) v_{n-1} -> v_1 (x) ... (x) v_{n-1} (x) A v_0 on V_0^{(x) n}, A the action of Phi^n.
inline CycMatrix boxtimes_frobenius(const CycMatrix& A, int n) {
    if (n < 1) throw ValidationError("induce: degree must be positive");
    const int d = A.rows();
    int N = 1;
    for (int i = 0; i < n; ++i) N *= d;
    // A on the first tensor slot
    CycMatrix first = A;
    for (int i = 1; i < n; ++i) first = CycMatrix::kron(first, CycMatrix::identity(d));
    // cyclic shift of slots
    CycMatrix shift(N, N);
    std::vector<int> digits(n);
    for (int idx = 0; idx < N; ++idx) {
        int t = idx;
        for (int i = n - 1; i >= 0; --i) {
            digits[i] = t % d;
            t /= d;
        }
        int out = 0;
        for (int i = 0; i < n; ++i) out = out * d + digits[(i + 1) % n];
        shift(out, idx) = Cyclotomic(1);
    }
    return shift * first;
}

/// Direct-sum induction: n blocks, Phi moves block i to i+1 and closes with A.
inline CycMatrix gamma_induced_frobenius(const CycMatrix& A, int n) {
    const int d = A.rows();
    CycMatrix m(n * d, n * d);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                if (i + 1 < n)
                    m((i + 1) * d + a, i * d + b) = a == b ? Cyclotomic(1) : Cyclotomic(0);
                else
                    m(a, i * d + b) = A(a, b);
            }
    return m;
}

// ---------------------------------------------------------------- unramified characters

/// Unramified character: values on the generators of X_*(T)_I, restricted to Lambda_M.
struct UnramifiedCharacter {
    std::vector<Cyclotomic> values; // one per coordinate of X_*(T)_I

    Cyclotomic on_coinvariant(const IntVec& x) const {
        Cyclotomic r(1);
        for (size_t i = 0; i < values.size(); ++i) {
            Int e = x[i];
            Cyclotomic base = e < 0 ? values[i].inverse() : values[i];
            for (Int k = 0; k < (e < 0 ? -e : e); ++k) r *= base;
        }
        return r;
    }
    Cyclotomic operator()(const RelativeRootSystem& rs, const IntVec& lam) const {
        return on_coinvariant(rs.lambda.to_parent(lam));
    }

    static UnramifiedCharacter random(const RelativeRootSystem& rs, std::mt19937_64& rng) {
        UnramifiedCharacter c;
        const auto& grp = rs.coinv.group;
        std::uniform_int_distribution<long> num(1, 7), sgn(0, 1);
        for (int i = 0; i < grp.dim(); ++i) {
            if (i < grp.torsion_count()) {
                Int d = grp.torsion[i];
                c.values.push_back(Cyclotomic::root_of_unity(static_cast<int>(d), static_cast<Int>(rng() % d)));
            } else {
                long p = num(rng) * (sgn(rng) ? 1 : -1), q = num(rng);
                Rational v(p, q);
                v.canonicalize();
                c.values.push_back(Cyclotomic(v));
            }
        }
        return c;
    }
};

} // namespace weilres
