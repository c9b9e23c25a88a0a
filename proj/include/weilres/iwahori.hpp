#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "weilres/rootdata.hpp"

namespace weilres {

/// Element t^lam * w of Lambda_M x| W_0; lam in Lambda coordinates (reduced), w an index into W_0.
struct WElement {
    IntVec lam;
    int w = 0;
    friend bool operator==(const WElement&, const WElement&) = default;
    friend auto operator<=>(const WElement&, const WElement&) = default;
};

/// Affine root b + k, b given by a relative root index.
struct AffineRoot {
    int root;
    Int k;
};

struct Facet {
    std::vector<int> nodes; // sorted affine-node indices generating W_f
    bool is_iwahori() const { return nodes.empty(); }
    friend bool operator==(const Facet&, const Facet&) = default;
};

class IwahoriWeylGroup;
using IWGroupPtr = std::shared_ptr<const IwahoriWeylGroup>;

class IwahoriWeylGroup {
public:
    struct Node {
        bool affine = false;
        int component = 0;
        int root = 0;          // relative root index of the finite part of the simple affine root
        Int k = 0;             // constant part of the simple affine root
        int w = 0;             // W_0 part of the reflection
        IntVec translation;    // translation part of the reflection
        int param = 1;         // L(s)
    };

    static IWGroupPtr build(const GroupDatum& g, std::optional<std::vector<int>> node_params = std::nullopt) {
        auto grp = std::shared_ptr<IwahoriWeylGroup>(new IwahoriWeylGroup());
        grp->datum_ = g;
        grp->rs_ = relative_root_data(g);
        grp->init_w0();
        grp->init_nodes();
        if (node_params) {
            if (node_params->size() != grp->nodes_.size())
                throw ValidationError("parameters: expected one value per affine node (" +
                                      std::to_string(grp->nodes_.size()) + ")");
            for (size_t i = 0; i < node_params->size(); ++i) {
                if ((*node_params)[i] < 1) throw ValidationError("parameters: values must be positive");
                grp->nodes_[i].param = (*node_params)[i];
            }
        }
        grp->validate_parameters();
        return grp;
    }

    const GroupDatum& datum() const { return datum_; }
    const RelativeRootSystem& relative() const { return rs_; }
    const AbelianGroup& lattice() const { return rs_.lattice(); }
    int lattice_dim() const { return lattice().dim(); }
    int rank() const { return rs_.rank(); }

    // ---------------------------------------------------------------- W_0
    int w0_size() const { return static_cast<int>(w_perm_.size()); }
    const IntMatrix& w0_matrix(int w) const { return w_mat_[w]; }
    const std::vector<int>& w0_word(int w) const { return w_word_[w]; }
    int w0_length(int w) const { return static_cast<int>(w_word_[w].size()); }
    int w0_mul(int a, int b) const { return w_mult_[a][b]; }
    int w0_inverse(int a) const { return w_inv_[a]; }
    int w0_act_root(int w, int root) const { return w_perm_[w][root]; }
    int w0_longest() const {
        int best = 0;
        for (int w = 0; w < w0_size(); ++w)
            if (w0_length(w) > w0_length(best)) best = w;
        return best;
    }
    /// W_0 index of the simple reflection of finite node i (1-based).
    int w0_simple(int node) const { return nodes_.at(node).w; }

    IntVec w0_apply(int w, const IntVec& lam) const { return lattice().reduce(w_mat_[w].apply(lam)); }

    // ---------------------------------------------------------------- nodes
    int num_nodes() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int s) const { return nodes_.at(s); }
    int num_components() const { return static_cast<int>(components_.size()); }
    /// All node indices (affine and finite) of an irreducible component.
    std::vector<int> component_nodes(int c) const {
        std::vector<int> out;
        for (int s = 0; s < num_nodes(); ++s)
            if (nodes_[s].component == c) out.push_back(s);
        return out;
    }
    int highest_root(int c) const { return highest_[c]; }

    WElement identity() const { return {lattice().zero(), 0}; }
    WElement simple(int s) const { return {nodes_.at(s).translation, nodes_.at(s).w}; }
    WElement translation(const IntVec& lam) const { return {lattice().reduce(lam), 0}; }
    WElement finite(int w) const { return {lattice().zero(), w}; }

    WElement mul(const WElement& x, const WElement& y) const {
        return {lattice().reduce(add(x.lam, w_mat_[x.w].apply(y.lam))), w_mult_[x.w][y.w]};
    }
    WElement inverse(const WElement& x) const {
        int wi = w_inv_[x.w];
        return {lattice().reduce(scale(w_mat_[wi].apply(x.lam), -1)), wi};
    }
    /// x * s for a node s.
    WElement mul_simple(const WElement& x, int s) const {
        const Node& n = nodes_[s];
        return {lattice().reduce(add(x.lam, w_mat_[x.w].apply(n.translation))), w_mult_[x.w][n.w]};
    }
    /// s * x for a node s.
    WElement simple_mul(int s, const WElement& x) const {
        const Node& n = nodes_[s];
        return {lattice().reduce(add(n.translation, w_mat_[n.w].apply(x.lam))), w_mult_[n.w][x.w]};
    }

    // ---------------------------------------------------------------- affine roots
    AffineRoot simple_affine_root(int s) const { return {nodes_[s].root, nodes_[s].k}; }

    AffineRoot act(const WElement& x, const AffineRoot& a) const {
        int b = w_perm_[x.w][a.root];
        return {b, checked::sub(a.k, rs_.root_on(b, x.lam))};
    }
    AffineRoot act_inverse(const WElement& x, const AffineRoot& a) const {
        int b = w_perm_[w_inv_[x.w]][a.root];
        return {b, checked::add(a.k, rs_.root_on(a.root, x.lam))};
    }
    bool is_positive(const AffineRoot& a) const { return a.k > 0 || (a.k == 0 && a.root < rs_.num_positive); }

    /// l(xs) > l(x)
    bool is_right_ascent(const WElement& x, int s) const { return is_positive(act(x, simple_affine_root(s))); }
    /// l(sx) < l(x)
    bool is_left_descent(const WElement& x, int s) const {
        return !is_positive(act_inverse(x, simple_affine_root(s)));
    }

    /// Iwahori-Matsumoto length.
    Int length(const WElement& x) const {
        Int l = 0;
        const int wi = w_inv_[x.w];
        for (int a = 0; a < rs_.num_positive; ++a) {
            Int n = rs_.root_on(a, x.lam);
            if (w_perm_[wi][a] < rs_.num_positive)
                l = checked::add(l, n < 0 ? -n : n);
            else
                l = checked::add(l, n - 1 < 0 ? 1 - n : n - 1);
        }
        return l;
    }

    struct Decomposition {
        std::vector<int> word; // x = s_word[0] ... s_word[k-1] * omega
        WElement omega;
    };

    Decomposition reduced_decomposition(WElement x) const {
        Decomposition d;
        while (true) {
            int s = -1;
            for (int t = 0; t < num_nodes(); ++t)
                if (is_left_descent(x, t)) {
                    s = t;
                    break;
                }
            if (s < 0) break;
            d.word.push_back(s);
            x = simple_mul(s, x);
        }
        d.omega = std::move(x);
        return d;
    }

    WElement from_word(const std::vector<int>& word, const WElement& omega) const {
        WElement x = omega;
        for (size_t i = word.size(); i-- > 0;) x = simple_mul(word[i], x);
        return x;
    }

    int weighted_length(const WElement& x) const {
        int L = 0;
        for (int s : reduced_decomposition(x).word) L += nodes_[s].param;
        return L;
    }

    bool is_length_zero(const WElement& x) const { return length(x) == 0; }

    // ---------------------------------------------------------------- Kottwitz / Omega
    IntVec kottwitz(const WElement& x) const { return rs_.kottwitz(x.lam); }
    const AbelianGroup& pi1() const { return rs_.pi1.group; }

    /// The length-zero element with the given Kottwitz class.
    WElement omega_from_kottwitz(const IntVec& kappa) const {
        IntMatrix m = IntMatrix::hcat(rs_.kappa, pi1().relation_columns());
        auto sol = solve_integer(m, kappa);
        if (!sol) throw ValidationError("omega label is not in the Kottwitz image");
        IntVec lam(sol->begin(), sol->begin() + lattice_dim());
        return reduced_decomposition(translation(lam)).omega;
    }

    std::string kottwitz_label(const WElement& x) const { return vec_label(kottwitz(x)); }

    static std::string vec_label(const IntVec& v) {
        std::ostringstream os;
        os << "[";
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        os << "]";
        return os.str();
    }

    /// Length-zero elements attached to generators of pi_1(G)_I^Phi.
    std::vector<WElement> omega_generators() const {
        std::vector<WElement> out;
        const auto& sub = rs_.pi1_phi;
        for (int i = 0; i < sub.group.dim(); ++i) out.push_back(omega_from_kottwitz(sub.to_parent(unit_vector(sub.group.dim(), i))));
        return out;
    }

    // ---------------------------------------------------------------- dominance and orbits
    bool is_dominant(const IntVec& lam) const {
        for (int i : rs_.simple)
            if (rs_.root_on(i, lam) < 0) return false;
        return true;
    }

    /// Dominant representative and the W_0 element w with w * lam = dominant.
    std::pair<IntVec, int> dominant(IntVec lam) const {
        lam = lattice().reduce(lam);
        int w = 0;
        bool moved = true;
        while (moved) {
            moved = false;
            for (int i = 1; i <= rank(); ++i) {
                const Node& n = nodes_[i];
                if (rs_.root_on(n.root, lam) < 0) {
                    lam = w0_apply(n.w, lam);
                    w = w_mult_[n.w][w];
                    moved = true;
                    break;
                }
            }
        }
        return {lam, w};
    }

    std::vector<IntVec> orbit(const IntVec& lam) const {
        std::set<IntVec> s;
        for (int w = 0; w < w0_size(); ++w) s.insert(w0_apply(w, lam));
        return {s.begin(), s.end()};
    }

    /// Sum of positive relative coroots.
    IntVec two_rho_vee() const {
        IntVec s = lattice().zero();
        for (int a = 0; a < rs_.num_positive; ++a) s = add(s, rs_.coroots[a]);
        return lattice().reduce(s);
    }
    /// Sum of positive relative roots, as a functional on Lambda.
    IntVec two_rho() const {
        IntVec s(lattice_dim(), 0);
        for (int a = 0; a < rs_.num_positive; ++a) s = add(s, rs_.roots[a]);
        return s;
    }
    Int height(const IntVec& lam) const { return dot(two_rho(), lam); }

    // ---------------------------------------------------------------- Bruhat order
    bool bruhat_leq(WElement x, WElement y) const {
        while (true) {
            Int lx = length(x), ly = length(y);
            if (lx > ly) return false;
            if (ly == 0) return x == y;
            int s = -1;
            for (int t = 0; t < num_nodes(); ++t)
                if (is_left_descent(y, t)) {
                    s = t;
                    break;
                }
            if (is_left_descent(x, s)) x = simple_mul(s, x);
            y = simple_mul(s, y);
        }
    }

    std::set<WElement> lower_interval(const WElement& y) const {
        Decomposition d = reduced_decomposition(y);
        std::set<WElement> cur{d.omega};
        for (size_t i = d.word.size(); i-- > 0;) {
            std::set<WElement> next = cur;
            for (const auto& u : cur) next.insert(simple_mul(d.word[i], u));
            cur = std::move(next);
        }
        return cur;
    }

    // ---------------------------------------------------------------- facets
    Facet make_facet(std::vector<int> nodes) const {
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        for (int s : nodes)
            if (s < 0 || s >= num_nodes()) throw ValidationError("facet: node index " + std::to_string(s) + " out of range");
        for (int c = 0; c < num_components(); ++c) {
            auto cn = component_nodes(c);
            bool all = std::all_of(cn.begin(), cn.end(), [&](int s) { return std::binary_search(nodes.begin(), nodes.end(), s); });
            if (all) throw ValidationError("facet: contains every node of an affine component (W_f would be infinite)");
        }
        return Facet{nodes};
    }

    /// Hyperspecial-type facet: all finite nodes.
    Facet special_facet() const {
        std::vector<int> n;
        for (int i = 1; i <= rank(); ++i) n.push_back(i);
        return make_facet(n);
    }

    std::vector<WElement> parabolic_elements(const Facet& f) const {
        std::vector<WElement> elems{identity()};
        std::set<WElement> seen{identity()};
        for (size_t k = 0; k < elems.size(); ++k)
            for (int s : f.nodes) {
                WElement y = mul_simple(elems[k], s);
                if (seen.insert(y).second) {
                    if (elems.size() > 100000) throw ComputeError("parabolic subgroup is too large");
                    elems.push_back(y);
                }
            }
        return elems;
    }

    WElement max_in_double_coset(WElement x, const Facet& f) const {
        bool changed = true;
        while (changed) {
            changed = false;
            for (int s : f.nodes) {
                if (!is_left_descent(x, s)) {
                    x = simple_mul(s, x);
                    changed = true;
                }
                if (is_right_ascent(x, s)) {
                    x = mul_simple(x, s);
                    changed = true;
                }
            }
        }
        return x;
    }

    // ---------------------------------------------------------------- admissible sets
    std::set<WElement> admissible_iwahori(const IntVec& mu) const {
        if (!is_dominant(mu)) throw ValidationError("admissible set: mu is not dominant");
        std::set<WElement> out;
        for (const auto& lam : orbit(mu)) {
            auto iv = lower_interval(translation(lam));
            out.insert(iv.begin(), iv.end());
        }
        return out;
    }

    std::vector<WElement> admissible_set(const IntVec& mu, const Facet& f) const {
        auto adm = admissible_iwahori(mu);
        std::set<WElement> reps;
        for (const auto& x : adm) reps.insert(max_in_double_coset(x, f));
        return {reps.begin(), reps.end()};
    }

    // ---------------------------------------------------------------- descriptions
    std::string relative_type() const {
        const int r = rank();
        IntMatrix C(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) C(i, j) = dot(rs_.roots[rs_.simple[i]], rs_.coroots[rs_.simple[j]]);
        return cartan_type(C);
    }

    std::string element_string(const WElement& x) const {
        auto d = reduced_decomposition(x);
        std::ostringstream os;
        for (int s : d.word) os << "s" << s << " ";
        os << "w" << kottwitz_label(d.omega);
        return os.str();
    }

private:
    IwahoriWeylGroup() = default;

    void init_w0() {
        const int NR = rs_.num_roots();
        const int dim = lattice_dim();
        const int r = rank();
        auto find_root = [&](const IntVec& f) {
            for (int i = 0; i < NR; ++i)
                if (rs_.roots[i] == f) return i;
            throw ComputeError("W_0 does not preserve the relative roots");
        };
        std::vector<std::vector<int>> sperm(r, std::vector<int>(NR));
        std::vector<IntMatrix> smat(r);
        for (int i = 0; i < r; ++i) {
            int ai = rs_.simple[i];
            for (int b = 0; b < NR; ++b) {
                Int p = dot(rs_.roots[b], rs_.coroots[ai]);
                sperm[i][b] = find_root(sub(rs_.roots[b], scale(rs_.roots[ai], p)));
            }
            IntMatrix m = IntMatrix::identity(dim);
            for (int x = 0; x < dim; ++x)
                for (int y = 0; y < dim; ++y) m(x, y) = checked::sub(m(x, y), checked::mul(rs_.coroots[ai][x], rs_.roots[ai][y]));
            smat[i] = m;
        }
        std::vector<int> id(NR);
        for (int i = 0; i < NR; ++i) id[i] = i;
        w_perm_ = {id};
        w_mat_ = {IntMatrix::identity(dim)};
        w_word_ = {{}};
        perm_index_[id] = 0;
        for (size_t k = 0; k < w_perm_.size(); ++k)
            for (int i = 0; i < r; ++i) {
                std::vector<int> p(NR);
                for (int b = 0; b < NR; ++b) p[b] = w_perm_[k][sperm[i][b]];
                if (perm_index_.count(p)) continue;
                if (w_perm_.size() > 50000) throw ComputeError("finite Weyl group is too large");
                perm_index_[p] = static_cast<int>(w_perm_.size());
                w_perm_.push_back(p);
                w_mat_.push_back(w_mat_[k] * smat[i]);
                auto word = w_word_[k];
                word.push_back(i + 1);
                w_word_.push_back(word);
            }
        const int n = w0_size();
        w_mult_.assign(n, std::vector<int>(n));
        w_inv_.assign(n, 0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                std::vector<int> p(NR);
                for (int c = 0; c < NR; ++c) p[c] = w_perm_[a][w_perm_[b][c]];
                w_mult_[a][b] = perm_index_.at(p);
                if (w_mult_[a][b] == 0) w_inv_[a] = b;
            }
        for (int w = 0; w < n; ++w) {
            int inv = 0;
            for (int a = 0; a < rs_.num_positive; ++a)
                if (w_perm_[w][a] >= rs_.num_positive) ++inv;
            if (inv != w0_length(w)) throw ComputeError("W_0 length mismatch");
        }
    }

    int reflection_index(int root) const {
        const int NR = rs_.num_roots();
        std::vector<int> p(NR);
        for (int b = 0; b < NR; ++b) {
            Int c = dot(rs_.roots[b], rs_.coroots[root]);
            IntVec img = sub(rs_.roots[b], scale(rs_.roots[root], c));
            for (int i = 0; i < NR; ++i)
                if (rs_.roots[i] == img) p[b] = i;
        }
        return perm_index_.at(p);
    }

    void init_nodes() {
        const int r = rank();
        const int N = rs_.num_positive;
        // coefficients of positive roots in the simple roots
        IntMatrix S(lattice_dim(), r);
        for (int i = 0; i < r; ++i)
            for (int x = 0; x < lattice_dim(); ++x) S(x, i) = rs_.roots[rs_.simple[i]][x];
        std::vector<IntVec> coeff(N);
        for (int a = 0; a < N; ++a) {
            auto c = solve_integer(S, rs_.roots[a]);
            if (!c) throw ComputeError("relative root is not an integral combination of simple roots");
            coeff[a] = *c;
        }
        // components of the relative Dynkin diagram
        std::vector<int> comp(r, -1);
        for (int i = 0; i < r; ++i) {
            if (comp[i] >= 0) continue;
            const int c = static_cast<int>(components_.size());
            components_.push_back({});
            std::vector<int> stack{i};
            comp[i] = c;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                components_[c].push_back(x);
                for (int y = 0; y < r; ++y)
                    if (comp[y] < 0 && dot(rs_.roots[rs_.simple[x]], rs_.coroots[rs_.simple[y]]) != 0) {
                        comp[y] = c;
                        stack.push_back(y);
                    }
            }
            std::sort(components_[c].begin(), components_[c].end());
        }
        for (size_t c = 0; c < components_.size(); ++c) {
            int best = -1;
            Int best_h = -1;
            for (int a = 0; a < N; ++a) {
                bool inside = true;
                Int h = 0;
                for (int i = 0; i < r; ++i) {
                    if (coeff[a][i] != 0 && comp[i] != static_cast<int>(c)) inside = false;
                    h += coeff[a][i];
                }
                if (inside && h > best_h) {
                    best_h = h;
                    best = a;
                }
            }
            highest_.push_back(best);
        }
        auto affine_node = [&](int c) {
            Node n;
            n.affine = true;
            n.component = c;
            int theta = highest_[c];
            n.root = theta + N; // -theta
            n.k = 1;
            n.w = reflection_index(theta);
            n.translation = lattice().reduce(rs_.coroots[theta]);
            n.param = rs_.params[theta];
            return n;
        };
        nodes_.clear();
        if (r == 0) return;
        nodes_.push_back(affine_node(0));
        for (int i = 0; i < r; ++i) {
            Node n;
            n.component = comp[i];
            n.root = rs_.simple[i];
            n.k = 0;
            n.w = perm_index_.at(simple_perm(i));
            n.translation = lattice().zero();
            n.param = rs_.params[rs_.simple[i]];
            nodes_.push_back(n);
        }
        for (int c = 1; c < static_cast<int>(components_.size()); ++c) nodes_.push_back(affine_node(c));
    }

    std::vector<int> simple_perm(int i) const {
        const int NR = rs_.num_roots();
        int ai = rs_.simple[i];
        std::vector<int> p(NR);
        for (int b = 0; b < NR; ++b) {
            Int c = dot(rs_.roots[b], rs_.coroots[ai]);
            IntVec img = sub(rs_.roots[b], scale(rs_.roots[ai], c));
            for (int k = 0; k < NR; ++k)
                if (rs_.roots[k] == img) p[b] = k;
        }
        return p;
    }

    /// Parameters must agree on conjugate simple reflections.
    void validate_parameters() const {
        for (int s = 0; s < num_nodes(); ++s)
            for (int t = s + 1; t < num_nodes(); ++t) {
                // order of st, if small and odd, forces equal parameters
                WElement st = mul(simple(s), simple(t));
                WElement p = st;
                int m = 1;
                while (!(p == identity()) && m < 7) {
                    p = mul(p, st);
                    ++m;
                }
                if (p == identity() && m % 2 == 1 && nodes_[s].param != nodes_[t].param)
                    throw ValidationError("parameters: nodes " + std::to_string(s) + " and " + std::to_string(t) +
                                          " are conjugate but have different parameters");
            }
        for (const auto& om : omega_generators()) {
            WElement oi = inverse(om);
            for (int s = 0; s < num_nodes(); ++s) {
                WElement c = mul(mul(om, simple(s)), oi);
                int t = -1;
                for (int u = 0; u < num_nodes(); ++u)
                    if (simple(u) == c) t = u;
                if (t < 0) throw ComputeError("length-zero element does not normalize the simple reflections");
                if (nodes_[t].param != nodes_[s].param)
                    throw ValidationError("parameters: not invariant under length-zero elements");
            }
        }
    }

    GroupDatum datum_;
    RelativeRootSystem rs_;
    std::vector<std::vector<int>> w_perm_;
    std::vector<IntMatrix> w_mat_;
    std::vector<std::vector<int>> w_word_;
    std::vector<std::vector<int>> w_mult_;
    std::vector<int> w_inv_;
    std::map<std::vector<int>, int> perm_index_;
    std::vector<std::vector<int>> components_;
    std::vector<int> highest_;
    std::vector<Node> nodes_;
};

/// Homomorphism of Iwahori-Weyl groups induced by a map of cocharacter lattices.
class IWMorphism {
public:
    /// p_x maps X_*(src) to X_*(dst) and must be Galois equivariant.
    static IWMorphism from_cocharacter_map(IWGroupPtr src, IWGroupPtr dst, const IntMatrix& p_x) {
        IWMorphism m;
        m.src_ = src;
        m.dst_ = dst;
        const auto& rs = src->relative();
        if (p_x.cols() != src->datum().rank() || p_x.rows() != dst->datum().rank())
            throw ValidationError("morphism: lattice map has wrong shape");
        m.lat_ = IntMatrix(dst->lattice_dim(), src->lattice_dim());
        for (int c = 0; c < src->lattice_dim(); ++c) {
            IntVec x = rs.lambda_to_x.col(c);
            auto img = dst->relative().lambda_of_cocharacter(p_x.apply(x));
            if (!img) throw ComputeError("morphism: image of Lambda_M is not Frobenius invariant");
            for (int r = 0; r < dst->lattice_dim(); ++r) m.lat_(r, c) = (*img)[r];
        }
        // finite nodes
        m.node_map_.assign(src->rank() + 1, -1);
        for (int i = 1; i <= src->rank(); ++i) {
            const auto& n = src->node(i);
            IntVec cimg = dst->lattice().reduce(m.lat_.apply(rs.coroots[n.root]));
            if (dst->lattice().is_zero(cimg)) continue;
            int found = -1;
            for (int j = 1; j <= dst->rank(); ++j)
                if (dst->relative().coroots[dst->node(j).root] == cimg) found = j;
            if (found < 0) throw ComputeError("morphism: simple coroot does not map to a simple coroot");
            m.node_map_[i] = found;
        }
        m.w0_map_.assign(src->w0_size(), 0);
        for (int w = 0; w < src->w0_size(); ++w) {
            int img = 0;
            for (int s : src->w0_word(w))
                if (m.node_map_[s] >= 0) img = dst->w0_mul(img, dst->w0_simple(m.node_map_[s]));
            m.w0_map_[w] = img;
        }
        // equivariance on a basis
        for (int w = 0; w < src->w0_size(); ++w)
            for (int c = 0; c < src->lattice_dim(); ++c) {
                IntVec e = unit_vector(src->lattice_dim(), c);
                IntVec a = dst->lattice().reduce(m.lat_.apply(src->w0_apply(w, e)));
                IntVec b = dst->w0_apply(m.w0_map_[w], dst->lattice().reduce(m.lat_.apply(e)));
                if (a != b) throw ComputeError("morphism: lattice map is not W_0-equivariant");
            }
        return m;
    }

    const IWGroupPtr& source() const { return src_; }
    const IWGroupPtr& target() const { return dst_; }
    const IntMatrix& lattice_map() const { return lat_; }

    IntVec map_lattice(const IntVec& lam) const { return dst_->lattice().reduce(lat_.apply(lam)); }
    WElement apply(const WElement& x) const { return {map_lattice(x.lam), w0_map_[x.w]}; }

    /// Image node of each source node (affine nodes included), or -1 if it maps to a non-simple element.
    std::vector<int> node_images() const {
        std::vector<int> out;
        for (int s = 0; s < src_->num_nodes(); ++s) {
            WElement img = apply(src_->simple(s));
            int found = -1;
            for (int t = 0; t < dst_->num_nodes(); ++t)
                if (dst_->simple(t) == img) found = t;
            out.push_back(found);
        }
        return out;
    }

    /// Bijective on Lambda_M and W_0 (checked by index and unimodularity).
    bool is_isomorphism() const {
        if (src_->lattice() != dst_->lattice()) return false;
        if (src_->lattice().torsion_count() == 0 && !is_unimodular(lat_)) return false;
        std::set<int> img(w0_map_.begin(), w0_map_.end());
        return static_cast<int>(img.size()) == dst_->w0_size() && src_->w0_size() == dst_->w0_size();
    }

private:
    IWGroupPtr src_, dst_;
    IntMatrix lat_;
    std::vector<int> node_map_;
    std::vector<int> w0_map_;
};

/// The identification of the Iwahori-Weyl group of Res_{K/F} G_0 with that of G_0 over K.
inline IWMorphism restriction_identification(IWGroupPtr res, IWGroupPtr base) {
    return IWMorphism::from_cocharacter_map(res, base, restriction_sum_map(res->datum()));
}

/// Inverse direction, G_0 over K to Res_{K/F} G_0: the block-0 embedding followed by
/// Frobenius averaging is not integral in general, so the inverse is built from the
/// forward map by inverting the lattice matrix.
inline IWMorphism restriction_identification_inverse(IWGroupPtr res, IWGroupPtr base) {
    IWMorphism fwd = restriction_identification(res, base);
    if (!fwd.is_isomorphism()) throw ComputeError("restriction identification is not an isomorphism");
    IntMatrix inv = inverse_unimodular(fwd.lattice_map());
    // express as a cocharacter map base X_* -> res X_*
    const auto& rb = base->relative();
    const auto& rr = res->relative();
    IntMatrix px(res->datum().rank(), base->datum().rank());
    // Lambda_base coords of each base cocharacter, then to res Lambda, then lift
    for (int c = 0; c < base->datum().rank(); ++c) {
        auto lam = rb.lambda_of_cocharacter(unit_vector(base->datum().rank(), c));
        if (!lam) throw UnsupportedCase("inverse identification needs a Frobenius-fixed base lattice");
        IntVec x = rr.lambda_to_x.apply(inv.apply(*lam));
        for (int r = 0; r < res->datum().rank(); ++r) px(r, c) = x[r];
    }
    return IWMorphism::from_cocharacter_map(base, res, px);
}

} // namespace weilres
