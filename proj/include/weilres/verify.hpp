#pragma once

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <random>
#include <string>
#include <vector>

#include "weilres/io/descriptor.hpp"
#include "weilres/testfn.hpp"

namespace weilres::verify {

struct Limits {
    double centrality_seconds = 60.0;
    double admissible_seconds = 120.0;
    int centrality_orbits = 20;
    Int centrality_height = 8;
    int evaluation_characters = 50;
    int boxtimes_samples = 100;
    int boxtimes_max_dim = 4;
    int boxtimes_max_n = 3;
    Int freudenthal_height = 12;
    std::uint64_t seed = 20240601;
};

struct Result {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Context {
    std::filesystem::path descriptor_dir;
    Limits limits;

    GroupDescriptor load(const std::string& file) const { return load_descriptor(descriptor_dir / file); }

    std::vector<GroupDescriptor> all() const {
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(descriptor_dir))
            if (e.path().extension() == ".toml") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        std::vector<GroupDescriptor> out;
        for (const auto& f : files) out.push_back(load_descriptor(f));
        return out;
    }
};

namespace detail {

/// Dominant elements of Lambda_M with 0 <= height <= h in a coordinate box.
inline std::vector<IntVec> dominant_in_box(const IwahoriWeylGroup& W, Int h, Int box) {
    const int n = W.lattice_dim();
    std::set<IntVec> out;
    if (n == 0) return {IntVec{}};
    IntVec v(n, -box);
    while (true) {
        IntVec r = W.lattice().reduce(v);
        if (W.is_dominant(r)) {
            Int ht = W.height(r);
            if (ht >= 0 && ht <= h) out.insert(r);
        }
        int i = 0;
        while (i < n && v[i] == box) v[i++] = -box;
        if (i == n) break;
        ++v[i];
    }
    return {out.begin(), out.end()};
}

inline bool is_minuscule(const BasedRootDatum& d, const IntVec& mu) {
    for (int a = 0; a < d.num_roots(); ++a) {
        Int p = d.root_on(a, mu);
        if (p < -1 || p > 1) return false;
    }
    return true;
}

inline IntVec first_unit(int n) {
    IntVec v(n, 0);
    v[0] = 1;
    return v;
}

// Extended affine Weyl group of GL_n as affine permutations f: Z -> Z, f(i + n) = f(i) + n,
// stored by the window f(1..n). Independent of the Iwahori-Weyl machinery.
struct AffinePerm {
    std::vector<Int> win;
    friend bool operator<(const AffinePerm& a, const AffinePerm& b) { return a.win < b.win; }
    friend bool operator==(const AffinePerm&, const AffinePerm&) = default;
};

inline Int aperm_at(const AffinePerm& f, Int i) {
    const Int n = static_cast<Int>(f.win.size());
    Int r = checked::mod(i - 1, n), q = (i - 1 - r) / n;
    return f.win[static_cast<size_t>(r)] + q * n;
}

inline AffinePerm aperm_compose(const AffinePerm& f, const AffinePerm& g) {
    AffinePerm h;
    for (size_t i = 0; i < f.win.size(); ++i) h.win.push_back(aperm_at(f, aperm_at(g, static_cast<Int>(i) + 1)));
    return h;
}

// s_i swaps i and i+1 (mod n); i = 0 swaps 0 and 1, i.e. n and n+1 shifted.
inline AffinePerm aperm_simple(int n, int i) {
    AffinePerm s;
    for (int k = 1; k <= n; ++k) s.win.push_back(k);
    if (i == 0) {
        s.win[0] = 0;
        s.win[static_cast<size_t>(n - 1)] = n + 1;
    } else {
        std::swap(s.win[static_cast<size_t>(i - 1)], s.win[static_cast<size_t>(i)]);
    }
    return s;
}

inline AffinePerm aperm_translation(const IntVec& lam) {
    const Int n = static_cast<Int>(lam.size());
    AffinePerm t;
    for (Int i = 0; i < n; ++i) t.win.push_back(i + 1 + n * lam[static_cast<size_t>(i)]);
    return t;
}

inline Int aperm_length(const AffinePerm& f) {
    const Int n = static_cast<Int>(f.win.size());
    Int l = 0;
    for (Int i = 1; i <= n; ++i)
        for (Int j = i + 1; j <= n; ++j) {
            Int a = aperm_at(f, i), b = aperm_at(f, j);
            // inversions between i and j + k n for all k
            Int d = b - a;
            l += d > 0 ? d / n : (-d) / n + 1;
        }
    return l;
}

/// Subword oracle: |union over the orbit of mu of the lower Bruhat intervals of t^lam|.
inline size_t subword_admissible_count(const IntVec& mu) {
    const int n = static_cast<int>(mu.size());
    std::set<IntVec> orbit;
    IntVec p = mu;
    std::sort(p.begin(), p.end());
    do orbit.insert(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::set<AffinePerm> adm;
    for (const auto& lam : orbit) {
        AffinePerm f = aperm_translation(lam);
        std::vector<int> word;
        AffinePerm rest = f;
        bool found = true;
        while (found) {
            found = false;
            for (int i = 0; i < n; ++i) {
                AffinePerm g = aperm_compose(aperm_simple(n, i), rest);
                if (aperm_length(g) < aperm_length(rest)) {
                    word.push_back(i);
                    rest = g;
                    found = true;
                    break;
                }
            }
        }
        // f = s_word[0] ... s_word[k-1] * rest with rest of length zero
        const size_t k = word.size();
        for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
            AffinePerm x = rest;
            for (size_t j = k; j-- > 0;)
                if (mask >> j & 1) x = aperm_compose(aperm_simple(n, word[j]), x);
            adm.insert(x);
        }
    }
    return adm.size();
}

} // namespace detail

using Outcome = std::pair<bool, std::string>;

inline Result run_timed(int id, std::string name, const std::function<Outcome()>& body) {
    Result r;
    r.id = id;
    r.name = std::move(name);
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [ok, detail] = body();
        r.pass = ok;
        r.detail = std::move(detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline Result centrality(const Context& ctx) {
    Result r = run_timed(1, "centrality of z_lambda", [&]() -> Outcome {
        std::mt19937_64 rng(ctx.limits.seed);
        size_t groups = 0, checked = 0;
        for (const auto& gd : ctx.all()) {
            auto W = gd.iwahori_weyl();
            if (W->lattice_dim() > 2) continue;
            ++groups;
            auto cands = detail::dominant_in_box(*W, ctx.limits.centrality_height, 4);
            std::shuffle(cands.begin(), cands.end(), rng);
            if (static_cast<int>(cands.size()) > ctx.limits.centrality_orbits) cands.resize(static_cast<size_t>(ctx.limits.centrality_orbits));
            for (const auto& lam : cands) {
                auto z = bernstein_z<ZZ>(W, lam);
                ++checked;
                if (!is_central(z)) return Outcome{false, gd.name + ": z_" + IwahoriWeylGroup::vec_label(lam) + " is not central"};
            }
        }
        return Outcome{true, std::to_string(checked) + " orbit sums over " + std::to_string(groups) + " descriptors"};
    });
    if (r.pass && r.seconds > ctx.limits.centrality_seconds) {
        r.pass = false;
        r.detail += "; runtime limit exceeded";
    }
    return r;
}

inline Result bernstein_evaluation(const Context& ctx) {
    return run_timed(2, "Bernstein evaluation", [&]() -> Outcome {
        std::mt19937_64 rng(ctx.limits.seed + 2);
        size_t evals = 0;
        for (const auto& gd : ctx.all()) {
            auto W = gd.iwahori_weyl();
            if (W->lattice_dim() > 2) continue;
            const auto& rs = W->relative();
            auto cands = detail::dominant_in_box(*W, 4, 2);
            std::shuffle(cands.begin(), cands.end(), rng);
            if (cands.size() > 3) cands.resize(3);
            for (const auto& lam : cands) {
                auto z = bernstein_z<Cyclotomic>(W, lam);
                auto e = peel_central<Cyclotomic>(z); // alcove-walk basis, independent of theta
                for (int k = 0; k < ctx.limits.evaluation_characters; ++k) {
                    auto chi = UnramifiedCharacter::random(rs, rng);
                    CycLaurent lhs = evaluate_expansion<Cyclotomic, Cyclotomic>(
                        *W, e, [&](const IntVec& m) { return chi(rs, m); }, [](const Cyclotomic& c) { return c; });
                    Cyclotomic rhs;
                    for (const auto& m : W->orbit(lam)) rhs += chi(rs, m);
                    ++evals;
                    if (!(lhs == CycLaurent(rhs)))
                        return Outcome{false, gd.name + ": evaluation of z_" + IwahoriWeylGroup::vec_label(lam) + " differs"};
                }
            }
        }
        return Outcome{true, std::to_string(evals) + " evaluations"};
    });
}

inline Result admissible_counts(const Context& ctx) {
    Result r = run_timed(3, "admissible-set counts", [&]() -> Outcome {
        std::string detail;
        for (int n = 2; n <= 4; ++n) {
            auto gd = ctx.load("gl" + std::to_string(n) + ".toml");
            auto W = gd.iwahori_weyl();
            IntVec mu = detail::first_unit(n);
            size_t lib = W->admissible_iwahori(W->relative().lambda_of_cocharacter(mu).value()).size();
            size_t oracle = detail::subword_admissible_count(mu);
            size_t expect = (size_t{1} << n) - 1;
            detail += (detail.empty() ? "" : ", ") + ("GL" + std::to_string(n) + ": " + std::to_string(lib));
            if (lib != expect || oracle != expect)
                return Outcome{false, "GL" + std::to_string(n) + ": library " + std::to_string(lib) + ", oracle " +
                                            std::to_string(oracle) + ", expected " + std::to_string(expect)};
        }
        return Outcome{true, detail};
    });
    if (r.pass && r.seconds > ctx.limits.admissible_seconds) {
        r.pass = false;
        r.detail += "; runtime limit exceeded";
    }
    return r;
}

inline Result support(const Context& ctx) {
    return run_timed(4, "support in admissible set", [&]() -> Outcome {
        size_t pairs = 0;
        for (const auto& gd : ctx.all()) {
            auto W = gd.iwahori_weyl();
            std::vector<Facet> facets{gd.facet(*W)};
            if (W->rank() > 0 && !(facets[0] == W->special_facet())) facets.push_back(W->special_facet());
            for (const auto& rd : gd.representations) {
                LGroupRep rep = rd.build(gd.group);
                bool minuscule = !rep.highest_weights.empty();
                for (const auto& h : rep.highest_weights) minuscule = minuscule && detail::is_minuscule(gd.group.root_datum, h);
                if (!minuscule) continue;
                for (const auto& f : facets) {
                    auto t = z_ss(W, rep, f);
                    auto s = support_in_admissible(t, t.mu_lambda);
                    ++pairs;
                    if (!s.contained) return Outcome{false, gd.name + ": support leaves the admissible set"};
                }
            }
        }
        return Outcome{pairs > 0, std::to_string(pairs) + " (group, mu, facet) triples"};
    });
}

inline Result integrality(const Context& ctx) {
    return run_timed(5, "integrality of q^{d/2} z^ss", [&]() -> Outcome {
        size_t cases = 0;
        for (int n : {2, 3}) {
            auto gd = ctx.load("gl" + std::to_string(n) + ".toml");
            auto W = gd.iwahori_weyl();
            // dominant mu with entries in [0, 2] and last entry 0, <2 rho, mu> <= 4
            std::vector<IntVec> mus;
            IntVec v(n, 0);
            while (true) {
                if (gd.group.root_datum.is_dominant(v) && v.back() == 0 && dot(gd.group.root_datum.two_rho(), v) <= 4) mus.push_back(v);
                int i = 0;
                while (i < n && v[i] == 2) v[i++] = 0;
                if (i == n) break;
                ++v[i];
            }
            for (const auto& mu : mus)
                for (const auto& f : {Facet{}, W->special_facet()}) {
                    auto t = z_ss(W, LGroupRep::irreducible(gd.group, mu), f);
                    auto rep = check_integrality(t);
                    ++cases;
                    if (!rep.integral)
                        return Outcome{false, gd.name + " mu=" + IwahoriWeylGroup::vec_label(mu) + ": " + rep.offending.front()};
                }
        }
        return Outcome{true, std::to_string(cases) + " (group, mu, facet) cases"};
    });
}

inline Result averaging(const Context& ctx) {
    return run_timed(6, "averaging over inertia lifts", [&]() -> Outcome {
        std::string detail;
        for (const char* file : {"torus_res2.toml", "torus_res3.toml", "torus_norm1.toml"}) {
            auto gd = ctx.load(file);
            auto W = gd.iwahori_weyl();
            for (const auto& rd : gd.representations) {
                LGroupRep rep = rd.build(gd.group);
                std::vector<CycHecke> fam;
                for (int k = 0; k < num_lifts(rep); ++k) fam.push_back(z_phi(W, rep, Facet{}, k).element);
                auto avg = average_over_inertia(fam, fam.size());
                auto inv = z_ss(W, rep, Facet{}).element;
                if (!(avg == inv)) return Outcome{false, gd.name + ": average differs from invariants-first"};
                detail += (detail.empty() ? "" : ", ") + gd.name + " (" + std::to_string(fam.size()) + " lifts)";
            }
        }
        return Outcome{true, detail};
    });
}

inline CycMatrix random_cyc_matrix(std::mt19937_64& rng, int d) {
    CycMatrix m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            long a = static_cast<long>(rng() % 7) - 3;
            int N = static_cast<int>(1 + rng() % 4);
            m(i, j) = Cyclotomic::root_of_unity(N, static_cast<Int>(rng() % static_cast<unsigned>(N))).scaled(Rational(a));
        }
    return m;
}

inline Result saito_shintani(const Context& ctx) {
    return run_timed(7, "boxtimes-induced trace", [&]() -> Outcome {
        std::mt19937_64 rng(ctx.limits.seed + 7);
        for (int s = 0; s < ctx.limits.boxtimes_samples; ++s) {
            int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(ctx.limits.boxtimes_max_dim));
            int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(ctx.limits.boxtimes_max_n));
            CycMatrix phi = random_cyc_matrix(rng, d); // Phi^n on V_0
            CycMatrix big = boxtimes_frobenius(phi, n);
            if (big.rows() != static_cast<int>(std::pow(d, n))) return Outcome{false, std::string("wrong dimension")};
            if (!(big.trace() == phi.trace())) return Outcome{false, "trace mismatch at sample " + std::to_string(s)};
        }
        return Outcome{true, std::to_string(ctx.limits.boxtimes_samples) + " random (V_0, n)"};
    });
}

inline Result product_factorization(const Context& ctx) {
    return run_timed(8, "product factorization", [&]() -> Outcome {
        auto prod = ctx.load("gl2xgl2.toml");
        auto fac = ctx.load("gl2.toml");
        auto W = prod.iwahori_weyl();
        auto W1 = fac.iwahori_weyl();
        const int n1 = W1->datum().rank();
        IntMatrix i1(2 * n1, n1), i2(2 * n1, n1), p1(n1, 2 * n1), p2(n1, 2 * n1);
        for (int a = 0; a < n1; ++a) {
            i1(a, a) = 1;
            i2(n1 + a, a) = 1;
            p1(a, a) = 1;
            p2(a, n1 + a) = 1;
        }
        auto inc1 = IWMorphism::from_cocharacter_map(W1, W, i1), inc2 = IWMorphism::from_cocharacter_map(W1, W, i2);
        auto pr1 = IWMorphism::from_cocharacter_map(W, W1, p1), pr2 = IWMorphism::from_cocharacter_map(W, W1, p2);
        size_t cases = 0;
        for (const auto& rd : prod.representations) {
            const IntVec& mu = *rd.highest_weight;
            IntVec m1(mu.begin(), mu.begin() + n1), m2(mu.begin() + n1, mu.end());
            auto V = rd.build(prod.group);
            auto V1 = LGroupRep::irreducible(fac.group, m1), V2 = LGroupRep::irreducible(fac.group, m2);
            for (const auto& f : {Facet{}, W->special_facet()}) {
                Facet f1 = f.is_iwahori() ? Facet{} : W1->special_facet();
                for (int lift : {0, -1}) {
                    auto z = lift < 0 ? z_ss(W, V, f) : z_phi(W, V, f, lift);
                    auto z1 = lift < 0 ? z_ss(W1, V1, f1) : z_phi(W1, V1, f1, lift);
                    auto z2 = lift < 0 ? z_ss(W1, V2, f1) : z_phi(W1, V2, f1, lift);
                    auto a = pushforward(z1.element, inc1), b = pushforward(z2.element, inc2);
                    ++cases;
                    if (!(a * b == z.element)) return Outcome{false, "z differs from the tensor of factors for mu " + IwahoriWeylGroup::vec_label(mu)};
                    if (!(b * a == z.element)) return Outcome{false, "factor images do not commute"};
                    if (!(pushforward(a, pr1) == z1.element) || !(pushforward(b, pr2) == z2.element))
                        return Outcome{false, "projection does not recover the factor"};
                    if (z.d != z1.d + z2.d || z.parity != (z1.parity + z2.parity) % 2)
                        return Outcome{false, "d or parity is not additive"};
                }
            }
        }
        return Outcome{true, std::to_string(cases) + " cases (z^Phi and z^ss, Iwahori and hyperspecial)"};
    });
}

inline Result adjoint(const Context& ctx) {
    return run_timed(9, "adjoint transport", [&]() -> Outcome {
        size_t supp = 0;
        for (int n : {2, 3}) {
            auto gd = ctx.load("gl" + std::to_string(n) + ".toml");
            auto r = adjoint_transport(gd.group, detail::first_unit(n));
            if (!r.equal) return Outcome{false, "GL" + std::to_string(n) + ": p_* z differs from z for the adjoint group"};
            if (!r.slice_bijective) return Outcome{false, "GL" + std::to_string(n) + ": slice map is not bijective"};
            supp += r.support_size;
        }
        return Outcome{true, "GL2, GL3 minuscule; " + std::to_string(supp) + " support elements"};
    });
}

inline Result restriction(const Context& ctx) {
    return run_timed(10, "Weil-restriction identification", [&]() -> Outcome {
        auto res = ctx.load("res2_gl2.toml");
        auto base = ctx.load("gl2.toml");
        auto Wr = res.iwahori_weyl(), Wb = base.iwahori_weyl();
        auto fwd = restriction_identification(Wr, Wb);
        auto back = restriction_identification_inverse(Wr, Wb);
        if (!fwd.is_isomorphism() || !back.is_isomorphism()) return Outcome{false, std::string("not an isomorphism")};
        for (int s = 0; s < Wr->num_nodes(); ++s)
            if (Wr->node(s).param != Wb->node(fwd.node_images()[s]).param) return Outcome{false, std::string("parameters differ")};
        // lengths, Bruhat order and Kottwitz fibres on a ball
        std::vector<WElement> ball;
        for (const auto& lam : detail::dominant_in_box(*Wr, 4, 3))
            for (const auto& mu : Wr->orbit(lam))
                for (int w = 0; w < Wr->w0_size(); ++w) ball.push_back(Wr->mul(Wr->translation(mu), Wr->finite(w)));
        for (const auto& x : ball) {
            auto y = fwd.apply(x);
            if (Wr->length(x) != Wb->length(y)) return Outcome{false, "length differs at " + Wr->element_string(x)};
            if (!(back.apply(y) == x)) return Outcome{false, std::string("maps are not mutually inverse")};
        }
        for (size_t i = 0; i < ball.size(); i += 7)
            for (size_t j = 0; j < ball.size(); j += 11) {
                const auto &x = ball[i], &y = ball[j];
                bool kr = Wr->kottwitz(x) == Wr->kottwitz(y), kb = Wb->kottwitz(fwd.apply(x)) == Wb->kottwitz(fwd.apply(y));
                if (kr != kb) return Outcome{false, std::string("Kottwitz fibres differ")};
                if (Wr->bruhat_leq(x, y) != Wb->bruhat_leq(fwd.apply(x), fwd.apply(y))) return Outcome{false, std::string("Bruhat order differs")};
            }
        // centres: Bernstein orbit sums and test functions, both directions
        size_t moved = 0;
        for (const auto& lam : detail::dominant_in_box(*Wr, 6, 3)) {
            auto zr = bernstein_z<Cyclotomic>(Wr, lam);
            auto zb = bernstein_z<Cyclotomic>(Wb, fwd.map_lattice(lam));
            if (!(pushforward(zr, fwd) == zb) || !(pushforward(zb, back) == zr))
                return Outcome{false, "z_" + IwahoriWeylGroup::vec_label(lam) + " is not transported"};
            ++moved;
        }
        for (auto [mu, mu0] : std::vector<std::pair<IntVec, IntVec>>{{{1, 0, 0, 0}, {1, 0}}, {{1, 0, 1, 0}, {2, 0}}}) {
            for (const auto& f : {Facet{}, Wr->special_facet()}) {
                Facet f0 = f.is_iwahori() ? Facet{} : Wb->special_facet();
                auto zr = z_ss(Wr, LGroupRep::irreducible(res.group, mu), f);
                auto zb = z_ss(Wb, LGroupRep::irreducible(base.group, mu0), f0);
                if (!(pushforward(zr.element, fwd) == zb.element) || !(pushforward(zb.element, back) == zr.element))
                    return Outcome{false, "z^ss for mu " + IwahoriWeylGroup::vec_label(mu) + " is not transported"};
                ++moved;
            }
        }
        return Outcome{true, std::to_string(ball.size()) + " elements compared, " + std::to_string(moved) + " central elements transported"};
    });
}

inline Result freudenthal(const Context& ctx) {
    return run_timed(11, "Freudenthal vs Weyl character", [&]() -> Outcome {
        std::vector<BasedRootDatum> data{sl_datum(2), sl_datum(3), sl_datum(4), gl_datum(2), gl_datum(3), pgl_datum(3), pgl_datum(4),
                                         simply_connected_datum("B2", cartan_matrix('B', 2)),
                                         simply_connected_datum("G2", cartan_matrix('G', 2)),
                                         simply_connected_datum("B3", cartan_matrix('B', 3)),
                                         simply_connected_datum("C3", cartan_matrix('C', 3))};
        const Int H = ctx.limits.freudenthal_height;
        size_t count = 0;
        for (const auto& d : data) {
            const int r = d.rank();
            const Int box = H;
            IntVec v(r, 0);
            // dominant mu with <2 rho, mu> <= H; central directions (GL) bounded by |entry| <= 2
            IntVec lo(r, -box), hi(r, box);
            v = lo;
            while (true) {
                bool central_ok = true;
                if (d.semisimple_rank() < r)
                    for (Int x : v) central_ok = central_ok && x >= -2 && x <= 2;
                if (central_ok && d.is_dominant(v) && dot(d.two_rho(), v) <= H) {
                    auto f = weight_multiplicities(d, v);
                    if (f != weyl_character(d, v)) return Outcome{false, d.name() + " mu=" + IwahoriWeylGroup::vec_label(v)};
                    if (Rational(static_cast<long>(character_dimension(f))) != weyl_dimension(d, v))
                        return Outcome{false, d.name() + " dimension mismatch at mu=" + IwahoriWeylGroup::vec_label(v)};
                    ++count;
                }
                int i = 0;
                while (i < r && v[i] == hi[i]) {
                    v[i] = lo[i];
                    ++i;
                }
                if (i == r) break;
                ++v[i];
            }
        }
        auto adj = weight_multiplicities(sl_datum(3), {1, 1});
        if (adj.at(IntVec{0, 0}) != 2) return Outcome{false, std::string("A2 adjoint zero weight multiplicity is not 2")};
        return Outcome{true, std::to_string(count) + " highest weights; A2 adjoint zero weight = 2"};
    });
}

inline std::vector<std::function<Result(const Context&)>> criteria() {
    return {centrality, bernstein_evaluation, admissible_counts, support, integrality, averaging,
            saito_shintani, product_factorization, adjoint, restriction, freudenthal};
}

/// Runs the selected criteria (empty selection = all), in order.
inline std::vector<Result> run(const Context& ctx, const std::vector<int>& select = {}) {
    auto all = criteria();
    std::vector<Result> out;
    for (size_t i = 0; i < all.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        if (!select.empty() && std::find(select.begin(), select.end(), id) == select.end()) continue;
        out.push_back(all[i](ctx));
    }
    return out;
}

inline std::string format_line(const Result& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.name << "): " << r.detail << " [" << std::fixed
       << std::setprecision(2) << r.seconds << " s]";
    return os.str();
}

} // namespace weilres::verify
