#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weilres/io/json.hpp"
#include "weilres/verify.hpp"

using namespace weilres;

namespace {

enum class Format { json, csv, text };

struct Options {
    std::string descriptor;
    std::string mu;
    std::string lambda;
    std::string facet;
    std::string lift = "ss";
    std::string basis = "bernstein";
    std::string format = "json";
    std::string criteria = "all";
    std::string descriptor_dir = WEILRES_DESCRIPTOR_DIR;
    int rep = -1;
};

IntVec parse_ints(const std::string& s, const std::string& flag) {
    IntVec v;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, ',')) {
        size_t a = item.find_first_not_of(" []"), b = item.find_last_not_of(" []");
        if (a == std::string::npos) continue;
        item = item.substr(a, b - a + 1);
        try {
            size_t used = 0;
            long long x = std::stoll(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            v.push_back(x);
        } catch (const std::exception&) {
            throw ValidationError(flag + ": '" + item + "' is not an integer");
        }
    }
    return v;
}

Format parse_format(const std::string& f) {
    if (f == "json") return Format::json;
    if (f == "csv") return Format::csv;
    if (f == "text") return Format::text;
    throw ValidationError("--format: expected json, csv or text");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string word_string(const std::vector<int>& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
    return s;
}

Facet resolve_facet(const Options& o, const GroupDescriptor& gd, const IwahoriWeylGroup& W) {
    if (o.facet.empty()) return gd.facet(W);
    if (o.facet == "iwahori") return Facet{};
    if (o.facet == "special" || o.facet == "hyperspecial") return W.special_facet();
    std::vector<int> nodes;
    for (Int x : parse_ints(o.facet, "--facet")) nodes.push_back(static_cast<int>(x));
    return W.make_facet(nodes);
}

IntVec parse_cocharacter(const std::string& s, const GroupDatum& g) {
    IntVec mu = parse_ints(s, "--mu");
    if (static_cast<int>(mu.size()) != g.rank())
        throw ValidationError("--mu: expected " + std::to_string(g.rank()) + " entries, got " + std::to_string(mu.size()));
    return mu;
}

LGroupRep resolve_rep(const Options& o, const GroupDescriptor& gd) {
    if (!o.mu.empty()) return LGroupRep::irreducible(gd.group, parse_cocharacter(o.mu, gd.group));
    if (gd.representations.empty()) throw ValidationError("--mu: required (the descriptor lists no representation)");
    int k = o.rep < 0 ? 0 : o.rep;
    if (k >= static_cast<int>(gd.representations.size())) throw ValidationError("--rep: index out of range");
    return gd.representations[static_cast<size_t>(k)].build(gd.group);
}

std::string matrix_string(const IntMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << "]";
    }
    return os.str() + "]";
}

// Hecke element as (reduced word, omega label, exponent, coefficient) rows.
void hecke_csv(std::ostream& os, const Json& terms) {
    os << "reduced_word,omega_label,exponent,coefficient\n";
    for (const auto& t : terms)
        for (const auto& c : t["coeffs"])
            os << csv_field(word_string(t["reduced_word"].get<std::vector<int>>())) << "," << csv_field(t["omega_label"].dump()) << ","
               << c[0].get<int>() << "," << csv_field(c[1].is_string() ? c[1].get<std::string>() : c[1].dump()) << "\n";
}

void hecke_text(std::ostream& os, const CycHecke& h) {
    Json j = hecke_to_json(h);
    if (j.empty()) os << "0\n";
    for (size_t i = 0; i < j.size(); ++i) {
        auto x = element_from_json(*h.group(), j[i]);
        os << (i ? "+ " : "  ") << "(" << h.coeff(x).to_string() << ") T[" << h.group()->element_string(x) << "]\n";
    }
}

int cmd_describe(const Options& o, Format fmt) {
    auto gd = load_descriptor(o.descriptor);
    auto W = gd.iwahori_weyl();
    const auto& g = gd.group;
    const auto& rs = W->relative();
    auto inert = g.galois.inertia_elements();
    Json j;
    j["name"] = gd.name;
    j["absolute_rank"] = g.rank();
    j["semisimple_rank"] = g.root_datum.semisimple_rank();
    j["q"] = g.galois.q;
    j["e"] = g.galois.e;
    j["f"] = g.galois.f;
    j["galois_order"] = g.galois.group_order;
    j["inertia_order"] = inert.size();
    Json gens = Json::array();
    for (const auto& m : g.galois.inertia) gens.push_back(matrix_string(m));
    j["inertia_generators"] = gens;
    j["frobenius"] = matrix_string(g.galois.frobenius);
    j["relative_rank"] = W->rank();
    j["relative_type"] = W->relative_type();
    j["lambda_M"] = W->lattice().describe();
    j["pi1_coinvariants"] = W->pi1().describe();
    j["omega"] = rs.pi1_phi.group.describe();
    j["w0_order"] = W->w0_size();
    Json nodes = Json::array();
    for (int s = 0; s < W->num_nodes(); ++s)
        nodes.push_back(Json{{"index", s}, {"affine", W->node(s).affine}, {"component", W->node(s).component}, {"parameter", W->node(s).param}});
    j["nodes"] = nodes;
    j["facet"] = gd.facet(*W).nodes;
    j["representations"] = gd.representations.size();
    if (fmt == Format::json) {
        std::cout << j.dump(2) << "\n";
    } else if (fmt == Format::csv) {
        std::cout << "key,value\n";
        for (const auto& [k, v] : j.items()) std::cout << k << "," << csv_field(v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else {
        std::cout << gd.name << ": relative type " << W->relative_type() << ", pi1 = " << W->pi1().describe() << ", Omega = "
                  << rs.pi1_phi.group.describe() << "\n";
        std::cout << "  absolute rank " << g.rank() << ", Lambda_M = " << W->lattice().describe() << ", |W_0| = " << W->w0_size()
                  << "\n";
        std::cout << "  q = " << g.galois.q << ", e = " << g.galois.e << ", f = " << g.galois.f << "\n";
        if (inert.size() > 1) {
            std::cout << "  inertia of order " << inert.size() << " acts on X_* by";
            for (const auto& m : g.galois.inertia) std::cout << " " << matrix_string(m);
            std::cout << "\n";
        } else {
            std::cout << "  inertia acts trivially\n";
        }
        std::cout << "  affine nodes:";
        if (W->num_nodes() == 0) std::cout << " none";
        for (int s = 0; s < W->num_nodes(); ++s)
            std::cout << " " << s << (W->node(s).affine ? "*" : "") << "(L=" << W->node(s).param << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_adm(const Options& o, Format fmt) {
    auto gd = load_descriptor(o.descriptor);
    auto W = gd.iwahori_weyl();
    if (o.mu.empty()) throw ValidationError("--mu: required");
    auto lam = W->relative().lambda_of_cocharacter(parse_cocharacter(o.mu, gd.group));
    if (!lam) throw UnsupportedCase("adm: the class of mu is not Frobenius-stable");
    Facet f = resolve_facet(o, gd, *W);
    auto adm = W->admissible_set(W->dominant(*lam).first, f);
    Json elems = elements_to_json(*W, adm);
    if (fmt == Format::json) {
        std::cout << elems.dump(2) << "\n";
    } else if (fmt == Format::csv) {
        std::cout << "length,reduced_word,omega_label\n";
        for (const auto& e : elems)
            std::cout << e["reduced_word"].size() << "," << csv_field(word_string(e["reduced_word"].get<std::vector<int>>())) << ","
                      << csv_field(e["omega_label"].dump()) << "\n";
    } else {
        std::cout << adm.size() << " admissible elements\n";
        for (const auto& x : sorted_elements(*W, adm)) std::cout << "  " << W->element_string(x) << "\n";
    }
    return 0;
}

int cmd_bernstein(const Options& o, Format fmt) {
    auto gd = load_descriptor(o.descriptor);
    auto W = gd.iwahori_weyl();
    IntVec lam;
    if (!o.lambda.empty()) {
        lam = parse_ints(o.lambda, "--lambda");
        if (static_cast<int>(lam.size()) != W->lattice_dim())
            throw ValidationError("--lambda: expected " + std::to_string(W->lattice_dim()) + " coordinates on Lambda_M");
    } else if (!o.mu.empty()) {
        auto l = W->relative().lambda_of_cocharacter(parse_cocharacter(o.mu, gd.group));
        if (!l) throw UnsupportedCase("bernstein: the class of mu is not Frobenius-stable");
        lam = *l;
    } else {
        throw ValidationError("--lambda: required (or --mu)");
    }
    lam = W->dominant(lam).first;
    CycHecke z = cyc_bernstein_z(W, lam);
    Json j;
    j["lambda"] = vec_to_json(lam);
    Json orbit = Json::array();
    for (const auto& m : W->orbit(lam)) orbit.push_back(vec_to_json(m));
    j["orbit"] = orbit;
    j["element"] = hecke_to_json(z);
    if (fmt == Format::json) {
        std::cout << j.dump(2) << "\n";
    } else if (fmt == Format::csv) {
        hecke_csv(std::cout, j["element"]);
    } else {
        std::cout << "z_" << IwahoriWeylGroup::vec_label(lam) << " =\n";
        hecke_text(std::cout, z);
    }
    return 0;
}

int cmd_testfn(const Options& o, Format fmt) {
    auto gd = load_descriptor(o.descriptor);
    auto W = gd.iwahori_weyl();
    Facet f = resolve_facet(o, gd, *W);
    LGroupRep rep = resolve_rep(o, gd);
    TestFunction t;
    if (o.lift == "ss") {
        t = z_ss(W, rep, f);
    } else {
        IntVec k = parse_ints(o.lift, "--lift");
        if (k.size() != 1 || k[0] < 0 || k[0] >= num_lifts(rep))
            throw ValidationError("--lift: expected ss or an index below " + std::to_string(num_lifts(rep)));
        t = z_phi(W, rep, f, static_cast<int>(k[0]));
    }
    BasisChoice basis;
    if (o.basis == "bernstein") basis = BasisChoice::bernstein;
    else if (o.basis == "iwahori_matsumoto") basis = BasisChoice::iwahori_matsumoto;
    else throw ValidationError("--basis: expected bernstein or iwahori_matsumoto");
    Json j = testfn_to_json(t, basis);
    if (fmt == Format::json) {
        std::cout << j.dump(2) << "\n";
    } else if (fmt == Format::csv) {
        if (basis == BasisChoice::iwahori_matsumoto) {
            hecke_csv(std::cout, j["coefficients"]);
        } else {
            std::cout << "lambda,exponent,coefficient\n";
            for (const auto& c : j["coefficients"])
                for (const auto& term : c["coeffs"])
                    std::cout << csv_field(c["lambda"].dump()) << "," << term[0].get<int>() << ","
                              << csv_field(term[1].is_string() ? term[1].get<std::string>() : term[1].dump()) << "\n";
        }
    } else {
        std::cout << "test function z^" << t.lift << " at facet " << j["facet"].dump() << ", d = " << t.d << ", parity " << t.parity
                  << "\n";
        for (const auto& [lam, c] : t.bernstein) std::cout << "  (" << c.to_string() << ") z_" << IwahoriWeylGroup::vec_label(lam) << "\n";
        std::cout << "element:\n";
        hecke_text(std::cout, t.element);
        std::cout << "admissible_check: " << j["admissible_check"]["status"].get<std::string>()
                  << ", integrality_report: " << j["integrality_report"]["status"].get<std::string>() << "\n";
    }
    return 0;
}

int cmd_verify(const Options& o, Format fmt) {
    std::vector<int> select;
    if (o.criteria != "all")
        for (Int x : parse_ints(o.criteria, "--criteria")) {
            if (x < 1 || x > 11) throw ValidationError("--criteria: criteria are numbered 1 to 11");
            select.push_back(static_cast<int>(x));
        }
    verify::Context ctx{o.descriptor_dir, {}};
    bool ok = true;
    Json rows = Json::array();
    if (fmt == Format::csv) std::cout << "criterion,name,status,seconds,detail\n";
    for (const auto& r : verify::run(ctx, select)) {
        ok = ok && r.pass;
        if (fmt == Format::text) std::cout << verify::format_line(r) << std::endl;
        if (fmt == Format::csv)
            std::cout << r.id << "," << csv_field(r.name) << "," << (r.pass ? "pass" : "fail") << "," << r.seconds << ","
                      << csv_field(r.detail) << std::endl;
        rows.push_back(Json{{"criterion", r.id}, {"name", r.name}, {"status", r.pass ? "pass" : "fail"}, {"detail", r.detail}});
    }
    if (fmt == Format::json) std::cout << rows.dump(2) << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Test-function combinatorics for Weil-restricted groups"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c, bool needs_descriptor) {
        auto* d = c->add_option("--descriptor", o.descriptor, "group descriptor (TOML)");
        if (needs_descriptor) d->required();
        c->add_option("--format", o.format, "json, csv or text")->capture_default_str();
    };
    auto* describe = app.add_subcommand("describe", "summarize a group descriptor");
    add_common(describe, true);
    auto* adm = app.add_subcommand("adm", "admissible set of mu at a facet");
    add_common(adm, true);
    adm->add_option("--mu", o.mu, "cocharacter, comma separated");
    adm->add_option("--facet", o.facet, "node list, 'iwahori' or 'special'");
    auto* bern = app.add_subcommand("bernstein", "orbit sum z_lambda in the Iwahori-Matsumoto basis");
    add_common(bern, true);
    bern->add_option("--lambda", o.lambda, "element of Lambda_M, comma separated");
    bern->add_option("--mu", o.mu, "cocharacter whose class in Lambda_M is used");
    auto* tf = app.add_subcommand("testfn", "test function z^Phi or z^ss");
    add_common(tf, true);
    tf->add_option("--mu", o.mu, "highest weight, comma separated (default: first descriptor representation)");
    tf->add_option("--rep", o.rep, "index of a descriptor representation");
    tf->add_option("--facet", o.facet, "node list, 'iwahori' or 'special'");
    tf->add_option("--lift", o.lift, "inertia lift index or ss")->capture_default_str();
    tf->add_option("--basis", o.basis, "bernstein or iwahori_matsumoto")->capture_default_str();
    auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
    add_common(ver, false);
    ver->add_option("--criteria", o.criteria, "'all' or a comma separated list of criterion numbers")->capture_default_str();
    ver->add_option("--descriptors", o.descriptor_dir, "descriptor library directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        Format fmt = parse_format(o.format);
        if (ver->parsed() && o.format == "json" && !ver->count("--format")) fmt = Format::text;
        if (describe->parsed()) return cmd_describe(o, fmt);
        if (adm->parsed()) return cmd_adm(o, fmt);
        if (bern->parsed()) return cmd_bernstein(o, fmt);
        if (tf->parsed()) return cmd_testfn(o, fmt);
        return cmd_verify(o, fmt);
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedCase& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 1;
    } catch (const ComputeError& e) {
        std::cerr << "compute error: " << e.what() << "\n";
        return 1;
    }
}
