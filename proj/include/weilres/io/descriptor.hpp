#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <toml.hpp>

#include "weilres/dualside.hpp"
#include "weilres/iwahori.hpp"

namespace weilres {

/// Representation entry of a descriptor: a highest weight (permutation Galois action)
/// or an explicit weight basis with Galois matrices.
struct RepresentationDescriptor {
    std::optional<IntVec> highest_weight;
    std::vector<IntVec> weights;
    std::vector<CycMatrix> inertia;
    std::optional<CycMatrix> frobenius;

    LGroupRep build(const GroupDatum& g) const {
        if (highest_weight) return LGroupRep::irreducible(g, *highest_weight);
        return LGroupRep::explicit_rep(g, weights, inertia, frobenius ? *frobenius : CycMatrix::identity(static_cast<int>(weights.size())));
    }
};

struct GroupDescriptor {
    std::string name;
    GroupDatum group;
    std::optional<std::vector<int>> parameters;
    std::optional<std::vector<int>> facet_nodes;
    std::vector<RepresentationDescriptor> representations;
    std::filesystem::path source;

    IWGroupPtr iwahori_weyl() const { return IwahoriWeylGroup::build(group, parameters); }
    Facet facet(const IwahoriWeylGroup& W) const { return facet_nodes ? W.make_facet(*facet_nodes) : Facet{}; }
};

namespace detail {

class TomlReader {
public:
    TomlReader(const toml::table& t, std::string prefix) : t_(t), prefix_(std::move(prefix)) {}

    std::string field(const std::string& key) const { return prefix_.empty() ? key : prefix_ + "." + key; }
    bool has(const std::string& key) const { return t_.contains(key); }

    const toml::table* table(const std::string& key) const {
        if (!has(key)) return nullptr;
        auto* p = t_.get(key)->as_table();
        if (!p) throw ValidationError(field(key) + ": expected a table");
        return p;
    }

    static Int as_int(const toml::node& n, const std::string& where) {
        auto v = n.value<int64_t>();
        if (!v) throw ValidationError(where + ": expected an integer");
        return *v;
    }

    Int integer(const std::string& key) const {
        if (!has(key)) throw ValidationError(field(key) + ": missing");
        return as_int(*t_.get(key), field(key));
    }
    Int integer(const std::string& key, Int dflt) const { return has(key) ? integer(key) : dflt; }

    std::string string(const std::string& key) const {
        if (!has(key)) throw ValidationError(field(key) + ": missing");
        auto v = t_.get(key)->value<std::string>();
        if (!v) throw ValidationError(field(key) + ": expected a string");
        return *v;
    }

    static const toml::array& as_array(const toml::node& n, const std::string& where) {
        auto* a = n.as_array();
        if (!a) throw ValidationError(where + ": expected an array");
        return *a;
    }

    static IntVec as_vector(const toml::node& n, const std::string& where) {
        IntVec v;
        const auto& a = as_array(n, where);
        for (size_t i = 0; i < a.size(); ++i) v.push_back(as_int(*a.get(i), where + "[" + std::to_string(i) + "]"));
        return v;
    }

    static std::vector<IntVec> as_rows(const toml::node& n, const std::string& where, std::optional<size_t> width) {
        std::vector<IntVec> rows;
        const auto& a = as_array(n, where);
        for (size_t i = 0; i < a.size(); ++i) {
            rows.push_back(as_vector(*a.get(i), where + "[" + std::to_string(i) + "]"));
            if (width && rows.back().size() != *width)
                throw ValidationError(where + "[" + std::to_string(i) + "]: expected length " + std::to_string(*width));
        }
        return rows;
    }

    static IntMatrix as_matrix(const toml::node& n, const std::string& where, int size) {
        auto rows = as_rows(n, where, static_cast<size_t>(size));
        if (static_cast<int>(rows.size()) != size)
            throw ValidationError(where + ": expected a " + std::to_string(size) + " x " + std::to_string(size) + " matrix");
        IntMatrix m(size, size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) m(i, j) = rows[i][j];
        return m;
    }

    static Cyclotomic as_scalar(const toml::node& n, const std::string& where) {
        if (auto i = n.value<int64_t>()) return Cyclotomic(static_cast<Int>(*i));
        if (auto s = n.value<std::string>()) {
            try {
                return Cyclotomic::parse(*s);
            } catch (const ValidationError& e) {
                throw ValidationError(where + ": " + e.what());
            }
        }
        throw ValidationError(where + ": expected an integer or an exact scalar string");
    }

    static CycMatrix as_cyc_matrix(const toml::node& n, const std::string& where, int size) {
        const auto& a = as_array(n, where);
        if (static_cast<int>(a.size()) != size) throw ValidationError(where + ": expected " + std::to_string(size) + " rows");
        CycMatrix m(size, size);
        for (int i = 0; i < size; ++i) {
            std::string wi = where + "[" + std::to_string(i) + "]";
            const auto& row = as_array(*a.get(i), wi);
            if (static_cast<int>(row.size()) != size) throw ValidationError(wi + ": expected " + std::to_string(size) + " entries");
            for (int j = 0; j < size; ++j) m(i, j) = as_scalar(*row.get(j), wi + "[" + std::to_string(j) + "]");
        }
        return m;
    }

    const toml::node& node(const std::string& key) const {
        if (!has(key)) throw ValidationError(field(key) + ": missing");
        return *t_.get(key);
    }

private:
    const toml::table& t_;
    std::string prefix_;
};

inline GroupDescriptor load_descriptor_at(const std::filesystem::path& path, int depth);

template <class F>
auto with_field(const std::string& field, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const UnsupportedCase&) {
        throw;
    } catch (const ValidationError& e) {
        throw ValidationError(field + ": " + e.what());
    }
}

inline GroupDescriptor parse_descriptor_table(const toml::table& root, const std::filesystem::path& dir, int depth) {
    if (depth > 8) throw ValidationError("descriptor: nesting too deep (cyclic reference?)");
    TomlReader top(root, "");
    GroupDescriptor gd;
    gd.name = top.has("name") ? top.string("name") : "G";

    const int sources = (top.has("root_datum") ? 1 : 0) + (top.has("restriction") ? 1 : 0) + (top.has("product") ? 1 : 0);
    if (sources != 1) throw ValidationError("descriptor: exactly one of [root_datum], [restriction], [product] is required");

    auto resolve = [&](const std::string& rel) { return dir / rel; };

    if (auto* rd = top.table("root_datum")) {
        TomlReader r(*rd, "root_datum");
        const int rank = static_cast<int>(r.integer("rank"));
        if (rank <= 0) throw ValidationError("root_datum.rank: must be a positive integer");
        std::vector<IntVec> roots, coroots;
        if (r.has("simple_roots")) roots = TomlReader::as_rows(r.node("simple_roots"), r.field("simple_roots"), rank);
        if (r.has("simple_coroots")) coroots = TomlReader::as_rows(r.node("simple_coroots"), r.field("simple_coroots"), rank);
        std::optional<IntMatrix> pairing;
        if (r.has("pairing")) pairing = TomlReader::as_matrix(r.node("pairing"), r.field("pairing"), rank);
        BasedRootDatum d = with_field("root_datum", [&] { return BasedRootDatum::make(gd.name, rank, roots, coroots, pairing); });

        GaloisDescentDatum g = GaloisDescentDatum::trivial(rank);
        if (auto* fl = top.table("field")) {
            TomlReader f(*fl, "field");
            g.q = f.integer("q", 2);
            g.e = static_cast<int>(f.integer("e", 1));
            g.f = static_cast<int>(f.integer("f", 1));
        }
        g.group_order = 0;
        if (auto* gl = top.table("galois")) {
            TomlReader r2(*gl, "galois");
            if (r2.has("inertia")) {
                const auto& arr = TomlReader::as_array(r2.node("inertia"), r2.field("inertia"));
                for (size_t i = 0; i < arr.size(); ++i)
                    g.inertia.push_back(TomlReader::as_matrix(*arr.get(i), r2.field("inertia") + "[" + std::to_string(i) + "]", rank));
            }
            if (r2.has("frobenius")) g.frobenius = TomlReader::as_matrix(r2.node("frobenius"), r2.field("frobenius"), rank);
            g.group_order = static_cast<int>(r2.integer("order", 0));
            if (r2.has("order") && g.group_order < 1) throw ValidationError("galois.order: must be positive");
        }
        gd.group = GroupDatum::make(gd.name, d, g);
    } else if (auto* rs = top.table("restriction")) {
        TomlReader r(*rs, "restriction");
        GroupDescriptor base = load_descriptor_at(resolve(r.string("base")), depth + 1);
        std::optional<Int> qF;
        if (r.has("q")) qF = r.integer("q");
        gd.group = with_field("restriction", [&] {
            return weil_restrict(base.group, static_cast<int>(r.integer("e", 1)), static_cast<int>(r.integer("f", 1)), qF);
        });
    } else {
        TomlReader r(*top.table("product"), "product");
        const auto& arr = TomlReader::as_array(r.node("factors"), r.field("factors"));
        if (arr.size() < 2) throw ValidationError("product.factors: at least two factors are required");
        std::optional<GroupDatum> acc;
        for (size_t i = 0; i < arr.size(); ++i) {
            auto s = arr.get(i)->value<std::string>();
            if (!s) throw ValidationError("product.factors[" + std::to_string(i) + "]: expected a path");
            GroupDescriptor f = load_descriptor_at(resolve(*s), depth + 1);
            acc = acc ? with_field("product", [&] { return product_group(*acc, f.group); }) : f.group;
        }
        gd.group = *acc;
    }
    gd.group.name = gd.name;
    if (top.has("field") && !top.has("root_datum")) throw ValidationError("field: only allowed together with [root_datum]");
    if (top.has("galois") && !top.has("root_datum")) throw ValidationError("galois: only allowed together with [root_datum]");

    if (auto* h = top.table("hecke")) {
        TomlReader r(*h, "hecke");
        if (r.has("parameters")) {
            std::vector<int> p;
            for (Int x : TomlReader::as_vector(r.node("parameters"), r.field("parameters"))) p.push_back(static_cast<int>(x));
            gd.parameters = p;
        }
    }
    if (auto* f = top.table("facet")) {
        TomlReader r(*f, "facet");
        std::vector<int> nodes;
        for (Int x : TomlReader::as_vector(r.node("nodes"), r.field("nodes"))) nodes.push_back(static_cast<int>(x));
        gd.facet_nodes = nodes;
    }
    if (top.has("representation")) {
        auto* arr = root.get("representation")->as_array();
        if (!arr) throw ValidationError("representation: expected an array of tables ([[representation]])");
        const int rank = gd.group.rank();
        for (size_t i = 0; i < arr->size(); ++i) {
            std::string where = "representation[" + std::to_string(i) + "]";
            auto* t = arr->get(i)->as_table();
            if (!t) throw ValidationError(where + ": expected a table");
            TomlReader r(*t, where);
            RepresentationDescriptor rep;
            if (r.has("highest_weight")) {
                rep.highest_weight = TomlReader::as_vector(r.node("highest_weight"), r.field("highest_weight"));
                if (static_cast<int>(rep.highest_weight->size()) != rank)
                    throw ValidationError(r.field("highest_weight") + ": length differs from the rank");
            } else {
                rep.weights = TomlReader::as_rows(r.node("weights"), r.field("weights"), static_cast<size_t>(rank));
                const int dim = static_cast<int>(rep.weights.size());
                if (r.has("inertia")) {
                    const auto& ia = TomlReader::as_array(r.node("inertia"), r.field("inertia"));
                    for (size_t k = 0; k < ia.size(); ++k)
                        rep.inertia.push_back(TomlReader::as_cyc_matrix(*ia.get(k), r.field("inertia") + "[" + std::to_string(k) + "]", dim));
                }
                if (r.has("frobenius")) rep.frobenius = TomlReader::as_cyc_matrix(r.node("frobenius"), r.field("frobenius"), dim);
            }
            with_field(where, [&] { return rep.build(gd.group); });
            gd.representations.push_back(std::move(rep));
        }
    }
    return gd;
}

inline GroupDescriptor load_descriptor_at(const std::filesystem::path& path, int depth) {
    toml::table root;
    try {
        root = toml::parse_file(path.string());
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << path.string() << ": TOML syntax error: " << e.description() << " at line " << e.source().begin.line;
        throw ValidationError(os.str());
    }
    auto gd = parse_descriptor_table(root, path.parent_path(), depth);
    gd.source = path;
    return gd;
}

} // namespace detail

/// Loads and validates a group descriptor; errors name the offending field.
inline GroupDescriptor load_descriptor(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ValidationError("descriptor: file not found: " + path.string());
    return detail::load_descriptor_at(path, 0);
}

/// Parses descriptor text; relative paths resolve against `dir`.
inline GroupDescriptor parse_descriptor(const std::string& text, const std::filesystem::path& dir = ".") {
    toml::table root;
    try {
        root = toml::parse(text);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << "TOML syntax error: " << e.description() << " at line " << e.source().begin.line;
        throw ValidationError(os.str());
    }
    return detail::parse_descriptor_table(root, dir, 0);
}

} // namespace weilres
