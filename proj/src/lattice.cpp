#include "tdtc/lattice.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace tdtc {

namespace {

const std::array<BuiltIn, 5> kBuiltins = {BuiltIn::Integer, BuiltIn::Rational,
                                          BuiltIn::Character, BuiltIn::Char,
                                          BuiltIn::Boolean};

} // namespace

// --- queries ---------------------------------------------------------------

int TypeGraph::index_of(const TypeRef& t) const {
    std::string name;
    switch (t.kind()) {
        case TypeRef::Kind::Declared: name = t.name(); break;
        case TypeRef::Kind::BuiltIn: name = builtin_name(t.builtin_kind()); break;
        default:
            throw UnknownTypeError(t.display());
    }
    for (const auto& [n, i] : index_)
        if (n == name) return i;
    throw UnknownTypeError(name);
}

bool TypeGraph::contains(const TypeRef& t) const {
    switch (t.kind()) {
        case TypeRef::Kind::Alpha:
        case TypeRef::Kind::Omega:
            return true;
        case TypeRef::Kind::Declared:
        case TypeRef::Kind::BuiltIn:
            try {
                index_of(t);
                return true;
            } catch (const UnknownTypeError&) {
                return false;
            }
        default:
            return false;
    }
}

bool TypeGraph::is_subtype(const TypeRef& a, const TypeRef& b) const {
    if (a == b) return true;
    if (a.kind() == TypeRef::Kind::Omega) {
        if (b.kind() != TypeRef::Kind::Alpha) index_of(b);  // validate
        return true;
    }
    if (b.kind() == TypeRef::Kind::Alpha) {
        index_of(a);
        return true;
    }
    // Neither bound relates downward: alpha is below nothing else, nothing
    // else is below omega.
    if (a.kind() == TypeRef::Kind::Alpha) {
        if (b.kind() != TypeRef::Kind::Omega) index_of(b);
        return false;
    }
    if (b.kind() == TypeRef::Kind::Omega) {
        index_of(a);
        return false;
    }
    return reaches(index_of(a), index_of(b));
}

std::set<TypeRef> TypeGraph::proper_supertypes(const TypeRef& t) const {
    std::set<TypeRef> out;
    if (t.kind() == TypeRef::Kind::Alpha) return out;
    out.insert(TypeRef::alpha());
    if (t.kind() == TypeRef::Kind::Omega) {
        for (const Node& n : nodes_) out.insert(n.ref);
        return out;
    }
    const int i = index_of(t);
    for (size_t j = 0; j < nodes_.size(); ++j)
        if (nodes_[i].ancestors[j]) out.insert(nodes_[j].ref);
    return out;
}

std::set<TypeRef> TypeGraph::proper_subtypes(const TypeRef& t) const {
    std::set<TypeRef> out;
    if (t.kind() == TypeRef::Kind::Omega) return out;
    out.insert(TypeRef::omega());
    if (t.kind() == TypeRef::Kind::Alpha) {
        for (const Node& n : nodes_) out.insert(n.ref);
        return out;
    }
    const int i = index_of(t);
    for (size_t j = 0; j < nodes_.size(); ++j)
        if (nodes_[j].ancestors[i]) out.insert(nodes_[j].ref);
    return out;
}

std::set<TypeRef> TypeGraph::immediate_supertypes(const TypeRef& t) const {
    std::set<TypeRef> out;
    if (t.kind() == TypeRef::Kind::Alpha) return out;
    if (t.kind() == TypeRef::Kind::Omega) {
        // omega sits immediately below every would-otherwise-be-leaf type.
        for (const Node& n : nodes_)
            if (n.children.empty()) out.insert(n.ref);
        if (out.empty()) out.insert(TypeRef::alpha());
        return out;
    }
    const int i = index_of(t);
    if (nodes_[i].parents.empty()) {
        out.insert(TypeRef::alpha());
    } else {
        for (int p : nodes_[i].parents) out.insert(nodes_[p].ref);
    }
    return out;
}

std::set<TypeRef> TypeGraph::immediate_subtypes(const TypeRef& t) const {
    std::set<TypeRef> out;
    if (t.kind() == TypeRef::Kind::Omega) return out;
    if (t.kind() == TypeRef::Kind::Alpha) {
        for (const Node& n : nodes_)
            if (n.parents.empty()) out.insert(n.ref);
        if (out.empty()) out.insert(TypeRef::omega());
        return out;
    }
    const int i = index_of(t);
    if (nodes_[i].children.empty()) {
        out.insert(TypeRef::omega());
    } else {
        for (int c : nodes_[i].children) out.insert(nodes_[c].ref);
    }
    return out;
}

bool TypeGraph::is_root(const TypeRef& t) const {
    if (t.kind() == TypeRef::Kind::Alpha || t.kind() == TypeRef::Kind::Omega)
        return false;
    return nodes_[index_of(t)].parents.empty();
}

bool TypeGraph::is_leaf(const TypeRef& t) const {
    if (t.kind() == TypeRef::Kind::Alpha || t.kind() == TypeRef::Kind::Omega)
        return false;
    return nodes_[index_of(t)].children.empty();
}

ScalarClass TypeGraph::scalar_class(const TypeRef& t) const {
    if (t.kind() == TypeRef::Kind::Alpha) return ScalarClass::AlphaTop;
    if (t.kind() == TypeRef::Kind::Omega) return ScalarClass::OmegaBottom;
    return nodes_[index_of(t)].cls;
}

Classification TypeGraph::classify(const TypeRef& t) const {
    switch (scalar_class(t)) {
        case ScalarClass::AlphaTop: return Classification::Alpha;
        case ScalarClass::OmegaBottom: return Classification::Omega;
        case ScalarClass::BuiltIn: return Classification::BuiltIn;
        case ScalarClass::Dummy: return Classification::Dummy;
        default:
            return is_root(t) ? Classification::RootScalar
                              : Classification::NonrootScalar;
    }
}

bool TypeGraph::is_union_type(const TypeRef& t) const {
    switch (scalar_class(t)) {
        case ScalarClass::RegularUnion:
        case ScalarClass::Dummy:
        case ScalarClass::AlphaTop:
        case ScalarClass::OmegaBottom:
            return true;
        default:
            return false;
    }
}

bool TypeGraph::is_dummy_type(const TypeRef& t) const {
    switch (scalar_class(t)) {
        case ScalarClass::Dummy:
        case ScalarClass::AlphaTop:
        case ScalarClass::OmegaBottom:
            return true;
        default:
            return false;
    }
}

bool TypeGraph::is_ordinal(const TypeRef& t) const {
    if (t.kind() == TypeRef::Kind::Alpha || t.kind() == TypeRef::Kind::Omega)
        return false;
    const Node& n = nodes_[index_of(t)];
    return n.ordinal || n.ordinal_inherited;
}

bool TypeGraph::is_stub(const TypeRef& t) const {
    if (t.kind() == TypeRef::Kind::Alpha || t.kind() == TypeRef::Kind::Omega)
        return false;
    return nodes_[index_of(t)].stub;
}

const TypeDef* TypeGraph::find_declaration(const std::string& name) const {
    for (const auto& [n, i] : index_)
        if (n == name && nodes_[i].decl) return &*nodes_[i].decl;
    return nullptr;
}

// --- construction ------------------------------------------------------------

struct GraphBuilder {
    const BuildOptions& opts;
    std::vector<Diagnostic> diags;
    TypeGraph g;
    std::map<std::string, int> by_name;

    explicit GraphBuilder(const BuildOptions& o) : opts(o) {}

    void error(const Span& span, const std::string& file, std::string msg) {
        diags.push_back({Diagnostic::Severity::Error, std::move(msg), span, file});
    }
    void warn(const Span& span, const std::string& file, std::string msg) {
        diags.push_back({Diagnostic::Severity::Warning, std::move(msg), span, file});
    }

    int add_node(const std::string& name, TypeRef ref, ScalarClass cls, bool stub) {
        TypeGraph::Node n;
        n.ref = std::move(ref);
        n.cls = cls;
        n.stub = stub;
        g.nodes_.push_back(std::move(n));
        const int idx = static_cast<int>(g.nodes_.size()) - 1;
        by_name[name] = idx;
        g.index_.emplace_back(name, idx);
        return idx;
    }

    int find(const std::string& name) const {
        auto it = by_name.find(name);
        return it == by_name.end() ? -1 : it->second;
    }

    int stub_for(const std::string& name) {
        const int i = find(name);
        if (i >= 0) return i;
        const int idx = add_node(name, TypeRef::declared(name), ScalarClass::NonUnion, true);
        g.declared_order_.push_back(name);
        return idx;
    }

    // Scalar names referenced by a type, looking through nested headings.
    void collect_scalar_refs(const TypeRef& t, std::vector<std::string>& out) const {
        if (t.kind() == TypeRef::Kind::Declared) {
            out.push_back(t.name());
        } else if (t.is_nonscalar()) {
            for (const Attribute& a : t.heading().attributes())
                collect_scalar_refs(a.type, out);
        }
    }

    // TypeDecls that own a node, paired with their node index.
    std::vector<std::pair<const TypeDecl*, int>> owners;

    BuildResult run(const std::vector<Declaration>& decls) {
        for (BuiltIn b : kBuiltins)
            add_node(builtin_name(b), TypeRef::builtin(b), ScalarClass::BuiltIn, false);

        // Declared nodes first so forward references in IS lists resolve.
        for (const Declaration& d : decls) {
            const auto* td = std::get_if<TypeDecl>(&d);
            if (!td) continue;
            const TypeDef& def = td->def;
            if (is_reserved_type_name(def.name)) {
                if (def.name == "alpha" || def.name == "omega")
                    error(td->span, td->file,
                          "type '" + def.name +
                              "' is not definable: it exists conceptually as the " +
                              (def.name == "alpha" ? "maximal" : "minimal") +
                              " scalar type");
                else
                    error(td->span, td->file,
                          "'" + def.name + "' is a reserved type name and cannot be declared");
                continue;
            }
            if (!is_valid_type_name(def.name)) {
                error(td->span, td->file, "invalid type name '" + def.name + "'");
                continue;
            }
            if (find(def.name) >= 0) {
                error(td->span, td->file,
                      "duplicate declaration of type '" + def.name + "'");
                continue;
            }
            ScalarClass cls = def.is_dummy()   ? ScalarClass::Dummy
                              : def.union_flag ? ScalarClass::RegularUnion
                                               : ScalarClass::NonUnion;
            const int idx = add_node(def.name, TypeRef::declared(def.name), cls, false);
            g.nodes_[idx].decl = def;
            g.nodes_[idx].ordinal = def.ordinal;
            g.declared_order_.push_back(def.name);
            owners.emplace_back(td, idx);
        }

        for (const auto& [td, idx] : owners) resolve_type_decl(*td, idx);
        for (const Declaration& d : decls) {
            if (const auto* vd = std::get_if<VarDecl>(&d)) resolve_var_decl(*vd);
            if (const auto* hd = std::get_if<HeadingDecl>(&d))
                resolve_display_refs(heading_ref_names(hd->heading), hd->span, hd->file);
            if (const auto* xd = std::get_if<ValueDecl>(&d)) {
                std::vector<std::string> names;
                collect_scalar_refs(declared_type_of(xd->value), names);
                resolve_display_refs(names, xd->span, xd->file);
            }
        }

        if (!check_acyclic()) return finish();
        compute_closure();
        check_redundant_edges();
        classify_and_validate();

        return finish();
    }

    BuildResult finish() {
        BuildResult r;
        r.diagnostics = std::move(diags);
        if (!has_errors(r.diagnostics)) r.graph = std::move(g);
        return r;
    }

    void resolve_type_decl(const TypeDecl& td, int self) {
        const TypeDef& def = td.def;

        std::vector<int> parents;
        for (const std::string& super : def.supertypes) {
            if (super == def.name) {
                error(td.span, td.file,
                      "type '" + def.name + "' cannot be its own supertype");
                continue;
            }
            if (super == "alpha" || super == "omega" || super == "#") {
                error(td.span, td.file,
                      "'" + super + "' may not appear as an explicit supertype");
                continue;
            }
            if (builtin_from_name(super)) {
                error(td.span, td.file,
                      "cannot declare a subtype of built-in type '" + super +
                          "': built-in types are closed");
                continue;
            }
            int p = find(super);
            if (p < 0) {
                if (opts.assume_declared) {
                    p = stub_for(super);
                } else {
                    error(td.span, td.file,
                          "unknown supertype '" + super + "' in declaration of '" +
                              def.name + "'");
                    continue;
                }
            }
            if (std::find(parents.begin(), parents.end(), p) != parents.end()) {
                error(td.span, td.file,
                      "duplicate supertype '" + super + "' in declaration of '" +
                          def.name + "'");
                continue;
            }
            parents.push_back(p);
        }
        g.nodes_[self].parents = parents;
        for (int p : parents) g.nodes_[p].children.push_back(self);

        // Possrep component types resolve leniently: an unknown name is a
        // warning (or a stub under assume_declared), since component types
        // never join the subtype order.
        for (const PossrepDef& p : def.possreps) {
            for (const PossrepComponent& c : p.components) {
                std::vector<std::string> names;
                collect_scalar_refs(c.type, names);
                for (const std::string& n : names) {
                    if (find(n) >= 0) continue;
                    if (opts.assume_declared)
                        stub_for(n);
                    else
                        warn(td.span, td.file,
                             "possrep component '" + c.name + "' of '" + def.name +
                                 "' references undeclared type '" + n + "'");
                }
            }
        }
    }

    std::vector<std::string> heading_ref_names(const Heading& h) const {
        std::vector<std::string> names;
        for (const Attribute& a : h.attributes()) collect_scalar_refs(a.type, names);
        return names;
    }

    // Heading and value displays reference types without joining the
    // subtype order; unknown names are warnings (or stubs).
    void resolve_display_refs(const std::vector<std::string>& names, const Span& span,
                              const std::string& file) {
        for (const std::string& n : names) {
            if (find(n) >= 0) continue;
            if (opts.assume_declared)
                stub_for(n);
            else
                warn(span, file, "display references undeclared type '" + n + "'");
        }
    }

    void resolve_var_decl(const VarDecl& vd) {
        // alpha and omega exist only to complete the lattice; neither is
        // permitted as the declared type of a variable (omega in particular
        // has no values to assign). Accepted with a warning since both stay
        // useful in queries and displays.
        if (vd.type.kind() == TypeRef::Kind::Alpha ||
            vd.type.kind() == TypeRef::Kind::Omega)
            warn(vd.span, vd.file,
                 "variable '" + vd.name + "' declared of conceptual type '" +
                     vd.type.display() + "'");
        std::vector<std::string> names;
        collect_scalar_refs(vd.type, names);
        for (const std::string& n : names) {
            if (find(n) >= 0) continue;
            if (opts.assume_declared)
                stub_for(n);
            else
                error(vd.span, vd.file,
                      "variable '" + vd.name + "' references undeclared type '" + n + "'");
        }
    }

    bool check_acyclic() {
        enum { White, Grey, Black };
        std::vector<int> color(g.nodes_.size(), White);
        std::vector<int> stack;
        bool ok = true;

        auto site_of = [&](int v) -> const TypeDecl* {
            for (const auto& [td, idx] : owners)
                if (idx == v) return td;
            return nullptr;
        };

        auto dfs = [&](auto&& self, int v) -> bool {
            color[v] = Grey;
            stack.push_back(v);
            for (int p : g.nodes_[v].parents) {
                if (color[p] == Grey) {
                    std::string cycle;
                    auto it = std::find(stack.begin(), stack.end(), p);
                    for (; it != stack.end(); ++it)
                        cycle += g.nodes_[*it].ref.display() + " -> ";
                    cycle += g.nodes_[p].ref.display();
                    const TypeDecl* td = site_of(p);
                    error(td ? td->span : Span{}, td ? td->file : "",
                          "inheritance cycle: " + cycle);
                    return false;
                }
                if (color[p] == White && !self(self, p)) return false;
            }
            stack.pop_back();
            color[v] = Black;
            return true;
        };

        for (size_t i = 0; i < g.nodes_.size(); ++i)
            if (color[i] == White && !dfs(dfs, static_cast<int>(i))) ok = false;
        return ok;
    }

    void compute_closure() {
        const size_t n = g.nodes_.size();
        std::vector<char> done(n, 0);
        auto fill = [&](auto&& self, int v) -> void {
            if (done[v]) return;
            done[v] = 1;
            auto& anc = g.nodes_[v].ancestors;
            anc.assign(n, false);
            for (int p : g.nodes_[v].parents) {
                self(self, p);
                anc[p] = true;
                const auto& pa = g.nodes_[p].ancestors;
                for (size_t j = 0; j < n; ++j)
                    if (pa[j]) anc[j] = true;
            }
        };
        for (size_t i = 0; i < n; ++i) fill(fill, static_cast<int>(i));

        for (size_t i = 0; i < n; ++i) {
            if (g.nodes_[i].ordinal) continue;
            for (size_t j = 0; j < n; ++j)
                if (g.nodes_[i].ancestors[j] && g.nodes_[j].ordinal)
                    g.nodes_[i].ordinal_inherited = true;
        }
    }

    // An explicit edge (child, parent) is redundant when parent is already a
    // proper supertype of child through some other parent; such an edge
    // would break the meaning of "immediate".
    void check_redundant_edges() {
        for (const auto& [td, self] : owners) {
            const auto& parents = g.nodes_[self].parents;
            for (int p : parents) {
                for (int q : parents) {
                    if (p == q) continue;
                    if (g.nodes_[q].ancestors[p]) {
                        error(td->span, td->file,
                              "redundant supertype '" + g.nodes_[p].ref.display() +
                                  "' in declaration of '" + td->def.name +
                                  "': it is already a proper supertype via '" +
                                  g.nodes_[q].ref.display() + "'");
                    }
                }
            }
        }
    }

    void classify_and_validate() {
        for (const auto& [td, self] : owners) {
            const TypeDef& def = td->def;

            if (opts.mode == Mode::Plain) {
                if (def.union_flag)
                    error(td->span, td->file,
                          "UNION type '" + def.name +
                              "' is not permitted outside an inheritance context");
                if (!def.supertypes.empty())
                    error(td->span, td->file,
                          "IS specification on '" + def.name +
                              "' is not permitted outside an inheritance context");
                if (def.possreps.empty() && def.derived_possreps.empty())
                    error(td->span, td->file,
                          "type '" + def.name +
                              "' must have at least one possible representation");
                continue;
            }

            const ScalarClass cls = g.nodes_[self].cls;
            if (cls == ScalarClass::RegularUnion || cls == ScalarClass::Dummy) {
                const int arity = static_cast<int>(g.nodes_[self].children.size());
                if (arity < 2) {
                    const std::string msg = "union type '" + def.name +
                                            "' requires at least 2 immediate subtypes (found " +
                                            std::to_string(arity) + ")";
                    // A dummy union may be empty, so a sparse hierarchy is
                    // only suspicious; a regular union must distribute its
                    // values over subtypes it does not have.
                    if (cls == ScalarClass::RegularUnion)
                        error(td->span, td->file, msg);
                    else
                        warn(td->span, td->file, msg + "; admitted as a possibly-empty dummy");
                }
            }
            if (cls == ScalarClass::Dummy) {
                for (int p : g.nodes_[self].parents) {
                    // A stub's union-ness is unknown, so it does not count
                    // as a regular supertype.
                    if (g.nodes_[p].cls != ScalarClass::Dummy && !g.nodes_[p].stub)
                        error(td->span, td->file,
                              "dummy type '" + def.name +
                                  "' has regular immediate supertype '" +
                                  g.nodes_[p].ref.display() + "'");
                }
            }
        }
    }
};

BuildResult build_graph(const std::vector<Declaration>& decls, const BuildOptions& opts) {
    return GraphBuilder(opts).run(decls);
}

// --- rendering ----------------------------------------------------------------

std::string to_dot(const TypeGraph& g, bool closure) {
    std::vector<std::string> names = g.declared_names();
    std::sort(names.begin(), names.end());

    std::string out = "digraph type_lattice {\n  rankdir=BT;\n  node [shape=box];\n";
    if (closure) {
        out += "  \"alpha\" [style=dashed];\n";
        out += "  \"omega\" [style=dashed];\n";
    }
    for (const std::string& n : names) {
        out += "  \"" + n + "\"";
        if (g.is_dummy_type(TypeRef::declared(n))) out += " [style=dashed]";
        out += ";\n";
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const std::string& n : names) {
        const TypeRef ref = TypeRef::declared(n);
        for (const TypeRef& p : g.immediate_supertypes(ref)) {
            if (p.kind() == TypeRef::Kind::Alpha) {
                if (closure) edges.emplace_back(n, "alpha");
            } else {
                edges.emplace_back(n, p.display());
            }
        }
        if (closure && g.is_leaf(ref)) edges.emplace_back("omega", n);
    }
    if (closure && names.empty()) edges.emplace_back("omega", "alpha");
    std::sort(edges.begin(), edges.end());
    for (const auto& [from, to] : edges)
        out += "  \"" + from + "\" -> \"" + to + "\";\n";
    out += "}\n";
    return out;
}

std::string to_text(const TypeGraph& g, bool closure) {
    std::vector<std::string> names = g.declared_names();
    std::sort(names.begin(), names.end());
    std::string out;
    for (const std::string& n : names) {
        out += n;
        std::vector<std::string> supers;
        for (const TypeRef& p : g.immediate_supertypes(TypeRef::declared(n))) {
            if (p.kind() == TypeRef::Kind::Alpha && !closure) continue;
            supers.push_back(p.display());
        }
        std::sort(supers.begin(), supers.end());
        if (!supers.empty()) {
            out += " <= ";
            for (size_t i = 0; i < supers.size(); ++i) {
                if (i) out += ", ";
                out += supers[i];
            }
        }
        out += "\n";
    }
    return out;
}

} // namespace tdtc
