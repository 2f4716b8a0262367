#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdtc/diag.hpp"
#include "tdtc/parser.hpp"
#include "tdtc/types.hpp"

namespace tdtc {

// Thrown by graph queries when a name does not resolve to a scalar node.
class UnknownTypeError : public std::runtime_error {
public:
    explicit UnknownTypeError(const std::string& name)
        : std::runtime_error("unknown type '" + name + "'"), name_(name) {}
    const std::string& type_name() const { return name_; }

private:
    std::string name_;
};

enum class ScalarClass { NonUnion, RegularUnion, Dummy, BuiltIn, AlphaTop, OmegaBottom };

enum class Classification { RootScalar, NonrootScalar, Dummy, BuiltIn, Alpha, Omega };

struct BuildOptions {
    Mode mode = Mode::Inheritance;
    // Synthesizes an opaque root scalar stub for every referenced but
    // undeclared type name instead of reporting an error.
    bool assume_declared = false;
};

// The validated scalar inheritance DAG: all declared scalar types plus the
// five built-ins, conceptually closed by alpha above and omega below.
// Immutable after build_graph; all queries are read-only.
class TypeGraph {
public:
    // Declared scalar type names, insertion order.
    const std::vector<std::string>& declared_names() const { return declared_order_; }

    bool contains(const TypeRef& t) const;

    // Reflexive subtype test over scalar nodes. omega <= t <= alpha for
    // every scalar t; distinct built-ins are related only through them.
    bool is_subtype(const TypeRef& a, const TypeRef& b) const;

    std::set<TypeRef> proper_supertypes(const TypeRef& t) const;
    std::set<TypeRef> proper_subtypes(const TypeRef& t) const;
    // Immediate neighbours, including the synthetic closure: a root's
    // immediate supertype is alpha, a leaf's immediate subtype is omega.
    std::set<TypeRef> immediate_supertypes(const TypeRef& t) const;
    std::set<TypeRef> immediate_subtypes(const TypeRef& t) const;

    // Root/leaf report only declared edges; alpha and omega, being the
    // synthetic closure, are neither.
    bool is_root(const TypeRef& t) const;
    bool is_leaf(const TypeRef& t) const;

    Classification classify(const TypeRef& t) const;
    ScalarClass scalar_class(const TypeRef& t) const;
    bool is_union_type(const TypeRef& t) const;  // regular union, dummy, alpha, omega
    bool is_dummy_type(const TypeRef& t) const;  // dummy, alpha, omega
    bool is_ordinal(const TypeRef& t) const;     // own flag or inherited
    bool is_stub(const TypeRef& t) const;        // synthesized by assume_declared

    const TypeDef* find_declaration(const std::string& name) const;

private:
    friend struct GraphBuilder;

    struct Node {
        TypeRef ref = TypeRef::alpha();
        ScalarClass cls = ScalarClass::NonUnion;
        bool ordinal = false;
        bool ordinal_inherited = false;
        bool stub = false;
        std::optional<TypeDef> decl;
        std::vector<int> parents;  // declared immediate-supertype edges
        std::vector<int> children;
        std::vector<bool> ancestors;  // transitive closure over declared edges
    };

    int index_of(const TypeRef& t) const;  // throws UnknownTypeError
    bool reaches(int from, int to) const { return nodes_[from].ancestors[to]; }

    std::vector<Node> nodes_;
    std::vector<std::string> declared_order_;
    // name -> node index; covers declared names and built-in names
    std::vector<std::pair<std::string, int>> index_;
};

struct BuildResult {
    std::optional<TypeGraph> graph;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return graph.has_value() && !has_errors(diagnostics); }
};

// Resolves declarations into a validated TypeGraph. Validation covers:
// acyclicity, unknown/duplicate names, reserved names, built-in closure,
// redundant immediate edges, union arity, dummy admissibility, and the
// no-inheritance restrictions of plain mode.
BuildResult build_graph(const std::vector<Declaration>& decls,
                        const BuildOptions& opts = {});

// DOT rendering of the declared lattice, one edge per immediate-supertype
// pair, dummy nodes dashed. Nodes and edges are emitted in lexicographic
// order. `closure` adds alpha/omega and their synthetic edges.
std::string to_dot(const TypeGraph& g, bool closure = false);

// Plain-text rendering: one line per declared type with its immediate
// declared supertypes.
std::string to_text(const TypeGraph& g, bool closure = false);

} // namespace tdtc
