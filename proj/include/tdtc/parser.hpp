#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tdtc/diag.hpp"
#include "tdtc/lexer.hpp"
#include "tdtc/types.hpp"

namespace tdtc {

enum class Mode { Inheritance, Plain };

struct ParseOptions {
    Mode mode = Mode::Inheritance;
    // Strict mode enforces the inheritance grammar literally: UNION is
    // mandatory on user scalar types and statement terminators are
    // required. Lenient mode (default) downgrades those to warnings.
    bool strict = false;
    // Permit '#' as an attribute type inside TUPLE/RELATION headings.
    bool allow_null_attributes = true;
};

// TYPE declaration.
struct TypeDecl {
    TypeDef def;
    Span span;
    std::string file;
};

// VAR declaration: scalar, TUPLE heading, RELATION heading, or '#'.
struct VarDecl {
    std::string name;
    TypeRef type;
    Span span;
    std::string file;
};

// A bare heading display: "<A, T>, <B, U>".
struct HeadingDecl {
    Heading heading;
    Span span;
    std::string file;
};

// A value display, optionally labelled: "t1: TUPLE {...}" or a bare
// literal / triplet display "<A, T, v>, ...".
struct ValueDecl {
    std::optional<std::string> name;
    Value value;
    Span span;
    std::string file;
};

using Declaration = std::variant<TypeDecl, VarDecl, HeadingDecl, ValueDecl>;

Span declaration_span(const Declaration& d);
const std::string& declaration_file(const Declaration& d);
bool declarations_equal(const Declaration& a, const Declaration& b);

// Grammar productions, tracked so the test suite can prove every one is
// reachable from the shipped corpus.
enum class Production {
    NullType,            // type reference '#'
    RootScalarDef,       // TYPE name ... without IS
    NonrootScalarDef,    // TYPE name ... IS {...}
    MultipleInheritance, // IS list with >= 2 names
    UnionSpec,           // UNION
    OrdinalSpec,         // ORDINAL
    DummyRootDef,        // UNION root without possreps
    DummyNonrootDef,     // UNION nonroot without possreps
    PossrepDefn,
    PossrepNamed,
    PossrepComponent,
    PossrepConstraint,
    AdditionalConstraint,
    DerivedPossrep,
    DerivedComponent,
    BuiltInInteger,
    BuiltInRational,
    BuiltInCharacter,
    BuiltInChar,
    BuiltInBoolean,
    TupleType,
    RelationType,
    HeadingProd,
    EmptyHeading,
    AttributeProd,
    NestedNonscalar,     // TUPLE/RELATION attribute inside a heading
    AlphaType,
    OmegaType,
    MaximalType,         // heading whose attributes are all alpha
    MinimalType,         // heading whose attributes are all omega
    VarScalar,
    VarNonscalar,
    PlainScalarDef,      // TYPE in no-inheritance mode
    HeadingDisplay,
    TupleDisplay,
    ValueBinding,
};

struct ParseResult {
    std::vector<Declaration> decls;
    std::vector<Diagnostic> diagnostics;
    std::set<Production> productions;

    bool ok() const { return !has_errors(diagnostics); }
};

// Parses a whole source file: TYPE and VAR declarations plus heading and
// value displays. Collects as many diagnostics as possible; `decls` holds
// every declaration that parsed cleanly.
ParseResult parse_source(std::string_view source, const ParseOptions& opts = {},
                         std::string_view file = "");

// Parses a single type reference, e.g. "CIRCLE", "INTEGER", "alpha", "#",
// "TUPLE {A INTEGER}" or "RELATION {E CIRCLE, R SQUARE}".
struct TypeRefParse {
    std::optional<TypeRef> ref;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return ref.has_value() && !has_errors(diagnostics); }
};
TypeRefParse parse_type_ref_text(std::string_view text, const ParseOptions& opts = {});

// Parses a single value literal, e.g. "TUPLE {STATUS 20, CITY 'London'}"
// or "RELATION {E ELLIPSE} {}".
struct ValueParse {
    std::optional<Value> value;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return value.has_value() && !has_errors(diagnostics); }
};
ValueParse parse_value_text(std::string_view text, const ParseOptions& opts = {});

} // namespace tdtc
