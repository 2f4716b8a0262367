#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tdtc {

// The five system-defined scalar types. CHARACTER and CHAR are distinct
// nominal types with disjoint value sets, like every other pair.
enum class BuiltIn { Integer, Rational, Character, Char, Boolean };

const char* builtin_name(BuiltIn b);
std::optional<BuiltIn> builtin_from_name(const std::string& name);

// Names reserved by the system: alpha, omega, #, TUPLE, RELATION and the
// five built-in type names. None of them may be declared by the user.
bool is_reserved_type_name(const std::string& name);

// Valid identifier: non-empty, letters/digits/'_'/'#', case-sensitive.
bool is_valid_type_name(const std::string& name);

class Heading;

// A name-resolved reference to a type: a user-declared scalar, a built-in,
// one of the conceptual bounds alpha/omega, the null marker '#', or a
// generated TUPLE/RELATION type carrying its full heading.
//
// Equality is nominal for Declared/BuiltIn and structural for
// Tuple/Relation (headings compared as sets). Immutable and cheap to copy.
class TypeRef {
public:
    enum class Kind { Declared, BuiltIn, Alpha, Omega, Null, Tuple, Relation };

    static TypeRef declared(std::string name);
    static TypeRef builtin(BuiltIn b);
    static TypeRef alpha();
    static TypeRef omega();
    static TypeRef null();
    static TypeRef tuple(Heading h);
    static TypeRef relation(Heading h);

    Kind kind() const;
    bool is_scalar() const;     // everything except Tuple/Relation/Null
    bool is_nonscalar() const;  // Tuple or Relation

    const std::string& name() const;  // Kind::Declared only
    BuiltIn builtin_kind() const;     // Kind::BuiltIn only
    const Heading& heading() const;   // Kind::Tuple / Kind::Relation only

    // Rendering used everywhere a type is shown to the user:
    // "CIRCLE", "INTEGER", "alpha", "omega", "#", "TUPLE {A T, ...}".
    std::string display() const;

    bool operator==(const TypeRef& other) const;
    bool operator!=(const TypeRef& other) const { return !(*this == other); }
    // Total order; gives deterministic iteration for sets and output.
    bool operator<(const TypeRef& other) const;

private:
    struct Rep;
    explicit TypeRef(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const Rep> rep_;
};

int compare(const TypeRef& a, const TypeRef& b);

struct Attribute {
    std::string name;
    TypeRef type;

    bool operator==(const Attribute& other) const {
        return name == other.name && type == other.type;
    }
};

// A set of <attribute-name, type> pairs with pairwise-distinct names.
// Degree zero (the empty heading) is valid. Attributes are kept sorted by
// name, so equality is order-insensitive by construction.
class Heading {
public:
    Heading() = default;
    // Throws std::invalid_argument on duplicate attribute names; a heading
    // with duplicates is never silently merged.
    explicit Heading(std::vector<Attribute> attrs);

    int degree() const { return static_cast<int>(attrs_.size()); }
    bool empty() const { return attrs_.empty(); }
    const std::vector<Attribute>& attributes() const { return attrs_; }
    const Attribute* find(const std::string& name) const;
    bool same_attribute_names(const Heading& other) const;

    std::string display() const;  // "{A INTEGER, B CHAR}"

    bool operator==(const Heading& other) const { return attrs_ == other.attrs_; }
    bool operator!=(const Heading& other) const { return !(*this == other); }

private:
    std::vector<Attribute> attrs_;  // sorted by name
};

int compare(const Heading& a, const Heading& b);

int heading_degree(const Heading& h);
bool heading_equal(const Heading& a, const Heading& b);

// One possible representation of a scalar type. Regular possreps carry
// typed components; derived possreps (on nonroot types) carry
// component = <expression> pairs with the expression kept as opaque text.
// The two component forms never coexist in one possrep.
struct PossrepComponent {
    std::string name;
    TypeRef type;

    bool operator==(const PossrepComponent& o) const {
        return name == o.name && type == o.type;
    }
};

struct DerivedComponent {
    std::string name;
    std::string expression;  // verbatim source text

    bool operator==(const DerivedComponent& o) const {
        return name == o.name && expression == o.expression;
    }
};

struct PossrepDef {
    std::optional<std::string> name;
    std::vector<PossrepComponent> components;
    std::vector<DerivedComponent> derived;
    std::optional<std::string> constraint;  // opaque boolean expression

    bool is_derived() const { return !derived.empty(); }

    bool operator==(const PossrepDef& o) const {
        return name == o.name && components == o.components &&
               derived == o.derived && constraint == o.constraint;
    }
};

// The parsed declaration of one scalar type.
struct TypeDef {
    std::string name;
    bool ordinal = false;
    bool union_flag = false;
    std::vector<std::string> supertypes;  // empty => root type
    std::vector<PossrepDef> possreps;
    std::vector<PossrepDef> derived_possreps;
    std::optional<std::string> additional_constraint;

    bool is_root() const { return supertypes.empty(); }
    // A dummy declaration is exactly a UNION with no possrep of any form
    // and no additional constraint.
    bool is_dummy() const {
        return union_flag && possreps.empty() && derived_possreps.empty() &&
               !additional_constraint.has_value();
    }

    bool operator==(const TypeDef& o) const {
        return name == o.name && ordinal == o.ordinal &&
               union_flag == o.union_flag && supertypes == o.supertypes &&
               possreps == o.possreps && derived_possreps == o.derived_possreps &&
               additional_constraint == o.additional_constraint;
    }
};

class Value;

// <A, T, v>: the attribute name, its declared type, and its value.
struct TupleTriplet;

// A typed constant: a scalar with a most-specific-type tag and an opaque
// literal, a tuple of triplets, a relation (heading + body set), or the
// null marker. Immutable, shared, order-insensitive where the model says
// "set".
class Value {
public:
    enum class Kind { Scalar, Tuple, Relation, Null };

    // `literal` is opaque selector/literal text, e.g. "('S1')" or "20".
    static Value scalar(TypeRef mst_tag, std::string literal);
    // Throws std::invalid_argument on duplicate attribute names.
    static Value tuple(std::vector<TupleTriplet> triplets);
    // Body tuples must use exactly the heading's attribute names; duplicate
    // tuples collapse. Throws std::invalid_argument otherwise.
    static Value relation(Heading heading, std::vector<Value> body);
    static Value null_marker();

    Kind kind() const;
    const TypeRef& scalar_tag() const;
    const std::string& scalar_literal() const;
    const std::vector<TupleTriplet>& triplets() const;  // sorted by name
    const Heading& relation_heading() const;
    const std::vector<Value>& relation_body() const;  // sorted, deduplicated

    std::string display() const;

    bool operator==(const Value& other) const;
    bool operator!=(const Value& other) const { return !(*this == other); }
    bool operator<(const Value& other) const;

private:
    struct Rep;
    explicit Value(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
    std::shared_ptr<const Rep> rep_;
};

int compare(const Value& a, const Value& b);

struct TupleTriplet {
    std::string attr;
    TypeRef declared_type;
    Value value;

    bool operator==(const TupleTriplet& o) const {
        return attr == o.attr && declared_type == o.declared_type && value == o.value;
    }
};

// The three canonical degree-0 values.
Value zero_tuple();  // the unique tuple over the empty heading
Value table_dee();   // RELATION {} {TUPLE {}}
Value table_dum();   // RELATION {} {}

// The structural declared type of a value: the scalar's tag, '#' for the
// null marker, TUPLE/RELATION over declared attribute types otherwise.
TypeRef declared_type_of(const Value& v);

} // namespace tdtc
