#include "tdtc/types.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace tdtc {

const char* builtin_name(BuiltIn b) {
    switch (b) {
        case BuiltIn::Integer: return "INTEGER";
        case BuiltIn::Rational: return "RATIONAL";
        case BuiltIn::Character: return "CHARACTER";
        case BuiltIn::Char: return "CHAR";
        case BuiltIn::Boolean: return "BOOLEAN";
    }
    return "?";
}

std::optional<BuiltIn> builtin_from_name(const std::string& name) {
    static const std::array<BuiltIn, 5> all = {
        BuiltIn::Integer, BuiltIn::Rational, BuiltIn::Character,
        BuiltIn::Char, BuiltIn::Boolean};
    for (BuiltIn b : all)
        if (name == builtin_name(b)) return b;
    return std::nullopt;
}

bool is_reserved_type_name(const std::string& name) {
    return name == "alpha" || name == "omega" || name == "#" ||
           name == "TUPLE" || name == "RELATION" ||
           builtin_from_name(name).has_value();
}

bool is_valid_type_name(const std::string& name) {
    if (name.empty()) return false;
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '#';
        if (!ok) return false;
    }
    return true;
}

// --- TypeRef -------------------------------------------------------------

struct TypeRef::Rep {
    Kind kind;
    std::string name;          // Declared
    BuiltIn builtin = BuiltIn::Integer;
    std::optional<Heading> heading;  // Tuple / Relation
};

TypeRef TypeRef::declared(std::string name) {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Declared;
    rep->name = std::move(name);
    return TypeRef(std::move(rep));
}

TypeRef TypeRef::builtin(BuiltIn b) {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::BuiltIn;
    rep->builtin = b;
    return TypeRef(std::move(rep));
}

TypeRef TypeRef::alpha() {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Alpha;
    return TypeRef(std::move(rep));
}

TypeRef TypeRef::omega() {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Omega;
    return TypeRef(std::move(rep));
}

TypeRef TypeRef::null() {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Null;
    return TypeRef(std::move(rep));
}

TypeRef TypeRef::tuple(Heading h) {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Tuple;
    rep->heading = std::move(h);
    return TypeRef(std::move(rep));
}

TypeRef TypeRef::relation(Heading h) {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Relation;
    rep->heading = std::move(h);
    return TypeRef(std::move(rep));
}

TypeRef::Kind TypeRef::kind() const { return rep_->kind; }

bool TypeRef::is_scalar() const {
    switch (rep_->kind) {
        case Kind::Declared:
        case Kind::BuiltIn:
        case Kind::Alpha:
        case Kind::Omega:
            return true;
        default:
            return false;
    }
}

bool TypeRef::is_nonscalar() const {
    return rep_->kind == Kind::Tuple || rep_->kind == Kind::Relation;
}

const std::string& TypeRef::name() const {
    if (rep_->kind != Kind::Declared)
        throw std::logic_error("TypeRef::name on non-declared type");
    return rep_->name;
}

BuiltIn TypeRef::builtin_kind() const {
    if (rep_->kind != Kind::BuiltIn)
        throw std::logic_error("TypeRef::builtin_kind on non-built-in type");
    return rep_->builtin;
}

const Heading& TypeRef::heading() const {
    if (!rep_->heading)
        throw std::logic_error("TypeRef::heading on scalar type");
    return *rep_->heading;
}

std::string TypeRef::display() const {
    switch (rep_->kind) {
        case Kind::Declared: return rep_->name;
        case Kind::BuiltIn: return builtin_name(rep_->builtin);
        case Kind::Alpha: return "alpha";
        case Kind::Omega: return "omega";
        case Kind::Null: return "#";
        case Kind::Tuple: return "TUPLE " + rep_->heading->display();
        case Kind::Relation: return "RELATION " + rep_->heading->display();
    }
    return "?";
}

namespace {
int kind_rank(TypeRef::Kind k) {
    switch (k) {
        case TypeRef::Kind::Alpha: return 0;
        case TypeRef::Kind::Omega: return 1;
        case TypeRef::Kind::Null: return 2;
        case TypeRef::Kind::BuiltIn: return 3;
        case TypeRef::Kind::Declared: return 4;
        case TypeRef::Kind::Tuple: return 5;
        case TypeRef::Kind::Relation: return 6;
    }
    return 7;
}
} // namespace

int compare(const TypeRef& a, const TypeRef& b) {
    const int ra = kind_rank(a.kind());
    const int rb = kind_rank(b.kind());
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a.kind()) {
        case TypeRef::Kind::Declared:
            return a.name().compare(b.name());
        case TypeRef::Kind::BuiltIn: {
            const int ia = static_cast<int>(a.builtin_kind());
            const int ib = static_cast<int>(b.builtin_kind());
            return ia == ib ? 0 : (ia < ib ? -1 : 1);
        }
        case TypeRef::Kind::Tuple:
        case TypeRef::Kind::Relation:
            return compare(a.heading(), b.heading());
        default:
            return 0;  // Alpha/Omega/Null are singletons per kind
    }
}

bool TypeRef::operator==(const TypeRef& other) const {
    return compare(*this, other) == 0;
}

bool TypeRef::operator<(const TypeRef& other) const {
    return compare(*this, other) < 0;
}

// --- Heading -------------------------------------------------------------

Heading::Heading(std::vector<Attribute> attrs) : attrs_(std::move(attrs)) {
    std::sort(attrs_.begin(), attrs_.end(),
              [](const Attribute& a, const Attribute& b) { return a.name < b.name; });
    for (size_t i = 1; i < attrs_.size(); ++i) {
        if (attrs_[i].name == attrs_[i - 1].name)
            throw std::invalid_argument("duplicate attribute name '" +
                                        attrs_[i].name + "' in heading");
    }
}

const Attribute* Heading::find(const std::string& name) const {
    auto it = std::lower_bound(
        attrs_.begin(), attrs_.end(), name,
        [](const Attribute& a, const std::string& n) { return a.name < n; });
    if (it != attrs_.end() && it->name == name) return &*it;
    return nullptr;
}

bool Heading::same_attribute_names(const Heading& other) const {
    if (attrs_.size() != other.attrs_.size()) return false;
    for (size_t i = 0; i < attrs_.size(); ++i)
        if (attrs_[i].name != other.attrs_[i].name) return false;
    return true;
}

std::string Heading::display() const {
    std::string out = "{";
    for (size_t i = 0; i < attrs_.size(); ++i) {
        if (i) out += ", ";
        out += attrs_[i].name + " " + attrs_[i].type.display();
    }
    out += "}";
    return out;
}

int compare(const Heading& a, const Heading& b) {
    const auto& xs = a.attributes();
    const auto& ys = b.attributes();
    const size_t n = std::min(xs.size(), ys.size());
    for (size_t i = 0; i < n; ++i) {
        if (int c = xs[i].name.compare(ys[i].name)) return c;
        if (int c = compare(xs[i].type, ys[i].type)) return c;
    }
    if (xs.size() == ys.size()) return 0;
    return xs.size() < ys.size() ? -1 : 1;
}

int heading_degree(const Heading& h) { return h.degree(); }

bool heading_equal(const Heading& a, const Heading& b) { return a == b; }

// --- Value ---------------------------------------------------------------

struct Value::Rep {
    Kind kind;
    TypeRef mst = TypeRef::null();  // Scalar
    std::string literal;            // Scalar
    std::vector<TupleTriplet> triplets;  // Tuple, sorted by attr
    Heading heading;                // Relation
    std::vector<Value> body;        // Relation, sorted + deduplicated
};

Value Value::scalar(TypeRef mst_tag, std::string literal) {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Scalar;
    rep->mst = std::move(mst_tag);
    rep->literal = std::move(literal);
    return Value(std::move(rep));
}

Value Value::tuple(std::vector<TupleTriplet> triplets) {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Tuple;
    rep->triplets = std::move(triplets);
    std::sort(rep->triplets.begin(), rep->triplets.end(),
              [](const TupleTriplet& a, const TupleTriplet& b) { return a.attr < b.attr; });
    for (size_t i = 1; i < rep->triplets.size(); ++i) {
        if (rep->triplets[i].attr == rep->triplets[i - 1].attr)
            throw std::invalid_argument("duplicate attribute name '" +
                                        rep->triplets[i].attr + "' in tuple value");
    }
    return Value(std::move(rep));
}

Value Value::relation(Heading heading, std::vector<Value> body) {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Relation;
    rep->heading = std::move(heading);
    for (const Value& t : body) {
        if (t.kind() != Kind::Tuple)
            throw std::invalid_argument("relation body element is not a tuple value");
        if (static_cast<int>(t.triplets().size()) != rep->heading.degree())
            throw std::invalid_argument("body tuple degree differs from heading");
        for (const TupleTriplet& tr : t.triplets())
            if (!rep->heading.find(tr.attr))
                throw std::invalid_argument("body tuple attribute '" + tr.attr +
                                            "' not in heading");
    }
    std::sort(body.begin(), body.end());
    body.erase(std::unique(body.begin(), body.end()), body.end());
    rep->body = std::move(body);
    return Value(std::move(rep));
}

Value Value::null_marker() {
    auto rep = std::make_shared<Rep>();
    rep->kind = Kind::Null;
    return Value(std::move(rep));
}

Value::Kind Value::kind() const { return rep_->kind; }

const TypeRef& Value::scalar_tag() const {
    if (rep_->kind != Kind::Scalar)
        throw std::logic_error("scalar_tag on non-scalar value");
    return rep_->mst;
}

const std::string& Value::scalar_literal() const {
    if (rep_->kind != Kind::Scalar)
        throw std::logic_error("scalar_literal on non-scalar value");
    return rep_->literal;
}

const std::vector<TupleTriplet>& Value::triplets() const {
    if (rep_->kind != Kind::Tuple)
        throw std::logic_error("triplets on non-tuple value");
    return rep_->triplets;
}

const Heading& Value::relation_heading() const {
    if (rep_->kind != Kind::Relation)
        throw std::logic_error("relation_heading on non-relation value");
    return rep_->heading;
}

const std::vector<Value>& Value::relation_body() const {
    if (rep_->kind != Kind::Relation)
        throw std::logic_error("relation_body on non-relation value");
    return rep_->body;
}

std::string Value::display() const {
    switch (rep_->kind) {
        case Kind::Null:
            return "#";
        case Kind::Scalar:
            // Selector literals are stored paren-wrapped ("('S1')") and
            // shown with their type name; bare literals stand alone.
            if (!rep_->literal.empty() && rep_->literal.front() == '(')
                return rep_->mst.display() + rep_->literal;
            return rep_->literal.empty() ? rep_->mst.display() : rep_->literal;
        case Kind::Tuple: {
            std::string out = "TUPLE {";
            for (size_t i = 0; i < rep_->triplets.size(); ++i) {
                if (i) out += ", ";
                out += rep_->triplets[i].attr + " " + rep_->triplets[i].value.display();
            }
            return out + "}";
        }
        case Kind::Relation: {
            std::string out = "RELATION " + rep_->heading.display() + " {";
            for (size_t i = 0; i < rep_->body.size(); ++i) {
                if (i) out += ", ";
                out += rep_->body[i].display();
            }
            return out + "}";
        }
    }
    return "?";
}

namespace {
int value_kind_rank(Value::Kind k) {
    switch (k) {
        case Value::Kind::Null: return 0;
        case Value::Kind::Scalar: return 1;
        case Value::Kind::Tuple: return 2;
        case Value::Kind::Relation: return 3;
    }
    return 4;
}
} // namespace

int compare(const Value& a, const Value& b) {
    const int ra = value_kind_rank(a.kind());
    const int rb = value_kind_rank(b.kind());
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a.kind()) {
        case Value::Kind::Null:
            return 0;
        case Value::Kind::Scalar: {
            if (int c = compare(a.scalar_tag(), b.scalar_tag())) return c;
            return a.scalar_literal().compare(b.scalar_literal());
        }
        case Value::Kind::Tuple: {
            const auto& xs = a.triplets();
            const auto& ys = b.triplets();
            const size_t n = std::min(xs.size(), ys.size());
            for (size_t i = 0; i < n; ++i) {
                if (int c = xs[i].attr.compare(ys[i].attr)) return c;
                if (int c = compare(xs[i].declared_type, ys[i].declared_type)) return c;
                if (int c = compare(xs[i].value, ys[i].value)) return c;
            }
            if (xs.size() == ys.size()) return 0;
            return xs.size() < ys.size() ? -1 : 1;
        }
        case Value::Kind::Relation: {
            if (int c = compare(a.relation_heading(), b.relation_heading())) return c;
            const auto& xs = a.relation_body();
            const auto& ys = b.relation_body();
            const size_t n = std::min(xs.size(), ys.size());
            for (size_t i = 0; i < n; ++i)
                if (int c = compare(xs[i], ys[i])) return c;
            if (xs.size() == ys.size()) return 0;
            return xs.size() < ys.size() ? -1 : 1;
        }
    }
    return 0;
}

bool Value::operator==(const Value& other) const { return compare(*this, other) == 0; }
bool Value::operator<(const Value& other) const { return compare(*this, other) < 0; }

TypeRef declared_type_of(const Value& v) {
    switch (v.kind()) {
        case Value::Kind::Null:
            return TypeRef::null();
        case Value::Kind::Scalar:
            return v.scalar_tag();
        case Value::Kind::Tuple: {
            std::vector<Attribute> attrs;
            for (const TupleTriplet& t : v.triplets())
                attrs.push_back({t.attr, t.declared_type});
            return TypeRef::tuple(Heading(std::move(attrs)));
        }
        case Value::Kind::Relation:
            return TypeRef::relation(v.relation_heading());
    }
    return TypeRef::null();
}

Value zero_tuple() { return Value::tuple({}); }

Value table_dee() { return Value::relation(Heading{}, {zero_tuple()}); }

Value table_dum() { return Value::relation(Heading{}, {}); }

} // namespace tdtc
