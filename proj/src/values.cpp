#include "tdtc/values.hpp"

#include <algorithm>

#include "tdtc/nonscalar.hpp"

namespace tdtc {

namespace {

std::string list_types(const std::set<TypeRef>& ts) {
    std::string out;
    for (const TypeRef& t : ts) {
        if (!out.empty()) out += ", ";
        out += t.display();
    }
    return out;
}

void validate_scalar_tag(const TypeRef& tag, const TypeGraph& g) {
    switch (tag.kind()) {
        case TypeRef::Kind::BuiltIn:
            return;
        case TypeRef::Kind::Declared: {
            if (!g.contains(tag)) throw UnknownTypeError(tag.name());
            if (g.is_union_type(tag)) {
                std::set<TypeRef> candidates = g.immediate_subtypes(tag);
                throw MstNotUniqueError(
                    "'" + tag.display() +
                        "' is a union type, so it is not the most specific type of any "
                        "value; candidates: {" + list_types(candidates) + "}",
                    std::move(candidates));
            }
            return;
        }
        case TypeRef::Kind::Alpha: {
            std::set<TypeRef> candidates = g.immediate_subtypes(tag);
            throw MstNotUniqueError(
                "alpha is a dummy type and admits no values of its own; candidates: {" +
                    list_types(candidates) + "}",
                std::move(candidates));
        }
        case TypeRef::Kind::Omega:
            throw ValueTypingError("type omega contains no values");
        default:
            throw ValueTypingError("scalar value tagged with non-scalar type '" +
                                   tag.display() + "'");
    }
}

} // namespace

TypeRef least_upper_bound(const std::set<TypeRef>& types, const TypeGraph& g) {
    if (types.empty()) return TypeRef::omega();
    if (types.size() == 1) return *types.begin();

    const TypeRef& first = *types.begin();
    const bool scalars = first.is_scalar() || first.kind() == TypeRef::Kind::Null;
    if (scalars) {
        for (const TypeRef& t : types)
            if (t.is_nonscalar() || (t.kind() == TypeRef::Kind::Null && t != first))
                throw ValueTypingError("values of '" + first.display() + "' and '" +
                                       t.display() + "' have no common supertype");
        if (first.kind() == TypeRef::Kind::Null)
            throw ValueTypingError("'#' has no common supertype with any other type");

        // Common supertypes: intersection of each type's up-set.
        std::set<TypeRef> common;
        bool started = false;
        for (const TypeRef& t : types) {
            std::set<TypeRef> ups = g.proper_supertypes(t);
            ups.insert(t);
            if (!started) {
                common = std::move(ups);
                started = true;
            } else {
                std::set<TypeRef> next;
                std::set_intersection(common.begin(), common.end(), ups.begin(),
                                      ups.end(), std::inserter(next, next.begin()));
                common = std::move(next);
            }
        }
        // Minimal elements of the intersection.
        std::set<TypeRef> minimal;
        for (const TypeRef& c : common) {
            bool is_minimal = true;
            for (const TypeRef& d : common)
                if (d != c && g.is_subtype(d, c)) is_minimal = false;
            if (is_minimal) minimal.insert(c);
        }
        if (minimal.size() == 1) return *minimal.begin();
        throw MstNotUniqueError("least upper bound is not unique; candidates: {" +
                                    list_types(minimal) + "}",
                                std::move(minimal));
    }

    // All nonscalar of the same generator over the same attribute names.
    for (const TypeRef& t : types) {
        if (t.kind() != first.kind())
            throw ValueTypingError("values of '" + first.display() + "' and '" +
                                   t.display() + "' have no common supertype");
        if (!t.heading().same_attribute_names(first.heading()))
            throw ValueTypingError(
                "tuple/relation types with different attribute names have no "
                "common supertype");
    }
    std::vector<Attribute> attrs;
    for (const Attribute& a : first.heading().attributes()) {
        std::set<TypeRef> column;
        for (const TypeRef& t : types) column.insert(t.heading().find(a.name)->type);
        attrs.push_back({a.name, least_upper_bound(column, g)});
    }
    Heading h(std::move(attrs));
    return first.kind() == TypeRef::Kind::Tuple ? TypeRef::tuple(std::move(h))
                                                : TypeRef::relation(std::move(h));
}

TypeRef mst(const Value& v, const TypeGraph& g) {
    switch (v.kind()) {
        case Value::Kind::Null:
            return TypeRef::null();
        case Value::Kind::Scalar:
            validate_scalar_tag(v.scalar_tag(), g);
            return v.scalar_tag();
        case Value::Kind::Tuple: {
            std::vector<Attribute> attrs;
            for (const TupleTriplet& t : v.triplets())
                attrs.push_back({t.attr, mst(t.value, g)});
            return TypeRef::tuple(Heading(std::move(attrs)));
        }
        case Value::Kind::Relation: {
            std::vector<Attribute> attrs;
            for (const Attribute& a : v.relation_heading().attributes()) {
                std::set<TypeRef> column;
                for (const Value& t : v.relation_body()) {
                    for (const TupleTriplet& tr : t.triplets())
                        if (tr.attr == a.name) column.insert(mst(tr.value, g));
                }
                attrs.push_back({a.name, least_upper_bound(column, g)});
            }
            return TypeRef::relation(Heading(std::move(attrs)));
        }
    }
    throw ValueTypingError("unreachable value kind");
}

namespace {

TypeRef lst_of_type(const TypeRef& t, const TypeGraph& g) {
    switch (t.kind()) {
        case TypeRef::Kind::Null:
            return TypeRef::null();
        case TypeRef::Kind::BuiltIn:
            return t;  // built-ins are their own single-type chain
        case TypeRef::Kind::Alpha:
            throw ValueTypingError(
                "no declared type below alpha admits the value");
        case TypeRef::Kind::Declared:
        case TypeRef::Kind::Omega: {
            std::set<TypeRef> admitting = g.proper_supertypes(t);
            if (t.kind() == TypeRef::Kind::Declared) admitting.insert(t);
            admitting.erase(TypeRef::alpha());
            std::set<TypeRef> maximal;
            for (const TypeRef& c : admitting) {
                bool is_maximal = true;
                for (const TypeRef& d : admitting)
                    if (d != c && g.is_subtype(c, d)) is_maximal = false;
                if (is_maximal) maximal.insert(c);
            }
            if (maximal.size() == 1) return *maximal.begin();
            throw LstNotUniqueError(
                "least specific type is not unique; candidates: {" +
                    list_types(maximal) + "}",
                std::move(maximal));
        }
        case TypeRef::Kind::Tuple:
        case TypeRef::Kind::Relation: {
            std::vector<Attribute> attrs;
            for (const Attribute& a : t.heading().attributes())
                attrs.push_back({a.name, lst_of_type(a.type, g)});
            Heading h(std::move(attrs));
            return t.kind() == TypeRef::Kind::Tuple ? TypeRef::tuple(std::move(h))
                                                    : TypeRef::relation(std::move(h));
        }
    }
    throw ValueTypingError("unreachable type kind");
}

} // namespace

TypeRef least_specific_type(const Value& v, const TypeGraph& g) {
    return lst_of_type(mst(v, g), g);
}

bool conforms(const Value& tuple_value, const Heading& h, const TypeGraph& g,
              const ConformsOptions& opts) {
    if (tuple_value.kind() != Value::Kind::Tuple)
        throw std::invalid_argument("conforms expects a tuple value");
    const auto& triplets = tuple_value.triplets();
    if (static_cast<int>(triplets.size()) != h.degree()) return false;
    for (const TupleTriplet& t : triplets) {
        const Attribute* declared = h.find(t.attr);
        if (!declared) return false;
        if (t.value.kind() == Value::Kind::Null) {
            if (declared->type.kind() == TypeRef::Kind::Null) continue;
            if (opts.null_conforms_all) continue;
            return false;
        }
        if (!subtype_query(mst(t.value, g), declared->type, g)) return false;
    }
    return true;
}

bool relation_body_conforms(const Value& relation_value, const TypeGraph& g,
                            const ConformsOptions& opts) {
    if (relation_value.kind() != Value::Kind::Relation)
        throw std::invalid_argument("relation_body_conforms expects a relation value");
    for (const Value& t : relation_value.relation_body())
        if (!conforms(t, relation_value.relation_heading(), g, opts)) return false;
    return true;
}

} // namespace tdtc
