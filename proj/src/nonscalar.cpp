#include "tdtc/nonscalar.hpp"

#include <stdexcept>

namespace tdtc {

namespace {

bool same_generator(const TypeRef& a, const TypeRef& b) {
    return (a.kind() == TypeRef::Kind::Tuple && b.kind() == TypeRef::Kind::Tuple) ||
           (a.kind() == TypeRef::Kind::Relation && b.kind() == TypeRef::Kind::Relation);
}

} // namespace

bool subtype_query(const TypeRef& a, const TypeRef& b, const TypeGraph& g) {
    if (a == b) return true;
    if (a.is_scalar() && b.is_scalar()) return g.is_subtype(a, b);
    if (same_generator(a, b)) return ns_is_subtype(a, b, g);
    // '#', or a tuple against a relation, or scalar against nonscalar:
    // never related.
    return false;
}

bool ns_is_subtype(const TypeRef& a, const TypeRef& b, const TypeGraph& g) {
    if (!same_generator(a, b)) {
        if (!a.is_nonscalar() || !b.is_nonscalar())
            throw std::invalid_argument("ns_is_subtype requires tuple or relation types");
        return false;  // a tuple type is never comparable with a relation type
    }
    const Heading& ha = a.heading();
    const Heading& hb = b.heading();
    if (!ha.same_attribute_names(hb)) return false;
    for (const Attribute& attr : ha.attributes()) {
        const Attribute* other = hb.find(attr.name);
        if (!subtype_query(attr.type, other->type, g)) return false;
    }
    return true;
}

namespace {

std::set<TypeRef> attribute_lifts(const TypeRef& t, const TypeGraph& g, bool up) {
    std::set<TypeRef> out;
    switch (t.kind()) {
        case TypeRef::Kind::Null:
            return out;  // outside the order
        case TypeRef::Kind::Tuple:
        case TypeRef::Kind::Relation:
            return up ? ns_immediate_supertypes(t, g) : ns_immediate_subtypes(t, g);
        default:
            return up ? g.immediate_supertypes(t) : g.immediate_subtypes(t);
    }
}

std::set<TypeRef> lift_one_attribute(const TypeRef& a, const TypeGraph& g, bool up) {
    if (!a.is_nonscalar())
        throw std::invalid_argument("expected a tuple or relation type");
    std::set<TypeRef> out;
    const auto& attrs = a.heading().attributes();
    for (size_t i = 0; i < attrs.size(); ++i) {
        for (const TypeRef& lifted : attribute_lifts(attrs[i].type, g, up)) {
            std::vector<Attribute> next = attrs;
            next[i].type = lifted;
            Heading h(std::move(next));
            out.insert(a.kind() == TypeRef::Kind::Tuple ? TypeRef::tuple(std::move(h))
                                                        : TypeRef::relation(std::move(h)));
        }
    }
    return out;
}

} // namespace

std::set<TypeRef> ns_immediate_supertypes(const TypeRef& a, const TypeGraph& g) {
    return lift_one_attribute(a, g, /*up=*/true);
}

std::set<TypeRef> ns_immediate_subtypes(const TypeRef& a, const TypeGraph& g) {
    return lift_one_attribute(a, g, /*up=*/false);
}

namespace {

bool attr_is_union(const TypeRef& t, const TypeGraph& g) {
    if (t.is_nonscalar()) return ns_is_union(t, g);
    if (t.kind() == TypeRef::Kind::Null) return false;
    return g.is_union_type(t);
}

bool attr_is_dummy(const TypeRef& t, const TypeGraph& g) {
    if (t.is_nonscalar()) return ns_is_dummy(t, g);
    if (t.kind() == TypeRef::Kind::Null) return false;
    return g.is_dummy_type(t);
}

} // namespace

bool ns_is_union(const TypeRef& a, const TypeGraph& g) {
    if (!a.is_nonscalar())
        throw std::invalid_argument("ns_is_union requires a tuple or relation type");
    if (a.heading().empty()) return false;
    for (const Attribute& attr : a.heading().attributes())
        if (!attr_is_union(attr.type, g)) return false;
    return true;
}

bool ns_is_dummy(const TypeRef& a, const TypeGraph& g) {
    if (!a.is_nonscalar())
        throw std::invalid_argument("ns_is_dummy requires a tuple or relation type");
    if (a.heading().empty()) return false;
    for (const Attribute& attr : a.heading().attributes())
        if (!attr_is_dummy(attr.type, g)) return false;
    return true;
}

namespace {

TypeRef substitute_bound(const TypeRef& a, bool to_alpha) {
    if (!a.is_nonscalar())
        throw std::invalid_argument("maximal/minimal types apply to tuple or relation types");
    std::vector<Attribute> attrs = a.heading().attributes();
    for (Attribute& attr : attrs) {
        if (attr.type.is_nonscalar())
            attr.type = substitute_bound(attr.type, to_alpha);
        else if (attr.type.kind() != TypeRef::Kind::Null)
            attr.type = to_alpha ? TypeRef::alpha() : TypeRef::omega();
    }
    Heading h(std::move(attrs));
    return a.kind() == TypeRef::Kind::Tuple ? TypeRef::tuple(std::move(h))
                                            : TypeRef::relation(std::move(h));
}

} // namespace

TypeRef maximal_type(const TypeRef& a) { return substitute_bound(a, true); }

TypeRef minimal_type(const TypeRef& a) { return substitute_bound(a, false); }

} // namespace tdtc
