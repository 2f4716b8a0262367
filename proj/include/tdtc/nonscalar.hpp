#pragma once

#include <set>

#include "tdtc/lattice.hpp"
#include "tdtc/types.hpp"

namespace tdtc {

// Subtype test over arbitrary type references. Reflexive for every type
// (including '#'); scalar pairs delegate to the graph; TUPLE is compared
// with TUPLE and RELATION with RELATION, attribute-wise over identical
// attribute-name sets; everything else is unrelated. '#' relates to no
// type but itself.
bool subtype_query(const TypeRef& a, const TypeRef& b, const TypeGraph& g);

// Attribute-wise subtyping for two tuple types or two relation types.
// Throws std::invalid_argument unless both are the same generator;
// UnknownTypeError when an attribute type does not resolve.
bool ns_is_subtype(const TypeRef& a, const TypeRef& b, const TypeGraph& g);

// The immediate supertypes of a tuple/relation type: every type obtained
// by lifting exactly one attribute to one of its immediate supertypes.
std::set<TypeRef> ns_immediate_supertypes(const TypeRef& a, const TypeGraph& g);
std::set<TypeRef> ns_immediate_subtypes(const TypeRef& a, const TypeGraph& g);

// A tuple/relation type is union (resp. dummy) iff every attribute type
// is. A degree-0 heading is neither: TUPLE {} holds the 0-tuple and
// RELATION {} holds TABLE_DEE and TABLE_DUM, so they cannot be valueless.
bool ns_is_union(const TypeRef& a, const TypeGraph& g);
bool ns_is_dummy(const TypeRef& a, const TypeGraph& g);

// Attribute-wise alpha (resp. omega) substitution, recursing into nested
// nonscalar attributes. Degree-0 types are their own maximal and minimal
// types. '#' attributes are outside the scalar order and stay fixed.
TypeRef maximal_type(const TypeRef& a);
TypeRef minimal_type(const TypeRef& a);

} // namespace tdtc
