#pragma once

#include <set>
#include <stdexcept>

#include "tdtc/lattice.hpp"
#include "tdtc/types.hpp"

namespace tdtc {

class ValueTypingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value admits several incomparable minimal types, so its most specific
// type is not unique (a scalar tagged with a union type, or body columns
// whose least upper bound branches).
class MstNotUniqueError : public ValueTypingError {
public:
    MstNotUniqueError(const std::string& msg, std::set<TypeRef> candidates)
        : ValueTypingError(msg), candidates_(std::move(candidates)) {}
    const std::set<TypeRef>& candidates() const { return candidates_; }

private:
    std::set<TypeRef> candidates_;
};

class LstNotUniqueError : public ValueTypingError {
public:
    LstNotUniqueError(const std::string& msg, std::set<TypeRef> candidates)
        : ValueTypingError(msg), candidates_(std::move(candidates)) {}
    const std::set<TypeRef>& candidates() const { return candidates_; }

private:
    std::set<TypeRef> candidates_;
};

struct ConformsOptions {
    // When set, the null marker conforms to any declared attribute type,
    // not just to '#'.
    bool null_conforms_all = false;
};

// Does the tuple value fit the heading? Attribute-name sets must be equal
// and each attribute's most specific type must be a subtype of the
// heading's declared type (inclusive polymorphism). The null marker
// conforms only to '#' unless null_conforms_all is set.
bool conforms(const Value& tuple_value, const Heading& h, const TypeGraph& g,
              const ConformsOptions& opts = {});

// Every body tuple conforms to the relation's own heading.
bool relation_body_conforms(const Value& relation_value, const TypeGraph& g,
                            const ConformsOptions& opts = {});

// The most specific type of a value. Scalars return their tag after
// validating it could actually be a most specific type (a union type
// cannot: all of its values belong to an immediate subtype). Tuples
// recurse attribute-wise; relations take the least upper bound of each
// column, which is omega for an empty body.
TypeRef mst(const Value& v, const TypeGraph& g);

// The unique maximal declared (non-alpha) type admitting the value.
TypeRef least_specific_type(const Value& v, const TypeGraph& g);

// Least upper bound of a set of types under the subtype order; empty sets
// yield omega. Throws MstNotUniqueError when minimal common supertypes
// branch, ValueTypingError when no common supertype exists.
TypeRef least_upper_bound(const std::set<TypeRef>& types, const TypeGraph& g);

} // namespace tdtc
