#include "tdtc/printer.hpp"

#include <algorithm>

namespace tdtc {

namespace {

std::string print_possrep(const PossrepDef& p) {
    std::string out = "POSSREP ";
    if (p.name) out += *p.name + " ";
    out += "{";
    bool first = true;
    for (const auto& c : p.components) {
        if (!first) out += ", ";
        first = false;
        out += c.name + " " + c.type.display();
    }
    for (const auto& c : p.derived) {
        if (!first) out += ", ";
        first = false;
        out += c.name + " = " + c.expression;
    }
    if (p.constraint) {
        if (!first) out += " ";
        out += "CONSTRAINT " + *p.constraint;
    }
    out += "}";
    return out;
}

std::string print_type_def(const TypeDef& def) {
    std::string out = "TYPE " + def.name;
    if (def.ordinal) out += " ORDINAL";
    if (def.union_flag) out += " UNION";
    if (!def.supertypes.empty()) {
        out += " IS {";
        for (size_t i = 0; i < def.supertypes.size(); ++i) {
            if (i) out += ", ";
            out += def.supertypes[i];
        }
        if (def.additional_constraint)
            out += " CONSTRAINT " + *def.additional_constraint;
        for (const auto& p : def.possreps) out += " " + print_possrep(p);
        for (const auto& p : def.derived_possreps) out += " " + print_possrep(p);
        out += "}";
    } else {
        for (const auto& p : def.possreps) out += " " + print_possrep(p);
        for (const auto& p : def.derived_possreps) out += " " + print_possrep(p);
    }
    out += ";";
    return out;
}

bool all_scalar_triplets(const Value& v) {
    return !v.triplets().empty() &&
           std::all_of(v.triplets().begin(), v.triplets().end(),
                       [](const TupleTriplet& t) {
                           return t.value.kind() == Value::Kind::Scalar;
                       });
}

// Tuple displays print back in <name, type, value> form: their bare word
// literals (e.g. "<CITY, CHAR, LONDON>") have no TUPLE-literal spelling.
std::string print_triplet_display(const Value& v) {
    std::string out;
    const auto& ts = v.triplets();
    for (size_t i = 0; i < ts.size(); ++i) {
        if (i) out += ", ";
        out += "<" + ts[i].attr + ", " + ts[i].declared_type.display() + ", " +
               ts[i].value.scalar_literal() + ">";
    }
    return out;
}

std::string print_heading_display(const Heading& h) {
    std::string out;
    const auto& attrs = h.attributes();
    for (size_t i = 0; i < attrs.size(); ++i) {
        if (i) out += ", ";
        out += "<" + attrs[i].name + ", " + attrs[i].type.display() + ">";
    }
    return out;
}

} // namespace

std::string print_declaration(const Declaration& d) {
    if (const auto* t = std::get_if<TypeDecl>(&d)) return print_type_def(t->def);
    if (const auto* v = std::get_if<VarDecl>(&d))
        return "VAR " + v->name + " " + v->type.display() + ";";
    if (const auto* h = std::get_if<HeadingDecl>(&d))
        return print_heading_display(h->heading);
    const auto& val = std::get<ValueDecl>(d);
    if (!val.name && val.value.kind() == Value::Kind::Tuple &&
        all_scalar_triplets(val.value))
        return print_triplet_display(val.value);
    if (val.name) return *val.name + ": " + val.value.display();
    return val.value.display();
}

std::string print_program(const std::vector<Declaration>& decls) {
    std::string out;
    for (const auto& d : decls) {
        out += print_declaration(d);
        out += "\n";
    }
    return out;
}

} // namespace tdtc
