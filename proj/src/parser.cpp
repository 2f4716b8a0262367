#include "tdtc/parser.hpp"

#include <algorithm>
#include <cctype>

namespace tdtc {

Span declaration_span(const Declaration& d) {
    return std::visit([](const auto& x) { return x.span; }, d);
}

const std::string& declaration_file(const Declaration& d) {
    return std::visit([](const auto& x) -> const std::string& { return x.file; }, d);
}

bool declarations_equal(const Declaration& a, const Declaration& b) {
    if (a.index() != b.index()) return false;
    if (const auto* ta = std::get_if<TypeDecl>(&a))
        return ta->def == std::get<TypeDecl>(b).def;
    if (const auto* va = std::get_if<VarDecl>(&a)) {
        const auto& vb = std::get<VarDecl>(b);
        return va->name == vb.name && va->type == vb.type;
    }
    if (const auto* ha = std::get_if<HeadingDecl>(&a))
        return ha->heading == std::get<HeadingDecl>(b).heading;
    const auto& xa = std::get<ValueDecl>(a);
    const auto& xb = std::get<ValueDecl>(b);
    return xa.name == xb.name && xa.value == xb.value;
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string to_upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

std::string describe(const Token& t) {
    switch (t.kind) {
        case Token::Kind::End: return "end of input";
        case Token::Kind::Keyword: return "keyword '" + t.lexeme + "'";
        case Token::Kind::Identifier: return "identifier '" + t.lexeme + "'";
        default: return "'" + t.lexeme + "'";
    }
}

class Parser {
public:
    Parser(std::string_view source, const ParseOptions& opts, std::string_view file)
        : src_(source), opts_(opts), file_(file) {
        LexResult lexed = tokenize(source, file);
        tokens_ = std::move(lexed.tokens);
        result_.diagnostics = std::move(lexed.diagnostics);
    }

    ParseResult parse_program() {
        while (!at_end()) {
            const Token& t = cur();
            if (t.is_keyword("TYPE")) {
                parse_type_decl();
            } else if (t.is_keyword("VAR")) {
                parse_var_decl();
            } else if (t.is_punct("<")) {
                parse_angle_display();
            } else if (t.kind == Token::Kind::Identifier && peek(1).is_punct(":")) {
                parse_value_binding();
            } else if (is_value_start(t)) {
                parse_value_display();
            } else if (t.is_punct(";") || t.is_punct(".") || t.is_punct(",")) {
                advance();  // statement separators are optional everywhere
            } else if (t.is_punct(")")) {
                if (opts_.strict)
                    error(t.span, "stray ')' (expected a declaration)");
                else
                    warning(t.span, "stray ')' ignored");
                advance();
            } else {
                error(t.span, "expected TYPE, VAR or a value display, found " + describe(t));
                recover_to_declaration();
            }
        }
        return std::move(result_);
    }

    ParseResult parse_type_ref_only() {
        std::optional<TypeRef> ref = parse_type_ref();
        if (ref && !at_end())
            error(cur().span, "unexpected " + describe(cur()) + " after type reference");
        if (ref)
            result_.decls.push_back(VarDecl{"", std::move(*ref), Span{1, 1, 0},
                                            std::string(file_)});
        return std::move(result_);
    }

    ParseResult parse_value_only() {
        std::optional<Value> v = parse_value();
        if (v && !at_end())
            error(cur().span, "unexpected " + describe(cur()) + " after value literal");
        if (v)
            result_.decls.push_back(ValueDecl{std::nullopt, std::move(*v), Span{1, 1, 0},
                                              std::string(file_)});
        return std::move(result_);
    }

private:
    // --- token plumbing ---------------------------------------------------

    const Token& cur() const { return tokens_[pos_]; }
    const Token& peek(size_t k) const {
        const size_t i = pos_ + k;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at_end() const { return cur().kind == Token::Kind::End; }
    void advance() {
        if (pos_ + 1 < tokens_.size()) ++pos_;
    }

    bool accept_punct(std::string_view p) {
        if (cur().is_punct(p)) {
            advance();
            return true;
        }
        return false;
    }

    bool accept_keyword(std::string_view kw) {
        if (cur().is_keyword(kw)) {
            advance();
            return true;
        }
        return false;
    }

    bool expect_punct(std::string_view p, std::string_view context) {
        if (accept_punct(p)) return true;
        error(cur().span, "expected '" + std::string(p) + "' " + std::string(context) +
                              ", found " + describe(cur()));
        return false;
    }

    void error(Span span, std::string message) {
        result_.diagnostics.push_back(
            {Diagnostic::Severity::Error, std::move(message), span, std::string(file_)});
    }

    void warning(Span span, std::string message) {
        result_.diagnostics.push_back(
            {Diagnostic::Severity::Warning, std::move(message), span, std::string(file_)});
    }

    void mark(Production p) { result_.productions.insert(p); }

    // Skip to the next plausible declaration start.
    void recover_to_declaration() {
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0 && (t.is_keyword("TYPE") || t.is_keyword("VAR"))) return;
            if (t.is_punct("{") || t.is_punct("(") || t.is_punct("[")) ++depth;
            if (t.is_punct("}") || t.is_punct(")") || t.is_punct("]")) --depth;
            advance();
        }
    }

    // Skip to the closing '}' of the current brace level.
    void recover_to_close_brace() {
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (t.is_punct("{")) ++depth;
            if (t.is_punct("}")) {
                if (depth == 0) return;
                --depth;
            }
            advance();
        }
    }

    void consume_terminator() {
        while (cur().is_punct(";") || cur().is_punct(".")) advance();
    }

    // --- opaque expressions ------------------------------------------------

    // Consumes tokens up to (not including) a depth-0 stop token and returns
    // the verbatim source slice, trimmed. Stop tokens: '}' always, plus ','
    // when `stop_at_comma`, plus the listed keywords.
    std::string scan_expression(bool stop_at_comma,
                                std::initializer_list<std::string_view> stop_keywords) {
        const size_t start_offset = cur().offset;
        size_t end_offset = start_offset;
        int depth = 0;
        bool consumed = false;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0) {
                if (t.is_punct("}") || t.is_punct(";")) break;
                if (stop_at_comma && t.is_punct(",")) break;
                bool stop = false;
                for (auto kw : stop_keywords)
                    if (t.is_keyword(kw)) stop = true;
                if (stop) break;
            }
            if (t.is_punct("{") || t.is_punct("(") || t.is_punct("[")) ++depth;
            if (t.is_punct(")") || t.is_punct("]")) --depth;
            if (t.is_punct("}")) --depth;
            end_offset = t.offset + t.length;
            consumed = true;
            advance();
        }
        if (!consumed) return "";
        std::string text(src_.substr(start_offset, end_offset - start_offset));
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
            text.pop_back();
        return text;
    }

    // Verbatim balanced "( ... )" slice, parens included.
    std::string scan_paren_group() {
        const size_t start_offset = cur().offset;
        size_t end_offset = start_offset;
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (t.is_punct("(")) ++depth;
            if (t.is_punct(")")) --depth;
            end_offset = t.offset + t.length;
            advance();
            if (depth == 0) break;
        }
        return std::string(src_.substr(start_offset, end_offset - start_offset));
    }

    // --- type declarations --------------------------------------------------

    // Type-name position accepts identifiers and the reserved words
    // (alpha, omega, '#', TUPLE, RELATION, built-ins); the registry rejects
    // reserved names with a proper validation diagnostic.
    std::optional<std::string> parse_type_name(std::string_view context) {
        const Token& t = cur();
        if (t.kind == Token::Kind::Identifier) {
            advance();
            return t.lexeme;
        }
        if (t.kind == Token::Kind::Keyword &&
            (t.lexeme == "alpha" || t.lexeme == "omega" || t.lexeme == "#" ||
             t.lexeme == "TUPLE" || t.lexeme == "RELATION" ||
             builtin_from_name(t.lexeme))) {
            advance();
            return t.lexeme;
        }
        error(t.span, "expected " + std::string(context) + ", found " + describe(t));
        return std::nullopt;
    }

    // <user scalar type def> ::= TYPE <name> [ORDINAL] [UNION]
    //                            ( <possrep def list> | IS { ... } )
    void parse_type_decl() {
        const Span span = cur().span;
        advance();  // TYPE
        auto name = parse_type_name("type name after TYPE");
        if (!name) {
            recover_to_declaration();
            return;
        }

        TypeDef def;
        def.name = *name;
        for (;;) {
            if (accept_keyword("ORDINAL")) {
                def.ordinal = true;
                mark(Production::OrdinalSpec);
            } else if (accept_keyword("UNION")) {
                def.union_flag = true;
                mark(Production::UnionSpec);
            } else {
                break;
            }
        }

        bool bad = false;
        if (accept_keyword("IS")) {
            if (!parse_is_def(def)) bad = true;
        } else {
            while (cur().is_keyword("POSSREP"))
                if (!parse_possrep(def)) {
                    bad = true;
                    break;
                }
        }
        consume_terminator();
        if (bad) return;

        if (opts_.mode == Mode::Inheritance && !def.union_flag) {
            const std::string msg =
                "type '" + def.name + "' lacks UNION, which the inheritance grammar requires";
            if (opts_.strict)
                error(span, msg);
            else
                warning(span, msg + " (accepted in lenient mode)");
        }

        mark(opts_.mode == Mode::Plain ? Production::PlainScalarDef
             : def.is_root()           ? Production::RootScalarDef
                                       : Production::NonrootScalarDef);
        if (def.is_dummy())
            mark(def.is_root() ? Production::DummyRootDef : Production::DummyNonrootDef);
        if (def.supertypes.size() >= 2) mark(Production::MultipleInheritance);

        result_.decls.push_back(TypeDecl{std::move(def), span, std::string(file_)});
    }

    // <is def> ::= IS { <scalar type name commalist>
    //                   [ <possrep def list>
    //                   | <additional constraint def> [<derived possrep def list>] ] }
    bool parse_is_def(TypeDef& def) {
        if (!expect_punct("{", "after IS")) {
            recover_to_declaration();
            return false;
        }
        if (cur().is_punct("}")) {
            error(cur().span, "IS requires at least one supertype name");
            advance();
            return false;
        }
        for (;;) {
            auto super = parse_type_name("supertype name in IS list");
            if (!super) {
                recover_to_close_brace();
                accept_punct("}");
                return false;
            }
            def.supertypes.push_back(*super);
            if (!accept_punct(",")) break;
        }
        for (;;) {
            const Token& t = cur();
            if (t.is_punct("}")) {
                advance();
                break;
            }
            if (t.is_keyword("POSSREP")) {
                if (!parse_possrep(def)) return false;
            } else if (t.is_keyword("CONSTRAINT")) {
                advance();
                std::string expr = scan_expression(false, {"POSSREP", "CONSTRAINT", "TYPE", "VAR"});
                if (expr.empty()) {
                    error(t.span, "expected a boolean expression after CONSTRAINT");
                    return false;
                }
                if (def.additional_constraint) {
                    error(t.span, "duplicate CONSTRAINT in IS body");
                } else {
                    def.additional_constraint = std::move(expr);
                    mark(Production::AdditionalConstraint);
                }
            } else if (t.kind == Token::Kind::End) {
                error(t.span, "missing '}' closing the IS body");
                return false;
            } else {
                error(t.span, "expected POSSREP, CONSTRAINT or '}' in IS body, found " +
                                  describe(t));
                recover_to_close_brace();
                accept_punct("}");
                return false;
            }
        }
        return true;
    }

    // <possrep def> ::= POSSREP [<possrep name>]
    //                   { <component commalist> [CONSTRAINT <bool exp>] }
    // Components are either "name <type>" or derived "name = <exp>"; the two
    // forms may not be mixed inside one possrep.
    bool parse_possrep(TypeDef& def) {
        const Span possrep_span = cur().span;
        advance();  // POSSREP
        mark(Production::PossrepDefn);

        PossrepDef possrep;
        if (cur().kind == Token::Kind::Identifier) {
            possrep.name = cur().lexeme;
            mark(Production::PossrepNamed);
            advance();
        }
        if (!expect_punct("{", "to open the possrep")) return false;

        while (!cur().is_punct("}")) {
            if (cur().kind == Token::Kind::End) {
                error(possrep_span, "missing '}' closing the possrep");
                return false;
            }
            if (cur().is_keyword("CONSTRAINT")) {
                const Span cspan = cur().span;
                advance();
                std::string expr = scan_expression(false, {});
                if (expr.empty())
                    error(cspan, "expected a boolean expression after CONSTRAINT");
                else if (possrep.constraint)
                    error(cspan, "duplicate CONSTRAINT in possrep");
                else {
                    possrep.constraint = std::move(expr);
                    mark(Production::PossrepConstraint);
                }
                continue;  // '}' expected next
            }
            if (cur().kind != Token::Kind::Identifier) {
                error(cur().span,
                      "expected possrep component name, found " + describe(cur()));
                recover_to_close_brace();
                break;
            }
            const std::string comp_name = cur().lexeme;
            const Span comp_span = cur().span;
            advance();
            const bool dup =
                std::any_of(possrep.components.begin(), possrep.components.end(),
                            [&](const auto& c) { return c.name == comp_name; }) ||
                std::any_of(possrep.derived.begin(), possrep.derived.end(),
                            [&](const auto& c) { return c.name == comp_name; });
            if (dup)
                error(comp_span, "duplicate possrep component '" + comp_name + "'");

            if (accept_punct("=")) {
                std::string expr = scan_expression(true, {"CONSTRAINT"});
                if (expr.empty()) {
                    error(comp_span, "expected an expression after '='");
                    recover_to_close_brace();
                    break;
                }
                if (!dup) possrep.derived.push_back({comp_name, std::move(expr)});
                mark(Production::DerivedComponent);
            } else {
                auto type = parse_type_ref();
                if (!type) {
                    recover_to_close_brace();
                    break;
                }
                if (!dup) possrep.components.push_back({comp_name, *type});
                mark(Production::PossrepComponent);
            }
            if (!accept_punct(",")) {
                if (!cur().is_punct("}") && !cur().is_keyword("CONSTRAINT")) {
                    error(cur().span, "expected ',', CONSTRAINT or '}' in possrep, found " +
                                          describe(cur()));
                    recover_to_close_brace();
                    break;
                }
            }
        }
        expect_punct("}", "to close the possrep");

        if (!possrep.components.empty() && !possrep.derived.empty()) {
            error(possrep_span,
                  "possrep mixes typed components and derived '=' components");
            return false;
        }
        if (possrep.is_derived()) {
            mark(Production::DerivedPossrep);
            def.derived_possreps.push_back(std::move(possrep));
        } else {
            def.possreps.push_back(std::move(possrep));
        }
        return true;
    }

    // --- type references ----------------------------------------------------

    // <type> ::= TUPLE <heading> | RELATION <heading> | <built-in name>
    //          | alpha | omega | # | <user scalar type name>
    std::optional<TypeRef> parse_type_ref() {
        const Token& t = cur();
        if (t.is_keyword("TUPLE")) {
            advance();
            mark(Production::TupleType);
            auto h = parse_heading();
            if (!h) return std::nullopt;
            return TypeRef::tuple(std::move(*h));
        }
        if (t.is_keyword("RELATION")) {
            advance();
            mark(Production::RelationType);
            auto h = parse_heading();
            if (!h) return std::nullopt;
            return TypeRef::relation(std::move(*h));
        }
        if (t.kind == Token::Kind::Keyword) {
            if (auto b = builtin_from_name(t.lexeme)) {
                advance();
                switch (*b) {
                    case BuiltIn::Integer: mark(Production::BuiltInInteger); break;
                    case BuiltIn::Rational: mark(Production::BuiltInRational); break;
                    case BuiltIn::Character: mark(Production::BuiltInCharacter); break;
                    case BuiltIn::Char: mark(Production::BuiltInChar); break;
                    case BuiltIn::Boolean: mark(Production::BuiltInBoolean); break;
                }
                return TypeRef::builtin(*b);
            }
            if (t.lexeme == "alpha") {
                advance();
                mark(Production::AlphaType);
                return TypeRef::alpha();
            }
            if (t.lexeme == "omega") {
                advance();
                mark(Production::OmegaType);
                return TypeRef::omega();
            }
            if (t.lexeme == "#") {
                advance();
                mark(Production::NullType);
                return TypeRef::null();
            }
        }
        if (t.kind == Token::Kind::Identifier) {
            advance();
            return TypeRef::declared(t.lexeme);
        }
        error(t.span, "expected a type, found " + describe(t));
        return std::nullopt;
    }

    // <heading> ::= { [<attribute commalist>] }
    std::optional<Heading> parse_heading() {
        mark(Production::HeadingProd);
        if (!expect_punct("{", "to open the heading")) return std::nullopt;
        std::vector<Attribute> attrs;
        if (accept_punct("}")) {
            mark(Production::EmptyHeading);
            return Heading{};
        }
        bool all_alpha = true, all_omega = true;
        for (;;) {
            if (cur().kind != Token::Kind::Identifier) {
                error(cur().span, "expected attribute name, found " + describe(cur()));
                recover_to_close_brace();
                accept_punct("}");
                return std::nullopt;
            }
            const std::string attr_name = cur().lexeme;
            const Span attr_span = cur().span;
            advance();
            auto type = parse_type_ref();
            if (!type) {
                recover_to_close_brace();
                accept_punct("}");
                return std::nullopt;
            }
            mark(Production::AttributeProd);
            if (type->is_nonscalar()) mark(Production::NestedNonscalar);
            if (type->kind() == TypeRef::Kind::Null && !opts_.allow_null_attributes) {
                error(attr_span, "attribute '" + attr_name +
                                     "' may not have type '#' (null attributes disabled)");
                recover_to_close_brace();
                accept_punct("}");
                return std::nullopt;
            }
            if (std::any_of(attrs.begin(), attrs.end(),
                            [&](const Attribute& a) { return a.name == attr_name; })) {
                error(attr_span, "duplicate attribute '" + attr_name + "' in heading");
                recover_to_close_brace();
                accept_punct("}");
                return std::nullopt;
            }
            all_alpha = all_alpha && type->kind() == TypeRef::Kind::Alpha;
            all_omega = all_omega && type->kind() == TypeRef::Kind::Omega;
            attrs.push_back({attr_name, std::move(*type)});
            if (accept_punct(",")) continue;
            if (accept_punct("}")) break;
            error(cur().span, "expected ',' or '}' in heading, found " + describe(cur()));
            recover_to_close_brace();
            accept_punct("}");
            return std::nullopt;
        }
        if (all_alpha) mark(Production::MaximalType);
        if (all_omega) mark(Production::MinimalType);
        return Heading(std::move(attrs));
    }

    // --- VAR declarations -----------------------------------------------------

    // VAR <name> <type> ;
    void parse_var_decl() {
        const Span span = cur().span;
        advance();  // VAR
        if (cur().kind != Token::Kind::Identifier) {
            error(cur().span, "expected variable name after VAR, found " + describe(cur()));
            recover_to_declaration();
            return;
        }
        const std::string name = cur().lexeme;
        advance();
        auto type = parse_type_ref();
        if (!type) {
            recover_to_declaration();
            return;
        }
        // Lenient recovery for a stray ')' left behind by hand-edited text.
        while (cur().is_punct(")")) {
            if (opts_.strict) {
                error(cur().span, "stray ')' after VAR declaration");
            } else {
                warning(cur().span, "stray ')' ignored");
            }
            advance();
        }
        consume_terminator();
        mark(type->is_nonscalar() ? Production::VarNonscalar : Production::VarScalar);
        result_.decls.push_back(VarDecl{name, std::move(*type), span, std::string(file_)});
    }

    // --- displays and value literals -------------------------------------------

    bool is_value_start(const Token& t) const {
        if (t.is_keyword("TUPLE") || t.is_keyword("RELATION") || t.is_keyword("#"))
            return true;
        if (t.kind == Token::Kind::Identifier) {
            const std::string u = to_upper(t.lexeme);
            return u == "TUPLE" || u == "RELATION";
        }
        return false;
    }

    // "<A, T>, <B, U>"  (heading display)  or  "<A, T, v>, ..." (tuple display)
    void parse_angle_display() {
        const Span span = cur().span;
        std::vector<Attribute> pairs;
        std::vector<TupleTriplet> triplets;
        int arity = 0;
        for (;;) {
            if (!expect_punct("<", "to open the display group")) {
                recover_to_declaration();
                return;
            }
            std::string attr = glue_name_until_comma();
            if (attr.empty()) {
                error(cur().span, "empty attribute name in display group");
                recover_to_declaration();
                return;
            }
            if (!expect_punct(",", "after the attribute name")) {
                recover_to_declaration();
                return;
            }
            auto type = parse_type_ref();
            if (!type) {
                recover_to_declaration();
                return;
            }
            int this_arity = 2;
            std::string value_text;
            if (accept_punct(",")) {
                this_arity = 3;
                value_text = scan_value_field();
            }
            if (!expect_punct(">", "to close the display group")) {
                recover_to_declaration();
                return;
            }
            if (arity == 0) arity = this_arity;
            if (arity != this_arity) {
                error(span, "display mixes <name, type> and <name, type, value> groups");
                recover_to_declaration();
                return;
            }
            const bool dup =
                std::any_of(pairs.begin(), pairs.end(),
                            [&](const Attribute& a) { return a.name == attr; }) ||
                std::any_of(triplets.begin(), triplets.end(),
                            [&](const TupleTriplet& t) { return t.attr == attr; });
            if (dup) {
                error(span, "duplicate attribute '" + attr + "' in display");
                recover_to_declaration();
                return;
            }
            if (this_arity == 2) {
                pairs.push_back({std::move(attr), std::move(*type)});
            } else {
                triplets.push_back(
                    {std::move(attr), *type, Value::scalar(*type, std::move(value_text))});
            }
            if (cur().is_punct(",") && peek(1).is_punct("<")) {
                advance();
                continue;
            }
            break;
        }
        consume_terminator();
        if (arity == 2) {
            mark(Production::HeadingDisplay);
            result_.decls.push_back(HeadingDecl{Heading(std::move(pairs)), span, std::string(file_)});
        } else {
            mark(Production::TupleDisplay);
            result_.decls.push_back(
                ValueDecl{std::nullopt, Value::tuple(std::move(triplets)), span, std::string(file_)});
        }
    }

    // Attribute names in angle displays may be split by stray spaces in the
    // source ("S #"); adjacent identifier/'#' tokens are glued back together.
    std::string glue_name_until_comma() {
        std::string name;
        while (cur().kind == Token::Kind::Identifier || cur().is_keyword("#")) {
            name += cur().lexeme;
            advance();
        }
        return name;
    }

    // Verbatim value text of the third display field, up to the closing '>'.
    std::string scan_value_field() {
        const size_t start_offset = cur().offset;
        size_t end_offset = start_offset;
        int depth = 0;
        while (!at_end()) {
            const Token& t = cur();
            if (depth == 0 && (t.is_punct(">") || t.is_punct(","))) break;
            if (t.is_punct("(") || t.is_punct("[") || t.is_punct("{")) ++depth;
            if (t.is_punct(")") || t.is_punct("]") || t.is_punct("}")) --depth;
            end_offset = t.offset + t.length;
            advance();
        }
        std::string text(src_.substr(start_offset, end_offset - start_offset));
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
            text.pop_back();
        return text;
    }

    // "t1: TUPLE { ... }"
    void parse_value_binding() {
        const Span span = cur().span;
        const std::string name = cur().lexeme;
        advance();  // name
        advance();  // ':'
        auto v = parse_value();
        if (!v) {
            recover_to_declaration();
            return;
        }
        mark(Production::ValueBinding);
        result_.decls.push_back(ValueDecl{name, std::move(*v), span, std::string(file_)});
    }

    void parse_value_display() {
        const Span span = cur().span;
        auto v = parse_value();
        if (!v) {
            recover_to_declaration();
            return;
        }
        consume_terminator();
        result_.decls.push_back(ValueDecl{std::nullopt, std::move(*v), span, std::string(file_)});
    }

    // <value> ::= TUPLE { <attr value commalist> }
    //           | RELATION <heading> { <tuple value commalist> }
    //           | # | <selector> | <literal>
    std::optional<Value> parse_value() {
        const Token& t = cur();
        if (t.is_keyword("#")) {
            advance();
            return Value::null_marker();
        }
        const std::string upper =
            t.kind == Token::Kind::Identifier || t.kind == Token::Kind::Keyword
                ? to_upper(t.lexeme)
                : "";
        if (upper == "TUPLE") {
            advance();
            return parse_tuple_value();
        }
        if (upper == "RELATION") {
            advance();
            return parse_relation_value();
        }
        return parse_scalar_value();
    }

    std::optional<Value> parse_tuple_value() {
        if (!expect_punct("{", "to open the tuple value")) return std::nullopt;
        std::vector<TupleTriplet> triplets;
        if (accept_punct("}")) return Value::tuple({});
        for (;;) {
            if (cur().kind != Token::Kind::Identifier) {
                error(cur().span,
                      "expected attribute name in tuple value, found " + describe(cur()));
                return std::nullopt;
            }
            const std::string attr = cur().lexeme;
            const Span attr_span = cur().span;
            advance();
            auto v = parse_value();
            if (!v) return std::nullopt;
            if (std::any_of(triplets.begin(), triplets.end(),
                            [&](const TupleTriplet& tr) { return tr.attr == attr; })) {
                error(attr_span, "duplicate attribute '" + attr + "' in tuple value");
                return std::nullopt;
            }
            triplets.push_back({attr, declared_type_of(*v), std::move(*v)});
            if (accept_punct(",")) continue;
            if (accept_punct("}")) break;
            error(cur().span, "expected ',' or '}' in tuple value, found " + describe(cur()));
            return std::nullopt;
        }
        return Value::tuple(std::move(triplets));
    }

    std::optional<Value> parse_relation_value() {
        auto h = parse_heading();
        if (!h) return std::nullopt;
        if (!expect_punct("{", "to open the relation body")) return std::nullopt;
        std::vector<Value> body;
        if (accept_punct("}")) return make_relation(*h, std::move(body));
        for (;;) {
            auto v = parse_value();
            if (!v) return std::nullopt;
            if (v->kind() != Value::Kind::Tuple) {
                error(cur().span, "relation body elements must be tuple values");
                return std::nullopt;
            }
            body.push_back(std::move(*v));
            if (accept_punct(",")) continue;
            if (accept_punct("}")) break;
            error(cur().span,
                  "expected ',' or '}' in relation body, found " + describe(cur()));
            return std::nullopt;
        }
        return make_relation(*h, std::move(body));
    }

    std::optional<Value> make_relation(const Heading& h, std::vector<Value> body) {
        for (const Value& t : body) {
            for (const TupleTriplet& tr : t.triplets()) {
                if (!h.find(tr.attr)) {
                    error(cur().span, "body tuple attribute '" + tr.attr +
                                          "' does not appear in the relation heading");
                    return std::nullopt;
                }
            }
            if (static_cast<int>(t.triplets().size()) != h.degree()) {
                error(cur().span, "body tuple does not cover the relation heading");
                return std::nullopt;
            }
        }
        return Value::relation(h, std::move(body));
    }

    // Selector "NAME('lit')", bare number, quoted text, or TRUE/FALSE.
    std::optional<Value> parse_scalar_value() {
        const Token& t = cur();
        if (t.kind == Token::Kind::Opaque) {
            advance();
            return Value::scalar(TypeRef::builtin(BuiltIn::Char), t.lexeme);
        }
        const bool named = t.kind == Token::Kind::Identifier ||
                           (t.kind == Token::Kind::Keyword && builtin_from_name(t.lexeme));
        if (named && peek(1).is_punct("(")) {
            const std::string name = t.lexeme;
            advance();
            std::string literal = scan_paren_group();
            TypeRef tag = builtin_from_name(name) ? TypeRef::builtin(*builtin_from_name(name))
                                                  : TypeRef::declared(name);
            return Value::scalar(std::move(tag), std::move(literal));
        }
        if (t.kind == Token::Kind::Identifier) {
            if (all_digits(t.lexeme)) {
                std::string digits = t.lexeme;
                advance();
                if (cur().is_punct(".") && peek(1).kind == Token::Kind::Identifier &&
                    all_digits(peek(1).lexeme)) {
                    digits += "." + peek(1).lexeme;
                    advance();
                    advance();
                    return Value::scalar(TypeRef::builtin(BuiltIn::Rational), digits);
                }
                return Value::scalar(TypeRef::builtin(BuiltIn::Integer), digits);
            }
            if (t.lexeme == "TRUE" || t.lexeme == "FALSE") {
                advance();
                return Value::scalar(TypeRef::builtin(BuiltIn::Boolean), t.lexeme);
            }
        }
        error(t.span, "expected a value literal, found " + describe(t));
        return std::nullopt;
    }

    std::string_view src_;
    ParseOptions opts_;
    std::string_view file_;
    std::vector<Token> tokens_;
    size_t pos_ = 0;
    ParseResult result_;
};

} // namespace

ParseResult parse_source(std::string_view source, const ParseOptions& opts,
                         std::string_view file) {
    return Parser(source, opts, file).parse_program();
}

TypeRefParse parse_type_ref_text(std::string_view text, const ParseOptions& opts) {
    ParseResult r = Parser(text, opts, "<arg>").parse_type_ref_only();
    TypeRefParse out;
    out.diagnostics = std::move(r.diagnostics);
    if (!r.decls.empty() && !has_errors(out.diagnostics))
        out.ref = std::get<VarDecl>(r.decls.front()).type;
    return out;
}

ValueParse parse_value_text(std::string_view text, const ParseOptions& opts) {
    ParseResult r = Parser(text, opts, "<arg>").parse_value_only();
    ValueParse out;
    out.diagnostics = std::move(r.diagnostics);
    if (!r.decls.empty() && !has_errors(out.diagnostics))
        out.value = std::get<ValueDecl>(r.decls.front()).value;
    return out;
}

} // namespace tdtc
