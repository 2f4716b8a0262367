#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tdtc/diag.hpp"

namespace tdtc {

// Keywords are the grammar terminals: TYPE, POSSREP, CONSTRAINT, IS, UNION,
// ORDINAL, TUPLE, RELATION, VAR, GEN, the five built-in type names, alpha,
// omega and '#'. Identifiers are runs of letters/digits/'_'/'#' that are
// not keywords ('S#' is a single identifier). Punct tokens are single
// punctuation characters or symbol code points; Opaque tokens are quoted
// literals like 'S1'.
struct Token {
    enum class Kind { Keyword, Identifier, Punct, Opaque, End };

    Kind kind = Kind::End;
    std::string lexeme;
    Span span;
    size_t offset = 0;  // byte offset into the source
    size_t length = 0;  // byte length

    bool is_keyword(std::string_view kw) const {
        return kind == Kind::Keyword && lexeme == kw;
    }
    bool is_punct(std::string_view p) const {
        return kind == Kind::Punct && lexeme == p;
    }
};

struct LexResult {
    std::vector<Token> tokens;  // always terminated by an End token
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return !has_errors(diagnostics); }
};

bool is_keyword(std::string_view word);

// Splits source text into tokens. /* ... */ comments are skipped; an
// unterminated comment or quoted literal and non-printable characters are
// reported as errors. Tokens cover the whole input.
LexResult tokenize(std::string_view source, std::string_view file = "");

} // namespace tdtc
