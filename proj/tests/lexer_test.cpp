#include <doctest.h>

#include "tdtc/lexer.hpp"

using namespace tdtc;

namespace {

std::vector<std::pair<Token::Kind, std::string>> kinds_and_lexemes(const LexResult& r) {
    std::vector<std::pair<Token::Kind, std::string>> out;
    for (const Token& t : r.tokens)
        if (t.kind != Token::Kind::End) out.emplace_back(t.kind, t.lexeme);
    return out;
}

} // namespace

TEST_CASE("keywords and identifiers") {
    LexResult r = tokenize("TYPE POINT");
    REQUIRE(r.ok());
    auto toks = kinds_and_lexemes(r);
    REQUIRE(toks.size() == 2);
    CHECK(toks[0] == std::pair{Token::Kind::Keyword, std::string("TYPE")});
    CHECK(toks[1] == std::pair{Token::Kind::Identifier, std::string("POINT")});
}

TEST_CASE("comments are skipped") {
    LexResult r = tokenize("/* x */ VAR");
    REQUIRE(r.ok());
    auto toks = kinds_and_lexemes(r);
    REQUIRE(toks.size() == 1);
    CHECK(toks[0] == std::pair{Token::Kind::Keyword, std::string("VAR")});
}

// Hand-lexed stream for the start of the CIRCLE definition.
TEST_CASE("CIRCLE definition prefix lexes to the expected stream") {
    LexResult r = tokenize("TYPE CIRCLE IS {ELLIPSE");
    REQUIRE(r.ok());
    auto toks = kinds_and_lexemes(r);
    const std::vector<std::pair<Token::Kind, std::string>> expected = {
        {Token::Kind::Keyword, "TYPE"},
        {Token::Kind::Identifier, "CIRCLE"},
        {Token::Kind::Keyword, "IS"},
        {Token::Kind::Punct, "{"},
        {Token::Kind::Identifier, "ELLIPSE"},
    };
    CHECK(toks == expected);
}

TEST_CASE("name characters: '#' and digits belong to identifiers") {
    LexResult r = tokenize("S# P_1 20 #");
    REQUIRE(r.ok());
    auto toks = kinds_and_lexemes(r);
    REQUIRE(toks.size() == 4);
    CHECK(toks[0] == std::pair{Token::Kind::Identifier, std::string("S#")});
    CHECK(toks[1] == std::pair{Token::Kind::Identifier, std::string("P_1")});
    CHECK(toks[2] == std::pair{Token::Kind::Identifier, std::string("20")});
    CHECK(toks[3] == std::pair{Token::Kind::Keyword, std::string("#")});
}

TEST_CASE("quoted literals are single opaque tokens") {
    LexResult r = tokenize("CITY 'London'");
    REQUIRE(r.ok());
    auto toks = kinds_and_lexemes(r);
    REQUIRE(toks.size() == 2);
    CHECK(toks[1] == std::pair{Token::Kind::Opaque, std::string("'London'")});
}

TEST_CASE("multi-byte symbols lex as single punct tokens") {
    LexResult r = tokenize("A \xE2\x89\xA5 B");  // A >= B with the real symbol
    REQUIRE(r.ok());
    auto toks = kinds_and_lexemes(r);
    REQUIRE(toks.size() == 3);
    CHECK(toks[1].first == Token::Kind::Punct);
    CHECK(toks[1].second == "\xE2\x89\xA5");
}

TEST_CASE("unterminated comment is an error") {
    LexResult r = tokenize("TYPE /* oops");
    CHECK_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].message == "unterminated comment");
}

TEST_CASE("unterminated quoted literal is an error") {
    LexResult r = tokenize("CITY 'London");
    CHECK_FALSE(r.ok());
    CHECK(r.diagnostics[0].message == "unterminated quoted literal");
}

TEST_CASE("control characters are illegal") {
    LexResult r = tokenize(std::string("TYPE \x01 X"));
    CHECK_FALSE(r.ok());
    CHECK(r.diagnostics[0].message.find("illegal character") != std::string::npos);
}

TEST_CASE("spans carry 1-based line and column") {
    LexResult r = tokenize("TYPE X\nVAR Y");
    REQUIRE(r.ok());
    CHECK(r.tokens[0].span.line == 1);
    CHECK(r.tokens[0].span.column == 1);
    CHECK(r.tokens[1].span.column == 6);
    CHECK(r.tokens[2].span.line == 2);
    CHECK(r.tokens[2].span.column == 1);
}
