#include "tdtc/lexer.hpp"

#include <array>
#include <cctype>

namespace tdtc {

bool is_keyword(std::string_view word) {
    static const std::array<std::string_view, 18> keywords = {
        "TYPE", "POSSREP", "CONSTRAINT", "IS", "UNION", "ORDINAL",
        "TUPLE", "RELATION", "VAR", "GEN",
        "INTEGER", "RATIONAL", "CHARACTER", "CHAR", "BOOLEAN",
        "alpha", "omega", "#"};
    for (auto kw : keywords)
        if (word == kw) return true;
    return false;
}

namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#';
}

class Lexer {
public:
    Lexer(std::string_view source, std::string_view file)
        : src_(source), file_(file) {}

    LexResult run() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r') {
                advance();
            } else if (c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                skip_comment();
            } else if (is_ident_char(c)) {
                lex_word();
            } else if (c == '\'') {
                lex_quoted();
            } else if (static_cast<unsigned char>(c) >= 0x80) {
                lex_utf8_symbol();
            } else if (std::isprint(static_cast<unsigned char>(c))) {
                push(Token::Kind::Punct, pos_, 1);
                advance();
            } else {
                error_here("illegal character (code " +
                           std::to_string(static_cast<unsigned char>(c)) + ")");
                advance();
            }
        }
        Token end;
        end.kind = Token::Kind::End;
        end.lexeme = "";
        end.span = Span{line_, col_, 0};
        end.offset = pos_;
        end.length = 0;
        result_.tokens.push_back(end);
        return std::move(result_);
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
            // UTF-8 continuation bytes do not advance the column.
            ++col_;
        }
        ++pos_;
    }

    void skip_comment() {
        const size_t start = pos_;
        const int start_line = line_, start_col = col_;
        advance();  // '/'
        advance();  // '*'
        while (pos_ < src_.size()) {
            if (src_[pos_] == '*' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                advance();
                advance();
                return;
            }
            advance();
        }
        Diagnostic d;
        d.severity = Diagnostic::Severity::Error;
        d.message = "unterminated comment";
        d.span = Span{start_line, start_col, static_cast<int>(pos_ - start)};
        d.file = std::string(file_);
        result_.diagnostics.push_back(d);
    }

    void lex_word() {
        const size_t start = pos_;
        const int start_line = line_, start_col = col_;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) advance();
        const std::string_view word = src_.substr(start, pos_ - start);
        Token t;
        t.kind = is_keyword(word) ? Token::Kind::Keyword : Token::Kind::Identifier;
        t.lexeme = std::string(word);
        t.span = Span{start_line, start_col, static_cast<int>(pos_ - start)};
        t.offset = start;
        t.length = pos_ - start;
        result_.tokens.push_back(std::move(t));
    }

    void lex_quoted() {
        const size_t start = pos_;
        const int start_line = line_, start_col = col_;
        advance();  // opening quote
        while (pos_ < src_.size() && src_[pos_] != '\'' && src_[pos_] != '\n') advance();
        if (pos_ >= src_.size() || src_[pos_] != '\'') {
            Diagnostic d;
            d.severity = Diagnostic::Severity::Error;
            d.message = "unterminated quoted literal";
            d.span = Span{start_line, start_col, static_cast<int>(pos_ - start)};
            d.file = std::string(file_);
            result_.diagnostics.push_back(d);
            return;
        }
        advance();  // closing quote
        Token t;
        t.kind = Token::Kind::Opaque;
        t.lexeme = std::string(src_.substr(start, pos_ - start));
        t.span = Span{start_line, start_col, static_cast<int>(pos_ - start)};
        t.offset = start;
        t.length = pos_ - start;
        result_.tokens.push_back(std::move(t));
    }

    // One multi-byte code point (e.g. a comparison symbol inside an opaque
    // constraint) becomes a single Punct token.
    void lex_utf8_symbol() {
        const size_t start = pos_;
        const int start_line = line_, start_col = col_;
        advance();
        while (pos_ < src_.size() &&
               (static_cast<unsigned char>(src_[pos_]) & 0xC0) == 0x80)
            advance();
        Token t;
        t.kind = Token::Kind::Punct;
        t.lexeme = std::string(src_.substr(start, pos_ - start));
        t.span = Span{start_line, start_col, 1};
        t.offset = start;
        t.length = pos_ - start;
        result_.tokens.push_back(std::move(t));
    }

    void push(Token::Kind kind, size_t start, size_t len) {
        Token t;
        t.kind = kind;
        t.lexeme = std::string(src_.substr(start, len));
        t.span = Span{line_, col_, static_cast<int>(len)};
        t.offset = start;
        t.length = len;
        result_.tokens.push_back(std::move(t));
    }

    void error_here(std::string message) {
        Diagnostic d;
        d.severity = Diagnostic::Severity::Error;
        d.message = std::move(message);
        d.span = Span{line_, col_, 1};
        d.file = std::string(file_);
        result_.diagnostics.push_back(d);
    }

    std::string_view src_;
    std::string_view file_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    LexResult result_;
};

} // namespace

LexResult tokenize(std::string_view source, std::string_view file) {
    return Lexer(source, file).run();
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string out;
    if (!d.file.empty()) out += d.file + ":";
    out += std::to_string(d.span.line) + ":" + std::to_string(d.span.column) + ": ";
    out += d.severity == Diagnostic::Severity::Error ? "error: " : "warning: ";
    out += d.message;
    return out;
}

} // namespace tdtc
