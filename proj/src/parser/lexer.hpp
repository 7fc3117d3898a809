#pragma once

#include "normcheck/diagnostic.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace normcheck::detail {

enum class Tok { ident, domain, string, lparen, rparen, comma, colon, equals, arrow, end };

struct Token {
    Tok kind;
    std::string text;   // identifier text or unescaped string body
    int line;
    int column;
    int length = 0;   // bytes in the source text
};

// Tokenizes the frame language. Lexical errors are appended to `diags` and
// the offending bytes skipped; the result always ends with a Tok::end.
std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags);

std::string describe(const Token& t);

} // namespace normcheck::detail
