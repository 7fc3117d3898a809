#include "lexer.hpp"

namespace normcheck::detail {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

} // namespace

std::vector<Token> lex(std::string_view text, std::vector<Diagnostic>& diags)
{
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1;
    int col = 1;

    auto error = [&](int l, int c, std::string msg) {
        diags.push_back(Diagnostic{Severity::error, std::move(msg), l, c, {}});
    };
    auto advance = [&](std::size_t n) {
        i += n;
        col += static_cast<int>(n);
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
            continue;
        }

        int start_col = col;
        if (is_lower(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && (is_lower(text[j]) || is_digit(text[j]) || text[j] == '-')) {
                if (text[j] == '-' && j + 1 < text.size() && text[j + 1] == '>')
                    break;
                ++j;
            }
            out.push_back({Tok::ident, std::string(text.substr(i, j - i)), line, start_col, static_cast<int>(j - i)});
            advance(j - i);
            continue;
        }
        if (is_upper(c)) {
            std::size_t j = i + 1;
            while (j < text.size() && (is_lower(text[j]) || is_upper(text[j]) || is_digit(text[j])))
                ++j;
            out.push_back({Tok::domain, std::string(text.substr(i, j - i)), line, start_col, static_cast<int>(j - i)});
            advance(j - i);
            continue;
        }
        if (c == '"') {
            std::string body;
            std::size_t j = i + 1;
            bool closed = false;
            bool bad = false;
            while (j < text.size() && text[j] != '\n') {
                if (text[j] == '"') {
                    closed = true;
                    break;
                }
                if (text[j] == '\\' && j + 1 < text.size() && text[j + 1] != '\n') {
                    char e = text[j + 1];
                    if (e == 'n')
                        body += '\n';
                    else if (e == 't')
                        body += '\t';
                    else if (e == '"' || e == '\\')
                        body += e;
                    else
                        bad = true;
                    j += 2;
                    continue;
                }
                body += text[j];
                ++j;
            }
            if (!closed) {
                error(line, start_col, "unterminated string literal");
                advance(j - i);
                continue;
            }
            if (bad)
                error(line, start_col, "invalid escape sequence in string literal");
            out.push_back({Tok::string, std::move(body), line, start_col, static_cast<int>(j + 1 - i)});
            advance(j + 1 - i);
            continue;
        }
        if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            out.push_back({Tok::arrow, "->", line, start_col, 2});
            advance(2);
            continue;
        }
        Tok kind;
        switch (c) {
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case ',': kind = Tok::comma; break;
        case ':': kind = Tok::colon; break;
        case '=': kind = Tok::equals; break;
        default: {
            auto byte = static_cast<unsigned char>(c);
            std::string shown = byte >= 0x20 && byte < 0x7f ? std::string("'") + c + "'"
                                                            : "byte 0x" + std::string(1, "0123456789abcdef"[byte >> 4])
                                                                  + "0123456789abcdef"[byte & 15];
            error(line, start_col, "unexpected character " + shown);
            advance(1);
            continue;
        }
        }
        out.push_back({kind, std::string(1, c), line, start_col, 1});
        advance(1);
    }
    out.push_back({Tok::end, "", line, col, 0});
    return out;
}

std::string describe(const Token& t)
{
    switch (t.kind) {
    case Tok::ident:
    case Tok::domain: return "'" + t.text + "'";
    case Tok::string: return "string literal";
    case Tok::end: return "end of input";
    default: return "'" + t.text + "'";
    }
}

} // namespace normcheck::detail
