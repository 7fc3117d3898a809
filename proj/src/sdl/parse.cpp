#include "normcheck/sdl.hpp"

namespace normcheck::sdl {

namespace {

struct SyntaxError {
    int column;
    std::string message;
};

// Recursive descent over a single line. Precedence ~ > & > | > ->, with ->
// right associative.
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Formula parse_all()
    {
        Formula f = implication();
        skip_space();
        if (pos_ < text_.size())
            throw error("unexpected " + shown());
        return f;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r'))
            ++pos_;
    }

    SyntaxError error(std::string msg) const { return {static_cast<int>(pos_) + 1, std::move(msg)}; }

    std::string shown() const
    {
        if (pos_ >= text_.size())
            return "end of input";
        return std::string("'") + text_[pos_] + "'";
    }

    bool accept(std::string_view tok)
    {
        skip_space();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok)
    {
        if (!accept(tok))
            throw error("expected '" + std::string(tok) + "', found " + shown());
    }

    Formula implication()
    {
        Formula lhs = disjunction();
        if (accept("->"))
            return Formula::implication(lhs, implication());
        return lhs;
    }

    Formula disjunction()
    {
        Formula f = conjunction();
        while (accept("|"))
            f = Formula::disjunction(f, conjunction());
        return f;
    }

    Formula conjunction()
    {
        Formula f = unary();
        while (accept("&"))
            f = Formula::conjunction(f, unary());
        return f;
    }

    Formula unary()
    {
        if (accept("~"))
            return Formula::negation(unary());
        skip_space();
        if (pos_ + 1 < text_.size() && (text_[pos_] == 'O' || text_[pos_] == 'P')) {
            bool obligation = text_[pos_] == 'O';
            ++pos_;
            expect("(");
            Formula body = implication();
            expect(")");
            return obligation ? Formula::obligation(body) : Formula::permission(body);
        }
        if (accept("(")) {
            Formula f = implication();
            expect(")");
            return f;
        }
        if (pos_ < text_.size() && text_[pos_] >= 'a' && text_[pos_] <= 'z') {
            std::size_t start = pos_;
            while (pos_ < text_.size()
                   && ((text_[pos_] >= 'a' && text_[pos_] <= 'z') || (text_[pos_] >= '0' && text_[pos_] <= '9')
                       || text_[pos_] == '_'))
                ++pos_;
            return Formula::atom(std::string(text_.substr(start, pos_ - start)));
        }
        throw error("expected a formula, found " + shown());
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

ParseResult<Formula> parse(std::string_view text)
{
    ParseResult<Formula> result;
    try {
        result.value = Parser(text).parse_all();
    } catch (const SyntaxError& e) {
        result.diagnostics.push_back(Diagnostic{Severity::error, e.message, 1, e.column, {}});
    }
    return result;
}

ParseResult<std::vector<Formula>> parse_file(std::string_view text)
{
    ParseResult<std::vector<Formula>> result;
    std::vector<Formula> formulas;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
            auto r = parse(line);
            if (r.value) {
                formulas.push_back(*r.value);
            } else {
                for (auto d : r.diagnostics) {
                    d.line = line_no;
                    result.diagnostics.push_back(std::move(d));
                }
            }
        }
        start = end + 1;
    }
    if (!has_errors(result.diagnostics))
        result.value = std::move(formulas);
    return result;
}

} // namespace normcheck::sdl
