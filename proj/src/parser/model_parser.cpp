#include "normcheck/parser.hpp"

#include "lexer.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace normcheck {

using detail::Tok;
using detail::Token;

namespace {

const std::set<std::string, std::less<>> reserved_words = {
    "true", "false", "not", "and", "or", "pre", "creates", "terminates",
    "created-by", "enforced-by", "terminated-by", "source",
};

const std::set<std::string, std::less<>> decl_keywords = {"Domain", "Fact", "Act", "Duty", "Init"};

struct SyntaxError {
    int line;
    int column;
    std::string message;
};

class ModelParser {
public:
    ModelParser(std::vector<Token> tokens, std::vector<Diagnostic>& diags)
        : toks_(std::move(tokens)), diags_(diags)
    {
    }

    Model parse()
    {
        while (peek().kind != Tok::end) {
            if (peek().column != 1) {
                fail_here("declarations must start in column 1");
                continue;
            }
            std::size_t start = pos_;
            try {
                declaration();
                if (!at_decl_end())
                    throw error_here("unexpected " + detail::describe(peek()) + " after declaration");
            } catch (const SyntaxError& e) {
                diags_.push_back(Diagnostic{Severity::error, e.message, e.line, e.column, {}});
                pos_ = std::max(pos_, start + 1);
                skip_to_next_decl();
            }
        }
        return std::move(model_);
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }

    // The current declaration ends at a token in column 1 or at end of input.
    bool at_decl_end() const { return peek().kind == Tok::end || (pos_ > decl_start_ && peek().column == 1); }

    // Errors at the end of a declaration point just past its last token
    // rather than at the start of the next one.
    SyntaxError error_here(std::string msg) const
    {
        if (at_decl_end() && pos_ > 0) {
            const Token& prev = toks_[pos_ - 1];
            return SyntaxError{prev.line, prev.column + prev.length, std::move(msg)};
        }
        const Token& t = peek();
        return SyntaxError{t.line, t.column, std::move(msg)};
    }

    void fail_here(std::string msg)
    {
        auto e = error_here(std::move(msg));
        diags_.push_back(Diagnostic{Severity::error, e.message, e.line, e.column, {}});
        ++pos_;
        decl_start_ = pos_;
        skip_to_next_decl();
    }

    void skip_to_next_decl()
    {
        while (peek().kind != Tok::end && peek().column != 1)
            ++pos_;
        decl_start_ = pos_;
    }

    bool check(Tok kind) const { return !at_decl_end() && peek().kind == kind; }

    bool check_word(std::string_view w) const { return check(Tok::ident) && peek().text == w; }

    bool check_clause(std::string_view w) const
    {
        return check_word(w) && peek(1).kind == Tok::colon && peek(1).line == peek().line;
    }

    const Token& expect(Tok kind, const char* what)
    {
        if (at_decl_end() || peek().kind != kind)
            throw error_here(std::string("expected ") + what + ", found " + found());
        return toks_[pos_++];
    }

    std::string found() const { return at_decl_end() && peek().kind != Tok::end ? "next declaration" : detail::describe(peek()); }

    std::string ident(const char* what)
    {
        const Token& t = expect(Tok::ident, what);
        if (reserved_words.contains(t.text))
            throw SyntaxError{t.line, t.column, "'" + t.text + "' is a reserved word"};
        return t.text;
    }

    std::string domain_name()
    {
        const Token& t = expect(Tok::domain, "domain name");
        if (decl_keywords.contains(t.text))
            throw SyntaxError{t.line, t.column, "'" + t.text + "' is a reserved word"};
        return t.text;
    }

    void declaration()
    {
        decl_start_ = pos_;
        const Token& kw = peek();
        if (kw.kind != Tok::domain || !decl_keywords.contains(kw.text))
            throw error_here("expected a declaration (Domain, Fact, Act, Duty or Init), found " + detail::describe(kw));
        ++pos_;
        if (kw.text == "Domain")
            domain_decl(kw);
        else if (kw.text == "Fact")
            fact_decl(kw);
        else if (kw.text == "Act")
            act_decl(kw);
        else if (kw.text == "Duty")
            duty_decl(kw);
        else
            init_decl(kw);
    }

    void note_line(const std::string& name, const Token& kw)
    {
        model_.lines.emplace(name, kw.line);
    }

    void domain_decl(const Token& kw)
    {
        ObjectDomain d;
        d.name = domain_name();
        expect(Tok::equals, "'='");
        d.members.push_back(ident("domain member"));
        while (check(Tok::comma)) {
            ++pos_;
            d.members.push_back(ident("domain member"));
        }
        note_line(d.name, kw);
        model_.add(std::move(d));
    }

    void fact_decl(const Token& kw)
    {
        FactSymbol f;
        f.name = ident("fact name");
        if (check(Tok::lparen)) {
            ++pos_;
            std::vector<std::pair<std::string, std::string>> raw;   // (explicit name or "", domain)
            do {
                if (check(Tok::ident)) {
                    std::string n = ident("parameter name");
                    expect(Tok::colon, "':'");
                    raw.emplace_back(n, domain_name());
                } else {
                    raw.emplace_back("", domain_name());
                }
            } while (check(Tok::comma) && (++pos_, true));
            expect(Tok::rparen, "')'");
            std::vector<std::string> domains;
            for (const auto& r : raw)
                domains.push_back(r.second);
            for (std::size_t i = 0; i < raw.size(); ++i)
                f.params.push_back(
                    Param{raw[i].first.empty() ? default_fact_param_name(domains, i) : raw[i].first, raw[i].second});
        }
        if (check(Tok::equals)) {
            ++pos_;
            f.kind = FactKind::derived;
            f.derivation = formula(f.params);
        }
        if (check_clause("source"))
            f.sources = sources();
        note_line(f.name, kw);
        model_.add(std::move(f));
    }

    std::vector<Param> param_list(const char* first_name)
    {
        std::vector<Param> params;
        expect(Tok::lparen, "'('");
        if (!check_word(first_name))
            throw error_here(std::string("expected '") + first_name + "' as first parameter, found " + found());
        ++pos_;
        expect(Tok::colon, "':'");
        params.push_back(Param{first_name, domain_name()});
        while (check(Tok::comma)) {
            ++pos_;
            std::string n = ident("parameter name");
            expect(Tok::colon, "':'");
            params.push_back(Param{n, domain_name()});
        }
        expect(Tok::rparen, "')'");
        return params;
    }

    void act_decl(const Token& kw)
    {
        ActFrame a;
        a.name = ident("act name");
        auto params = param_list("actor");
        a.actor = params.front();
        a.objects.assign(params.begin() + 1, params.end());

        std::set<std::string> seen;
        auto once = [&](const std::string& clause) {
            if (!seen.insert(clause).second)
                throw error_here("duplicate '" + clause + "' clause");
        };
        while (!at_decl_end()) {
            if (check_clause("pre")) {
                once("pre");
                pos_ += 2;
                a.precondition = formula(params);
            } else if (check_clause("creates")) {
                once("creates");
                pos_ += 2;
                a.creates = atom_list(params);
            } else if (check_clause("terminates")) {
                once("terminates");
                pos_ += 2;
                a.terminates = atom_list(params);
            } else if (check_clause("source")) {
                once("source");
                a.sources = sources();
            } else {
                throw error_here("expected 'pre:', 'creates:', 'terminates:' or 'source:', found " + found());
            }
        }
        note_line(a.name, kw);
        model_.add(std::move(a));
    }

    std::vector<std::string> name_list()
    {
        std::vector<std::string> names{ident("act name")};
        while (check(Tok::comma)) {
            ++pos_;
            names.push_back(ident("act name"));
        }
        return names;
    }

    void duty_decl(const Token& kw)
    {
        DutyFrame d;
        d.name = ident("duty name");
        auto params = param_list("holder");
        d.holder = params.front();
        d.objects.assign(params.begin() + 1, params.end());

        for (const char* clause : {"created-by", "enforced-by", "terminated-by"}) {
            if (!check_clause(clause))
                throw error_here(std::string("expected '") + clause + ":', found " + found());
            pos_ += 2;
            auto names = name_list();
            if (clause[0] == 'c')
                d.created_by = std::move(names);
            else if (clause[0] == 'e')
                d.enforced_by = std::move(names);
            else
                d.terminated_by = std::move(names);
        }
        if (check_clause("source"))
            d.sources = sources();
        note_line(d.name, kw);
        model_.add(std::move(d));
    }

    void init_decl(const Token& kw)
    {
        expect(Tok::colon, "':'");
        auto atoms = atom_list({});
        if (!model_.lines.contains("Init"))
            note_line("Init", kw);
        for (const auto& a : atoms) {
            GroundAtom g{a.symbol, {}};
            for (const auto& t : a.args)
                g.args.push_back(t.name);
            model_.add_initial(std::move(g));
        }
    }

    std::vector<std::string> sources()
    {
        pos_ += 2;   // "source" ":"
        std::vector<std::string> out{expect(Tok::string, "quoted source").text};
        while (check(Tok::comma)) {
            ++pos_;
            out.push_back(expect(Tok::string, "quoted source").text);
        }
        return out;
    }

    std::vector<FactAtom> atom_list(const std::vector<Param>& scope)
    {
        std::vector<FactAtom> out{atom(scope)};
        while (check(Tok::comma)) {
            ++pos_;
            out.push_back(atom(scope));
        }
        return out;
    }

    FactAtom atom(const std::vector<Param>& scope)
    {
        FactAtom a;
        a.symbol = ident("fact name");
        if (check(Tok::lparen)) {
            ++pos_;
            do {
                std::string n = ident("argument");
                bool is_var = std::any_of(scope.begin(), scope.end(), [&](const Param& p) { return p.name == n; });
                a.args.push_back(is_var ? Term::variable(n) : Term::constant(n));
            } while (check(Tok::comma) && (++pos_, true));
            expect(Tok::rparen, "')'");
        }
        return a;
    }

    // not > and > or > -> (right associative)
    Formula formula(const std::vector<Param>& scope)
    {
        Formula lhs = disjunction(scope);
        if (check(Tok::arrow)) {
            ++pos_;
            return Formula::implication(lhs, formula(scope));
        }
        return lhs;
    }

    Formula disjunction(const std::vector<Param>& scope)
    {
        Formula f = conjunction(scope);
        while (check_word("or")) {
            ++pos_;
            f = Formula::disjunction(f, conjunction(scope));
        }
        return f;
    }

    Formula conjunction(const std::vector<Param>& scope)
    {
        Formula f = unary(scope);
        while (check_word("and")) {
            ++pos_;
            f = Formula::conjunction(f, unary(scope));
        }
        return f;
    }

    Formula unary(const std::vector<Param>& scope)
    {
        if (check_word("not")) {
            ++pos_;
            return Formula::negation(unary(scope));
        }
        if (check_word("true")) {
            ++pos_;
            return Formula::truth();
        }
        if (check_word("false")) {
            ++pos_;
            return Formula::falsity();
        }
        if (check(Tok::lparen)) {
            ++pos_;
            Formula f = formula(scope);
            expect(Tok::rparen, "')'");
            return f;
        }
        if (!check(Tok::ident))
            throw error_here("expected a formula, found " + found());
        return Formula::make_atom(atom(scope));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t decl_start_ = 0;
    std::vector<Diagnostic>& diags_;
    Model model_;
};

} // namespace

std::string default_fact_param_name(const std::vector<std::string>& domains, std::size_t i)
{
    std::string base;
    for (char c : domains.at(i))
        base += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::size_t occurrence = std::count(domains.begin(), domains.begin() + static_cast<long>(i), domains[i]);
    return occurrence == 0 ? base : base + std::to_string(occurrence + 1);
}

ParseResult<Model> parse_model(std::string_view text)
{
    ParseResult<Model> result;
    auto tokens = detail::lex(text, result.diagnostics);
    Model model = ModelParser(std::move(tokens), result.diagnostics).parse();
    if (has_errors(result.diagnostics))
        return result;

    // Resolution and typing; positions come from the declaration lines.
    for (auto& d : check_wellformed(model))
        result.diagnostics.push_back(std::move(d));
    if (has_errors(result.diagnostics))
        return result;

    if (model.order.empty())
        result.diagnostics.push_back(Diagnostic{Severity::warning, "empty model", 1, 1, {}});

    auto warn_unsourced = [&](const std::string& name, const std::vector<std::string>& sources, const char* what) {
        if (!sources.empty())
            return;
        int line = model.lines.contains(name) ? model.lines.at(name) : 0;
        result.diagnostics.push_back(
            Diagnostic{Severity::warning, std::string(what) + " '" + name + "' cites no source", line, line ? 1 : 0, name});
    };
    for (const auto& f : model.facts)
        if (f.kind == FactKind::derived)
            warn_unsourced(f.name, f.sources, "fact frame");
    for (const auto& a : model.acts)
        warn_unsourced(a.name, a.sources, "act frame");
    for (const auto& d : model.duties)
        warn_unsourced(d.name, d.sources, "duty frame");

    result.value = std::move(model);
    return result;
}

} // namespace normcheck
