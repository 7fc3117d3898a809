#include "normcheck/parser.hpp"

#include "lexer.hpp"

#include <map>

namespace normcheck {

using detail::Tok;
using detail::Token;

ParseResult<Trace> parse_trace(std::string_view text, const Model& model)
{
    ParseResult<Trace> result;
    auto& diags = result.diagnostics;
    auto tokens = detail::lex(text, diags);

    std::map<int, std::vector<Token>> lines;
    for (auto& t : tokens)
        if (t.kind != Tok::end)
            lines[t.line].push_back(std::move(t));

    auto error = [&](const Token& at, std::string msg) {
        diags.push_back(Diagnostic{Severity::error, std::move(msg), at.line, at.column, {}});
    };

    Trace trace;
    for (const auto& [line_no, toks] : lines) {
        // act ( c1 , c2 , ... )
        std::size_t i = 0;
        // Past the end of the line, errors point just after the last token.
        auto error_at = [&](std::size_t k, std::string msg) {
            if (k < toks.size())
                return error(toks[k], std::move(msg));
            const Token& last = toks.back();
            diags.push_back(Diagnostic{Severity::error, std::move(msg), last.line, last.column + last.length, {}});
        };
        if (toks[0].kind != Tok::ident) {
            error(toks[0], "expected an act name, found " + detail::describe(toks[0]));
            continue;
        }
        const Token& name = toks[i++];
        std::vector<const Token*> args;
        bool ok = true;
        if (i >= toks.size() || toks[i].kind != Tok::lparen) {
            error_at(i, "expected '(' after act name");
            continue;
        }
        ++i;
        while (true) {
            if (i >= toks.size() || toks[i].kind != Tok::ident) {
                error_at(i, "expected a constant");
                ok = false;
                break;
            }
            args.push_back(&toks[i++]);
            if (i < toks.size() && toks[i].kind == Tok::comma) {
                ++i;
                continue;
            }
            if (i < toks.size() && toks[i].kind == Tok::rparen) {
                ++i;
                break;
            }
            error_at(i, "expected ',' or ')'");
            ok = false;
            break;
        }
        if (!ok)
            continue;
        if (i < toks.size()) {
            error(toks[i], "unexpected " + detail::describe(toks[i]) + " after act");
            continue;
        }

        const ActFrame* frame = model.find_act(name.text);
        if (!frame) {
            error(name, "unknown act '" + name.text + "'");
            continue;
        }
        auto params = frame->params();
        if (params.size() != args.size()) {
            error(name, "act '" + name.text + "' expects " + std::to_string(params.size()) + " argument(s), got "
                            + std::to_string(args.size()));
            continue;
        }
        GroundAct g{name.text, {}};
        for (std::size_t k = 0; k < args.size(); ++k) {
            const ObjectDomain* dom = model.find_domain(params[k].domain);
            if (!dom || !dom->contains(args[k]->text)) {
                error(*args[k], "unknown constant '" + args[k]->text + "' for parameter '" + params[k].name + "' ("
                                    + params[k].domain + ")");
                ok = false;
            }
            g.args.push_back(args[k]->text);
        }
        if (ok)
            trace.push_back(std::move(g));
    }

    if (!has_errors(diags))
        result.value = std::move(trace);
    return result;
}

} // namespace normcheck
