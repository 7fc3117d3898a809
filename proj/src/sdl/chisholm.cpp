#include "normcheck/chisholm.hpp"

namespace normcheck::sdl {

std::string to_string(Scope s) { return s == Scope::wide ? "wide" : "narrow"; }

std::string ChisholmEncoding::label() const { return to_string(rule2) + "/" + to_string(rule3); }

ChisholmEncoding chisholm_encoding(Scope rule2, Scope rule3)
{
    const Formula r = Formula::atom("r");
    const Formula p = Formula::atom("p");
    const Formula not_r = Formula::negation(r);
    const Formula not_p = Formula::negation(p);

    ChisholmEncoding e{rule2, rule3, {}};
    e.formulas.push_back(Formula::obligation(r));
    e.formulas.push_back(rule2 == Scope::wide ? Formula::obligation(Formula::implication(r, not_p))
                                              : Formula::implication(r, Formula::obligation(not_p)));
    e.formulas.push_back(rule3 == Scope::wide ? Formula::obligation(Formula::implication(not_r, p))
                                              : Formula::implication(not_r, Formula::obligation(p)));
    e.formulas.push_back(not_r);
    return e;
}

std::vector<ChisholmEncoding> chisholm_encodings()
{
    return {
        chisholm_encoding(Scope::wide, Scope::wide),
        chisholm_encoding(Scope::wide, Scope::narrow),
        chisholm_encoding(Scope::narrow, Scope::wide),
        chisholm_encoding(Scope::narrow, Scope::narrow),
    };
}

namespace {

std::vector<Formula> without(const std::vector<Formula>& set, std::size_t skip)
{
    std::vector<Formula> out;
    for (std::size_t i = 0; i < set.size(); ++i)
        if (i != skip)
            out.push_back(set[i]);
    return out;
}

} // namespace

std::vector<ChisholmRow> chisholm_report(const TableauOptions& options)
{
    std::vector<ChisholmRow> rows;
    for (auto& enc : chisholm_encodings()) {
        ChisholmRow row{enc, consistent(enc.formulas, options), false, false, {}};
        row.rule2_entailed_by_rest = entails(without(enc.formulas, 1), enc.formulas[1], options);
        row.rule3_entailed_by_rest = entails(without(enc.formulas, 2), enc.formulas[2], options);

        if (!row.result.satisfiable())
            row.notes.push_back("inconsistent: the four formulas have no serial model");
        if (row.rule2_entailed_by_rest)
            row.notes.push_back("rule 2 is entailed by the other three formulas (logical dependence)");
        if (row.rule3_entailed_by_rest)
            row.notes.push_back("rule 3 is entailed by the other three formulas (logical dependence)");
        if (row.result.satisfiable() && !row.rule2_entailed_by_rest && !row.rule3_entailed_by_rest)
            row.notes.push_back("consistent and mutually independent");
        rows.push_back(std::move(row));
    }
    return rows;
}

bool chisholm_pattern_holds(const std::vector<ChisholmRow>& rows)
{
    if (rows.size() != 4)
        return false;
    for (const auto& row : rows) {
        bool paradoxical = row.encoding.rule2 == Scope::wide && row.encoding.rule3 == Scope::narrow;
        if (row.result.satisfiable() == paradoxical)
            return false;
    }
    return true;
}

} // namespace normcheck::sdl
