#pragma once

// The library lending rules as SDL formula sets over two atoms:
//   r  - X returns Y by the due date
//   p  - disciplinary action is taken against X
//
//   1. O(r)
//   2. O(r -> ~p)   (wide)   or   r -> O(~p)   (narrow)
//   3. O(~r -> p)   (wide)   or   ~r -> O(p)   (narrow)
//   4. ~r           the book is not returned

#include "normcheck/sdl.hpp"

#include <string>
#include <vector>

namespace normcheck::sdl {

enum class Scope { wide, narrow };

std::string to_string(Scope s);

struct ChisholmEncoding {
    Scope rule2;
    Scope rule3;
    std::vector<Formula> formulas;   // always four, in rule order

    std::string label() const;   // e.g. "wide/narrow"
};

ChisholmEncoding chisholm_encoding(Scope rule2, Scope rule3);

// (wide, wide), (wide, narrow), (narrow, wide), (narrow, narrow).
std::vector<ChisholmEncoding> chisholm_encodings();

struct ChisholmRow {
    ChisholmEncoding encoding;
    TableauResult result;
    bool rule2_entailed_by_rest = false;
    bool rule3_entailed_by_rest = false;
    std::vector<std::string> notes;
};

std::vector<ChisholmRow> chisholm_report(const TableauOptions& options = {});

// The verdict pattern expected from the four encodings: only the
// wide/narrow reading is inconsistent.
bool chisholm_pattern_holds(const std::vector<ChisholmRow>& rows);

} // namespace normcheck::sdl
