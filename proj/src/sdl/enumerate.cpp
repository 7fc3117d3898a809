#include "normcheck/sdl.hpp"

#include <algorithm>

namespace normcheck::sdl {

namespace {

enum class Truth { no, yes, unknown };

Truth negate(Truth t)
{
    return t == Truth::unknown ? t : (t == Truth::yes ? Truth::no : Truth::yes);
}

// Formula tree flattened into an array with atoms replaced by bit positions.
struct Compiled {
    struct Node {
        Formula::Kind kind;
        std::size_t lhs = 0;
        std::size_t rhs = 0;
        unsigned bit = 0;
    };
    std::vector<Node> nodes;
    std::vector<std::size_t> roots;
    std::vector<std::string> atoms;
    std::vector<unsigned> level_masks;   // atoms occurring at each modal level

    explicit Compiled(const std::vector<Formula>& gamma)
    {
        auto names = atoms_of(gamma);
        atoms.assign(names.begin(), names.end());
        level_masks.assign(static_cast<std::size_t>(modal_depth(gamma)) + 1, 0);
        for (const auto& f : gamma)
            roots.push_back(add(f, 0));
    }

    std::size_t add(const Formula& f, std::size_t level)
    {
        using K = Formula::Kind;
        Node n{f.kind()};
        switch (f.kind()) {
        case K::atom: {
            auto it = std::find(atoms.begin(), atoms.end(), f.name());
            n.bit = static_cast<unsigned>(it - atoms.begin());
            level_masks[level] |= 1u << n.bit;
            break;
        }
        case K::negation: n.lhs = add(f.operand(), level); break;
        case K::obligation:
        case K::permission: n.lhs = add(f.operand(), level + 1); break;
        default:
            n.lhs = add(f.lhs(), level);
            n.rhs = add(f.rhs(), level);
        }
        nodes.push_back(n);
        return nodes.size() - 1;
    }
};

// Depth-first search over canonical serial models. Worlds are assigned in
// index order, each first a valuation and then its successor row; Kleene
// evaluation of gamma at world 0 prunes partial models that are already
// refuted.
//
// Canonical models are numbered in breadth-first discovery order, and worlds
// at distance >= the modal depth d (leaves) carry only a self-loop. Each of
// the following restrictions maps any model to one with no more worlds that
// agrees with it at world 0:
//  - a world at distance k is only evaluated at modal levels >= k, so atoms
//    occurring only at lower levels are false there;
//  - a leaf agrees with no other world on the atoms of level d, since edges
//    into it could be redirected to that world;
//  - the successors of a world at distance d - 1 differ on the atoms of
//    level d, since only that set of valuations is visible there;
//  - two non-leaf worlds never share both valuation and successors;
//  - worlds discovered together by one parent have non-decreasing
//    valuations, since they can be permuted.
class Enumerator {
public:
    Enumerator(const Compiled& gamma, std::size_t worlds, std::size_t limit, std::vector<KripkeModel>& out)
        : gamma_(gamma), n_(worlds), limit_(limit), out_(out), depth_limit_(gamma.level_masks.size() - 1),
          valuation_(worlds, 0), row_(worlds), assigned_val_(worlds, false), assigned_row_(worlds, false),
          dist_(worlds, 0), parent_(worlds, worlds)
    {
        relevant_from_.assign(depth_limit_ + 2, 0);
        for (std::size_t k = depth_limit_ + 1; k-- > 0;)
            relevant_from_[k] = relevant_from_[k + 1] | gamma.level_masks[k];
        leaf_mask_ = gamma.level_masks[depth_limit_];
    }

    void run()
    {
        discovered_ = 1;
        search(0);
    }

private:
    bool done() const { return out_.size() >= limit_; }

    Truth eval(std::size_t node, std::size_t w) const
    {
        using K = Formula::Kind;
        const auto& n = gamma_.nodes[node];
        switch (n.kind) {
        case K::atom:
            if (!assigned_val_[w])
                return Truth::unknown;
            return (valuation_[w] >> n.bit) & 1u ? Truth::yes : Truth::no;
        case K::negation: return negate(eval(n.lhs, w));
        case K::conjunction: {
            Truth l = eval(n.lhs, w);
            if (l == Truth::no)
                return l;
            Truth r = eval(n.rhs, w);
            if (r == Truth::no)
                return r;
            return l == Truth::yes && r == Truth::yes ? Truth::yes : Truth::unknown;
        }
        case K::disjunction: {
            Truth l = eval(n.lhs, w);
            if (l == Truth::yes)
                return l;
            Truth r = eval(n.rhs, w);
            if (r == Truth::yes)
                return r;
            return l == Truth::no && r == Truth::no ? Truth::no : Truth::unknown;
        }
        case K::implication: {
            Truth l = eval(n.lhs, w);
            if (l == Truth::no)
                return Truth::yes;
            Truth r = eval(n.rhs, w);
            if (r == Truth::yes)
                return r;
            return l == Truth::yes && r == Truth::no ? Truth::no : Truth::unknown;
        }
        case K::obligation:
        case K::permission: {
            if (!assigned_row_[w])
                return Truth::unknown;
            // O: all successors; P: some successor.
            bool universal = n.kind == K::obligation;
            bool any_unknown = false;
            for (std::size_t v : row_[w]) {
                Truth t = eval(n.lhs, v);
                if (t == Truth::unknown)
                    any_unknown = true;
                else if ((t == Truth::yes) != universal)
                    return universal ? Truth::no : Truth::yes;
            }
            if (any_unknown)
                return Truth::unknown;
            return universal ? Truth::yes : Truth::no;
        }
        }
        return Truth::unknown;
    }

    bool refuted() const
    {
        return std::any_of(gamma_.roots.begin(), gamma_.roots.end(),
                           [&](std::size_t f) { return eval(f, 0) == Truth::no; });
    }

    bool satisfied() const
    {
        return std::all_of(gamma_.roots.begin(), gamma_.roots.end(),
                           [&](std::size_t f) { return eval(f, 0) == Truth::yes; });
    }

    void emit()
    {
        KripkeModel m;
        m.worlds = n_;
        for (std::size_t w = 0; w < n_; ++w) {
            std::set<std::string> val;
            for (std::size_t b = 0; b < gamma_.atoms.size(); ++b)
                if ((valuation_[w] >> b) & 1u)
                    val.insert(gamma_.atoms[b]);
            m.valuation.push_back(std::move(val));
            m.successors.push_back(row_[w]);
            std::sort(m.successors.back().begin(), m.successors.back().end());
        }
        out_.push_back(std::move(m));
    }

    bool is_leaf(std::size_t w) const { return dist_[w] >= depth_limit_; }

    void search(std::size_t k)
    {
        if (done())
            return;
        if (k == n_) {
            if (discovered_ == n_ && satisfied())
                emit();
            return;
        }
        if (k >= discovered_)
            return;   // world k would be unreachable from world 0

        // Submasks of the relevant atoms, in increasing order.
        const unsigned mask = relevant_from_[std::min(dist_[k], depth_limit_)];
        unsigned val = 0;
        do {
            valuation_[k] = val;
            if (canonical_valuation(k)) {
                assigned_val_[k] = true;
                if (!refuted())
                    assign_row(k);
                assigned_val_[k] = false;
            }
            val = (val - mask) & mask;
        } while (val != 0 && !done());
    }

    // Worlds are discovered in order of distance, so by the time a world
    // gets its valuation every world before it has one.
    bool canonical_valuation(std::size_t k) const
    {
        if (k > 0 && parent_[k - 1] == parent_[k] && valuation_[k - 1] > valuation_[k])
            return false;
        if (depth_limit_ == 0)
            return true;
        if (is_leaf(k))
            for (std::size_t w = 0; w < k; ++w)
                if ((valuation_[w] & leaf_mask_) == (valuation_[k] & leaf_mask_))
                    return false;
        for (std::size_t w = 0; w < k; ++w) {
            if (dist_[w] + 1 != depth_limit_ || std::find(row_[w].begin(), row_[w].end(), k) == row_[w].end())
                continue;
            for (std::size_t v : row_[w])
                if (v < k && (valuation_[v] & leaf_mask_) == (valuation_[k] & leaf_mask_))
                    return false;
        }
        return true;
    }

    // Checks on a freshly chosen row of world k against worlds that already
    // have valuations and rows.
    bool canonical_row(std::size_t k) const
    {
        if (dist_[k] + 1 == depth_limit_) {
            std::set<unsigned> seen;
            for (std::size_t v : row_[k])
                if (v <= k && !seen.insert(valuation_[v] & leaf_mask_).second)
                    return false;
        }
        for (std::size_t w = 0; w < k; ++w)
            if (!is_leaf(w) && valuation_[w] == valuation_[k] && row_[w] == row_[k])
                return false;
        return true;
    }

    void assign_row(std::size_t k)
    {
        assigned_row_[k] = true;
        if (is_leaf(k)) {
            // Successors of this world cannot influence world 0.
            row_[k] = {k};
            if (!refuted())
                search(k + 1);
        } else {
            const std::size_t old_count = discovered_;
            const std::size_t subsets = std::size_t{1} << old_count;
            for (std::size_t fresh = 0; old_count + fresh <= n_ && !done(); ++fresh) {
                for (std::size_t mask = 0; mask < subsets && !done(); ++mask) {
                    if (mask == 0 && fresh == 0)
                        continue;   // seriality
                    row_[k].clear();
                    for (std::size_t v = 0; v < old_count; ++v)
                        if ((mask >> v) & 1u)
                            row_[k].push_back(v);
                    for (std::size_t v = old_count; v < old_count + fresh; ++v) {
                        row_[k].push_back(v);
                        dist_[v] = dist_[k] + 1;
                        parent_[v] = k;
                    }
                    if (!canonical_row(k))
                        continue;
                    discovered_ = old_count + fresh;
                    if (!refuted())
                        search(k + 1);
                }
            }
            discovered_ = old_count;
        }
        row_[k].clear();
        assigned_row_[k] = false;
    }

    const Compiled& gamma_;
    std::size_t n_;
    std::size_t limit_;
    std::vector<KripkeModel>& out_;
    std::size_t depth_limit_;
    std::vector<unsigned> relevant_from_;   // atoms at modal levels >= k
    unsigned leaf_mask_ = 0;

    std::vector<unsigned> valuation_;
    std::vector<std::vector<std::size_t>> row_;
    std::vector<bool> assigned_val_;
    std::vector<bool> assigned_row_;
    std::vector<std::size_t> dist_;
    std::vector<std::size_t> parent_;   // discovering world; n_ for world 0
    std::size_t discovered_ = 1;
};

} // namespace

std::vector<KripkeModel> enumerate_models(const std::vector<Formula>& gamma, std::size_t max_worlds,
                                          std::size_t limit)
{
    if (max_worlds == 0)
        return {};
    std::size_t atom_count = atoms_of(gamma).size();
    if (atom_count * max_worlds > 24)
        throw ResourceLimitError("model enumeration needs " + std::to_string(atom_count * max_worlds)
                                 + " valuation bits; the limit is 24");

    Compiled compiled(gamma);
    std::vector<KripkeModel> out;
    for (std::size_t n = 1; n <= max_worlds && out.size() < limit; ++n)
        Enumerator(compiled, n, limit, out).run();
    return out;
}

} // namespace normcheck::sdl
