#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "automata.hpp"
#include "automata_ops.hpp"
#include "concat_equivalence.hpp"
#include "tiling.hpp"

namespace langprime {

/// A tile paired with a grid position, the letters of the gadget alphabet.
/// Position indices run from 1 to n².
struct NumberedSymbol {
    std::string tile;
    int index = 0;

    NumberedSymbol(std::string tile_name, int idx) : tile(std::move(tile_name)), index(idx) {
        if (index < 1) throw InputError("numbered symbol index must be at least 1");
    }

    std::string token() const { return tile + "@" + std::to_string(index); }
};

/// The three automata of a concatenation-equivalence query derived from a
/// relational tiling instance, plus the two suffix-violation automata whose
/// determinized union is the right factor.
struct ConcatGadget {
    Dfa lang;         ///< L  = L1·L2 ∪ { properly numbered full words }
    Dfa left;         ///< L1 = properly numbered words of length ≤ n²−2
    Dfa right;        ///< L2 = determinize(h_violations ∪ v_violations)
    Dfa h_violations; ///< numbered runs to n² violating H right after their start
    Dfa v_violations; ///< numbered runs to n² violating V right after their start
};

namespace detail {

/// Symbol-id table for the alphabet Θ × [1,n²], token form "tile@index".
struct GadgetAlphabet {
    Alphabet alphabet;
    std::vector<SymbolId> table; // [tile * n² + (index-1)]
    std::size_t positions = 0;

    GadgetAlphabet(const std::vector<std::string>& tiles, int n) {
        positions = static_cast<std::size_t>(n) * n;
        std::vector<std::string> tokens;
        tokens.reserve(tiles.size() * positions);
        for (const auto& t : tiles)
            for (std::size_t m = 1; m <= positions; ++m)
                tokens.push_back(NumberedSymbol(t, static_cast<int>(m)).token());
        alphabet = Alphabet(tokens);
        table.resize(tiles.size() * positions);
        for (std::size_t t = 0; t < tiles.size(); ++t)
            for (std::size_t m = 1; m <= positions; ++m)
                table[t * positions + (m - 1)] =
                    alphabet.id(NumberedSymbol(tiles[t], static_cast<int>(m)).token());
    }

    SymbolId id(std::size_t tile, std::size_t index) const {
        return table[tile * positions + (index - 1)];
    }
};

} // namespace detail

/// Builds the concatenation-equivalence query of a relational tiling instance
/// over the alphabet Θ × [1,n²]: L(lang) = L(left)·L(right) holds iff the
/// instance has no legal tiling. Requires n ≥ 2 and a non-empty tile set.
inline ConcatGadget rel_to_concat(const RelTilingInstance& r) {
    validate(r);
    if (r.n < 2) throw InputError("gadget construction needs n >= 2");
    if (r.tiles.empty()) throw InputError("gadget construction needs a non-empty tile set");

    const std::size_t tiles = r.tiles.size();
    const std::size_t n = static_cast<std::size_t>(r.n);
    const std::size_t nn = n * n;
    detail::GadgetAlphabet ga(r.tiles, r.n);

    // Left factor: chain automaton for the properly numbered words of length
    // at most n²−2. Every state accepts; ε is a valid left part.
    Dfa chain(ga.alphabet, nn - 1, 0);
    for (StateId q = 0; q < nn - 1; ++q) chain.set_accepting(q);
    for (std::size_t m = 0; m + 1 <= nn - 2; ++m)
        for (std::size_t t = 0; t < tiles; ++t)
            chain.add_transition(static_cast<StateId>(m), ga.id(t, m + 1),
                                 static_cast<StateId>(m + 1));

    // Horizontal violations: (t_m,m)(t_{m+1},m+1)…(t_{n²},n²) with
    // (t_m, t_{m+1}) ∉ H, started at any index m that does not end a row.
    // States: start, one per (tile, start index), one per index in [2,n²].
    std::vector<std::size_t> h_starts;
    for (std::size_t m = 1; m < nn; ++m)
        if (m % n != 0) h_starts.push_back(m);
    std::vector<std::size_t> h_slot(nn, 0);
    for (std::size_t i = 0; i < h_starts.size(); ++i) h_slot[h_starts[i]] = i;

    const std::size_t h_start_count = h_starts.size(); // n² − n
    Dfa h_dfa(ga.alphabet, 1 + tiles * h_start_count + (nn - 1), 0);
    auto h_pair = [&](std::size_t t, std::size_t m) {
        return static_cast<StateId>(1 + t * h_start_count + h_slot[m]);
    };
    auto h_index = [&](std::size_t i) { // i ∈ [2,n²]
        return static_cast<StateId>(1 + tiles * h_start_count + (i - 2));
    };
    h_dfa.set_accepting(h_index(nn));
    for (std::size_t m : h_starts)
        for (std::size_t t = 0; t < tiles; ++t) {
            h_dfa.add_transition(0, ga.id(t, m), h_pair(t, m));
            for (std::size_t u = 0; u < tiles; ++u)
                if (!r.h.count({static_cast<TileId>(t), static_cast<TileId>(u)}))
                    h_dfa.add_transition(h_pair(t, m), ga.id(u, m + 1), h_index(m + 1));
        }
    for (std::size_t i = 2; i < nn; ++i)
        for (std::size_t t = 0; t < tiles; ++t)
            h_dfa.add_transition(h_index(i), ga.id(t, i + 1), h_index(i + 1));

    // Vertical violations: the offending partner sits n cells further, so the
    // walk states remember (tile, start index, distance walked so far).
    // States: start, (tile, m, o) for m ∈ [1,n²−n], o ∈ [0,n−1], and one per
    // index in [n+1,n²].
    const std::size_t v_start_count = nn - n;
    Dfa v_dfa(ga.alphabet, 1 + tiles * v_start_count * n + (nn - n), 0);
    auto v_walk = [&](std::size_t t, std::size_t m, std::size_t o) {
        return static_cast<StateId>(1 + (t * v_start_count + (m - 1)) * n + o);
    };
    auto v_index = [&](std::size_t i) { // i ∈ [n+1,n²]
        return static_cast<StateId>(1 + tiles * v_start_count * n + (i - n - 1));
    };
    v_dfa.set_accepting(v_index(nn));
    for (std::size_t m = 1; m <= nn - n; ++m)
        for (std::size_t t = 0; t < tiles; ++t) {
            v_dfa.add_transition(0, ga.id(t, m), v_walk(t, m, 0));
            for (std::size_t o = 0; o < n - 1; ++o) // intermediate letters, any tile
                for (std::size_t u = 0; u < tiles; ++u)
                    v_dfa.add_transition(v_walk(t, m, o), ga.id(u, m + o + 1),
                                         v_walk(t, m, o + 1));
            for (std::size_t u = 0; u < tiles; ++u)
                if (!r.v.count({static_cast<TileId>(t), static_cast<TileId>(u)}))
                    v_dfa.add_transition(v_walk(t, m, n - 1), ga.id(u, m + n), v_index(m + n));
        }
    for (std::size_t i = n + 1; i < nn; ++i)
        for (std::size_t t = 0; t < tiles; ++t)
            v_dfa.add_transition(v_index(i), ga.id(t, i + 1), v_index(i + 1));

    Dfa l2 = determinize(nfa_union(nfa_from_dfa(h_dfa), nfa_from_dfa(v_dfa)));

    // Full language: counter states 0..n² accept properly numbered words at
    // n²; a numbering leap from a counter state q ≤ n²−2 (a word of the left
    // factor) jumps into the right-factor automaton as if it had just
    // started. Leaps from longer prefixes stay undefined, otherwise words
    // outside L1·L2 would slip in.
    const StateId counter_count = static_cast<StateId>(nn + 1);
    const std::size_t lang_states = nn + l2.state_count(); // counters + (Q2 ∖ {start})
    if (l2.initial() != 0) throw std::logic_error("determinize must number the start state 0");
    Dfa lang(ga.alphabet, lang_states, 0);
    auto embed = [&](StateId q2) { // q2 ≥ 1
        return static_cast<StateId>(nn + q2);
    };
    lang.set_accepting(static_cast<StateId>(nn));
    for (StateId q2 = 1; q2 < l2.state_count(); ++q2)
        if (l2.is_accepting(q2)) lang.set_accepting(embed(q2));
    if (l2.is_accepting(0)) throw std::logic_error("right factor must not accept the empty word");

    for (std::size_t q = 0; q + 1 < counter_count; ++q)
        for (std::size_t t = 0; t < tiles; ++t)
            lang.add_transition(static_cast<StateId>(q), ga.id(t, q + 1),
                                static_cast<StateId>(q + 1));
    for (std::size_t q = 0; q + 2 < counter_count; ++q) // leap only from counters ≤ n²−2
        for (std::size_t t = 0; t < tiles; ++t)
            for (std::size_t m = 1; m <= nn; ++m) {
                if (m == q + 1) continue;
                StateId target = l2.step(0, ga.id(t, m));
                if (target == kNoState) continue;
                if (target == 0) throw std::logic_error("right factor loops back to its start");
                lang.add_transition(static_cast<StateId>(q), ga.id(t, m), embed(target));
            }
    for (StateId q2 = 1; q2 < l2.state_count(); ++q2)
        for (SymbolId a = 0; a < ga.alphabet.size(); ++a) {
            StateId target = l2.step(q2, a);
            if (target == kNoState) continue;
            if (target == 0) throw std::logic_error("right factor loops back to its start");
            lang.add_transition(embed(q2), a, embed(target));
        }

    return ConcatGadget{std::move(lang), std::move(chain), std::move(l2), std::move(h_dfa),
                        std::move(v_dfa)};
}

/// Renames every symbol of the automaton through `map`; the mapped tokens
/// must stay pairwise distinct.
inline Dfa rename_symbols(const Dfa& d, const std::function<std::string(const std::string&)>& map) {
    std::vector<std::string> tokens;
    for (const auto& t : d.alphabet().tokens()) tokens.push_back(map(t));
    Alphabet mapped(tokens);
    if (mapped.size() != d.alphabet().size())
        throw InputError("symbol renaming must stay injective");
    Dfa out(mapped, d.state_count(), d.initial());
    for (StateId q = 0; q < d.state_count(); ++q) {
        if (d.is_accepting(q)) out.set_accepting(q);
        for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
            StateId t = d.step(q, a);
            if (t != kNoState) out.add_transition(q, mapped.id(map(d.alphabet().token(a))), t);
        }
    }
    return out;
}

/// DFA for the single word made of the given tokens.
inline Dfa single_word_dfa(const Alphabet& alphabet, const std::vector<std::string>& tokens) {
    Dfa d(alphabet, tokens.size() + 1, 0);
    for (std::size_t i = 0; i < tokens.size(); ++i)
        d.add_transition(static_cast<StateId>(i), alphabet.id(tokens[i]),
                         static_cast<StateId>(i + 1));
    d.set_accepting(static_cast<StateId>(tokens.size()));
    return d;
}

/// Builds a DFA for A = L ∪ L1$L2' ∪ L1'$L2 ∪ L1'$$L2' over Σ ∪ Σ' ∪ {$},
/// where priming appends a tick to every token. A is decomposable iff
/// L = L1·L2, and its only non-trivial decomposition is
/// (L1 ∪ L1'$) ∘ (L2 ∪ $L2').
///
/// Degenerate inputs — L ∈ {∅, {ε}}, L1 = ∅ or L2 = ∅ — are rejected with a
/// dedicated error: for those, decide the equality directly instead.
inline Dfa concat_to_primality(const Dfa& lang, const Dfa& left, const Dfa& right) {
    detail::require_same_alphabet(lang.alphabet(), left.alphabet());
    detail::require_same_alphabet(lang.alphabet(), right.alphabet());
    if (!is_finite(lang) || !is_finite(left) || !is_finite(right))
        throw InputError("the primality construction needs finite languages");
    if (is_empty_language(lang) || is_epsilon_only(lang) || is_empty_language(left) ||
        is_empty_language(right))
        throw DegenerateInputError(
            "degenerate input (L empty or {ε}, or an empty factor): decide L = L1 L2 directly");

    auto prime = [](const std::string& t) { return t + "'"; };
    std::vector<std::string> tokens = lang.alphabet().tokens();
    if (std::find(tokens.begin(), tokens.end(), "$") != tokens.end())
        throw InputError("the base alphabet must not contain '$'");
    std::vector<std::string> extended = tokens;
    for (const auto& t : tokens) extended.push_back(prime(t));
    extended.push_back("$");
    Alphabet ext(extended);
    if (ext.size() != 2 * tokens.size() + 1)
        throw InputError("priming the alphabet must not collide with existing symbols");

    Dfa lang_e = with_alphabet(lang, ext);
    Dfa left_e = with_alphabet(left, ext);
    Dfa right_e = with_alphabet(right, ext);
    Dfa left_p = with_alphabet(rename_symbols(left, prime), ext);
    Dfa right_p = with_alphabet(rename_symbols(right, prime), ext);
    Dfa dollar = single_word_dfa(ext, {"$"});
    Dfa dollar2 = single_word_dfa(ext, {"$", "$"});

    auto cat = [](const Dfa& a, const Dfa& b) { return determinize(concat(a, b)); };
    Dfa b1 = cat(cat(left_e, dollar), right_p);
    Dfa b2 = cat(cat(left_p, dollar), right_e);
    Dfa b3 = cat(cat(left_p, dollar2), right_p);

    Nfa all = nfa_union(nfa_union(nfa_from_dfa(lang_e), nfa_from_dfa(b1)),
                        nfa_union(nfa_from_dfa(b2), nfa_from_dfa(b3)));
    return determinize(all);
}

/// Outcome of the edge-tiling → primality pipeline. Either the gadget DFA was
/// built (decomposable iff the edge instance has no legal tiling), or the
/// instance was degenerate and the tiling question was answered directly.
struct PipelineOutcome {
    std::optional<Dfa> gadget;
    std::optional<bool> tiling_exists;
};

/// Chains edge_to_rel, rel_to_concat and concat_to_primality. Instances with
/// n = 1 bypass the gadget (a single cell is tileable iff a tile exists), and
/// degenerate gadget languages (e.g. complete relations, which make the right
/// factor empty) fall back to deciding the concatenation equivalence
/// directly. Other errors propagate.
inline PipelineOutcome hardness_pipeline(const EdgeTilingInstance& e) {
    validate(e);
    if (e.n == 1) return {std::nullopt, !e.tiles.empty()};
    RelTilingInstance rel = edge_to_rel(e);
    ConcatGadget g = rel_to_concat(rel);
    try {
        return {concat_to_primality(g.lang, g.left, g.right), std::nullopt};
    } catch (const DegenerateInputError&) {
        return {std::nullopt, !concat_equiv(g.lang, g.left, g.right).equal};
    }
}

} // namespace langprime
