#pragma once

#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "automata.hpp"

namespace langprime {

namespace detail {

inline void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
    if (!(a == b)) throw InputError("alphabet mismatch");
}

} // namespace detail

/// DFA for the empty language: one useless initial state.
/// (A partial DFA cannot have fewer states, the initial state is mandatory.)
inline Dfa empty_language_dfa(const Alphabet& alphabet) {
    return Dfa(alphabet, 1, 0);
}

/// DFA for {ε}.
inline Dfa epsilon_dfa(const Alphabet& alphabet) {
    Dfa d(alphabet, 1, 0);
    d.set_accepting(0);
    return d;
}

/// True iff L(d) = ∅.
inline bool is_empty_language(const Dfa& d) {
    return !detail::useful_states(d)[d.initial()];
}

/// True iff L(d) = {ε}. Works for arbitrary automata: the language is {ε}
/// exactly when the initial state accepts and no transition connects two
/// useful states (such an edge always completes to a non-empty accepted word).
inline bool is_epsilon_only(const Dfa& d) {
    if (!d.is_accepting(d.initial())) return false;
    auto useful = detail::useful_states(d);
    for (StateId q = 0; q < d.state_count(); ++q) {
        if (!useful[q]) continue;
        for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
            StateId t = d.step(q, a);
            if (t != kNoState && useful[t]) return false;
        }
    }
    return true;
}

/// Product automaton for L(a) ∩ L(b); only reachable pairs are materialized.
inline Dfa product_intersect(const Dfa& a, const Dfa& b) {
    detail::require_same_alphabet(a.alphabet(), b.alphabet());
    const std::size_t k = a.alphabet().size();

    std::map<std::pair<StateId, StateId>, StateId> index;
    std::vector<std::pair<StateId, StateId>> pairs;
    std::deque<StateId> queue;

    auto intern = [&](StateId p, StateId q) {
        auto [it, fresh] = index.try_emplace({p, q}, static_cast<StateId>(pairs.size()));
        if (fresh) {
            pairs.emplace_back(p, q);
            queue.push_back(it->second);
        }
        return it->second;
    };

    intern(a.initial(), b.initial());
    std::vector<std::vector<StateId>> delta; // [state][symbol]
    while (!queue.empty()) {
        StateId id = queue.front();
        queue.pop_front();
        auto [p, q] = pairs[id];
        if (delta.size() <= id) delta.resize(id + 1, std::vector<StateId>(k, kNoState));
        for (SymbolId s = 0; s < k; ++s) {
            StateId tp = a.step(p, s);
            StateId tq = b.step(q, s);
            if (tp == kNoState || tq == kNoState) continue;
            delta[id][s] = intern(tp, tq);
        }
    }

    Dfa out(a.alphabet(), pairs.size(), 0);
    for (StateId id = 0; id < pairs.size(); ++id) {
        auto [p, q] = pairs[id];
        if (a.is_accepting(p) && b.is_accepting(q)) out.set_accepting(id);
        if (id < delta.size())
            for (SymbolId s = 0; s < k; ++s)
                if (delta[id][s] != kNoState) out.add_transition(id, s, delta[id][s]);
    }
    return out;
}

inline Nfa nfa_from_dfa(const Dfa& d) {
    Nfa n(d.alphabet(), d.state_count());
    n.add_initial(d.initial());
    for (StateId q = 0; q < d.state_count(); ++q) {
        if (d.is_accepting(q)) n.set_accepting(q);
        for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
            StateId t = d.step(q, a);
            if (t != kNoState) n.add_transition(q, a, t);
        }
    }
    return n;
}

/// Disjoint union; the result has exactly |Q_a| + |Q_b| states and both
/// initial-state sets merged.
inline Nfa nfa_union(const Nfa& a, const Nfa& b) {
    detail::require_same_alphabet(a.alphabet(), b.alphabet());
    const StateId offset = static_cast<StateId>(a.state_count());
    Nfa out(a.alphabet(), a.state_count() + b.state_count());
    for (StateId q : a.initial()) out.add_initial(q);
    for (StateId q : b.initial()) out.add_initial(offset + q);
    for (StateId q = 0; q < a.state_count(); ++q) {
        if (a.is_accepting(q)) out.set_accepting(q);
        for (SymbolId s = 0; s < a.alphabet().size(); ++s)
            for (StateId t : a.targets(q, s)) out.add_transition(q, s, t);
    }
    for (StateId q = 0; q < b.state_count(); ++q) {
        if (b.is_accepting(q)) out.set_accepting(offset + q);
        for (SymbolId s = 0; s < b.alphabet().size(); ++s)
            for (StateId t : b.targets(q, s)) out.add_transition(offset + q, s, offset + t);
    }
    return out;
}

/// Concatenation L(a)·L(b) without ε-transitions: both automata are copied;
/// every transition of `a` into an accepting state gets a parallel edge onto
/// b's initial state. b's start is also initial iff ε ∈ L(a), and a's
/// accepting states stay accepting iff ε ∈ L(b).
inline Nfa concat(const Dfa& a, const Dfa& b) {
    detail::require_same_alphabet(a.alphabet(), b.alphabet());
    const StateId offset = static_cast<StateId>(a.state_count());
    const StateId b_start = offset + b.initial();
    Nfa out(a.alphabet(), a.state_count() + b.state_count());

    out.add_initial(a.initial());
    if (a.is_accepting(a.initial())) out.add_initial(b_start);

    const bool b_has_epsilon = b.is_accepting(b.initial());
    for (StateId q = 0; q < a.state_count(); ++q) {
        if (b_has_epsilon && a.is_accepting(q)) out.set_accepting(q);
        for (SymbolId s = 0; s < a.alphabet().size(); ++s) {
            StateId t = a.step(q, s);
            if (t == kNoState) continue;
            out.add_transition(q, s, t);
            if (a.is_accepting(t)) out.add_transition(q, s, b_start);
        }
    }
    for (StateId q = 0; q < b.state_count(); ++q) {
        if (b.is_accepting(q)) out.set_accepting(offset + q);
        for (SymbolId s = 0; s < b.alphabet().size(); ++s) {
            StateId t = b.step(q, s);
            if (t != kNoState) out.add_transition(offset + q, s, offset + t);
        }
    }
    return out;
}

/// Subset construction. Only reachable subsets are materialized and the empty
/// subset never is (the transition stays undefined instead). States are
/// numbered in breadth-first discovery order over the sorted alphabet.
inline Dfa determinize(const Nfa& n) {
    const std::size_t k = n.alphabet().size();
    if (n.initial().empty()) return empty_language_dfa(n.alphabet());

    std::map<std::vector<StateId>, StateId> index;
    std::vector<std::vector<StateId>> subsets;
    std::deque<StateId> queue;

    auto intern = [&](std::vector<StateId> subset) {
        auto [it, fresh] = index.try_emplace(std::move(subset), static_cast<StateId>(subsets.size()));
        if (fresh) {
            subsets.push_back(it->first);
            queue.push_back(it->second);
        }
        return it->second;
    };

    intern(n.initial());
    std::vector<std::vector<StateId>> delta;
    while (!queue.empty()) {
        StateId id = queue.front();
        queue.pop_front();
        if (delta.size() <= id) delta.resize(id + 1, std::vector<StateId>(k, kNoState));
        std::vector<StateId> subset = subsets[id];
        for (SymbolId s = 0; s < k; ++s) {
            std::vector<StateId> next;
            for (StateId q : subset)
                for (StateId t : n.targets(q, s)) {
                    auto it = std::lower_bound(next.begin(), next.end(), t);
                    if (it == next.end() || *it != t) next.insert(it, t);
                }
            if (next.empty()) continue;
            delta[id][s] = intern(std::move(next));
        }
    }

    Dfa out(n.alphabet(), subsets.size(), 0);
    for (StateId id = 0; id < subsets.size(); ++id) {
        for (StateId q : subsets[id])
            if (n.is_accepting(q)) {
                out.set_accepting(id);
                break;
            }
        if (id < delta.size())
            for (SymbolId s = 0; s < k; ++s)
                if (delta[id][s] != kNoState) out.add_transition(id, s, delta[id][s]);
    }
    return out;
}

/// Minimal partial DFA for L(d): trims useless states, refines the Nerode
/// partition (undefined transitions go to an implicit dead class), and
/// renumbers states canonically in breadth-first order over the sorted
/// alphabet. Two language-equal inputs yield value-identical outputs.
inline Dfa minimize(const Dfa& d) {
    auto useful = detail::useful_states(d);
    const std::size_t k = d.alphabet().size();

    if (!useful[d.initial()]) return empty_language_dfa(d.alphabet());

    // Initial partition: accepting vs non-accepting useful states.
    constexpr StateId kDeadClass = kNoState;
    std::vector<StateId> cls(d.state_count(), kDeadClass);
    bool has_accepting = false, has_rejecting = false;
    for (StateId q = 0; q < d.state_count(); ++q)
        if (useful[q]) {
            cls[q] = d.is_accepting(q) ? 1 : 0;
            (d.is_accepting(q) ? has_accepting : has_rejecting) = true;
        }

    std::size_t class_count = static_cast<std::size_t>(has_accepting) + has_rejecting;
    for (;;) {
        std::map<std::vector<StateId>, StateId> sig_index;
        std::vector<StateId> next_cls(d.state_count(), kDeadClass);
        for (StateId q = 0; q < d.state_count(); ++q) {
            if (!useful[q]) continue;
            std::vector<StateId> sig;
            sig.reserve(k + 1);
            sig.push_back(cls[q]);
            for (SymbolId a = 0; a < k; ++a) {
                StateId t = d.step(q, a);
                sig.push_back((t == kNoState || !useful[t]) ? kDeadClass : cls[t]);
            }
            auto [it, fresh] = sig_index.try_emplace(std::move(sig),
                                                     static_cast<StateId>(sig_index.size()));
            (void)fresh;
            next_cls[q] = it->second;
        }
        bool stable = sig_index.size() == class_count;
        class_count = sig_index.size();
        cls = std::move(next_cls);
        if (stable) break;
    }

    // Class-level transitions (all members agree after refinement).
    std::vector<std::vector<StateId>> class_delta(class_count, std::vector<StateId>(k, kDeadClass));
    std::vector<bool> class_accepting(class_count, false);
    for (StateId q = 0; q < d.state_count(); ++q) {
        if (!useful[q]) continue;
        if (d.is_accepting(q)) class_accepting[cls[q]] = true;
        for (SymbolId a = 0; a < k; ++a) {
            StateId t = d.step(q, a);
            if (t != kNoState && useful[t]) class_delta[cls[q]][a] = cls[t];
        }
    }

    // Canonical breadth-first renumbering from the initial class.
    std::vector<StateId> order(class_count, kNoState);
    std::vector<StateId> bfs;
    StateId next_index = 0;
    auto visit = [&](StateId c) {
        if (order[c] == kNoState) {
            order[c] = next_index++;
            bfs.push_back(c);
        }
    };
    visit(cls[d.initial()]);
    for (std::size_t i = 0; i < bfs.size(); ++i)
        for (SymbolId a = 0; a < k; ++a) {
            StateId t = class_delta[bfs[i]][a];
            if (t != kDeadClass) visit(t);
        }

    Dfa out(d.alphabet(), class_count, 0);
    for (StateId c = 0; c < class_count; ++c) {
        if (class_accepting[c]) out.set_accepting(order[c]);
        for (SymbolId a = 0; a < k; ++a) {
            StateId t = class_delta[c][a];
            if (t != kDeadClass) out.add_transition(order[c], a, order[t]);
        }
    }
    return out;
}

struct EquivalenceResult {
    bool equal = false;
    /// Present iff not equal: a shortest word in the symmetric difference,
    /// lexicographically least among the shortest.
    std::optional<Word> counterexample;
};

/// Language equality of two DFAs over the same alphabet, with minimal
/// counterexample extraction via breadth-first product traversal.
inline EquivalenceResult equivalent(const Dfa& a, const Dfa& b) {
    detail::require_same_alphabet(a.alphabet(), b.alphabet());
    const std::size_t k = a.alphabet().size();
    const std::size_t na = a.state_count(), nb = b.state_count();
    const std::size_t cols = nb + 1;
    auto encode = [&](StateId p, StateId q) {
        std::size_t pi = (p == kNoState) ? na : p;
        std::size_t qi = (q == kNoState) ? nb : q;
        return pi * cols + qi;
    };
    auto acc = [&](const Dfa& d, StateId q) { return q != kNoState && d.is_accepting(q); };

    struct Node {
        StateId p, q;
        std::size_t parent;
        SymbolId via;
    };
    std::vector<Node> nodes;
    std::vector<bool> seen((na + 1) * cols, false);
    std::size_t head = 0;

    auto push = [&](StateId p, StateId q, std::size_t parent, SymbolId via) -> std::optional<std::size_t> {
        std::size_t key = encode(p, q);
        if (seen[key]) return std::nullopt;
        seen[key] = true;
        nodes.push_back({p, q, parent, via});
        return nodes.size() - 1;
    };

    auto build_word = [&](std::size_t i) {
        detail::IdWord ids;
        while (nodes[i].parent != static_cast<std::size_t>(-1)) {
            ids.push_back(nodes[i].via);
            i = nodes[i].parent;
        }
        std::reverse(ids.begin(), ids.end());
        return detail::to_word(a.alphabet(), ids);
    };

    push(a.initial(), b.initial(), static_cast<std::size_t>(-1), 0);
    while (head < nodes.size()) {
        Node n = nodes[head];
        if (acc(a, n.p) != acc(b, n.q))
            return {false, build_word(head)};
        if (!(n.p == kNoState && n.q == kNoState)) {
            for (SymbolId s = 0; s < k; ++s) {
                StateId tp = (n.p == kNoState) ? kNoState : a.step(n.p, s);
                StateId tq = (n.q == kNoState) ? kNoState : b.step(n.q, s);
                if (tp == kNoState && tq == kNoState) continue;
                push(tp, tq, head, s);
            }
        }
        ++head;
    }
    return {true, std::nullopt};
}

/// Re-bases an automaton onto a larger alphabet without changing its language.
inline Dfa with_alphabet(const Dfa& d, const Alphabet& superset) {
    std::vector<SymbolId> remap(d.alphabet().size());
    for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
        auto id = superset.find(d.alphabet().token(a));
        if (!id) throw InputError("alphabet is not a superset: missing '" + d.alphabet().token(a) + "'");
        remap[a] = *id;
    }
    Dfa out(superset, d.state_count(), d.initial());
    for (StateId q = 0; q < d.state_count(); ++q) {
        if (d.is_accepting(q)) out.set_accepting(q);
        for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
            StateId t = d.step(q, a);
            if (t != kNoState) out.add_transition(q, remap[a], t);
        }
    }
    return out;
}

} // namespace langprime
