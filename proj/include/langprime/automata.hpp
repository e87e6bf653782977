#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace langprime {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;

inline constexpr StateId kNoState = std::numeric_limits<StateId>::max();

/// One letter of an alphabet. Tokens are free-form text without whitespace,
/// so composite letters like `t@3`, `a'` or `$` are ordinary symbols.
class Symbol {
public:
    explicit Symbol(std::string token) : token_(std::move(token)) {
        if (token_.empty())
            throw InputError("symbol token must be non-empty");
        for (unsigned char c : token_)
            if (std::isspace(c))
                throw InputError("symbol token must not contain whitespace: '" + token_ + "'");
    }

    const std::string& token() const { return token_; }

    auto operator<=>(const Symbol&) const = default;

private:
    std::string token_;
};

/// A word is a (possibly empty) sequence of symbols; the empty word is ε.
using Word = std::vector<Symbol>;

inline Word make_word(std::initializer_list<std::string> tokens) {
    Word w;
    w.reserve(tokens.size());
    for (const auto& t : tokens) w.emplace_back(t);
    return w;
}

/// Length-then-lexicographic order; lexicographic comparison is byte order
/// of the tokens. This is the canonical word order used everywhere
/// (enumeration output, counterexample selection).
inline bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

inline std::string to_string(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += w[i].token();
    }
    return out;
}

/// A finite set of symbols, stored sorted by token byte order.
/// Symbol ids are indices into the sorted sequence, so id order and
/// lexicographic token order agree.
class Alphabet {
public:
    Alphabet() = default;

    explicit Alphabet(std::vector<std::string> tokens) {
        for (auto& t : tokens) Symbol{t}; // validate
        std::sort(tokens.begin(), tokens.end());
        tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
        tokens_ = std::move(tokens);
    }

    std::size_t size() const { return tokens_.size(); }
    bool empty() const { return tokens_.empty(); }

    bool contains(const std::string& token) const {
        return std::binary_search(tokens_.begin(), tokens_.end(), token);
    }

    std::optional<SymbolId> find(const std::string& token) const {
        auto it = std::lower_bound(tokens_.begin(), tokens_.end(), token);
        if (it == tokens_.end() || *it != token) return std::nullopt;
        return static_cast<SymbolId>(it - tokens_.begin());
    }

    SymbolId id(const std::string& token) const {
        if (auto i = find(token)) return *i;
        throw InputError("symbol not in alphabet: '" + token + "'");
    }

    const std::string& token(SymbolId id) const {
        if (id >= tokens_.size()) throw InputError("symbol id out of range");
        return tokens_[id];
    }

    const std::vector<std::string>& tokens() const { return tokens_; }

    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> tokens_;
};

/// Deterministic finite automaton with a partial transition function.
/// No sink state is ever materialized: an undefined step simply kills the run,
/// which keeps automata of finite languages acyclic.
class Dfa {
public:
    Dfa(Alphabet alphabet, std::size_t state_count, StateId initial)
        : alphabet_(std::move(alphabet)),
          state_count_(state_count),
          initial_(initial),
          accepting_(state_count, false),
          delta_(state_count * alphabet_.size(), kNoState) {
        if (state_count == 0) throw InputError("automaton needs at least one state");
        if (initial >= state_count) throw InputError("initial state out of range");
    }

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t state_count() const { return state_count_; }
    StateId initial() const { return initial_; }

    bool is_accepting(StateId q) const { return accepting_[q]; }

    void set_accepting(StateId q, bool on = true) {
        check_state(q);
        accepting_[q] = on;
    }

    std::optional<StateId> transition(StateId q, SymbolId a) const {
        StateId t = step(q, a);
        if (t == kNoState) return std::nullopt;
        return t;
    }

    /// Raw transition lookup; kNoState means undefined.
    StateId step(StateId q, SymbolId a) const { return delta_[q * alphabet_.size() + a]; }

    void add_transition(StateId from, SymbolId via, StateId to) {
        check_state(from);
        check_state(to);
        if (via >= alphabet_.size()) throw InputError("transition symbol out of range");
        StateId& slot = delta_[from * alphabet_.size() + via];
        if (slot != kNoState)
            throw InputError("duplicate transition for (state " + std::to_string(from) +
                             ", '" + alphabet_.token(via) + "')");
        slot = to;
    }

    void add_transition(StateId from, const std::string& token, StateId to) {
        add_transition(from, alphabet_.id(token), to);
    }

    std::size_t transition_count() const {
        return static_cast<std::size_t>(
            std::count_if(delta_.begin(), delta_.end(), [](StateId t) { return t != kNoState; }));
    }

    std::size_t out_degree(StateId q) const {
        std::size_t d = 0;
        for (SymbolId a = 0; a < alphabet_.size(); ++a)
            if (step(q, a) != kNoState) ++d;
        return d;
    }

    std::vector<StateId> accepting_states() const {
        std::vector<StateId> out;
        for (StateId q = 0; q < state_count_; ++q)
            if (accepting_[q]) out.push_back(q);
        return out;
    }

    bool operator==(const Dfa&) const = default;

private:
    void check_state(StateId q) const {
        if (q >= state_count_) throw InputError("state out of range");
    }

    Alphabet alphabet_;
    std::size_t state_count_;
    StateId initial_;
    std::vector<bool> accepting_;
    std::vector<StateId> delta_; // dense [state][symbol], kNoState = undefined
};

/// Nondeterministic finite automaton; the initial-state set may have any size.
class Nfa {
public:
    Nfa(Alphabet alphabet, std::size_t state_count)
        : alphabet_(std::move(alphabet)),
          state_count_(state_count),
          accepting_(state_count, false),
          delta_(state_count * alphabet_.size()) {}

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t state_count() const { return state_count_; }

    const std::vector<StateId>& initial() const { return initial_; }

    void add_initial(StateId q) {
        check_state(q);
        insert_sorted(initial_, q);
    }

    bool is_accepting(StateId q) const { return accepting_[q]; }

    void set_accepting(StateId q, bool on = true) {
        check_state(q);
        accepting_[q] = on;
    }

    const std::vector<StateId>& targets(StateId q, SymbolId a) const {
        return delta_[q * alphabet_.size() + a];
    }

    void add_transition(StateId from, SymbolId via, StateId to) {
        check_state(from);
        check_state(to);
        if (via >= alphabet_.size()) throw InputError("transition symbol out of range");
        insert_sorted(delta_[from * alphabet_.size() + via], to);
    }

    void add_transition(StateId from, const std::string& token, StateId to) {
        add_transition(from, alphabet_.id(token), to);
    }

    std::size_t transition_count() const {
        std::size_t n = 0;
        for (const auto& v : delta_) n += v.size();
        return n;
    }

    bool operator==(const Nfa&) const = default;

private:
    static void insert_sorted(std::vector<StateId>& v, StateId q) {
        auto it = std::lower_bound(v.begin(), v.end(), q);
        if (it == v.end() || *it != q) v.insert(it, q);
    }

    void check_state(StateId q) const {
        if (q >= state_count_) throw InputError("state out of range");
    }

    Alphabet alphabet_;
    std::size_t state_count_;
    std::vector<StateId> initial_;
    std::vector<bool> accepting_;
    std::vector<std::vector<StateId>> delta_;
};

namespace detail {

using IdWord = std::vector<SymbolId>;

inline IdWord to_ids(const Alphabet& alphabet, const Word& w) {
    IdWord ids;
    ids.reserve(w.size());
    for (const auto& s : w) ids.push_back(alphabet.id(s.token()));
    return ids;
}

inline Word to_word(const Alphabet& alphabet, const IdWord& ids) {
    Word w;
    w.reserve(ids.size());
    for (SymbolId a : ids) w.emplace_back(alphabet.token(a));
    return w;
}

/// States reachable from the initial state along defined transitions.
inline std::vector<bool> reachable_states(const Dfa& d) {
    std::vector<bool> seen(d.state_count(), false);
    std::vector<StateId> stack{d.initial()};
    seen[d.initial()] = true;
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
            StateId t = d.step(q, a);
            if (t != kNoState && !seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    return seen;
}

/// States from which some accepting state is reachable (via any word, ε included).
inline std::vector<bool> coreachable_states(const Dfa& d) {
    std::vector<std::vector<StateId>> rev(d.state_count());
    for (StateId q = 0; q < d.state_count(); ++q)
        for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
            StateId t = d.step(q, a);
            if (t != kNoState) rev[t].push_back(q);
        }
    std::vector<bool> seen(d.state_count(), false);
    std::vector<StateId> stack;
    for (StateId q = 0; q < d.state_count(); ++q)
        if (d.is_accepting(q)) {
            seen[q] = true;
            stack.push_back(q);
        }
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId p : rev[q])
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    }
    return seen;
}

/// Reachable-and-coreachable states: the part of the automaton that matters.
inline std::vector<bool> useful_states(const Dfa& d) {
    auto reach = reachable_states(d);
    auto coreach = coreachable_states(d);
    std::vector<bool> useful(d.state_count(), false);
    for (StateId q = 0; q < d.state_count(); ++q) useful[q] = reach[q] && coreach[q];
    return useful;
}

inline std::optional<StateId> run_ids(const Dfa& d, const IdWord& ids) {
    StateId q = d.initial();
    for (SymbolId a : ids) {
        q = d.step(q, a);
        if (q == kNoState) return std::nullopt;
    }
    return q;
}

inline bool accepts_ids(const Dfa& d, const IdWord& ids) {
    auto q = run_ids(d, ids);
    return q && d.is_accepting(*q);
}

/// All accepted words as symbol-id sequences, sorted length-then-lex.
/// Caller must ensure the language is finite.
inline std::vector<IdWord> enumerate_id_words(const Dfa& d) {
    auto useful = useful_states(d);
    std::vector<IdWord> out;
    if (!useful[d.initial()]) return out;
    IdWord current;
    // Depth-first over the useful subgraph; cycles are excluded by precondition.
    auto dfs = [&](auto&& self, StateId q) -> void {
        if (d.is_accepting(q)) out.push_back(current);
        for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
            StateId t = d.step(q, a);
            if (t == kNoState || !useful[t]) continue;
            current.push_back(a);
            self(self, t);
            current.pop_back();
        }
    };
    dfs(dfs, d.initial());
    std::sort(out.begin(), out.end(), [](const IdWord& a, const IdWord& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

} // namespace detail

/// δ(s, w): the state reached after reading w, or nothing once a step
/// is undefined. Symbols outside the alphabet are an input error.
inline std::optional<StateId> run(const Dfa& d, const Word& w) {
    return detail::run_ids(d, detail::to_ids(d.alphabet(), w));
}

/// δ*(s, w): the states visited after each consumed letter, cut off
/// (exclusively) at the first undefined step. Reading ε visits nothing.
inline std::vector<StateId> visited_states(const Dfa& d, const Word& w) {
    auto ids = detail::to_ids(d.alphabet(), w);
    std::vector<StateId> visited;
    StateId q = d.initial();
    for (SymbolId a : ids) {
        q = d.step(q, a);
        if (q == kNoState) break;
        visited.push_back(q);
    }
    return visited;
}

inline bool accepts(const Dfa& d, const Word& w) {
    auto q = run(d, w);
    return q && d.is_accepting(*q);
}

/// True iff the language is finite, i.e. the useful part of the automaton
/// is acyclic.
inline bool is_finite(const Dfa& d) {
    auto useful = detail::useful_states(d);
    enum class Mark : unsigned char { unseen, active, done };
    std::vector<Mark> mark(d.state_count(), Mark::unseen);
    auto dfs = [&](auto&& self, StateId q) -> bool {
        mark[q] = Mark::active;
        for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
            StateId t = d.step(q, a);
            if (t == kNoState || !useful[t]) continue;
            if (mark[t] == Mark::active) return false;
            if (mark[t] == Mark::unseen && !self(self, t)) return false;
        }
        mark[q] = Mark::done;
        return true;
    };
    for (StateId q = 0; q < d.state_count(); ++q)
        if (useful[q] && mark[q] == Mark::unseen && !dfs(dfs, q)) return false;
    return true;
}

/// Number of accepted words, saturated at the uint64 maximum.
/// Throws on infinite languages.
inline std::uint64_t count_words(const Dfa& d) {
    if (!is_finite(d)) throw InputError("language is infinite");
    auto useful = detail::useful_states(d);
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> memo(d.state_count(), kMax);
    std::vector<bool> known(d.state_count(), false);
    auto count = [&](auto&& self, StateId q) -> std::uint64_t {
        if (known[q]) return memo[q];
        std::uint64_t total = d.is_accepting(q) ? 1 : 0;
        for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
            StateId t = d.step(q, a);
            if (t == kNoState || !useful[t]) continue;
            std::uint64_t sub = self(self, t);
            total = (total > kMax - sub) ? kMax : total + sub;
        }
        known[q] = true;
        memo[q] = total;
        return total;
    };
    if (!useful[d.initial()]) return 0;
    return count(count, d.initial());
}

/// All words of a finite language, sorted by length then lexicographically.
inline std::vector<Word> enumerate_words(const Dfa& d) {
    if (!is_finite(d)) throw InputError("cannot enumerate an infinite language");
    std::vector<Word> out;
    for (const auto& ids : detail::enumerate_id_words(d))
        out.push_back(detail::to_word(d.alphabet(), ids));
    return out;
}

/// Builds the trie automaton of an explicit finite word set.
inline Dfa dfa_from_words(const Alphabet& alphabet, const std::vector<Word>& words) {
    std::vector<detail::IdWord> ids;
    ids.reserve(words.size());
    for (const auto& w : words) ids.push_back(detail::to_ids(alphabet, w));

    std::vector<std::map<SymbolId, StateId>> trie(1);
    std::vector<bool> accept(1, false);
    for (const auto& w : ids) {
        StateId q = 0;
        for (SymbolId a : w) {
            auto it = trie[q].find(a);
            if (it == trie[q].end()) {
                StateId fresh = static_cast<StateId>(trie.size());
                trie[q][a] = fresh;
                trie.emplace_back();
                accept.push_back(false);
                q = fresh;
            } else {
                q = it->second;
            }
        }
        accept[q] = true;
    }

    Dfa d(alphabet, trie.size(), 0);
    for (StateId q = 0; q < trie.size(); ++q) {
        if (accept[q]) d.set_accepting(q);
        for (auto [a, t] : trie[q]) d.add_transition(q, a, t);
    }
    return d;
}

} // namespace langprime
