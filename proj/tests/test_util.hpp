#pragma once

#include <random>
#include <string>
#include <vector>

#include "langprime/langprime.hpp"
#include "oracles.hpp"

namespace testutil {

using namespace langprime;

inline std::vector<std::string> letters(int k) {
    std::vector<std::string> out;
    for (int i = 0; i < k; ++i) out.emplace_back(1, static_cast<char>('a' + i));
    return out;
}

inline Word to_word(const oracle::WordV& w) {
    Word out;
    for (const auto& t : w) out.emplace_back(t);
    return out;
}

inline oracle::WordV to_tokens(const Word& w) {
    oracle::WordV out;
    for (const auto& s : w) out.push_back(s.token());
    return out;
}

inline Dfa dfa_from_lang(const Alphabet& alphabet, const oracle::Lang& lang) {
    std::vector<Word> words;
    for (const auto& w : lang) words.push_back(to_word(w));
    return dfa_from_words(alphabet, words);
}

inline oracle::Lang lang_of(const Dfa& d) {
    oracle::Lang out;
    for (const auto& w : enumerate_words(d)) out.insert(to_tokens(w));
    return out;
}

/// Random explicit word set over letters a.. with at most `max_letters`;
/// duplicate draws are retried a few times so the sets stay reasonably dense.
inline oracle::Lang random_lang(std::mt19937& rng, int max_letters, int max_words, int max_len) {
    int k = std::uniform_int_distribution<int>(1, max_letters)(rng);
    int count = std::uniform_int_distribution<int>(0, max_words)(rng);
    oracle::Lang lang;
    for (int i = 0; i < count; ++i) {
        for (int attempt = 0; attempt < 4; ++attempt) {
            int len = std::uniform_int_distribution<int>(0, max_len)(rng);
            oracle::WordV w;
            for (int j = 0; j < len; ++j)
                w.emplace_back(1,
                               static_cast<char>('a' + std::uniform_int_distribution<int>(0, k - 1)(rng)));
            if (lang.insert(std::move(w)).second) break;
        }
    }
    return lang;
}

/// Random acyclic partial DFA (always a finite language): transitions only
/// go from lower to higher state indices.
inline Dfa random_dag_dfa(std::mt19937& rng, int max_states, const Alphabet& alphabet) {
    int n = std::uniform_int_distribution<int>(1, max_states)(rng);
    int k = static_cast<int>(alphabet.size());
    Dfa d(alphabet, n, 0);
    auto coin = [&](int pct) { return std::uniform_int_distribution<int>(0, 99)(rng) < pct; };
    for (int q = 0; q < n; ++q) {
        d.set_accepting(q, coin(40));
        for (int s = 0; s < k; ++s)
            if (q + 1 < n && coin(55))
                d.add_transition(q, s, std::uniform_int_distribution<int>(q + 1, n - 1)(rng));
    }
    return d;
}

inline Dfa random_dag_dfa(std::mt19937& rng, int max_states, int max_letters) {
    int k = std::uniform_int_distribution<int>(1, max_letters)(rng);
    return random_dag_dfa(rng, max_states, Alphabet(letters(k)));
}

/// Random partial DFA, cycles allowed.
inline Dfa random_dfa(std::mt19937& rng, int max_states, int max_letters) {
    int n = std::uniform_int_distribution<int>(1, max_states)(rng);
    int k = std::uniform_int_distribution<int>(1, max_letters)(rng);
    Dfa d(Alphabet(letters(k)), n, 0);
    auto coin = [&](int pct) { return std::uniform_int_distribution<int>(0, 99)(rng) < pct; };
    for (int q = 0; q < n; ++q) {
        d.set_accepting(q, coin(35));
        for (int s = 0; s < k; ++s)
            if (coin(60)) d.add_transition(q, s, std::uniform_int_distribution<int>(0, n - 1)(rng));
    }
    return d;
}

/// The same automaton started from a different state.
inline Dfa rebase(const Dfa& d, StateId initial) {
    Dfa out(d.alphabet(), d.state_count(), initial);
    for (StateId q = 0; q < d.state_count(); ++q) {
        if (d.is_accepting(q)) out.set_accepting(q);
        for (SymbolId a = 0; a < d.alphabet().size(); ++a)
            if (auto t = d.transition(q, a)) out.add_transition(q, a, *t);
    }
    return out;
}

inline Dfa chain_dfa(const Alphabet& alphabet, std::initializer_list<std::string> tokens,
                     bool accept_last = true) {
    Dfa d(alphabet, tokens.size() + 1, 0);
    StateId q = 0;
    for (const auto& t : tokens) {
        d.add_transition(q, t, q + 1);
        ++q;
    }
    if (accept_last) d.set_accepting(q);
    return d;
}

} // namespace testutil
