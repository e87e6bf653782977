#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "automata.hpp"
#include "decomposition.hpp"
#include "tiling.hpp"

namespace langprime {

namespace detail {

/// Whitespace-tokenized content lines of a stream. Blank lines and lines
/// whose first token starts with '#' are skipped.
inline std::vector<std::vector<std::string>> content_lines(std::istream& in) {
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        lines.push_back(std::move(tokens));
    }
    return lines;
}

struct AutomatonText {
    std::vector<std::string> alphabet;
    std::vector<std::string> states;
    std::vector<std::string> initial;
    std::vector<std::string> accepting;
    std::vector<std::array<std::string, 3>> trans;
};

inline AutomatonText read_automaton_text(std::istream& in, const std::string& header) {
    auto lines = content_lines(in);
    if (lines.empty() || lines.front().size() != 1 || lines.front()[0] != header)
        throw ParseError("expected header '" + header + "'");
    AutomatonText text;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& t = lines[i];
        const std::string& kw = t[0];
        if (kw == "alphabet") {
            text.alphabet.insert(text.alphabet.end(), t.begin() + 1, t.end());
        } else if (kw == "states") {
            text.states.insert(text.states.end(), t.begin() + 1, t.end());
        } else if (kw == "initial") {
            text.initial.insert(text.initial.end(), t.begin() + 1, t.end());
        } else if (kw == "accepting") {
            text.accepting.insert(text.accepting.end(), t.begin() + 1, t.end());
        } else if (kw == "trans") {
            if (t.size() != 4) throw ParseError("trans needs 'trans <from> <symbol> <to>'");
            text.trans.push_back({t[1], t[2], t[3]});
        } else {
            throw ParseError("unknown directive '" + kw + "'");
        }
    }
    return text;
}

struct StateNames {
    std::vector<std::string> names;
    std::map<std::string, StateId> index;

    explicit StateNames(const std::vector<std::string>& declared) {
        for (const auto& n : declared) {
            if (index.count(n)) throw ParseError("duplicate state '" + n + "'");
            index.emplace(n, static_cast<StateId>(names.size()));
            names.push_back(n);
        }
    }

    StateId at(const std::string& n) const {
        auto it = index.find(n);
        if (it == index.end()) throw ParseError("unknown state '" + n + "'");
        return it->second;
    }
};

} // namespace detail

inline Dfa parse_dfa(std::istream& in) {
    auto text = detail::read_automaton_text(in, "dfa-v1");
    detail::StateNames names(text.states);
    if (names.names.empty()) throw ParseError("automaton needs at least one state");
    Alphabet alphabet(text.alphabet);
    if (text.initial.size() != 1) throw ParseError("a DFA needs exactly one initial state");
    Dfa d(alphabet, names.names.size(), names.at(text.initial[0]));
    for (const auto& a : text.accepting) d.set_accepting(names.at(a));
    for (const auto& [from, sym, to] : text.trans) {
        auto id = alphabet.find(sym);
        if (!id) throw ParseError("transition symbol '" + sym + "' is not in the alphabet");
        try {
            d.add_transition(names.at(from), *id, names.at(to));
        } catch (const InputError& e) {
            throw ParseError(e.what());
        }
    }
    return d;
}

inline Nfa parse_nfa(std::istream& in) {
    auto text = detail::read_automaton_text(in, "nfa-v1");
    detail::StateNames names(text.states);
    Alphabet alphabet(text.alphabet);
    Nfa n(alphabet, names.names.size());
    for (const auto& i : text.initial) n.add_initial(names.at(i));
    for (const auto& a : text.accepting) n.set_accepting(names.at(a));
    for (const auto& [from, sym, to] : text.trans) {
        auto id = alphabet.find(sym);
        if (!id) throw ParseError("transition symbol '" + sym + "' is not in the alphabet");
        n.add_transition(names.at(from), *id, names.at(to));
    }
    return n;
}

/// Canonical form: states named q0..q{n-1} by index, alphabet sorted,
/// transitions sorted by (state, symbol). parse(print(x)) == x.
inline void print_dfa(std::ostream& out, const Dfa& d) {
    out << "dfa-v1\n";
    out << "alphabet";
    for (const auto& t : d.alphabet().tokens()) out << ' ' << t;
    out << "\nstates";
    for (StateId q = 0; q < d.state_count(); ++q) out << " q" << q;
    out << "\ninitial q" << d.initial();
    out << "\naccepting";
    for (StateId q : d.accepting_states()) out << " q" << q;
    out << '\n';
    for (StateId q = 0; q < d.state_count(); ++q)
        for (SymbolId a = 0; a < d.alphabet().size(); ++a) {
            StateId t = d.step(q, a);
            if (t != kNoState)
                out << "trans q" << q << ' ' << d.alphabet().token(a) << " q" << t << '\n';
        }
}

inline void print_nfa(std::ostream& out, const Nfa& n) {
    out << "nfa-v1\n";
    out << "alphabet";
    for (const auto& t : n.alphabet().tokens()) out << ' ' << t;
    out << "\nstates";
    for (StateId q = 0; q < n.state_count(); ++q) out << " q" << q;
    out << "\ninitial";
    for (StateId q : n.initial()) out << " q" << q;
    out << "\naccepting";
    for (StateId q = 0; q < n.state_count(); ++q)
        if (n.is_accepting(q)) out << " q" << q;
    out << '\n';
    for (StateId q = 0; q < n.state_count(); ++q)
        for (SymbolId a = 0; a < n.alphabet().size(); ++a)
            for (StateId t : n.targets(q, a))
                out << "trans q" << q << ' ' << n.alphabet().token(a) << " q" << t << '\n';
}

inline RelTilingInstance parse_rel(std::istream& in) {
    auto lines = detail::content_lines(in);
    if (lines.empty() || lines.front().size() != 1 || lines.front()[0] != "rel-v1")
        throw ParseError("expected header 'rel-v1'");
    std::vector<std::string> tiles;
    std::vector<std::pair<std::string, std::string>> h, v;
    std::optional<int> n;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& t = lines[i];
        if (t[0] == "tiles") {
            tiles.insert(tiles.end(), t.begin() + 1, t.end());
        } else if (t[0] == "n") {
            if (t.size() != 2) throw ParseError("n needs one integer");
            n = std::stoi(t[1]);
        } else if (t[0] == "H" || t[0] == "V") {
            if (t.size() != 3) throw ParseError(t[0] + " needs two tile names");
            (t[0] == "H" ? h : v).emplace_back(t[1], t[2]);
        } else {
            throw ParseError("unknown directive '" + t[0] + "'");
        }
    }
    if (!n) throw ParseError("missing 'n' line");
    std::sort(tiles.begin(), tiles.end());
    tiles.erase(std::unique(tiles.begin(), tiles.end()), tiles.end());
    auto tile_id = [&](const std::string& name) {
        auto it = std::lower_bound(tiles.begin(), tiles.end(), name);
        if (it == tiles.end() || *it != name) throw ParseError("unknown tile '" + name + "'");
        return static_cast<TileId>(it - tiles.begin());
    };
    RelTilingInstance r;
    r.tiles = tiles;
    r.n = *n;
    for (auto& [a, b] : h) r.h.emplace(tile_id(a), tile_id(b));
    for (auto& [a, b] : v) r.v.emplace(tile_id(a), tile_id(b));
    validate(r);
    return r;
}

inline void print_rel(std::ostream& out, const RelTilingInstance& r) {
    out << "rel-v1\ntiles";
    for (const auto& t : r.tiles) out << ' ' << t;
    out << "\nn " << r.n << '\n';
    for (auto [a, b] : r.h) out << "H " << r.tiles[a] << ' ' << r.tiles[b] << '\n';
    for (auto [a, b] : r.v) out << "V " << r.tiles[a] << ' ' << r.tiles[b] << '\n';
}

inline EdgeTilingInstance parse_edge(std::istream& in) {
    auto lines = detail::content_lines(in);
    if (lines.empty() || lines.front().size() != 1 || lines.front()[0] != "edge-v1")
        throw ParseError("expected header 'edge-v1'");
    EdgeTilingInstance e;
    std::optional<int> n;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& t = lines[i];
        if (t[0] == "colors") {
            e.colors.insert(e.colors.end(), t.begin() + 1, t.end());
        } else if (t[0] == "n") {
            if (t.size() != 2) throw ParseError("n needs one integer");
            n = std::stoi(t[1]);
        } else if (t[0] == "tile") {
            if (t.size() != 6)
                throw ParseError("tile needs 'tile <name> <top> <right> <bottom> <left>'");
            e.tiles.push_back({t[1], t[2], t[3], t[4], t[5]});
        } else {
            throw ParseError("unknown directive '" + t[0] + "'");
        }
    }
    if (!n) throw ParseError("missing 'n' line");
    e.n = *n;
    std::sort(e.colors.begin(), e.colors.end());
    e.colors.erase(std::unique(e.colors.begin(), e.colors.end()), e.colors.end());
    std::sort(e.tiles.begin(), e.tiles.end(),
              [](const EdgeTile& a, const EdgeTile& b) { return a.name < b.name; });
    try {
        validate(e);
    } catch (const InputError& err) {
        throw ParseError(err.what());
    }
    return e;
}

inline void print_edge(std::ostream& out, const EdgeTilingInstance& e) {
    out << "edge-v1\ncolors";
    for (const auto& c : e.colors) out << ' ' << c;
    out << "\nn " << e.n << '\n';
    for (const auto& t : e.tiles)
        out << "tile " << t.name << ' ' << t.top << ' ' << t.right << ' ' << t.bottom << ' '
            << t.left << '\n';
}

/// Witness line: `tiling <t1> <t2> … <tn²>` row-major.
inline void print_tiling(std::ostream& out, const RelTilingInstance& r, const Tiling& t) {
    out << "tiling";
    for (TileId c : t.cells) out << ' ' << r.tiles.at(c);
    out << '\n';
}

inline Tiling parse_tiling(std::istream& in, const RelTilingInstance& r) {
    auto lines = detail::content_lines(in);
    if (lines.size() != 1 || lines[0].empty() || lines[0][0] != "tiling")
        throw ParseError("expected a single 'tiling …' line");
    Tiling t;
    for (std::size_t i = 1; i < lines[0].size(); ++i) {
        auto it = std::lower_bound(r.tiles.begin(), r.tiles.end(), lines[0][i]);
        if (it == r.tiles.end() || *it != lines[0][i])
            throw ParseError("unknown tile '" + lines[0][i] + "'");
        t.cells.push_back(static_cast<TileId>(it - r.tiles.begin()));
    }
    return t;
}

/// Line-based decomposition report: the verdict, then per witness its border
/// states and the two factor automata.
inline void print_report(std::ostream& out, const DecompositionReport& rep) {
    out << "verdict" << (rep.verdict == Verdict::prime ? " prime" : " decomposable") << '\n';
    for (const auto& w : rep.witnesses) {
        out << "witness";
        for (StateId q : w.partition) out << ' ' << q;
        out << "\nleft:\n";
        print_dfa(out, w.left);
        out << "right:\n";
        print_dfa(out, w.right);
    }
    out << "# search: examined=" << rep.stats.subsets_examined
        << " pruned=" << rep.stats.subsets_pruned << '\n';
}

// String conveniences, mostly for tests.

inline Dfa parse_dfa_string(const std::string& s) {
    std::istringstream in(s);
    return parse_dfa(in);
}

inline std::string print_dfa_string(const Dfa& d) {
    std::ostringstream out;
    print_dfa(out, d);
    return out.str();
}

} // namespace langprime
