#pragma once

// Test-only oracles operating directly on explicit word sets and tile grids.
// They deliberately avoid the library's automata algebra and backtracking
// solver so they can serve as independent references.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "langprime/tiling.hpp"

namespace oracle {

using Token = std::string;
using WordV = std::vector<Token>;
using Lang = std::set<WordV>;

inline Lang concat(const Lang& a, const Lang& b) {
    Lang out;
    for (const auto& u : a)
        for (const auto& v : b) {
            WordV uv = u;
            uv.insert(uv.end(), v.begin(), v.end());
            out.insert(std::move(uv));
        }
    return out;
}

/// u⁻¹L = { v | uv ∈ L }.
inline Lang quotient(const WordV& u, const Lang& l) {
    Lang out;
    for (const auto& w : l) {
        if (w.size() < u.size()) continue;
        if (!std::equal(u.begin(), u.end(), w.begin())) continue;
        out.insert(WordV(w.begin() + u.size(), w.end()));
    }
    return out;
}

inline std::set<WordV> prefixes(const Lang& l) {
    std::set<WordV> out;
    for (const auto& w : l)
        for (std::size_t i = 0; i <= w.size(); ++i) out.insert(WordV(w.begin(), w.begin() + i));
    return out;
}

struct Decomposition {
    Lang left, right;
};

/// Decomposability of an explicit finite word set. Candidate right factors
/// are the intersections of prefix quotients; each is paired with the maximal
/// compatible prefix set as left factor, which loses no decompositions:
/// enlarging a factor to its maximal form preserves the product.
inline std::optional<Decomposition> find_decomposition(const Lang& l) {
    if (l.empty()) return Decomposition{{}, {}}; // ∅ = ∅ ∘ ∅, and ∅ ≠ {ε}
    auto prefs = prefixes(l);

    std::map<WordV, Lang> quot;
    for (const auto& u : prefs) quot.emplace(u, quotient(u, l));

    std::set<Lang> family;
    std::vector<Lang> work, gens;
    for (const auto& [u, q] : quot)
        if (family.insert(q).second) {
            work.push_back(q);
            gens.push_back(q);
        }
    for (std::size_t head = 0; head < work.size(); ++head) {
        Lang base = work[head];
        for (const auto& g : gens) {
            Lang x;
            std::set_intersection(base.begin(), base.end(), g.begin(), g.end(),
                                  std::inserter(x, x.end()));
            if (family.insert(x).second) work.push_back(std::move(x));
        }
    }

    const Lang eps_only = {WordV{}};
    for (const auto& x : family) {
        if (x == eps_only) continue; // the right factor must differ from {ε}
        Lang left;
        for (const auto& [u, q] : quot)
            if (std::includes(q.begin(), q.end(), x.begin(), x.end())) left.insert(u);
        if (left.empty() || left == eps_only) continue;
        if (concat(left, x) == l) return Decomposition{left, x};
    }
    return std::nullopt;
}

inline bool decomposable(const Lang& l) { return find_decomposition(l).has_value(); }

/// The same question answered by full enumeration over all subsets of
/// prefixes; only usable for very small languages. Cross-checks the
/// quotient shortcut above.
inline bool decomposable_bruteforce(const Lang& l) {
    if (l.empty()) return true;
    auto prefs_set = prefixes(l);
    std::vector<WordV> prefs(prefs_set.begin(), prefs_set.end());
    const Lang eps_only = {WordV{}};
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << prefs.size()); ++mask) {
        Lang left;
        for (std::size_t i = 0; i < prefs.size(); ++i)
            if (mask >> i & 1) left.insert(prefs[i]);
        if (left == eps_only) continue;
        std::optional<Lang> right;
        for (const auto& u : left) {
            Lang q = quotient(u, l);
            if (!right) {
                right = std::move(q);
            } else {
                Lang x;
                std::set_intersection(right->begin(), right->end(), q.begin(), q.end(),
                                      std::inserter(x, x.end()));
                *right = std::move(x);
            }
        }
        if (*right == eps_only) continue;
        if (concat(left, *right) == l) return true;
    }
    return false;
}

/// Exhaustive grid enumeration for a relational tiling instance.
inline bool rel_tiling_exists_bruteforce(const langprime::RelTilingInstance& r) {
    const std::size_t tiles = r.tiles.size();
    const std::size_t n = static_cast<std::size_t>(r.n);
    const std::size_t cells = n * n;
    if (tiles == 0) return false;
    std::vector<langprime::TileId> grid(cells, 0);
    for (;;) {
        bool ok = true;
        for (std::size_t i = 0; i < cells && ok; ++i) {
            if ((i + 1) % n != 0 && !r.h.count({grid[i], grid[i + 1]})) ok = false;
            if (ok && i + n < cells && !r.v.count({grid[i], grid[i + n]})) ok = false;
        }
        if (ok) return true;
        std::size_t pos = 0;
        while (pos < cells && grid[pos] + 1 == tiles) grid[pos++] = 0;
        if (pos == cells) return false;
        ++grid[pos];
    }
}

/// Exhaustive grid enumeration directly on the edge-coloured instance.
inline bool edge_tiling_exists_bruteforce(const langprime::EdgeTilingInstance& e) {
    const std::size_t tiles = e.tiles.size();
    const std::size_t n = static_cast<std::size_t>(e.n);
    const std::size_t cells = n * n;
    if (tiles == 0) return false;
    std::vector<std::size_t> grid(cells, 0);
    for (;;) {
        bool ok = true;
        for (std::size_t i = 0; i < cells && ok; ++i) {
            if ((i + 1) % n != 0 && e.tiles[grid[i]].right != e.tiles[grid[i + 1]].left) ok = false;
            if (ok && i + n < cells && e.tiles[grid[i]].bottom != e.tiles[grid[i + n]].top)
                ok = false;
        }
        if (ok) return true;
        std::size_t pos = 0;
        while (pos < cells && grid[pos] + 1 == tiles) grid[pos++] = 0;
        if (pos == cells) return false;
        ++grid[pos];
    }
}

} // namespace oracle
