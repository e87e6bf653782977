#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace langprime {

using TileId = std::uint32_t;

/// A square tile with four coloured edges.
struct EdgeTile {
    std::string name;
    std::string top, right, bottom, left;

    bool operator==(const EdgeTile&) const = default;
};

/// Tiling instance where adjacency is governed by edge colours: the right
/// colour of a tile must equal the left colour of its right neighbour, and
/// the bottom colour must equal the top colour of the tile below.
struct EdgeTilingInstance {
    std::vector<std::string> colors; // sorted unique
    std::vector<EdgeTile> tiles;     // sorted by name, names unique
    int n = 0;                       // side length, 1 ≤ n ≤ |colors|

    bool operator==(const EdgeTilingInstance&) const = default;
};

inline void validate(const EdgeTilingInstance& e) {
    if (e.n < 1) throw InputError("edge tiling: n must be positive");
    if (static_cast<std::size_t>(e.n) > e.colors.size())
        throw InputError("edge tiling: n must not exceed the number of colors");
    if (!std::is_sorted(e.colors.begin(), e.colors.end()) ||
        std::adjacent_find(e.colors.begin(), e.colors.end()) != e.colors.end())
        throw InputError("edge tiling: colors must be sorted and unique");
    std::set<std::string> colors(e.colors.begin(), e.colors.end());
    std::set<std::string> names;
    for (const auto& t : e.tiles) {
        if (!names.insert(t.name).second)
            throw InputError("edge tiling: duplicate tile name '" + t.name + "'");
        for (const std::string* c : {&t.top, &t.right, &t.bottom, &t.left})
            if (!colors.count(*c))
                throw InputError("edge tiling: tile '" + t.name + "' uses unknown color '" + *c + "'");
    }
    for (std::size_t i = 1; i < e.tiles.size(); ++i)
        if (!(e.tiles[i - 1].name < e.tiles[i].name))
            throw InputError("edge tiling: tiles must be sorted by name");
}

/// Tiling instance over abstract tiles with explicit horizontal and vertical
/// adjacency relations.
struct RelTilingInstance {
    std::vector<std::string> tiles; // sorted unique tile names
    std::set<std::pair<TileId, TileId>> h;
    std::set<std::pair<TileId, TileId>> v;
    int n = 0;

    bool operator==(const RelTilingInstance&) const = default;
};

inline void validate(const RelTilingInstance& r) {
    if (r.n < 1) throw InputError("rel tiling: n must be positive");
    if (!std::is_sorted(r.tiles.begin(), r.tiles.end()) ||
        std::adjacent_find(r.tiles.begin(), r.tiles.end()) != r.tiles.end())
        throw InputError("rel tiling: tiles must be sorted and unique");
    for (const auto* rel : {&r.h, &r.v})
        for (auto [a, b] : *rel)
            if (a >= r.tiles.size() || b >= r.tiles.size())
                throw InputError("rel tiling: relation references an unknown tile");
}

/// An n×n square of tiles, flattened row-major.
struct Tiling {
    std::vector<TileId> cells;

    bool operator==(const Tiling&) const = default;
};

/// Derives the relational instance of an edge-coloured one: tiles become
/// abstract, H pairs tiles whose right/left colours match, V pairs tiles
/// whose bottom/top colours match. A legal tiling exists on one side iff it
/// exists on the other.
inline RelTilingInstance edge_to_rel(const EdgeTilingInstance& e) {
    validate(e);
    RelTilingInstance r;
    r.n = e.n;
    for (const auto& t : e.tiles) r.tiles.push_back(t.name);
    for (TileId a = 0; a < e.tiles.size(); ++a)
        for (TileId b = 0; b < e.tiles.size(); ++b) {
            if (e.tiles[a].right == e.tiles[b].left) r.h.emplace(a, b);
            if (e.tiles[a].bottom == e.tiles[b].top) r.v.emplace(a, b);
        }
    return r;
}

struct SolveLimits {
    int max_n = 4;
    std::size_t max_tiles = 4;
};

/// True iff all horizontal and vertical adjacency constraints hold.
inline bool verify_tiling(const RelTilingInstance& r, const Tiling& t) {
    validate(r);
    const std::size_t n = static_cast<std::size_t>(r.n);
    if (t.cells.size() != n * n) throw InputError("tiling has the wrong number of cells");
    for (TileId c : t.cells)
        if (c >= r.tiles.size()) throw InputError("tiling uses a tile outside the instance");
    for (std::size_t i = 0; i < t.cells.size(); ++i) {
        if ((i + 1) % n != 0 && i + 1 < t.cells.size())
            if (!r.h.count({t.cells[i], t.cells[i + 1]})) return false;
        if (i + n < t.cells.size())
            if (!r.v.count({t.cells[i], t.cells[i + n]})) return false;
    }
    return true;
}

/// Backtracking solver over the cells in row-major order, tiles tried in
/// sorted order, so a found tiling is the lexicographically least legal one.
inline std::optional<Tiling> solve_tiling(const RelTilingInstance& r,
                                          const SolveLimits& limits = {}) {
    validate(r);
    if (r.n > limits.max_n || r.tiles.size() > limits.max_tiles)
        throw LimitError("tiling instance exceeds the solver limits");

    const std::size_t n = static_cast<std::size_t>(r.n);
    const std::size_t cells = n * n;
    const std::size_t tiles = r.tiles.size();

    std::vector<char> h(tiles * tiles, 0), v(tiles * tiles, 0);
    for (auto [a, b] : r.h) h[a * tiles + b] = 1;
    for (auto [a, b] : r.v) v[a * tiles + b] = 1;

    std::vector<TileId> grid(cells, 0);
    auto place = [&](auto&& self, std::size_t i) -> bool {
        if (i == cells) return true;
        for (TileId t = 0; t < tiles; ++t) {
            if (i % n != 0 && !h[grid[i - 1] * tiles + t]) continue;
            if (i >= n && !v[grid[i - n] * tiles + t]) continue;
            grid[i] = t;
            if (self(self, i + 1)) return true;
        }
        return false;
    };
    if (tiles == 0 || !place(place, 0)) return std::nullopt;
    return Tiling{std::move(grid)};
}

} // namespace langprime
