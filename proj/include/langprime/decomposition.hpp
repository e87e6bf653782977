#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>
#include <vector>

#include "automata.hpp"
#include "automata_ops.hpp"

namespace langprime {

/// A set of "border" states of a DFA. A partition set P induces the left
/// language L1 (words whose run ends in P) and the right language L2 (words
/// accepted from every state of P); their product is always contained in the
/// automaton's language.
struct PartitionSet {
    std::vector<StateId> states;

    PartitionSet() = default;
    PartitionSet(std::initializer_list<StateId> s) : states(s) { normalize(); }
    explicit PartitionSet(std::vector<StateId> s) : states(std::move(s)) { normalize(); }

    bool empty() const { return states.empty(); }
    std::size_t size() const { return states.size(); }

    bool operator==(const PartitionSet&) const = default;

private:
    void normalize() {
        std::sort(states.begin(), states.end());
        states.erase(std::unique(states.begin(), states.end()), states.end());
    }
};

namespace detail {

inline void validate_partition(const Dfa& d, const PartitionSet& p, bool allow_empty) {
    if (!allow_empty && p.empty()) throw InputError("partition set must be non-empty");
    for (StateId q : p.states)
        if (q >= d.state_count())
            throw InputError("partition set state " + std::to_string(q) + " is not a state of the automaton");
}

} // namespace detail

/// L1 = { w | δ(s,w) ∈ P }: the input automaton with P as accepting set.
inline Dfa left_language(const Dfa& d, const PartitionSet& p) {
    detail::validate_partition(d, p, /*allow_empty=*/true);
    Dfa out = d;
    for (StateId q = 0; q < out.state_count(); ++q) out.set_accepting(q, false);
    for (StateId q : p.states) out.set_accepting(q);
    return out;
}

/// L2 = ⋂_{p ∈ P} { w | δ(p,w) ∈ F }: the product intersection of the
/// automaton started once from every state of P. Built as a set-tracking
/// construction: a run dies as soon as any tracked component dies, and
/// accepts only when every tracked state accepts.
inline Dfa right_language(const Dfa& d, const PartitionSet& p) {
    detail::validate_partition(d, p, /*allow_empty=*/false);
    const std::size_t k = d.alphabet().size();

    std::map<std::vector<StateId>, StateId> index;
    std::vector<std::vector<StateId>> sets;
    std::vector<StateId> queue;

    auto intern = [&](std::vector<StateId> set) {
        auto [it, fresh] = index.try_emplace(std::move(set), static_cast<StateId>(sets.size()));
        if (fresh) {
            sets.push_back(it->first);
            queue.push_back(it->second);
        }
        return it->second;
    };

    intern(p.states);
    std::vector<std::vector<StateId>> delta;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        StateId id = queue[head];
        if (delta.size() <= id) delta.resize(id + 1, std::vector<StateId>(k, kNoState));
        std::vector<StateId> set = sets[id];
        for (SymbolId a = 0; a < k; ++a) {
            std::vector<StateId> next;
            bool alive = true;
            for (StateId q : set) {
                StateId t = d.step(q, a);
                if (t == kNoState) {
                    alive = false;
                    break;
                }
                auto it = std::lower_bound(next.begin(), next.end(), t);
                if (it == next.end() || *it != t) next.insert(it, t);
            }
            if (!alive) continue;
            delta[id][a] = intern(std::move(next));
        }
    }

    Dfa out(d.alphabet(), sets.size(), 0);
    for (StateId id = 0; id < sets.size(); ++id) {
        bool all_accept = true;
        for (StateId q : sets[id]) all_accept = all_accept && d.is_accepting(q);
        if (all_accept) out.set_accepting(id);
        if (id < delta.size())
            for (SymbolId a = 0; a < k; ++a)
                if (delta[id][a] != kNoState) out.add_transition(id, a, delta[id][a]);
    }
    return out;
}

/// True iff L(d) = L1·L2 for the partition languages of P and both factors
/// differ from {ε}. The containment L1·L2 ⊆ L(d) holds for every partition
/// set; it is asserted as an internal invariant, and only the reverse
/// inclusion plus the non-triviality tests can fail.
inline bool check_partition_decomposition(const Dfa& d, const PartitionSet& p) {
    detail::validate_partition(d, p, /*allow_empty=*/false);
    Dfa left = left_language(d, p);
    Dfa right = right_language(d, p);
    if (is_epsilon_only(left) || is_epsilon_only(right)) return false;

    const bool word_route = is_finite(d) && is_finite(left) && is_finite(right) &&
                            count_words(d) < d.state_count();
    if (word_route) {
        auto lang = detail::enumerate_id_words(d);
        auto lw = detail::enumerate_id_words(left);
        auto rw = detail::enumerate_id_words(right);
        std::set<detail::IdWord> product;
        for (const auto& u : lw)
            for (const auto& v : rw) {
                detail::IdWord uv = u;
                uv.insert(uv.end(), v.begin(), v.end());
                if (!detail::accepts_ids(d, uv))
                    throw std::logic_error("partition product escaped the language");
                product.insert(std::move(uv));
            }
        return product == std::set<detail::IdWord>(lang.begin(), lang.end());
    }

    auto verdict = equivalent(d, determinize(concat(left, right)));
    if (!verdict.equal && !accepts(d, *verdict.counterexample))
        throw std::logic_error("partition product escaped the language");
    return verdict.equal;
}

/// Selection rules for the states worth considering in a partition set.
///
/// `safe` keeps exactly the states that can appear in a non-trivial witness:
/// every state of such a witness must accept some non-empty word of the right
/// factor, i.e. have a non-empty-word continuation into acceptance. Pruning
/// with this rule never changes the outcome of the search.
///
/// The two `strict` rules additionally require branching (out-degree > 1) of
/// non-accepting states. They prune harder but can drop the only witness —
/// the three-state chain for {ab} is the classic case (see the unit tests) —
/// so they are not used by default.
enum class CandidateRule {
    safe,        ///< some non-empty word leads from the state into acceptance
    strict_plus, ///< out-degree > 1, or accepting with a non-ε continuation into acceptance
    strict_star, ///< out-degree > 1, or accepting
};

/// Candidate border states of a minimal DFA under the given rule.
inline std::vector<StateId> candidate_states(const Dfa& d,
                                             CandidateRule rule = CandidateRule::strict_plus) {
    auto coreach = detail::coreachable_states(d);
    std::vector<StateId> out;
    for (StateId q = 0; q < d.state_count(); ++q) {
        bool continuation = false; // ∃ w ∈ Σ⁺ with δ(q,w) accepting
        for (SymbolId a = 0; a < d.alphabet().size() && !continuation; ++a) {
            StateId t = d.step(q, a);
            continuation = t != kNoState && coreach[t];
        }
        bool keep = false;
        switch (rule) {
        case CandidateRule::safe: keep = continuation; break;
        case CandidateRule::strict_plus:
            keep = d.out_degree(q) > 1 || (d.is_accepting(q) && continuation);
            break;
        case CandidateRule::strict_star:
            keep = d.out_degree(q) > 1 || d.is_accepting(q);
            break;
        }
        if (keep) out.push_back(q);
    }
    return out;
}

/// The polynomially checkable split relation: does w split as u·v with
/// δ(s,u) ∈ P and v accepted from every state of P?
///
/// The run of w is simulated once; every position whose state lies in P
/// contributes its remaining suffix (the position after the last letter
/// contributes ε, and position zero contributes w itself when the initial
/// state is in P). The candidate suffixes are then checked against all of P
/// at once — membership in the right language requires acceptance from every
/// state of P, not only those visited by w.
inline bool check_split_relation(const Dfa& d, const PartitionSet& p, const Word& w) {
    detail::validate_partition(d, p, /*allow_empty=*/false);
    auto ids = detail::to_ids(d.alphabet(), w);

    std::vector<StateId> states_along; // state before reading ids[i..]
    states_along.reserve(ids.size() + 1);
    StateId q = d.initial();
    states_along.push_back(q);
    for (SymbolId a : ids) {
        q = d.step(q, a);
        if (q == kNoState) break;
        states_along.push_back(q);
    }
    if (states_along.size() != ids.size() + 1 || !d.is_accepting(states_along.back()))
        throw PreconditionError("split relation requires a word of the language");

    std::vector<bool> in_p(d.state_count(), false);
    for (StateId s : p.states) in_p[s] = true;

    std::vector<std::size_t> split_positions;
    for (std::size_t i = 0; i <= ids.size(); ++i)
        if (in_p[states_along[i]]) split_positions.push_back(i);
    if (split_positions.empty()) return false;

    for (std::size_t i : split_positions) {
        bool all_accept = true;
        std::vector<StateId> tracked = p.states;
        for (std::size_t j = i; j < ids.size() && all_accept; ++j) {
            for (StateId& t : tracked) {
                t = d.step(t, ids[j]);
                if (t == kNoState) {
                    all_accept = false;
                    break;
                }
            }
        }
        if (!all_accept) continue;
        for (StateId t : tracked) all_accept = all_accept && d.is_accepting(t);
        if (all_accept) return true;
    }
    return false;
}

enum class Verdict { prime, decomposable };

struct DecompositionWitness {
    /// Border states in the minimized automaton; empty only for the
    /// dispatched L = ∅ case (∅ = ∅∘∅ has no partition-set witness).
    std::vector<StateId> partition;
    Dfa left;
    Dfa right;
};

struct SearchStats {
    std::uint64_t subsets_examined = 0;
    /// Subsets the search provably never had to visit, relative to the full
    /// enumeration over all non-empty state subsets of the minimal DFA.
    std::uint64_t subsets_pruned = 0;
};

enum class SearchStrategy {
    /// Pick `subsets` when the candidate space is small, else `quotients`.
    automatic,
    /// Canonical enumeration of candidate subsets: cardinality-ascending,
    /// then lexicographic on sorted state indices.
    subsets,
    /// Exact search over the intersection-closed family of per-state right
    /// languages; every reported witness is the maximal (saturated) partition
    /// set of its factor pair. Same verdict as `subsets`, feasible for much
    /// larger automata.
    quotients,
};

struct PrimeOptions {
    bool prune = true;
    bool exhaustive = false;
    unsigned jobs = 1;
    CandidateRule rule = CandidateRule::safe;
    SearchStrategy strategy = SearchStrategy::automatic;
    /// Largest subset count the automatic strategy hands to `subsets`.
    std::uint64_t subset_limit = std::uint64_t{1} << 18;
    /// Word/suffix caps for the precomputed search tables.
    std::uint64_t word_limit = 1 << 16;
    std::size_t suffix_limit = std::size_t{1} << 20;
    /// Cap on the quotient family size.
    std::size_t family_limit = std::size_t{1} << 20;
};

struct DecompositionReport {
    Verdict verdict = Verdict::prime;
    std::vector<DecompositionWitness> witnesses;
    SearchStats stats;
    /// The canonical minimal DFA the search ran on; witness state indices
    /// refer to it.
    Dfa minimal;
};

namespace detail {

struct BitSet {
    std::vector<std::uint64_t> w;

    BitSet() = default;
    explicit BitSet(std::size_t bits) : w((bits + 63) / 64, 0) {}

    void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }

    void and_with(const BitSet& o) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
    }

    bool subset_of(const BitSet& o) const {
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }

    bool any_except(std::size_t bit) const {
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint64_t v = w[i];
            if ((bit >> 6) == i) v &= ~(std::uint64_t{1} << (bit & 63));
            if (v) return true;
        }
        return false;
    }

    bool operator==(const BitSet&) const = default;
};

struct BitSetHash {
    std::size_t operator()(const BitSet& b) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::uint64_t v : b.w) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Precomputed word/suffix tables of a minimal acyclic DFA, used by the
/// decomposition search: per-state right languages as suffix bitsets and,
/// per language word, its split points (run state, suffix id).
struct DecompContext {
    std::size_t state_count = 0;
    std::size_t suffix_count = 0;
    std::size_t eps_suffix = 0;
    std::vector<BitSet> right;
    struct Split {
        StateId state;
        std::uint32_t suffix;
    };
    std::vector<std::vector<Split>> splits; // one list per language word

    static std::optional<DecompContext> build(const Dfa& m, std::uint64_t word_limit,
                                              std::size_t suffix_limit) {
        if (count_words(m) > word_limit) return std::nullopt;
        auto words = enumerate_id_words(m);

        DecompContext ctx;
        ctx.state_count = m.state_count();

        struct SuffixInfo {
            std::size_t length;
            SymbolId first = 0;
            std::uint32_t rest = 0;
        };
        std::map<IdWord, std::uint32_t> suffix_id;
        std::vector<SuffixInfo> info;
        auto intern = [&](const IdWord& s, std::uint32_t rest) -> std::optional<std::uint32_t> {
            auto [it, fresh] = suffix_id.try_emplace(s, static_cast<std::uint32_t>(info.size()));
            if (fresh) {
                if (info.size() >= suffix_limit) return std::nullopt;
                SuffixInfo si;
                si.length = s.size();
                if (!s.empty()) {
                    si.first = s.front();
                    si.rest = rest;
                }
                info.push_back(si);
            }
            return it->second;
        };

        ctx.splits.resize(words.size());
        for (std::size_t wi = 0; wi < words.size(); ++wi) {
            const IdWord& w = words[wi];
            std::vector<std::uint32_t> sid(w.size() + 1);
            std::uint32_t rest = 0;
            for (std::size_t i = w.size() + 1; i-- > 0;) {
                IdWord suffix(w.begin() + i, w.end());
                auto id = intern(suffix, rest);
                if (!id) return std::nullopt;
                sid[i] = *id;
                rest = *id;
            }
            StateId q = m.initial();
            ctx.splits[wi].push_back({q, sid[0]});
            for (std::size_t i = 0; i < w.size(); ++i) {
                q = m.step(q, w[i]);
                ctx.splits[wi].push_back({q, sid[i + 1]});
            }
        }

        ctx.suffix_count = info.size();
        ctx.eps_suffix = words.empty() ? 0 : suffix_id.at(IdWord{});

        // Right languages by dynamic programming over suffix length:
        // v = x·v' is accepted from q iff δ(q,x) is defined and accepts v'.
        std::vector<std::uint32_t> by_length(info.size());
        for (std::uint32_t i = 0; i < info.size(); ++i) by_length[i] = i;
        std::sort(by_length.begin(), by_length.end(), [&](std::uint32_t a, std::uint32_t b) {
            return info[a].length < info[b].length;
        });
        ctx.right.assign(m.state_count(), BitSet(info.size()));
        for (std::uint32_t id : by_length) {
            const SuffixInfo& si = info[id];
            for (StateId q = 0; q < m.state_count(); ++q) {
                if (si.length == 0) {
                    if (m.is_accepting(q)) ctx.right[q].set(id);
                } else {
                    StateId t = m.step(q, si.first);
                    if (t != kNoState && ctx.right[t].test(si.rest)) ctx.right[q].set(id);
                }
            }
        }
        return ctx;
    }

    /// Is every language word split by some position whose state is in P and
    /// whose suffix lies in l2?
    bool covers(const BitSet& l2, const std::vector<char>& in_p) const {
        for (const auto& word : splits) {
            bool ok = false;
            for (const auto& s : word)
                if (in_p[s.state] && l2.test(s.suffix)) {
                    ok = true;
                    break;
                }
            if (!ok) return false;
        }
        return true;
    }
};

inline std::uint64_t pow2_saturated(std::size_t bits) {
    if (bits >= 64) return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << bits;
}

struct Binomials {
    // C[n][k], saturated.
    std::vector<std::vector<std::uint64_t>> c;

    explicit Binomials(std::size_t n) : c(n + 1, std::vector<std::uint64_t>(n + 1, 0)) {
        constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
        for (std::size_t i = 0; i <= n; ++i) {
            c[i][0] = 1;
            for (std::size_t j = 1; j <= i; ++j) {
                std::uint64_t a = c[i - 1][j - 1], b = (j <= i - 1) ? c[i - 1][j] : 0;
                c[i][j] = (a > kMax - b) ? kMax : a + b;
            }
        }
    }

    std::uint64_t operator()(std::size_t n, std::size_t k) const {
        if (k > n) return 0;
        return c[n][k];
    }
};

inline std::vector<std::uint32_t> unrank_combination(std::uint64_t rank, std::uint32_t n,
                                                     std::uint32_t k, const Binomials& binom) {
    std::vector<std::uint32_t> c(k);
    std::uint32_t v = 0;
    for (std::uint32_t j = 0; j < k; ++j) {
        for (;; ++v) {
            std::uint64_t cnt = binom(n - v - 1, k - j - 1);
            if (rank < cnt) break;
            rank -= cnt;
        }
        c[j] = v++;
    }
    return c;
}

inline bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
    const std::uint32_t k = static_cast<std::uint32_t>(c.size());
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

struct SubsetSearchOutcome {
    std::vector<std::vector<StateId>> matches; // canonical order
    std::uint64_t examined = 0;
};

/// Canonical subset search: cardinality-ascending, then lexicographic.
/// Work is split into fixed rank blocks so results never depend on thread
/// scheduling; the non-exhaustive mode returns the canonically least match.
template <typename TesterFactory>
SubsetSearchOutcome search_subsets(const std::vector<StateId>& candidates, bool exhaustive,
                                   unsigned jobs, TesterFactory&& make_tester) {
    const std::uint32_t c = static_cast<std::uint32_t>(candidates.size());
    if (candidates.size() >= 63) throw LimitError("candidate set too large for subset enumeration");
    if (jobs == 0) jobs = 1;
    Binomials binom(c);
    SubsetSearchOutcome out;
    constexpr std::uint64_t kBlock = 8192;

    for (std::uint32_t k = 1; k <= c; ++k) {
        const std::uint64_t total = binom(c, k);
        std::uint64_t done = 0;
        while (done < total) {
            const std::uint64_t chunk = std::min<std::uint64_t>(kBlock * jobs, total - done);
            const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(jobs, (chunk + kBlock - 1) / kBlock));
            std::vector<std::vector<std::pair<std::uint64_t, std::vector<StateId>>>> found(workers);

            auto work = [&](unsigned wi) {
                const std::uint64_t begin = done + (chunk * wi) / workers;
                const std::uint64_t end = done + (chunk * (wi + 1)) / workers;
                if (begin >= end) return;
                auto tester = make_tester();
                auto comb = unrank_combination(begin, c, k, binom);
                std::vector<StateId> p(k);
                for (std::uint64_t r = begin; r < end; ++r) {
                    for (std::uint32_t j = 0; j < k; ++j) p[j] = candidates[comb[j]];
                    if (tester(p)) {
                        found[wi].emplace_back(r, p);
                        if (!exhaustive) return;
                    }
                    if (r + 1 < end) next_combination(comb, c);
                }
            };

            if (workers == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (unsigned wi = 0; wi < workers; ++wi) pool.emplace_back(work, wi);
                for (auto& t : pool) t.join();
            }
            out.examined += chunk;

            std::vector<std::pair<std::uint64_t, std::vector<StateId>>> merged;
            for (auto& f : found)
                for (auto& m : f) merged.push_back(std::move(m));
            std::sort(merged.begin(), merged.end());
            if (!exhaustive && !merged.empty()) {
                out.matches.push_back(std::move(merged.front().second));
                return out;
            }
            for (auto& m : merged) out.matches.push_back(std::move(m.second));
            done += chunk;
        }
    }
    return out;
}

struct QuotientSearchOutcome {
    std::vector<std::vector<StateId>> matches; // canonical order
    std::uint64_t examined = 0;
};

/// Search over the intersection-closed family generated by the per-state
/// right languages. Each family member X is the right language of exactly one
/// saturated partition set P = {q | X ⊆ L(M_q)}; testing all members decides
/// decomposability exactly.
inline QuotientSearchOutcome search_quotients(const DecompContext& ctx, const Dfa& m,
                                              bool exhaustive, std::size_t family_limit) {
    std::unordered_set<BitSet, BitSetHash> family;
    std::vector<BitSet> worklist;
    std::vector<BitSet> seeds;
    for (StateId q = 0; q < m.state_count(); ++q) {
        if (family.insert(ctx.right[q]).second) {
            worklist.push_back(ctx.right[q]);
            seeds.push_back(ctx.right[q]);
        }
    }
    for (std::size_t head = 0; head < worklist.size(); ++head) {
        BitSet base = worklist[head];
        for (const BitSet& s : seeds) {
            BitSet x = base;
            x.and_with(s);
            if (family.insert(x).second) {
                if (family.size() > family_limit)
                    throw LimitError("quotient family exceeded the configured limit");
                worklist.push_back(std::move(x));
            }
        }
    }

    QuotientSearchOutcome out;
    out.examined = worklist.size();
    std::vector<char> in_p(m.state_count(), 0);
    for (const BitSet& x : worklist) {
        if (!x.any_except(ctx.eps_suffix)) continue; // right factor ⊆ {ε}
        std::vector<StateId> p;
        for (StateId q = 0; q < m.state_count(); ++q)
            if (x.subset_of(ctx.right[q])) p.push_back(q);
        if (p.size() == 1 && p[0] == m.initial()) continue; // left factor = {ε}
        std::fill(in_p.begin(), in_p.end(), 0);
        for (StateId q : p) in_p[q] = 1;
        if (ctx.covers(x, in_p)) out.matches.push_back(std::move(p));
    }
    std::sort(out.matches.begin(), out.matches.end(),
              [](const std::vector<StateId>& a, const std::vector<StateId>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    if (!exhaustive && out.matches.size() > 1) out.matches.resize(1);
    return out;
}

} // namespace detail

/// Decides primality of the finite language of `input`.
///
/// The automaton is minimized first; candidate border states are selected by
/// `opts.rule` when pruning is on, and non-empty candidate subsets are then
/// searched in canonical order (or through the quotient family, see
/// SearchStrategy). Special cases run before the search: the empty language
/// is decomposable (∅ = ∅∘∅ and ∅ ≠ {ε}), while {ε} is prime.
inline DecompositionReport is_prime(const Dfa& input, const PrimeOptions& opts = {}) {
    if (!is_finite(input)) throw InputError("primality is decided for finite languages only");
    Dfa m = minimize(input);

    if (is_empty_language(m)) {
        DecompositionWitness w{{}, empty_language_dfa(m.alphabet()), empty_language_dfa(m.alphabet())};
        return {Verdict::decomposable, {std::move(w)}, {}, std::move(m)};
    }
    if (is_epsilon_only(m)) return {Verdict::prime, {}, {}, std::move(m)};

    std::vector<StateId> candidates;
    if (opts.prune) {
        candidates = candidate_states(m, opts.rule);
    } else {
        candidates.resize(m.state_count());
        for (StateId q = 0; q < m.state_count(); ++q) candidates[q] = q;
    }

    auto ctx = detail::DecompContext::build(m, opts.word_limit, opts.suffix_limit);

    const std::uint64_t subset_space = detail::pow2_saturated(candidates.size()) - 1;
    SearchStrategy strategy = opts.strategy;
    if (strategy == SearchStrategy::automatic) {
        if (subset_space <= opts.subset_limit)
            strategy = SearchStrategy::subsets;
        else if (ctx)
            strategy = SearchStrategy::quotients;
        else
            throw LimitError("search space too large: raise subset_limit or the word/suffix limits");
    }

    std::vector<std::vector<StateId>> matches;
    SearchStats stats;
    const std::uint64_t full_space = detail::pow2_saturated(m.state_count()) - 1;

    if (strategy == SearchStrategy::subsets) {
        detail::SubsetSearchOutcome outcome;
        if (ctx) {
            auto factory = [&]() {
                return [&m, &ctxr = *ctx, scratch = detail::BitSet(ctx->suffix_count),
                        in_p = std::vector<char>(m.state_count(), 0)](
                           const std::vector<StateId>& p) mutable -> bool {
                    if (p.size() == 1 && p[0] == m.initial()) return false; // left factor = {ε}
                    scratch = ctxr.right[p[0]];
                    for (std::size_t i = 1; i < p.size(); ++i) scratch.and_with(ctxr.right[p[i]]);
                    if (!scratch.any_except(ctxr.eps_suffix)) return false; // right factor ⊆ {ε}
                    std::fill(in_p.begin(), in_p.end(), 0);
                    for (StateId q : p) in_p[q] = 1;
                    return ctxr.covers(scratch, in_p);
                };
            };
            outcome = detail::search_subsets(candidates, opts.exhaustive, opts.jobs, factory);
        } else {
            auto factory = [&]() {
                return [&m](const std::vector<StateId>& p) {
                    return check_partition_decomposition(m, PartitionSet(p));
                };
            };
            outcome = detail::search_subsets(candidates, opts.exhaustive, opts.jobs, factory);
        }
        matches = std::move(outcome.matches);
        stats.subsets_examined = outcome.examined;
        stats.subsets_pruned = full_space - (detail::pow2_saturated(candidates.size()) - 1);
    } else {
        if (!ctx) throw LimitError("quotient search needs the word/suffix tables; raise the limits");
        auto outcome = detail::search_quotients(*ctx, m, opts.exhaustive, opts.family_limit);
        matches = std::move(outcome.matches);
        stats.subsets_examined = outcome.examined;
        stats.subsets_pruned =
            (full_space > outcome.examined) ? full_space - outcome.examined : 0;
    }

    DecompositionReport report{matches.empty() ? Verdict::prime : Verdict::decomposable,
                               {},
                               stats,
                               m};
    for (auto& p : matches) {
        PartitionSet ps(p);
        DecompositionWitness w{std::move(p), minimize(left_language(m, ps)),
                               minimize(right_language(m, ps))};
        report.witnesses.push_back(std::move(w));
    }
    if (!report.witnesses.empty() &&
        !check_partition_decomposition(m, PartitionSet(report.witnesses.front().partition)))
        throw std::logic_error("search returned a partition set that fails verification");
    return report;
}

} // namespace langprime
