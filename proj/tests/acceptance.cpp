// Acceptance suite: one check per criterion, one PASS/FAIL line each.
// Every expected value is produced by an independent oracle (word sets,
// exhaustive grid enumeration) or pinned by a construction formula.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "langprime/langprime.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace langprime;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
    int number;
    std::string description;
    bool (*check)(std::string& detail);
};

// ---------------------------------------------------------------- criterion 1

bool criterion_completeness(std::string& detail) {
    auto start = Clock::now();
    std::mt19937 rng(1001);
    Alphabet a3(testutil::letters(3));
    int disagreements = 0;
    const int kLanguages = 200;
    for (int i = 0; i < kLanguages; ++i) {
        auto lang = testutil::random_lang(rng, 3, 10, 4);
        Dfa d = testutil::dfa_from_lang(a3, lang);
        bool dec = is_prime(d).verdict == Verdict::decomposable;
        if (dec != oracle::decomposable(lang)) ++disagreements;
    }
    double secs = seconds_since(start);
    std::ostringstream ss;
    ss << kLanguages << " languages, " << disagreements << " disagreements, " << secs << " s";
    detail = ss.str();
    return disagreements == 0 && secs < 60.0;
}

// ---------------------------------------------------------------- criterion 2

bool criterion_soundness(std::string& detail) {
    std::mt19937 rng(1001); // the same generator family as criterion 1
    Alphabet a3(testutil::letters(3));
    long violations = 0;
    long sets_checked = 0;
    for (int i = 0; i < 200; ++i) {
        auto lang = testutil::random_lang(rng, 3, 10, 4);
        Dfa m = minimize(testutil::dfa_from_lang(a3, lang));
        if (is_empty_language(m)) continue;

        std::vector<PartitionSet> sampled;
        for (StateId q = 0; q < m.state_count(); ++q) sampled.push_back({q});
        std::uniform_int_distribution<int> coin(0, 1);
        for (int s = 0; s < 10; ++s) {
            std::vector<StateId> states;
            for (StateId q = 0; q < m.state_count(); ++q)
                if (coin(rng)) states.push_back(q);
            if (!states.empty()) sampled.push_back(PartitionSet(states));
        }

        for (const auto& p : sampled) {
            ++sets_checked;
            auto lw = enumerate_words(left_language(m, p));
            auto rw = enumerate_words(right_language(m, p));
            for (const auto& u : lw)
                for (const auto& v : rw) {
                    Word uv = u;
                    uv.insert(uv.end(), v.begin(), v.end());
                    if (!accepts(m, uv)) ++violations;
                }
        }
    }
    std::ostringstream ss;
    ss << sets_checked << " partition sets, " << violations << " product words outside L";
    detail = ss.str();
    return violations == 0;
}

// ---------------------------------------------------------------- criterion 3

bool criterion_split_relation(std::string& detail) {
    std::mt19937 rng(1003);
    Alphabet a3(testutil::letters(3));
    int disagreements = 0;
    int triples = 0;
    while (triples < 1000) {
        auto lang = testutil::random_lang(rng, 3, 10, 4);
        if (lang.empty()) continue;
        Dfa d = testutil::dfa_from_lang(a3, lang);
        if (std::uniform_int_distribution<int>(0, 1)(rng)) d = minimize(d);

        std::vector<StateId> states;
        std::uniform_int_distribution<int> coin(0, 2);
        for (StateId q = 0; q < d.state_count(); ++q)
            if (coin(rng) == 0) states.push_back(q);
        if (states.empty())
            states.push_back(std::uniform_int_distribution<StateId>(
                0, static_cast<StateId>(d.state_count() - 1))(rng));
        PartitionSet p(states);

        auto words = enumerate_words(d);
        const Word& w =
            words[std::uniform_int_distribution<std::size_t>(0, words.size() - 1)(rng)];

        bool got = check_split_relation(d, p, w);
        bool expect = accepts(determinize(concat(left_language(d, p), right_language(d, p))), w);
        if (got != expect) ++disagreements;
        ++triples;
    }
    std::ostringstream ss;
    ss << triples << " triples, " << disagreements << " disagreements";
    detail = ss.str();
    return disagreements == 0;
}

// ---------------------------------------------------------------- criterion 4

bool criterion_state_counts(std::string& detail) {
    int mismatches = 0;
    std::ostringstream ss;
    for (std::size_t tiles : {1u, 2u, 3u})
        for (int n : {2, 3}) {
            RelTilingInstance r;
            for (std::size_t t = 0; t < tiles; ++t)
                r.tiles.push_back(std::string(1, static_cast<char>('t' + t)));
            r.n = n;
            for (TileId a = 0; a < tiles; ++a)
                for (TileId b = 0; b < tiles; ++b) {
                    r.h.emplace(a, b);
                    r.v.emplace(a, b);
                }
            ConcatGadget g = rel_to_concat(r);
            const std::size_t nn = static_cast<std::size_t>(n) * n;
            const std::size_t want_h = 1 + tiles * (nn - n) + nn - 1;
            const std::size_t want_v = 1 + tiles * (nn - n) * n + nn - n;
            const std::size_t want_chain = nn - 1;
            if (g.h_violations.state_count() != want_h || g.v_violations.state_count() != want_v ||
                g.left.state_count() != want_chain)
                ++mismatches;
        }
    ss << "6 (|tiles|, n) combinations, " << mismatches << " formula mismatches";
    detail = ss.str();
    return mismatches == 0;
}

// ---------------------------------------------------------------- criterion 5

bool criterion_reduction_correctness(std::string& detail) {
    auto start = Clock::now();
    int disagreements = 0;
    int instances = 0;

    auto check_instance = [&](const RelTilingInstance& r) {
        ConcatGadget g = rel_to_concat(r);
        bool equal = concat_equiv(g.lang, g.left, g.right).equal;
        bool tiled = solve_tiling(r).has_value();
        if (equal != !tiled) ++disagreements;
        ++instances;
    };

    // all 4 instances over one tile
    for (unsigned hbits = 0; hbits < 2; ++hbits)
        for (unsigned vbits = 0; vbits < 2; ++vbits) {
            RelTilingInstance r;
            r.tiles = {"t"};
            r.n = 2;
            if (hbits) r.h.emplace(0, 0);
            if (vbits) r.v.emplace(0, 0);
            check_instance(r);
        }

    // all 2^8 = 256 instances over two tiles
    for (unsigned hbits = 0; hbits < 16; ++hbits)
        for (unsigned vbits = 0; vbits < 16; ++vbits) {
            RelTilingInstance r;
            r.tiles = {"t", "u"};
            r.n = 2;
            int bit = 0;
            for (TileId a = 0; a < 2; ++a)
                for (TileId b = 0; b < 2; ++b, ++bit) {
                    if (hbits >> bit & 1) r.h.emplace(a, b);
                    if (vbits >> bit & 1) r.v.emplace(a, b);
                }
            check_instance(r);
        }

    double secs = seconds_since(start);
    std::ostringstream ss;
    ss << instances << " instances, " << disagreements << " disagreements, " << secs << " s";
    detail = ss.str();
    return disagreements == 0 && secs < 300.0;
}

// ---------------------------------------------------------------- criterion 6

bool criterion_primality_gadget(std::string& detail) {
    std::mt19937 rng(1006);
    const Alphabet ab(testutil::letters(2));
    int disagreements = 0;
    int factor_mismatches = 0;
    int triples = 0;

    auto random_factor = [&]() {
        oracle::Lang lang;
        int count = std::uniform_int_distribution<int>(1, 3)(rng);
        for (int i = 0; i < count; ++i) {
            int len = std::uniform_int_distribution<int>(0, 3)(rng);
            oracle::WordV w;
            for (int j = 0; j < len; ++j)
                w.emplace_back(1, static_cast<char>('a' + std::uniform_int_distribution<int>(0, 1)(rng)));
            lang.insert(std::move(w));
        }
        return lang;
    };
    auto random_word = [&](int max_len) {
        int len = std::uniform_int_distribution<int>(0, max_len)(rng);
        oracle::WordV w;
        for (int j = 0; j < len; ++j)
            w.emplace_back(1, static_cast<char>('a' + std::uniform_int_distribution<int>(0, 1)(rng)));
        return w;
    };

    while (triples < 100) {
        oracle::Lang s1 = random_factor();
        oracle::Lang s2 = random_factor();
        oracle::Lang sl = oracle::concat(s1, s2);
        const bool perturb = triples % 2 == 1;
        if (perturb) {
            if (std::uniform_int_distribution<int>(0, 1)(rng) && sl.size() >= 2) {
                auto it = sl.begin();
                std::advance(it, std::uniform_int_distribution<std::size_t>(0, sl.size() - 1)(rng));
                sl.erase(it);
            } else {
                oracle::WordV fresh;
                do {
                    fresh = random_word(6);
                } while (sl.count(fresh));
                sl.insert(fresh);
            }
        }
        if (sl.empty() || sl == oracle::Lang{{}}) continue;

        Dfa lang = testutil::dfa_from_lang(ab, sl);
        Dfa left = testutil::dfa_from_lang(ab, s1);
        Dfa right = testutil::dfa_from_lang(ab, s2);
        bool equal = concat_equiv(lang, left, right).equal;
        if (equal == perturb) continue; // perturbation happened to preserve equality: resample

        Dfa a = concat_to_primality(lang, left, right);
        PrimeOptions opts;
        opts.exhaustive = true;
        auto rep = is_prime(a, opts);
        bool dec = rep.verdict == Verdict::decomposable;
        if (dec != equal) ++disagreements;

        if (dec) {
            // the only decomposition: (L1 ∪ L1'$) ∘ (L2 ∪ $L2')
            auto primed = [](const oracle::Lang& l, bool before) {
                oracle::Lang out;
                for (const auto& w : l) {
                    oracle::WordV pw;
                    if (!before) pw.push_back("$");
                    for (const auto& t : w) pw.push_back(t + "'");
                    if (before) pw.push_back("$");
                    out.insert(pw);
                }
                return out;
            };
            oracle::Lang a1 = s1;
            for (const auto& w : primed(s1, true)) a1.insert(w);
            oracle::Lang a2 = s2;
            for (const auto& w : primed(s2, false)) a2.insert(w);
            Dfa a1_dfa = testutil::dfa_from_lang(a.alphabet(), a1);
            Dfa a2_dfa = testutil::dfa_from_lang(a.alphabet(), a2);
            for (const auto& w : rep.witnesses) {
                if (!equivalent(w.left, a1_dfa).equal || !equivalent(w.right, a2_dfa).equal)
                    ++factor_mismatches;
            }
        }
        ++triples;
    }
    std::ostringstream ss;
    ss << triples << " triples, " << disagreements << " verdict disagreements, "
       << factor_mismatches << " factor mismatches";
    detail = ss.str();
    return disagreements == 0 && factor_mismatches == 0;
}

// ---------------------------------------------------------------- criterion 7

bool criterion_full_chain(std::string& detail) {
    fs::path dir = fs::temp_directory_path() / "langprime-acceptance";
    fs::create_directories(dir);

    auto cli_verdict = [&](const Dfa& gadget, const std::string& name) {
        fs::path f = dir / name;
        std::ofstream out(f);
        print_dfa(out, gadget);
        out.close();
        std::string cmd = std::string(LANGPRIME_CLI_PATH) + " check-prime " + f.string() +
                          " > /dev/null 2>&1";
        int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };

    std::ostringstream ss;
    bool ok = true;

    {
        auto start = Clock::now();
        EdgeTilingInstance solvable;
        solvable.colors = {"x", "y"};
        solvable.tiles = {{"p", "x", "x", "x", "x"}, {"q", "y", "y", "y", "y"}};
        solvable.n = 2;
        PipelineOutcome out = hardness_pipeline(solvable);
        bool prime_lib = out.gadget && is_prime(*out.gadget).verdict == Verdict::prime;
        int exit_code = out.gadget ? cli_verdict(*out.gadget, "solvable_A.dfa") : -1;
        double secs = seconds_since(start);
        ok = ok && prime_lib && exit_code == 0 && secs < 30.0;
        ss << "solvable: " << (prime_lib ? "prime" : "NOT prime") << ", cli exit " << exit_code
           << ", " << secs << " s; ";
    }
    {
        auto start = Clock::now();
        EdgeTilingInstance blocked;
        blocked.colors = {"x", "y"};
        blocked.tiles = {{"p", "x", "x", "x", "y"}};
        blocked.n = 2;
        PipelineOutcome out = hardness_pipeline(blocked);
        bool dec_lib = out.gadget && is_prime(*out.gadget).verdict == Verdict::decomposable;
        int exit_code = out.gadget ? cli_verdict(*out.gadget, "blocked_A.dfa") : -1;
        double secs = seconds_since(start);
        ok = ok && dec_lib && exit_code == 1 && secs < 30.0;
        ss << "unsolvable: " << (dec_lib ? "decomposable" : "NOT decomposable") << ", cli exit "
           << exit_code << ", " << secs << " s";
    }
    detail = ss.str();
    return ok;
}

// ---------------------------------------------------------------- criterion 8

bool criterion_degenerate_table(std::string& detail) {
    const Alphabet a1(testutil::letters(1));
    int wrong = 0;

    if (is_prime(empty_language_dfa(a1)).verdict != Verdict::decomposable) ++wrong;
    if (is_prime(epsilon_dfa(a1)).verdict != Verdict::prime) ++wrong;
    if (is_prime(testutil::dfa_from_lang(a1, {{"a"}})).verdict != Verdict::prime) ++wrong;
    if (is_prime(testutil::dfa_from_lang(a1, {{"a"}, {"a", "a"}})).verdict !=
        Verdict::decomposable)
        ++wrong;

    std::ostringstream ss;
    ss << "4 cases, " << wrong << " wrong verdicts";
    detail = ss.str();
    return wrong == 0;
}

const Criterion kCriteria[] = {
    {1, "partition-set search matches the word-set oracle", criterion_completeness},
    {2, "partition products never leave the language", criterion_soundness},
    {3, "split-relation checker matches the automaton oracle", criterion_split_relation},
    {4, "gadget automata have the exact predicted state counts", criterion_state_counts},
    {5, "gadget equivalence mirrors tiling existence on all small instances",
     criterion_reduction_correctness},
    {6, "primality gadget decomposes exactly for matching triples", criterion_primality_gadget},
    {7, "full chain turns tiling existence into primality", criterion_full_chain},
    {8, "degenerate language table", criterion_degenerate_table},
};

} // namespace

int main(int argc, char** argv) {
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    bool all_ok = true;
    for (const auto& c : kCriteria) {
        if (!selected.empty() && !selected.count(c.number)) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << ": " << c.description
                  << " (" << detail << ")\n"
                  << std::flush;
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
