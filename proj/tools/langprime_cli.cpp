// Command-line front end: primality checks, concatenation equivalence,
// reduction-gadget construction, tiling solving, and DFA utilities.
//
// Exit codes: 0 = positive answer (prime / equal / tiling found / true),
// 1 = negative answer, 2 = error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "langprime/langprime.hpp"

namespace fs = std::filesystem;
using namespace langprime;

namespace {

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

Dfa load_dfa(const std::string& path) {
    auto in = open_input(path);
    return parse_dfa(in);
}

RelTilingInstance load_rel(const std::string& path) {
    auto in = open_input(path);
    return parse_rel(in);
}

EdgeTilingInstance load_edge(const std::string& path) {
    auto in = open_input(path);
    return parse_edge(in);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << content;
    std::cout << "wrote " << path.string() << '\n';
}

std::string render_dfa(const Dfa& d) { return print_dfa_string(d); }

struct CheckPrimeArgs {
    std::string file;
    std::string prune = "on";
    std::string rule = "safe";
    std::string strategy = "auto";
    bool exhaustive = false;
    unsigned jobs = 1;
};

PrimeOptions to_options(const CheckPrimeArgs& a) {
    PrimeOptions opts;
    opts.prune = a.prune == "on";
    opts.exhaustive = a.exhaustive;
    opts.jobs = a.jobs;
    if (a.rule == "safe")
        opts.rule = CandidateRule::safe;
    else if (a.rule == "strict-plus")
        opts.rule = CandidateRule::strict_plus;
    else
        opts.rule = CandidateRule::strict_star;
    if (a.strategy == "subsets")
        opts.strategy = SearchStrategy::subsets;
    else if (a.strategy == "quotients")
        opts.strategy = SearchStrategy::quotients;
    else
        opts.strategy = SearchStrategy::automatic;
    return opts;
}

int run_check_prime(const CheckPrimeArgs& args) {
    Dfa d = load_dfa(args.file);
    DecompositionReport rep = is_prime(d, to_options(args));
    print_report(std::cout, rep);
    return rep.verdict == Verdict::prime ? kExitPositive : kExitNegative;
}

int run_concat_eq(const std::string& lf, const std::string& l1f, const std::string& l2f) {
    ConcatEqVerdict v = concat_equiv(load_dfa(lf), load_dfa(l1f), load_dfa(l2f));
    if (v.equal) {
        std::cout << "equal\n";
        return kExitPositive;
    }
    std::cout << "unequal " << to_token(*v.direction);
    for (const auto& s : *v.counterexample) std::cout << ' ' << s.token();
    std::cout << '\n';
    return kExitNegative;
}

void print_gadget_counts(const ConcatGadget& g) {
    std::cout << "horizontal-violation automaton: " << g.h_violations.state_count() << " states\n"
              << "vertical-violation automaton: " << g.v_violations.state_count() << " states\n"
              << "left chain automaton (L1): " << g.left.state_count() << " states\n"
              << "right factor automaton (L2): " << g.right.state_count() << " states\n"
              << "full language automaton (L): " << g.lang.state_count() << " states\n";
}

void write_gadget(const ConcatGadget& g, const fs::path& dir) {
    write_file(dir / "L.dfa", render_dfa(g.lang));
    write_file(dir / "L1.dfa", render_dfa(g.left));
    write_file(dir / "L2.dfa", render_dfa(g.right));
}

int run_gadget_edge_to_rel(const std::string& file, const fs::path& dir) {
    RelTilingInstance r = edge_to_rel(load_edge(file));
    std::ostringstream out;
    print_rel(out, r);
    write_file(dir / "rel.rel", out.str());
    std::cout << r.tiles.size() << " tiles, " << r.h.size() << " horizontal pairs, "
              << r.v.size() << " vertical pairs\n";
    return kExitPositive;
}

int run_gadget_rel_to_concat(const std::string& file, const fs::path& dir) {
    ConcatGadget g = rel_to_concat(load_rel(file));
    write_gadget(g, dir);
    print_gadget_counts(g);
    return kExitPositive;
}

int run_gadget_concat_to_prime(const std::string& lf, const std::string& l1f,
                               const std::string& l2f, const fs::path& dir) {
    Dfa lang = load_dfa(lf), left = load_dfa(l1f), right = load_dfa(l2f);
    try {
        Dfa a = concat_to_primality(lang, left, right);
        write_file(dir / "A.dfa", render_dfa(a));
        std::cout << "primality gadget (A): " << a.state_count() << " states\n";
        return kExitPositive;
    } catch (const DegenerateInputError& e) {
        auto v = concat_equiv(lang, left, right);
        std::cerr << e.what() << "\ndirect answer: L " << (v.equal ? "=" : "!=") << " L1 L2\n";
        return kExitError;
    }
}

int run_gadget_full_chain(const std::string& file, const fs::path& dir) {
    EdgeTilingInstance e = load_edge(file);
    if (e.n > 1) {
        RelTilingInstance r = edge_to_rel(e);
        std::ostringstream out;
        print_rel(out, r);
        write_file(dir / "rel.rel", out.str());
    }
    PipelineOutcome outcome = hardness_pipeline(e);
    if (!outcome.gadget) {
        std::cerr << "degenerate instance; direct answer: tiling "
                  << (*outcome.tiling_exists ? "exists" : "does not exist")
                  << "; primality gadget not built\n";
        return kExitError;
    }
    ConcatGadget g = rel_to_concat(edge_to_rel(e));
    write_gadget(g, dir);
    write_file(dir / "A.dfa", render_dfa(*outcome.gadget));
    print_gadget_counts(g);
    std::cout << "primality gadget (A): " << outcome.gadget->state_count() << " states\n";
    return kExitPositive;
}

int run_tiling_solve(const std::string& file) {
    RelTilingInstance r = load_rel(file);
    auto t = solve_tiling(r);
    if (!t) {
        std::cout << "none\n";
        return kExitNegative;
    }
    print_tiling(std::cout, r, *t);
    return kExitPositive;
}

int run_tiling_verify(const std::string& rel_file, const std::string& tiling_file) {
    RelTilingInstance r = load_rel(rel_file);
    auto in = open_input(tiling_file);
    Tiling t = parse_tiling(in, r);
    bool ok = verify_tiling(r, t);
    std::cout << (ok ? "true" : "false") << '\n';
    return ok ? kExitPositive : kExitNegative;
}

void emit_dfa(const Dfa& d, const std::string& out_path) {
    if (out_path.empty())
        print_dfa(std::cout, d);
    else
        write_file(out_path, render_dfa(d));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Primality of finite regular languages: decomposition search, "
                 "concatenation equivalence, and tiling reduction gadgets"};
    app.require_subcommand(1);

    CheckPrimeArgs cp;
    auto* check = app.add_subcommand("check-prime", "Decide whether a finite language is prime");
    check->add_option("dfa", cp.file, "dfa-v1 file")->required();
    check->add_option("--prune", cp.prune, "candidate-state pruning (on|off)")
        ->check(CLI::IsMember({"on", "off"}));
    check->add_option("--rule", cp.rule, "pruning rule")
        ->check(CLI::IsMember({"safe", "strict-plus", "strict-star"}));
    check->add_option("--strategy", cp.strategy, "search strategy")
        ->check(CLI::IsMember({"auto", "subsets", "quotients"}));
    check->add_flag("--exhaustive", cp.exhaustive, "collect every witness");
    check->add_option("--jobs", cp.jobs, "parallel workers for the subset search");

    std::string eq_l, eq_l1, eq_l2;
    auto* eq = app.add_subcommand("concat-eq", "Decide whether L = L1 L2");
    eq->add_option("L", eq_l)->required();
    eq->add_option("L1", eq_l1)->required();
    eq->add_option("L2", eq_l2)->required();

    auto* gadget = app.add_subcommand("gadget", "Construct reduction gadgets");
    gadget->require_subcommand(1);
    std::string g_in, g_l, g_l1, g_l2, g_dir = ".";
    auto* g_e2r = gadget->add_subcommand("edge-to-rel", "edge tiling -> relational tiling");
    g_e2r->add_option("edge", g_in)->required();
    g_e2r->add_option("--out-dir", g_dir);
    auto* g_r2c = gadget->add_subcommand("rel-to-concat",
                                         "relational tiling -> concatenation equivalence");
    g_r2c->add_option("rel", g_in)->required();
    g_r2c->add_option("--out-dir", g_dir);
    auto* g_c2p = gadget->add_subcommand("concat-to-prime",
                                         "concatenation equivalence -> primality");
    g_c2p->add_option("L", g_l)->required();
    g_c2p->add_option("L1", g_l1)->required();
    g_c2p->add_option("L2", g_l2)->required();
    g_c2p->add_option("--out-dir", g_dir);
    auto* g_full = gadget->add_subcommand("full-chain", "edge tiling -> primality");
    g_full->add_option("edge", g_in)->required();
    g_full->add_option("--out-dir", g_dir);

    auto* tiling = app.add_subcommand("tiling", "Solve or verify square tilings");
    tiling->require_subcommand(1);
    std::string t_rel, t_tiling;
    auto* t_solve = tiling->add_subcommand("solve", "find the least legal tiling");
    t_solve->add_option("rel", t_rel)->required();
    auto* t_verify = tiling->add_subcommand("verify", "check a tiling against an instance");
    t_verify->add_option("rel", t_rel)->required();
    t_verify->add_option("tiling", t_tiling)->required();

    auto* dfa_cmd = app.add_subcommand("dfa", "DFA utilities");
    dfa_cmd->require_subcommand(1);
    std::string d_a, d_b, d_out;
    auto* d_min = dfa_cmd->add_subcommand("minimize", "canonical minimal DFA");
    d_min->add_option("dfa", d_a)->required();
    d_min->add_option("-o,--out", d_out);
    auto* d_eq = dfa_cmd->add_subcommand("equiv", "language equality with counterexample");
    d_eq->add_option("a", d_a)->required();
    d_eq->add_option("b", d_b)->required();
    auto* d_prod = dfa_cmd->add_subcommand("product", "intersection product");
    d_prod->add_option("a", d_a)->required();
    d_prod->add_option("b", d_b)->required();
    d_prod->add_option("-o,--out", d_out);
    auto* d_cat = dfa_cmd->add_subcommand("concat", "determinized concatenation");
    d_cat->add_option("a", d_a)->required();
    d_cat->add_option("b", d_b)->required();
    d_cat->add_option("-o,--out", d_out);
    auto* d_enum = dfa_cmd->add_subcommand("enumerate", "list all words of a finite language");
    d_enum->add_option("dfa", d_a)->required();
    auto* d_stats = dfa_cmd->add_subcommand("stats", "state/transition/word counts");
    d_stats->add_option("dfa", d_a)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitError;
    }

    try {
        if (*check) return run_check_prime(cp);
        if (*eq) return run_concat_eq(eq_l, eq_l1, eq_l2);
        if (*g_e2r) return run_gadget_edge_to_rel(g_in, g_dir);
        if (*g_r2c) return run_gadget_rel_to_concat(g_in, g_dir);
        if (*g_c2p) return run_gadget_concat_to_prime(g_l, g_l1, g_l2, g_dir);
        if (*g_full) return run_gadget_full_chain(g_in, g_dir);
        if (*t_solve) return run_tiling_solve(t_rel);
        if (*t_verify) return run_tiling_verify(t_rel, t_tiling);
        if (*d_min) {
            emit_dfa(minimize(load_dfa(d_a)), d_out);
            return kExitPositive;
        }
        if (*d_eq) {
            auto v = equivalent(load_dfa(d_a), load_dfa(d_b));
            if (v.equal) {
                std::cout << "equivalent\n";
                return kExitPositive;
            }
            std::cout << "different";
            for (const auto& s : *v.counterexample) std::cout << ' ' << s.token();
            std::cout << '\n';
            return kExitNegative;
        }
        if (*d_prod) {
            emit_dfa(product_intersect(load_dfa(d_a), load_dfa(d_b)), d_out);
            return kExitPositive;
        }
        if (*d_cat) {
            emit_dfa(determinize(concat(load_dfa(d_a), load_dfa(d_b))), d_out);
            return kExitPositive;
        }
        if (*d_enum) {
            for (const auto& w : enumerate_words(load_dfa(d_a))) std::cout << to_string(w) << '\n';
            return kExitPositive;
        }
        if (*d_stats) {
            Dfa d = load_dfa(d_a);
            std::cout << "states " << d.state_count() << "\ntransitions " << d.transition_count()
                      << "\nwords ";
            if (is_finite(d))
                std::cout << count_words(d) << '\n';
            else
                std::cout << "infinite\n";
            return kExitPositive;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
