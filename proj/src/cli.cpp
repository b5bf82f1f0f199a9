#include "pph/cli.hpp"

#include "pph/circuit.hpp"
#include "pph/error.hpp"
#include "pph/harness.hpp"
#include "pph/hierarchy.hpp"
#include "pph/oracle_sim.hpp"
#include "pph/reductions.hpp"
#include "pph/semantics.hpp"
#include "pph/vv.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace pph {

namespace {

struct Options {
    std::string in;
    std::string file;
    std::string problem;
    std::string rule;
    std::string target = "uval2";
    std::string machine;
    std::string assign;
    std::string alpha;
    std::string quantifier;
    std::string fix_prefix;
    std::string mutation = "none";
    std::string cex_dir;
    std::string dot_out;
    std::string widths;
    std::string table;
    std::string g, h, x;
    std::string intersection;
    std::vector<std::string> only;
    int exhaustive_m = -1;
    int two_block = -1;
    int negate_block = 0;
    int add_leading = 0;
    int trials = 0;
    int k_min = 2;
    int k_max = 0;
    int seeds = 0;
    int jobs = 1;
    std::uint64_t seed = 0;
    std::uint64_t path_cap = 1u << 16;
    bool print = false;
    bool solutions = false;
    bool negate = false;
    bool exhaustive = false;
    bool free_answer = false;
    bool nightly = false;
    bool report = false;
};

std::string read_input(const Options& o) {
    if (!o.file.empty()) {
        std::ifstream f(o.file, std::ios::binary);
        if (!f) throw ShapeError("cannot read " + o.file);
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
    }
    return o.in;
}

Mutation mutation_of(const Options& o) {
    const auto m = parse_mutation(o.mutation);
    if (!m) throw UnknownRule("mutation " + o.mutation);
    return *m;
}

std::vector<int> parse_widths(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) out.push_back(std::stoi(part));
    return out;
}

// "10,1" gives block 1 = 10, block 2 = 1; an empty field is a width-0 block
Assignment parse_assignment(const std::string& text) {
    Assignment a;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = text.find(',', start);
        a.push_back(parse_bits(text.substr(start, end == std::string::npos ? std::string::npos : end - start)));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return a;
}

ProblemId problem_of(const std::string& name, const Family& f) {
    std::string base = name;
    int level = f.blocks();
    const auto digits = base.find_first_of("0123456789");
    if (digits != std::string::npos) {
        level = std::stoi(base.substr(digits));
        base = base.substr(0, digits);
    }
    const auto kind = parse_problem_kind(base);
    if (!kind) throw UnknownRule("problem " + name);
    return {*kind, level};
}

std::string solution_set_text(const std::vector<Bits>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + bits_to_string(s[i]);
    return out + "}";
}

int do_eval(const Options& o, std::ostream& out) {
    if (!o.table.empty()) {
        const std::vector<int> widths = o.widths.empty() ? std::vector<int>{} : parse_widths(o.widths);
        out << print_family(from_truth_table(widths, parse_bits(o.table))) << "\n";
        return exit_ok;
    }
    Family f = parse_family(read_input(o));
    if (!o.fix_prefix.empty()) f = fix_first_block_prefix(f, parse_bits(o.fix_prefix));
    if (o.negate) f = negate_output(f);
    if (o.negate_block > 0) f = negate_block_inputs(f, o.negate_block);
    if (o.add_leading > 0) f = add_leading_variable(f, o.add_leading);
    if (!o.assign.empty()) {
        out << (evaluate(f, parse_assignment(o.assign)) ? 1 : 0) << "\n";
    } else if (!o.quantifier.empty()) {
        if (o.quantifier != "exists" && o.quantifier != "forall") throw ShapeError("quantifier must be exists or forall");
        out << (qbf_value(f, o.quantifier == "exists" ? Quantifier::exists : Quantifier::forall) ? 1 : 0) << "\n";
    } else if (o.solutions) {
        out << solution_set_text(first_block_solution_set(f)) << "\n";
    } else {
        out << print_family(f) << "\n";
    }
    return exit_ok;
}

int do_solve(const Options& o, std::ostream& out) {
    const Family f = parse_family(read_input(o));
    out << to_string(solve(problem_of(o.problem, f), f)) << "\n";
    return exit_ok;
}

int do_reduce(const Options& o, std::ostream& out) {
    if (!o.intersection.empty()) {
        const Family g = parse_family(o.g), h = parse_family(o.h);
        const Bits x = parse_bits(o.x);
        if (o.intersection == "val") out << print_family(build_val_intersection(g, h, x)) << "\n";
        else if (o.intersection == "uval") out << print_family(build_uval_intersection(g, h, x)) << "\n";
        else throw UnknownRule("intersection " + o.intersection);
        return exit_ok;
    }
    if (o.rule == "pi1_to_uval") {
        std::string text = read_input(o);
        text.erase(std::remove_if(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
                   text.end());
        out << print_family(apply_pi1_to_uval(parse_bits(text))) << "\n";
        return exit_ok;
    }
    const Family f = parse_family(read_input(o));
    if (o.rule == "sat_to_uval2_parametric") {
        out << print_family(sat_to_uval2_parametric(f)) << "\n";
        return exit_ok;
    }
    const ReductionRule r = rule_chain(o.rule, f.blocks(), mutation_of(o));
    const Family g = r.transform(f);
    out << print_family(g) << "\n";
    if (o.report) {
        const RuleCheck c = check_rule(r, f);
        out << to_string(r.source) << " " << to_string(c.expected) << " -> " << to_string(r.target) << " "
            << to_string(c.actual) << "\n";
    }
    return exit_ok;
}

int do_check(const Options& o, std::ostream& out) {
    const Mutation mu = mutation_of(o);
    if (o.exhaustive_m >= 0 || o.two_block >= 0) {
        const Verdict v = o.exhaustive_m >= 0 ? verify_rule_exhaustive(o.rule, o.exhaustive_m, mu, o.jobs)
                                              : verify_rule_two_block(o.rule, o.two_block, mu, o.jobs);
        out << format_verdict(v) << "\n";
        if (!v.ok()) out << v.counterexample << "\n";
        if (!v.ok() && !o.cex_dir.empty()) write_counterexample(o.cex_dir, v);
        return v.ok() ? exit_ok : exit_fail;
    }
    if (o.rule == "pi1_to_uval") {
        const Bits x = parse_bits(read_input(o));
        const PromiseValue got = solve(ProblemKind::uval, apply_pi1_to_uval(x));
        const bool pass = !x.empty() && got == singleton(x[0]);
        out << (pass ? "PASS" : "FAIL") << " expected=" << to_string(singleton(!x.empty() && x[0]))
            << " actual=" << to_string(got) << "\n";
        return pass ? exit_ok : exit_fail;
    }
    const Family f = parse_family(read_input(o));
    const ReductionRule r = rule_chain(o.rule, f.blocks(), mu);
    const RuleCheck c = check_rule(r, f);
    out << (c.pass ? "PASS" : "FAIL") << " " << to_string(r.kind) << " expected=" << to_string(c.expected)
        << " actual=" << to_string(c.actual) << "\n";
    return c.pass ? exit_ok : exit_fail;
}

int do_compile(const Options& o, std::ostream& out) {
    const OracleCircuit c = parse_circuit(read_input(o));
    const Bits alpha = parse_bits(o.alpha);
    Family f = o.target == "sigma2" ? compile_sigma2(c, alpha) : compile_uval2(c, alpha).family;
    if (o.target != "sigma2" && o.target != "uval2") throw ShapeError("target must be sigma2 or uval2");
    out << print_family(f) << "\n";
    if (!o.report) return exit_ok;
    const bool value = eval_circuit(c, alpha);
    const PromiseValue compiled = solve(o.target == "sigma2" ? ProblemKind::sat : ProblemKind::uval, f);
    out << "circuit=" << (value ? 1 : 0) << " compiled=" << to_string(compiled) << "\n";
    return compiled == singleton(value) ? exit_ok : exit_fail;
}

int do_simulate(const Options& o, std::ostream& out) {
    VvOptions vo;
    vo.trials = o.trials;
    vo.k_min = o.k_min;
    vo.k_max = o.k_max;
    const MachineSpec m = o.machine == "vv" ? vv_machine(o.seed, vo) : make_machine(o.machine, mutation_of(o));
    const Family f = parse_family(read_input(o));
    if (!o.exhaustive) {
        out << format_transcript(run_single_path(m, f, o.free_answer));
        return exit_ok;
    }
    const AdversaryTree tree = run_adversarial(m, f, o.path_cap);
    for (std::size_t i = 0; i < tree.leaves.size(); ++i) {
        out << "LEAF " << i << "\n" << format_transcript(tree.leaves[i]);
    }
    const bool ok = leaves_correct(m, f, tree);
    out << "LEAVES " << tree.leaves.size() << " calls=" << tree.min_calls << ".." << tree.max_calls
        << " value=" << to_string(solve(m.source, f)) << " " << (ok ? "CORRECT" : "INCORRECT") << "\n";
    return ok ? exit_ok : exit_fail;
}

int do_vv(const Options& o, std::ostream& out) {
    const Family f = parse_family(read_input(o));
    VvOptions vo;
    vo.trials = o.trials;
    vo.k_min = o.k_min;
    vo.k_max = o.k_max;
    if (o.seeds > 0) {
        int hits = 0;
        for (int s = 0; s < o.seeds; ++s) hits += vv_decide(f, o.seed + static_cast<std::uint64_t>(s), vo);
        out << "SUCCESS " << hits << "/" << o.seeds << " SAT=" << to_string(solve(ProblemKind::sat, f)) << "\n";
        return exit_ok;
    }
    PromiseOracle oracle(ProblemKind::usat, o.free_answer);
    out << format_vv_run(vv_run(f, o.seed, vo, oracle));
    return exit_ok;
}

int do_campaign(const Options& o, std::ostream& out) {
    CampaignOptions c;
    c.seed = o.seed;
    c.jobs = o.jobs;
    c.nightly = o.nightly;
    c.mutation = mutation_of(o);
    c.cex_dir = o.cex_dir;
    c.only = o.only;
    bool ok = true;
    run_campaign(c, [&](const Verdict& v) {
        out << format_verdict(v) << "\n" << v.note;
        if (!v.ok()) out << v.counterexample << "\n";
        out.flush();
        ok = ok && v.ok();
    });
    return ok ? exit_ok : exit_fail;
}

int do_hierarchy(const Options& o, std::ostream& out) {
    const Hierarchy h = build_hierarchy(o.jobs);
    const std::string dot = emit_hierarchy_dot(h);
    const bool symmetric = duality_symmetric(h);
    bool verified = true;
    for (const auto& e : h.edges) verified = verified && (e.verified || !e.needs_verification());
    if (o.dot_out.empty()) {
        out << dot;
    } else {
        std::ofstream f(o.dot_out, std::ios::binary);
        if (!f) throw ShapeError("cannot write " + o.dot_out);
        f << dot;
        std::size_t solid = 0;
        for (const auto& e : h.edges) solid += e.verified;
        out << "NODES " << h.nodes.size() << " EDGES " << h.edges.size() << " SOLID " << solid << " DUALITY "
            << (symmetric ? "ok" : "broken") << "\n";
    }
    return symmetric && verified ? exit_ok : exit_fail;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Verification lab for promise problems in the polynomial hierarchy", "pph"};
    app.require_subcommand(1);
    Options o;

    auto input = [&](CLI::App* sub) {
        auto* in = sub->add_option("--in", o.in, "family (or circuit) text");
        auto* file = sub->add_option("--file", o.file, "read the input from a file");
        in->excludes(file);
        file->excludes(in);
    };
    auto seed = [&](CLI::App* sub, bool required) {
        auto* s = sub->add_option("--seed", o.seed, "random seed");
        if (required) s->required();
    };
    auto jobs = [&](CLI::App* sub) { sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber); };
    auto mutation = [&](CLI::App* sub) { sub->add_option("--mutation", o.mutation, "inject a documented bug"); };

    CLI::App* eval = app.add_subcommand("eval", "evaluate or transform a family");
    input(eval);
    eval->add_option("--assign", o.assign, "bits per block, comma separated (e.g. 10,1)");
    eval->add_option("--quantifier", o.quantifier, "exists|forall: alternating value from block 1");
    eval->add_flag("--solutions", o.solutions, "print the first-block solution set");
    eval->add_option("--fix-prefix", o.fix_prefix, "fix the first bits of block 1");
    eval->add_flag("--negate-output", o.negate, "negate the body");
    eval->add_option("--negate-block", o.negate_block, "negate every input of a block");
    eval->add_option("--add-leading", o.add_leading, "prepend an unused variable to a block");
    eval->add_option("--table", o.table, "build a family from a truth table");
    eval->add_option("--widths", o.widths, "block widths for --table");

    CLI::App* solve_cmd = app.add_subcommand("solve", "value of a promise problem");
    input(solve_cmd);
    solve_cmd->add_option("--problem", o.problem, "SAT, COSAT, MAXVAL, MINVAL, VAL, USAT, COUSAT, UVAL, optional level")
        ->required();

    CLI::App* reduce = app.add_subcommand("reduce", "apply a reduction rule or chain r1;r2");
    input(reduce);
    reduce->add_option("--rule", o.rule, "rule name or ;-separated chain");
    reduce->add_option("--intersection", o.intersection, "val|uval: build the intersection family");
    reduce->add_option("--g-in", o.g, "first witness family");
    reduce->add_option("--h-in", o.h, "second witness family");
    reduce->add_option("--x", o.x, "x bits");
    reduce->add_flag("--report", o.report, "also print source and target values");
    mutation(reduce);

    CLI::App* check = app.add_subcommand("check", "check a rule on one instance or exhaustively");
    input(check);
    check->add_option("--rule", o.rule, "rule name or ;-separated chain")->required();
    check->add_option("--exhaustive-m", o.exhaustive_m, "every instance of total width m");
    check->add_option("--two-block", o.two_block, "every 2-block instance up to this total width");
    check->add_option("--cex-dir", o.cex_dir, "directory for counterexample files");
    jobs(check);
    mutation(check);

    CLI::App* compile = app.add_subcommand("compile", "compile an oracle circuit at an input");
    input(compile);
    compile->add_option("--target", o.target, "sigma2|uval2")->check(CLI::IsMember({"sigma2", "uval2"}));
    compile->add_option("--alpha", o.alpha, "input bits")->required();
    compile->add_flag("--report", o.report, "compare the compiled value with the circuit");

    CLI::App* simulate = app.add_subcommand("simulate", "run an oracle machine");
    input(simulate);
    simulate->add_option("--machine", o.machine, "sat-via-val|usat-via-uval|sat-identity|usat-identity|vv")->required();
    auto* exhaustive = simulate->add_flag("--exhaustive", o.exhaustive, "explore every adversarial path");
    simulate->add_flag("--single-path", [&](std::int64_t) { o.exhaustive = false; }, "one path (default)")
        ->excludes(exhaustive);
    simulate->add_flag("--free-answer", o.free_answer, "answer 1 (not 0) on promise violations");
    simulate->add_option("--path-cap", o.path_cap, "maximum adversarial leaves");
    simulate->add_option("--seed", o.seed, "random seed for --machine vv");
    simulate->add_option("--trials", o.trials, "isolation trials for --machine vv");
    simulate->add_option("--k-min", o.k_min, "fewest constraints per trial for --machine vv");
    simulate->add_option("--k-max", o.k_max, "most constraints per trial for --machine vv");
    mutation(simulate);

    CLI::App* vv = app.add_subcommand("vv", "randomized isolation SAT to USAT");
    input(vv);
    seed(vv, true);
    vv->add_option("--trials", o.trials, "trials (default 24m)");
    vv->add_option("--k-min", o.k_min, "fewest constraints per trial");
    vv->add_option("--k-max", o.k_max, "most constraints per trial (default m+1)");
    vv->add_option("--seeds", o.seeds, "run seeds seed..seed+n-1 and count successes");
    vv->add_flag("--free-answer", o.free_answer, "answer 1 (not 0) on promise violations");

    CLI::App* campaign = app.add_subcommand("campaign", "run the verification campaign");
    seed(campaign, true);
    jobs(campaign);
    mutation(campaign);
    campaign->add_flag("--nightly", o.nightly, "exhaustive rule checks at m = 4 too");
    campaign->add_option("--cex-dir", o.cex_dir, "directory for counterexample files");
    campaign->add_option("--only", o.only, "run checks whose names start with these prefixes");

    CLI::App* hierarchy = app.add_subcommand("hierarchy", "verify witnesses and emit the inclusion diagram");
    hierarchy->add_option("--dot-out", o.dot_out, "write DOT here instead of standard output");
    jobs(hierarchy);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    try {
        if (*eval) return do_eval(o, out);
        if (*solve_cmd) return do_solve(o, out);
        if (*reduce) return do_reduce(o, out);
        if (*check) return do_check(o, out);
        if (*compile) return do_compile(o, out);
        if (*simulate) return do_simulate(o, out);
        if (*vv) return do_vv(o, out);
        if (*campaign) return do_campaign(o, out);
        if (*hierarchy) return do_hierarchy(o, out);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return exit_cap;
    } catch (const PathCapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return exit_cap;
    } catch (const IncompleteRegistry& e) {
        err << "error: " << e.what() << "\n";
        return exit_fail;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: bad number: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::out_of_range& e) {
        err << "error: number out of range: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

} // namespace pph
