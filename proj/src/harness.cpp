#include "pph/harness.hpp"

#include "pph/circuit.hpp"
#include "pph/error.hpp"
#include "pph/hierarchy.hpp"
#include "pph/oracle_sim.hpp"
#include "pph/semantics.hpp"
#include "pph/vv.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace pph {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ms(Clock::time_point start) {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

std::string mutation_flag(Mutation m) {
    return m == Mutation::none ? "" : " --mutation " + to_string(m);
}

std::string circuit_one_line(const OracleCircuit& c) {
    std::string text = print_circuit(c);
    while (!text.empty() && text.back() == '\n') text.pop_back();
    const std::size_t header = text.find('\n');
    std::string out = text.substr(0, header);
    if (header == std::string::npos) return out;
    std::string rest = text.substr(header + 1);
    std::size_t pos = 0;
    while ((pos = rest.find('\n', pos)) != std::string::npos) rest.replace(pos, 1, "; ");
    return out + " " + rest;
}

std::vector<Bits> all_bits(int width) {
    std::vector<Bits> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << width); ++v) out.push_back(to_bits(v, width));
    return out;
}

// packed table of a one-block family: entry j (packed assignment j) at bit j
std::uint64_t packed_table(std::uint64_t code, int m) {
    const std::uint64_t n = std::uint64_t{1} << m;
    std::uint64_t t = 0;
    for (std::uint64_t j = 0; j < n; ++j) {
        if ((code >> (n - 1 - j)) & 1u) t |= std::uint64_t{1} << j;
    }
    return t;
}

std::optional<std::string> rule_failure(const ReductionRule& rule, const Family& f, Mutation mutation) {
    const RuleCheck c = check_rule(rule, f);
    if (c.pass) return std::nullopt;
    std::ostringstream out;
    out << "rule " << rule.name << " (" << to_string(rule.kind) << ") on " << print_family(f) << "\n"
        << "expected " << to_string(c.expected) << " got " << to_string(c.actual) << "\n"
        << "replay: pph check --rule " << rule.name << " --in " << quoted(print_family(f)) << mutation_flag(mutation);
    return out.str();
}

int natural_level(std::string_view rule) { return rule == "dual_uvaln" ? 2 : 1; }

} // namespace

std::string format_verdict(const Verdict& v) {
    return "CHECK " + v.name + " pass=" + std::to_string(v.pass) + " fail=" + std::to_string(v.fail) +
           " time=" + std::to_string(v.ms);
}

Verdict run_instances(std::string name, std::uint64_t n, int jobs,
                      const std::function<std::optional<std::string>(std::uint64_t)>& check) {
    const auto start = Clock::now();
    const int workers = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(jobs, 1)), 1,
                                                                  std::max<std::uint64_t>(n, 1)));
    std::atomic<std::uint64_t> next{0}, pass{0}, fail{0};
    std::mutex lock;
    std::uint64_t first_index = std::numeric_limits<std::uint64_t>::max();
    std::string first_cex;
    std::exception_ptr error;

    auto work = [&] {
        try {
            for (std::uint64_t i = next++; i < n; i = next++) {
                std::optional<std::string> cex = check(i);
                if (!cex) {
                    ++pass;
                    continue;
                }
                ++fail;
                std::lock_guard<std::mutex> g(lock);
                if (i < first_index) {
                    first_index = i;
                    first_cex = std::move(*cex);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> g(lock);
            if (!error) error = std::current_exception();
            next = n;
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    Verdict v;
    v.name = std::move(name);
    v.pass = pass;
    v.fail = fail;
    v.counterexample = std::move(first_cex);
    v.ms = elapsed_ms(start);
    return v;
}

std::uint64_t table_count(const std::vector<int>& widths) {
    int total = 0;
    for (int w : widths) total += w;
    if (total > 4) throw CapExceeded("2^(2^" + std::to_string(total) + ") truth tables; at most 4 variables");
    return std::uint64_t{1} << (1u << total);
}

Family table_family(std::vector<int> widths, std::uint64_t code) {
    int total = 0;
    for (int w : widths) total += w;
    if (total > 6) throw CapExceeded("table codes hold at most 6 variables");
    const std::size_t n = std::size_t{1} << total;
    Bits table(n);
    for (std::size_t i = 0; i < n; ++i) table[i] = (code >> (n - 1 - i)) & 1u;
    return from_truth_table(std::move(widths), table);
}

std::vector<Family> enumerate_truth_tables(int m) {
    if (m < 0) throw ShapeError("negative width");
    const std::uint64_t count = table_count({m});
    std::vector<Family> out;
    out.reserve(count);
    for (std::uint64_t code = 0; code < count; ++code) out.push_back(table_family({m}, code));
    return out;
}

namespace {

Expr random_expr(const std::vector<VarRef>& vars, int budget, RandomSource& rng) {
    if (budget <= 1 || (budget == 2 && rng.below(2) == 0)) {
        // leaf; constants are rare unless there is nothing else
        if (vars.empty() || rng.below(16) == 0) return Expr::constant(rng.bit());
        return Expr::variable(vars[rng.below(vars.size())]);
    }
    const std::uint64_t op = rng.below(5);
    if (op == 0) return !random_expr(vars, budget - 1, rng);
    const int rest = budget - 1;
    if (rest < 2) return !random_expr(vars, rest, rng);
    const int left = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(rest - 1)));
    const Expr a = random_expr(vars, left, rng);
    const Expr b = random_expr(vars, rest - left, rng);
    return op <= 2 ? (a & b) : (a | b);
}

} // namespace

Family random_family(const std::vector<int>& widths, int size_budget, RandomSource& rng) {
    if (size_budget < 1) throw ShapeError("size budget must be at least 1");
    std::vector<VarRef> vars;
    for (std::size_t b = 0; b < widths.size(); ++b) {
        for (int i = 1; i <= widths[b]; ++i) vars.push_back({static_cast<int>(b) + 1, i});
    }
    return Family(widths, random_expr(vars, size_budget, rng));
}

Verdict verify_rule_exhaustive(std::string_view rule, int m, Mutation mutation, int jobs) {
    const std::string name = "rule:" + std::string(rule) + ":m" + std::to_string(m);
    if (m < 0 || m > 4) throw CapExceeded("exhaustive rule checks need 0 <= m <= 4");
    if (rule == "pi1_to_uval") {
        return run_instances(name, std::uint64_t{1} << m, jobs, [&](std::uint64_t v) -> std::optional<std::string> {
            if (m == 0) return std::nullopt;
            const Bits x = to_bits(v, m);
            const PromiseValue got = solve(ProblemKind::uval, apply_pi1_to_uval(x));
            if (got == singleton(x[0])) return std::nullopt;
            return "pi1_to_uval on " + bits_to_string(x) + ": expected " + to_string(singleton(x[0])) + " got " +
                   to_string(got) + "\nreplay: pph reduce --rule pi1_to_uval --in " + bits_to_string(x);
        });
    }
    const int level = natural_level(rule);
    const ReductionRule r = make_rule(rule, level, mutation);
    std::vector<std::vector<int>> shapes;
    if (level == 1) {
        shapes.push_back({m});
    } else {
        for (int a = 1; a < m; ++a) shapes.push_back({a, m - a});
    }
    const std::uint64_t per_shape = table_count({m});
    return run_instances(name, per_shape * shapes.size(), jobs, [&](std::uint64_t i) {
        return rule_failure(r, table_family(shapes[i / per_shape], i % per_shape), mutation);
    });
}

Verdict verify_rule_two_block(std::string_view rule, int max_total, Mutation mutation, int jobs) {
    const std::string name = "rule2:" + std::string(rule) + ":total<=" + std::to_string(max_total);
    if (max_total > 4) throw CapExceeded("two-block exhaustive checks need total width <= 4");
    if (!is_family_rule(rule)) throw ShapeError(std::string(rule) + " does not transform families");
    const ReductionRule r = make_rule(rule, 2, mutation);
    std::vector<std::pair<std::vector<int>, std::uint64_t>> shapes; // shape, first global index
    std::uint64_t total = 0;
    for (int t = 2; t <= max_total; ++t) {
        for (int a = 1; a < t; ++a) {
            shapes.push_back({{a, t - a}, total});
            total += table_count({t});
        }
    }
    return run_instances(name, total, jobs, [&](std::uint64_t i) {
        std::size_t s = shapes.size() - 1;
        while (shapes[s].second > i) --s;
        return rule_failure(r, table_family(shapes[s].first, i - shapes[s].second), mutation);
    });
}

Verdict verify_rule_lifts(std::string_view rule, std::uint64_t seed, int level2_count, int level3_count,
                          Mutation mutation, int jobs) {
    const std::string name = "lift:" + std::string(rule);
    if (!is_family_rule(rule)) throw ShapeError(std::string(rule) + " does not transform families");
    const ReductionRule r2 = make_rule(rule, 2, mutation);
    const ReductionRule r3 = make_rule(rule, 3, mutation);
    const auto n2 = static_cast<std::uint64_t>(level2_count);
    const RandomSource root(seed);
    return run_instances(name, n2 + static_cast<std::uint64_t>(level3_count), jobs, [&](std::uint64_t i) {
        RandomSource rng = root.split(i);
        const bool lvl2 = i < n2;
        std::vector<int> widths;
        widths.push_back(1 + static_cast<int>(rng.below(2)));
        widths.push_back(static_cast<int>(rng.below(lvl2 ? 3 : 2)));
        if (!lvl2) widths.push_back(static_cast<int>(rng.below(2)));
        int total = 0;
        for (int w : widths) total += w;
        // alternate uniform truth tables with random expressions
        const std::uint64_t mask = (std::uint64_t{1} << (1u << total)) - 1; // total ≤ 4 here
        const Family f = i % 2 == 0 ? table_family(widths, rng.next() & mask)
                                    : random_family(widths, 3 + static_cast<int>(rng.below(12)), rng);
        return rule_failure(lvl2 ? r2 : r3, f, mutation);
    });
}

Verdict verify_gadget_promise(int m, Mutation mutation, int jobs) {
    const std::string name = "gadget-promise:m" + std::to_string(m);
    const ReductionRule r = make_rule("maxval_to_uvaln1", 1, mutation);
    const std::uint64_t count = table_count({m});
    return run_instances(name, count, jobs, [&](std::uint64_t code) -> std::optional<std::string> {
        const Family f = table_family({m}, code);
        if (solve(ProblemKind::sat, f) != PromiseValue::one) return std::nullopt;
        const Family g = r.transform(f);
        const auto s = first_block_solution_set(g);
        if (s.size() == 1) return std::nullopt;
        return "maxval_to_uvaln1 on " + print_family(f) + ": the output has " + std::to_string(s.size()) +
               " solutions, the UVAL2 promise needs exactly 1\nreplay: pph solve --problem UVAL2 --in " +
               quoted(print_family(g));
    });
}

namespace {

std::optional<std::string> intersection_failure(const Family& g, const Family& h, const Bits& x) {
    const Family gx = bind_block(g, 1, x), hx = bind_block(h, 1, x);
    const Family val = build_val_intersection(g, h, x);
    const PromiseValue val_bound = set_union(solve(ProblemKind::sat, gx), solve(ProblemKind::cosat, hx));
    const PromiseValue val_got = solve(ProblemKind::val, val);
    const PromiseValue uval_bound = set_union(solve(ProblemKind::usat, gx), solve(ProblemKind::cousat, hx));
    const Family uval = build_uval_intersection(g, h, x);
    const PromiseValue uval_got = solve(ProblemKind::uval, uval);
    if (is_subset(val_got, val_bound) && is_subset(uval_got, uval_bound)) return std::nullopt;
    std::ostringstream out;
    out << "witnesses g=" << print_family(g) << " h=" << print_family(h) << " x=" << bits_to_string(x) << "\n"
        << "VAL " << to_string(val_got) << " within " << to_string(val_bound) << "? UVAL " << to_string(uval_got)
        << " within " << to_string(uval_bound) << "?\n"
        << "replay: pph solve --problem VAL --in " << quoted(print_family(val));
    return out.str();
}

} // namespace

Verdict verify_intersections_exhaustive(int x_width, int y_width, int jobs) {
    const std::string name = "intersections:(" + std::to_string(x_width) + "," + std::to_string(y_width) + ")";
    const std::vector<int> widths{x_width, y_width};
    const std::uint64_t tables = table_count(widths);
    const std::uint64_t xs = std::uint64_t{1} << x_width;
    return run_instances(name, tables * tables * xs, jobs, [&](std::uint64_t i) {
        const std::uint64_t x = i % xs, pair = i / xs;
        return intersection_failure(table_family(widths, pair / tables), table_family(widths, pair % tables),
                                    to_bits(x, x_width));
    });
}

Verdict verify_intersections_sampled(int x_width, int y_width, std::uint64_t seed, int pairs, int jobs) {
    const std::string name = "intersections-sampled:(" + std::to_string(x_width) + "," + std::to_string(y_width) + ")";
    const std::vector<int> widths{x_width, y_width};
    const int total = x_width + y_width;
    if (total > 6) throw CapExceeded("sampled intersections hold at most 6 variables");
    const std::uint64_t mask = total == 6 ? ~std::uint64_t{0} : (std::uint64_t{1} << (1u << total)) - 1;
    const std::uint64_t xs = std::uint64_t{1} << x_width;
    const RandomSource root(seed);
    return run_instances(name, static_cast<std::uint64_t>(pairs) * xs, jobs, [&](std::uint64_t i) {
        RandomSource rng = root.split(i / xs);
        const Family g = table_family(widths, rng.next() & mask);
        const Family h = table_family(widths, rng.next() & mask);
        return intersection_failure(g, h, to_bits(i % xs, x_width));
    });
}

Verdict verify_compiler(std::uint64_t seed, int circuits, int jobs) {
    const std::string name = "compiler:" + std::to_string(circuits);
    const RandomSource root(seed);
    return run_instances(name, static_cast<std::uint64_t>(circuits), jobs, [&](std::uint64_t i) -> std::optional<std::string> {
        RandomSource rng = root.split(i);
        const OracleCircuit c = random_circuit(rng);
        for (const Bits& alpha : all_bits(c.inputs())) {
            const bool sigma = eval_circuit(c, alpha);
            std::string problem;
            const Family s2 = compile_sigma2(c, alpha);
            const CompiledUval2 u = compile_uval2(c, alpha);
            if (solve(ProblemKind::sat, s2) != singleton(sigma)) problem = "Σ₂ value differs from the circuit";
            const auto w = first_block_solution_set(u.family);
            if (problem.empty() && w.size() != 1) problem = std::to_string(w.size()) + " satisfying w, expected 1";
            if (problem.empty() && w[0][0] != sigma) problem = "first bit of w differs from the circuit";
            if (problem.empty()) {
                for (const Bits& x : all_bits(c.vertices())) {
                    if (first_block_solution_set(bind_block(u.p3, 3, x)).size() != 1 ||
                        first_block_solution_set(bind_block(u.p4, 3, x)).size() != 1) {
                        problem = "∃!s or ∃!t fails at x=" + bits_to_string(x);
                        break;
                    }
                }
            }
            if (!problem.empty()) {
                return "circuit " + circuit_one_line(c) + " alpha=" + bits_to_string(alpha) + ": " + problem +
                       "\nreplay: pph compile --target uval2 --in " + quoted(circuit_one_line(c)) + " --alpha " +
                       bits_to_string(alpha);
            }
        }
        return std::nullopt;
    });
}

Verdict verify_machine(std::string_view machine, int max_m, Mutation mutation, int jobs) {
    const std::string name = "machine:" + std::string(machine) + ":m<=" + std::to_string(max_m);
    const MachineSpec spec = make_machine(machine, mutation);
    std::vector<std::pair<int, std::uint64_t>> starts;
    std::uint64_t total = 0;
    for (int m = 1; m <= max_m; ++m) {
        starts.push_back({m, total});
        total += table_count({m});
    }
    return run_instances(name, total, jobs, [&](std::uint64_t i) -> std::optional<std::string> {
        std::size_t s = starts.size() - 1;
        while (starts[s].second > i) --s;
        const int m = starts[s].first;
        const Family f = table_family({m}, i - starts[s].second);
        const AdversaryTree tree = run_adversarial(spec, f);
        std::string problem;
        if (!leaves_correct(spec, f, tree)) problem = "a leaf outputs a value outside the source problem's value";
        else if (tree.min_calls != static_cast<std::size_t>(m) || tree.max_calls != static_cast<std::size_t>(m)) {
            problem = "paths make " + std::to_string(tree.min_calls) + ".." + std::to_string(tree.max_calls) +
                      " oracle calls, expected " + std::to_string(m);
        }
        if (problem.empty()) return std::nullopt;
        return "machine " + spec.name + " on " + print_family(f) + ": " + problem + "\nreplay: pph simulate --machine " +
               spec.name + " --in " + quoted(print_family(f)) + " --exhaustive" + mutation_flag(mutation);
    });
}

VvStats verify_vv(const std::vector<int>& ms, int seeds, std::uint64_t base_seed, int jobs) {
    VvStats stats;
    const auto useeds = static_cast<std::uint64_t>(seeds);

    // soundness with the full query construction, every function at m = 2
    stats.soundness = run_instances("vv:soundness:m2", 16 * useeds, jobs, [&](std::uint64_t i) -> std::optional<std::string> {
        const Family f = table_family({2}, i / useeds);
        const std::uint64_t seed = base_seed + i % useeds;
        if (!vv_decide(f, seed) || solve(ProblemKind::sat, f) == PromiseValue::one) return std::nullopt;
        return "isolation accepted unsatisfiable " + print_family(f) + "\nreplay: pph vv --in " +
               quoted(print_family(f)) + " --seed " + std::to_string(seed);
    });

    const auto start = Clock::now();
    Verdict complete{"vv:completeness", 0, 0, {}, 0, {}};
    Verdict isolate{"vv:isolation", 0, 0, {}, 0, {}};
    std::ostringstream note;
    for (int m : ms) {
        const int trials = 24 * m;
        std::vector<std::uint64_t> masks(useeds * static_cast<std::uint64_t>(trials));
        for (std::uint64_t s = 0; s < useeds; ++s) {
            const auto v = vv_trial_masks(m, base_seed + s);
            std::copy(v.begin(), v.end(), masks.begin() + static_cast<std::ptrdiff_t>(s * static_cast<std::uint64_t>(trials)));
        }
        const std::uint64_t functions = table_count({m}) - 1; // code 0 is unsatisfiable
        const std::uint64_t need = (2 * useeds + 2) / 3;      // ceil(2/3 · seeds)
        std::atomic<std::uint64_t> isolated_total{0};
        std::atomic<std::uint64_t> min_success{useeds}, min_isolated{useeds};
        const Verdict per_m = run_instances("vv:completeness:m" + std::to_string(m), functions, jobs,
                                            [&](std::uint64_t i) -> std::optional<std::string> {
            const std::uint64_t code = i + 1;
            const std::uint64_t table = packed_table(code, m);
            std::uint64_t success = 0, isolated = 0;
            for (std::uint64_t s = 0; s < useeds; ++s) {
                const VvFastResult r = vv_decide_masks(
                    table, std::span<const std::uint64_t>(masks).subspan(s * static_cast<std::uint64_t>(trials),
                                                                         static_cast<std::size_t>(trials)));
                success += r.output;
                isolated += r.first_trial_isolated;
            }
            isolated_total += isolated;
            for (auto* slot : {&min_success, &min_isolated}) {
                const std::uint64_t value = slot == &min_success ? success : isolated;
                std::uint64_t cur = *slot;
                while (value < cur && !slot->compare_exchange_weak(cur, value)) {}
            }
            if (success >= need) return std::nullopt;
            const Family f = table_family({m}, code);
            return "isolation succeeded on " + std::to_string(success) + "/" + std::to_string(useeds) + " seeds for " +
                   print_family(f) + ", need " + std::to_string(need) + "\nreplay: pph vv --in " +
                   quoted(print_family(f)) + " --seed " + std::to_string(base_seed);
        });
        complete.pass += per_m.pass;
        complete.fail += per_m.fail;
        if (complete.counterexample.empty()) complete.counterexample = per_m.counterexample;

        // aggregate first-trial isolation against p = 1/(8m), three standard errors below
        const double p = 1.0 / (8.0 * m);
        const double n = static_cast<double>(functions * useeds);
        const double observed = static_cast<double>(isolated_total.load()) / n;
        const double floor = p - 3.0 * std::sqrt(p * (1.0 - p) / n);
        const bool ok = observed >= floor;
        (ok ? isolate.pass : isolate.fail) += 1;
        if (!ok && isolate.counterexample.empty()) {
            isolate.counterexample = "m=" + std::to_string(m) + " first-trial isolation " + std::to_string(observed) +
                                     " below " + std::to_string(floor);
        }
        note << "VV m=" << m << " functions=" << functions << " seeds=" << useeds << " t=" << trials
             << " min_success=" << min_success.load() << "/" << useeds << " isolation_aggregate=" << observed
             << " isolation_min_per_f=" << static_cast<double>(min_isolated.load()) / static_cast<double>(useeds)
             << " reference=" << p << "\n";
    }
    complete.ms = elapsed_ms(start);
    isolate.ms = complete.ms;
    isolate.note = note.str();
    stats.completeness = std::move(complete);
    stats.isolation = std::move(isolate);
    return stats;
}

std::string write_counterexample(const std::string& dir, const Verdict& v) {
    std::filesystem::create_directories(dir);
    std::string file = v.name;
    for (char& c : file) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
    }
    const std::filesystem::path path = std::filesystem::path(dir) / (file + ".cex");
    std::ofstream out(path);
    out << format_verdict(v) << "\n" << v.counterexample << "\n";
    return path.string();
}

std::vector<Verdict> run_campaign(const CampaignOptions& o, const std::function<void(const Verdict&)>& report) {
    std::vector<Verdict> out;
    auto wanted = [&](const std::string& name) {
        if (o.only.empty()) return true;
        return std::any_of(o.only.begin(), o.only.end(),
                           [&](const std::string& p) { return name.rfind(p, 0) == 0; });
    };
    auto emit = [&](Verdict v) {
        if (!v.ok() && !o.cex_dir.empty()) write_counterexample(o.cex_dir, v);
        if (report) report(v);
        out.push_back(std::move(v));
    };
    const Mutation mu = o.mutation;
    const int max_m = o.nightly ? 4 : 3;

    for (const std::string& rule : rule_names()) {
        for (int m = 1; m <= max_m; ++m) {
            if (rule == "dual_uvaln" && m < 2) continue;
            const std::string name = "rule:" + rule + ":m" + std::to_string(m);
            if (wanted(name)) emit(verify_rule_exhaustive(rule, m, mu, o.jobs));
        }
    }
    for (const std::string& rule : rule_names()) {
        if (!is_family_rule(rule)) continue;
        if (wanted("rule2:" + rule)) emit(verify_rule_two_block(rule, 4, mu, o.jobs));
        if (wanted("lift:" + rule)) emit(verify_rule_lifts(rule, o.seed, 500, 100, mu, o.jobs));
    }
    for (int m = 1; m <= 3; ++m) {
        const std::string name = "gadget-promise:m" + std::to_string(m);
        if (wanted(name)) emit(verify_gadget_promise(m, mu, o.jobs));
    }
    if (wanted("intersections:(1,1)")) emit(verify_intersections_exhaustive(1, 1, o.jobs));
    if (wanted("intersections:(2,1)")) emit(verify_intersections_exhaustive(2, 1, o.jobs));
    if (wanted("intersections-sampled")) emit(verify_intersections_sampled(2, 2, o.seed, 2000, o.jobs));
    if (wanted("compiler")) emit(verify_compiler(o.seed, 100, o.jobs));
    for (const std::string& machine : {std::string("sat-via-val"), std::string("usat-via-uval")}) {
        if (wanted("machine:" + machine)) emit(verify_machine(machine, 3, mu, o.jobs));
    }
    if (wanted("vv")) {
        VvStats s = verify_vv({2, 3, 4}, 200, o.seed, o.jobs);
        emit(std::move(s.soundness));
        emit(std::move(s.completeness));
        emit(std::move(s.isolation));
    }
    if (wanted("hierarchy")) {
        const auto start = Clock::now();
        Verdict v{"hierarchy", 0, 0, {}, 0, {}};
        try {
            const Hierarchy h = build_hierarchy(o.jobs);
            for (const HierarchyEdge& e : h.edges) (e.verified || !e.needs_verification() ? v.pass : v.fail) += 1;
            if (!duality_symmetric(h)) {
                ++v.fail;
                v.counterexample = "the diagram is not invariant under the duality reflection";
            }
            if (v.fail > 0 && v.counterexample.empty()) v.counterexample = "a computable edge failed its witness check";
        } catch (const IncompleteRegistry& e) {
            ++v.fail;
            v.counterexample = e.what();
        }
        v.ms = elapsed_ms(start);
        emit(std::move(v));
    }
    return out;
}

} // namespace pph
