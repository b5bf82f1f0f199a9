#include "pph/reductions.hpp"

#include "pph/error.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>

namespace pph {

namespace {

constexpr std::array kMutations = {Mutation::none,
                                   Mutation::gadget_drop_negation,
                                   Mutation::gadget_fix_zero,
                                   Mutation::gadget_drop_last_conjunct,
                                   Mutation::sat_to_maxval_polarity,
                                   Mutation::machine_skip_final_eval};

constexpr std::array<std::string_view, 6> kMutationNames = {"none",
                                                            "gadget_drop_negation",
                                                            "gadget_fix_zero",
                                                            "gadget_drop_last_conjunct",
                                                            "sat_to_maxval_polarity",
                                                            "machine_skip_final_eval"};

} // namespace

std::span<const Mutation> all_mutations() { return std::span(kMutations).subspan(1); }

std::string to_string(Mutation m) { return std::string(kMutationNames[static_cast<std::size_t>(m)]); }

std::optional<Mutation> parse_mutation(std::string_view name) {
    for (std::size_t i = 0; i < kMutationNames.size(); ++i) {
        if (kMutationNames[i] == name) return kMutations[i];
    }
    return std::nullopt;
}

std::string to_string(RuleKind k) { return k == RuleKind::equality ? "equality" : "containment"; }

namespace {

void require_first_block(const Family& f, const char* rule) {
    if (f.width(1) < 1) throw ShapeError(std::string(rule) + " needs a nonempty first block");
}

Family sat_to_maxval(const Family& f, Mutation mutation) {
    const Family g = add_leading_variable(f, 1);
    const Expr x1 = Expr::variable(1, 1);
    const Expr guard = mutation == Mutation::sat_to_maxval_polarity ? x1 : !x1;
    return Family(g.widths(), g.body() | guard);
}

Family maxval_to_sat(const Family& f) {
    require_first_block(f, "maxval_to_sat");
    return Family(f.widths(), f.body() & Expr::variable(1, 1));
}

Family uval_to_usat(const Family& f) {
    require_first_block(f, "uval_to_usat");
    return fix_first_block_prefix_keep(f, Bits{true});
}

// Level-n gadget. Output block j ≥ 2 is laid out as
//   [f's block j (main conjunct)] [y, only in block 2] [m copies of f's block j-1, if j-1 ≥ 2]
// so each conjunct's inner quantifiers land one level deeper than in f.
Family maxval_to_uval_gadget(const Family& f, Mutation mutation) {
    const int n = f.blocks();
    const int m = f.width(1);
    const int mp = m * (m - 1) / 2;
    const auto& w = f.widths();

    std::vector<int> out(static_cast<std::size_t>(n + 1), 0);
    out[0] = m;
    for (int j = 2; j <= n + 1; ++j) {
        int width = 0;
        if (j <= n) width += w[static_cast<std::size_t>(j - 1)];
        if (j == 2) width += mp;
        if (j - 1 >= 2) width += m * w[static_cast<std::size_t>(j - 2)];
        out[static_cast<std::size_t>(j - 1)] = width;
    }

    std::vector<Expr> xs, ys;
    for (int i = 1; i <= m; ++i) xs.push_back(Expr::variable(1, i));
    const int y_base = n >= 2 ? w[1] : 0;
    for (int k = 1; k <= mp; ++k) ys.push_back(Expr::variable(2, y_base + k));

    auto instance = [&](const std::vector<Expr>& args, int copy) {
        return rewrite_vars(f.body(), [&](VarRef v) {
            if (v.block == 1) return args[static_cast<std::size_t>(v.index - 1)];
            if (copy == 0) return Expr::variable(v);
            const int k = v.block;
            const int base = k + 1 <= n ? w[static_cast<std::size_t>(k)] : 0;
            return Expr::variable(k + 1, base + (copy - 1) * w[static_cast<std::size_t>(k - 1)] + v.index);
        });
    };
    return Family(std::move(out), maxval_gadget_body(m, instance, xs, ys, mutation));
}

struct RuleShape {
    ProblemKind source;
    ProblemKind target;
    RuleKind kind;
    bool dualizing;
    int min_level;
    int level_shift;
};

const std::map<std::string, RuleShape, std::less<>>& shapes() {
    using K = ProblemKind;
    constexpr auto eq = RuleKind::equality;
    constexpr auto sub = RuleKind::containment;
    static const std::map<std::string, RuleShape, std::less<>> table = {
        {"dual_sat", {K::sat, K::cosat, eq, true, 1, 0}},
        {"dual_maxval", {K::maxval, K::minval, eq, true, 1, 0}},
        {"dual_val", {K::val, K::val, eq, true, 1, 0}},
        {"dual_usat", {K::usat, K::cousat, eq, true, 1, 0}},
        {"dual_uval", {K::uval, K::uval, eq, true, 1, 0}},
        {"dual_uvaln", {K::uval, K::uval, eq, true, 2, 0}},
        {"sat_to_maxval", {K::sat, K::maxval, eq, false, 1, 0}},
        {"maxval_to_sat", {K::maxval, K::sat, sub, false, 1, 0}},
        {"uval_to_val", {K::uval, K::val, sub, false, 1, 0}},
        {"val_to_maxval", {K::val, K::maxval, sub, false, 1, 0}},
        {"uval_to_usat", {K::uval, K::usat, sub, false, 1, 0}},
        {"usat_to_sat", {K::usat, K::sat, sub, false, 1, 0}},
        {"maxval_to_uvaln1", {K::maxval, K::uval, sub, false, 1, 1}},
    };
    return table;
}

std::function<Family(const Family&)> transform_for(std::string_view name, Mutation mutation) {
    if (name == "dual_sat" || name == "dual_usat") return negate_output;
    if (name == "dual_maxval" || name == "dual_val" || name == "dual_uval" || name == "dual_uvaln") {
        return [](const Family& f) { return negate_block_inputs(f, 1); };
    }
    if (name == "sat_to_maxval") return [mutation](const Family& f) { return sat_to_maxval(f, mutation); };
    if (name == "maxval_to_sat") return maxval_to_sat;
    if (name == "uval_to_usat") return uval_to_usat;
    if (name == "maxval_to_uvaln1") {
        return [mutation](const Family& f) { return maxval_to_uval_gadget(f, mutation); };
    }
    return [](const Family& f) { return f; };
}

// Every level-n transform keeps the block count except the gadget; checking
// that up front turns a mismatched application into a clear error.
std::function<Family(const Family&)> guarded(std::string name, int level,
                                             std::function<Family(const Family&)> inner) {
    return [name = std::move(name), level, inner = std::move(inner)](const Family& f) {
        if (f.blocks() != level) {
            throw LevelMismatch(name + " at level " + std::to_string(level) + " applied to a " +
                                std::to_string(f.blocks()) + "-block family");
        }
        return inner(f);
    };
}

} // namespace

const std::vector<std::string>& rule_names() {
    static const std::vector<std::string> names = {
        "dual_sat",     "dual_maxval",  "dual_val",     "dual_usat",     "dual_uval",
        "dual_uvaln",   "sat_to_maxval", "maxval_to_sat", "uval_to_val",  "val_to_maxval",
        "uval_to_usat", "usat_to_sat",  "maxval_to_uvaln1", "pi1_to_uval"};
    return names;
}

bool is_family_rule(std::string_view name) { return shapes().contains(name); }

ReductionRule make_rule(std::string_view name, int level, Mutation mutation) {
    const auto it = shapes().find(name);
    if (it == shapes().end()) {
        if (name == "pi1_to_uval") throw ShapeError("pi1_to_uval maps bit strings; use apply_pi1_to_uval");
        throw UnknownRule(std::string(name));
    }
    const RuleShape& s = it->second;
    if (level < s.min_level) {
        throw ShapeError(std::string(name) + " needs level >= " + std::to_string(s.min_level));
    }
    ReductionRule r;
    r.name = std::string(name);
    r.source = {s.source, level};
    r.target = {s.target, level + s.level_shift};
    r.kind = s.kind;
    r.dualizing = s.dualizing;
    r.transform = guarded(r.name, level, transform_for(name, mutation));
    return r;
}

Family apply_rule(std::string_view name, const Family& f, Mutation mutation) {
    return make_rule(name, f.blocks(), mutation).transform(f);
}

RuleCheck check_rule(const ReductionRule& rule, const Family& f, std::uint64_t cap) {
    RuleCheck c;
    const PromiseValue source = solve(rule.source, f, cap);
    c.expected = rule.dualizing ? dual_value(source) : source;
    c.actual = solve(rule.target, rule.transform(f), cap);
    c.pass = rule.kind == RuleKind::equality ? c.actual == c.expected : is_subset(c.actual, c.expected);
    return c;
}

RuleCheck check_rule(std::string_view name, const Family& f, std::uint64_t cap) {
    return check_rule(make_rule(name, f.blocks()), f, cap);
}

ReductionRule compose_rules(const ReductionRule& r1, const ReductionRule& r2) {
    if (!(r1.target == r2.source)) {
        throw TypeMismatch(r1.name + " ends at " + to_string(r1.target) + " but " + r2.name + " starts at " +
                           to_string(r2.source));
    }
    ReductionRule r;
    r.name = r1.name + ";" + r2.name;
    r.source = r1.source;
    r.target = r2.target;
    r.kind = r1.kind == RuleKind::equality && r2.kind == RuleKind::equality ? RuleKind::equality
                                                                            : RuleKind::containment;
    r.dualizing = r1.dualizing != r2.dualizing;
    r.transform = [t1 = r1.transform, t2 = r2.transform](const Family& f) { return t2(t1(f)); };
    return r;
}

ReductionRule identity_rule(const ProblemId& p) {
    ReductionRule r;
    r.name = "id_" + to_string(p);
    r.source = p;
    r.target = p;
    r.kind = RuleKind::equality;
    r.transform = [](const Family& f) { return f; };
    return r;
}

ReductionRule converse(const ReductionRule& rule) {
    if (!rule.dualizing || rule.kind != RuleKind::equality || rule.source.level != rule.target.level) {
        throw TypeMismatch(rule.name + " has no converse");
    }
    ReductionRule r = rule;
    r.name = rule.name + "^-1";
    std::swap(r.source, r.target);
    return r;
}

ReductionRule rule_chain(std::string_view text, int level, Mutation mutation) {
    std::optional<ReductionRule> acc;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(';', start), text.size());
        std::string_view part = text.substr(start, end - start);
        while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
        while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
        const int at = acc ? acc->target.level : level;
        constexpr std::string_view kConverse = "converse(";
        ReductionRule r = part.starts_with(kConverse) && part.ends_with(")")
                              ? converse(make_rule(part.substr(kConverse.size(), part.size() - kConverse.size() - 1),
                                                   at, mutation))
                              : make_rule(part, at, mutation);
        acc = acc ? compose_rules(*acc, r) : r;
        start = end + 1;
    }
    return *acc;
}

Family apply_pi1_to_uval(const Bits& x) {
    if (x.empty()) throw ShapeError("pi1 of the empty string is undefined");
    const Expr y = Expr::variable(1, 1);
    return Family({1}, x[0] ? y : !y);
}

Expr maxval_gadget_body(int m, const std::function<Expr(const std::vector<Expr>&, int)>& instance,
                        const std::vector<Expr>& xs, const std::vector<Expr>& ys, Mutation mutation) {
    Expr g = instance(xs, 0);
    const int last = mutation == Mutation::gadget_drop_last_conjunct ? m - 1 : m;
    int offset = 0; // Σ_{k<i} (m-k)
    for (int i = 1; i <= last; ++i) {
        std::vector<Expr> args;
        args.reserve(static_cast<std::size_t>(m));
        for (int l = 1; l < i; ++l) args.push_back(xs[static_cast<std::size_t>(l - 1)]);
        args.push_back(Expr::constant(mutation != Mutation::gadget_fix_zero));
        for (int l = i + 1; l <= m; ++l) args.push_back(ys[static_cast<std::size_t>(offset + (l - i - 1))]);
        const Expr fi = instance(args, i);
        const Expr xi = xs[static_cast<std::size_t>(i - 1)];
        g = g & (xi | (mutation == Mutation::gadget_drop_negation ? fi : !fi));
        offset += m - i;
    }
    return g;
}

Family sat_to_uval2_parametric(const Family& f) {
    const int m = f.width(1) + 1;
    const int mp = m * (m - 1) / 2;
    std::vector<int> widths = {m, mp};
    widths.insert(widths.end(), f.widths().begin() + 1, f.widths().end());

    std::vector<Expr> xs, ys;
    for (int i = 1; i <= m; ++i) xs.push_back(Expr::variable(1, i));
    for (int k = 1; k <= mp; ++k) ys.push_back(Expr::variable(2, k));

    // h(x₁, x) = f(x, params) ∨ ¬x₁, instantiated at the given first-block args.
    auto instance = [&](const std::vector<Expr>& args, int) {
        const Expr body = rewrite_vars(f.body(), [&](VarRef v) {
            if (v.block == 1) return args[static_cast<std::size_t>(v.index)];
            return Expr::variable(v.block + 1, v.index);
        });
        return body | !args[0];
    };
    return Family(std::move(widths), maxval_gadget_body(m, instance, xs, ys));
}

namespace {

Family intersection(const Family& g, const Family& h, const Bits& x) {
    for (const Family* p : {&g, &h}) {
        if (p->blocks() != 2) throw ShapeError("intersection witnesses must have two blocks");
        if (p->width(1) != static_cast<int>(x.size())) {
            throw ShapeError("x has " + std::to_string(x.size()) + " bits, witness x-block has width " +
                             std::to_string(p->width(1)));
        }
    }
    const int wy = std::max(g.width(2), h.width(2));
    auto shifted = [&](const Family& p) {
        const Family bound = bind_block(p, 1, x);
        return rewrite_vars(bound.body(), [](VarRef v) { return Expr::variable(1, v.index + 1); });
    };
    const Expr i = Expr::variable(1, 1);
    const Expr not_i = !i;
    return Family({wy + 1}, (i & shifted(g)) | (not_i & !shifted(h)));
}

} // namespace

Family build_val_intersection(const Family& g, const Family& h, const Bits& x) { return intersection(g, h, x); }

Family build_uval_intersection(const Family& g, const Family& h, const Bits& x) { return intersection(g, h, x); }

} // namespace pph
