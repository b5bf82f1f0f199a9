#include "pph/expr.hpp"

#include "pph/error.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace pph {

namespace {

constexpr int kTrackedBlocks = 8;
constexpr int kTableVars = 6;

// Lane masks for the 64-entry table over b1_1..b1_6; lane bit j carries b1_{6-j}.
constexpr std::array<std::uint64_t, kTableVars> kLanePattern = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

} // namespace

struct Expr::Node {
    Kind kind = Kind::constant;
    bool value = false;
    VarRef var{};
    Expr a;
    Expr b;
    std::uint64_t size = 1;
    int max_block = 0;
    bool wide = false; // some variable lies in a block beyond kTrackedBlocks
    std::array<int, kTrackedBlocks> max_index{};
    bool has_table = false;
    std::uint64_t table = 0;
};

namespace {

std::uint64_t saturating_add(std::uint64_t x, std::uint64_t y) {
    return x > std::numeric_limits<std::uint64_t>::max() - y ? std::numeric_limits<std::uint64_t>::max() : x + y;
}

} // namespace

Expr Expr::constant(bool value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->value = value;
    n->has_table = true;
    n->table = value ? ~0ull : 0ull;
    return Expr(std::move(n));
}

Expr Expr::variable(VarRef v) {
    if (v.block < 1 || v.index < 1) {
        throw IndexError("variable b" + std::to_string(v.block) + "_" + std::to_string(v.index) +
                         " must have positive block and index");
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::variable;
    n->var = v;
    n->max_block = v.block;
    if (v.block <= kTrackedBlocks) {
        n->max_index[static_cast<std::size_t>(v.block - 1)] = v.index;
    } else {
        n->wide = true;
    }
    if (v.block == 1 && v.index <= kTableVars) {
        n->has_table = true;
        n->table = kLanePattern[static_cast<std::size_t>(kTableVars - v.index)];
    }
    return Expr(std::move(n));
}

Expr operator!(const Expr& e) {
    auto n = std::make_shared<Expr::Node>();
    const auto& c = *e.node_;
    n->kind = Expr::Kind::negation;
    n->a = e;
    n->size = saturating_add(c.size, 1);
    n->max_block = c.max_block;
    n->wide = c.wide;
    n->max_index = c.max_index;
    n->has_table = c.has_table;
    n->table = ~c.table;
    return Expr(std::move(n));
}

namespace {

template <typename Node>
void merge_binary(Node& n, const Node& l, const Node& r) {
    n.size = saturating_add(saturating_add(l.size, r.size), 1);
    n.max_block = std::max(l.max_block, r.max_block);
    n.wide = l.wide || r.wide;
    for (std::size_t i = 0; i < n.max_index.size(); ++i) {
        n.max_index[i] = std::max(l.max_index[i], r.max_index[i]);
    }
    n.has_table = l.has_table && r.has_table;
}

} // namespace

Expr operator&(const Expr& a, const Expr& b) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::conjunction;
    n->a = a;
    n->b = b;
    merge_binary(*n, *a.node_, *b.node_);
    n->table = a.node_->table & b.node_->table;
    return Expr(std::move(n));
}

Expr operator|(const Expr& a, const Expr& b) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = Expr::Kind::disjunction;
    n->a = a;
    n->b = b;
    merge_binary(*n, *a.node_, *b.node_);
    n->table = a.node_->table | b.node_->table;
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

bool Expr::value() const {
    if (node_->kind != Kind::constant) throw ShapeError("value() on a non-constant node");
    return node_->value;
}

VarRef Expr::var() const {
    if (node_->kind != Kind::variable) throw ShapeError("var() on a non-variable node");
    return node_->var;
}

const Expr& Expr::operand() const {
    if (node_->kind != Kind::negation) throw ShapeError("operand() on a non-negation node");
    return node_->a;
}

const Expr& Expr::lhs() const {
    if (node_->kind != Kind::conjunction && node_->kind != Kind::disjunction) {
        throw ShapeError("lhs() on a non-binary node");
    }
    return node_->a;
}

const Expr& Expr::rhs() const {
    if (node_->kind != Kind::conjunction && node_->kind != Kind::disjunction) {
        throw ShapeError("rhs() on a non-binary node");
    }
    return node_->b;
}

std::uint64_t Expr::size() const noexcept { return node_->size; }

int Expr::max_block() const noexcept { return node_->max_block; }

int Expr::max_index(int block) const {
    if (block < 1) return 0;
    if (block <= kTrackedBlocks) return node_->max_index[static_cast<std::size_t>(block - 1)];
    if (!node_->wide) return 0;
    int best = 0;
    std::unordered_set<const void*> seen;
    std::vector<const Expr*> stack{this};
    while (!stack.empty()) {
        const Expr* e = stack.back();
        stack.pop_back();
        if (!seen.insert(e->id()).second) continue;
        switch (e->kind()) {
        case Kind::constant: break;
        case Kind::variable:
            if (e->var().block == block) best = std::max(best, e->var().index);
            break;
        case Kind::negation: stack.push_back(&e->operand()); break;
        default:
            stack.push_back(&e->lhs());
            stack.push_back(&e->rhs());
        }
    }
    return best;
}

std::optional<std::uint64_t> Expr::small_table() const noexcept {
    if (!node_->has_table) return std::nullopt;
    return node_->table;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.size != y.size) return false;
    switch (x.kind) {
    case Expr::Kind::constant: return x.value == y.value;
    case Expr::Kind::variable: return x.var == y.var;
    case Expr::Kind::negation: return x.a == y.a;
    default: return x.a == y.a && x.b == y.b;
    }
}

Expr conjoin_all(std::span<const Expr> parts) {
    if (parts.empty()) return Expr::constant(true);
    Expr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = acc & parts[i];
    return acc;
}

Expr disjoin_all(std::span<const Expr> parts) {
    if (parts.empty()) return Expr::constant(false);
    Expr acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = acc | parts[i];
    return acc;
}

namespace {

class Rewriter {
public:
    explicit Rewriter(const std::function<Expr(VarRef)>& replace) : replace_(replace) {}

    Expr run(const Expr& e) {
        if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
        Expr out = [&] {
            switch (e.kind()) {
            case Expr::Kind::constant: return e;
            case Expr::Kind::variable: return replace_(e.var());
            case Expr::Kind::negation: return !run(e.operand());
            case Expr::Kind::conjunction: return run(e.lhs()) & run(e.rhs());
            case Expr::Kind::disjunction: return run(e.lhs()) | run(e.rhs());
            }
            return e;
        }();
        memo_.emplace(e.id(), out);
        return out;
    }

private:
    const std::function<Expr(VarRef)>& replace_;
    std::unordered_map<const void*, Expr> memo_;
};

void print_into(std::string& out, const Expr& e, const std::function<std::string(VarRef)>& name) {
    switch (e.kind()) {
    case Expr::Kind::constant: out += e.value() ? '1' : '0'; return;
    case Expr::Kind::variable: out += name(e.var()); return;
    case Expr::Kind::negation:
        out += '!';
        print_into(out, e.operand(), name);
        return;
    case Expr::Kind::conjunction:
    case Expr::Kind::disjunction:
        out += '(';
        print_into(out, e.lhs(), name);
        out += e.kind() == Expr::Kind::conjunction ? " & " : " | ";
        print_into(out, e.rhs(), name);
        out += ')';
        return;
    }
}

std::string default_name(VarRef v) {
    return "b" + std::to_string(v.block) + "_" + std::to_string(v.index);
}

} // namespace

Expr rewrite_vars(const Expr& e, const std::function<Expr(VarRef)>& replace) {
    Rewriter r(replace);
    return r.run(e);
}

std::string to_string(const Expr& e, const std::function<std::string(VarRef)>& name) {
    std::string out;
    print_into(out, e, name);
    return out;
}

std::string to_string(const Expr& e) { return to_string(e, default_name); }

// ---------------------------------------------------------------------------
// Family

Family::Family(std::vector<int> widths, Expr body) : widths_(std::move(widths)), body_(std::move(body)) {
    if (widths_.empty()) throw ShapeError("a family needs at least one block");
    for (int w : widths_) {
        if (w < 0) throw ShapeError("block widths must be non-negative");
    }
    const int n = blocks();
    if (body_.max_block() > n) {
        throw WidthError("body references block " + std::to_string(body_.max_block()) + " but only " +
                         std::to_string(n) + " declared");
    }
    for (int b = 1; b <= n; ++b) {
        const int idx = body_.max_index(b);
        if (idx > widths_[static_cast<std::size_t>(b - 1)]) {
            throw WidthError("b" + std::to_string(b) + "_" + std::to_string(idx) + " exceeds width " +
                             std::to_string(widths_[static_cast<std::size_t>(b - 1)]) + " of block " +
                             std::to_string(b));
        }
    }
}

int Family::total_width() const noexcept { return std::accumulate(widths_.begin(), widths_.end(), 0); }

bool operator==(const Family& a, const Family& b) { return a.widths_ == b.widths_ && a.body_ == b.body_; }

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t& pos, const AtomResolver& resolve)
        : text_(text), pos_(pos), resolve_(resolve) {}

    Expr expr() {
        Expr acc = term();
        while (peek() == '|') {
            ++pos_;
            acc = acc | term();
        }
        return acc;
    }

private:
    Expr term() {
        Expr acc = factor();
        while (peek() == '&') {
            ++pos_;
            acc = acc & factor();
        }
        return acc;
    }

    Expr factor() {
        const char c = peek();
        const std::size_t at = pos_;
        if (c == '!') {
            ++pos_;
            return !factor();
        }
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            if (peek() != ')') throw ParseError(pos_, "expected ')'");
            ++pos_;
            return inner;
        }
        if (c == '0' || c == '1') {
            ++pos_;
            if (pos_ < text_.size() && (is_digit(text_[pos_]) || is_ident_char(text_[pos_]))) {
                throw ParseError(at, "constants are the single digits 0 and 1");
            }
            return Expr::constant(c == '1');
        }
        if (is_ident_start(c)) {
            std::size_t end = pos_;
            while (end < text_.size() && is_ident_char(text_[end])) ++end;
            const std::string_view name = text_.substr(pos_, end - pos_);
            auto resolved = resolve_(name, at);
            if (!resolved) throw ParseError(at, "unknown identifier '" + std::string(name) + "'");
            pos_ = end;
            return *resolved;
        }
        if (c == '\0') throw ParseError(at, "unexpected end of input");
        throw ParseError(at, std::string("unexpected character '") + c + "'");
    }

    // Skips whitespace; returns the next character or '\0' at end.
    char peek() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    std::string_view text_;
    std::size_t& pos_;
    const AtomResolver& resolve_;
};

void skip_space(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

// Parses a decimal integer at `pos` (no sign). Returns nullopt if no digit.
std::optional<int> read_int(std::string_view text, std::size_t& pos) {
    const std::size_t start = pos;
    long long value = 0;
    while (pos < text.size() && is_digit(text[pos])) {
        value = value * 10 + (text[pos] - '0');
        if (value > 1'000'000) throw ParseError(start, "integer too large");
        ++pos;
    }
    if (pos == start) return std::nullopt;
    return static_cast<int>(value);
}

// Matches "<prefix>INT_INT" exactly; used for b-variables.
std::optional<VarRef> match_block_var(std::string_view name) {
    if (name.size() < 4 || name[0] != 'b') return std::nullopt;
    std::size_t pos = 1;
    auto block = read_int(name, pos);
    if (!block || pos >= name.size() || name[pos] != '_') return std::nullopt;
    ++pos;
    auto index = read_int(name, pos);
    if (!index || pos != name.size()) return std::nullopt;
    return VarRef{*block, *index};
}

} // namespace

Expr parse_expression(std::string_view text, std::size_t& pos, const AtomResolver& resolve) {
    ExprParser p(text, pos, resolve);
    return p.expr();
}

Family parse_family(std::string_view text) {
    std::size_t pos = 0;
    skip_space(text, pos);
    constexpr std::string_view kKeyword = "blocks";
    if (text.substr(pos, kKeyword.size()) != kKeyword) throw ParseError(pos, "expected 'blocks'");
    pos += kKeyword.size();

    std::vector<int> widths;
    while (true) {
        skip_space(text, pos);
        auto w = read_int(text, pos);
        if (!w) throw ParseError(pos, "expected a block width");
        widths.push_back(*w);
        skip_space(text, pos);
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        break;
    }
    if (pos >= text.size() || text[pos] != ';') throw ParseError(pos, "expected ';' after block widths");
    ++pos;

    const AtomResolver resolve = [&widths](std::string_view name, std::size_t at) -> std::optional<Expr> {
        auto v = match_block_var(name);
        if (!v) return std::nullopt;
        if (v->block < 1 || v->index < 1) throw ParseError(at, "block and index are 1-based");
        if (v->block > static_cast<int>(widths.size())) {
            throw WidthError(std::string(name) + " refers to undeclared block " + std::to_string(v->block), at);
        }
        if (v->index > widths[static_cast<std::size_t>(v->block - 1)]) {
            throw WidthError(std::string(name) + " exceeds width " +
                                 std::to_string(widths[static_cast<std::size_t>(v->block - 1)]) + " of block " +
                                 std::to_string(v->block),
                             at);
        }
        return Expr::variable(*v);
    };
    Expr body = parse_expression(text, pos, resolve);
    skip_space(text, pos);
    if (pos != text.size()) throw ParseError(pos, "unexpected trailing input");
    return Family(std::move(widths), std::move(body));
}

std::string print_family(const Family& f) {
    std::string out = "blocks ";
    for (std::size_t i = 0; i < f.widths().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(f.widths()[i]);
    }
    out += "; ";
    out += to_string(f.body());
    return out;
}

// ---------------------------------------------------------------------------
// Evaluation and structural transforms

namespace {

bool eval_tree(const Expr& e, const Assignment& a) {
    switch (e.kind()) {
    case Expr::Kind::constant: return e.value();
    case Expr::Kind::variable: {
        const VarRef v = e.var();
        return a[static_cast<std::size_t>(v.block - 1)][static_cast<std::size_t>(v.index - 1)];
    }
    case Expr::Kind::negation: return !eval_tree(e.operand(), a);
    case Expr::Kind::conjunction: return eval_tree(e.lhs(), a) && eval_tree(e.rhs(), a);
    case Expr::Kind::disjunction: return eval_tree(e.lhs(), a) || eval_tree(e.rhs(), a);
    }
    return false;
}

void require_block(const Family& f, int block) {
    if (block < 1 || block > f.blocks()) {
        throw IndexError("block " + std::to_string(block) + " out of range 1.." + std::to_string(f.blocks()));
    }
}

Family fix_prefix(const Family& f, const Bits& bits, bool keep_empty) {
    const int k = static_cast<int>(bits.size());
    const int m1 = f.width(1);
    if (k > m1) {
        throw ShapeError("cannot fix " + std::to_string(k) + " bits of a width-" + std::to_string(m1) + " block");
    }
    const bool drop = !keep_empty && k == m1 && f.blocks() > 1;
    Expr body = rewrite_vars(f.body(), [&](VarRef v) {
        if (v.block == 1) {
            if (v.index <= k) return Expr::constant(bits[static_cast<std::size_t>(v.index - 1)]);
            return Expr::variable(1, v.index - k);
        }
        return drop ? Expr::variable(v.block - 1, v.index) : Expr::variable(v);
    });
    std::vector<int> widths = f.widths();
    if (drop) {
        widths.erase(widths.begin());
    } else {
        widths[0] = m1 - k;
    }
    return Family(std::move(widths), std::move(body));
}

} // namespace

bool evaluate(const Family& f, const Assignment& a) {
    if (a.size() != f.widths().size()) {
        throw ShapeError("assignment has " + std::to_string(a.size()) + " blocks, family has " +
                         std::to_string(f.blocks()));
    }
    for (std::size_t b = 0; b < a.size(); ++b) {
        if (static_cast<int>(a[b].size()) != f.widths()[b]) {
            throw ShapeError("assignment block " + std::to_string(b + 1) + " has length " +
                             std::to_string(a[b].size()) + ", expected " + std::to_string(f.widths()[b]));
        }
    }
    return eval_tree(f.body(), a);
}

Family fix_first_block_prefix(const Family& f, const Bits& bits) { return fix_prefix(f, bits, false); }

Family fix_first_block_prefix_keep(const Family& f, const Bits& bits) { return fix_prefix(f, bits, true); }

Family bind_block(const Family& f, int block, const Bits& bits) {
    require_block(f, block);
    if (static_cast<int>(bits.size()) != f.width(block)) {
        throw ShapeError("binding block " + std::to_string(block) + " of width " + std::to_string(f.width(block)) +
                         " with " + std::to_string(bits.size()) + " bits");
    }
    Expr body = rewrite_vars(f.body(), [&](VarRef v) {
        if (v.block == block) return Expr::constant(bits[static_cast<std::size_t>(v.index - 1)]);
        if (v.block > block) return Expr::variable(v.block - 1, v.index);
        return Expr::variable(v);
    });
    std::vector<int> widths = f.widths();
    widths.erase(widths.begin() + (block - 1));
    if (widths.empty()) widths.push_back(0);
    return Family(std::move(widths), std::move(body));
}

Family negate_output(const Family& f) { return Family(f.widths(), !f.body()); }

Family negate_block_inputs(const Family& f, int block) {
    require_block(f, block);
    Expr body = rewrite_vars(f.body(), [&](VarRef v) {
        return v.block == block ? !Expr::variable(v) : Expr::variable(v);
    });
    return Family(f.widths(), std::move(body));
}

Family add_leading_variable(const Family& f, int block) {
    require_block(f, block);
    Expr body = rewrite_vars(f.body(), [&](VarRef v) {
        return v.block == block ? Expr::variable(block, v.index + 1) : Expr::variable(v);
    });
    std::vector<int> widths = f.widths();
    ++widths[static_cast<std::size_t>(block - 1)];
    return Family(std::move(widths), std::move(body));
}

Family from_truth_table(std::vector<int> widths, const Bits& table) {
    if (widths.empty()) throw ShapeError("a family needs at least one block");
    int total = 0;
    for (int w : widths) {
        if (w < 0) throw ShapeError("block widths must be non-negative");
        total += w;
    }
    if (total > 24) throw ShapeError("truth tables are limited to 24 variables");
    if (table.size() != (std::size_t{1} << total)) {
        throw ShapeError("table length " + std::to_string(table.size()) + " does not match 2^" +
                         std::to_string(total));
    }
    std::vector<VarRef> positions; // global position, most significant first
    for (std::size_t b = 0; b < widths.size(); ++b) {
        for (int i = 1; i <= widths[b]; ++i) positions.push_back({static_cast<int>(b + 1), i});
    }
    std::vector<Expr> minterms;
    for (std::size_t row = 0; row < table.size(); ++row) {
        if (!table[row]) continue;
        std::vector<Expr> literals;
        literals.reserve(positions.size());
        for (std::size_t p = 0; p < positions.size(); ++p) {
            const bool bit = (row >> (positions.size() - 1 - p)) & 1u;
            Expr v = Expr::variable(positions[p]);
            literals.push_back(bit ? v : !v);
        }
        minterms.push_back(conjoin_all(literals));
    }
    return Family(std::move(widths), disjoin_all(minterms));
}

Bits to_bits(std::uint64_t value, int width) {
    Bits out(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) out[static_cast<std::size_t>(i)] = (value >> (width - 1 - i)) & 1u;
    return out;
}

std::uint64_t from_bits(const Bits& bits) {
    std::uint64_t v = 0;
    for (bool b : bits) v = (v << 1) | (b ? 1u : 0u);
    return v;
}

std::string bits_to_string(const Bits& bits) {
    std::string s;
    s.reserve(bits.size());
    for (bool b : bits) s += b ? '1' : '0';
    return s;
}

Bits parse_bits(std::string_view text) {
    Bits out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '0' && c != '1') throw ParseError(i, "expected a string of 0/1 characters");
        out.push_back(c == '1');
    }
    return out;
}

} // namespace pph
