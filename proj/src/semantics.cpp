#include "pph/semantics.hpp"

#include "pph/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <unordered_map>

namespace pph {

PromiseValue dual_value(PromiseValue v) noexcept {
    switch (v) {
    case PromiseValue::zero: return PromiseValue::one;
    case PromiseValue::one: return PromiseValue::zero;
    case PromiseValue::both: return PromiseValue::both;
    }
    return v;
}

PromiseValue singleton(bool bit) noexcept { return bit ? PromiseValue::one : PromiseValue::zero; }

bool contains(PromiseValue v, bool bit) noexcept {
    return (static_cast<unsigned>(v) >> (bit ? 1 : 0)) & 1u;
}

bool is_subset(PromiseValue inner, PromiseValue outer) noexcept {
    return (static_cast<unsigned>(inner) & ~static_cast<unsigned>(outer)) == 0;
}

PromiseValue set_union(PromiseValue a, PromiseValue b) noexcept {
    return static_cast<PromiseValue>(static_cast<unsigned>(a) | static_cast<unsigned>(b));
}

std::string to_string(PromiseValue v) {
    switch (v) {
    case PromiseValue::zero: return "ZERO";
    case PromiseValue::one: return "ONE";
    case PromiseValue::both: return "BOTH";
    }
    return "?";
}

std::string to_string(ProblemKind k) {
    switch (k) {
    case ProblemKind::sat: return "SAT";
    case ProblemKind::cosat: return "COSAT";
    case ProblemKind::maxval: return "MAXVAL";
    case ProblemKind::minval: return "MINVAL";
    case ProblemKind::val: return "VAL";
    case ProblemKind::usat: return "USAT";
    case ProblemKind::cousat: return "COUSAT";
    case ProblemKind::uval: return "UVAL";
    }
    return "?";
}

std::string to_string(const ProblemId& p) {
    std::string s = to_string(p.kind);
    if (p.level != 1) s += std::to_string(p.level);
    return s;
}

std::optional<ProblemKind> parse_problem_kind(std::string_view name) {
    std::string upper;
    for (char c : name) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    static const std::array<ProblemKind, 8> all = {ProblemKind::sat,  ProblemKind::cosat,  ProblemKind::maxval,
                                                   ProblemKind::minval, ProblemKind::val,  ProblemKind::usat,
                                                   ProblemKind::cousat, ProblemKind::uval};
    for (ProblemKind k : all) {
        if (to_string(k) == upper) return k;
    }
    return std::nullopt;
}

std::uint64_t TruthTable::count() const noexcept {
    std::uint64_t n = 0;
    for (auto w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
    return n;
}

namespace {

constexpr std::array<std::uint64_t, 6> kLanePattern = {
    0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
    0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
};

std::uint64_t low_mask(std::uint64_t entries) { return entries >= 64 ? ~0ull : (1ull << entries) - 1; }

// Straight-line program over 64-lane words; each distinct node is one slot.
class Program {
public:
    Program(const Family& f) {
        offsets_.push_back(0);
        for (int w : f.widths()) offsets_.push_back(offsets_.back() + w);
        total_ = offsets_.back();
        root_ = emit(f.body());
    }

    // Evaluates assignments [64 * word, 64 * word + 63].
    std::uint64_t run(std::uint64_t word, std::vector<std::uint64_t>& slots) const {
        slots.resize(code_.size());
        const std::uint64_t base = word << 6;
        for (std::size_t i = 0; i < code_.size(); ++i) {
            const Op& op = code_[i];
            switch (op.kind) {
            case Expr::Kind::constant: slots[i] = op.arg ? ~0ull : 0ull; break;
            case Expr::Kind::variable:
                slots[i] = op.arg < 6 ? kLanePattern[op.arg] : (((base >> op.arg) & 1u) ? ~0ull : 0ull);
                break;
            case Expr::Kind::negation: slots[i] = ~slots[op.a]; break;
            case Expr::Kind::conjunction: slots[i] = slots[op.a] & slots[op.b]; break;
            case Expr::Kind::disjunction: slots[i] = slots[op.a] | slots[op.b]; break;
            }
        }
        return slots[root_];
    }

private:
    struct Op {
        Expr::Kind kind;
        std::uint32_t a = 0;
        std::uint32_t b = 0;
        std::uint32_t arg = 0; // constant value or packed bit position
    };

    std::uint32_t emit(const Expr& e) {
        if (auto it = slot_of_.find(e.id()); it != slot_of_.end()) return it->second;
        Op op{e.kind()};
        switch (e.kind()) {
        case Expr::Kind::constant: op.arg = e.value() ? 1 : 0; break;
        case Expr::Kind::variable: {
            const VarRef v = e.var();
            const int global = offsets_[static_cast<std::size_t>(v.block - 1)] + v.index - 1;
            op.arg = static_cast<std::uint32_t>(total_ - 1 - global);
            break;
        }
        case Expr::Kind::negation: op.a = emit(e.operand()); break;
        default:
            op.a = emit(e.lhs());
            op.b = emit(e.rhs());
        }
        code_.push_back(op);
        const auto slot = static_cast<std::uint32_t>(code_.size() - 1);
        slot_of_.emplace(e.id(), slot);
        return slot;
    }

    std::vector<int> offsets_;
    int total_ = 0;
    std::vector<Op> code_;
    std::unordered_map<const void*, std::uint32_t> slot_of_;
    std::uint32_t root_ = 0;
};

void check_cap(const Family& f, std::uint64_t cap) {
    const int t = f.total_width();
    if (t > 62 || (std::uint64_t{1} << t) > cap) {
        throw CapExceeded("2^" + std::to_string(t) + " assignments exceed the enumeration cap of " +
                          std::to_string(cap));
    }
}

// Packed bit vector used while quantifying blocks away.
struct Bitset {
    int width = 0; // log2 of the number of entries
    std::vector<std::uint64_t> words;

    std::uint64_t entries() const { return std::uint64_t{1} << width; }
    bool at(std::uint64_t i) const { return (words[i >> 6] >> (i & 63)) & 1u; }
};

Bitset table_bits(const Family& f, std::uint64_t cap) {
    check_cap(f, cap);
    const int t = f.total_width();
    Bitset out{t, {}};
    const std::uint64_t entries = std::uint64_t{1} << t;
    if (f.blocks() == 1 && t <= 6) {
        if (auto small = f.body().small_table()) {
            // Lane (a << (6 - t)) of the small table holds the value at a.
            std::uint64_t w = 0;
            for (std::uint64_t a = 0; a < entries; ++a) {
                w |= ((*small >> (a << (6 - t))) & 1u) << a;
            }
            out.words.push_back(w);
            return out;
        }
    }
    const Program program(f);
    const std::uint64_t nwords = std::max<std::uint64_t>(1, entries >> 6);
    out.words.resize(nwords);
    std::vector<std::uint64_t> slots;
    for (std::uint64_t w = 0; w < nwords; ++w) out.words[w] = program.run(w, slots);
    out.words[0] &= low_mask(entries);
    return out;
}

// Quantifies away the `w` least significant variables.
Bitset reduce(const Bitset& in, int w, Quantifier q) {
    if (w == 0) return in;
    Bitset out{in.width - w, {}};
    const std::uint64_t groups = out.entries();
    out.words.assign(std::max<std::uint64_t>(1, groups >> 6), 0);
    const bool exists = q == Quantifier::exists;
    for (std::uint64_t g = 0; g < groups; ++g) {
        bool value;
        if (w >= 6) {
            const std::uint64_t first = g << (w - 6);
            const std::uint64_t count = std::uint64_t{1} << (w - 6);
            value = !exists;
            for (std::uint64_t i = 0; i < count; ++i) {
                const std::uint64_t word = in.words[first + i];
                if (exists && word != 0) {
                    value = true;
                    break;
                }
                if (!exists && word != ~0ull) {
                    value = false;
                    break;
                }
            }
        } else {
            const std::uint64_t start = g << w;
            const std::uint64_t mask = low_mask(std::uint64_t{1} << w) << (start & 63);
            const std::uint64_t bits = in.words[start >> 6] & mask;
            value = exists ? bits != 0 : bits == mask;
        }
        if (value) out.words[g >> 6] |= 1ull << (g & 63);
    }
    return out;
}

Quantifier flip(Quantifier q) { return q == Quantifier::exists ? Quantifier::forall : Quantifier::exists; }

// Quantifies blocks n..2, block k getting `first` when k is odd.
Bitset first_block_indicator(const Family& f, Quantifier first, std::uint64_t cap) {
    Bitset t = table_bits(f, cap);
    for (int k = f.blocks(); k >= 2; --k) t = reduce(t, f.width(k), (k % 2 == 1) ? first : flip(first));
    return t;
}

} // namespace

TruthTable truth_table(const Family& f, std::uint64_t cap) {
    Bitset b = table_bits(f, cap);
    return TruthTable(b.width, std::move(b.words));
}

bool qbf_value(const Family& f, Quantifier start, std::uint64_t cap) {
    Bitset t = first_block_indicator(f, start, cap);
    t = reduce(t, f.width(1), start);
    return t.at(0);
}

std::vector<Bits> first_block_solution_set(const Family& f, std::uint64_t cap) {
    const Bitset s = first_block_indicator(f, Quantifier::exists, cap);
    std::vector<Bits> out;
    for (std::uint64_t x = 0; x < s.entries(); ++x) {
        if (s.at(x)) out.push_back(to_bits(x, f.width(1)));
    }
    return out;
}

PromiseValue solve(const ProblemId& p, const Family& f, std::uint64_t cap) {
    if (p.level != f.blocks()) {
        throw LevelMismatch(to_string(p) + " expects " + std::to_string(p.level) + " block(s), family has " +
                            std::to_string(f.blocks()));
    }
    const int m1 = f.width(1);
    const bool co = p.kind == ProblemKind::cosat || p.kind == ProblemKind::cousat;
    const Bitset s = first_block_indicator(f, co ? Quantifier::forall : Quantifier::exists, cap);
    std::uint64_t count = 0;
    for (auto w : s.words) count += static_cast<std::uint64_t>(std::popcount(w));
    const std::uint64_t entries = s.entries();
    const std::uint64_t half = entries / 2;
    // π₁ of x is its most significant bit; undefined on a width-0 block.
    const auto pi1 = [&](std::uint64_t x) { return ((x >> (m1 - 1)) & 1u) != 0; };

    switch (p.kind) {
    case ProblemKind::sat: return singleton(count > 0);
    case ProblemKind::cosat: return singleton(count == entries);
    case ProblemKind::usat: return count <= 1 ? singleton(count == 1) : PromiseValue::both;
    case ProblemKind::cousat: return entries - count <= 1 ? singleton(count == entries) : PromiseValue::both;
    case ProblemKind::maxval:
    case ProblemKind::minval: {
        if (count == 0 || m1 == 0) return PromiseValue::both;
        if (p.kind == ProblemKind::maxval) {
            for (std::uint64_t x = entries; x-- > 0;) {
                if (s.at(x)) return singleton(pi1(x));
            }
        } else {
            for (std::uint64_t x = 0; x < entries; ++x) {
                if (s.at(x)) return singleton(pi1(x));
            }
        }
        return PromiseValue::both;
    }
    case ProblemKind::val: {
        if (count == 0 || m1 == 0) return PromiseValue::both;
        bool low = false;
        bool high = false;
        for (std::uint64_t x = 0; x < entries && !(low && high); ++x) {
            if (!s.at(x)) continue;
            (x < half ? low : high) = true;
        }
        return low && high ? PromiseValue::both : singleton(high);
    }
    case ProblemKind::uval: {
        if (count != 1 || m1 == 0) return PromiseValue::both;
        for (std::uint64_t x = 0; x < entries; ++x) {
            if (s.at(x)) return singleton(pi1(x));
        }
        return PromiseValue::both;
    }
    }
    return PromiseValue::both;
}

PromiseValue solve(ProblemKind k, const Family& f, std::uint64_t cap) {
    return solve(ProblemId{k, f.blocks()}, f, cap);
}

} // namespace pph
