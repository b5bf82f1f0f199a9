#include "pph/circuit.hpp"

#include "pph/error.hpp"
#include "pph/reductions.hpp"

#include <cctype>

namespace pph {

namespace {

constexpr int kInputBlock = 1;
constexpr int kVertexBlock = 2;
constexpr int kWitnessBlock = 3;

void check_refs(const Expr& e, int gate, const Gate& g, int inputs, int vertices) {
    switch (e.kind()) {
    case Expr::Kind::constant: return;
    case Expr::Kind::variable: {
        const VarRef v = e.var();
        const std::string where = "gate x" + std::to_string(gate);
        if (v.block == kInputBlock && v.index > inputs) {
            throw IndexError(where + " reads a" + std::to_string(v.index) + " but m=" + std::to_string(inputs));
        }
        if (v.block == kVertexBlock && (v.index <= gate || v.index > vertices)) {
            throw IndexError(where + " reads x" + std::to_string(v.index) + "; only x_j with " +
                             std::to_string(gate) + " < j <= " + std::to_string(vertices) + " are allowed");
        }
        if (v.block == kWitnessBlock && (!g.sat || v.index > g.witness)) {
            throw IndexError(where + " reads y" + std::to_string(v.index) + " outside its witness");
        }
        if (v.block > kWitnessBlock || v.block < 1) throw IndexError(where + " reads an unknown variable");
        return;
    }
    case Expr::Kind::negation: check_refs(e.operand(), gate, g, inputs, vertices); return;
    default:
        check_refs(e.lhs(), gate, g, inputs, vertices);
        check_refs(e.rhs(), gate, g, inputs, vertices);
    }
}

template <class Lookup>
bool eval_with(const Expr& e, const Lookup& value) {
    switch (e.kind()) {
    case Expr::Kind::constant: return e.value();
    case Expr::Kind::variable: return value(e.var());
    case Expr::Kind::negation: return !eval_with(e.operand(), value);
    case Expr::Kind::conjunction: return eval_with(e.lhs(), value) && eval_with(e.rhs(), value);
    case Expr::Kind::disjunction: return eval_with(e.lhs(), value) || eval_with(e.rhs(), value);
    }
    return false;
}

std::string circuit_name(VarRef v) {
    const char prefix = v.block == kInputBlock ? 'a' : v.block == kVertexBlock ? 'x' : 'y';
    return prefix + std::to_string(v.index);
}

} // namespace

OracleCircuit::OracleCircuit(int inputs, std::vector<Gate> gates) : inputs_(inputs), gates_(std::move(gates)) {
    if (inputs_ < 0) throw ShapeError("a circuit needs a non-negative input width");
    if (gates_.empty()) throw ShapeError("a circuit needs at least one vertex");
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        if (g.witness < 0 || (!g.sat && g.witness != 0)) throw ShapeError("bad witness width");
        check_refs(g.body, static_cast<int>(i + 1), g, inputs_, vertices());
    }
}

std::uint64_t OracleCircuit::size() const noexcept {
    std::uint64_t s = gates_.size();
    for (const Gate& g : gates_) s += g.body.size() + static_cast<std::uint64_t>(g.witness);
    return s;
}

OracleCircuit parse_circuit(std::string_view text) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto expect = [&](std::string_view word) {
        skip();
        if (text.substr(pos, word.size()) != word) throw ParseError(pos, "expected '" + std::string(word) + "'");
        pos += word.size();
    };
    auto number = [&] {
        skip();
        const std::size_t start = pos;
        long long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1'000'000) throw ParseError(start, "integer too large");
            ++pos;
        }
        if (pos == start) throw ParseError(pos, "expected an integer");
        return static_cast<int>(v);
    };

    expect("circuit");
    expect("m");
    expect("=");
    const int m = number();
    expect(";");

    std::vector<std::optional<Gate>> gates;
    while (true) {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ';')) ++pos;
        if (pos >= text.size()) break;
        const std::size_t gate_at = pos;
        expect("x");
        const int i = number();
        if (i < 1) throw ParseError(gate_at, "vertices are numbered from 1");
        expect("=");
        skip();
        Gate g;
        if (text.substr(pos, 4) == "sat(") {
            pos += 4;
            expect("w");
            expect("=");
            g.sat = true;
            g.witness = number();
            expect(")");
        }
        const AtomResolver resolve = [](std::string_view name, std::size_t at) -> std::optional<Expr> {
            if (name.size() < 2) return std::nullopt;
            int block = 0;
            switch (name[0]) {
            case 'a': block = kInputBlock; break;
            case 'x': block = kVertexBlock; break;
            case 'y': block = kWitnessBlock; break;
            default: return std::nullopt;
            }
            int index = 0;
            for (char c : name.substr(1)) {
                if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
                index = index * 10 + (c - '0');
                if (index > 1'000'000) throw ParseError(at, "index too large");
            }
            if (index < 1) throw ParseError(at, "indices are 1-based");
            return Expr::variable(block, index);
        };
        g.body = parse_expression(text, pos, resolve);
        // the expression parser has already skipped any whitespace after the gate
        bool newline = false;
        for (std::size_t k = pos; k > gate_at && std::isspace(static_cast<unsigned char>(text[k - 1])); --k) {
            newline = newline || text[k - 1] == '\n';
        }
        skip();
        if (pos < text.size() && text[pos] != ';' && !newline) {
            throw ParseError(pos, "expected ';' or a newline after a gate");
        }
        if (static_cast<std::size_t>(i) > gates.size()) gates.resize(static_cast<std::size_t>(i));
        if (gates[static_cast<std::size_t>(i - 1)]) throw ParseError(gate_at, "x" + std::to_string(i) + " defined twice");
        gates[static_cast<std::size_t>(i - 1)] = std::move(g);
    }
    std::vector<Gate> out;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (!gates[i]) throw ParseError(text.size(), "x" + std::to_string(i + 1) + " is never defined");
        out.push_back(std::move(*gates[i]));
    }
    return OracleCircuit(m, std::move(out));
}

std::string print_circuit(const OracleCircuit& c) {
    std::string out = "circuit m=" + std::to_string(c.inputs()) + ";\n";
    for (int i = 1; i <= c.vertices(); ++i) {
        const Gate& g = c.gate(i);
        out += "x" + std::to_string(i) + " = ";
        if (g.sat) out += "sat(w=" + std::to_string(g.witness) + ") ";
        out += to_string(g.body, circuit_name);
        out += '\n';
    }
    return out;
}

Bits eval_vertices(const OracleCircuit& c, const Bits& alpha) {
    if (static_cast<int>(alpha.size()) != c.inputs()) {
        throw ShapeError("alpha has " + std::to_string(alpha.size()) + " bits, circuit has m=" +
                         std::to_string(c.inputs()));
    }
    const int q = c.vertices();
    Bits x(static_cast<std::size_t>(q));
    for (int i = q; i >= 1; --i) {
        const Gate& g = c.gate(i);
        if (g.witness > 24) throw CapExceeded("SAT gate witness of width " + std::to_string(g.witness));
        Bits y;
        auto value = [&](VarRef v) {
            const auto k = static_cast<std::size_t>(v.index - 1);
            return v.block == kInputBlock ? alpha[k] : v.block == kVertexBlock ? x[k] : y[k];
        };
        bool out = false;
        if (!g.sat) {
            out = eval_with(g.body, value);
        } else {
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << g.witness) && !out; ++w) {
                y = to_bits(w, g.witness);
                out = eval_with(g.body, value);
            }
        }
        x[static_cast<std::size_t>(i - 1)] = out;
    }
    return x;
}

bool eval_circuit(const OracleCircuit& c, const Bits& alpha) { return eval_vertices(c, alpha)[0]; }

ValidityParts validity_parts(const OracleCircuit& c, const Bits& alpha) {
    if (static_cast<int>(alpha.size()) != c.inputs()) {
        throw ShapeError("alpha has " + std::to_string(alpha.size()) + " bits, circuit has m=" +
                         std::to_string(c.inputs()));
    }
    const int q = c.vertices();
    // block 1: the concatenated witnesses; block 2: the vertex values
    auto substitute = [&](const Expr& body, int witness_offset) {
        return rewrite_vars(body, [&](VarRef v) {
            if (v.block == kInputBlock) return Expr::constant(alpha[static_cast<std::size_t>(v.index - 1)]);
            if (v.block == kVertexBlock) return Expr::variable(2, v.index);
            return Expr::variable(1, witness_offset + v.index);
        });
    };
    std::vector<Expr> exists_parts, forall_parts;
    int offset = 0;
    for (int i = 1; i <= q; ++i) {
        const Gate& g = c.gate(i);
        const Expr xi = Expr::variable(2, i);
        const Expr a = substitute(g.body, offset);
        if (g.sat) {
            exists_parts.push_back((!xi) | a);
            forall_parts.push_back(xi | !a);
            offset += g.witness;
        } else {
            forall_parts.push_back(((!xi) | a) & (xi | !a));
        }
    }
    return ValidityParts{Family({offset, q}, conjoin_all(exists_parts)), Family({offset, q}, conjoin_all(forall_parts)),
                         offset};
}

Family compile_sigma2(const OracleCircuit& c, const Bits& alpha) {
    const ValidityParts v = validity_parts(c, alpha);
    const int q = c.vertices();
    const int wy = v.witness_width;
    // x moves to the front of block 1, y after it; z becomes block 2
    const Expr p1 = rewrite_vars(v.p1.body(), [&](VarRef r) {
        return r.block == 2 ? Expr::variable(1, r.index) : Expr::variable(1, q + r.index);
    });
    const Expr p2 = rewrite_vars(v.p2.body(), [&](VarRef r) {
        return r.block == 2 ? Expr::variable(1, r.index) : Expr::variable(2, r.index);
    });
    return Family({q + wy, wy}, p1 & p2 & Expr::variable(1, 1));
}

CompiledUval2 compile_uval2(const OracleCircuit& c, const Bits& alpha) {
    const ValidityParts v = validity_parts(c, alpha);
    CompiledUval2 out{v.p1, v.p2, v.p1, 0, 0, 0, 0, 0};
    // [∃y p1] = π₁!s ∀z p3 and [∀z p2] = ¬[∃z ¬p2] = π₁!t ∀z p4 via the dual.
    out.p3 = sat_to_uval2_parametric(v.p1);
    out.p4 = negate_block_inputs(sat_to_uval2_parametric(negate_output(v.p2)), 1);
    out.x_width = c.vertices();
    out.s_width = out.p3.width(1);
    out.zs_width = out.p3.width(2);
    out.t_width = out.p4.width(1);
    out.zt_width = out.p4.width(2);

    // w = (x, u, s, t), z = (z_s, z_t)
    const int q = out.x_width;
    const int s_at = q + 1;
    const int t_at = s_at + out.s_width;
    const Expr p3 = rewrite_vars(out.p3.body(), [&](VarRef r) {
        if (r.block == 1) return Expr::variable(1, s_at + r.index);
        if (r.block == 2) return Expr::variable(2, r.index);
        return Expr::variable(1, r.index);
    });
    const Expr p4 = rewrite_vars(out.p4.body(), [&](VarRef r) {
        if (r.block == 1) return Expr::variable(1, t_at + r.index);
        if (r.block == 2) return Expr::variable(2, out.zs_width + r.index);
        return Expr::variable(1, r.index);
    });
    const Expr u = Expr::variable(1, q + 1);
    const Expr st = Expr::variable(1, s_at + 1) & Expr::variable(1, t_at + 1);
    const Expr u_is_st = ((!u) | st) & (u | !st);
    out.family = Family({q + 1 + out.s_width + out.t_width, out.zs_width + out.zt_width}, u & u_is_st & p3 & p4);
    return out;
}

namespace {

Expr random_body(RandomSource& rng, const std::vector<Expr>& atoms, int budget) {
    if (budget <= 0 || rng.below(3) == 0) {
        const Expr leaf = atoms[rng.below(atoms.size())];
        return rng.below(3) == 0 ? !leaf : leaf;
    }
    const int left = static_cast<int>(rng.below(static_cast<std::uint64_t>(budget)));
    const Expr a = random_body(rng, atoms, left);
    const Expr b = random_body(rng, atoms, budget - 1 - left);
    Expr e = rng.bit() ? (a & b) : (a | b);
    return rng.below(4) == 0 ? !e : e;
}

} // namespace

OracleCircuit random_circuit(RandomSource& rng, const RandomCircuitOptions& o) {
    const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(o.max_inputs)));
    const int q = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(o.max_vertices)));
    int sat_left = o.max_sat_gates;
    std::vector<Gate> gates;
    for (int i = 1; i <= q; ++i) {
        Gate g;
        if (sat_left > 0 && rng.below(2) == 0) {
            g.sat = true;
            g.witness = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(o.max_witness)));
            --sat_left;
        }
        std::vector<Expr> atoms;
        for (int j = 1; j <= m; ++j) atoms.push_back(Expr::variable(kInputBlock, j));
        for (int j = i + 1; j <= q; ++j) atoms.push_back(Expr::variable(kVertexBlock, j));
        for (int j = 1; j <= g.witness; ++j) atoms.push_back(Expr::variable(kWitnessBlock, j));
        g.body = random_body(rng, atoms, static_cast<int>(rng.below(static_cast<std::uint64_t>(o.body_budget + 1))));
        gates.push_back(std::move(g));
    }
    return OracleCircuit(m, std::move(gates));
}

} // namespace pph
