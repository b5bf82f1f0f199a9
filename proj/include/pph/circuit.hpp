#pragma once

// Circuits with SAT-oracle gates, and their compilation (per concrete input α)
// into a Σ₂-form family and a UVAL₂-form family.
//
// Vertices are x1..xq with x1 the output; a gate at x_i may read the inputs
// a1..am and vertices x_j with j > i only. Gate expressions use block 1 for
// a, block 2 for x and block 3 for a SAT gate's private witness y.

#include "pph/expr.hpp"
#include "pph/random.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace pph {

struct Gate {
    bool sat = false; // value = ∃y: body
    int witness = 0;  // |y| for SAT gates
    Expr body = Expr::constant(false);
};

class OracleCircuit {
public:
    /// Throws ShapeError / IndexError when a gate reads out of range or breaks
    /// the j > i ordering.
    OracleCircuit(int inputs, std::vector<Gate> gates);

    int inputs() const noexcept { return inputs_; }
    int vertices() const noexcept { return static_cast<int>(gates_.size()); }
    const Gate& gate(int i) const { return gates_.at(static_cast<std::size_t>(i - 1)); }
    const std::vector<Gate>& gates() const noexcept { return gates_; }
    /// q + Σ (body size + witness width).
    std::uint64_t size() const noexcept;

private:
    int inputs_;
    std::vector<Gate> gates_;
};

//   circuit m=<int>;
//   x<i> = <expr over a<j>, x<j>>
//   x<i> = sat(w=<int>) <expr over a<j>, x<j>, y<j>>
// Gates are separated by newlines or ';'.
OracleCircuit parse_circuit(std::string_view text);
std::string print_circuit(const OracleCircuit& c);

/// Vertex values x1..xq, evaluated from xq down; SAT gates by brute force.
Bits eval_vertices(const OracleCircuit& c, const Bits& alpha);
bool eval_circuit(const OracleCircuit& c, const Bits& alpha);

/// v(α,x) = (∃y: p1(x,y)) ∧ (∀z: p2(x,z)) with α substituted.
/// p1 has blocks [y, x], p2 has blocks [z, x]; y and z concatenate the SAT
/// gates' witnesses in gate order.
struct ValidityParts {
    Family p1;
    Family p2;
    int witness_width = 0;
};
ValidityParts validity_parts(const OracleCircuit& c, const Bits& alpha);

/// Blocks [(x, y), z]; body p1 ∧ p2 ∧ x1. Its ∃∀ value is the circuit output.
Family compile_sigma2(const OracleCircuit& c, const Bits& alpha);

/// Blocks [w, z] with w = (x, u, s, t) and z = (z_s, z_t). Exactly one w
/// satisfies ∀z, and its first bit is the circuit output.
struct CompiledUval2 {
    Family family;
    Family p3; // blocks [s, z_s, x]: π₁!s ∀z_s p3 = [∃y p1]
    Family p4; // blocks [t, z_t, x]: π₁!t ∀z_t p4 = [∀z p2]
    int x_width = 0;
    int s_width = 0;
    int t_width = 0;
    int zs_width = 0;
    int zt_width = 0;
};
CompiledUval2 compile_uval2(const OracleCircuit& c, const Bits& alpha);

struct RandomCircuitOptions {
    int max_inputs = 2;
    int max_vertices = 4;
    int max_sat_gates = 1;
    int max_witness = 2;
    int body_budget = 4; // connectives per gate body, at most
};
OracleCircuit random_circuit(RandomSource& rng, const RandomCircuitOptions& options = {});

} // namespace pph
