#pragma once

#include "subcode/code.hpp"

#include <optional>

namespace subcode {

struct GabidulinSpec {
    int q = 2;
    int v = 0;
    int k = 0;
    int delta = 1;
};

// Lifted MRD code in W x F_{q^n}, n = v - k: rows (x, sum_i a_i x^{q^i}) for
// i = 0..k-delta. W is the subfield F_{q^k} when k | n, the power-basis span otherwise.
SubspaceCode lifted_gabidulin(const GabidulinSpec& spec);
// S = {0} x F_{q^n}
Subspace gabidulin_special_flat(const GabidulinSpec& spec);

struct DualityMap {
    // phi(a, b) = (b, a^{q^{k-delta}}) acting on row vectors
    std::vector<std::uint8_t> phi;
    // phi composed with the change from the coordinate dual to the trace dual;
    // applying pg dual followed by this matrix maps the code onto itself
    std::vector<std::uint8_t> after_dual;
};
DualityMap gabidulin_duality_map(const GabidulinSpec& spec);

SubspaceCode spread(int q, int k);

struct PartialSpreadInfo {
    Subspace moving;      // the word X0 sitting inside the hole space
    Subspace hole_space;  // Y0, spanned by the uncovered points
};
SubspaceCode max_partial_spread(int q, int k, PartialSpreadInfo* info = nullptr);

SubspaceCode shorten_H(const SubspaceCode& c, const Subspace& h);
SubspaceCode shorten_P(const SubspaceCode& c, const Subspace& p);
SubspaceCode shorten_PH(const SubspaceCode& c, const Subspace& p, const Subspace& h);
SubspaceCode puncture_H(const SubspaceCode& c, const Subspace& h);
SubspaceCode puncture_P(const SubspaceCode& c, const Subspace& p);
SubspaceCode puncture_split(const SubspaceCode& c1, const SubspaceCode& c2, const Subspace& p, const Subspace& h);

struct V5D3Choice {
    Subspace e, e2, p, h;
};
SubspaceCode construct_v5_d3(int q, V5D3Choice* choice = nullptr);

SubspaceCode embedded_7_34_5();
SubspaceCode optimal_d2_code(int q, int v);

// Optimal codes with d = v - 1 with the dimension counts of the middle layers:
// (d_{k-1}, d_k, d_{k+1}) for v = 2k, (d_{k-1}, d_k, d_{k+1}, d_{k+2}) for v = 2k+1.
SubspaceCode optimal_d_vminus1_variant(int q, int v, const std::vector<int>& tag);
std::vector<std::vector<int>> d_vminus1_tags(int q, int v);

// Two (6,9,5)_2 codes with one line, seven planes and one solid, built in
// F_8 x F_8 from the planes F_8(1,y), y != 0.
SubspaceCode mixed_6_9_5_code(int variant);

// Points of the ambient space not covered by any word
std::vector<Subspace> holes(const SubspaceCode& c);

} // namespace subcode
