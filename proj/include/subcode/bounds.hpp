#pragma once

#include "subcode/bigint.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subcode {

struct Interval {
    BigInt lower, upper;
    static Interval exactly(const BigInt& x) { return {x, x}; }
    bool exact() const { return lower == upper; }
};

struct BoundRecord {
    int q = 2, v = 0, d = 1;
    std::vector<int> dims; // admissible dimensions, all of [0, v] by default
    BigInt lower, upper;
    std::vector<std::string> provenance;

    bool exact() const { return lower == upper; }
    // "77" or "104-118"
    std::string value_string() const;
};

struct MomentBounds {
    BigInt mu1_lower;
    BigInt mu2_upper;
    std::optional<BigInt> universe;
};

// Lower bound for the size of a union of sets with first binomial moment at
// least mu1 and second binomial moment at most mu2.
BigInt bonferroni_lower(const MomentBounds& m);

// floor(gauss(v, k-delta+1) / gauss(k, k-delta+1)), an upper bound for A_q(v, 2 delta; k)
BigInt packing_bound(int q, int v, int k, int delta);

using LayerValues = std::map<int, Interval>;

// Bounds from the constant-dimension layers A_q(v, 2 ceil(d/2); k). Layers with
// k < ceil(d/2) or k > v - ceil(d/2) hold at most one word and default to 1.
BoundRecord sandwich_bounds(int q, int v, int d, const LayerValues& layers);

bool has_closed_form(int q, int v, int d);
BoundRecord closed_form(int q, int v, int d);

// Best known value of A_q(v, 2 delta; k), when available in the built-in data.
std::optional<std::pair<Interval, std::string>> known_layer(int q, int v, int delta, int k);

// Pieces of the A_2(7,4) upper bound
int f_delta4(int delta);
int g1_delta2(int delta);
int g2_delta2(int delta);
int g3_delta2(int delta);
int g_delta2(int delta);
int h_delta5(int delta);
// maximum of a1 + a2 subject to 4 a1 <= 1024, 3 a1 + 6 a2 <= 1488, a2 <= 155
struct LineCountOptimum {
    int a1 = 0, a2 = 0, value = 0, optima = 0;
};
LineCountOptimum line_count_optimum();

struct A274Solution {
    int d2 = 0, d3 = 0, d4 = 0, d5 = 0;
    int middle() const { return d2 + d3 + d4 + d5; }
    bool operator==(const A274Solution&) const = default;
};
struct A274Result {
    int interior = 0;                        // maximum of the middle-layer program
    std::vector<A274Solution> optima;        // solutions attaining it
    std::vector<A274Solution> near_optimal;  // all solutions within one of the maximum
    int bound = 0;                           // after adding the outer layers
};
// F(u3, u4) = max over delta4 <= min(u3, u4, 190) of min(u3, f(delta4)) + delta4
int middle_pair_max(int u3, int u4);
A274Result upper_bound_A2_7_4(int threads = 1);

// Records for 2 <= d <= v <= v_max. Supported: q = 2 with v_max <= 7, other q with v_max <= 5.
std::vector<BoundRecord> bounds_table(int q, int v_max);

struct UnimodalPair {
    enum class Status { pass, fail, flagged };
    int k = 0;
    Status status = Status::pass;
    bool weak = true;   // A(k) > q A(k-1)
    bool strong = true; // A(k) / A(k-1) > q^{v-2k+delta} C(q, delta)
};
struct UnimodalReport {
    bool ok = true;
    std::vector<UnimodalPair> pairs;
};
UnimodalReport unimodal_check(int q, int v, int delta, const LayerValues& known);

} // namespace subcode
