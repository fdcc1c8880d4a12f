#pragma once

#include "subcode/code.hpp"
#include "subcode/search.hpp"

#include <optional>
#include <string>
#include <vector>

namespace subcode {

// X -> Frob^field_auto(polar ? X^perp : X) * matrix
struct Isometry {
    std::vector<std::uint8_t> matrix; // v-by-v, row-major, acting on row vectors
    int field_auto = 0;
    bool polar = false;

    static Isometry identity(const Ambient& amb);
};

Subspace apply(const Isometry& g, const Subspace& x);
SubspaceCode apply(const Isometry& g, const SubspaceCode& c);

BigInt gl_order(int q, int v);
// |GL(v,q) x| Aut(F_q) | x 2
BigInt isometry_group_order(int q, int v);

// Orientation-free invariants: the same for a code and its dual. The
// isometry routines need q^v <= 256.
struct CodeInvariant {
    std::size_t size = 0;
    std::vector<int> distribution;
    std::vector<std::size_t> distances;             // pair count per distance
    std::vector<std::vector<int>> point_degrees;    // sorted per-vector dimension counts
    std::vector<std::vector<int>> hyperplane_degrees;
    std::vector<std::vector<int>> refinement; // colour classes of the vector/word incidence, per round

    auto operator<=>(const CodeInvariant&) const = default;
};
CodeInvariant code_invariant(const SubspaceCode& c);

enum class IsoAnswer { yes, no, undecided };

struct IsoDecision {
    IsoAnswer answer = IsoAnswer::undecided;
    std::optional<Isometry> witness; // set for yes, and apply(*witness, a) == b
    std::string reason;
    std::uint64_t nodes = 0;
};
IsoDecision are_isomorphic(const SubspaceCode& a, const SubspaceCode& b, const SearchBudget& budget = {});

struct AutOrder {
    BigInt order;
    bool complete = true;
};
AutOrder aut_order(const SubspaceCode& c, const SearchBudget& budget = {});

// Least image over the whole group, ordering images by their restrictions to
// the coordinate flags <e_1> < <e_1,e_2> < ... (each a sorted list of
// dimension and vector-set pairs).
struct CanonicalForm {
    SubspaceCode code;
    bool complete = true;
};
CanonicalForm canonical_form(const SubspaceCode& c, const SearchBudget& budget = {});

struct IsoClass {
    SubspaceCode canonical;
    BigInt aut_order;
    BigInt orbit_size;
    std::vector<std::size_t> members; // indices into the classified list
    bool complete = true;
};

struct Classification {
    std::vector<IsoClass> classes;
    bool complete = true;
};
// Classes in order of first appearance
Classification classify(const std::vector<SubspaceCode>& codes, const SearchBudget& budget = {},
                        bool canonical = true);

} // namespace subcode
