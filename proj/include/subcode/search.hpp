#pragma once

#include "subcode/bounds.hpp"
#include "subcode/code.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>

namespace subcode {

struct SearchBudget {
    std::uint64_t max_nodes = 0; // 0 = unlimited
    double max_seconds = 0;      // 0 = unlimited
    std::optional<std::size_t> target;

    // Defaults from SUBCODE_BUDGET_NODES and SUBCODE_BUDGET_SECS
    static SearchBudget from_env();
};

// Node and wall-clock accounting shared by the exhaustive searches
class BudgetTracker {
public:
    explicit BudgetTracker(const SearchBudget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}
    // false once the budget is spent
    bool tick();
    bool exhausted() const { return exhausted_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    SearchBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

class BitGraph {
public:
    BitGraph() = default;
    explicit BitGraph(std::size_t n);

    std::size_t size() const { return n_; }
    std::size_t words() const { return w_; }
    void add_edge(std::size_t i, std::size_t j);
    bool adjacent(std::size_t i, std::size_t j) const { return (row(i)[j >> 6] >> (j & 63)) & 1; }
    const std::uint64_t* row(std::size_t i) const { return adj_.data() + i * w_; }
    std::size_t degree(std::size_t i) const;

private:
    std::size_t n_ = 0, w_ = 0;
    std::vector<std::uint64_t> adj_;
};

struct DistanceGraph {
    Ambient ambient;
    std::vector<Subspace> vertices;
    int d_min = 0;
    BitGraph graph;
};

// Edge iff the subspace distance is at least d_min; vertex order = input order
DistanceGraph distance_graph(const std::vector<Subspace>& candidates, int d_min, int threads = 1);

struct CliqueResult {
    std::vector<std::size_t> clique; // sorted vertex indices
    bool optimal = false;
    std::uint64_t nodes = 0;
};

// Branch and bound with greedy colouring bounds. Only vertices in `allowed`
// (all when empty) are used.
CliqueResult max_clique(const BitGraph& g, const SearchBudget& budget, const std::vector<std::size_t>& allowed = {});

struct EnumerationStats {
    bool exhaustive = true;
    std::uint64_t nodes = 0;
};
// Calls `found` for every clique of exactly `size` vertices (sorted indices)
EnumerationStats enumerate_cliques(const BitGraph& g, std::size_t size, const SearchBudget& budget,
                                   const std::function<void(const std::vector<std::size_t>&)>& found,
                                   const std::vector<std::size_t>& allowed = {});

struct SearchResult {
    SubspaceCode code;
    bool optimal = false;
    std::uint64_t nodes = 0;
};

SearchResult search_max_code(const DistanceGraph& g, const SearchBudget& budget);
SearchResult extend(const SubspaceCode& seed, const std::vector<int>& dims, int d_min, const SearchBudget& budget);

struct OptimumResult {
    BoundRecord record;
    SubspaceCode witness;
    bool optimal = false;
    std::uint64_t nodes = 0;
};
// A_q(v, d; T) by clique search with symmetry breaking under the isometries
// preserving the dimension set
OptimumResult exhaustive_optimum(int q, int v, int d, const std::vector<int>& dims, const SearchBudget& budget);

struct CodeEnumeration {
    std::vector<SubspaceCode> codes;
    bool exhaustive = true;
    std::uint64_t nodes = 0;
};
// All codes of the given size and minimum distance >= d. With up_to_symmetry
// the list is only guaranteed to meet every isomorphism class.
CodeEnumeration enumerate_max_codes(int q, int v, int d, const std::vector<int>& dims, std::size_t size,
                                    const SearchBudget& budget, bool up_to_symmetry = false);

} // namespace subcode
