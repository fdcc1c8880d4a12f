#pragma once

#include "subcode/bigint.hpp"
#include "subcode/gf.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace subcode {

using Row = std::vector<std::uint8_t>;

// F_q^v with the standard basis
class Ambient {
public:
    Ambient() = default;
    Ambient(int q, int v);

    int q() const { return q_; }
    int v() const { return v_; }
    const FieldPtr& field() const { return field_; }
    bool operator==(const Ambient& o) const { return q_ == o.q_ && v_ == o.v_; }
    std::string to_string() const;

private:
    int q_ = 0, v_ = 0;
    FieldPtr field_;
};

class Subspace {
public:
    Subspace() = default;
    // row-reduces the given generators; rows may be dependent
    Subspace(const Ambient& amb, const std::vector<Row>& rows);
    static Subspace zero(const Ambient& amb);
    static Subspace whole(const Ambient& amb);
    static Subspace parse(const Ambient& amb, const std::string& text);

    const Ambient& ambient() const { return amb_; }
    int dim() const { return k_; }
    int v() const { return amb_.v(); }
    std::uint8_t at(int r, int c) const { return e_[r * amb_.v() + c]; }
    const std::uint8_t* row_ptr(int r) const { return e_.data() + r * amb_.v(); }
    // binary rows packed with bit j = column j (only filled when q = 2)
    const std::array<std::uint16_t, 12>& bits() const { return bits_; }
    Row row(int r) const;
    std::vector<Row> rows() const;
    std::vector<int> pivots() const;

    const std::string& str() const { return key_; }
    bool contains(const Subspace& o) const;
    bool contains_vector(const Row& x) const;

    bool operator==(const Subspace& o) const { return key_ == o.key_ && amb_ == o.amb_; }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const { return key_ < o.key_; }

private:
    void reduce(std::vector<Row> rows);
    Ambient amb_;
    int k_ = 0;
    std::vector<std::uint8_t> e_;
    std::array<std::uint16_t, 12> bits_{};
    std::string key_;
};

// Rank of a list of vectors
int rank_of(const Ambient& amb, const std::vector<Row>& rows);

Subspace join(const Subspace& x, const Subspace& y);
Subspace meet(const Subspace& x, const Subspace& y);
int join_dim(const Subspace& x, const Subspace& y);
int meet_dim(const Subspace& x, const Subspace& y);
int subspace_distance(const Subspace& x, const Subspace& y);
int injection_distance(const Subspace& x, const Subspace& y);
Subspace dual(const Subspace& x);

// All k-subspaces, sorted by serialization
std::vector<Subspace> enumerate_subspaces(const Ambient& amb, int k);
// All subspaces with dimension in dims, sorted by serialization
std::vector<Subspace> enumerate_subspaces(const Ambient& amb, const std::vector<int>& dims);
std::vector<Subspace> points_of(const Subspace& x);

BigInt gauss(int v, int k, int q);
// ordered pairs (X, Y) with dim X = a, dim Y = b, dim(X meet Y) = c
BigInt orbit_pair_count(int v, int q, int a, int b, int c);
int diameter(int v, const std::vector<int>& dims);

// x -> x M for a v-by-v matrix M (row-major over F_q)
Row apply_matrix(const Ambient& amb, const Row& x, const std::vector<std::uint8_t>& m);
Subspace apply_matrix(const Subspace& x, const std::vector<std::uint8_t>& m);
Subspace apply_frobenius(const Subspace& x, int i);
// Inverse of a v-by-v matrix over F_q; empty when singular
std::vector<std::uint8_t> invert_matrix(const Ambient& amb, const std::vector<std::uint8_t>& m);
std::vector<std::uint8_t> multiply_matrix(const Ambient& amb, const std::vector<std::uint8_t>& a,
                                          const std::vector<std::uint8_t>& b);

// Coordinates of vectors of a subspace W in terms of its RREF basis
// (the entries at the pivot columns); the result lives in F_q^{dim W}.
Subspace restrict_to(const Subspace& x, const Subspace& w);
// Inverse of restrict_to: embeds a subspace of F_q^{dim W} into the ambient
Subspace extend_from(const Subspace& y, const Subspace& w);

// Quotient V/P. The complement basis extends P greedily by the lowest-index
// unit vectors; X + P is mapped to its image in F_q^{v - dim P}.
class Quotient {
public:
    explicit Quotient(const Subspace& p);
    Subspace image(const Subspace& x) const;
    const Ambient& target() const { return tgt_; }

private:
    Subspace p_;
    Ambient tgt_;
    std::vector<std::uint8_t> inv_; // inverse of the basis matrix, row-major
};

} // namespace subcode
