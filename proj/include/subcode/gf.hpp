#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace subcode {

// Elements of F_{p^m} are encoded as integers sum c_i p^i where c_i is the
// coefficient of x^i in the polynomial basis.
using elem_t = std::uint16_t;

struct FieldSpec {
    int p = 2;
    int m = 1;
    std::vector<int> modulus; // monic, low degree first, size m+1

    int order() const;
    bool operator==(const FieldSpec&) const = default;
};

// Least monic irreducible of degree m over F_p (ordered by coefficient value).
std::vector<int> default_modulus(int p, int m);
bool is_supported_field(int p, int m);

class Field {
public:
    static std::shared_ptr<const Field> get(int p, int m);
    static std::shared_ptr<const Field> of_order(int q);

    const FieldSpec& spec() const { return spec_; }
    int p() const { return spec_.p; }
    int m() const { return spec_.m; }
    int order() const { return q_; }

    elem_t add(elem_t a, elem_t b) const { return add_[a * q_ + b]; }
    elem_t sub(elem_t a, elem_t b) const { return add_[a * q_ + neg_[b]]; }
    elem_t neg(elem_t a) const { return neg_[a]; }
    elem_t mul(elem_t a, elem_t b) const { return mul_[a * q_ + b]; }
    elem_t inv(elem_t a) const; // throws on zero
    elem_t div(elem_t a, elem_t b) const { return mul(a, inv(b)); }
    elem_t pow(elem_t a, std::uint64_t e) const;
    elem_t frobenius(elem_t a, int i) const;
    // Tr_{F_{p^m}/F_{p^s}}; s must divide m. Result lies in the subfield.
    elem_t trace(elem_t a, int s) const;
    bool in_subfield(elem_t a, int s) const;
    // class of x; for prime fields this is 1
    elem_t generator() const { return elem_t(spec_.m == 1 ? 1 : spec_.p); }

    std::string to_string(elem_t a) const;
    elem_t parse(const std::string& s) const;

    const elem_t* add_table() const { return add_.data(); }
    const elem_t* mul_table() const { return mul_.data(); }

private:
    explicit Field(FieldSpec spec);
    FieldSpec spec_;
    int q_;
    std::vector<elem_t> add_, mul_, neg_, inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

class FieldElement {
public:
    FieldElement(FieldPtr f, elem_t v);
    static FieldElement parse(FieldPtr f, const std::string& s);

    const FieldPtr& field() const { return f_; }
    elem_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement inverse() const;
    FieldElement frobenius(int i) const;
    FieldElement trace(int sub_degree) const;
    std::string to_string() const { return f_->to_string(v_); }

    bool operator==(const FieldElement& o) const { return v_ == o.v_ && f_->spec() == o.f_->spec(); }

private:
    FieldPtr f_;
    elem_t v_;
};

// F_{q^n} over F_q with q = p^m, realised inside F_{p^{mn}}.
// The F_q-basis of the extension is 1, x, ..., x^{n-1}.
class Tower {
public:
    Tower(int q, int n);

    const FieldPtr& base() const { return base_; }
    const FieldPtr& ext() const { return ext_; }
    int n() const { return n_; }
    elem_t embed(elem_t b) const { return embed_[b]; }
    const std::vector<elem_t>& basis() const { return basis_; }
    // coordinates (length n, base field values) of an extension element
    std::vector<elem_t> coords(elem_t e) const;
    elem_t from_coords(const std::vector<elem_t>& c) const;
    // x -> x^q on the extension
    elem_t frob_q(elem_t e, int i = 1) const;
    // F_q-basis of the subfield F_{q^s} (s | n), chosen greedily by value
    std::vector<elem_t> subfield_basis(int s) const;
    // F_q-valued trace Tr_{F_{q^n}/F_q}
    elem_t trace_to_base(elem_t e) const;

private:
    FieldPtr base_, ext_;
    int n_;
    std::vector<elem_t> embed_, basis_, unembed_;
    std::vector<std::uint32_t> coord_code_; // ext element -> packed base-q coordinates
};

} // namespace subcode
