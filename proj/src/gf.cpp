#include "subcode/gf.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace subcode {

namespace {

struct ModulusEntry {
    int p, m;
    std::vector<int> coeffs;
};

// Least monic irreducible polynomial per (p, m), ordered by sum c_i p^i.
const std::vector<ModulusEntry>& modulus_table()
{
    static const std::vector<ModulusEntry> table = {
        {2, 1, {0, 1}},
        {2, 2, {1, 1, 1}},
        {2, 3, {1, 1, 0, 1}},
        {2, 4, {1, 1, 0, 0, 1}},
        {2, 5, {1, 0, 1, 0, 0, 1}},
        {2, 6, {1, 1, 0, 0, 0, 0, 1}},
        {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
        {2, 8, {1, 1, 0, 1, 1, 0, 0, 0, 1}},
        {2, 9, {1, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
        {3, 1, {0, 1}},
        {3, 2, {1, 0, 1}},
        {3, 3, {1, 2, 0, 1}},
        {3, 4, {2, 1, 0, 0, 1}},
        {3, 5, {1, 2, 0, 0, 0, 1}},
        {5, 1, {0, 1}},
        {5, 2, {2, 0, 1}},
        {5, 3, {1, 1, 0, 1}},
        {7, 1, {0, 1}},
        {7, 2, {1, 0, 1}},
        {7, 3, {2, 0, 0, 1}},
    };
    return table;
}

int ipow(int b, int e)
{
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

int FieldSpec::order() const { return ipow(p, m); }

bool is_supported_field(int p, int m)
{
    for (const auto& e : modulus_table())
        if (e.p == p && e.m == m) return true;
    return false;
}

std::vector<int> default_modulus(int p, int m)
{
    for (const auto& e : modulus_table())
        if (e.p == p && e.m == m) return e.coeffs;
    throw std::invalid_argument("unsupported field F_" + std::to_string(p) + "^" + std::to_string(m));
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)), q_(spec_.order())
{
    const int p = spec_.p, m = spec_.m, q = q_;
    auto digits = [&](int a) {
        std::vector<int> d(m);
        for (int i = 0; i < m; ++i) { d[i] = a % p; a /= p; }
        return d;
    };
    auto value = [&](const std::vector<int>& d) {
        int a = 0;
        for (int i = m - 1; i >= 0; --i) a = a * p + d[i];
        return a;
    };

    add_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a);
        std::vector<int> n(m);
        for (int i = 0; i < m; ++i) n[i] = (p - da[i]) % p;
        neg_[a] = elem_t(value(n));
        for (int b = 0; b < q; ++b) {
            auto db = digits(b);
            std::vector<int> s(m);
            for (int i = 0; i < m; ++i) s[i] = (da[i] + db[i]) % p;
            add_[a * q + b] = elem_t(value(s));

            std::vector<int> prod(2 * m, 0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            for (int k = 2 * m - 2; k >= m; --k) {
                int c = prod[k];
                if (!c) continue;
                for (int j = 0; j <= m; ++j) prod[k - m + j] = ((prod[k - m + j] - c * spec_.modulus[j]) % p + p) % p;
            }
            prod.resize(m);
            mul_[a * q + b] = elem_t(value(prod));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) { inv_[a] = elem_t(b); break; }
}

std::shared_ptr<const Field> Field::get(int p, int m)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const Field>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FieldSpec spec{p, m, default_modulus(p, m)};
    auto f = std::shared_ptr<const Field>(new Field(spec));
    cache.emplace(key, f);
    return f;
}

std::shared_ptr<const Field> Field::of_order(int q)
{
    for (int p : {2, 3, 5, 7}) {
        int m = 0, t = q;
        while (t > 1 && t % p == 0) { t /= p; ++m; }
        if (t == 1 && m > 0) return get(p, m);
    }
    throw std::invalid_argument("unsupported field order " + std::to_string(q));
}

elem_t Field::inv(elem_t a) const
{
    if (a == 0) throw std::domain_error("inverse of zero");
    return inv_[a];
}

elem_t Field::pow(elem_t a, std::uint64_t e) const
{
    elem_t r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

elem_t Field::frobenius(elem_t a, int i) const
{
    i %= spec_.m;
    if (i < 0) i += spec_.m;
    for (int k = 0; k < i; ++k) a = pow(a, spec_.p);
    return a;
}

elem_t Field::trace(elem_t a, int s) const
{
    if (s <= 0 || spec_.m % s != 0)
        throw std::invalid_argument("trace: subfield degree must divide the extension degree");
    elem_t t = 0, x = a;
    for (int i = 0; i < spec_.m / s; ++i) {
        t = add(t, x);
        x = frobenius(x, s);
    }
    return t;
}

bool Field::in_subfield(elem_t a, int s) const
{
    return spec_.m % s == 0 && frobenius(a, s) == a;
}

std::string Field::to_string(elem_t a) const
{
    std::string s(spec_.m, '0');
    for (int i = spec_.m - 1; i >= 0; --i) {
        s[i] = char('0' + a % spec_.p);
        a /= spec_.p;
    }
    return s;
}

elem_t Field::parse(const std::string& s) const
{
    if (int(s.size()) != spec_.m) throw std::invalid_argument("bad field element '" + s + "'");
    int a = 0;
    for (char c : s) {
        int d = c - '0';
        if (d < 0 || d >= spec_.p) throw std::invalid_argument("bad field element '" + s + "'");
        a = a * spec_.p + d;
    }
    return elem_t(a);
}

FieldElement::FieldElement(FieldPtr f, elem_t v) : f_(std::move(f)), v_(v)
{
    if (v_ >= f_->order()) throw std::invalid_argument("field element out of range");
}

FieldElement FieldElement::parse(FieldPtr f, const std::string& s)
{
    elem_t v = f->parse(s);
    return FieldElement(std::move(f), v);
}

static void same_field(const FieldElement& a, const FieldElement& b)
{
    if (!(a.field()->spec() == b.field()->spec())) throw std::invalid_argument("field mismatch");
}

FieldElement FieldElement::operator+(const FieldElement& o) const { same_field(*this, o); return {f_, f_->add(v_, o.v_)}; }
FieldElement FieldElement::operator-(const FieldElement& o) const { same_field(*this, o); return {f_, f_->sub(v_, o.v_)}; }
FieldElement FieldElement::operator*(const FieldElement& o) const { same_field(*this, o); return {f_, f_->mul(v_, o.v_)}; }
FieldElement FieldElement::inverse() const { return {f_, f_->inv(v_)}; }
FieldElement FieldElement::frobenius(int i) const { return {f_, f_->frobenius(v_, i)}; }
FieldElement FieldElement::trace(int s) const { return {f_, f_->trace(v_, s)}; }

Tower::Tower(int q, int n) : base_(Field::of_order(q)), n_(n)
{
    if (n < 1) throw std::invalid_argument("tower degree must be positive");
    const int p = base_->p(), m = base_->m();
    ext_ = Field::get(p, m * n);
    const int Q = ext_->order();

    embed_.assign(q, 0);
    if (m == 1) {
        for (int a = 0; a < q; ++a) embed_[a] = elem_t(a);
    } else {
        // send the base generator to the least root of the base modulus
        const auto& mod = base_->spec().modulus;
        elem_t root = 0;
        bool found = false;
        for (int r = 0; r < Q && !found; ++r) {
            elem_t acc = 0, pw = 1;
            for (int j = 0; j <= m; ++j) {
                acc = ext_->add(acc, ext_->mul(elem_t(mod[j]), pw));
                pw = ext_->mul(pw, elem_t(r));
            }
            if (acc == 0) { root = elem_t(r); found = true; }
        }
        if (!found) throw std::logic_error("no embedding of base field");
        for (int a = 0; a < q; ++a) {
            elem_t acc = 0, pw = 1;
            int t = a;
            for (int j = 0; j < m; ++j) {
                acc = ext_->add(acc, ext_->mul(elem_t(t % p), pw));
                t /= p;
                pw = ext_->mul(pw, root);
            }
            embed_[a] = acc;
        }
    }
    unembed_.assign(Q, elem_t(0xFFFF));
    for (int a = 0; a < q; ++a) unembed_[embed_[a]] = elem_t(a);

    basis_.resize(n);
    const elem_t x = ext_->generator();
    basis_[0] = 1;
    for (int i = 1; i < n; ++i) basis_[i] = ext_->mul(basis_[i - 1], x);

    coord_code_.assign(Q, 0xFFFFFFFFu);
    std::uint32_t total = 1;
    for (int i = 0; i < n; ++i) total *= std::uint32_t(q);
    for (std::uint32_t code = 0; code < total; ++code) {
        elem_t e = 0;
        std::uint32_t t = code;
        for (int i = 0; i < n; ++i) {
            e = ext_->add(e, ext_->mul(embed_[t % q], basis_[i]));
            t /= q;
        }
        coord_code_[e] = code;
    }
    for (auto c : coord_code_)
        if (c == 0xFFFFFFFFu) throw std::logic_error("tower basis is not a basis");
}

std::vector<elem_t> Tower::coords(elem_t e) const
{
    std::vector<elem_t> c(n_);
    std::uint32_t t = coord_code_.at(e);
    const int q = base_->order();
    for (int i = 0; i < n_; ++i) { c[i] = elem_t(t % q); t /= q; }
    return c;
}

elem_t Tower::from_coords(const std::vector<elem_t>& c) const
{
    elem_t e = 0;
    for (int i = 0; i < n_; ++i) e = ext_->add(e, ext_->mul(embed_.at(c.at(i)), basis_[i]));
    return e;
}

elem_t Tower::frob_q(elem_t e, int i) const { return ext_->frobenius(e, base_->m() * i); }

std::vector<elem_t> Tower::subfield_basis(int s) const
{
    if (s <= 0 || n_ % s != 0) throw std::invalid_argument("subfield degree must divide n");
    const int q = base_->order();
    std::vector<elem_t> basis;
    std::vector<char> in_span(ext_->order(), 0);
    in_span[0] = 1;
    std::vector<elem_t> span{0};
    for (int e = 1; e < ext_->order() && int(basis.size()) < s; ++e) {
        if (in_span[e] || frob_q(elem_t(e), s) != e) continue;
        basis.push_back(elem_t(e));
        std::vector<elem_t> next;
        for (elem_t u : span)
            for (int c = 0; c < q; ++c) {
                elem_t w = ext_->add(u, ext_->mul(embed_[c], elem_t(e)));
                if (!in_span[w]) { in_span[w] = 1; next.push_back(w); }
            }
        span.insert(span.end(), next.begin(), next.end());
    }
    return basis;
}

elem_t Tower::trace_to_base(elem_t e) const
{
    elem_t t = 0, x = e;
    for (int i = 0; i < n_; ++i) {
        t = ext_->add(t, x);
        x = frob_q(x, 1);
    }
    elem_t b = unembed_[t];
    if (b == 0xFFFF) throw std::logic_error("trace left the base field");
    return b;
}

} // namespace subcode
