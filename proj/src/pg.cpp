#include "subcode/pg.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace subcode {

namespace {

constexpr std::size_t kEnumerationLimit = 5'000'000;

// In-place reduced row echelon form; returns rank. Rows beyond the rank are dropped.
int rref_rows(const Field& f, std::vector<Row>& rows, int v)
{
    int r = 0;
    for (int c = 0; c < v && r < int(rows.size()); ++c) {
        int piv = -1;
        for (int i = r; i < int(rows.size()); ++i)
            if (rows[i][c]) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[r], rows[piv]);
        elem_t inv = f.inv(rows[r][c]);
        if (inv != 1)
            for (int j = c; j < v; ++j) rows[r][j] = std::uint8_t(f.mul(rows[r][j], inv));
        for (int i = 0; i < int(rows.size()); ++i) {
            if (i == r || !rows[i][c]) continue;
            elem_t t = rows[i][c];
            for (int j = c; j < v; ++j)
                if (rows[r][j]) rows[i][j] = std::uint8_t(f.sub(rows[i][j], f.mul(t, rows[r][j])));
        }
        ++r;
    }
    rows.resize(r);
    return r;
}

int rank_binary(const std::vector<const std::uint8_t*>& rows, int v)
{
    std::uint16_t basis[16] = {0};
    int rank = 0;
    for (const std::uint8_t* row : rows) {
        std::uint16_t x = 0;
        for (int j = 0; j < v; ++j) x = std::uint16_t(x | (row[j] << j));
        for (int b = v - 1; b >= 0 && x; --b) {
            if (!((x >> b) & 1)) continue;
            if (basis[b]) x ^= basis[b];
            else { basis[b] = x; ++rank; x = 0; }
        }
    }
    return rank;
}

} // namespace

Ambient::Ambient(int q, int v) : q_(q), v_(v)
{
    static const int allowed[] = {2, 3, 4, 5, 7, 8, 9};
    if (std::find(std::begin(allowed), std::end(allowed), q) == std::end(allowed))
        throw std::invalid_argument("unsupported q=" + std::to_string(q));
    if (v < 1 || v > 12) throw std::invalid_argument("unsupported v=" + std::to_string(v));
    field_ = Field::of_order(q);
}

std::string Ambient::to_string() const { return "q=" + std::to_string(q_) + " v=" + std::to_string(v_); }

Subspace::Subspace(const Ambient& amb, const std::vector<Row>& rows) : amb_(amb)
{
    for (const auto& r : rows)
        if (int(r.size()) != amb.v()) throw std::invalid_argument("row length does not match v");
    reduce(rows);
}

void Subspace::reduce(std::vector<Row> rows)
{
    const int v = amb_.v();
    const Field& f = *amb_.field();
    for (auto& r : rows)
        for (auto& x : r)
            if (x >= amb_.q()) throw std::invalid_argument("entry outside the field");
    k_ = rref_rows(f, rows, v);
    e_.clear();
    e_.reserve(k_ * v);
    for (const auto& r : rows) e_.insert(e_.end(), r.begin(), r.end());
    bits_.fill(0);
    if (amb_.q() == 2)
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < v; ++j) bits_[i] = std::uint16_t(bits_[i] | (e_[i * v + j] << j));
    if (k_ == 0) {
        key_ = "-";
        return;
    }
    key_.clear();
    for (int i = 0; i < k_; ++i) {
        if (i) key_ += ',';
        for (int j = 0; j < v; ++j) key_ += f.to_string(e_[i * v + j]);
    }
}

Subspace Subspace::zero(const Ambient& amb) { return Subspace(amb, {}); }

Subspace Subspace::whole(const Ambient& amb)
{
    std::vector<Row> rows(amb.v(), Row(amb.v(), 0));
    for (int i = 0; i < amb.v(); ++i) rows[i][i] = 1;
    return Subspace(amb, rows);
}

Subspace Subspace::parse(const Ambient& amb, const std::string& text)
{
    if (text == "-") return zero(amb);
    const Field& f = *amb.field();
    const int m = f.m(), v = amb.v();
    std::vector<Row> rows;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        std::string tok = text.substr(pos, end - pos);
        if (int(tok.size()) != v * m) throw std::invalid_argument("bad subspace row '" + tok + "'");
        Row r(v);
        for (int j = 0; j < v; ++j) r[j] = std::uint8_t(f.parse(tok.substr(j * m, m)));
        rows.push_back(std::move(r));
        pos = end + 1;
    }
    Subspace s(amb, rows);
    if (s.dim() != int(rows.size())) throw std::invalid_argument("dependent rows in '" + text + "'");
    return s;
}

Row Subspace::row(int r) const
{
    const int v = amb_.v();
    return Row(e_.begin() + r * v, e_.begin() + (r + 1) * v);
}

std::vector<Row> Subspace::rows() const
{
    std::vector<Row> out;
    for (int i = 0; i < k_; ++i) out.push_back(row(i));
    return out;
}

std::vector<int> Subspace::pivots() const
{
    std::vector<int> p;
    const int v = amb_.v();
    for (int i = 0; i < k_; ++i)
        for (int j = 0; j < v; ++j)
            if (e_[i * v + j]) { p.push_back(j); break; }
    return p;
}

bool Subspace::contains(const Subspace& o) const
{
    if (o.dim() > k_) return false;
    return join_dim(*this, o) == k_;
}

bool Subspace::contains_vector(const Row& x) const
{
    auto r = rows();
    r.push_back(x);
    return rank_of(amb_, r) == k_;
}

int rank_of(const Ambient& amb, const std::vector<Row>& rows)
{
    if (amb.q() == 2) {
        std::vector<const std::uint8_t*> ptrs;
        for (const auto& r : rows) ptrs.push_back(r.data());
        return rank_binary(ptrs, amb.v());
    }
    auto copy = rows;
    return rref_rows(*amb.field(), copy, amb.v());
}

static void check_same(const Subspace& x, const Subspace& y)
{
    if (!(x.ambient() == y.ambient())) throw std::invalid_argument("subspaces live in different ambients");
}

int join_dim(const Subspace& x, const Subspace& y)
{
    check_same(x, y);
    if (x.ambient().q() == 2) {
        // x is already reduced: its rows have distinct lowest set bits
        std::uint16_t basis[16] = {0};
        for (int i = 0; i < x.dim(); ++i) basis[__builtin_ctz(x.bits()[i])] = x.bits()[i];
        int rank = x.dim();
        for (int i = 0; i < y.dim(); ++i) {
            std::uint16_t t = y.bits()[i];
            while (t) {
                int b = __builtin_ctz(t);
                if (!basis[b]) { basis[b] = t; ++rank; break; }
                t ^= basis[b];
            }
        }
        return rank;
    }
    auto rows = x.rows();
    auto yr = y.rows();
    rows.insert(rows.end(), yr.begin(), yr.end());
    return rank_of(x.ambient(), rows);
}

int meet_dim(const Subspace& x, const Subspace& y) { return x.dim() + y.dim() - join_dim(x, y); }

Subspace join(const Subspace& x, const Subspace& y)
{
    check_same(x, y);
    auto rows = x.rows();
    auto yr = y.rows();
    rows.insert(rows.end(), yr.begin(), yr.end());
    return Subspace(x.ambient(), rows);
}

Subspace dual(const Subspace& x)
{
    const Ambient& amb = x.ambient();
    const Field& f = *amb.field();
    const int v = amb.v();
    auto piv = x.pivots();
    std::vector<char> is_piv(v, 0);
    for (int p : piv) is_piv[p] = 1;
    std::vector<Row> rows;
    for (int c = 0; c < v; ++c) {
        if (is_piv[c]) continue;
        Row y(v, 0);
        y[c] = 1;
        for (int i = 0; i < x.dim(); ++i) y[piv[i]] = std::uint8_t(f.neg(x.at(i, c)));
        rows.push_back(std::move(y));
    }
    return Subspace(amb, rows);
}

Subspace meet(const Subspace& x, const Subspace& y)
{
    check_same(x, y);
    return dual(join(dual(x), dual(y)));
}

int subspace_distance(const Subspace& x, const Subspace& y)
{
    int j = join_dim(x, y);
    return 2 * j - x.dim() - y.dim();
}

int injection_distance(const Subspace& x, const Subspace& y)
{
    return std::max(x.dim(), y.dim()) - meet_dim(x, y);
}

std::vector<Subspace> enumerate_subspaces(const Ambient& amb, int k)
{
    const int v = amb.v(), q = amb.q();
    if (k < 0 || k > v) throw std::invalid_argument("dimension out of range");
    BigInt total = gauss(v, k, q);
    if (total > BigInt(kEnumerationLimit)) throw std::length_error("too many subspaces to enumerate");

    std::vector<Subspace> out;
    out.reserve(std::size_t(total));
    std::vector<int> piv(k);
    std::vector<Row> rows(k, Row(v, 0));
    // free slots for a pivot set: (row, col) with col > pivot and col not a pivot
    std::function<void(int, int)> choose = [&](int idx, int start) {
        if (idx == k) {
            std::vector<std::pair<int, int>> slots;
            std::vector<char> is_piv(v, 0);
            for (int p : piv) is_piv[p] = 1;
            for (int i = 0; i < k; ++i)
                for (int c = piv[i] + 1; c < v; ++c)
                    if (!is_piv[c]) slots.push_back({i, c});
            for (auto& r : rows) std::fill(r.begin(), r.end(), 0);
            for (int i = 0; i < k; ++i) rows[i][piv[i]] = 1;
            std::function<void(std::size_t)> fill = [&](std::size_t s) {
                if (s == slots.size()) {
                    out.emplace_back(amb, rows);
                    return;
                }
                for (int a = 0; a < q; ++a) {
                    rows[slots[s].first][slots[s].second] = std::uint8_t(a);
                    fill(s + 1);
                }
                rows[slots[s].first][slots[s].second] = 0;
            };
            fill(0);
            return;
        }
        for (int c = start; c <= v - (k - idx); ++c) {
            piv[idx] = c;
            choose(idx + 1, c + 1);
        }
    };
    choose(0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Subspace> enumerate_subspaces(const Ambient& amb, const std::vector<int>& dims)
{
    std::vector<Subspace> out;
    for (int k : dims) {
        auto layer = enumerate_subspaces(amb, k);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Subspace> points_of(const Subspace& x)
{
    // points of x are the images of points of F_q^{dim x}
    if (x.dim() == 0) return {};
    Ambient small(x.ambient().q(), x.dim());
    std::vector<Subspace> out;
    for (const auto& p : enumerate_subspaces(small, 1)) out.push_back(extend_from(p, x));
    std::sort(out.begin(), out.end());
    return out;
}

BigInt gauss(int v, int k, int q)
{
    if (q < 2) throw std::invalid_argument("q must be at least 2");
    if (k < 0 || k > v) return 0;
    BigInt num = 1, den = 1, Q = q;
    for (int i = 0; i < k; ++i) {
        num *= boost::multiprecision::pow(Q, v - i) - 1;
        den *= boost::multiprecision::pow(Q, k - i) - 1;
    }
    return num / den;
}

BigInt orbit_pair_count(int v, int q, int a, int b, int c)
{
    if (a < 0 || b < 0 || a > v || b > v) throw std::invalid_argument("dimension out of range");
    if (c < std::max(0, a + b - v) || c > std::min(a, b))
        throw std::invalid_argument("intersection dimension out of range");
    BigInt Q = q;
    return boost::multiprecision::pow(Q, (a - c) * (b - c)) * gauss(v, c, q) * gauss(v - c, a - c, q) *
           gauss(v - a, b - c, q);
}

int diameter(int v, const std::vector<int>& dims)
{
    if (dims.empty()) throw std::invalid_argument("empty dimension set");
    int best = v;
    for (int s : dims)
        for (int t : dims) best = std::min(best, std::abs(s + t - v));
    return v - best;
}

Row apply_matrix(const Ambient& amb, const Row& x, const std::vector<std::uint8_t>& m)
{
    const Field& f = *amb.field();
    const int v = amb.v();
    Row y(v, 0);
    for (int i = 0; i < v; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < v; ++j)
            if (m[i * v + j]) y[j] = std::uint8_t(f.add(y[j], f.mul(x[i], m[i * v + j])));
    }
    return y;
}

Subspace apply_matrix(const Subspace& x, const std::vector<std::uint8_t>& m)
{
    std::vector<Row> rows;
    for (int i = 0; i < x.dim(); ++i) rows.push_back(apply_matrix(x.ambient(), x.row(i), m));
    return Subspace(x.ambient(), rows);
}

Subspace apply_frobenius(const Subspace& x, int i)
{
    const Field& f = *x.ambient().field();
    auto rows = x.rows();
    for (auto& r : rows)
        for (auto& e : r) e = std::uint8_t(f.frobenius(e, i));
    return Subspace(x.ambient(), rows);
}

std::vector<std::uint8_t> invert_matrix(const Ambient& amb, const std::vector<std::uint8_t>& m)
{
    const Field& f = *amb.field();
    const int v = amb.v();
    std::vector<Row> aug(v, Row(2 * v, 0));
    for (int i = 0; i < v; ++i) {
        for (int j = 0; j < v; ++j) aug[i][j] = m[i * v + j];
        aug[i][v + i] = 1;
    }
    for (int c = 0; c < v; ++c) {
        int piv = -1;
        for (int i = c; i < v; ++i)
            if (aug[i][c]) { piv = i; break; }
        if (piv < 0) return {};
        std::swap(aug[c], aug[piv]);
        elem_t inv = f.inv(aug[c][c]);
        for (int j = 0; j < 2 * v; ++j) aug[c][j] = std::uint8_t(f.mul(aug[c][j], inv));
        for (int i = 0; i < v; ++i) {
            if (i == c || !aug[i][c]) continue;
            elem_t t = aug[i][c];
            for (int j = 0; j < 2 * v; ++j) aug[i][j] = std::uint8_t(f.sub(aug[i][j], f.mul(t, aug[c][j])));
        }
    }
    std::vector<std::uint8_t> out(v * v);
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) out[i * v + j] = aug[i][v + j];
    return out;
}

std::vector<std::uint8_t> multiply_matrix(const Ambient& amb, const std::vector<std::uint8_t>& a,
                                          const std::vector<std::uint8_t>& b)
{
    const Field& f = *amb.field();
    const int v = amb.v();
    std::vector<std::uint8_t> c(v * v, 0);
    for (int i = 0; i < v; ++i)
        for (int k = 0; k < v; ++k) {
            if (!a[i * v + k]) continue;
            for (int j = 0; j < v; ++j)
                c[i * v + j] = std::uint8_t(f.add(c[i * v + j], f.mul(a[i * v + k], b[k * v + j])));
        }
    return c;
}

Subspace restrict_to(const Subspace& x, const Subspace& w)
{
    if (!w.contains(x)) throw std::invalid_argument("subspace is not contained in the restriction target");
    auto piv = w.pivots();
    Ambient small(w.ambient().q(), w.dim());
    std::vector<Row> rows;
    for (int i = 0; i < x.dim(); ++i) {
        Row r(w.dim());
        for (int j = 0; j < w.dim(); ++j) r[j] = x.at(i, piv[j]);
        rows.push_back(std::move(r));
    }
    return Subspace(small, rows);
}

Subspace extend_from(const Subspace& y, const Subspace& w)
{
    if (y.v() != w.dim() || y.ambient().q() != w.ambient().q())
        throw std::invalid_argument("coordinate space does not match the subspace");
    const Field& f = *w.ambient().field();
    const int v = w.v();
    std::vector<Row> rows;
    for (int i = 0; i < y.dim(); ++i) {
        Row r(v, 0);
        for (int j = 0; j < w.dim(); ++j) {
            elem_t c = y.at(i, j);
            if (!c) continue;
            for (int t = 0; t < v; ++t) r[t] = std::uint8_t(f.add(r[t], f.mul(c, w.at(j, t))));
        }
        rows.push_back(std::move(r));
    }
    return Subspace(w.ambient(), rows);
}

Quotient::Quotient(const Subspace& p) : p_(p)
{
    const Ambient& amb = p.ambient();
    const int v = amb.v();
    if (p.dim() >= v) throw std::invalid_argument("cannot take the quotient by the whole space");
    tgt_ = Ambient(amb.q(), v - p.dim());
    std::vector<Row> basis = p.rows();
    for (int j = 0; j < v && int(basis.size()) < v; ++j) {
        Row e(v, 0);
        e[j] = 1;
        basis.push_back(e);
        if (rank_of(amb, basis) < int(basis.size())) basis.pop_back();
    }
    std::vector<std::uint8_t> m(v * v);
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < v; ++j) m[i * v + j] = basis[i][j];
    inv_ = invert_matrix(amb, m);
}

Subspace Quotient::image(const Subspace& x) const
{
    const int s = p_.dim();
    std::vector<Row> rows;
    for (int i = 0; i < x.dim(); ++i) {
        Row c = apply_matrix(p_.ambient(), x.row(i), inv_);
        rows.emplace_back(c.begin() + s, c.end());
    }
    return Subspace(tgt_, rows);
}

} // namespace subcode
