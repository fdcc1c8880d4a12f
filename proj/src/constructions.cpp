#include "subcode/constructions.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace subcode {

namespace {

int ipow(int b, int e)
{
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

Row unit(int v, int j)
{
    Row e(v, 0);
    e[j] = 1;
    return e;
}

void check_point(const Subspace& p)
{
    if (p.dim() != 1) throw std::invalid_argument("expected a point");
}

void check_hyperplane(const Subspace& h)
{
    if (h.dim() != h.v() - 1) throw std::invalid_argument("expected a hyperplane");
}

void check_pair(const SubspaceCode& c, const Subspace& p, const Subspace& h)
{
    check_point(p);
    check_hyperplane(h);
    if (!(p.ambient() == c.ambient()) || !(h.ambient() == c.ambient()))
        throw std::invalid_argument("point or hyperplane outside the ambient space");
    if (h.contains(p)) throw std::invalid_argument("point and hyperplane are incident");
}

// the W-basis used by lifted_gabidulin, as extension field elements
std::vector<elem_t> gabidulin_w_basis(const Tower& t, int k)
{
    const int n = t.n();
    if (k == n) return t.basis();
    if (n % k == 0) return t.subfield_basis(k);
    return std::vector<elem_t>(t.basis().begin(), t.basis().begin() + k);
}

void check_spec(const GabidulinSpec& s)
{
    if (s.k < 1 || s.delta < 1 || s.delta > s.k || s.k > s.v - s.k)
        throw std::invalid_argument("lifted Gabidulin needs 1 <= delta <= k <= v - k");
}

} // namespace

SubspaceCode lifted_gabidulin(const GabidulinSpec& s)
{
    check_spec(s);
    const int n = s.v - s.k;
    Tower t(s.q, n);
    const Field& ext = *t.ext();
    const int Q = ext.order();
    Ambient amb(s.q, s.v);
    auto wb = gabidulin_w_basis(t, s.k);
    const int terms = s.k - s.delta + 1;

    // powers w_j^{q^i}
    std::vector<std::vector<elem_t>> frob(s.k, std::vector<elem_t>(terms));
    for (int j = 0; j < s.k; ++j)
        for (int i = 0; i < terms; ++i) frob[j][i] = t.frob_q(wb[j], i);

    std::vector<Subspace> words;
    std::vector<int> a(terms, 0);
    std::vector<Row> rows(s.k, Row(s.v, 0));
    std::function<void(int)> rec = [&](int i) {
        if (i == terms) {
            for (int j = 0; j < s.k; ++j) {
                elem_t y = 0;
                for (int r = 0; r < terms; ++r) y = ext.add(y, ext.mul(elem_t(a[r]), frob[j][r]));
                auto c = t.coords(y);
                std::fill(rows[j].begin(), rows[j].end(), 0);
                rows[j][j] = 1;
                for (int r = 0; r < n; ++r) rows[j][s.k + r] = std::uint8_t(c[r]);
            }
            words.emplace_back(amb, rows);
            return;
        }
        for (int x = 0; x < Q; ++x) {
            a[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
    return SubspaceCode(amb, std::move(words));
}

Subspace gabidulin_special_flat(const GabidulinSpec& s)
{
    check_spec(s);
    Ambient amb(s.q, s.v);
    std::vector<Row> rows;
    for (int j = s.k; j < s.v; ++j) rows.push_back(unit(s.v, j));
    return Subspace(amb, rows);
}

DualityMap gabidulin_duality_map(const GabidulinSpec& s)
{
    check_spec(s);
    if (s.v != 2 * s.k) throw std::invalid_argument("duality map needs v = 2k");
    const int k = s.k, v = s.v;
    Tower t(s.q, k);
    const Field& ext = *t.ext();
    Ambient amb(s.q, v);
    const auto& b = t.basis();

    std::vector<std::uint8_t> phi(v * v, 0);
    for (int i = 0; i < k; ++i) {
        auto c = t.coords(t.frob_q(b[i], k - s.delta));
        for (int j = 0; j < k; ++j) phi[i * v + k + j] = std::uint8_t(c[j]);
        phi[(k + i) * v + i] = 1;
    }
    // Gram matrix of (a, b).(x, y) = Tr(ax + by)
    std::vector<std::uint8_t> gram(v * v, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            auto tr = std::uint8_t(t.trace_to_base(ext.mul(b[i], b[j])));
            gram[i * v + j] = tr;
            gram[(k + i) * v + k + j] = tr;
        }
    auto ginv = invert_matrix(amb, gram);
    if (ginv.empty()) throw std::logic_error("trace form is degenerate");
    return {phi, multiply_matrix(amb, ginv, phi)};
}

SubspaceCode spread(int q, int k)
{
    GabidulinSpec s{q, 2 * k, k, k};
    auto words = lifted_gabidulin(s).words();
    words.push_back(gabidulin_special_flat(s));
    return SubspaceCode(Ambient(q, 2 * k), std::move(words));
}

std::vector<Subspace> holes(const SubspaceCode& c)
{
    std::vector<Subspace> out;
    for (const auto& p : enumerate_subspaces(c.ambient(), 1)) {
        bool covered = false;
        for (const auto& w : c.words())
            if (w.contains(p)) { covered = true; break; }
        if (!covered) out.push_back(p);
    }
    return out;
}

SubspaceCode max_partial_spread(int q, int k, PartialSpreadInfo* info)
{
    if (k < 2) throw std::invalid_argument("max_partial_spread needs k >= 2");
    GabidulinSpec s{q, 2 * k + 2, k + 1, k};
    auto g = lifted_gabidulin(s);
    auto sflat = gabidulin_special_flat(s);
    const Ambient& amb = g.ambient();

    std::optional<Subspace> p, h;
    for (const auto& x : enumerate_subspaces(amb, 1))
        if (!sflat.contains(x)) { p = x; break; }
    for (const auto& x : enumerate_subspaces(amb, amb.v() - 1))
        if (!x.contains(sflat) && !x.contains(*p)) { h = x; break; }

    auto shortened = shorten_PH(g, *p, *h);
    auto words = shortened.words();
    words.push_back(restrict_to(meet(*h, sflat), *h));
    auto layer = restrict_dims(SubspaceCode(shortened.ambient(), words), {k});
    if (info) {
        auto hs = holes(layer);
        std::vector<Row> rows;
        for (const auto& x : hs) rows.push_back(x.row(0));
        Subspace y0(layer.ambient(), rows);
        for (const auto& w : layer.words())
            if (y0.contains(w)) info->moving = w;
        info->hole_space = y0;
    }
    return layer;
}

SubspaceCode shorten_H(const SubspaceCode& c, const Subspace& h)
{
    check_hyperplane(h);
    std::vector<Subspace> out;
    for (const auto& x : c.words())
        if (h.contains(x)) out.push_back(restrict_to(x, h));
    return SubspaceCode(Ambient(c.ambient().q(), h.dim()), std::move(out));
}

SubspaceCode shorten_P(const SubspaceCode& c, const Subspace& p)
{
    check_point(p);
    Quotient quo(p);
    std::vector<Subspace> out;
    for (const auto& x : c.words())
        if (x.contains(p)) out.push_back(quo.image(x));
    return SubspaceCode(quo.target(), std::move(out));
}

SubspaceCode shorten_PH(const SubspaceCode& c, const Subspace& p, const Subspace& h)
{
    check_pair(c, p, h);
    std::vector<Subspace> out;
    for (const auto& x : c.words()) {
        if (h.contains(x)) out.push_back(restrict_to(x, h));
        if (x.contains(p)) out.push_back(restrict_to(meet(x, h), h));
    }
    return SubspaceCode(Ambient(c.ambient().q(), h.dim()), std::move(out));
}

SubspaceCode puncture_H(const SubspaceCode& c, const Subspace& h)
{
    check_hyperplane(h);
    std::vector<Subspace> out;
    for (const auto& x : c.words()) out.push_back(restrict_to(meet(x, h), h));
    return SubspaceCode(Ambient(c.ambient().q(), h.dim()), std::move(out));
}

SubspaceCode puncture_P(const SubspaceCode& c, const Subspace& p)
{
    check_point(p);
    Quotient quo(p);
    std::vector<Subspace> out;
    for (const auto& x : c.words()) out.push_back(quo.image(x));
    return SubspaceCode(quo.target(), std::move(out));
}

SubspaceCode puncture_split(const SubspaceCode& c1, const SubspaceCode& c2, const Subspace& p, const Subspace& h)
{
    check_pair(c1, p, h);
    if (!(c1.ambient() == c2.ambient())) throw std::invalid_argument("codes live in different ambients");
    int d = code_union(c1, c2).min_distance();
    if (d != kInfiniteDistance && cross_distance(c1, c2) < d + 1)
        throw std::invalid_argument("puncture_split needs the two parts at distance at least d+1");
    std::vector<Subspace> out;
    for (const auto& x : c1.words()) out.push_back(restrict_to(meet(x, h), h));
    for (const auto& y : c2.words()) out.push_back(restrict_to(meet(join(y, p), h), h));
    return SubspaceCode(Ambient(c1.ambient().q(), h.dim()), std::move(out));
}

SubspaceCode construct_v5_d3(int q, V5D3Choice* choice)
{
    GabidulinSpec s{q, 6, 3, 2};
    auto g = lifted_gabidulin(s);
    auto sflat = gabidulin_special_flat(s);
    const Ambient& amb = g.ambient();

    std::vector<Subspace> planes;
    for (const auto& e : enumerate_subspaces(amb, 3))
        if (meet_dim(e, sflat) == 2) planes.push_back(e);
    auto points = enumerate_subspaces(amb, 1);
    auto hyper = enumerate_subspaces(amb, 5);

    for (const auto& e : planes) {
        auto l = meet(e, sflat);
        for (const auto& e2 : planes) {
            if (meet_dim(e, e2) != 1) continue;
            auto l2 = meet(e2, sflat);
            if (l2 == l) continue;
            for (const auto& p : points) {
                if (!e.contains(p) || sflat.contains(p)) continue;
                for (const auto& h : hyper) {
                    if (!h.contains(e2) || h.contains(p) || meet(h, sflat) != l2) continue;
                    auto words = g.words();
                    words.push_back(e);
                    words.push_back(e2);
                    if (choice) *choice = {e, e2, p, h};
                    return shorten_PH(SubspaceCode(amb, words), p, h);
                }
            }
        }
    }
    throw std::logic_error("no admissible configuration found");
}

namespace {

const char* const kCode7345[] = {
    "1000011,0101111,0011100",         "0100100,0010010,0001001",         "1001101,0100011,0011101",
    "0000100,0000010,0000001",         "1000111,0101010,0011111",         "1000000,0010011,0001010",
    "1000010,0101001,0010101",         "1000110,0101100,0010111",         "1000101,0110001,0001100",
    "1010010,0100101,0001110",         "1000100,0010001,0001011",         "1001110,0100110,0010100",
    "1001000,0100111,0011110",         "0100000,0010000,0001000",         "1001011,0100010,0010110",
    "1010100,0100001,0001111",         "1000001,0110111,0001101",         "1000110,0100100,0010110,0001110",
    "0100010,0010001,0001010,0000100", "1000011,0100011,0001010,0000111", "1000110,0100000,0010011,0001101",
    "1000000,0110000,0001001,0000010", "1000001,0100101,0010000,0001011", "1000011,0100101,0010101,0001111",
    "1000010,0101000,0011001,0000101", "1000101,0101001,0010001,0000010", "1000100,0010110,0001000,0000001",
    "1001001,0101010,0010010,0000110", "1010000,0110100,0001100,0000011", "1001010,0100010,0011000,0000101",
    "1001101,0101100,0011001,0000011", "1010001,0100011,0001000,0000100", "1001000,0100001,0010000,0000111",
    "1000000,0100000,0011100,0000001",
};

} // namespace

SubspaceCode embedded_7_34_5()
{
    Ambient amb(2, 7);
    std::vector<Subspace> words;
    for (const char* m : kCode7345) {
        std::vector<Row> rows;
        std::string text(m);
        for (std::size_t pos = 0; pos < text.size(); pos += 8) {
            Row r(7);
            for (int j = 0; j < 7; ++j) r[j] = std::uint8_t(text[pos + j] - '0');
            rows.push_back(r);
        }
        words.emplace_back(amb, rows);
    }
    return SubspaceCode(amb, std::move(words));
}

SubspaceCode optimal_d2_code(int q, int v)
{
    Ambient amb(q, v);
    int parity = v % 2 == 0 ? (v / 2) % 2 : 0;
    std::vector<int> dims;
    for (int i = 0; i <= v; ++i)
        if (i % 2 == parity) dims.push_back(i);
    return SubspaceCode(amb, enumerate_subspaces(amb, dims));
}

std::vector<std::vector<int>> d_vminus1_tags(int q, int v)
{
    int k = v / 2;
    if (v % 2 == 0) {
        int s = ipow(q, k);
        return {{0, s + 1, 0}, {1, s, 0}, {0, s, 1}, {1, s - 1, 1}};
    }
    int s = ipow(q, k + 1);
    return {{0, s + 1, 0, 0}, {0, 0, s + 1, 0}, {0, s, 1, 0}, {0, s, 0, 1}, {0, 1, s, 0}, {1, 0, s, 0}};
}

SubspaceCode optimal_d_vminus1_variant(int q, int v, const std::vector<int>& tag)
{
    if (v < 4) throw std::invalid_argument("d = v-1 variants need v >= 4");
    auto tags = d_vminus1_tags(q, v);
    auto idx = std::find(tags.begin(), tags.end(), tag) - tags.begin();
    if (idx == std::ptrdiff_t(tags.size())) throw std::invalid_argument("unknown dimension distribution tag");
    const int k = v / 2;
    Ambient amb(q, v);

    if (v % 2 == 0) {
        auto sp = spread(q, k);
        if (idx == 0) return sp;
        auto words = sp.words();
        auto x = words[0];
        auto xr = x.rows();
        Subspace x0(amb, std::vector<Row>(xr.begin(), xr.begin() + (k - 1)));
        if (idx == 1 || idx == 2) {
            words[0] = x0;
            SubspaceCode c(amb, words);
            return idx == 1 ? c : dualize(c);
        }
        auto y = words[1];
        auto base = join(x0, y);
        Subspace y0;
        for (int j = 0; j < v; ++j) {
            Subspace e(amb, {unit(v, j)});
            if (!base.contains(e)) { y0 = join(y, e); break; }
        }
        if (meet_dim(x0, y0) != 0) throw std::logic_error("complement choice failed");
        words.erase(words.begin(), words.begin() + 2);
        words.push_back(x0);
        words.push_back(y0);
        return SubspaceCode(amb, words);
    }

    if (k < 2) throw std::invalid_argument("odd variants need v >= 5");
    PartialSpreadInfo info;
    auto ps = max_partial_spread(q, k, &info);
    if (idx == 0) return ps;
    if (idx == 1) return dualize(ps);
    auto words = ps.words();
    words.erase(std::find(words.begin(), words.end(), info.moving));
    if (idx == 2 || idx == 4) {
        words.push_back(info.hole_space);
        SubspaceCode c(amb, words);
        return idx == 2 ? c : dualize(c);
    }
    Subspace y;
    for (int j = 0; j < v; ++j) {
        Subspace e(amb, {unit(v, j)});
        if (!info.hole_space.contains(e)) { y = join(info.hole_space, e); break; }
    }
    words.push_back(y);
    SubspaceCode c(amb, words);
    return idx == 3 ? c : dualize(c);
}

SubspaceCode mixed_6_9_5_code(int variant)
{
    if (variant != 0 && variant != 1) throw std::invalid_argument("variant must be 0 or 1");
    Tower t(2, 3);
    const Field& f8 = *t.ext();
    Ambient amb(2, 6);
    const auto& b = t.basis();
    auto embed_pair = [&](elem_t x, elem_t y) {
        Row r(6, 0);
        auto cx = t.coords(x), cy = t.coords(y);
        for (int j = 0; j < 3; ++j) {
            r[j] = std::uint8_t(cx[j]);
            r[3 + j] = std::uint8_t(cy[j]);
        }
        return r;
    };
    std::vector<Subspace> words;
    for (int y = 1; y < 8; ++y) {
        std::vector<Row> rows;
        for (int j = 0; j < 3; ++j) rows.push_back(embed_pair(b[j], f8.mul(b[j], elem_t(y))));
        words.emplace_back(amb, rows);
    }
    const elem_t alpha = f8.generator();
    words.emplace_back(amb, std::vector<Row>{embed_pair(alpha, 0), embed_pair(f8.pow(alpha, 2), 0)});
    elem_t lead = variant == 0 ? elem_t(1) : f8.pow(alpha, 3);
    std::vector<Row> solid{embed_pair(lead, 0)};
    for (int j = 0; j < 3; ++j) solid.push_back(embed_pair(0, b[j]));
    words.emplace_back(amb, solid);
    return SubspaceCode(amb, words);
}

} // namespace subcode
