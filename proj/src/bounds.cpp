#include "subcode/bounds.hpp"

#include "subcode/pg.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace subcode {

namespace {

BigInt ipow(int b, int e) { return boost::multiprecision::pow(BigInt(b), e); }

BigInt ceil_div(const BigInt& a, const BigInt& b)
{
    BigInt q = a / b, r = a % b;
    if (r != 0 && ((r > 0) == (b > 0))) ++q;
    return q;
}

long ceil_div(long a, long b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

void add_tag(std::vector<std::string>& tags, const std::string& t)
{
    if (std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
}

std::vector<int> all_dims(int v)
{
    std::vector<int> d(v + 1);
    for (int i = 0; i <= v; ++i) d[i] = i;
    return d;
}

BoundRecord make_record(int q, int v, int d, BigInt lo, BigInt hi, std::string tag)
{
    BoundRecord r;
    r.q = q;
    r.v = v;
    r.d = d;
    r.dims = all_dims(v);
    r.lower = std::move(lo);
    r.upper = std::move(hi);
    r.provenance.push_back(std::move(tag));
    return r;
}

bool prime_power(int q)
{
    if (q < 2) return false;
    int p = 2;
    while (q % p) ++p;
    while (q % p == 0) q /= p;
    return q == 1;
}

void check_q(int q)
{
    if (!prime_power(q)) throw std::invalid_argument("unsupported field order " + std::to_string(q));
}

} // namespace

std::string BoundRecord::value_string() const
{
    if (exact()) return lower.str();
    return lower.str() + "-" + upper.str();
}

BigInt bonferroni_lower(const MomentBounds& m)
{
    if (m.mu1_lower <= 0) throw std::invalid_argument("first moment must be positive");
    if (m.mu2_upper < 0) throw std::invalid_argument("second moment must be nonnegative");
    BigInt i0 = 1 + (2 * m.mu2_upper) / m.mu1_lower;
    BigInt bound = ceil_div(2 * (m.mu1_lower * i0 - m.mu2_upper), i0 * (i0 + 1));
    if (m.universe && bound > *m.universe) bound = *m.universe;
    return bound;
}

BigInt packing_bound(int q, int v, int k, int delta)
{
    if (delta < 1 || delta > k || k > v) throw std::invalid_argument("packing bound needs 1 <= delta <= k <= v");
    int t = k - delta + 1;
    return gauss(v, t, q) / gauss(k, t, q);
}

std::optional<std::pair<Interval, std::string>> known_layer(int q, int v, int delta, int k)
{
    check_q(q);
    if (k < 0 || k > v || delta < 1) throw std::invalid_argument("layer out of range");
    int kk = std::min(k, v - k);
    if (kk < delta) return std::pair{Interval::exactly(1), std::string("at most one word below half the distance")};
    if (delta == 1) return std::pair{Interval::exactly(gauss(v, k, q)), std::string("all subspaces of one dimension")};
    if (kk == delta) {
        if (v % kk == 0)
            return std::pair{Interval::exactly((ipow(q, v) - 1) / (ipow(q, kk) - 1)), std::string("spread")};
        if (v == 2 * kk + 1)
            return std::pair{Interval::exactly(ipow(q, kk + 1) + 1), std::string("maximal partial spread")};
        if (kk == 2 && v % 2 == 1)
            return std::pair{Interval::exactly((ipow(q, v) - ipow(q, 3)) / (q * q - 1) + 1),
                             std::string("external citation: maximal partial line spread")};
    }
    if (q == 2 && v == 6 && kk == 3 && delta == 2)
        return std::pair{Interval::exactly(77), std::string("external citation: optimal (6,77,4;3) codes")};
    if (q == 2 && v == 7 && kk == 3 && delta == 2)
        return std::pair{Interval{329, packing_bound(2, 7, 3, 2)},
                         std::string("external citation: (7,329,4;3) code; packing bound")};
    if (kk < delta || kk > v - kk) return std::nullopt;
    return std::pair{Interval{ipow(q, (kk - delta + 1) * (v - kk)), packing_bound(q, v, kk, delta)},
                     std::string("lifted MRD code; packing bound")};
}

BoundRecord sandwich_bounds(int q, int v, int d, const LayerValues& layers)
{
    check_q(q);
    if (v < 1 || d < 1 || d > v) throw std::invalid_argument("sandwich bounds need 1 <= d <= v");
    int h = (d + 1) / 2;
    auto layer = [&](int k) -> Interval {
        auto it = layers.find(k);
        if (it != layers.end()) return it->second;
        if (k < h || k > v - h) return Interval::exactly(1);
        throw std::invalid_argument("missing layer value for k=" + std::to_string(k));
    };
    BigInt lo = 0, hi = 2;
    for (int k = 0; k <= v; ++k)
        if (((k - v / 2) % d + d) % d == 0) lo += layer(k).lower;
    for (int k = h; k <= v - h; ++k) hi += layer(k).upper;
    return make_record(q, v, d, lo, hi, "layer sandwich");
}

bool has_closed_form(int q, int v, int d)
{
    if (!prime_power(q) || v < 1 || d < 1 || d > v) return false;
    return d <= 2 || d >= v - 2;
}

BoundRecord closed_form(int q, int v, int d)
{
    check_q(q);
    if (!has_closed_form(q, v, d)) throw std::invalid_argument("no closed form for these parameters");
    if (d == 1) {
        BigInt s = 0;
        for (int k = 0; k <= v; ++k) s += gauss(v, k, q);
        return make_record(q, v, d, s, s, "all subspaces (d=1)");
    }
    if (d == 2) {
        int parity = v % 2 == 0 ? (v / 2) % 2 : 0;
        BigInt s = 0;
        for (int k = parity; k <= v; k += 2) s += gauss(v, k, q);
        return make_record(q, v, d, s, s, "one parity class of dimensions (d=2)");
    }
    if (d == v) {
        BigInt x = v % 2 ? BigInt(2) : ipow(q, v / 2) + 1;
        return make_record(q, v, d, x, x, v % 2 ? "complementary pair (d=v odd)" : "spread (d=v even)");
    }
    int k = v / 2;
    if (d == v - 1) {
        BigInt x = v % 2 == 0 ? ipow(q, k) + 1 : ipow(q, k + 1) + 1;
        return make_record(q, v, d, x, x, v % 2 ? "partial spread (d=v-1 odd)" : "spread (d=v-1 even)");
    }
    // d == v - 2 with v >= 5
    if (v % 2 == 1) {
        BigInt a = 2 * ipow(q, k + 1) + 1;
        if (v == 5) return make_record(q, v, d, a + 1, a + 1, "shortened Gabidulin code (v=5, d=3)");
        if (q == 2 && v == 7) return make_record(q, v, d, 34, 34, "computer-found (7,34,5) code; layer argument");
        return make_record(q, v, d, a, a + 1, "layer argument (d=v-2 odd)");
    }
    if (v == 6) {
        if (q == 2) return make_record(q, v, d, 77, 77, "external citation: optimal (6,77,4;3) codes");
        BigInt lo = ipow(q, 6) + 2 * q * q + 2 * q + 1;
        BigInt hi = (ipow(q, 3) + 1) * (ipow(q, 3) + 1);
        return make_record(q, v, d, lo, hi, "constant-dimension bounds (v=6, d=4)");
    }
    BigInt lo = ipow(q, 2 * k) + 1;
    BigInt hi = (ipow(q, k) + 1) * (ipow(q, k) + 1);
    return make_record(q, v, d, lo, hi, "constant-dimension bounds (d=v-2 even)");
}

int f_delta4(int delta)
{
    if (delta < 0 || delta > 190) throw std::out_of_range("f is defined on 0..190");
    if (delta == 0) return 381;
    if (delta <= 140) {
        long i0 = (delta + 34) / 35;
        return int(381 - ceil_div(long(delta) * (1 + 70 * i0 - delta), 7 * i0 * (i0 + 1)));
    }
    return 381 - delta;
}

namespace {

void check_41(int delta)
{
    if (delta < 0 || delta > 41) throw std::out_of_range("argument must lie in 0..41");
}

// lower bound for the number of points covered by x planes at mutual distance >= 4
long plane_point_cover(long x)
{
    if (x == 0) return 0;
    long i0 = (x + 6) / 7;
    return ceil_div(x * (14 * i0 + 1 - x), i0 * (i0 + 1));
}

} // namespace

int g1_delta2(int delta)
{
    check_41(delta);
    return int(381 - ceil_div(long(delta) * (383 - 9 * delta), 14));
}

int g2_delta2(int delta)
{
    check_41(delta);
    long t = 127 - 3 * delta;
    return int(t * ((t - 1) / 2) / 21);
}

int g3_delta2(int delta)
{
    check_41(delta);
    int best = 0;
    for (int x = 0; x <= 381; ++x)
        if (plane_point_cover(x) <= 127 - 3 * delta) best = x;
    return best;
}

int g_delta2(int delta) { return std::min({g1_delta2(delta), g2_delta2(delta), g3_delta2(delta)}); }

LineCountOptimum line_count_optimum()
{
    LineCountOptimum best;
    for (int a1 = 0; 4 * a1 <= 1024; ++a1)
        for (int a2 = 0; a2 <= 155 && 3 * a1 + 6 * a2 <= 1488; ++a2) {
            int val = a1 + a2;
            if (val > best.value) best = {a1, a2, val, 1};
            else if (val == best.value) ++best.optima;
        }
    return best;
}

int h_delta5(int delta)
{
    check_41(delta);
    if (delta == 0) return 381;
    long best = 0;
    for (long t = 1; t <= 35; ++t) {
        long d = delta;
        long i0 = 1 + 7 * (d - 1) / t;
        long c = std::max(ceil_div(d * (2 * t * i0 + 7 - 7 * d), i0 * (i0 + 1)), ceil_div(t * d, 9));
        best = std::max(best, std::min(41 - t, ceil_div(c, 7)));
    }
    int h = int(381 - best);
    if (delta == 1) h = std::min(h, line_count_optimum().value);
    return h;
}

int middle_pair_max(int u3, int u4)
{
    int best = -1;
    for (int d4 = 0; d4 <= std::min({u3, u4, 190}); ++d4) best = std::max(best, std::min(u3, f_delta4(d4)) + d4);
    return best;
}

A274Result upper_bound_A2_7_4(int threads)
{
    struct Cell {
        int value = -1;
        std::vector<A274Solution> argmax;
    };
    std::vector<int> g(42), h(42);
    for (int i = 0; i <= 41; ++i) {
        g[i] = g_delta2(i);
        h[i] = h_delta5(i);
    }
    std::vector<Cell> cells(42 * 42);
    auto work = [&](int d2) {
        for (int d5 = 0; d5 <= 41; ++d5) {
            int u3 = std::min(g[d2], h[d5]);
            int u4 = std::min(g[d5], h[d2]);
            Cell& c = cells[d2 * 42 + d5];
            for (int d4 = 0; d4 <= std::min({u3, u4, 190}); ++d4) {
                int d3 = std::min(u3, f_delta4(d4));
                A274Solution s{d2, d3, d4, d5};
                if (s.middle() > c.value) {
                    c.value = s.middle();
                    c.argmax = {s};
                } else if (s.middle() == c.value) {
                    c.argmax.push_back(s);
                }
            }
        }
    };
    threads = std::max(1, std::min(threads, 42));
    if (threads == 1) {
        for (int d2 = 0; d2 <= 41; ++d2) work(d2);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (int d2 = t; d2 <= 41; d2 += threads) work(d2);
            });
        for (auto& th : pool) th.join();
    }

    A274Result r;
    for (const auto& c : cells) r.interior = std::max(r.interior, c.value);
    for (const auto& c : cells) {
        for (const auto& s : c.argmax) {
            if (c.value == r.interior) r.optima.push_back(s);
            if (c.value >= r.interior - 1) r.near_optimal.push_back(s);
            // at most one word of dimension <= 1 fits when delta_2 = 0, likewise for >= 6
            r.bound = std::max(r.bound, c.value + (s.d2 == 0) + (s.d5 == 0));
        }
    }
    return r;
}

namespace {

void tighten(BoundRecord& acc, const BigInt& lo, const BigInt& hi, const std::string& tag,
             std::vector<std::pair<BoundRecord, std::string>>& seen)
{
    if (lo > acc.lower) acc.lower = lo;
    if (hi < acc.upper) acc.upper = hi;
    seen.push_back({make_record(acc.q, acc.v, acc.d, lo, hi, tag), tag});
}

} // namespace

std::vector<BoundRecord> bounds_table(int q, int v_max)
{
    check_q(q);
    if (v_max < 1 || v_max > 7) throw std::invalid_argument("bounds table supports v <= 7");
    std::vector<BoundRecord> out;
    for (int v = 2; v <= v_max; ++v)
        for (int d = 2; d <= v; ++d) {
            BoundRecord acc = closed_form(q, v, 1);
            acc.d = d;
            acc.lower = 0;
            acc.provenance.clear();
            std::vector<std::pair<BoundRecord, std::string>> seen;

            if (has_closed_form(q, v, d)) {
                auto c = closed_form(q, v, d);
                tighten(acc, c.lower, c.upper, c.provenance.front(), seen);
            }
            LayerValues layers;
            std::vector<std::string> layer_tags;
            bool complete = true;
            int h = (d + 1) / 2;
            for (int k = 0; k <= v && complete; ++k) {
                auto l = known_layer(q, v, h, k);
                if (!l) {
                    complete = false;
                    break;
                }
                layers[k] = l->first;
                if (k >= h && k <= v - h) add_tag(layer_tags, l->second);
            }
            if (complete) {
                auto s = sandwich_bounds(q, v, d, layers);
                std::string tag = "layer sandwich";
                for (const auto& t : layer_tags) tag += "; " + t;
                tighten(acc, s.lower, s.upper, tag, seen);
            }
            if (q == 2 && v == 6 && d == 3)
                tighten(acc, 104, 77 + 2 * 21 - 1, "external citation: (6,104,3) code; layer exclusion bound 77+2*21-1",
                        seen);
            if (q == 2 && v == 7 && d == 3)
                tighten(acc, 593, 776, "external citation: (7,593,3) code; semidefinite programming bound", seen);
            if (q == 2 && v == 7 && d == 4) {
                BigInt ub = upper_bound_A2_7_4().bound;
                tighten(acc, 330, ub, "external citation: (7,329,4;3) code plus the whole space; layer counting bound",
                        seen);
            }
            for (const auto& [r, tag] : seen)
                if (r.lower == acc.lower || r.upper == acc.upper) add_tag(acc.provenance, tag);
            if (acc.lower > acc.upper) throw std::logic_error("inconsistent bounds at v=" + std::to_string(v));
            out.push_back(std::move(acc));
        }
    return out;
}

UnimodalReport unimodal_check(int q, int v, int delta, const LayerValues& known)
{
    check_q(q);
    UnimodalReport rep;
    for (int k = std::max(delta, 1); k <= v / 2; ++k) {
        auto a = known.find(k), b = known.find(k - 1);
        if (a == known.end() || b == known.end()) continue;
        UnimodalPair p;
        p.k = k;
        if (!a->second.exact() || !b->second.exact()) {
            p.status = UnimodalPair::Status::flagged;
            rep.pairs.push_back(p);
            continue;
        }
        const BigInt& x = a->second.lower;
        const BigInt& y = b->second.lower;
        p.weak = x > q * y;
        // x / y > q^e C with C = 1 or (q-1)/q
        int e = v - 2 * k + delta;
        BigInt lhs = x, rhs = y;
        if (e >= 0) rhs *= ipow(q, e);
        else lhs *= ipow(q, -e);
        if (delta >= 2) {
            lhs *= q;
            rhs *= q - 1;
        }
        p.strong = lhs > rhs;
        p.status = p.weak && p.strong ? UnimodalPair::Status::pass : UnimodalPair::Status::fail;
        if (p.status == UnimodalPair::Status::fail) rep.ok = false;
        rep.pairs.push_back(p);
    }
    return rep;
}

} // namespace subcode
