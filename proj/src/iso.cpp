#include "subcode/iso.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace subcode {

namespace {

int field_degree(const Ambient& amb) { return amb.field()->m(); }

void check_isometry(const Ambient& amb, const Isometry& g)
{
    const int v = amb.v();
    if (int(g.matrix.size()) != v * v) throw std::invalid_argument("isometry matrix has the wrong size");
    for (auto e : g.matrix)
        if (e >= amb.q()) throw std::invalid_argument("isometry matrix entry outside the field");
    if (invert_matrix(amb, g.matrix).empty()) throw std::invalid_argument("singular isometry matrix");
}

Subspace apply_unchecked(const Isometry& g, const Subspace& x)
{
    Subspace y = g.polar ? dual(x) : x;
    int m = field_degree(x.ambient());
    int i = ((g.field_auto % m) + m) % m;
    if (i) y = apply_frobenius(y, i);
    return apply_matrix(y, g.matrix);
}

using Bits = std::array<std::uint64_t, 4>;

void set_bit(Bits& b, int i) { b[i >> 6] |= std::uint64_t(1) << (i & 63); }
bool has_bit(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }
Bits operator&(Bits a, const Bits& b)
{
    for (int i = 0; i < 4; ++i) a[i] &= b[i];
    return a;
}

// F_q^v with vectors encoded as sum x_j q^j
class VSpace {
public:
    explicit VSpace(const Ambient& amb) : amb_(amb), q_(amb.q()), v_(amb.v())
    {
        pow_.assign(v_ + 1, 1);
        for (int i = 0; i < v_; ++i) {
            pow_[i + 1] = pow_[i] * q_;
            if (pow_[i + 1] > 256) throw std::invalid_argument("isometry computations need q^v <= 256");
        }
        n_ = pow_[v_];
        const Field& f = *amb.field();
        add_.resize(n_ * n_);
        mul_.resize(q_ * n_);
        for (int x = 0; x < n_; ++x) {
            Row rx = row(x);
            for (int y = 0; y < n_; ++y) {
                Row ry = row(y), s(v_);
                for (int j = 0; j < v_; ++j) s[j] = std::uint8_t(f.add(rx[j], ry[j]));
                add_[x * n_ + y] = std::uint8_t(index(s));
            }
            for (int l = 0; l < q_; ++l) {
                Row s(v_);
                for (int j = 0; j < v_; ++j) s[j] = std::uint8_t(f.mul(elem_t(l), rx[j]));
                mul_[l * n_ + x] = std::uint8_t(index(s));
            }
        }
        // perp_[p] = vectors orthogonal to p under the standard form
        perp_.assign(n_, Bits{});
        for (int p = 0; p < n_; ++p) {
            Row rp = row(p);
            for (int x = 0; x < n_; ++x) {
                Row rx = row(x);
                elem_t dot = 0;
                for (int j = 0; j < v_; ++j) dot = f.add(dot, f.mul(rx[j], rp[j]));
                if (!dot) set_bit(perp_[p], x);
            }
        }
        dim_of_.assign(n_ + 1, -1);
        for (int k = 0; k <= v_; ++k) dim_of_[pow_[k]] = k;
        frob_.assign(f.m(), std::vector<std::uint8_t>(n_));
        for (int i = 0; i < f.m(); ++i)
            for (int x = 0; x < n_; ++x) {
                Row r = row(x);
                for (auto& e : r) e = std::uint8_t(f.frobenius(e, i));
                frob_[i][x] = std::uint8_t(index(r));
            }
    }

    const Bits& perp(int p) const { return perp_[p]; }
    // dimension of a subspace with the given number of vectors
    int dim_of(int count) const { return dim_of_[count]; }
    int frobenius(int i, int x) const { return frob_[i][x]; }

    int n() const { return n_; }
    int q() const { return q_; }
    int v() const { return v_; }
    int pw(int k) const { return pow_[k]; }
    const Ambient& ambient() const { return amb_; }
    int add(int x, int y) const { return add_[x * n_ + y]; }
    int mul(int l, int x) const { return mul_[l * n_ + x]; }

    int index(const Row& r) const
    {
        int x = 0;
        for (int j = v_ - 1; j >= 0; --j) x = x * q_ + r[j];
        return x;
    }
    Row row(int x) const
    {
        Row r(v_);
        for (int j = 0; j < v_; ++j) r[j] = std::uint8_t(x % q_), x /= q_;
        return r;
    }
    Bits vectors(const Subspace& s) const
    {
        std::vector<int> span{0};
        for (int i = 0; i < s.dim(); ++i) {
            int b = index(s.row(i));
            std::size_t m = span.size();
            for (int l = 1; l < q_; ++l)
                for (std::size_t j = 0; j < m; ++j) span.push_back(add(span[j], mul(l, b)));
        }
        Bits out{};
        for (int x : span) set_bit(out, x);
        return out;
    }
    Subspace subspace(const Bits& b) const
    {
        std::vector<Row> rows;
        for (int x = 1; x < n_; ++x)
            if (has_bit(b, x)) rows.push_back(row(x));
        return rows.empty() ? Subspace::zero(amb_) : Subspace(amb_, rows);
    }

private:
    Ambient amb_;
    int q_, v_, n_;
    std::vector<int> pow_;
    std::vector<std::uint8_t> add_, mul_;
    std::vector<Bits> perp_;
    std::vector<int> dim_of_;
    std::vector<std::vector<std::uint8_t>> frob_;
};

int popcount(const Bits& b)
{
    int c = 0;
    for (auto w : b) c += std::popcount(w);
    return c;
}

bool subset(const Bits& a, const Bits& b)
{
    for (int i = 0; i < 4; ++i)
        if (a[i] & ~b[i]) return false;
    return true;
}

const VSpace& vspace(const Ambient& amb)
{
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<VSpace>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{amb.q(), amb.v()}];
    if (!slot) slot = std::make_unique<VSpace>(amb);
    return *slot;
}

struct Enc {
    std::vector<Bits> words;
    std::vector<int> dims;
};

Enc encode(const VSpace& vs, const SubspaceCode& c)
{
    Enc e;
    for (const auto& w : c.words()) {
        e.words.push_back(vs.vectors(w));
        e.dims.push_back(w.dim());
    }
    return e;
}

// Frob^i(polar ? X^perp : X) on vector sets
Enc transform(const VSpace& vs, const Enc& e, int i, bool polar)
{
    Enc out;
    for (std::size_t w = 0; w < e.words.size(); ++w) {
        Bits x = e.words[w];
        int dim = e.dims[w];
        if (polar) {
            Bits y;
            y.fill(~std::uint64_t(0));
            for (int p = 1; p < vs.n(); ++p)
                if (has_bit(x, p)) y = y & vs.perp(p);
            x = y & vs.perp(0);
            dim = vs.v() - dim;
        }
        if (i) {
            Bits y{};
            for (int p = 0; p < vs.n(); ++p)
                if (has_bit(x, p)) set_bit(y, vs.frobenius(i, p));
            x = y;
        }
        out.words.push_back(x);
        out.dims.push_back(dim);
    }
    return out;
}

// Colour refinement on the incidence of vectors and words of two codes, with
// one dictionary so that colours are comparable across the pair.
struct Colours {
    std::vector<int> va, vb, wa, wb;
    int vector_colours = 0;
    bool consistent = true;
};

Colours refine(const VSpace& vs, const Enc& a, const Enc& b)
{
    Colours c;
    const int n = vs.n();
    c.va.assign(n, 0);
    c.va[0] = 1;
    c.vb = c.va;
    c.wa = a.dims;
    c.wb = b.dims;
    auto same_multiset = [](std::vector<int> x, std::vector<int> y) {
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        return x == y;
    };
    c.consistent = same_multiset(c.wa, c.wb);
    int classes = 2;
    while (c.consistent) {
        std::map<std::vector<int>, int> wdict, vdict;
        auto words = [&](const Enc& e, const std::vector<int>& vcol, std::vector<int>& wcol) {
            for (std::size_t i = 0; i < e.words.size(); ++i) {
                std::vector<int> key{wcol[i]};
                for (int x = 0; x < n; ++x)
                    if (has_bit(e.words[i], x)) key.push_back(vcol[x]);
                std::sort(key.begin() + 1, key.end());
                wcol[i] = wdict.try_emplace(key, int(wdict.size())).first->second;
            }
        };
        words(a, c.va, c.wa);
        words(b, c.vb, c.wb);
        auto vectors = [&](const Enc& e, std::vector<int>& vcol, const std::vector<int>& wcol) {
            for (int x = 0; x < n; ++x) {
                std::vector<int> key{vcol[x]};
                for (std::size_t i = 0; i < e.words.size(); ++i)
                    if (has_bit(e.words[i], x)) key.push_back(wcol[i]);
                std::sort(key.begin() + 1, key.end());
                vcol[x] = vdict.try_emplace(key, int(vdict.size())).first->second;
            }
        };
        vectors(a, c.va, c.wa);
        vectors(b, c.vb, c.wb);
        c.consistent = same_multiset(c.va, c.vb) && same_multiset(c.wa, c.wb);
        c.vector_colours = int(vdict.size());
        if (int(vdict.size()) <= classes) break;
        classes = int(vdict.size());
    }
    return c;
}

using Key = std::pair<int, Bits>;

// Backtracking over images b_1..b_v of a fixed source basis a_1..a_v. A
// partial map on span(a_1..a_k) survives when it respects vector signatures
// and sends the traces X meet span(a_1..a_k) onto the traces Y meet
// span(b_1..b_k) as multisets.
class Matcher {
public:
    Matcher(const VSpace& vs, const Enc& a, const Enc& b, BudgetTracker& tr) : vs_(vs), a_(a), b_(b), tr_(tr)
    {
        Colours col = refine(vs, a, b);
        sa_ = col.va;
        sb_ = col.vb;
        wa_ = col.wa;
        wb_ = col.wb;
        feasible_ = col.consistent;

        // rare colours first
        std::vector<int> freq(col.vector_colours + 2, 0);
        for (int x = 1; x < vs.n(); ++x) ++freq[sa_[x]];
        Bits span{};
        set_bit(span, 0);
        std::vector<int> spanned{0};
        for (int k = 0; k < vs.v(); ++k) {
            int pick = -1;
            for (int x = 1; x < vs.n(); ++x)
                if (!has_bit(span, x) && (pick < 0 || freq[sa_[x]] < freq[sa_[pick]])) pick = x;
            basis_.push_back(pick);
            std::size_t m = spanned.size();
            for (int l = 1; l < vs.q(); ++l)
                for (std::size_t j = 0; j < m; ++j) {
                    int y = vs.add(spanned[j], vs.mul(l, pick));
                    spanned.push_back(y);
                    set_bit(span, y);
                }
        }
        src_ = spanned; // coefficient index -> source vector
        const std::size_t na = a.words.size();
        in_a_.assign(na, Bits{});
        for (std::size_t i = 0; i < na; ++i)
            for (int c = 0; c < vs.n(); ++c)
                if (has_bit(a.words[i], src_[c])) set_bit(in_a_[i], c);
        tgt_.assign(vs.n(), 0);
        img_.assign(vs.v(), 0);
        span_.assign(vs.v() + 1, Bits{});
        set_bit(span_[0], 0);
        trace_.assign(vs.v() + 1, std::vector<Bits>(na, Bits{}));
        for (auto& t0 : trace_[0]) set_bit(t0, 0);
        ka_.assign(vs.v() + 1, std::vector<Key>(na));
        kb_.assign(vs.v() + 1, std::vector<Key>(b.words.size()));
    }

    const std::vector<int>& basis() const { return basis_; }
    bool exhausted() const { return exhausted_; }

    // leaf receives the images of the basis; returning true stops the search
    void run(const std::vector<int>& forced, const std::function<bool(const std::vector<int>&)>& leaf)
    {
        if (!feasible_) return;
        forced_ = &forced;
        leaf_ = &leaf;
        dfs(0);
    }

    std::vector<std::uint8_t> matrix(const std::vector<int>& images) const
    {
        const int v = vs_.v();
        std::vector<std::uint8_t> am, bm;
        for (int i = 0; i < v; ++i) {
            auto ra = vs_.row(basis_[i]), rb = vs_.row(images[i]);
            am.insert(am.end(), ra.begin(), ra.end());
            bm.insert(bm.end(), rb.begin(), rb.end());
        }
        return multiply_matrix(vs_.ambient(), invert_matrix(vs_.ambient(), am), bm);
    }

private:
    bool dfs(int k)
    {
        if (!tr_.tick()) {
            exhausted_ = true;
            return true;
        }
        if (k == vs_.v()) return (*leaf_)(img_);
        if (int(forced_->size()) > k) return attempt(k, (*forced_)[k]);
        for (int y = 1; y < vs_.n(); ++y)
            if (attempt(k, y)) return true;
        return false;
    }

    bool attempt(int k, int y)
    {
        if (has_bit(span_[k], y) || sb_[y] != sa_[basis_[k]]) return false;
        const int lo = vs_.pw(k), hi = vs_.pw(k + 1);
        for (int l = 1; l < vs_.q(); ++l) {
            int ly = vs_.mul(l, y);
            for (int c = 0; c < lo; ++c) {
                int cc = c + l * lo;
                tgt_[cc] = vs_.add(tgt_[c], ly);
                if (sb_[tgt_[cc]] != sa_[src_[cc]]) return false;
            }
        }
        Bits w = span_[k];
        for (int cc = lo; cc < hi; ++cc) set_bit(w, tgt_[cc]);
        span_[k + 1] = w;
        auto& ka = ka_[k + 1];
        auto& kb = kb_[k + 1];
        for (std::size_t i = 0; i < a_.words.size(); ++i) {
            Bits t = trace_[k][i];
            for (int cc = lo; cc < hi; ++cc)
                if (has_bit(in_a_[i], cc)) set_bit(t, tgt_[cc]);
            trace_[k + 1][i] = t;
            ka[i] = {wa_[i], t};
        }
        for (std::size_t j = 0; j < b_.words.size(); ++j) kb[j] = {wb_[j], b_.words[j] & w};
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        if (ka != kb) return false;
        img_[k] = y;
        return dfs(k + 1);
    }

    const VSpace& vs_;
    const Enc &a_, &b_;
    BudgetTracker& tr_;
    std::vector<int> sa_, sb_, wa_, wb_, basis_, src_, tgt_, img_;
    std::vector<Bits> in_a_, span_;
    std::vector<std::vector<Bits>> trace_;
    std::vector<std::vector<Key>> ka_, kb_;
    bool feasible_ = true, exhausted_ = false;
    const std::vector<int>* forced_ = nullptr;
    const std::function<bool(const std::vector<int>&)>* leaf_ = nullptr;
};

// The group modulo GL: Frobenius powers and the polarity
std::vector<Isometry> outer_parts(const Ambient& amb)
{
    std::vector<Isometry> out;
    for (int polar = 0; polar < 2; ++polar)
        for (int i = 0; i < field_degree(amb); ++i) {
            Isometry g = Isometry::identity(amb);
            g.field_auto = i;
            g.polar = polar;
            out.push_back(g);
        }
    return out;
}

using Label = std::vector<Key>;

struct CanonRun {
    std::vector<Label> seq;
    std::size_t survivors = 0;
    bool complete = true;
};

constexpr std::size_t kMaxSurvivors = std::size_t(1) << 21;

// Lexicographically least label sequence over all ordered bases b_1..b_v;
// level k labels the words by their coordinate sets inside span(b_1..b_k).
CanonRun canon_gl(const VSpace& vs, const Enc& e, BudgetTracker& tr)
{
    CanonRun run;
    std::vector<std::vector<std::uint8_t>> cur{{0}};
    Label lab(e.words.size());
    for (int k = 0; k < vs.v(); ++k) {
        const int lo = vs.pw(k), hi = vs.pw(k + 1);
        Label best;
        bool have = false;
        std::vector<std::vector<std::uint8_t>> next;
        for (const auto& s : cur) {
            Bits span{};
            for (int c = 0; c < lo; ++c) set_bit(span, s[c]);
            std::vector<std::uint8_t> vec(hi);
            std::copy(s.begin(), s.end(), vec.begin());
            for (int y = 1; y < vs.n(); ++y) {
                if (has_bit(span, y)) continue;
                if (!tr.tick()) {
                    run.complete = false;
                    return run;
                }
                for (int l = 1; l < vs.q(); ++l) {
                    int ly = vs.mul(l, y);
                    for (int c = 0; c < lo; ++c) vec[c + l * lo] = std::uint8_t(vs.add(vec[c], ly));
                }
                for (std::size_t i = 0; i < e.words.size(); ++i) {
                    Bits j{};
                    for (int c = 0; c < hi; ++c)
                        if (has_bit(e.words[i], vec[c])) set_bit(j, c);
                    lab[i] = {e.dims[i], j};
                }
                std::sort(lab.begin(), lab.end());
                if (!have || lab < best) {
                    best = lab;
                    have = true;
                    next.clear();
                }
                if (lab == best) {
                    next.push_back(vec);
                    if (next.size() > kMaxSurvivors) {
                        run.complete = false;
                        return run;
                    }
                }
            }
        }
        run.seq.push_back(std::move(best));
        cur = std::move(next);
    }
    run.survivors = cur.size();
    return run;
}

// Colour refinement with colours named by the sorted rank of their keys, so
// the record is independent of the coordinates.
std::vector<std::vector<int>> refinement_record(const VSpace& vs, const Enc& e)
{
    const int n = vs.n();
    std::vector<int> vcol(n, 0), wcol = e.dims;
    vcol[0] = 1;
    std::vector<std::vector<int>> record;
    std::size_t classes = 0;
    auto rename = [&](std::vector<std::vector<int>>& keys, std::vector<int>& col) {
        auto sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < keys.size(); ++i)
            col[i] = int(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
        std::vector<int> flat;
        for (const auto& k : sorted) {
            flat.push_back(int(k.size()));
            flat.insert(flat.end(), k.begin(), k.end());
        }
        record.push_back(std::move(flat));
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        return sorted.size();
    };
    for (int round = 0; round <= vs.v() + 1; ++round) {
        std::vector<std::vector<int>> wk(e.words.size()), vk(n);
        for (std::size_t i = 0; i < e.words.size(); ++i) {
            wk[i] = {wcol[i]};
            for (int x = 0; x < n; ++x)
                if (has_bit(e.words[i], x)) wk[i].push_back(vcol[x]);
            std::sort(wk[i].begin() + 1, wk[i].end());
        }
        std::size_t wc = rename(wk, wcol);
        for (int x = 0; x < n; ++x) {
            vk[x] = {vcol[x]};
            for (std::size_t i = 0; i < e.words.size(); ++i)
                if (has_bit(e.words[i], x)) vk[x].push_back(wcol[i]);
            std::sort(vk[x].begin() + 1, vk[x].end());
        }
        std::size_t vc = rename(vk, vcol);
        if (wc + vc <= classes) break;
        classes = wc + vc;
    }
    return record;
}

CodeInvariant invariant_of(const VSpace& vs, const Enc& e)
{
    const int v = vs.v();
    const std::size_t m = e.words.size();
    CodeInvariant a, b;
    a.size = b.size = m;
    a.distribution.assign(v + 1, 0);
    for (int d : e.dims) ++a.distribution[d];
    b.distribution.assign(a.distribution.rbegin(), a.distribution.rend());
    a.distances.assign(2 * v + 1, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            ++a.distances[e.dims[i] + e.dims[j] - 2 * vs.dim_of(popcount(e.words[i] & e.words[j]))];
    b.distances = a.distances;
    for (int p = 1; p < vs.n(); ++p) {
        std::vector<int> pt(v + 1, 0), hy(v + 1, 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (has_bit(e.words[i], p)) ++pt[e.dims[i]];
            if (subset(e.words[i], vs.perp(p))) ++hy[e.dims[i]];
        }
        a.point_degrees.push_back(pt);
        a.hyperplane_degrees.push_back(hy);
        // for the dual code, points and hyperplanes swap and dimensions reverse
        b.point_degrees.emplace_back(hy.rbegin(), hy.rend());
        b.hyperplane_degrees.emplace_back(pt.rbegin(), pt.rend());
    }
    a.refinement = refinement_record(vs, e);
    b.refinement = refinement_record(vs, transform(vs, e, 0, true));
    for (auto* inv : {&a, &b}) {
        std::sort(inv->point_degrees.begin(), inv->point_degrees.end());
        std::sort(inv->hyperplane_degrees.begin(), inv->hyperplane_degrees.end());
    }
    return std::min(a, b);
}

// Search over the Frobenius/polarity cosets for a linear map; invariants are
// assumed equal already.
IsoDecision decide(const VSpace& vs, const SubspaceCode& a, const Enc& ea, const Enc& eb, BudgetTracker& tr)
{
    IsoDecision out;
    for (const auto& t : outer_parts(a.ambient())) {
        Enc ta = transform(vs, ea, t.field_auto, t.polar);
        Matcher m(vs, ta, eb, tr);
        std::optional<std::vector<int>> found;
        m.run({}, [&](const std::vector<int>& images) {
            found = images;
            return true;
        });
        if (found) {
            Isometry g = t;
            g.matrix = m.matrix(*found);
            out.answer = IsoAnswer::yes;
            out.witness = g;
            out.reason = "backtrack";
            out.nodes = tr.nodes();
            return out;
        }
        if (m.exhausted()) {
            out.reason = "budget exhausted";
            out.nodes = tr.nodes();
            return out;
        }
    }
    out.answer = IsoAnswer::no;
    out.reason = "exhaustive backtrack";
    out.nodes = tr.nodes();
    return out;
}

} // namespace

Isometry Isometry::identity(const Ambient& amb)
{
    Isometry g;
    const int v = amb.v();
    g.matrix.assign(std::size_t(v) * v, 0);
    for (int i = 0; i < v; ++i) g.matrix[i * v + i] = 1;
    return g;
}

Subspace apply(const Isometry& g, const Subspace& x)
{
    check_isometry(x.ambient(), g);
    return apply_unchecked(g, x);
}

SubspaceCode apply(const Isometry& g, const SubspaceCode& c)
{
    check_isometry(c.ambient(), g);
    std::vector<Subspace> out;
    for (const auto& w : c.words()) out.push_back(apply_unchecked(g, w));
    return SubspaceCode(c.ambient(), std::move(out));
}

BigInt gl_order(int q, int v)
{
    BigInt qv = 1, r = 1, qi = 1;
    for (int i = 0; i < v; ++i) qv *= q;
    for (int i = 0; i < v; ++i) {
        r *= qv - qi;
        qi *= q;
    }
    return r;
}

BigInt isometry_group_order(int q, int v) { return 2 * Field::of_order(q)->m() * gl_order(q, v); }

CodeInvariant code_invariant(const SubspaceCode& c)
{
    const VSpace& vs = vspace(c.ambient());
    return invariant_of(vs, encode(vs, c));
}

IsoDecision are_isomorphic(const SubspaceCode& a, const SubspaceCode& b, const SearchBudget& budget)
{
    if (!(a.ambient() == b.ambient())) throw std::invalid_argument("codes live in different ambients");
    IsoDecision out;
    if (a == b) {
        out.answer = IsoAnswer::yes;
        out.witness = Isometry::identity(a.ambient());
        out.reason = "equal";
        return out;
    }
    const VSpace& vs = vspace(a.ambient());
    Enc ea = encode(vs, a), eb = encode(vs, b);
    auto ia = invariant_of(vs, ea), ib = invariant_of(vs, eb);
    if (ia != ib) {
        out.answer = IsoAnswer::no;
        if (ia.size != ib.size) out.reason = "size";
        else if (ia.distribution != ib.distribution) out.reason = "dimension distribution";
        else if (ia.distances != ib.distances) out.reason = "distance distribution";
        else if (ia.point_degrees != ib.point_degrees) out.reason = "point degrees";
        else if (ia.hyperplane_degrees != ib.hyperplane_degrees) out.reason = "hyperplane degrees";
        else out.reason = "incidence refinement";
        return out;
    }
    BudgetTracker tr(budget);
    out = decide(vs, a, ea, eb, tr);
    if (out.witness && !(apply(*out.witness, a) == b)) throw std::logic_error("isomorphism witness does not check");
    return out;
}

AutOrder aut_order(const SubspaceCode& c, const SearchBudget& budget)
{
    const VSpace& vs = vspace(c.ambient());
    BudgetTracker tr(budget);
    Enc e = encode(vs, c);
    AutOrder out;
    Matcher m(vs, e, e, tr);
    BigInt linear = 1;
    const auto& basis = m.basis();
    for (int j = 0; j < vs.v(); ++j) {
        std::vector<int> forced(basis.begin(), basis.begin() + j);
        forced.push_back(0);
        std::size_t orbit = 0;
        for (int y = 1; y < vs.n(); ++y) {
            forced[j] = y;
            bool found = false;
            m.run(forced, [&](const std::vector<int>&) { return found = true; });
            if (m.exhausted()) {
                out.complete = false;
                return out;
            }
            orbit += found;
        }
        linear *= orbit;
    }
    std::size_t cosets = 0;
    for (const auto& t : outer_parts(c.ambient())) {
        if (!t.polar && t.field_auto == 0) {
            ++cosets;
            continue;
        }
        Enc ei = transform(vs, e, t.field_auto, t.polar);
        Matcher mt(vs, ei, e, tr);
        bool found = false;
        mt.run({}, [&](const std::vector<int>&) { return found = true; });
        if (mt.exhausted()) {
            out.complete = false;
            return out;
        }
        cosets += found;
    }
    out.order = linear * cosets;
    return out;
}

CanonicalForm canonical_form(const SubspaceCode& c, const SearchBudget& budget)
{
    const VSpace& vs = vspace(c.ambient());
    BudgetTracker tr(budget);
    std::optional<std::vector<Label>> best;
    Enc e = encode(vs, c);
    for (const auto& t : outer_parts(c.ambient())) {
        auto run = canon_gl(vs, transform(vs, e, t.field_auto, t.polar), tr);
        if (!run.complete) return {c, false};
        if (!best || run.seq < *best) best = std::move(run.seq);
    }
    std::vector<Subspace> words;
    if (best && !best->empty())
        for (const auto& [dim, set] : best->back()) words.push_back(vs.subspace(set));
    return {SubspaceCode(c.ambient(), std::move(words)), true};
}

Classification classify(const std::vector<SubspaceCode>& codes, const SearchBudget& budget, bool canonical)
{
    Classification out;
    std::map<CodeInvariant, std::vector<std::size_t>> buckets;
    std::vector<std::size_t> rep;
    std::vector<Enc> rep_enc;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        if (!(codes[i].ambient() == codes.front().ambient()))
            throw std::invalid_argument("codes live in different ambients");
        const VSpace& vs = vspace(codes[i].ambient());
        Enc e = encode(vs, codes[i]);
        auto& bucket = buckets[invariant_of(vs, e)];
        bool placed = false;
        for (auto ci : bucket) {
            BudgetTracker tr(budget);
            auto d = decide(vs, codes[rep[ci]], rep_enc[ci], e, tr);
            if (d.answer == IsoAnswer::undecided) out.complete = false, out.classes[ci].complete = false;
            if (d.answer == IsoAnswer::yes) {
                out.classes[ci].members.push_back(i);
                placed = true;
                break;
            }
        }
        if (!placed) {
            bucket.push_back(out.classes.size());
            rep.push_back(i);
            rep_enc.push_back(std::move(e));
            IsoClass c;
            c.canonical = codes[i];
            c.members = {i};
            out.classes.push_back(std::move(c));
        }
    }
    const Ambient amb = codes.empty() ? Ambient() : codes.front().ambient();
    for (std::size_t ci = 0; ci < out.classes.size(); ++ci) {
        auto& c = out.classes[ci];
        auto a = aut_order(codes[rep[ci]], budget);
        if (!a.complete) {
            c.complete = out.complete = false;
            continue;
        }
        BigInt group = isometry_group_order(amb.q(), amb.v());
        if (group % a.order != 0) throw std::logic_error("automorphism order does not divide the group order");
        c.aut_order = a.order;
        c.orbit_size = group / a.order;
        if (canonical) {
            auto f = canonical_form(codes[rep[ci]], budget);
            if (f.complete) c.canonical = f.code;
            else c.complete = out.complete = false;
        }
    }
    return out;
}

} // namespace subcode
