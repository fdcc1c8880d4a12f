#include "subcode/search.hpp"
#include "subcode/iso.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <thread>

namespace subcode {

SearchBudget SearchBudget::from_env()
{
    SearchBudget b;
    if (const char* s = std::getenv("SUBCODE_BUDGET_NODES")) b.max_nodes = std::strtoull(s, nullptr, 10);
    if (const char* s = std::getenv("SUBCODE_BUDGET_SECS")) b.max_seconds = std::strtod(s, nullptr);
    return b;
}

bool BudgetTracker::tick()
{
    if (exhausted_) return false;
    ++nodes_;
    if (budget_.max_nodes && nodes_ > budget_.max_nodes) exhausted_ = true;
    if (budget_.max_seconds > 0 && (nodes_ & 255) == 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count() > budget_.max_seconds)
        exhausted_ = true;
    return !exhausted_;
}

BitGraph::BitGraph(std::size_t n) : n_(n), w_((n + 63) / 64), adj_(n * ((n + 63) / 64), 0) {}

void BitGraph::add_edge(std::size_t i, std::size_t j)
{
    if (i == j) return;
    adj_[i * w_ + (j >> 6)] |= std::uint64_t(1) << (j & 63);
    adj_[j * w_ + (i >> 6)] |= std::uint64_t(1) << (i & 63);
}

std::size_t BitGraph::degree(std::size_t i) const
{
    std::size_t d = 0;
    for (std::size_t k = 0; k < w_; ++k) d += std::popcount(row(i)[k]);
    return d;
}

DistanceGraph distance_graph(const std::vector<Subspace>& candidates, int d_min, int threads)
{
    DistanceGraph g;
    if (!candidates.empty()) g.ambient = candidates.front().ambient();
    for (const auto& x : candidates)
        if (!(x.ambient() == g.ambient)) throw std::invalid_argument("candidates live in different ambients");
    g.vertices = candidates;
    g.d_min = d_min;
    const std::size_t n = candidates.size();
    g.graph = BitGraph(n);
    // rows are independent, so a row split keeps the result identical for any thread count
    std::vector<std::vector<std::size_t>> nbrs(n);
    auto work = [&](std::size_t t, std::size_t stride) {
        for (std::size_t i = t; i < n; i += stride)
            for (std::size_t j = i + 1; j < n; ++j)
                if (subspace_distance(candidates[i], candidates[j]) >= d_min) nbrs[i].push_back(j);
    };
    threads = std::max(1, threads);
    if (threads == 1 || n < 256) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, std::size_t(t), std::size_t(threads));
        for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j : nbrs[i]) g.graph.add_edge(i, j);
    return g;
}

namespace {

// Layer packing bound: words of one layer never share a cell (a subspace of
// dimension k - ceil(d/2) + 1 below, or k + ceil(d/2) - 1 above), and the
// layers of very small or very large dimension hold at most one word in total.
struct CellFamily {
    std::size_t per_word = 0, cw = 0;
    std::vector<std::uint64_t> bits; // cw words per vertex
};

struct PackGroup {
    std::size_t cap = 0;
    std::vector<CellFamily> fams;
};

struct Packing {
    std::vector<int> group; // per vertex, -1 when unconstrained
    std::vector<PackGroup> groups;
};

Packing build_packing(const DistanceGraph& g)
{
    Packing pk;
    const std::size_t n = g.vertices.size();
    pk.group.assign(n, -1);
    if (n == 0) return pk;
    const int v = g.ambient.v(), h = (std::max(g.d_min, 0) + 1) / 2;
    std::map<int, std::vector<std::size_t>> layers;
    for (std::size_t i = 0; i < n; ++i) layers[g.vertices[i].dim()].push_back(i);
    int low = -1, high = -1;
    for (auto& [k, members] : layers) {
        int gi;
        if (k < h) {
            if (low < 0) low = int(pk.groups.size()), pk.groups.push_back({1, {}});
            gi = low;
        } else if (k > v - h) {
            if (high < 0) high = int(pk.groups.size()), pk.groups.push_back({1, {}});
            gi = high;
        } else {
            gi = int(pk.groups.size());
            std::size_t cap = members.size();
            if (auto known = known_layer(g.ambient.q(), v, h, k); known && known->first.upper < BigInt(cap))
                cap = std::size_t(known->first.upper);
            pk.groups.push_back({cap, {}});
            for (int c : {k - h + 1, k + h - 1}) {
                if (c <= 0 || c >= v || c == k) continue;
                auto cells = enumerate_subspaces(g.ambient, c);
                if (cells.size() * members.size() > (std::size_t(1) << 24)) continue;
                CellFamily f;
                f.cw = (cells.size() + 63) / 64;
                f.bits.assign(n * f.cw, 0);
                for (auto i : members) {
                    std::size_t cnt = 0;
                    for (std::size_t j = 0; j < cells.size(); ++j) {
                        bool in = c < k ? g.vertices[i].contains(cells[j]) : cells[j].contains(g.vertices[i]);
                        if (in) f.bits[i * f.cw + (j >> 6)] |= std::uint64_t(1) << (j & 63), ++cnt;
                    }
                    f.per_word = cnt;
                }
                pk.groups[gi].fams.push_back(std::move(f));
            }
        }
        for (auto i : members) pk.group[i] = gi;
    }
    return pk;
}

// Clique search on the subgraph induced by a candidate list, relabelled in
// degeneracy order.
class Engine {
public:
    // `fixed` lists vertices already in the clique, for the packing caps
    Engine(const BitGraph& g, const std::vector<std::size_t>& cand, BudgetTracker& tr, const Packing* pk = nullptr,
           const std::vector<std::size_t>& fixed = {})
        : tr_(tr), pk_(pk)
    {
        n_ = cand.size();
        w_ = (n_ + 63) / 64;
        // degeneracy order: repeatedly drop a vertex of least degree (lowest index first)
        std::vector<std::size_t> deg(n_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if (g.adjacent(cand[i], cand[j])) ++deg[i], ++deg[j];
        std::vector<bool> gone(n_, false);
        label_.assign(n_, 0);
        for (std::size_t pos = n_; pos-- > 0;) {
            std::size_t pick = n_;
            for (std::size_t i = 0; i < n_; ++i)
                if (!gone[i] && (pick == n_ || deg[i] < deg[pick])) pick = i;
            gone[pick] = true;
            label_[pos] = cand[pick];
            for (std::size_t i = 0; i < n_; ++i)
                if (!gone[i] && g.adjacent(cand[i], cand[pick])) --deg[i];
        }
        adj_.assign(n_ * w_, 0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (g.adjacent(label_[i], label_[j])) adj_[i * w_ + (j >> 6)] |= std::uint64_t(1) << (j & 63);
        if (pk_) {
            used_.assign(pk_->groups.size(), 0);
            for (auto x : fixed)
                if (pk_->group[x] >= 0) ++used_[pk_->group[x]];
            acc_.resize(pk_->groups.size());
            for (std::size_t gi = 0; gi < pk_->groups.size(); ++gi) {
                acc_[gi].count = 0;
                acc_[gi].unions.resize(pk_->groups[gi].fams.size());
                for (std::size_t f = 0; f < pk_->groups[gi].fams.size(); ++f)
                    acc_[gi].unions[f].assign(pk_->groups[gi].fams[f].cw, 0);
            }
        }
    }

    // largest clique with more than lb vertices, or empty
    std::vector<std::size_t> run_max(std::size_t lb, std::optional<std::size_t> target)
    {
        enumerate_ = false;
        bound_ = lb;
        target_ = target;
        best_.clear();
        start();
        std::vector<std::size_t> out;
        for (auto v : best_) out.push_back(label_[v]);
        std::sort(out.begin(), out.end());
        return out;
    }

    void run_enumerate(std::size_t size, const std::function<void(const std::vector<std::size_t>&)>& found)
    {
        if (size == 0) {
            found({});
            return;
        }
        enumerate_ = true;
        bound_ = size - 1;
        found_ = &found;
        start();
    }

private:
    void start()
    {
        if (n_ == 0) return;
        buf_.assign((n_ + 2) * w_, 0);
        order_.clear();
        color_.clear();
        tmp_u_.assign(w_, 0);
        tmp_q_.assign(w_, 0);
        std::uint64_t* p = buf_.data();
        for (std::size_t i = 0; i < n_; ++i) p[i >> 6] |= std::uint64_t(1) << (i & 63);
        cur_.clear();
        expand(0, p);
    }

    const std::uint64_t* nb(std::size_t v) const { return adj_.data() + v * w_; }

    std::size_t colour_sort(const std::uint64_t* p, std::size_t depth, std::size_t kmin)
    {
        if (order_.size() <= depth) {
            order_.resize(depth + 1);
            color_.resize(depth + 1);
        }
        order_[depth].resize(n_);
        color_[depth].resize(n_);
        auto& ord = order_[depth];
        auto& col = color_[depth];
        std::copy(p, p + w_, tmp_u_.begin());
        std::size_t k = 0, cnt = 0;
        auto any = [&](const std::vector<std::uint64_t>& b) {
            for (auto x : b)
                if (x) return true;
            return false;
        };
        while (any(tmp_u_)) {
            ++k;
            tmp_q_ = tmp_u_;
            for (std::size_t wi = 0; wi < w_; ++wi) {
                while (tmp_q_[wi]) {
                    std::size_t v = wi * 64 + std::countr_zero(tmp_q_[wi]);
                    std::uint64_t bit = std::uint64_t(1) << (v & 63);
                    tmp_u_[wi] &= ~bit;
                    const std::uint64_t* r = nb(v);
                    for (std::size_t t = wi; t < w_; ++t) tmp_q_[t] &= ~r[t];
                    tmp_q_[wi] &= ~bit;
                    if (k >= kmin) {
                        ord[cnt] = v;
                        col[cnt] = k;
                        ++cnt;
                    }
                }
            }
        }
        return cnt;
    }

    std::size_t packing_bound(const std::uint64_t* p)
    {
        for (auto& a : acc_) {
            a.count = 0;
            for (auto& u : a.unions) std::fill(u.begin(), u.end(), 0);
        }
        std::size_t free = 0;
        for (std::size_t wi = 0; wi < w_; ++wi)
            for (std::uint64_t x = p[wi]; x; x &= x - 1) {
                std::size_t v = wi * 64 + std::countr_zero(x);
                int gi = pk_->group[label_[v]];
                if (gi < 0) {
                    ++free;
                    continue;
                }
                auto& a = acc_[gi];
                ++a.count;
                const auto& fams = pk_->groups[gi].fams;
                for (std::size_t f = 0; f < fams.size(); ++f) {
                    const std::uint64_t* b = fams[f].bits.data() + label_[v] * fams[f].cw;
                    for (std::size_t t = 0; t < fams[f].cw; ++t) a.unions[f][t] |= b[t];
                }
            }
        std::size_t total = free;
        for (std::size_t gi = 0; gi < acc_.size(); ++gi) {
            const auto& grp = pk_->groups[gi];
            std::size_t b = std::min(grp.cap > used_[gi] ? grp.cap - used_[gi] : 0, acc_[gi].count);
            for (std::size_t f = 0; f < grp.fams.size(); ++f) {
                std::size_t cells = 0;
                for (auto x : acc_[gi].unions[f]) cells += std::popcount(x);
                b = std::min(b, cells / grp.fams[f].per_word);
            }
            total += b;
        }
        return total;
    }

    void expand(std::size_t depth, std::uint64_t* p)
    {
        if (stop_ || !tr_.tick()) {
            stop_ = true;
            return;
        }
        if (pk_ && depth + packing_bound(p) <= bound_) return;
        std::size_t kmin = bound_ + 1 > depth ? bound_ + 1 - depth : 1;
        std::size_t cnt = colour_sort(p, depth, kmin);
        std::uint64_t* np = buf_.data() + (depth + 1) * w_;
        for (std::size_t i = cnt; i-- > 0;) {
            if (depth + color_[depth][i] <= bound_) return;
            std::size_t v = order_[depth][i];
            cur_.push_back(v);
            int gv = pk_ ? pk_->group[label_[v]] : -1;
            if (gv >= 0) ++used_[gv];
            bool nonempty = false;
            const std::uint64_t* r = nb(v);
            for (std::size_t t = 0; t < w_; ++t) {
                np[t] = p[t] & r[t];
                nonempty |= np[t] != 0;
            }
            if (enumerate_) {
                if (depth + 1 == bound_ + 1) report();
                else if (nonempty) expand(depth + 1, np);
            } else if (!nonempty) {
                if (depth + 1 > bound_) {
                    bound_ = depth + 1;
                    best_ = cur_;
                    if (target_ && bound_ >= *target_) stop_ = true;
                }
            } else {
                expand(depth + 1, np);
            }
            cur_.pop_back();
            if (gv >= 0) --used_[gv];
            p[v >> 6] &= ~(std::uint64_t(1) << (v & 63));
            if (stop_) return;
        }
    }

    void report()
    {
        std::vector<std::size_t> c;
        for (auto v : cur_) c.push_back(label_[v]);
        std::sort(c.begin(), c.end());
        (*found_)(c);
    }

    struct Acc {
        std::size_t count = 0;
        std::vector<std::vector<std::uint64_t>> unions;
    };

    BudgetTracker& tr_;
    const Packing* pk_ = nullptr;
    std::vector<Acc> acc_;
    std::vector<std::size_t> used_;
    std::size_t n_ = 0, w_ = 0;
    std::vector<std::size_t> label_;
    std::vector<std::uint64_t> adj_, buf_, tmp_u_, tmp_q_;
    std::vector<std::vector<std::size_t>> order_, color_;
    std::vector<std::size_t> cur_, best_;
    std::size_t bound_ = 0;
    std::optional<std::size_t> target_;
    bool enumerate_ = false, stop_ = false;
    const std::function<void(const std::vector<std::size_t>&)>* found_ = nullptr;
};

std::vector<std::size_t> all_vertices(std::size_t n)
{
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
}

SubspaceCode to_code(const DistanceGraph& g, const std::vector<std::size_t>& clique)
{
    std::vector<Subspace> w;
    for (auto i : clique) w.push_back(g.vertices[i]);
    return SubspaceCode(g.ambient, std::move(w));
}

void check_witness(const SubspaceCode& c, int d_min)
{
    if (c.size() > 1 && !verify(c, d_min).ok) throw std::logic_error("search produced an invalid code");
}

// Orbits of the isometries preserving the candidate set: dimension layers,
// with k and v-k merged when the dimension set is closed under k -> v-k.
std::vector<std::vector<std::size_t>> layer_orbits(const DistanceGraph& g, const std::vector<int>& dims)
{
    const int v = g.ambient.v();
    std::vector<int> sorted = dims;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    bool symmetric = true;
    for (int k : sorted)
        if (!std::binary_search(sorted.begin(), sorted.end(), v - k)) symmetric = false;
    std::vector<int> keys;
    for (int k : sorted) {
        int key = symmetric ? std::min(k, v - k) : k;
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
    }
    // middle layers first: they carry most of the words of large codes
    std::stable_sort(keys.begin(), keys.end(), [&](int a, int b) {
        int da = std::abs(2 * a - v), db = std::abs(2 * b - v);
        return da != db ? da < db : a < b;
    });
    std::vector<std::vector<std::size_t>> orbits(keys.size());
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        int k = g.vertices[i].dim();
        int key = symmetric ? std::min(k, v - k) : k;
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end()) throw std::invalid_argument("vertex outside the dimension set");
        orbits[it - keys.begin()].push_back(i);
    }
    // representative first: lowest index in the lower dimension
    for (auto& o : orbits)
        std::stable_sort(o.begin(), o.end(), [&](std::size_t a, std::size_t b) {
            return g.vertices[a].dim() < g.vertices[b].dim();
        });
    return orbits;
}

struct Branch {
    std::size_t root, second;
    std::vector<std::size_t> candidates; // excluding root and second
};

// Symmetry-broken subproblems: a code meeting orbit i (and no earlier orbit)
// may be moved to contain its representative r; the stabiliser of r then moves
// the word of least type (dim Y, dim r meet Y) onto that type's representative.
template <class F>
void for_each_branch(const DistanceGraph& g, const std::vector<int>& dims, F&& body)
{
    auto orbits = layer_orbits(g, dims);
    std::vector<int> orbit_of(g.vertices.size());
    for (std::size_t i = 0; i < orbits.size(); ++i)
        for (auto x : orbits[i]) orbit_of[x] = int(i);
    for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
        std::size_t r = orbits[oi].front();
        std::map<std::pair<int, int>, std::vector<std::size_t>> types;
        for (std::size_t y = 0; y < g.vertices.size(); ++y)
            if (orbit_of[y] >= int(oi) && g.graph.adjacent(r, y))
                types[{g.vertices[y].dim(), meet_dim(g.vertices[r], g.vertices[y])}].push_back(y);
        std::vector<std::vector<std::size_t>> order;
        for (auto& [k, list] : types) order.push_back(list);
        std::stable_sort(order.begin(), order.end(),
                         [](const auto& a, const auto& b) { return a.size() > b.size(); });
        body(Branch{r, r, {}}, true);
        for (std::size_t ti = 0; ti < order.size(); ++ti) {
            std::size_t s = order[ti].front();
            Branch b{r, s, {}};
            for (std::size_t tj = ti; tj < order.size(); ++tj)
                for (auto y : order[tj])
                    if (y != s && g.graph.adjacent(s, y)) b.candidates.push_back(y);
            std::sort(b.candidates.begin(), b.candidates.end());
            body(b, false);
        }
    }
}

// Partial packings of one layer up to isometry: level s holds one
// representative per class of s pairwise compatible words of the layer.
// Undecided isomorphism tests keep both codes, which only costs time.
std::vector<std::vector<std::vector<std::size_t>>> layer_classes(const DistanceGraph& g,
                                                                 const std::vector<std::size_t>& layer,
                                                                 BudgetTracker& tr)
{
    std::vector<std::vector<std::vector<std::size_t>>> levels{{{}}};
    SearchBudget iso_budget;
    iso_budget.max_nodes = 1000000;
    while (!levels.back().empty() && !tr.exhausted()) {
        std::vector<std::vector<std::size_t>> next;
        std::map<CodeInvariant, std::vector<std::pair<std::size_t, SubspaceCode>>> buckets;
        for (const auto& rep : levels.back())
            for (auto x : layer) {
                if (std::find(rep.begin(), rep.end(), x) != rep.end()) continue;
                bool ok = true;
                for (auto y : rep)
                    if (!g.graph.adjacent(x, y)) ok = false;
                if (!ok) continue;
                if (!tr.tick()) return levels;
                auto words = rep;
                words.push_back(x);
                std::sort(words.begin(), words.end());
                SubspaceCode c = to_code(g, words);
                auto& bucket = buckets[code_invariant(c)];
                bool seen = false;
                for (const auto& [i, other] : bucket)
                    if (are_isomorphic(c, other, iso_budget).answer == IsoAnswer::yes) {
                        seen = true;
                        break;
                    }
                if (seen) continue;
                bucket.emplace_back(next.size(), c);
                next.push_back(words);
            }
        levels.push_back(std::move(next));
    }
    if (levels.back().empty()) levels.pop_back();
    return levels;
}

// A layer whose partial packings are enumerated up to isometry. Each class is
// completed by a clique search over the other layers. With a symmetric
// dimension set the code may be dualized so the pivot layer outweighs its
// mirror.
struct Pivot {
    int group = -1, mirror = -1;
    std::vector<std::size_t> layer;
};

std::optional<Pivot> choose_pivot(const DistanceGraph& g, const std::vector<int>& dims, const Packing& pk)
{
    const int q = g.ambient.q(), v = g.ambient.v();
    if (g.vertices.size() <= 150) return std::nullopt;
    long long pts = 1;
    for (int i = 0; i < v; ++i) pts *= q;
    if (pts > 256) return std::nullopt;
    bool symmetric = true;
    for (int k : dims)
        if (std::find(dims.begin(), dims.end(), v - k) == dims.end()) symmetric = false;
    std::map<int, std::vector<std::size_t>> layers;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) layers[g.vertices[i].dim()].push_back(i);
    std::optional<Pivot> best;
    for (auto& [k, members] : layers) {
        int gi = pk.group[members.front()];
        if (gi < 0 || pk.groups[gi].fams.empty()) continue;
        // polarity fixes a middle layer but need not preserve the other layers
        if (2 * k == v && !symmetric) continue;
        if (best && best->layer.size() >= members.size()) continue;
        Pivot p{gi, -1, members};
        if (symmetric && 2 * k != v) p.mirror = pk.group[layers[v - k].front()];
        best = p;
    }
    return best;
}

// Largest code found by the decomposition, when it beats `best`.
std::vector<std::size_t> pivot_search(const DistanceGraph& g, const Packing& pk, const Pivot& pv,
                                      std::vector<std::size_t> best, std::optional<std::size_t> target,
                                      BudgetTracker& tr, bool& stop)
{
    auto levels = layer_classes(g, pv.layer, tr);
    if (tr.exhausted()) return best;
    std::vector<bool> in_layer(g.vertices.size(), false);
    for (auto x : pv.layer) in_layer[x] = true;
    for (std::size_t s = levels.size(); s-- > 0;) {
        Packing capped = pk;
        std::size_t rest = 0;
        for (std::size_t gi = 0; gi < pk.groups.size(); ++gi) {
            if (int(gi) == pv.group) continue;
            if (int(gi) == pv.mirror) capped.groups[gi].cap = std::min(capped.groups[gi].cap, s);
            rest += capped.groups[gi].cap;
        }
        for (auto gr : pk.group) rest += gr < 0;
        if (s + rest <= best.size()) break;
        for (const auto& rep : levels[s]) {
            std::vector<std::size_t> cand;
            for (std::size_t y = 0; y < g.vertices.size(); ++y) {
                if (in_layer[y]) continue;
                bool ok = true;
                for (auto x : rep)
                    if (!g.graph.adjacent(x, y)) ok = false;
                if (ok) cand.push_back(y);
            }
            std::size_t lb = best.size() > s ? best.size() - s : 0;
            std::optional<std::size_t> tgt;
            if (target) tgt = *target > s ? *target - s : 0;
            Engine e(g.graph, cand, tr, &capped, rep);
            auto sub = e.run_max(lb, tgt);
            if (tr.exhausted()) return best;
            if (sub.size() + s > best.size()) {
                best = rep;
                best.insert(best.end(), sub.begin(), sub.end());
                std::sort(best.begin(), best.end());
                if (target && best.size() >= *target) {
                    stop = true;
                    return best;
                }
            }
        }
    }
    return best;
}

} // namespace

CliqueResult max_clique(const BitGraph& g, const SearchBudget& budget, const std::vector<std::size_t>& allowed)
{
    BudgetTracker tr(budget);
    auto cand = allowed.empty() ? all_vertices(g.size()) : allowed;
    CliqueResult r;
    Engine e(g, cand, tr);
    r.clique = e.run_max(0, budget.target);
    r.optimal = !tr.exhausted() && !(budget.target && r.clique.size() >= *budget.target);
    r.nodes = tr.nodes();
    return r;
}

EnumerationStats enumerate_cliques(const BitGraph& g, std::size_t size, const SearchBudget& budget,
                                   const std::function<void(const std::vector<std::size_t>&)>& found,
                                   const std::vector<std::size_t>& allowed)
{
    BudgetTracker tr(budget);
    auto cand = allowed.empty() ? all_vertices(g.size()) : allowed;
    Engine e(g, cand, tr);
    e.run_enumerate(size, found);
    return {!tr.exhausted(), tr.nodes()};
}

SearchResult search_max_code(const DistanceGraph& g, const SearchBudget& budget)
{
    BudgetTracker tr(budget);
    auto pk = build_packing(g);
    Engine e(g.graph, all_vertices(g.vertices.size()), tr, &pk);
    auto clique = e.run_max(0, budget.target);
    bool optimal = !tr.exhausted() && !(budget.target && clique.size() >= *budget.target);
    SearchResult s{to_code(g, clique), optimal, tr.nodes()};
    check_witness(s.code, g.d_min);
    return s;
}

SearchResult extend(const SubspaceCode& seed, const std::vector<int>& dims, int d_min, const SearchBudget& budget)
{
    if (seed.size() > 1 && seed.min_distance() < d_min) throw std::invalid_argument("seed violates the distance");
    std::vector<Subspace> cand;
    for (const auto& x : enumerate_subspaces(seed.ambient(), dims)) {
        if (seed.contains(x)) continue;
        bool ok = true;
        for (const auto& w : seed.words())
            if (subspace_distance(w, x) < d_min) {
                ok = false;
                break;
            }
        if (ok) cand.push_back(x);
    }
    SearchResult out{seed, true, 0};
    if (cand.empty()) return out;
    auto g = distance_graph(cand, d_min);
    SearchBudget inner = budget;
    if (budget.target) inner.target = *budget.target > seed.size() ? *budget.target - seed.size() : 0;
    auto r = search_max_code(g, inner);
    out.code = code_union(seed, r.code);
    out.optimal = r.optimal;
    out.nodes = r.nodes;
    check_witness(out.code, d_min);
    return out;
}

OptimumResult exhaustive_optimum(int q, int v, int d, const std::vector<int>& dims, const SearchBudget& budget)
{
    Ambient amb(q, v);
    for (int k : dims)
        if (k < 0 || k > v) throw std::invalid_argument("dimension out of range");
    auto g = distance_graph(enumerate_subspaces(amb, dims), d);
    auto pk = build_packing(g);
    BudgetTracker tr(budget);
    std::vector<std::size_t> best;
    if (!g.vertices.empty()) best = {0};
    bool stop = false;
    auto pivot = choose_pivot(g, dims, pk);
    if (pivot) {
        // a quick incumbent lets the decomposition skip small packings
        SearchBudget quick = budget;
        quick.max_nodes = budget.max_nodes ? std::min<std::uint64_t>(budget.max_nodes, 20000) : 20000;
        BudgetTracker qt(quick);
        Engine e(g.graph, all_vertices(g.vertices.size()), qt, &pk);
        auto first = e.run_max(0, budget.target);
        if (first.size() > best.size()) best = first;
        if (budget.target && best.size() >= *budget.target) stop = true;
        else best = pivot_search(g, pk, *pivot, best, budget.target, tr, stop);
    } else {
        for_each_branch(g, dims, [&](const Branch& b, bool alone) {
            if (stop || tr.exhausted()) return;
            if (alone) return; // a single word never beats the initial incumbent
            std::vector<std::size_t> sub;
            if (!b.candidates.empty()) {
                Engine e(g.graph, b.candidates, tr, &pk, {b.root, b.second});
                std::size_t lb = best.size() >= 2 ? best.size() - 2 : 0;
                std::optional<std::size_t> tgt;
                if (budget.target) tgt = *budget.target > 2 ? *budget.target - 2 : 0;
                sub = e.run_max(lb, tgt);
                if (sub.empty() && best.size() >= 2) return;
            }
            if (sub.size() + 2 > best.size()) {
                best = sub;
                best.push_back(b.root);
                best.push_back(b.second);
                std::sort(best.begin(), best.end());
                if (budget.target && best.size() >= *budget.target) stop = true;
            }
        });
    }
    OptimumResult r;
    r.witness = to_code(g, best);
    check_witness(r.witness, d);
    r.optimal = !tr.exhausted() && !stop;
    r.nodes = tr.nodes();
    r.record.q = q;
    r.record.v = v;
    r.record.d = d;
    r.record.dims = dims;
    std::sort(r.record.dims.begin(), r.record.dims.end());
    r.record.lower = best.size();
    r.record.upper = r.optimal ? BigInt(best.size()) : BigInt(g.vertices.size());
    r.record.provenance = {"exhaustive"};
    return r;
}

CodeEnumeration enumerate_max_codes(int q, int v, int d, const std::vector<int>& dims, std::size_t size,
                                    const SearchBudget& budget, bool up_to_symmetry)
{
    Ambient amb(q, v);
    auto g = distance_graph(enumerate_subspaces(amb, dims), d);
    auto pk = build_packing(g);
    CodeEnumeration out;
    BudgetTracker tr(budget);
    auto keep = [&](const std::vector<std::size_t>& c) { out.codes.push_back(to_code(g, c)); };
    if (!up_to_symmetry || size < 2) {
        Engine e(g.graph, all_vertices(g.vertices.size()), tr, &pk);
        e.run_enumerate(size, keep);
    } else {
        for_each_branch(g, dims, [&](const Branch& b, bool alone) {
            if (alone || tr.exhausted()) return;
            if (size == 2) {
                keep({std::min(b.root, b.second), std::max(b.root, b.second)});
                return;
            }
            Engine e(g.graph, b.candidates, tr, &pk, {b.root, b.second});
            e.run_enumerate(size - 2, [&](const std::vector<std::size_t>& c) {
                auto full = c;
                full.push_back(b.root);
                full.push_back(b.second);
                std::sort(full.begin(), full.end());
                keep(full);
            });
        });
    }
    std::sort(out.codes.begin(), out.codes.end(),
              [](const SubspaceCode& a, const SubspaceCode& b) { return a.words() < b.words(); });
    out.codes.erase(std::unique(out.codes.begin(), out.codes.end()), out.codes.end());
    for (const auto& c : out.codes) check_witness(c, d);
    out.exhaustive = !tr.exhausted();
    out.nodes = tr.nodes();
    return out;
}

} // namespace subcode
