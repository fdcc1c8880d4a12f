#include "subcode/code.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>

namespace subcode {

struct SubspaceCode::Cache {
    std::once_flag once;
    int d = kInfiniteDistance;
};

std::string distance_to_string(int d) { return d == kInfiniteDistance ? "inf" : std::to_string(d); }

ParseError::ParseError(int line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line)
{
}

SubspaceCode::SubspaceCode(const Ambient& amb, std::vector<Subspace> words)
    : amb_(amb), words_(std::move(words)), cache_(std::make_shared<Cache>())
{
    for (const auto& w : words_)
        if (!(w.ambient() == amb_)) throw std::invalid_argument("codeword outside the ambient space");
    std::sort(words_.begin(), words_.end());
    auto last = std::unique(words_.begin(), words_.end());
    dups_ = std::size_t(words_.end() - last);
    words_.erase(last, words_.end());
}

bool SubspaceCode::contains(const Subspace& x) const { return std::binary_search(words_.begin(), words_.end(), x); }

std::vector<int> SubspaceCode::dimension_distribution() const
{
    std::vector<int> d(amb_.v() + 1, 0);
    for (const auto& w : words_) d[w.dim()]++;
    return d;
}

namespace {

// smallest distance two distinct subspaces of dimensions a and b can have
int distance_floor(int a, int b) { return a == b ? 2 : std::abs(a - b); }

std::vector<std::vector<std::size_t>> by_dimension(const std::vector<Subspace>& words, int v)
{
    std::vector<std::vector<std::size_t>> layers(v + 1);
    for (std::size_t i = 0; i < words.size(); ++i) layers[words[i].dim()].push_back(i);
    return layers;
}

} // namespace

int SubspaceCode::min_distance() const
{
    if (!cache_) return kInfiniteDistance;
    std::call_once(cache_->once, [this] {
        const int v = amb_.v();
        auto layers = by_dimension(words_, v);
        std::vector<std::pair<int, std::pair<int, int>>> groups;
        for (int a = 0; a <= v; ++a)
            for (int b = a; b <= v; ++b) {
                if (layers[a].empty() || layers[b].empty()) continue;
                if (a == b && layers[a].size() < 2) continue;
                groups.push_back({distance_floor(a, b), {a, b}});
            }
        std::sort(groups.begin(), groups.end());
        int best = kInfiniteDistance;
        for (auto& [floor, ab] : groups) {
            if (floor >= best) break;
            auto [a, b] = ab;
            const auto& la = layers[a];
            const auto& lb = layers[b];
            for (std::size_t i = 0; i < la.size() && best > floor; ++i) {
                std::size_t j0 = a == b ? i + 1 : 0;
                for (std::size_t j = j0; j < lb.size(); ++j) {
                    int d = subspace_distance(words_[la[i]], words_[lb[j]]);
                    if (d < best) {
                        best = d;
                        if (best == floor) break;
                    }
                }
            }
        }
        cache_->d = best;
    });
    return cache_->d;
}

std::string SubspaceCode::serialize() const
{
    std::string out = "q=" + std::to_string(amb_.q()) + " v=" + std::to_string(amb_.v()) + "\n";
    for (const auto& w : words_) {
        out += w.str();
        out += '\n';
    }
    return out;
}

SubspaceCode SubspaceCode::parse(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_header = false;
    Ambient amb;
    std::vector<Subspace> words;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t");
        line = line.substr(first, last - first + 1);
        if (line[0] == '#') continue;
        if (!have_header) {
            int q = 0, v = 0;
            char extra = 0;
            if (std::sscanf(line.c_str(), "q=%d v=%d %c", &q, &v, &extra) != 2)
                throw ParseError(lineno, "expected header 'q=<q> v=<v>'");
            try {
                amb = Ambient(q, v);
            } catch (const std::exception& e) {
                throw ParseError(lineno, e.what());
            }
            have_header = true;
            continue;
        }
        try {
            words.push_back(Subspace::parse(amb, line));
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (!have_header) throw ParseError(lineno, "missing header");
    return SubspaceCode(amb, std::move(words));
}

std::string VerifyReport::summary() const
{
    std::string s = "M=" + std::to_string(size) + " d=" + distance_to_string(min_distance) + " delta=";
    for (std::size_t i = 0; i < dimensions.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(dimensions[i]);
    }
    s += ok ? " PASS" : " FAIL";
    return s;
}

VerifyReport verify(const SubspaceCode& code, int claimed)
{
    VerifyReport r;
    r.size = code.size();
    r.claimed = claimed;
    r.dimensions = code.dimension_distribution();
    r.min_distance = code.min_distance();
    const auto& w = code.words();
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            if (distance_floor(w[i].dim(), w[j].dim()) >= claimed) continue;
            int d = subspace_distance(w[i], w[j]);
            if (d < claimed) r.violations.push_back({i, j, d});
        }
    r.ok = r.violations.empty();
    return r;
}

SubspaceCode dualize(const SubspaceCode& code)
{
    std::vector<Subspace> out;
    for (const auto& w : code.words()) out.push_back(dual(w));
    return SubspaceCode(code.ambient(), std::move(out));
}

SubspaceCode restrict_dims(const SubspaceCode& code, const std::vector<int>& dims)
{
    std::vector<Subspace> out;
    for (const auto& w : code.words())
        if (std::find(dims.begin(), dims.end(), w.dim()) != dims.end()) out.push_back(w);
    return SubspaceCode(code.ambient(), std::move(out));
}

std::size_t point_degree(const SubspaceCode& code, const Subspace& point)
{
    if (point.dim() != 1) throw std::invalid_argument("point_degree needs a point");
    std::size_t n = 0;
    for (const auto& w : code.words())
        if (w.dim() > 0 && w.dim() < code.ambient().v() && w.contains(point)) ++n;
    return n;
}

std::size_t hyperplane_degree(const SubspaceCode& code, const Subspace& h)
{
    if (h.dim() != code.ambient().v() - 1) throw std::invalid_argument("hyperplane_degree needs a hyperplane");
    std::size_t n = 0;
    for (const auto& w : code.words())
        if (w.dim() > 0 && w.dim() < code.ambient().v() && h.contains(w)) ++n;
    return n;
}

int cross_distance(const SubspaceCode& a, const SubspaceCode& b)
{
    int best = kInfiniteDistance;
    for (const auto& x : a.words())
        for (const auto& y : b.words()) best = std::min(best, subspace_distance(x, y));
    return best;
}

SubspaceCode code_union(const SubspaceCode& a, const SubspaceCode& b)
{
    if (!(a.ambient() == b.ambient())) throw std::invalid_argument("codes live in different ambients");
    auto words = a.words();
    words.insert(words.end(), b.words().begin(), b.words().end());
    return SubspaceCode(a.ambient(), std::move(words));
}

SubspaceCode read_code_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path);
    return SubspaceCode::parse(buf.str());
}

void write_code_file(const std::string& path, const SubspaceCode& code)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << code.serialize();
    if (!out) throw IoError("cannot write " + path);
}

} // namespace subcode
