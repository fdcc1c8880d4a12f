#pragma once

#include "subcode/pg.hpp"

#include <climits>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace subcode {

constexpr int kInfiniteDistance = INT_MAX;
std::string distance_to_string(int d);

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg);
    int line() const { return line_; }

private:
    int line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A set of subspaces of one ambient space, kept sorted by serialization.
class SubspaceCode {
public:
    SubspaceCode() = default;
    SubspaceCode(const Ambient& amb, std::vector<Subspace> words);

    const Ambient& ambient() const { return amb_; }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }
    const std::vector<Subspace>& words() const { return words_; }
    const Subspace& operator[](std::size_t i) const { return words_[i]; }
    bool contains(const Subspace& x) const;
    // number of duplicate input words dropped at construction
    std::size_t duplicates_removed() const { return dups_; }

    std::vector<int> dimension_distribution() const;
    // kInfiniteDistance when the code has at most one word
    int min_distance() const;

    std::string serialize() const;
    static SubspaceCode parse(const std::string& text);

    bool operator==(const SubspaceCode& o) const { return amb_ == o.amb_ && words_ == o.words_; }

private:
    struct Cache;
    Ambient amb_;
    std::vector<Subspace> words_;
    std::size_t dups_ = 0;
    std::shared_ptr<Cache> cache_;
};

struct Violation {
    std::size_t i, j;
    int distance;
};

struct VerifyReport {
    bool ok = true;
    std::size_t size = 0;
    int min_distance = kInfiniteDistance;
    int claimed = 0;
    std::vector<int> dimensions;
    std::vector<Violation> violations;
    std::string summary() const;
};

// Checks every pair whose dimension gap does not already certify the claimed distance.
VerifyReport verify(const SubspaceCode& code, int claimed_distance);

SubspaceCode dualize(const SubspaceCode& code);
SubspaceCode restrict_dims(const SubspaceCode& code, const std::vector<int>& dims);
// Codewords through a point / inside a hyperplane; {0} and V are ignored.
std::size_t point_degree(const SubspaceCode& code, const Subspace& point);
std::size_t hyperplane_degree(const SubspaceCode& code, const Subspace& hyperplane);
// min distance between words of two codes over the same ambient
int cross_distance(const SubspaceCode& a, const SubspaceCode& b);
SubspaceCode code_union(const SubspaceCode& a, const SubspaceCode& b);

SubspaceCode read_code_file(const std::string& path);
void write_code_file(const std::string& path, const SubspaceCode& code);

} // namespace subcode
