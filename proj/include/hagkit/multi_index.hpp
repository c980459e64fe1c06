#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hagkit {

class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(int d) : k_(static_cast<std::size_t>(d), 0) {}
    MultiIndex(std::initializer_list<int> k) : k_(k) {}
    explicit MultiIndex(std::vector<int> k) : k_(std::move(k)) {}

    static MultiIndex unit(int d, int j);

    int dim() const { return static_cast<int>(k_.size()); }
    int modulus() const;
    int operator[](int j) const { return k_[static_cast<std::size_t>(j)]; }
    int& operator[](int j) { return k_[static_cast<std::size_t>(j)]; }
    const std::vector<int>& entries() const { return k_; }

    MultiIndex raised(int j) const;
    MultiIndex lowered(int j) const;  // caller guarantees entry j > 0
    bool leq(const MultiIndex& other) const;  // componentwise
    double factorial() const;  // prod k_j!
    std::string to_string() const;

    // graded lexicographic: by modulus, then lexicographic
    friend bool operator<(const MultiIndex& a, const MultiIndex& b);
    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.k_ == b.k_; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return a.k_ != b.k_; }

private:
    std::vector<int> k_;
};

// Parses "1,0,2".
MultiIndex parse_multi_index(const std::string& text);

// An ordered set of multi-indices of one dimension, sorted graded
// lexicographically. Recurrence sweeps need downward closure; the
// constructor checks it on request.
class IndexSet {
public:
    static constexpr std::ptrdiff_t npos = -1;

    IndexSet() = default;
    IndexSet(int d, std::vector<MultiIndex> indices, bool require_downward_closed = true);

    static IndexSet box(const MultiIndex& upper);          // all nu <= upper
    static IndexSet total_degree(int d, int n);            // |k| <= n
    static IndexSet level(int d, int n);                   // |k| == n, not closed
    static IndexSet hyperbolic(int d, int K, std::size_t cap = 2'000'000);

    int dim() const { return d_; }
    std::size_t size() const { return idx_.size(); }
    const MultiIndex& operator[](std::size_t i) const { return idx_[i]; }
    const std::vector<MultiIndex>& indices() const { return idx_; }
    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }

    bool downward_closed() const { return closed_; }
    void require_downward_closed(const char* who) const;

    std::ptrdiff_t find(const MultiIndex& k) const;
    bool contains(const MultiIndex& k) const { return find(k) != npos; }
    // position of k - e_j, or npos
    std::ptrdiff_t below(std::size_t i, int j) const { return below_[i * d_ + j]; }
    int max_modulus() const;

    // Union with every index raised along axis j.
    IndexSet raised(int j) const;
    IndexSet united(const IndexSet& other) const;

    friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.idx_ == b.idx_; }

private:
    int d_ = 0;
    std::vector<MultiIndex> idx_;
    std::map<MultiIndex, std::size_t> pos_;
    std::vector<std::ptrdiff_t> below_;
    bool closed_ = false;
};

}  // namespace hagkit
