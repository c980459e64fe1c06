#include "hagkit/multi_index.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hagkit/errors.hpp"

namespace hagkit {

MultiIndex MultiIndex::unit(int d, int j) {
    MultiIndex e(d);
    e[j] = 1;
    return e;
}

int MultiIndex::modulus() const { return std::accumulate(k_.begin(), k_.end(), 0); }

MultiIndex MultiIndex::raised(int j) const {
    MultiIndex m = *this;
    ++m[j];
    return m;
}

MultiIndex MultiIndex::lowered(int j) const {
    MultiIndex m = *this;
    --m[j];
    return m;
}

bool MultiIndex::leq(const MultiIndex& o) const {
    for (std::size_t i = 0; i < k_.size(); ++i)
        if (k_[i] > o.k_[i]) return false;
    return true;
}

double MultiIndex::factorial() const {
    double f = 1.0;
    for (int v : k_)
        for (int i = 2; i <= v; ++i) f *= i;
    return f;
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < k_.size(); ++i) os << (i ? "," : "") << k_[i];
    os << ")";
    return os.str();
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
    const int ma = a.modulus();
    const int mb = b.modulus();
    if (ma != mb) return ma < mb;
    return a.k_ < b.k_;
}

MultiIndex parse_multi_index(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int x = 0;
        try {
            x = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw DataError("cannot parse multi-index '" + text + "'");
        }
        if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos)
            throw DataError("cannot parse multi-index '" + text + "'");
        if (x < 0) throw DataError("multi-index entries must be nonnegative: '" + text + "'");
        v.push_back(x);
    }
    if (v.empty()) throw DataError("empty multi-index");
    return MultiIndex(std::move(v));
}

IndexSet::IndexSet(int d, std::vector<MultiIndex> indices, bool require_closed) : d_(d) {
    if (d < 1) throw StructuralError("index set dimension must be positive");
    for (const auto& k : indices)
        if (k.dim() != d)
            throw StructuralError("multi-index " + k.to_string() + " has wrong dimension");
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    idx_ = std::move(indices);
    for (std::size_t i = 0; i < idx_.size(); ++i) pos_.emplace(idx_[i], i);

    below_.assign(idx_.size() * d_, npos);
    closed_ = true;
    for (std::size_t i = 0; i < idx_.size(); ++i) {
        for (int j = 0; j < d_; ++j) {
            if (idx_[i][j] == 0) continue;
            auto it = pos_.find(idx_[i].lowered(j));
            if (it == pos_.end())
                closed_ = false;
            else
                below_[i * d_ + j] = static_cast<std::ptrdiff_t>(it->second);
        }
    }
    if (!idx_.empty() && idx_[0].modulus() != 0) closed_ = false;
    if (require_closed) require_downward_closed("IndexSet");
}

void IndexSet::require_downward_closed(const char* who) const {
    if (!closed_) throw StructuralError(std::string(who) + ": index set is not downward closed");
}

std::ptrdiff_t IndexSet::find(const MultiIndex& k) const {
    auto it = pos_.find(k);
    return it == pos_.end() ? npos : static_cast<std::ptrdiff_t>(it->second);
}

int IndexSet::max_modulus() const { return idx_.empty() ? 0 : idx_.back().modulus(); }

IndexSet IndexSet::box(const MultiIndex& upper) {
    const int d = upper.dim();
    std::vector<MultiIndex> out;
    MultiIndex k(d);
    while (true) {
        out.push_back(k);
        int j = 0;
        while (j < d && k[j] == upper[j]) {
            k[j] = 0;
            ++j;
        }
        if (j == d) break;
        ++k[j];
    }
    return IndexSet(d, std::move(out));
}

IndexSet IndexSet::total_degree(int d, int n) {
    MultiIndex upper(d);
    for (int j = 0; j < d; ++j) upper[j] = n;
    std::vector<MultiIndex> out;
    for (const auto& k : box(upper))
        if (k.modulus() <= n) out.push_back(k);
    return IndexSet(d, std::move(out));
}

IndexSet IndexSet::level(int d, int n) {
    std::vector<MultiIndex> out;
    for (const auto& k : total_degree(d, n))
        if (k.modulus() == n) out.push_back(k);
    return IndexSet(d, std::move(out), false);
}

IndexSet IndexSet::hyperbolic(int d, int K, std::size_t cap) {
    if (d < 1 || K < 1) throw DomainError("hyperbolic set needs d >= 1 and K >= 1");
    std::vector<MultiIndex> out;
    // depth-first enumeration of prod (1 + k_j) <= K
    MultiIndex k(d);
    auto rec = [&](auto&& self, int j, long long prod) -> void {
        if (j == d) {
            if (out.size() >= cap) throw ResourceError("hyperbolic set exceeds the configured size cap");
            out.push_back(k);
            return;
        }
        for (int v = 0; prod * (1 + v) <= K; ++v) {
            k[j] = v;
            self(self, j + 1, prod * (1 + v));
        }
        k[j] = 0;
    };
    rec(rec, 0, 1);
    return IndexSet(d, std::move(out));
}

IndexSet IndexSet::raised(int j) const {
    std::vector<MultiIndex> out = idx_;
    for (const auto& k : idx_) out.push_back(k.raised(j));
    return IndexSet(d_, std::move(out), closed_);
}

IndexSet IndexSet::united(const IndexSet& other) const {
    if (other.d_ != d_) throw StructuralError("cannot unite index sets of different dimension");
    std::vector<MultiIndex> out = idx_;
    out.insert(out.end(), other.idx_.begin(), other.idx_.end());
    return IndexSet(d_, std::move(out), closed_ && other.closed_);
}

}  // namespace hagkit
