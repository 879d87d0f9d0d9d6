#include "qmzv/indices.hpp"

#include <numeric>

namespace qmzv {

std::string MultiIndex::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(parts_[i]);
    }
    s += ']';
    return s;
}

MultiIndex ones_padded(int m, int n) {
    if (m < 0 || n < 0)
        throw std::invalid_argument("ones_padded: m and n must be nonnegative");
    std::vector<int> p(static_cast<std::size_t>(n) + 1, 1);
    p[0] = m + 2;
    return MultiIndex(std::move(p));
}

IndexClass classify(const MultiIndex& idx) {
    return IndexClass{idx.weight(), idx.depth(), idx.height()};
}

CompositionRange::iterator::iterator(int N, int r) {
    if (N < r) return;  // empty range
    cur_.assign(static_cast<std::size_t>(r), 1);
    cur_[0] = N - r + 1;
    done_ = false;
}

CompositionRange::iterator& CompositionRange::iterator::operator++() {
    // Successor in descending lexicographic order: decrement the rightmost
    // part (before the last) that exceeds 1, then reset the suffix to its
    // lexicographically largest shape (all excess on the first slot).
    const int r = static_cast<int>(cur_.size());
    int j = r - 2;
    while (j >= 0 && cur_[static_cast<std::size_t>(j)] == 1) --j;
    if (j < 0) {
        cur_.clear();
        done_ = true;
        return *this;
    }
    cur_[static_cast<std::size_t>(j)] -= 1;
    int rest = 0;
    for (int i = j + 1; i < r; ++i) {
        rest += cur_[static_cast<std::size_t>(i)];
        cur_[static_cast<std::size_t>(i)] = 1;
    }
    cur_[static_cast<std::size_t>(j) + 1] = rest + 1 - (r - j - 2);
    return *this;
}

std::vector<MultiIndex> enumerate_I0(int n, int r, int s) {
    if (n < 1 || r < 1 || s < 1)
        throw std::invalid_argument("enumerate_I0: n, r, s must be >= 1");
    std::vector<MultiIndex> out;
    if (n < r) return out;
    for (const auto& parts : compositions(n, r)) {
        if (parts.front() < 2) continue;
        int h = 0;
        for (int p : parts) h += (p > 1);
        if (h == s) out.emplace_back(parts);
    }
    return out;
}

std::vector<MultiIndex> all_compositions(int N, int r) {
    std::vector<MultiIndex> out;
    if (N < r) return out;
    for (const auto& parts : compositions(N, r))
        out.emplace_back(parts);
    return out;
}

}  // namespace qmzv
