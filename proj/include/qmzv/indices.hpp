#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Multi-index combinatorics: compositions of fixed weight and depth, the
// weight/depth/height classification, and the index sets I0(n,r,s).

namespace qmzv {

// An ordered tuple of positive integer exponents (n1,...,nr).
class MultiIndex {
  public:
    explicit MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty())
            throw std::invalid_argument("MultiIndex: depth must be >= 1");
        for (int p : parts_)
            if (p < 1)
                throw std::invalid_argument("MultiIndex: every part must be >= 1");
    }
    MultiIndex(std::initializer_list<int> parts) : MultiIndex(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    int depth() const { return static_cast<int>(parts_.size()); }

    long weight() const {
        long w = 0;
        for (int p : parts_) w += p;
        return w;
    }

    // Number of parts strictly greater than 1.
    int height() const {
        int h = 0;
        for (int p : parts_) h += (p > 1);
        return h;
    }

    // n1 >= 2, necessary and sufficient for convergence of zeta[idx].
    bool admissible() const { return parts_.front() >= 2; }

    // The index of zeta*[this]: first exponent raised by one.
    MultiIndex shifted() const {
        std::vector<int> p = parts_;
        p.front() += 1;
        return MultiIndex(std::move(p));
    }

    std::string to_string() const;

    bool operator==(const MultiIndex&) const = default;

  private:
    std::vector<int> parts_;
};

// (m+2, 1 repeated n times) -- the index shape zeta[m+2,{1}^n].
MultiIndex ones_padded(int m, int n);

// Canonical ordering used everywhere an order matters: lexicographic
// descending on parts, so (3,1) precedes (2,2) precedes (1,3).
struct LexDescendingLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const {
        return a.parts() > b.parts();  // larger-lex first
    }
};

struct IndexClass {
    long weight = 0;
    int depth = 0;
    int height = 0;
    bool operator==(const IndexClass&) const = default;
};

IndexClass classify(const MultiIndex& idx);

// Lazily enumerates all ordered r-tuples of positive integers summing to N,
// in descending lexicographic order: (N-r+1,1,...,1) first, (1,...,1,N-r+1)
// last.  N < r yields an empty range.  Count is C(N-1, r-1).
class CompositionRange {
  public:
    CompositionRange(int N, int r) : N_(N), r_(r) {
        if (r < 1)
            throw std::invalid_argument("compositions: depth r must be >= 1");
        if (N < 1)
            throw std::invalid_argument("compositions: weight N must be >= 1");
    }

    class iterator {
      public:
        using value_type = MultiIndex;

        iterator() = default;  // end
        iterator(int N, int r);

        const std::vector<int>& operator*() const { return cur_; }
        iterator& operator++();
        bool operator==(const iterator& o) const { return done_ == o.done_ && cur_ == o.cur_; }

      private:
        std::vector<int> cur_;
        bool done_ = true;
    };

    iterator begin() const { return iterator(N_, r_); }
    iterator end() const { return iterator(); }

  private:
    int N_;
    int r_;
};

inline CompositionRange compositions(int N, int r) { return CompositionRange(N, r); }

// All multi-indices of weight n, depth r, height s with n1 > 1, in the same
// deterministic order as compositions(n, r).  Infeasible triples are empty.
std::vector<MultiIndex> enumerate_I0(int n, int r, int s);

// Materialization helper (tests, small sweeps).
std::vector<MultiIndex> all_compositions(int N, int r);

}  // namespace qmzv
