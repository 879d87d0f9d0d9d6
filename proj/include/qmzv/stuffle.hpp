#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmzv/indices.hpp"
#include "qmzv/qarith.hpp"
#include "qmzv/series_eval.hpp"

// Formal q-stuffle algebra on multi-indices.  A product of two nested sums
// expands into nested sums over merged chains; when two summation variables
// collide the identity 1/[k] = (1-q) + q^k/[k] splits the colliding term
// into the expected weight-(a+b) index plus an eps-weighted weight-(a+b-1)
// index, eps = 1 - q.  Coefficients are therefore integer polynomials in eps.

namespace qmzv {

// Integer polynomial in eps = 1 - q; coeffs[i] multiplies eps^i, trailing
// zeros trimmed, the zero polynomial is the empty list.
class EpsPoly {
  public:
    EpsPoly() = default;
    explicit EpsPoly(std::vector<long long> coeffs) : c_(std::move(coeffs)) { trim(); }
    static EpsPoly constant(long long v) { return EpsPoly({v}); }
    static EpsPoly eps() { return EpsPoly({0, 1}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    long long coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : 0;
    }
    const std::vector<long long>& coeffs() const { return c_; }

    double eval(double eps_value) const {
        double v = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;)
            v = v * eps_value + static_cast<double>(c_[i]);
        return v;
    }

    EpsPoly& operator+=(const EpsPoly& o);
    friend EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
    friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b);
    EpsPoly& operator*=(long long s);

    bool operator==(const EpsPoly&) const = default;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<long long> c_;
};

// Integer-coefficient (in eps) linear combination of multi-indices, keys in
// canonical descending-lexicographic order.  Keys need not be admissible;
// non-admissible keys are rejected only at numeric evaluation.
class StuffleExpr {
  public:
    using TermMap = std::map<MultiIndex, EpsPoly, LexDescendingLess>;

    StuffleExpr() = default;

    void add(const MultiIndex& key, const EpsPoly& coeff);
    const TermMap& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    StuffleExpr& operator+=(const StuffleExpr& o);
    friend StuffleExpr operator+(StuffleExpr a, const StuffleExpr& b) { return a += b; }
    StuffleExpr scaled(const EpsPoly& s) const;

    // Stable serialization: {"terms":[{"index":[...],"eps":[c0,c1,...]},...]}
    std::string to_json() const;

    bool operator==(const StuffleExpr&) const = default;

  private:
    TermMap terms_;
};

// Formal expansion of zeta[a] * zeta[b].  Depth-1 instance:
//   (alpha) * (beta) = [alpha,beta] + [beta,alpha] + [alpha+beta]
//                      + eps [alpha+beta-1].
// General depths merge heads three ways (a1 first / b1 first / heads
// collide, the collision carrying the extra eps term).
StuffleExpr qstuffle(const MultiIndex& a, const MultiIndex& b);

// The symbolically derived reduction of zeta[m,1]:
//   2 zeta[m,1] = m zeta[m+1] + eps (m-2) zeta[m]
//                 - sum_{k=1}^{m-2} zeta[m-k] zeta[k+1].
// lhs holds 2 zeta[m,1]; single_side the first two right-hand terms; and
// product_pairs the subtracted products.  Derived by expanding the product
// sum through qstuffle and collapsing the depth-2 block with the sum
// formula at weight m+1, depth 2.
struct EulerReduction {
    int m = 0;
    StuffleExpr lhs;
    StuffleExpr single_side;
    std::vector<std::pair<MultiIndex, MultiIndex>> product_pairs;
};

EulerReduction reduce_zeta_m1(int m);

// Numeric value of an expression: sum of coeff(1-q) * zeta[key].  Every key
// must be admissible; the certified bound is sum |coeff| * per-term bound.
CertifiedValue eval_expr(const StuffleExpr& e, const QParam& qp, EvalCache* cache = nullptr);

}  // namespace qmzv
