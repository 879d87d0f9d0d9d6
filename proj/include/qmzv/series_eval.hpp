#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "qmzv/indices.hpp"
#include "qmzv/qarith.hpp"

// Certified evaluation of the concrete series in play:
//
//   zeta[n1,...,nr]  = sum_{k1>...>kr>0} prod_j q^{(nj-1)kj} / [kj]^nj
//   zeta*[n1,...]    = zeta[1+n1, n2, ...]
//   zeta(n1,...,nr)  = the classical nested sum prod_j kj^{-nj}   (q = 1)
//   L_r(z)           = sum_{k1>...>kr>0} (q^{k1}/[k1]) prod_j 1/([kj] - z q^{kj})
//   R_r(z)           = sum_{m>=1} q^{rm} / ([m]^r ([m] - z q^m))
//   A(m,n,k)         = sum_{b1>...>bn>k} (q^{m+b1}/[m+b1]) prod_j 1/[bj]
//   B(m,n)           = sum_{m>k1>...>kn>0} prod_i 1/[ki - m]      (finite)
//
// plus the closed products A_m(x) and B_m(x).
//
// Strategy: nested sums are streamed bottom-up with one running partial sum
// per level, so an r-deep sum costs O(K r) in the outer cutoff K.  Inner
// levels are exact finite sums once the outer variable is fixed; only the
// outer truncation contributes to the tail, which is bounded by a geometric
// majorant with a polynomial growth factor (see series_eval.cpp).  K grows
// by doubling until the bound meets tol or max_terms is exhausted.

namespace qmzv {

// Session-local memoization store, keyed by (evaluator, integer arguments,
// exact bit patterns of q and tol).  Safe to share across threads; cached
// results are bit-identical to uncached ones.
class EvalCache {
  public:
    struct Key {
        int tag = 0;
        std::vector<int> ints;
        std::uint64_t q_bits = 0;
        std::uint64_t tol_bits = 0;
        auto operator<=>(const Key&) const = default;
    };

    std::optional<CertifiedValue> lookup(const Key& k) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return std::nullopt;
        return it->second;
    }

    void store(const Key& k, const CertifiedValue& v) {
        std::lock_guard<std::mutex> lock(mu_);
        map_.emplace(k, v);
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lock(mu_);
        return map_.size();
    }

  private:
    mutable std::mutex mu_;
    std::map<Key, CertifiedValue> map_;
};

// Multiple q-zeta value; requires an admissible index (n1 >= 2).
CertifiedValue eval_qmzv(const MultiIndex& idx, const QParam& qp, EvalCache* cache = nullptr);

// Shifted variant zeta*[idx] = zeta[1+n1, n2, ...]; any positive parts.
CertifiedValue eval_qmzv_star(const MultiIndex& idx, const QParam& qp,
                              EvalCache* cache = nullptr);

// Classical multiple zeta value, intended for low-precision consistency
// checks only (polynomial tails make it slow below ~1e-6).
CertifiedValue eval_mzv(const MultiIndex& idx, double tol, long max_terms = 100'000'000);

// Left and right sides of the depth-r generating-function identity; z must
// stay delta_pole away from every [m]_q - z q^m zero (delta_pole =
// 1e-6 (1+|z|)).  Computed by independent code paths.
CertifiedValue eval_Lr(int r, std::complex<double> z, const QParam& qp);
CertifiedValue eval_Rr(int r, std::complex<double> z, const QParam& qp);

// Nested building block A(m,n,k); A(m,0,.) = q^m/[m] exactly.
CertifiedValue eval_A(int m, int n, int k, const QParam& qp, EvalCache* cache = nullptr);

// Finite block B(m,n); zero when n > m-1.  Exact up to rounding.
double eval_B(int m, int n, const QParam& qp);

// Closed products: A_m(x) = (q^m/[m]) prod_{c<=m} (1 - x q^c/[c])^{-1} and
// B_m(x) = prod_{b<m} (1 - x q^b/[b]).  A_m guards each factor against
// delta_pole proximity.
std::complex<double> closed_Am(int m, std::complex<double> x, const QParam& qp);
std::complex<double> closed_Bm(int m, std::complex<double> x, const QParam& qp);

// Pole-guard radius used by the L_r/R_r-style evaluators.
inline double delta_pole(std::complex<double> z) { return 1e-6 * (1.0 + std::abs(z)); }

}  // namespace qmzv
