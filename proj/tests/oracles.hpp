#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "qmzv/indices.hpp"

// Brute-force reference implementations used as test oracles.  These are
// deliberately written as plain recursive enumerations over hard cutoffs,
// independent of the streaming evaluators they check.

namespace oracle {

inline double qint(int k, double q) {
    return (1.0 - std::pow(q, static_cast<double>(k))) / (1.0 - q);
}

inline double naive_qmzv_rec(const std::vector<int>& n, std::size_t j, int hi, double q) {
    if (j == n.size()) return 1.0;
    double s = 0.0;
    for (int k = 1; k < hi; ++k)
        s += std::pow(q, (n[j] - 1) * k) / std::pow(qint(k, q), n[j]) *
             naive_qmzv_rec(n, j + 1, k, q);
    return s;
}

// zeta[idx] truncated at outer cutoff K; crude geometric cap on the omitted
// block (inner ones grow at most linearly).
inline double naive_qmzv(const qmzv::MultiIndex& idx, double q, int K) {
    return naive_qmzv_rec(idx.parts(), 0, K + 1, q);
}

inline double naive_qmzv_tail_cap(const qmzv::MultiIndex& idx, double q, int K) {
    const double rho = std::pow(q, idx.parts()[0] - 1);
    return 2.0 * std::pow(static_cast<double>(K), idx.depth() - 1) * std::pow(rho, K + 1) /
           std::pow(1.0 - rho, idx.depth());
}

inline double naive_mzv_rec(const std::vector<int>& n, std::size_t j, int hi) {
    if (j == n.size()) return 1.0;
    double s = 0.0;
    for (int k = 1; k < hi; ++k)
        s += std::pow(static_cast<double>(k), -n[j]) * naive_mzv_rec(n, j + 1, k);
    return s;
}

inline double naive_mzv(const qmzv::MultiIndex& idx, int K) {
    return naive_mzv_rec(idx.parts(), 0, K + 1);
}

// Triangular representation of A(m,n,k): (q^m/[m]) over weakly decreasing
// chains m >= c1 >= ... >= cn >= 1 of q^{cn+k}/[cn+k] prod_{j<n} q^{cj}/[cj].
inline double tri_A_rec(int m, int n, int koff, std::size_t j, int hi, double q) {
    if (static_cast<int>(j) == n) return 1.0;
    double s = 0.0;
    for (int c = 1; c <= hi; ++c) {
        const bool last = static_cast<int>(j) == n - 1;
        const int v = last ? c + koff : c;
        s += std::pow(q, v) / qint(v, q) * tri_A_rec(m, n, koff, j + 1, c, q);
    }
    return s;
}

inline double tri_A(int m, int n, int koff, double q) {
    if (n == 0) return std::pow(q, m) / qint(m, q);
    return std::pow(q, m) / qint(m, q) * tri_A_rec(m, n, koff, 0, m, q);
}

// Classical (q = 1) stuffle: identical merge recursion but the diagonal
// collision contributes a single term with no lower-weight correction.
using ClassicalExpr = std::map<std::vector<int>, long long>;

inline void classical_add(ClassicalExpr& e, const std::vector<int>& k, long long c) {
    e[k] += c;
    if (e[k] == 0) e.erase(k);
}

inline ClassicalExpr classical_stuffle(const std::vector<int>& a, const std::vector<int>& b) {
    ClassicalExpr out;
    if (a.empty() || b.empty()) {
        classical_add(out, a.empty() ? b : a, 1);
        return out;
    }
    const std::vector<int> at(a.begin() + 1, a.end());
    const std::vector<int> bt(b.begin() + 1, b.end());
    auto prepend_into = [&out](int head, const ClassicalExpr& sub, long long scale) {
        for (const auto& [k, c] : sub) {
            std::vector<int> nk;
            nk.reserve(k.size() + 1);
            nk.push_back(head);
            nk.insert(nk.end(), k.begin(), k.end());
            classical_add(out, nk, c * scale);
        }
    };
    prepend_into(a[0], classical_stuffle(at, b), 1);
    prepend_into(b[0], classical_stuffle(a, bt), 1);
    prepend_into(a[0] + b[0], classical_stuffle(at, bt), 1);
    return out;
}

// Frozen reference values, computed once with 40-digit arithmetic from the
// defining series (direct nested summation far past convergence).
inline constexpr double kZq3_q05 = 0.27220320563321367;    // zeta[3], q=0.5
inline constexpr double kZq2_q05 = 0.68600847218987209;    // zeta[2], q=0.5
inline constexpr double kZq4_q05 = 0.12831687402105256;    // zeta[4], q=0.5
inline constexpr double kZq5_q05 = 0.063029973556617172;   // zeta[5], q=0.5
inline constexpr double kZq31_q05 = 0.025222300481741001;  // zeta[3,1], q=0.5
inline constexpr double kZq22_q05 = 0.10309457353931156;   // zeta[2,2], q=0.5
inline constexpr double kZq2_q03 = 0.37297033824712297;    // zeta[2], q=0.3
inline constexpr double kZq3_q03 = 0.093983592502770612;   // zeta[3], q=0.3
inline constexpr double kZq4_q03 = 0.027260651244994532;   // zeta[4], q=0.3
inline constexpr double kA35_q05 = 0.0038982290498482495;  // A(3,5,0), q=0.5
inline constexpr double kA322_q05 = 0.0044149764360429272; // A(3,2,2), q=0.5
inline constexpr double kL3_z04_q03 = 0.030949780603531970;   // L_3(0.4), q=0.3
inline constexpr double kL4_z25_q08 = -0.32777935616085470;   // L_4(2.5), q=0.8
inline constexpr double kL3c_re_q06 = 0.15792227674985393;    // L_3(-0.7+0.2i), q=0.6
inline constexpr double kL3c_im_q06 = 0.013016345621199673;

}  // namespace oracle
