#include "qmzv/series_eval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace qmzv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum CacheTag : int { kTagZeta = 1, kTagA = 2 };

EvalCache::Key make_key(int tag, std::vector<int> ints, const QParam& qp) {
    return EvalCache::Key{tag, std::move(ints), std::bit_cast<std::uint64_t>(qp.q),
                          std::bit_cast<std::uint64_t>(qp.tol)};
}

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// ln of sum_{k>K} rho^k (k-1)^zgrow, bounded by the geometric majorant
//   a_{K+1} / (1 - rho_hat),  rho_hat = rho ((K+1)/K)^zgrow,
// valid because the term ratio a_{k+1}/a_k = rho (k/(k-1))^zgrow is largest
// at k = K+1.  Returns +inf while rho_hat >= 1 (cutoff still too small).
double log_geom_poly_tail(double rho, int zgrow, long K) {
    if (!(rho > 0.0)) return -kInf;
    const double log_rho = std::log(rho);
    const double rho_hat = std::exp(log_rho + zgrow * std::log1p(1.0 / static_cast<double>(K)));
    if (rho_hat >= 1.0) return kInf;
    return static_cast<double>(K + 1) * log_rho + zgrow * std::log(static_cast<double>(K)) -
           std::log1p(-rho_hat);
}

long first_checkpoint() { return 16; }

[[noreturn]] void throw_budget(const char* what, std::complex<double> value, double bound,
                               long k) {
    throw BudgetExceeded(what, CertifiedValue{value, bound, k});
}

// ---------------------------------------------------------------------------
// zeta[n1,...,nr]
//
// Streaming recursion: with F_j(k) = sum over the level-j..r chain below k,
//   F_j(k+1) = F_j(k) + t_j(k) F_{j+1}(k),     t_j(k) = q^{(nj-1)k}/[k]^nj,
// updated outermost first so every level sees the previous state of the one
// below it.  Inner sums are exact; the outer tail after cutoff K obeys
//
//   sum_{k>K} t_1(k) F_2(k)
//     <= (S / [K+1]^{n1}) sum_{k>K} rho^k (k-1)^zcnt,   rho = q^{n1-1},
//
// where zcnt counts inner exponents equal to 1 (each such level grows at
// most linearly: sum_{i<k} 1/[i] <= k-1) and
// S = prod over inner levels with nj >= 2 of q^{nj-1}/(1 - q^{nj-1}).
// ---------------------------------------------------------------------------
CertifiedValue eval_qmzv_impl(const MultiIndex& idx, const QParam& qp) {
    if (!idx.admissible())
        throw DivergentSeries("eval_qmzv: divergent, leading exponent must exceed 1 (got " +
                              idx.to_string() + ")");
    const std::vector<int>& n = idx.parts();
    const int r = idx.depth();
    const double q = qp.q;

    const double rho = ipow(q, n[0] - 1);
    int zcnt = 0;
    double logS = 0.0;
    for (int j = 1; j < r; ++j) {
        if (n[static_cast<std::size_t>(j)] == 1) {
            ++zcnt;
        } else {
            const double w = ipow(q, n[static_cast<std::size_t>(j)] - 1);
            logS += std::log(w) - std::log1p(-w);
        }
    }

    std::vector<double> inner(static_cast<std::size_t>(r) + 1, 0.0);  // inner[j]=F_j(k), j>=2
    std::vector<double> lvl_pow(static_cast<std::size_t>(r), 1.0);    // q^{(nj-1)k}
    std::vector<double> lvl_w(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j)
        lvl_w[static_cast<std::size_t>(j)] = ipow(q, n[static_cast<std::size_t>(j)] - 1);

    double acc = 0.0;
    double qpow = q;     // q^k
    double qint_k = 1.0; // [k]
    long next_check = first_checkpoint();
    for (long k = 1;; ++k) {
        for (int j = 0; j < r; ++j) lvl_pow[static_cast<std::size_t>(j)] *= lvl_w[static_cast<std::size_t>(j)];
        const double t1 = lvl_pow[0] / ipow(qint_k, n[0]);
        acc += t1 * (r >= 2 ? inner[2] : 1.0);
        for (int j = 2; j < r; ++j)
            inner[static_cast<std::size_t>(j)] +=
                lvl_pow[static_cast<std::size_t>(j - 1)] /
                ipow(qint_k, n[static_cast<std::size_t>(j - 1)]) * inner[static_cast<std::size_t>(j) + 1];
        if (r >= 2)
            inner[static_cast<std::size_t>(r)] +=
                lvl_pow[static_cast<std::size_t>(r - 1)] / ipow(qint_k, n[static_cast<std::size_t>(r - 1)]);

        if (k == next_check || k >= qp.max_terms) {
            const double qint_k1 = qint_k + qpow;  // [k+1]
            const double log_tail = logS + log_geom_poly_tail(rho, zcnt, k) -
                                    n[0] * std::log(qint_k1);
            const double tail = std::exp(log_tail);
            if (tail <= qp.tol)
                return CertifiedValue{acc, tail, k};
            if (k >= qp.max_terms)
                throw_budget("eval_qmzv: max_terms exhausted before tail bound met tol", acc,
                             tail, k);
            next_check *= 2;
        }
        qint_k += qpow;
        qpow *= q;
    }
}

// ---------------------------------------------------------------------------
// Classical zeta(n1,...,nr).  Same streaming shape with t_j(k) = k^{-nj}.
// Inner levels with nj = 1 grow like 1 + ln k, so with zcnt of them the
// integral estimate gives
//
//   tail(K) <= H e_z (1 + ln K)^zcnt K^{1-n1} / (n1 - 1),
//   H = prod over inner nj >= 2 of (1 + 1/(nj-1)),
//   e_z = int_0^infty e^{-v} (1+v)^zcnt dv = sum_{i<=zcnt} C(zcnt,i) i!,
//
// valid once x -> x^{-n1}(1+ln x)^zcnt is decreasing, i.e. K >= e^{zcnt/n1 - 1}.
// ---------------------------------------------------------------------------
CertifiedValue eval_mzv_impl(const MultiIndex& idx, double tol, long max_terms) {
    if (!idx.admissible())
        throw DivergentSeries("eval_mzv: divergent, leading exponent must exceed 1 (got " +
                              idx.to_string() + ")");
    if (!(tol > 0.0))
        throw std::invalid_argument("eval_mzv: tol must be positive");
    const std::vector<int>& n = idx.parts();
    const int r = idx.depth();

    int zcnt = 0;
    double H = 1.0;
    for (int j = 1; j < r; ++j) {
        if (n[static_cast<std::size_t>(j)] == 1)
            ++zcnt;
        else
            H *= 1.0 + 1.0 / (n[static_cast<std::size_t>(j)] - 1);
    }
    double e_z = 0.0;  // sum_{i<=z} C(z,i) i!
    {
        double binom = 1.0, fact = 1.0;
        for (int i = 0; i <= zcnt; ++i) {
            if (i > 0) {
                binom *= static_cast<double>(zcnt - i + 1) / i;
                fact *= i;
            }
            e_z += binom * fact;
        }
    }
    const long k_valid = static_cast<long>(std::ceil(std::exp(static_cast<double>(zcnt) / n[0])));

    std::vector<double> inner(static_cast<std::size_t>(r) + 1, 0.0);
    double acc = 0.0;
    long next_check = first_checkpoint();
    for (long k = 1;; ++k) {
        const double kd = static_cast<double>(k);
        acc += std::pow(kd, -n[0]) * (r >= 2 ? inner[2] : 1.0);
        for (int j = 2; j < r; ++j)
            inner[static_cast<std::size_t>(j)] +=
                std::pow(kd, -n[static_cast<std::size_t>(j - 1)]) * inner[static_cast<std::size_t>(j) + 1];
        if (r >= 2)
            inner[static_cast<std::size_t>(r)] += std::pow(kd, -n[static_cast<std::size_t>(r - 1)]);

        if ((k == next_check && k >= k_valid) || k >= max_terms) {
            const double tail = k >= k_valid
                                    ? H * e_z * std::pow(1.0 + std::log(kd), zcnt) *
                                          std::pow(kd, 1.0 - n[0]) / (n[0] - 1.0)
                                    : kInf;
            if (tail <= tol)
                return CertifiedValue{acc, tail, k};
            if (k >= max_terms)
                throw_budget("eval_mzv: max_terms exhausted before tail bound met tol", acc,
                             tail, k);
        }
        if (k == next_check) next_check *= 2;
    }
}

}  // namespace

CertifiedValue eval_qmzv(const MultiIndex& idx, const QParam& qp, EvalCache* cache) {
    if (!cache) return eval_qmzv_impl(idx, qp);
    const EvalCache::Key key = make_key(kTagZeta, idx.parts(), qp);
    if (auto hit = cache->lookup(key)) return *hit;
    CertifiedValue v = eval_qmzv_impl(idx, qp);
    cache->store(key, v);
    return v;
}

CertifiedValue eval_qmzv_star(const MultiIndex& idx, const QParam& qp, EvalCache* cache) {
    return eval_qmzv(idx.shifted(), qp, cache);
}

CertifiedValue eval_mzv(const MultiIndex& idx, double tol, long max_terms) {
    return eval_mzv_impl(idx, tol, max_terms);
}

// ---------------------------------------------------------------------------
// L_r(z): outer factor q^k/([k]([k]-zq^k)), inner factors 1/([k]-zq^k).
// Inner partial sums grow at most linearly; their running magnitude is
// tracked exactly up to the cutoff (U = sum 1/|[i]-zq^i|) and extended past
// it with 1/d_K, d_K = [K+1] - |z| q^{K+1} (a lower bound on every later
// denominator).  The outer tail then obeys
//
//   tail(K) <= (c_K^{r-1} / ([K+1] d_K)) sum_{k>K} q^k (k-1)^{r-1},
//   c_K = max(U/K, 1/d_K).
// ---------------------------------------------------------------------------
CertifiedValue eval_Lr(int r, std::complex<double> z, const QParam& qp) {
    if (r < 1) throw std::invalid_argument("eval_Lr: r must be >= 1");
    const double q = qp.q;
    const double dpole = delta_pole(z);
    const double abs_z = std::abs(z);

    std::vector<std::complex<double>> inner(static_cast<std::size_t>(r) + 1,
                                            std::complex<double>(0.0, 0.0));
    std::complex<double> acc{0.0, 0.0};
    double U = 0.0;
    double qpow = q, qint_k = 1.0;
    long next_check = first_checkpoint();
    for (long k = 1;; ++k) {
        const std::complex<double> d = qint_k - z * qpow;
        const double abs_d = std::abs(d);
        if (abs_d < dpole)
            throw PoleProximity("eval_Lr: z within delta_pole of the excluded set at m = " +
                                std::to_string(k));
        U += 1.0 / abs_d;
        const std::complex<double> tj = 1.0 / d;
        acc += qpow / qint_k * tj * (r >= 2 ? inner[2] : std::complex<double>(1.0, 0.0));
        for (int j = 2; j < r; ++j)
            inner[static_cast<std::size_t>(j)] += tj * inner[static_cast<std::size_t>(j) + 1];
        if (r >= 2) inner[static_cast<std::size_t>(r)] += tj;

        if (k == next_check || k >= qp.max_terms) {
            const double qint_k1 = qint_k + qpow;
            const double dK = qint_k1 - abs_z * qpow * q;
            double tail = kInf;
            if (dK > 0.0) {
                const double cK = std::max(U / static_cast<double>(k), 1.0 / dK);
                tail = std::exp((r - 1) * std::log(cK) - std::log(qint_k1) - std::log(dK) +
                                log_geom_poly_tail(q, r - 1, k));
            }
            if (tail <= qp.tol)
                return CertifiedValue{acc, tail, k};
            if (k >= qp.max_terms)
                throw_budget("eval_Lr: max_terms exhausted before tail bound met tol", acc,
                             tail, k);
            next_check *= 2;
        }
        qint_k += qpow;
        qpow *= q;
    }
}

CertifiedValue eval_Rr(int r, std::complex<double> z, const QParam& qp) {
    if (r < 1) throw std::invalid_argument("eval_Rr: r must be >= 1");
    const double q = qp.q;
    const double dpole = delta_pole(z);
    const double abs_z = std::abs(z);
    const double qr = ipow(q, r);

    std::complex<double> acc{0.0, 0.0};
    double qpow = q, qrpow = qr, qint_m = 1.0;
    long next_check = first_checkpoint();
    for (long m = 1;; ++m) {
        const std::complex<double> d = qint_m - z * qpow;
        const double abs_d = std::abs(d);
        if (abs_d < dpole)
            throw PoleProximity("eval_Rr: z within delta_pole of the excluded set at m = " +
                                std::to_string(m));
        acc += qrpow / (ipow(qint_m, r) * d);

        if (m == next_check || m >= qp.max_terms) {
            const double qint_m1 = qint_m + qpow;
            const double dK = qint_m1 - abs_z * qpow * q;
            double tail = kInf;
            if (dK > 0.0)  // geometric with ratio q^r
                tail = qrpow * qr / (ipow(qint_m1, r) * dK * (1.0 - qr));
            if (tail <= qp.tol)
                return CertifiedValue{acc, tail, m};
            if (m >= qp.max_terms)
                throw_budget("eval_Rr: max_terms exhausted before tail bound met tol", acc,
                             tail, m);
            next_check *= 2;
        }
        qint_m += qpow;
        qpow *= q;
        qrpow *= qr;
    }
}

// ---------------------------------------------------------------------------
// A(m,n,k): outer factor q^{m+b}/([m+b][b]), inner factors 1/[b], all
// variables above the cutoff k.  The inner chain below b1 is a strictly
// decreasing (n-1)-subset, so
//
//   F_2(b1) <= C(b1-1-k, n-1) prod_{i=1}^{n-1} 1/[i],
//
// and the outer tail is again geometric-times-polynomial with rho = q.
// ---------------------------------------------------------------------------
namespace {

CertifiedValue eval_A_impl(int m, int n, int k0, const QParam& qp) {
    if (m < 1) throw std::invalid_argument("eval_A: m must be >= 1");
    if (n < 0 || k0 < 0) throw std::invalid_argument("eval_A: n and k must be >= 0");
    const double q = qp.q;
    if (n == 0)
        return CertifiedValue{ipow(q, m) / q_int(m, qp), 0.0, 1};

    double log_inner_prod = 0.0;  // sum_{i<n} ln [i]
    {
        double qpow = q, qint_i = 1.0;
        for (int i = 1; i < n; ++i) {
            log_inner_prod += std::log(qint_i);
            qint_i += qpow;
            qpow *= q;
        }
    }
    const double log_qm = m * std::log(q);
    const double one_minus_q = 1.0 - q;

    std::vector<double> inner(static_cast<std::size_t>(n) + 1, 0.0);
    double acc = 0.0;
    double qpow = std::pow(q, static_cast<double>(k0 + 1));  // q^b
    double qint_b = (1.0 - qpow) / one_minus_q;              // [b]
    const double qm = ipow(q, m);
    long next_check = first_checkpoint();
    for (long b = k0 + 1;; ++b) {
        const double qmb = qm * qpow;                     // q^{m+b}
        const double qint_mb = (1.0 - qmb) / one_minus_q; // [m+b]
        const double tj = 1.0 / qint_b;
        acc += qmb / qint_mb * tj * (n >= 2 ? inner[2] : 1.0);
        for (int j = 2; j < n; ++j)
            inner[static_cast<std::size_t>(j)] += tj * inner[static_cast<std::size_t>(j) + 1];
        if (n >= 2) inner[static_cast<std::size_t>(n)] += tj;

        const long terms = b - k0;
        if (terms == next_check || terms >= qp.max_terms) {
            const double qint_b1 = qint_b + qpow;
            const double qint_mb1 = qint_mb + qmb;
            const double tail = std::exp(log_qm - std::log(qint_mb1) - std::log(qint_b1) -
                                         std::lgamma(static_cast<double>(n)) - log_inner_prod +
                                         log_geom_poly_tail(q, n - 1, b));
            if (tail <= qp.tol)
                return CertifiedValue{acc, tail, terms};
            if (terms >= qp.max_terms)
                throw_budget("eval_A: max_terms exhausted before tail bound met tol", acc,
                             tail, terms);
            next_check *= 2;
        }
        qint_b += qpow;
        qpow *= q;
    }
}

}  // namespace

CertifiedValue eval_A(int m, int n, int k, const QParam& qp, EvalCache* cache) {
    if (!cache) return eval_A_impl(m, n, k, qp);
    const EvalCache::Key key = make_key(kTagA, {m, n, k}, qp);
    if (auto hit = cache->lookup(key)) return *hit;
    CertifiedValue v = eval_A_impl(m, n, k, qp);
    cache->store(key, v);
    return v;
}

double eval_B(int m, int n, const QParam& qp) {
    if (m < 1) throw std::invalid_argument("eval_B: m must be >= 1");
    if (n < 0) throw std::invalid_argument("eval_B: n must be >= 0");
    if (n == 0) return 1.0;
    if (n > m - 1) return 0.0;  // no chain m > k1 > ... > kn > 0 exists
    // Elementary symmetric polynomial e_n of the values 1/[i-m], i = 1..m-1
    // (the chain entries are an n-subset; order does not affect the product).
    std::vector<double> e(static_cast<std::size_t>(n) + 1, 0.0);
    e[0] = 1.0;
    for (int i = 1; i <= m - 1; ++i) {
        const double x = 1.0 / q_int(i - m, qp);
        for (int j = std::min(n, i); j >= 1; --j)
            e[static_cast<std::size_t>(j)] += x * e[static_cast<std::size_t>(j - 1)];
    }
    return e[static_cast<std::size_t>(n)];
}

std::complex<double> closed_Am(int m, std::complex<double> x, const QParam& qp) {
    if (m < 1) throw std::invalid_argument("closed_Am: m must be >= 1");
    const double q = qp.q;
    const double dpole = delta_pole(x);
    std::complex<double> p = ipow(q, m) / q_int(m, qp);
    double qpow = q, qint_c = 1.0;
    for (int c = 1; c <= m; ++c) {
        const std::complex<double> factor = 1.0 - x * qpow / qint_c;
        if (std::abs(factor) < dpole)
            throw PoleProximity("closed_Am: factor within delta_pole of zero at c = " +
                                std::to_string(c));
        p /= factor;
        qint_c += qpow;
        qpow *= q;
    }
    return p;
}

std::complex<double> closed_Bm(int m, std::complex<double> x, const QParam& qp) {
    if (m < 1) throw std::invalid_argument("closed_Bm: m must be >= 1");
    const double q = qp.q;
    std::complex<double> p{1.0, 0.0};
    double qpow = q, qint_b = 1.0;
    for (int b = 1; b <= m - 1; ++b) {
        p *= 1.0 - x * qpow / qint_b;
        qint_b += qpow;
        qpow *= q;
    }
    return p;
}

}  // namespace qmzv
