#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qmzv/qarith.hpp"
#include "qmzv/series_eval.hpp"

// Identity certifiers.  Each identity becomes a check comparing two
// independently computed sides and reporting the residual against a budget
// assembled from the constituents' certified bounds:
//
//   budget = sum of constituent tail bounds + rounding slack
//            + 1e-12 * (number of constituent evaluations),
//
// never a hand-tuned constant alone.  pass holds iff residual <= budget.

namespace qmzv {

struct VerifyReport {
    struct Param {
        std::string name;
        std::string text;       // pre-rendered value
        bool is_number = true;  // JSON: emit raw vs quoted
    };

    std::string identity;
    std::vector<Param> params;
    std::complex<double> lhs{0.0, 0.0};  // representative values (scalar checks;
    std::complex<double> rhs{0.0, 0.0};  // worst-deviation entry for tables)
    double residual = 0.0;
    double budget = 0.0;
    bool pass = false;
    std::string note;

    void add_param(const std::string& name, double v);
    void add_param(const std::string& name, long v);
    void add_param(const std::string& name, const std::string& v);

    std::string to_json() const;           // stable field order
    std::string to_tap(long number) const; // one-line TAP-style record
};

// Sum formula: the sum over compositions(N, r) of zeta*[comp] equals zeta*[N].
VerifyReport verify_sum_formula(int N, int r, const QParam& qp, EvalCache* cache = nullptr);

// Generating-function identity at a point: |L_r(z) - R_r(z)| within combined bounds.
VerifyReport verify_gf_identity(int r, std::complex<double> z, const QParam& qp);

// Bridge from the generating-function identity to the sum formula: extract
// the z^j coefficients of both sides by circle quadrature (orders
// 0..orders-1) and match them against the sum formula's two sides at
// weight r+j.
VerifyReport verify_gf_z_expansion(int r, const QParam& qp, int orders = 4,
                                   EvalCache* cache = nullptr);

// Generating-function representations of the A and B blocks: the truncated
// power series in x against the closed products.  The B side is an exact
// finite polynomial identity; the A side carries a certified series tail in
// x along with the per-term evaluation budgets.  Returns {A-side, B-side}.
std::array<VerifyReport, 2> verify_ab_representations(int m, std::complex<double> x, int n_max,
                                                      const QParam& qp,
                                                      EvalCache* cache = nullptr);

// q-analog of Euler's evaluation:
//   2 zeta[m,1] = m zeta[m+1] + (1-q)(m-2) zeta[m]
//                 - sum_{k=1}^{m-2} zeta[m-k] zeta[k+1].
VerifyReport verify_euler_reduction(int m, const QParam& qp, EvalCache* cache = nullptr);

// Double generating function over zeta[m+2,{1}^n]: coefficient table against
// 1 - exp{...} to total degree D; the residual also covers the symmetry
// zeta[m+2,{1}^n] = zeta[n+2,{1}^m] of the table.
VerifyReport verify_drin(const QParam& qp, int D, EvalCache* cache = nullptr);

// Weight/depth/height generating function: 1 + (z-xy) Phi0 against the
// exponential with Newton power sums p_k (alpha+beta = x+y+(q-1)(z-xy),
// alpha beta = z), compared coefficient-wise to total degree D.
VerifyReport verify_height_relation(const QParam& qp, int D, EvalCache* cache = nullptr);

// z -> xy diagonal of Phi0: G0[n,r] = sum_s G0[n,r,s] must equal zeta[n]
// for every depth r < n <= D.
VerifyReport verify_phi_diagonal(const QParam& qp, int D, EvalCache* cache = nullptr);

// --- sweep drivers -----------------------------------------------------

struct SweepOptions {
    std::vector<double> qs = {0.2, 0.5, 0.8, 0.95};
    double tol = 1e-9;
    long max_terms = 1'000'000;
    int max_weight = 8;                                // sum formula / diagonal
    int gf_depth = 4;                                  // generating-function depth range
    std::optional<std::vector<std::complex<double>>> z_points;  // default grid if unset
    int ab_max_m = 20;
    int ab_n_max = 40;
    std::vector<std::complex<double>> ab_x = {{0.3, 0.0}, {0.5, 0.2}};
    int euler_max_m = 8;
    int drin_cap = 8;
    int height_cap = 6;
    int threads = 0;  // 0: decide from QMZV_THREADS / hardware
};

// Default q grid for sweeps; 0.95 stresses slow geometric decay.
extern const std::vector<double> kDefaultQGrid;

// The 12-point pole-guarded z grid used by the generating-function sweep.
extern const std::vector<std::complex<double>> kDefaultZGrid;

// identity is one of: sum, gf, abreps, euler, drin, height, diagonal, all.
// Reports come back in deterministic parameter order regardless of the
// worker fan-out.
std::vector<VerifyReport> run_identity_sweep(const std::string& identity,
                                             const SweepOptions& opts);

bool is_known_identity(const std::string& identity);

}  // namespace qmzv
