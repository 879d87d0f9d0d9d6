#include "qmzv/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <thread>

#include "qmzv/format.hpp"
#include "qmzv/indices.hpp"
#include "qmzv/powerseries.hpp"

namespace qmzv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// budget = sum of tail bounds + rounding slack + 1e-12 per constituent.
class BudgetAccum {
  public:
    void add(const CertifiedValue& v, double weight = 1.0) {
        tail_ += weight * v.tail_bound;
        slack_ += weight * v.rounding_slack();
        ++ops_;
    }
    // |a b - a~ b~| <= |a| B(b) + |b| B(a) + B(a) B(b)
    void add_product(const CertifiedValue& a, const CertifiedValue& b, double weight = 1.0) {
        const double ba = a.budget(), bb = b.budget();
        tail_ += weight * (std::abs(a.value) * bb + std::abs(b.value) * ba + ba * bb);
        ops_ += 2;
    }
    void add_raw(double bound) {
        tail_ += bound;
        ++ops_;
    }
    double total() const { return tail_ + slack_ + 1e-12 * static_cast<double>(ops_); }

  private:
    double tail_ = 0.0;
    double slack_ = 0.0;
    long ops_ = 0;
};

// Tracks the point with the largest residual excess over its own budget, so
// that a multi-point report keeps the invariant pass <=> residual <= budget.
struct WorstExcess {
    double residual = 0.0;
    double budget = kInf;
    std::complex<double> lhs{0.0, 0.0}, rhs{0.0, 0.0};
    bool seen = false;

    void offer(double res, double bud, std::complex<double> l, std::complex<double> r) {
        if (!seen || res - bud > residual - budget) {
            residual = res;
            budget = bud;
            lhs = l;
            rhs = r;
            seen = true;
        }
    }
};

VerifyReport make_report(std::string identity, const QParam& qp) {
    VerifyReport rep;
    rep.identity = std::move(identity);
    rep.add_param("q", qp.q);
    rep.add_param("tol", qp.tol);
    return rep;
}

void finish(VerifyReport& rep, std::complex<double> lhs, std::complex<double> rhs,
            double residual, double budget) {
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = residual;
    rep.budget = budget;
    rep.pass = residual <= budget;
}

}  // namespace

void VerifyReport::add_param(const std::string& name, double v) {
    params.push_back(Param{name, fmt_g17(v), true});
}
void VerifyReport::add_param(const std::string& name, long v) {
    params.push_back(Param{name, std::to_string(v), true});
}
void VerifyReport::add_param(const std::string& name, const std::string& v) {
    params.push_back(Param{name, v, false});
}

std::string VerifyReport::to_json() const {
    std::string s = "{\"identity\":\"" + json_escape(identity) + "\",\"params\":{";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) s += ',';
        s += '"' + json_escape(params[i].name) + "\":";
        s += params[i].is_number ? params[i].text : '"' + json_escape(params[i].text) + '"';
    }
    s += "},\"lhs\":" + json_complex(lhs) + ",\"rhs\":" + json_complex(rhs);
    s += ",\"residual\":" + fmt_g17(residual) + ",\"budget\":" + fmt_g17(budget);
    s += ",\"pass\":";
    s += pass ? "true" : "false";
    s += ",\"note\":\"" + json_escape(note) + "\"}";
    return s;
}

std::string VerifyReport::to_tap(long number) const {
    std::string s = pass ? "ok " : "not ok ";
    s += std::to_string(number) + " - " + identity;
    for (const auto& p : params) s += ' ' + p.name + '=' + p.text;
    s += " residual=" + fmt_e3(residual) + " budget=" + fmt_e3(budget);
    if (!note.empty()) s += " # " + note;
    return s;
}

// ---------------------------------------------------------------------------

VerifyReport verify_sum_formula(int N, int r, const QParam& qp, EvalCache* cache) {
    if (N < r || r < 1)
        throw std::invalid_argument("verify_sum_formula: need N >= r >= 1");
    VerifyReport rep = make_report("sum-formula", qp);
    rep.add_param("N", static_cast<long>(N));
    rep.add_param("r", static_cast<long>(r));

    BudgetAccum budget;
    std::complex<double> lhs{0.0, 0.0};
    for (const auto& parts : compositions(N, r)) {
        const CertifiedValue v = eval_qmzv_star(MultiIndex(parts), qp, cache);
        lhs += v.value;
        budget.add(v);
    }
    const CertifiedValue rhs = eval_qmzv_star(MultiIndex({N}), qp, cache);
    budget.add(rhs);
    finish(rep, lhs, rhs.value, std::abs(lhs - rhs.value), budget.total());
    return rep;
}

VerifyReport verify_gf_identity(int r, std::complex<double> z, const QParam& qp) {
    VerifyReport rep = make_report("gf-identity", qp);
    rep.add_param("r", static_cast<long>(r));
    rep.add_param("z_re", z.real());
    rep.add_param("z_im", z.imag());
    if (std::abs(z) > 10.0)
        rep.note = "untested territory: |z| > 10";

    const CertifiedValue L = eval_Lr(r, z, qp);
    const CertifiedValue R = eval_Rr(r, z, qp);
    BudgetAccum budget;
    budget.add(L);
    budget.add(R);
    finish(rep, L.value, R.value, std::abs(L.value - R.value), budget.total());
    return rep;
}

VerifyReport verify_gf_z_expansion(int r, const QParam& qp, int orders, EvalCache* cache) {
    if (orders < 1 || orders > 8)
        throw std::invalid_argument("verify_gf_z_expansion: orders must be 1..8");
    VerifyReport rep = make_report("gf-z-expansion", qp);
    rep.add_param("r", static_cast<long>(r));
    rep.add_param("orders", static_cast<long>(orders));

    // Coefficients of z^j extracted by M-point circle quadrature at two
    // radii; the inner radius supplies the value, the spread between the two
    // bounds the aliasing (it scales as (rho2/rho1)^M = 2^-M).
    constexpr int M = 32;
    constexpr double rho1 = 0.25, rho2 = 0.125;
    const QParam qp_node(qp.q, qp.tol / 512.0, qp.max_terms);

    std::array<std::vector<std::complex<double>>, 2> Lval, Rval;
    const std::array<double, 2> radii = {rho1, rho2};
    double node_budget = 0.0;
    for (int ri = 0; ri < 2; ++ri) {
        Lval[static_cast<std::size_t>(ri)].reserve(M);
        Rval[static_cast<std::size_t>(ri)].reserve(M);
        for (int t = 0; t < M; ++t) {
            const std::complex<double> z =
                std::polar(radii[static_cast<std::size_t>(ri)],
                           2.0 * std::numbers::pi * t / M);
            const CertifiedValue L = eval_Lr(r, z, qp_node);
            const CertifiedValue R = eval_Rr(r, z, qp_node);
            node_budget = std::max({node_budget, L.budget(), R.budget()});
            Lval[static_cast<std::size_t>(ri)].push_back(L.value);
            Rval[static_cast<std::size_t>(ri)].push_back(R.value);
        }
    }
    auto coeff = [&](const std::vector<std::complex<double>>& f, double rho, int j) {
        std::complex<double> s{0.0, 0.0};
        for (int t = 0; t < M; ++t)
            s += f[static_cast<std::size_t>(t)] *
                 std::polar(1.0, -2.0 * std::numbers::pi * j * t / M);
        return s / (static_cast<double>(M) * std::pow(rho, j));
    };

    WorstExcess worst;
    for (int j = 0; j < orders; ++j) {
        // Reference sides from the sum formula at weight N = r + j.
        const int N = r + j;
        BudgetAccum lhs_budget;
        std::complex<double> lhs_ref{0.0, 0.0};
        for (const auto& parts : compositions(N, r)) {
            const CertifiedValue v = eval_qmzv_star(MultiIndex(parts), qp, cache);
            lhs_ref += v.value;
            lhs_budget.add(v);
        }
        const CertifiedValue rhs_ref = eval_qmzv_star(MultiIndex({N}), qp, cache);

        const double amp = std::pow(rho2, -j);
        for (int side = 0; side < 2; ++side) {
            const auto& f1 = side == 0 ? Lval[0] : Rval[0];
            const auto& f2 = side == 0 ? Lval[1] : Rval[1];
            const std::complex<double> c1 = coeff(f1, rho1, j);
            const std::complex<double> c2 = coeff(f2, rho2, j);
            const double alias = std::abs(c1 - c2) * 2.0 / (std::exp2(M) - 1.0);
            const std::complex<double> ref = side == 0 ? lhs_ref : rhs_ref.value;
            BudgetAccum b;
            b.add_raw(amp * node_budget);
            b.add_raw(alias);
            if (side == 0) {
                b.add_raw(lhs_budget.total());
            } else {
                b.add(rhs_ref);
            }
            worst.offer(std::abs(c2 - ref), b.total(), c2, ref);
        }
    }
    finish(rep, worst.lhs, worst.rhs, worst.residual, worst.budget);
    rep.pass = worst.residual <= worst.budget;
    return rep;
}

std::array<VerifyReport, 2> verify_ab_representations(int m, std::complex<double> x, int n_max,
                                                      const QParam& qp, EvalCache* cache) {
    if (m < 1 || n_max < 0)
        throw std::invalid_argument("verify_ab_representations: need m >= 1, n_max >= 0");
    const double q = qp.q;
    const double abs_x = std::abs(x);

    // A side: sum_{n<=n_max} x^n A(m,n) against the closed product, with a
    // certified bound on the omitted n > n_max block.  With y_c = q^c/[c],
    // A(m,n) = (q^m/[m]) h_n(y_1..y_m), so for any s in (|x|, 1/q)
    //   sum_{n>N} |x|^n A(m,n)
    //     <= (q^m/[m]) prod_c (1 - y_c s)^{-1} (|x|/s)^{N+1} / (1 - |x|/s);
    // the bound is minimized over a grid of s.
    VerifyReport rep_a = make_report("abreps-A", qp);
    rep_a.add_param("m", static_cast<long>(m));
    rep_a.add_param("x_re", x.real());
    rep_a.add_param("x_im", x.imag());
    rep_a.add_param("n_max", static_cast<long>(n_max));

    BudgetAccum budget_a;
    std::complex<double> series_a{0.0, 0.0};
    std::complex<double> xpow{1.0, 0.0};
    for (int n = 0; n <= n_max; ++n) {
        const CertifiedValue a = eval_A(m, n, 0, qp, cache);
        series_a += xpow * a.value;
        budget_a.add(a, std::abs(xpow));
        xpow *= x;
    }
    double series_tail = 0.0;
    if (abs_x > 0.0) {
        series_tail = kInf;
        const double s_hi = 1.0 / q;
        if (abs_x < s_hi) {
            std::vector<double> yc;
            double qpow = q, qint_c = 1.0;
            for (int c = 1; c <= m; ++c) {
                yc.push_back(qpow / qint_c);
                qint_c += qpow;
                qpow *= q;
            }
            const double pref = std::pow(q, m) / q_int(m, qp);
            for (int i = 1; i <= 15; ++i) {
                const double s = abs_x + (s_hi - abs_x) * i / 16.0;
                double logprod = 0.0;
                bool ok = true;
                for (double y : yc) {
                    if (y * s >= 1.0) { ok = false; break; }
                    logprod -= std::log1p(-y * s);
                }
                if (!ok) continue;
                const double val = pref * std::exp(logprod + (n_max + 1) * std::log(abs_x / s) -
                                                   std::log1p(-abs_x / s));
                series_tail = std::min(series_tail, val);
            }
        }
    }
    budget_a.add_raw(series_tail);
    const std::complex<double> prod_a = closed_Am(m, x, qp);
    budget_a.add_raw(0.0);  // count the closed product as one constituent
    finish(rep_a, series_a, prod_a, std::abs(series_a - prod_a), budget_a.total());

    // B side: exact finite polynomial identity.
    VerifyReport rep_b = make_report("abreps-B", qp);
    rep_b.add_param("m", static_cast<long>(m));
    rep_b.add_param("x_re", x.real());
    rep_b.add_param("x_im", x.imag());

    BudgetAccum budget_b;
    std::complex<double> series_b{0.0, 0.0};
    xpow = {1.0, 0.0};
    for (int n = 0; n <= m - 1; ++n) {
        series_b += xpow * eval_B(m, n, qp);
        budget_b.add_raw(0.0);
        xpow *= x;
    }
    const std::complex<double> prod_b = closed_Bm(m, x, qp);
    // rounding-only slack: ~m^2 flops on O(|series|) magnitudes
    budget_b.add_raw(static_cast<double>(m) * static_cast<double>(m) * 8.0 *
                     std::numeric_limits<double>::epsilon() *
                     std::max(1.0, std::abs(series_b)));
    finish(rep_b, series_b, prod_b, std::abs(series_b - prod_b), budget_b.total());
    return {rep_a, rep_b};
}

VerifyReport verify_euler_reduction(int m, const QParam& qp, EvalCache* cache) {
    if (m < 2) throw std::invalid_argument("verify_euler_reduction: m must be >= 2");
    VerifyReport rep = make_report("euler-reduction", qp);
    rep.add_param("m", static_cast<long>(m));

    const double eps = 1.0 - qp.q;
    const CertifiedValue zm1 = eval_qmzv(MultiIndex({m, 1}), qp, cache);
    const CertifiedValue zmp1 = eval_qmzv(MultiIndex({m + 1}), qp, cache);
    const CertifiedValue zm = eval_qmzv(MultiIndex({m}), qp, cache);

    BudgetAccum budget;
    budget.add(zm1, 2.0);
    budget.add(zmp1, static_cast<double>(m));
    budget.add(zm, eps * (m - 2));
    std::complex<double> products{0.0, 0.0};
    for (int k = 1; k <= m - 2; ++k) {
        const CertifiedValue a = eval_qmzv(MultiIndex({m - k}), qp, cache);
        const CertifiedValue b = eval_qmzv(MultiIndex({k + 1}), qp, cache);
        products += a.value * b.value;
        budget.add_product(a, b);
    }
    const std::complex<double> lhs = 2.0 * zm1.value;
    const std::complex<double> rhs =
        static_cast<double>(m) * zmp1.value + eps * (m - 2) * zm.value - products;
    finish(rep, lhs, rhs, std::abs(lhs - rhs), budget.total());
    return rep;
}

// ---------------------------------------------------------------------------
// Coefficient-table identities.
// ---------------------------------------------------------------------------

namespace {

// Max coefficient deviation plus the worst entry, over all stored exponents.
struct TableDev {
    double dev = 0.0;
    std::complex<double> lhs{0.0, 0.0}, rhs{0.0, 0.0};
};

TableDev max_table_dev(const TruncSeries& a, const TruncSeries& b) {
    TableDev out;
    a.for_each([&](const TruncSeries::Exps& e, TruncSeries::Coeff ca) {
        const TruncSeries::Coeff cb = b.coeff(e);
        const double d = std::abs(ca - cb);
        if (d > out.dev) {
            out.dev = d;
            out.lhs = ca;
            out.rhs = cb;
        }
    });
    return out;
}

// (1/k) sum_{j=2}^{k} (q-1)^{k-j} zeta[j], plus the matching error weight.
struct ExpWeight {
    double coef = 0.0;
    double err = 0.0;
};

ExpWeight exp_weight(int k, double q, const std::vector<CertifiedValue>& zeta) {
    ExpWeight w;
    double pw = 1.0;
    for (int j = k; j >= 2; --j) {
        w.coef += pw * zeta[static_cast<std::size_t>(j)].value.real();
        w.err += std::abs(pw) * zeta[static_cast<std::size_t>(j)].budget();
        pw *= (q - 1.0);
    }
    w.coef /= k;
    w.err /= k;
    return w;
}

// Coefficient-wise bound on exp(arg+delta) - exp(arg): exp(|arg|)(exp(|delta|)-1).
double exp_propagated_error(const TruncSeries& arg_abs, const TruncSeries& err_arg) {
    const TruncSeries one = TruncSeries::constant(arg_abs.nvars(), arg_abs.cap(), 1.0);
    return (ps_exp(arg_abs) * (ps_exp(err_arg) - one)).max_abs_coeff();
}

}  // namespace

VerifyReport verify_drin(const QParam& qp, int D, EvalCache* cache) {
    if (D < 2) throw std::invalid_argument("verify_drin: D must be >= 2");
    VerifyReport rep = make_report("drin", qp);
    rep.add_param("D", static_cast<long>(D));
    const double q = qp.q;

    std::vector<CertifiedValue> zeta(static_cast<std::size_t>(D) + 1);
    long ops = 0;
    for (int j = 2; j <= D; ++j) {
        zeta[static_cast<std::size_t>(j)] = eval_qmzv(MultiIndex({j}), qp, cache);
        ++ops;
    }

    // RHS = 1 - exp{ sum_{k=2}^{D} (x^k + y^k - (x+y+(1-q)xy)^k) w_k }.
    const TruncSeries x = TruncSeries::variable(2, D, 0);
    const TruncSeries y = TruncSeries::variable(2, D, 1);
    const TruncSeries base = x + y + (1.0 - q) * (x * y);
    TruncSeries arg(2, D), err_arg(2, D);
    TruncSeries basepow = base;
    for (int k = 2; k <= D; ++k) {
        basepow = basepow * base;
        TruncSeries poly = TruncSeries::Coeff{-1.0, 0.0} * basepow;
        TruncSeries::Exps ex{k, 0, 0}, ey{0, k, 0};
        poly.set_coeff(ex, poly.coeff(ex) + 1.0);
        poly.set_coeff(ey, poly.coeff(ey) + 1.0);
        const ExpWeight w = exp_weight(k, q, zeta);
        arg += poly * TruncSeries::Coeff{w.coef, 0.0};
        err_arg += poly.abs_coeffs() * TruncSeries::Coeff{w.err, 0.0};
    }
    const TruncSeries rhs = TruncSeries::constant(2, D, 1.0) - ps_exp(arg);
    const double rhs_err = exp_propagated_error(arg.abs_coeffs(), err_arg);

    // LHS table: coefficient of x^{m+1} y^{n+1} is zeta[m+2,{1}^n].
    TruncSeries lhs(2, D);
    double lhs_err = 0.0;
    for (int mm = 0; mm + 2 <= D; ++mm) {
        for (int nn = 0; mm + nn + 2 <= D; ++nn) {
            const CertifiedValue v = eval_qmzv(ones_padded(mm, nn), qp, cache);
            lhs.set_coeff({mm + 1, nn + 1, 0}, v.value);
            lhs_err = std::max(lhs_err, v.budget());
            ++ops;
        }
    }

    const TableDev dev = max_table_dev(lhs, rhs);
    // Symmetry of the LHS table is part of the contract.
    double sym_dev = 0.0;
    for (int mm = 0; mm + 2 <= D; ++mm)
        for (int nn = mm + 1; mm + nn + 2 <= D; ++nn)
            sym_dev = std::max(sym_dev, std::abs(lhs.coeff({mm + 1, nn + 1, 0}) -
                                                 lhs.coeff({nn + 1, mm + 1, 0})));
    const double residual = std::max(dev.dev, sym_dev);
    const double budget = std::max(lhs_err + rhs_err, 2.0 * lhs_err) +
                          1e-12 * static_cast<double>(ops);
    finish(rep, dev.lhs, dev.rhs, residual, budget);
    return rep;
}

VerifyReport verify_height_relation(const QParam& qp, int D, EvalCache* cache) {
    if (D < 2) throw std::invalid_argument("verify_height_relation: D must be >= 2");
    VerifyReport rep = make_report("height-relation", qp);
    rep.add_param("D", static_cast<long>(D));
    rep.note = "Phi0 enumerates s >= 1 strata only (z exponent s-1)";
    const double q = qp.q;

    // p_k has minimal total degree ceil(k/2) (alpha beta = z is degree 1),
    // so terms through k = 2D contribute below the cap.
    const int kmax = 2 * D;
    std::vector<CertifiedValue> zeta(static_cast<std::size_t>(kmax) + 1);
    long ops = 0;
    for (int j = 2; j <= kmax; ++j) {
        zeta[static_cast<std::size_t>(j)] = eval_qmzv(MultiIndex({j}), qp, cache);
        ++ops;
    }

    const TruncSeries x = TruncSeries::variable(3, D, 0);
    const TruncSeries y = TruncSeries::variable(3, D, 1);
    const TruncSeries z = TruncSeries::variable(3, D, 2);
    const TruncSeries e1 = x + y + (q - 1.0) * (z - x * y);
    const TruncSeries& e2 = z;
    const std::vector<TruncSeries> p = newton_power_sums(e1, e2, kmax);

    TruncSeries arg(3, D), err_arg(3, D);
    for (int k = 2; k <= kmax; ++k) {
        TruncSeries poly = TruncSeries::Coeff{-1.0, 0.0} * p[static_cast<std::size_t>(k - 1)];
        if (k <= D) {
            TruncSeries::Exps ex{k, 0, 0}, ey{0, k, 0};
            poly.set_coeff(ex, poly.coeff(ex) + 1.0);
            poly.set_coeff(ey, poly.coeff(ey) + 1.0);
        }
        const ExpWeight w = exp_weight(k, q, zeta);
        arg += poly * TruncSeries::Coeff{w.coef, 0.0};
        err_arg += poly.abs_coeffs() * TruncSeries::Coeff{w.err, 0.0};
    }
    const TruncSeries rhs = ps_exp(arg);
    const double rhs_err = exp_propagated_error(arg.abs_coeffs(), err_arg);

    // LHS = 1 + (z - xy) Phi0; entries of degree <= D-1 feed the product.
    TruncSeries phi(3, D), phi_budget(3, D);
    for (int n = 2; n <= 2 * D; ++n) {
        for (int r = 1; r < n; ++r) {
            for (int s = 1; s <= std::min(r, n - r); ++s) {
                if (n - s - 1 > D - 1) continue;
                std::complex<double> g{0.0, 0.0};
                double gb = 0.0;
                bool any = false;
                for (const MultiIndex& idx : enumerate_I0(n, r, s)) {
                    const CertifiedValue v = eval_qmzv(idx, qp, cache);
                    g += v.value;
                    gb += v.budget();
                    any = true;
                    ++ops;
                }
                if (!any) continue;
                const TruncSeries::Exps e{n - r - s, r - s, s - 1};
                phi.set_coeff(e, phi.coeff(e) + g);
                phi_budget.set_coeff(e, phi_budget.coeff(e) + gb);
            }
        }
    }
    const TruncSeries zmxy = z - x * y;
    const TruncSeries lhs = TruncSeries::constant(3, D, 1.0) + zmxy * phi;
    const double lhs_err = (zmxy.abs_coeffs() * phi_budget).max_abs_coeff();

    const TableDev dev = max_table_dev(lhs, rhs);
    finish(rep, dev.lhs, dev.rhs, dev.dev,
           lhs_err + rhs_err + 1e-12 * static_cast<double>(ops));
    return rep;
}

VerifyReport verify_phi_diagonal(const QParam& qp, int D, EvalCache* cache) {
    if (D < 2) throw std::invalid_argument("verify_phi_diagonal: D must be >= 2");
    VerifyReport rep = make_report("phi-diagonal", qp);
    rep.add_param("D", static_cast<long>(D));
    rep.note = "G0[n,r] = sum over s >= 1 of G0[n,r,s]";

    WorstExcess worst;
    bool all_pass = true;
    for (int n = 2; n <= D; ++n) {
        const CertifiedValue zn = eval_qmzv(MultiIndex({n}), qp, cache);
        for (int r = 1; r < n; ++r) {
            BudgetAccum budget;
            budget.add(zn);
            std::complex<double> g{0.0, 0.0};
            for (int s = 1; s <= std::min(r, n - r); ++s) {
                for (const MultiIndex& idx : enumerate_I0(n, r, s)) {
                    const CertifiedValue v = eval_qmzv(idx, qp, cache);
                    g += v.value;
                    budget.add(v);
                }
            }
            const double dev = std::abs(g - zn.value);
            const double bud = budget.total();
            all_pass = all_pass && dev <= bud;
            worst.offer(dev, bud, g, zn.value);
        }
    }
    finish(rep, worst.lhs, worst.rhs, worst.residual, worst.budget);
    rep.pass = all_pass;
    return rep;
}

// ---------------------------------------------------------------------------
// Sweep drivers.
// ---------------------------------------------------------------------------

const std::vector<double> kDefaultQGrid = {0.2, 0.5, 0.8, 0.95};

const std::vector<std::complex<double>> kDefaultZGrid = {
    {0.0, 0.0},  {0.3, 0.0},  {-0.7, 0.0}, {0.9, 0.0},   {-1.2, 0.0},  {2.5, 0.0},
    {0.5, 0.5},  {-0.7, 0.2}, {0.0, 1.5},  {0.0, -3.0},  {-2.5, -1.5}, {3.0, 2.0}};

bool is_known_identity(const std::string& identity) {
    static const std::vector<std::string> known = {"sum",  "gf",     "abreps",   "euler",
                                                   "drin", "height", "diagonal", "all"};
    for (const auto& k : known)
        if (k == identity) return true;
    return false;
}

namespace {

int resolve_threads(int requested, std::size_t njobs) {
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("QMZV_THREADS"))
            n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), njobs));
}

// Runs independent jobs across workers; each job writes its own slot, so the
// collected output is in parameter order no matter the scheduling.  The
// first exception (by job index) is rethrown after all workers finish.
void run_jobs(std::vector<std::function<void()>>& jobs, int threads) {
    if (jobs.empty()) return;
    const int n = resolve_threads(threads, jobs.size());
    if (n <= 1) {
        for (auto& j : jobs) j();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs.size());
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs.size()) return;
                try {
                    jobs[i]();
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

void append_sweep(const std::string& identity, const SweepOptions& opts,
                  std::vector<VerifyReport>& out, EvalCache& cache) {
    std::vector<std::function<VerifyReport()>> points;

    if (identity == "sum") {
        for (double q : opts.qs) {
            const QParam qp(q, opts.tol, opts.max_terms);
            for (int N = 1; N <= opts.max_weight; ++N)
                for (int r = 1; r <= N; ++r)
                    points.emplace_back(
                        [N, r, qp, &cache] { return verify_sum_formula(N, r, qp, &cache); });
        }
    } else if (identity == "gf") {
        const auto& grid = opts.z_points ? *opts.z_points : kDefaultZGrid;
        for (double q : opts.qs) {
            const QParam qp(q, opts.tol, opts.max_terms);
            for (int r = 1; r <= opts.gf_depth; ++r) {
                for (const auto z : grid)
                    points.emplace_back([r, z, qp] { return verify_gf_identity(r, z, qp); });
                points.emplace_back(
                    [r, qp, &cache] { return verify_gf_z_expansion(r, qp, 4, &cache); });
            }
        }
    } else if (identity == "abreps") {
        for (double q : opts.qs) {
            const QParam qp(q, opts.tol, opts.max_terms);
            for (int m = 1; m <= opts.ab_max_m; ++m)
                for (const auto x : opts.ab_x)
                    for (int side = 0; side < 2; ++side)
                        points.emplace_back([m, x, side, qp, &opts, &cache] {
                            return verify_ab_representations(m, x, opts.ab_n_max, qp,
                                                             &cache)[static_cast<std::size_t>(side)];
                        });
        }
    } else if (identity == "euler") {
        for (double q : opts.qs) {
            const QParam qp(q, opts.tol, opts.max_terms);
            for (int m = 2; m <= opts.euler_max_m; ++m)
                points.emplace_back(
                    [m, qp, &cache] { return verify_euler_reduction(m, qp, &cache); });
        }
    } else if (identity == "drin") {
        for (double q : opts.qs) {
            const QParam qp(q, opts.tol, opts.max_terms);
            points.emplace_back(
                [qp, &opts, &cache] { return verify_drin(qp, opts.drin_cap, &cache); });
        }
    } else if (identity == "height") {
        for (double q : opts.qs) {
            const QParam qp(q, opts.tol, opts.max_terms);
            points.emplace_back([qp, &opts, &cache] {
                return verify_height_relation(qp, opts.height_cap, &cache);
            });
        }
    } else if (identity == "diagonal") {
        for (double q : opts.qs) {
            const QParam qp(q, opts.tol, opts.max_terms);
            points.emplace_back([qp, &opts, &cache] {
                return verify_phi_diagonal(qp, opts.max_weight, &cache);
            });
        }
    } else {
        throw std::invalid_argument("unknown identity: " + identity);
    }

    const std::size_t base = out.size();
    out.resize(base + points.size());
    std::vector<std::function<void()>> jobs;
    jobs.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        jobs.emplace_back([&, i] { out[base + i] = points[i](); });
    run_jobs(jobs, opts.threads);
}

}  // namespace

std::vector<VerifyReport> run_identity_sweep(const std::string& identity,
                                             const SweepOptions& opts) {
    std::vector<VerifyReport> out;
    EvalCache cache;
    if (identity == "all") {
        for (const char* id : {"sum", "gf", "abreps", "euler", "drin", "height", "diagonal"})
            append_sweep(id, opts, out, cache);
    } else {
        append_sweep(identity, opts, out, cache);
    }
    return out;
}

}  // namespace qmzv
