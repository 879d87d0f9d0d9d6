#pragma once

#include <array>
#include <complex>
#include <vector>

// Truncated multivariate power series (up to 3 variables) over complex
// coefficients, closed under a total-degree cap: no operation produces terms
// of degree above the cap.  This is the engine behind the coefficient-table
// identity checks; the identities themselves are exact to all orders, the cap
// is purely a verification budget.

namespace qmzv {

class TruncSeries {
  public:
    using Coeff = std::complex<double>;
    using Exps = std::array<int, 3>;  // unused trailing variables fixed at 0

    TruncSeries(int nvars, int cap);

    static TruncSeries constant(int nvars, int cap, Coeff c);
    static TruncSeries variable(int nvars, int cap, int var);  // x_var, 0-based

    int nvars() const { return nvars_; }
    int cap() const { return cap_; }
    bool same_shape(const TruncSeries& o) const {
        return nvars_ == o.nvars_ && cap_ == o.cap_;
    }

    Coeff coeff(const Exps& e) const;
    void set_coeff(const Exps& e, Coeff c);

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }
    TruncSeries& operator*=(Coeff s);

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(TruncSeries a, Coeff s) { return a *= s; }
    friend TruncSeries operator*(Coeff s, TruncSeries a) { return a *= s; }

    // Visits every stored exponent tuple (total degree <= cap) in a fixed
    // deterministic order, including zero coefficients.
    template <typename F>
    void for_each(F&& f) const {
        Exps e{0, 0, 0};
        walk(0, 0, e, f);
    }

    // Series of coefficient magnitudes; used for rigorous error propagation.
    TruncSeries abs_coeffs() const;
    double max_abs_coeff() const;

    bool operator==(const TruncSeries& o) const {
        return nvars_ == o.nvars_ && cap_ == o.cap_ && c_ == o.c_;
    }

  private:
    std::size_t flat(const Exps& e) const;
    template <typename F>
    void walk(int var, int used, Exps& e, F&& f) const {
        if (var == nvars_) {
            f(static_cast<const Exps&>(e), c_[flat(e)]);
            return;
        }
        for (int d = 0; d + used <= cap_; ++d) {
            e[static_cast<std::size_t>(var)] = d;
            walk(var + 1, used + d, e, f);
        }
        e[static_cast<std::size_t>(var)] = 0;
    }

    int nvars_;
    int cap_;
    std::vector<Coeff> c_;  // dense (cap+1)^nvars block; entries above cap stay 0
};

// Named forms of the ring operations (thin wrappers over the operators).
TruncSeries ps_add(const TruncSeries& a, const TruncSeries& b);
TruncSeries ps_mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries ps_scale(const TruncSeries& a, TruncSeries::Coeff s);

// exp(a) for a with zero constant term; log(a) for a with constant term 1.
// ps_log(ps_exp(a)) == a exactly at the cap.
TruncSeries ps_exp(const TruncSeries& a);
TruncSeries ps_log(const TruncSeries& a);

// Power sums p_k = alpha^k + beta^k for the pair determined by
// alpha + beta = e1, alpha*beta = e2, via p_1 = e1, p_2 = e1^2 - 2 e2,
// p_k = e1 p_{k-1} - e2 p_{k-2}.  Avoids extracting alpha, beta individually
// (they live in a ramified extension, not in the series ring).
std::vector<TruncSeries> newton_power_sums(const TruncSeries& e1, const TruncSeries& e2,
                                           int kmax);

}  // namespace qmzv
