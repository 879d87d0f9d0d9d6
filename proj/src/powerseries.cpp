#include "qmzv/powerseries.hpp"

#include <cmath>
#include <stdexcept>

namespace qmzv {

namespace {

void check_shape(const TruncSeries& a, const TruncSeries& b) {
    if (!a.same_shape(b))
        throw std::invalid_argument("TruncSeries: mismatched nvars/cap");
}

}  // namespace

TruncSeries::TruncSeries(int nvars, int cap) : nvars_(nvars), cap_(cap) {
    if (nvars < 1 || nvars > 3)
        throw std::invalid_argument("TruncSeries: nvars must be 1..3");
    if (cap < 0)
        throw std::invalid_argument("TruncSeries: cap must be >= 0");
    std::size_t n = 1;
    for (int v = 0; v < nvars; ++v) n *= static_cast<std::size_t>(cap + 1);
    c_.assign(n, Coeff{0.0, 0.0});
}

TruncSeries TruncSeries::constant(int nvars, int cap, Coeff c) {
    TruncSeries s(nvars, cap);
    s.c_[0] = c;
    return s;
}

TruncSeries TruncSeries::variable(int nvars, int cap, int var) {
    if (var < 0 || var >= nvars)
        throw std::invalid_argument("TruncSeries::variable: var out of range");
    TruncSeries s(nvars, cap);
    if (cap >= 1) {
        Exps e{0, 0, 0};
        e[static_cast<std::size_t>(var)] = 1;
        s.c_[s.flat(e)] = Coeff{1.0, 0.0};
    }
    return s;
}

std::size_t TruncSeries::flat(const Exps& e) const {
    std::size_t idx = 0;
    const std::size_t stride = static_cast<std::size_t>(cap_ + 1);
    for (int v = nvars_ - 1; v >= 0; --v)
        idx = idx * stride + static_cast<std::size_t>(e[static_cast<std::size_t>(v)]);
    return idx;
}

TruncSeries::Coeff TruncSeries::coeff(const Exps& e) const {
    int total = 0;
    for (int v = 0; v < nvars_; ++v) {
        int d = e[static_cast<std::size_t>(v)];
        if (d < 0) throw std::invalid_argument("TruncSeries::coeff: negative exponent");
        total += d;
    }
    for (int v = nvars_; v < 3; ++v)
        if (e[static_cast<std::size_t>(v)] != 0)
            throw std::invalid_argument("TruncSeries::coeff: exponent on unused variable");
    if (total > cap_) return Coeff{0.0, 0.0};
    return c_[flat(e)];
}

void TruncSeries::set_coeff(const Exps& e, Coeff c) {
    int total = 0;
    for (int v = 0; v < nvars_; ++v) total += e[static_cast<std::size_t>(v)];
    if (total > cap_)
        throw std::invalid_argument("TruncSeries::set_coeff: total degree exceeds cap");
    c_[flat(e)] = c;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    check_shape(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
    check_shape(*this, o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

TruncSeries& TruncSeries::operator*=(Coeff s) {
    for (auto& v : c_) v *= s;
    return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    check_shape(a, b);
    TruncSeries out(a.nvars_, a.cap_);
    // Cauchy product truncated at the cap.  Dense nested sweep; the sizes in
    // play (cap <= 10, <= 3 vars) keep this far below anything that matters.
    a.for_each([&](const TruncSeries::Exps& ea, TruncSeries::Coeff ca) {
        if (ca == TruncSeries::Coeff{0.0, 0.0}) return;
        int da = ea[0] + ea[1] + ea[2];
        b.for_each([&](const TruncSeries::Exps& eb, TruncSeries::Coeff cb) {
            if (cb == TruncSeries::Coeff{0.0, 0.0}) return;
            int db = eb[0] + eb[1] + eb[2];
            if (da + db > a.cap_) return;
            TruncSeries::Exps e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
            out.c_[out.flat(e)] += ca * cb;
        });
    });
    return out;
}

TruncSeries TruncSeries::abs_coeffs() const {
    TruncSeries out(nvars_, cap_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        out.c_[i] = Coeff{std::abs(c_[i]), 0.0};
    return out;
}

double TruncSeries::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

TruncSeries ps_add(const TruncSeries& a, const TruncSeries& b) { return a + b; }
TruncSeries ps_mul(const TruncSeries& a, const TruncSeries& b) { return a * b; }
TruncSeries ps_scale(const TruncSeries& a, TruncSeries::Coeff s) { return a * s; }

TruncSeries ps_exp(const TruncSeries& a) {
    if (a.coeff({0, 0, 0}) != TruncSeries::Coeff{0.0, 0.0})
        throw std::invalid_argument("ps_exp: argument must have zero constant term");
    // sum_{k<=cap} a^k / k!; a^k has minimal degree >= k, so the loop closes.
    TruncSeries res = TruncSeries::constant(a.nvars(), a.cap(), 1.0);
    TruncSeries term = res;
    for (int k = 1; k <= a.cap(); ++k) {
        term = term * a * TruncSeries::Coeff{1.0 / k, 0.0};
        res += term;
    }
    return res;
}

TruncSeries ps_log(const TruncSeries& a) {
    if (a.coeff({0, 0, 0}) != TruncSeries::Coeff{1.0, 0.0})
        throw std::invalid_argument("ps_log: argument must have constant term 1");
    TruncSeries u = a - TruncSeries::constant(a.nvars(), a.cap(), 1.0);
    TruncSeries res(a.nvars(), a.cap());
    TruncSeries pw = TruncSeries::constant(a.nvars(), a.cap(), 1.0);
    for (int k = 1; k <= a.cap(); ++k) {
        pw = pw * u;
        double sign = (k % 2 == 1) ? 1.0 : -1.0;
        res += pw * TruncSeries::Coeff{sign / k, 0.0};
    }
    return res;
}

std::vector<TruncSeries> newton_power_sums(const TruncSeries& e1, const TruncSeries& e2,
                                           int kmax) {
    if (!e1.same_shape(e2))
        throw std::invalid_argument("newton_power_sums: mismatched shapes");
    if (kmax < 1)
        throw std::invalid_argument("newton_power_sums: kmax must be >= 1");
    std::vector<TruncSeries> p;
    p.reserve(static_cast<std::size_t>(kmax));
    p.push_back(e1);  // p_1
    if (kmax >= 2)
        p.push_back(e1 * e1 - e2 * TruncSeries::Coeff{2.0, 0.0});  // p_2
    for (int k = 3; k <= kmax; ++k)
        p.push_back(e1 * p[static_cast<std::size_t>(k - 2)] -
                    e2 * p[static_cast<std::size_t>(k - 3)]);
    return p;
}

}  // namespace qmzv
