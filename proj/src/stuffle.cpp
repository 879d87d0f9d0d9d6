#include "qmzv/stuffle.hpp"

#include <cmath>
#include <span>

namespace qmzv {

EpsPoly& EpsPoly::operator+=(const EpsPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0);
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
    if (a.is_zero() || b.is_zero()) return EpsPoly{};
    std::vector<long long> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] += a.c_[i] * b.c_[j];
    return EpsPoly(std::move(c));
}

EpsPoly& EpsPoly::operator*=(long long s) {
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
}

void StuffleExpr::add(const MultiIndex& key, const EpsPoly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

StuffleExpr& StuffleExpr::operator+=(const StuffleExpr& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
}

StuffleExpr StuffleExpr::scaled(const EpsPoly& s) const {
    StuffleExpr out;
    if (s.is_zero()) return out;
    for (const auto& [k, c] : terms_) out.add(k, c * s);
    return out;
}

std::string StuffleExpr::to_json() const {
    std::string s = "{\"terms\":[";
    bool first_term = true;
    for (const auto& [key, coeff] : terms_) {
        if (!first_term) s += ',';
        first_term = false;
        s += "{\"index\":[";
        const auto& parts = key.parts();
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts[i]);
        }
        s += "],\"eps\":[";
        const auto& cs = coeff.coeffs();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(cs[i]);
        }
        s += "]}";
    }
    s += "]}";
    return s;
}

namespace {

// Recursion over raw part lists; the empty word (multiplicative identity)
// appears transiently before heads are prepended, so keys here are plain
// vectors rather than MultiIndex.
using RawExpr = std::map<std::vector<int>, EpsPoly, std::greater<std::vector<int>>>;

void raw_add(RawExpr& e, std::vector<int> key, EpsPoly c) {
    if (c.is_zero()) return;
    auto [it, inserted] = e.try_emplace(std::move(key), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) e.erase(it);
    }
}

RawExpr raw_prepend(int head, const RawExpr& e, const EpsPoly& scale) {
    RawExpr out;
    for (const auto& [k, c] : e) {
        std::vector<int> nk;
        nk.reserve(k.size() + 1);
        nk.push_back(head);
        nk.insert(nk.end(), k.begin(), k.end());
        raw_add(out, std::move(nk), c * scale);
    }
    return out;
}

RawExpr raw_merge(RawExpr a, const RawExpr& b) {
    for (const auto& [k, c] : b) raw_add(a, k, c);
    return a;
}

RawExpr raw_stuffle(std::span<const int> a, std::span<const int> b) {
    RawExpr out;
    if (a.empty() || b.empty()) {
        std::vector<int> key(a.empty() ? b.begin() : a.begin(), a.empty() ? b.end() : a.end());
        raw_add(out, std::move(key), EpsPoly::constant(1));
        return out;
    }
    const int a1 = a.front(), b1 = b.front();
    const auto at = a.subspan(1);
    const auto bt = b.subspan(1);
    out = raw_merge(raw_prepend(a1, raw_stuffle(at, b), EpsPoly::constant(1)),
                    raw_prepend(b1, raw_stuffle(a, bt), EpsPoly::constant(1)));
    const RawExpr diag = raw_stuffle(at, bt);
    out = raw_merge(std::move(out), raw_prepend(a1 + b1, diag, EpsPoly::constant(1)));
    out = raw_merge(std::move(out), raw_prepend(a1 + b1 - 1, diag, EpsPoly::eps()));
    return out;
}

}  // namespace

StuffleExpr qstuffle(const MultiIndex& a, const MultiIndex& b) {
    RawExpr raw = raw_stuffle(std::span<const int>(a.parts()), std::span<const int>(b.parts()));
    StuffleExpr out;
    for (const auto& [k, c] : raw)
        out.add(MultiIndex(k), c);
    return out;
}

EulerReduction reduce_zeta_m1(int m) {
    if (m < 2) throw std::invalid_argument("reduce_zeta_m1: m must be >= 2");
    EulerReduction red;
    red.m = m;
    red.lhs.add(MultiIndex({m, 1}), EpsPoly::constant(2));

    // Expand P = sum_{k=1}^{m-2} zeta[m-k] * zeta[k+1] through the stuffle.
    StuffleExpr P;
    for (int k = 1; k <= m - 2; ++k) {
        red.product_pairs.emplace_back(MultiIndex({m - k}), MultiIndex({k + 1}));
        P += qstuffle(MultiIndex({m - k}), MultiIndex({k + 1}));
    }

    // P must consist of (m-2)(zeta[m+1] + eps zeta[m]) plus twice each
    // depth-2 index (s,t), s,t >= 2, s+t = m+1; anything else means the
    // merge rule is broken.
    StuffleExpr depth2;
    for (const auto& [key, coeff] : P.terms()) {
        if (key.depth() == 1) {
            const int v = key.parts()[0];
            const bool ok = (v == m + 1 && coeff == EpsPoly::constant(m - 2)) ||
                            (v == m && coeff == EpsPoly({0, m - 2}));
            if (!ok) throw std::logic_error("reduce_zeta_m1: unexpected depth-1 term");
        } else if (key.depth() == 2) {
            const int s = key.parts()[0], t = key.parts()[1];
            if (s < 2 || t < 2 || s + t != m + 1 || coeff != EpsPoly::constant(2))
                throw std::logic_error("reduce_zeta_m1: unexpected depth-2 term");
            depth2.add(key, coeff);
        } else {
            throw std::logic_error("reduce_zeta_m1: term of depth > 2");
        }
    }
    // Sum formula at weight m+1, depth 2 collapses the depth-2 block:
    //   sum_{s>=2, t>=1, s+t=m+1} zeta[s,t] = zeta[m+1]
    // so  2 sum_{s,t>=2} zeta[s,t] = 2 zeta[m+1] - 2 zeta[m,1], giving
    //   2 zeta[m,1] = m zeta[m+1] + eps (m-2) zeta[m] - P.
    red.single_side.add(MultiIndex({m + 1}), EpsPoly::constant(m));
    red.single_side.add(MultiIndex({m}), EpsPoly({0, m - 2}));
    return red;
}

CertifiedValue eval_expr(const StuffleExpr& e, const QParam& qp, EvalCache* cache) {
    const double eps = 1.0 - qp.q;
    CertifiedValue out;
    for (const auto& [key, coeff] : e.terms()) {
        if (!key.admissible())
            throw NonAdmissibleKey("eval_expr: non-admissible key " + key.to_string());
        const double c = coeff.eval(eps);
        const CertifiedValue zv = eval_qmzv(key, qp, cache);
        out.value += c * zv.value;
        out.tail_bound += std::abs(c) * zv.tail_bound;
        out.terms_used += zv.terms_used;
    }
    return out;
}

}  // namespace qmzv
