#include "qmzv/qarith.hpp"

#include <cmath>
#include <cstdlib>

namespace qmzv {

double q_int(int k, const QParam& qp) {
    if (k == 0)
        throw std::invalid_argument("q_int: k = 0 is rejected ([0]_q = 0)");
    const double q = qp.q;
    if (k < 0 || k > 64)
        return (1.0 - std::pow(q, static_cast<double>(k))) / (1.0 - q);
    // Horner: 1 + q(1 + q(1 + ...)), k terms.
    double s = 1.0;
    for (int j = 1; j < k; ++j)
        s = 1.0 + q * s;
    return s;
}

std::vector<double> q_int_limit_check(int k, const std::vector<QParam>& q_seq) {
    if (k < 1)
        throw std::invalid_argument("q_int_limit_check: k must be positive");
    double prev_q = 0.0;
    std::vector<double> dev;
    dev.reserve(q_seq.size());
    for (const QParam& qp : q_seq) {
        if (qp.q <= prev_q)
            throw std::invalid_argument("q_int_limit_check: q values must be strictly increasing");
        prev_q = qp.q;
        dev.push_back(std::abs(q_int(k, qp) - static_cast<double>(k)));
    }
    return dev;
}

}  // namespace qmzv
