#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

// q-integer arithmetic and the precision contract shared by every evaluator.
//
// Throughout the library q is a real deformation parameter with 0 < q < 1 and
//
//     [k]_q = 1 + q + ... + q^{k-1} = (1 - q^k) / (1 - q),
//
// which tends to k as q -> 1.  All series evaluators report a CertifiedValue:
// the computed value together with a rigorous bound on the omitted tail and
// the number of terms consumed (from which a rounding slack is derived).

namespace qmzv {

// Evaluation parameters: q itself plus the accuracy contract.
struct QParam {
    double q;                       // deformation parameter, 0 < q < 1
    double tol = 1e-9;              // requested absolute accuracy
    long max_terms = 1'000'000;     // truncation budget per series level

    QParam(double q_, double tol_ = 1e-9, long max_terms_ = 1'000'000)
        : q(q_), tol(tol_), max_terms(max_terms_) {
        if (!(q > 0.0) || !(q < 1.0))
            throw std::invalid_argument("QParam: q must lie strictly inside (0,1)");
        if (!(tol > 0.0))
            throw std::invalid_argument("QParam: tol must be positive");
        if (max_terms < 1)
            throw std::invalid_argument("QParam: max_terms must be >= 1");
    }
};

// A numeric result carrying a certified bound on the truncated tail.
// Rounding error is budgeted separately: terms_used * 8 eps * |value|.
struct CertifiedValue {
    std::complex<double> value{0.0, 0.0};
    double tail_bound = 0.0;        // certified bound on the omitted tail
    long terms_used = 0;

    double real() const { return value.real(); }

    double rounding_slack() const {
        return static_cast<double>(terms_used) * 8.0 *
               std::numeric_limits<double>::epsilon() * std::abs(value);
    }

    // Total certified error budget for this value.
    double budget() const { return tail_bound + rounding_slack(); }
};

class EvalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// The series has non-vanishing terms (leading exponent 1).
class DivergentSeries : public EvalError {
  public:
    using EvalError::EvalError;
};

// A denominator [m]_q - z q^m came within delta_pole of zero.
class PoleProximity : public EvalError {
  public:
    using EvalError::EvalError;
};

// max_terms exhausted before the tail bound met tol; carries the partial sum.
class BudgetExceeded : public EvalError {
  public:
    BudgetExceeded(const std::string& msg, CertifiedValue partial_)
        : EvalError(msg), partial(partial_) {}
    CertifiedValue partial;
};

// A stuffle expression with a non-admissible key reached numeric evaluation.
class NonAdmissibleKey : public EvalError {
  public:
    using EvalError::EvalError;
};

// [k]_q for k != 0.  Horner summation for small positive k, the closed form
// (1 - q^k)/(1 - q) for negative or large k (controls cancellation as q -> 1).
double q_int(int k, const QParam& qp);

// |[k]_q - k| for each q in the sequence; supports probing the q -> 1 limit.
// The q values must be strictly increasing inside (0,1).
std::vector<double> q_int_limit_check(int k, const std::vector<QParam>& q_seq);

}  // namespace qmzv
