#pragma once

#include "opnorm/matrix.hpp"
#include "opnorm/spectral.hpp"

#include <string>

namespace opnorm::ineq {

// ||A^r X B^{1-r}|| <= ||AX||^r ||XB||^{1-r} data.
struct McIntoshInstance {
    SymMatrix A;
    Matrix X;
    SymMatrix B;
    double r = 0.5;
    bool normalized = false;
};

// ||A^s B^s|| <= ||AB||^s data.
struct CordesInstance {
    SymMatrix A;
    SymMatrix B;
    double s = 0.5;
    bool normalized = false;
};

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0; // lhs/rhs, NaN when rhs == 0
    double slack = 0.0; // rhs - lhs
    Vec witness;        // unit vector achieving the lhs norm
    bool trivial = false;
    bool hypotheses_unmet = false;
};

// Rescales A by 1/||AX|| and B by 1/||XB||; the lhs/rhs ratio is invariant.
McIntoshInstance normalize(const McIntoshInstance& inst);
// Rescales A and B each by 1/sqrt(||AB||).
CordesInstance normalize(const CordesInstance& inst);

InequalityReport evaluate_mcintosh(const McIntoshInstance& inst);
InequalityReport evaluate_cordes(const CordesInstance& inst);
// ||AXB|| <= ||A^2 X||^{1/2} ||X B^2||^{1/2}: McIntosh on (A^2, X, B^2, 1/2).
InequalityReport evaluate_fujii_furuta(const SymMatrix& A, const Matrix& X, const SymMatrix& B);

// |<Tx,y>| <= ||A^a x|| ||B^{1-a} y||, hypotheses T^T T <= A^2 and
// T T^T <= B^2 checked exactly (random probes as a pre-filter).
InequalityReport evaluate_heinz_kato(const Matrix& T, const SymMatrix& A, const SymMatrix& B,
                                     double alpha, const Vec& x, const Vec& y);

struct OrderReport {
    bool hypothesis_ok = false; // A >= B >= 0
    bool holds = false;         // A^a >= B^a within tolerance
    double min_eigenvalue_diff = 0.0;
};

OrderReport evaluate_loewner_heinz(const SymMatrix& A, const SymMatrix& B, double alpha);

} // namespace opnorm::ineq
