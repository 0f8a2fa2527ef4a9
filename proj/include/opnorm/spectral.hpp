#pragma once

#include "opnorm/matrix.hpp"

#include <complex>
#include <vector>

namespace opnorm::spectral {

// Contiguous run [begin, end) of equal eigenvalues in the ascending list.
struct Cluster {
    int begin = 0;
    int end = 0;
    double rep = 0.0; // cluster mean
};

// Eigendecomposition M = Q diag(eigenvalues) Q^T with eigenvalues ascending,
// Q orthonormal columns, and eigenvalues grouped into clusters under the
// declared tolerance.
struct SpectralDecomposition {
    int n = 0;
    std::vector<double> eigenvalues;
    Matrix Q;
    std::vector<Cluster> clusters;
    double source_norm = 0.0; // max |eigenvalue|
    double cluster_tol = 0.0;

    Vec eigenvector(int k) const;
    double min_eigenvalue() const { return eigenvalues.front(); }
    double max_eigenvalue() const { return eigenvalues.back(); }
};

// Cyclic Jacobi with fixed sweep order (p < q row major), at most 100 sweeps,
// stopping when the off-diagonal Frobenius norm drops below
// 1e-14 * ||M||_F.  Deterministic for a fixed input.
// cluster_tol <= 0 selects the default 1e-8 * max(1, source_norm).
SpectralDecomposition eigendecompose(const SymMatrix& M, double cluster_tol = -1.0);

enum class SpdStatus { Spd, PsdOnly };

// Classifies the decomposition against the floor (default
// 1e-12 * max(1, source_norm)).  Eigenvalues below -floor are a hard
// violation and throw; eigenvalues in [-floor, floor) flag the matrix as
// psd-only (real powers allowed, logarithms and complex powers rejected).
SpdStatus check_spd(const SpectralDecomposition& D, double floor = -1.0);

double spd_floor(const SpectralDecomposition& D, double floor = -1.0);

// Q diag(lambda^p) Q^T with the convention 0^p = 0 for p > 0.  Eigenvalues
// within the spd floor of zero are treated as exact zeros.
SymMatrix real_power(const SpectralDecomposition& D, double p);

// A^z v = sum_k lambda_k^z <v,a_k> a_k with lambda^z = exp(z log lambda).
// Requires a strictly positive spectrum.
CVec complex_power_apply(const SpectralDecomposition& D, std::complex<double> z, const CVec& v);

struct OperatorNorm {
    double value = 0.0;
    Vec witness; // unit vector with ||M w|| ~= value
};

struct OperatorNormC {
    double value = 0.0;
    CVec witness;
};

// Largest singular value via the symmetric eigensolver on M^T M.
OperatorNorm operator_norm(const Matrix& M);
// Complex matrices go through the 2r x 2c real embedding [Re -Im; Im Re].
OperatorNormC operator_norm(const CMatrix& M);

double operator_norm_value(const Matrix& M);

// Orthogonal projector onto the span of one eigenvalue cluster.
SymMatrix spectral_projector(const SpectralDecomposition& D, int cluster_index);

// Applies the cluster projector to a vector without forming the matrix.
Vec project_cluster(const SpectralDecomposition& D, int cluster_index, const Vec& v);

// True iff min eigenvalue of A - B >= -tol.
bool psd_order(const SymMatrix& A, const SymMatrix& B, double tol);

} // namespace opnorm::spectral
