#include "opnorm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace opnorm::spectral {

namespace {

double off_diagonal_frobenius(const Matrix& w) {
    double s = 0.0;
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j)
            if (i != j) s += w(i, j) * w(i, j);
    return std::sqrt(s);
}

// One Jacobi rotation annihilating w(p,q); accumulates into v.
void rotate(Matrix& w, Matrix& v, int p, int q) {
    const double apq = w(p, q);
    if (apq == 0.0) return;
    const double theta = 0.5 * (w(q, q) - w(p, p)) / apq;
    const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                     (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const double tau = s / (1.0 + c);
    const double h = t * apq;
    const int n = w.rows();

    w(p, p) -= h;
    w(q, q) += h;
    w(p, q) = 0.0;
    w(q, p) = 0.0;
    for (int r = 0; r < n; ++r) {
        if (r != p && r != q) {
            const double wrp = w(r, p);
            const double wrq = w(r, q);
            w(r, p) = wrp - s * (wrq + wrp * tau);
            w(r, q) = wrq + s * (wrp - wrq * tau);
            w(p, r) = w(r, p);
            w(q, r) = w(r, q);
        }
        const double vrp = v(r, p);
        const double vrq = v(r, q);
        v(r, p) = vrp - s * (vrq + vrp * tau);
        v(r, q) = vrq + s * (vrp - vrq * tau);
    }
}

// Deterministic sign convention: the largest-magnitude entry of each
// eigenvector is positive.
void canonicalize_columns(Matrix& q) {
    for (int j = 0; j < q.cols(); ++j) {
        int arg = 0;
        double best = 0.0;
        for (int i = 0; i < q.rows(); ++i) {
            const double m = std::abs(q(i, j));
            if (m > best + 1e-300 && m > best * (1.0 + 1e-12)) {
                best = m;
                arg = i;
            }
        }
        if (q(arg, j) < 0.0)
            for (int i = 0; i < q.rows(); ++i) q(i, j) = -q(i, j);
    }
}

} // namespace

Vec SpectralDecomposition::eigenvector(int k) const {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = Q(i, k);
    return v;
}

SpectralDecomposition eigendecompose(const SymMatrix& M, double cluster_tol) {
    const int n = M.n();
    if (n < 1) throw std::invalid_argument("eigendecompose: empty matrix");

    Matrix w = M.full();
    Matrix v = Matrix::identity(n);
    const double scale = frobenius(w);
    const double threshold = 1e-14 * scale;

    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    double off = off_diagonal_frobenius(w);
    while (off > threshold && sweep < kMaxSweeps) {
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) rotate(w, v, p, q);
        off = off_diagonal_frobenius(w);
        ++sweep;
    }
    if (off > threshold) {
        std::ostringstream os;
        os << "eigendecompose: no convergence after " << kMaxSweeps
           << " sweeps, off-diagonal residual " << off << " (threshold "
           << threshold << ")";
        throw std::runtime_error(os.str());
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return w(i, i) < w(j, j); });

    SpectralDecomposition d;
    d.n = n;
    d.eigenvalues.resize(n);
    d.Q = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        d.eigenvalues[k] = w(order[k], order[k]);
        for (int i = 0; i < n; ++i) d.Q(i, k) = v(i, order[k]);
    }
    canonicalize_columns(d.Q);

    d.source_norm = std::max(std::abs(d.eigenvalues.front()), std::abs(d.eigenvalues.back()));
    d.cluster_tol = cluster_tol > 0.0 ? cluster_tol : 1e-8 * std::max(1.0, d.source_norm);

    int begin = 0;
    for (int k = 1; k <= n; ++k) {
        if (k == n || d.eigenvalues[k] - d.eigenvalues[k - 1] > d.cluster_tol) {
            Cluster c;
            c.begin = begin;
            c.end = k;
            double sum = 0.0;
            for (int i = begin; i < k; ++i) sum += d.eigenvalues[i];
            c.rep = sum / (k - begin);
            d.clusters.push_back(c);
            begin = k;
        }
    }
    return d;
}

double spd_floor(const SpectralDecomposition& D, double floor) {
    return floor >= 0.0 ? floor : 1e-12 * std::max(1.0, D.source_norm);
}

SpdStatus check_spd(const SpectralDecomposition& D, double floor) {
    const double f = spd_floor(D, floor);
    if (D.min_eigenvalue() < -f) {
        std::ostringstream os;
        os << "matrix is not positive semidefinite; offending eigenvalues:";
        for (double lam : D.eigenvalues)
            if (lam < -f) os << " " << lam;
        throw std::domain_error(os.str());
    }
    return D.min_eigenvalue() >= f ? SpdStatus::Spd : SpdStatus::PsdOnly;
}

SymMatrix real_power(const SpectralDecomposition& D, double p) {
    check_spd(D);
    const double f = spd_floor(D);
    std::vector<double> powered(D.n);
    for (int k = 0; k < D.n; ++k) {
        const double lam = D.eigenvalues[k];
        if (std::abs(lam) < f) {
            if (p <= 0.0)
                throw std::domain_error("real_power: zero eigenvalue requires p > 0");
            powered[k] = 0.0;
        } else {
            powered[k] = std::pow(lam, p);
        }
    }
    SymMatrix r(D.n);
    for (int i = 0; i < D.n; ++i)
        for (int j = i; j < D.n; ++j) {
            double s = 0.0;
            for (int k = 0; k < D.n; ++k) s += powered[k] * D.Q(i, k) * D.Q(j, k);
            r.set_sym(i, j, s);
        }
    return r;
}

CVec complex_power_apply(const SpectralDecomposition& D, std::complex<double> z, const CVec& v) {
    if (check_spd(D) != SpdStatus::Spd)
        throw std::domain_error("complex_power_apply: spectrum must be strictly positive (log of 0)");
    if (static_cast<int>(v.size()) != D.n)
        throw std::invalid_argument("complex_power_apply: dimension mismatch");

    CVec result(D.n, 0.0);
    for (int k = 0; k < D.n; ++k) {
        std::complex<double> coeff = 0.0;
        for (int i = 0; i < D.n; ++i) coeff += v[i] * D.Q(i, k);
        coeff *= std::exp(z * std::log(D.eigenvalues[k]));
        for (int i = 0; i < D.n; ++i) result[i] += coeff * D.Q(i, k);
    }
    return result;
}

OperatorNorm operator_norm(const Matrix& M) {
    for (double x : M.data())
        if (!std::isfinite(x))
            throw std::invalid_argument("operator_norm: non-finite entry");

    const Matrix g = transpose(M) * M;
    SymMatrix gram(M.cols());
    for (int i = 0; i < M.cols(); ++i)
        for (int j = i; j < M.cols(); ++j)
            gram.set_sym(i, j, 0.5 * (g(i, j) + g(j, i)));

    const SpectralDecomposition d = eigendecompose(gram);
    const double top = d.max_eigenvalue();

    // Witness: first column of the top tie block; stable sort keeps the
    // original index order inside ties, so the identity returns e1.
    int k0 = d.n - 1;
    const double tie = std::max(0.0, top) * 1e-12;
    while (k0 > 0 && top - d.eigenvalues[k0 - 1] <= tie) --k0;

    OperatorNorm r;
    r.value = std::sqrt(std::max(top, 0.0));
    r.witness = d.eigenvector(k0);
    return r;
}

double operator_norm_value(const Matrix& M) { return operator_norm(M).value; }

OperatorNormC operator_norm(const CMatrix& M) {
    Matrix r(2 * M.rows(), 2 * M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) {
            const std::complex<double> z = M(i, j);
            r(i, j) = z.real();
            r(i, j + M.cols()) = -z.imag();
            r(i + M.rows(), j) = z.imag();
            r(i + M.rows(), j + M.cols()) = z.real();
        }
    const OperatorNorm base = operator_norm(r);
    OperatorNormC out;
    out.value = base.value;
    out.witness.resize(M.cols());
    for (int j = 0; j < M.cols(); ++j)
        out.witness[j] = {base.witness[j], base.witness[j + M.cols()]};
    return out;
}

SymMatrix spectral_projector(const SpectralDecomposition& D, int cluster_index) {
    if (cluster_index < 0 || cluster_index >= static_cast<int>(D.clusters.size()))
        throw std::out_of_range("spectral_projector: cluster index out of range");
    const Cluster& c = D.clusters[cluster_index];
    SymMatrix p(D.n);
    for (int i = 0; i < D.n; ++i)
        for (int j = i; j < D.n; ++j) {
            double s = 0.0;
            for (int k = c.begin; k < c.end; ++k) s += D.Q(i, k) * D.Q(j, k);
            p.set_sym(i, j, s);
        }
    return p;
}

Vec project_cluster(const SpectralDecomposition& D, int cluster_index, const Vec& v) {
    if (cluster_index < 0 || cluster_index >= static_cast<int>(D.clusters.size()))
        throw std::out_of_range("project_cluster: cluster index out of range");
    const Cluster& c = D.clusters[cluster_index];
    Vec r(D.n, 0.0);
    for (int k = c.begin; k < c.end; ++k) {
        double coeff = 0.0;
        for (int i = 0; i < D.n; ++i) coeff += v[i] * D.Q(i, k);
        for (int i = 0; i < D.n; ++i) r[i] += coeff * D.Q(i, k);
    }
    return r;
}

bool psd_order(const SymMatrix& A, const SymMatrix& B, double tol) {
    if (A.n() != B.n())
        throw std::invalid_argument("psd_order: dimension mismatch");
    const SpectralDecomposition d = eigendecompose(A - B);
    return d.min_eigenvalue() >= -tol;
}

} // namespace opnorm::spectral
