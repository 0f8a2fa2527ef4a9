#include "opnorm/matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace opnorm {

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diag(const std::vector<double>& d) {
    Matrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = d[i];
    return m;
}

Matrix SymMatrix::full() const {
    Matrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
    return m;
}

SymMatrix SymMatrix::from(const Matrix& m, double max_asym) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("SymMatrix::from: matrix is not square");
    double asym = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i + 1; j < m.cols(); ++j)
            asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
    const double scale = std::max(1.0, max_abs(m));
    if (asym > max_asym * scale) {
        std::ostringstream os;
        os << "SymMatrix::from: asymmetry " << asym << " exceeds tolerance "
           << max_asym * scale;
        throw std::invalid_argument(os.str());
    }
    SymMatrix s(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        s(i, i) = m(i, i);
        for (int j = i + 1; j < m.cols(); ++j)
            s.set_sym(i, j, 0.5 * (m(i, j) + m(j, i)));
    }
    return s;
}

SymMatrix SymMatrix::diag(const std::vector<double>& d) {
    SymMatrix s(static_cast<int>(d.size()));
    for (int i = 0; i < s.n(); ++i) s(i, i) = d[i];
    return s;
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix s(n);
    for (int i = 0; i < n; ++i) s(i, i) = 1.0;
    return s;
}

namespace {

void require_mult(int acols, int brows, const char* who) {
    if (acols != brows)
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

Matrix mult(const Matrix& a, const Matrix& b) {
    require_mult(a.cols(), b.rows(), "operator*");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

} // namespace

Matrix operator*(const Matrix& a, const Matrix& b) { return mult(a, b); }
Matrix operator*(const SymMatrix& a, const Matrix& b) { return mult(a.full(), b); }
Matrix operator*(const Matrix& a, const SymMatrix& b) { return mult(a, b.full()); }
Matrix operator*(const SymMatrix& a, const SymMatrix& b) { return mult(a.full(), b.full()); }

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("operator+: dimension mismatch");
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("operator-: dimension mismatch");
    Matrix c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

Matrix operator*(double c, const Matrix& a) {
    Matrix r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = c * a(i, j);
    return r;
}

SymMatrix operator*(double c, const SymMatrix& a) {
    SymMatrix r(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) r(i, j) = c * a(i, j);
    return r;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
    if (a.n() != b.n())
        throw std::invalid_argument("operator-: dimension mismatch");
    SymMatrix r(a.n());
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) r(i, j) = a(i, j) - b(i, j);
    return r;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    require_mult(a.cols(), b.rows(), "operator*(CMatrix)");
    CMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const std::complex<double> aik = a(i, k);
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

Vec operator*(const Matrix& m, const Vec& v) {
    require_mult(m.cols(), static_cast<int>(v.size()), "operator*(vec)");
    Vec r(m.rows(), 0.0);
    for (int i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Vec operator*(const SymMatrix& m, const Vec& v) { return m.full() * v; }

CVec operator*(const Matrix& m, const CVec& v) {
    require_mult(m.cols(), static_cast<int>(v.size()), "operator*(cvec)");
    CVec r(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        std::complex<double> s = 0.0;
        for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

double norm2(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(const Vec& v, const Vec& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * w[i];
    return s;
}

Vec& scale_in_place(Vec& v, double c) {
    for (double& x : v) x *= c;
    return v;
}

double cnorm(const CVec& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

std::complex<double> bilinear(const CVec& v, const CVec& w) {
    std::complex<double> s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * w[i];
    return s;
}

CVec to_complex(const Vec& v) {
    CVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i];
    return r;
}

double frobenius(const Matrix& m) {
    double s = 0.0;
    for (double x : m.data()) s += x * x;
    return std::sqrt(s);
}

double max_abs(const Matrix& m) {
    double s = 0.0;
    for (double x : m.data()) s = std::max(s, std::abs(x));
    return s;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j) - b(i, j)));
    return s;
}


} // namespace opnorm
