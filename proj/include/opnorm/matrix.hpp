#pragma once

#include <complex>
#include <span>
#include <vector>

namespace opnorm {

// Dense row-major real matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    std::span<const double> data() const { return a_; }
    std::span<double> data() { return a_; }

    static Matrix identity(int n);
    static Matrix diag(const std::vector<double>& d);

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

// Symmetric n x n matrix; (i,j) and (j,i) are the same stored value.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    int n() const { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    Matrix full() const;
    void set_sym(int i, int j, double v) {
        a_[static_cast<std::size_t>(i) * n_ + j] = v;
        a_[static_cast<std::size_t>(j) * n_ + i] = v;
    }

    // Symmetrizes m; throws if max |m - m^T| exceeds max_asym.
    static SymMatrix from(const Matrix& m, double max_asym);
    static SymMatrix diag(const std::vector<double>& d);
    static SymMatrix identity(int n);

private:
    int n_ = 0;
    std::vector<double> a_;
};

using Vec = std::vector<double>;
using CVec = std::vector<std::complex<double>>;

// Dense row-major complex matrix (operator_norm support).
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::complex<double>& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    std::complex<double> operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::complex<double>> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const SymMatrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const SymMatrix& b);
Matrix operator*(const SymMatrix& a, const SymMatrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double c, const Matrix& a);
SymMatrix operator*(double c, const SymMatrix& a);
SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);

Matrix transpose(const Matrix& m);
Vec operator*(const Matrix& m, const Vec& v);
Vec operator*(const SymMatrix& m, const Vec& v);
CVec operator*(const Matrix& m, const CVec& v);

double norm2(const Vec& v);
double dot(const Vec& v, const Vec& w);
Vec& scale_in_place(Vec& v, double c);

// Hermitian Euclidean norm of a complex vector.
double cnorm(const CVec& v);
// Unconjugated pairing <v,w> = sum v_i w_i.
std::complex<double> bilinear(const CVec& v, const CVec& w);
CVec to_complex(const Vec& v);

double frobenius(const Matrix& m);
double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);


} // namespace opnorm
