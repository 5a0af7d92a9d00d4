#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace oneshot {

/// Dense row-major real matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t d);
    static Matrix diagonal(const std::vector<double>& diag);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] const std::vector<double>& data() const noexcept { return data_; }
    [[nodiscard]] Matrix transpose() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend std::vector<double> operator*(const Matrix& a, const std::vector<double>& x);
    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct SymEigen {
    std::vector<double> values;  // descending
    Matrix vectors;              // orthogonal; column i pairs with values[i]
};

double frobenius(const Matrix& m);
double vector_norm(const std::vector<double>& v);

/// Symmetric within 1e-12 relative to the largest entry.
bool is_symmetric(const Matrix& m);

/// Cyclic Jacobi. Throws UnsupportedError for a non-symmetric input.
SymEigen sym_eigen(const Matrix& m);

/// Principal square root of a symmetric positive-definite matrix.
Matrix sym_sqrt(const Matrix& m);

/// Gauss-Jordan with partial pivoting. Throws ParameterError when the matrix
/// is singular or its estimated condition number exceeds 1e12.
Matrix inverse(const Matrix& m);

double determinant(const Matrix& m);

}  // namespace oneshot
