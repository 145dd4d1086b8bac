#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace sorption {

// Dense row-major square matrix, sized for the N<=4 parameter problems here.
struct Matrix {
    std::size_t n = 0;
    std::vector<double> a;  // n*n, row-major

    Matrix() = default;
    explicit Matrix(std::size_t size) : n(size), a(size * size, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// LU solve with partial pivoting; returns false when the matrix is numerically singular.
bool solve(Matrix A, std::vector<double> b, std::vector<double>& x);

// Inverse via n solves; returns false on singularity.
bool invert(const Matrix& A, Matrix& inv);

double norm1(const Matrix& A);

// 1-norm condition estimate; +inf when the inverse does not exist.
double condition1(const Matrix& A);

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(Matrix A, int sweeps = 64);

}  // namespace sorption
