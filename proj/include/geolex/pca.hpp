#pragma once

#include "geolex/vocabulary.hpp"

#include <cstddef>
#include <vector>

namespace geolex {

// Minimal dense row-major matrix; sized for a few hundred rows at most.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Eigendecomposition of a symmetric matrix via cyclic Jacobi rotations.
// Eigenvalues sorted descending; eigenvectors are the matching columns.
struct SymEigen {
    std::vector<double> values;
    Matrix vectors;
};

SymEigen sym_eigen(const Matrix& a);

struct PcaResult {
    Matrix coords;                   // rows x components
    std::vector<double> eigenvalues; // top `components` of the covariance
    bool degenerate = false;         // rank < components; trailing columns ~ 0
};

// Centers columns, eigendecomposes the sample covariance (n-1 denominator)
// and projects onto the leading eigenvectors. Sign convention: the entry of
// largest magnitude in each eigenvector is made positive.
PcaResult pca_project(const Matrix& rows, int components = 2);

Matrix to_matrix(const SimilarityMatrix& m);

} // namespace geolex
