#include "geolex/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace geolex {

SymEigen sym_eigen(const Matrix& a)
{
    if (a.rows != a.cols)
        throw std::invalid_argument("sym_eigen requires a square matrix");
    const std::size_t n = a.rows;

    Matrix m = a;
    Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i)
        v.at(i, i) = 1.0;

    double scale = 0.0;
    for (double x : m.data)
        scale = std::max(scale, std::abs(x));
    const double tol = scale > 0.0 ? scale * 1e-15 : 0.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                off += std::abs(m.at(p, q));
        if (off <= tol)
            break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m.at(p, q);
                if (std::abs(apq) <= tol / static_cast<double>(n * n))
                    continue;
                const double app = m.at(p, p);
                const double aqq = m.at(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0)
                                 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m.at(k, p);
                    const double mkq = m.at(k, q);
                    m.at(k, p) = c * mkp - s * mkq;
                    m.at(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m.at(p, k);
                    const double mqk = m.at(q, k);
                    m.at(p, k) = c * mpk - s * mqk;
                    m.at(q, k) = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p);
                    const double vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return m.at(i, i) > m.at(j, j);
    });

    SymEigen out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = m.at(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i)
            out.vectors.at(i, j) = v.at(i, order[j]);
    }
    return out;
}

PcaResult pca_project(const Matrix& rows, int components)
{
    if (components < 1)
        throw std::invalid_argument("pca_project needs components >= 1");
    const std::size_t n = rows.rows;
    const std::size_t d = rows.cols;
    const auto k = static_cast<std::size_t>(components);
    if (n < k)
        throw std::invalid_argument("pca_project needs at least as many rows as components");
    if (d < k)
        throw std::invalid_argument("pca_project needs at least as many columns as components");

    Matrix centered = rows;
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            mean += centered.at(i, j);
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            centered.at(i, j) -= mean;
    }

    Matrix cov(d, d);
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                sum += centered.at(i, a) * centered.at(i, b);
            cov.at(a, b) = sum / denom;
            cov.at(b, a) = cov.at(a, b);
        }
    }

    SymEigen eig = sym_eigen(cov);

    PcaResult result;
    result.eigenvalues.assign(eig.values.begin(), eig.values.begin() + static_cast<long>(k));

    // Fixed sign: largest-magnitude entry of each component positive,
    // lowest index winning ties.
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t arg = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double mag = std::abs(eig.vectors.at(i, j));
            if (mag > best) {
                best = mag;
                arg = i;
            }
        }
        if (eig.vectors.at(arg, j) < 0.0)
            for (std::size_t i = 0; i < d; ++i)
                eig.vectors.at(i, j) = -eig.vectors.at(i, j);
    }

    result.coords = Matrix(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double sum = 0.0;
            for (std::size_t f = 0; f < d; ++f)
                sum += centered.at(i, f) * eig.vectors.at(f, j);
            result.coords.at(i, j) = sum;
        }

    const double top = std::max(eig.values.empty() ? 0.0 : eig.values.front(), 0.0);
    result.degenerate = result.eigenvalues.back() <= top * 1e-12;
    return result;
}

Matrix to_matrix(const SimilarityMatrix& m)
{
    const std::size_t n = m.labels.size();
    Matrix out(n, n);
    out.data = m.values;
    return out;
}

} // namespace geolex
