#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "sgmatch/error.hpp"

namespace sgmatch {

/// Non-owning read-only view of a row-major block with an arbitrary row stride.
struct ConstMatrixView {
    const double* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t stride = 0;

    const double& operator()(std::size_t i, std::size_t j) const { return data[i * stride + j]; }
    const double* row(std::size_t i) const { return data + i * stride; }

    ConstMatrixView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        return {data + r0 * stride + c0, nr, nc, stride};
    }
};

struct MatrixView {
    double* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t stride = 0;

    double& operator()(std::size_t i, std::size_t j) const { return data[i * stride + j]; }
    double* row(std::size_t i) const { return data + i * stride; }
    operator ConstMatrixView() const { return {data, rows, cols, stride}; }
};

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const double& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }
    std::span<double> values() noexcept { return data_; }
    std::span<const double> values() const noexcept { return data_; }

    MatrixView view() { return {data_.data(), rows_, cols_, cols_}; }
    ConstMatrixView view() const { return {data_.data(), rows_, cols_, cols_}; }
    ConstMatrixView block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        return view().block(r0, c0, nr, nc);
    }

    Matrix transposed() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// C = A * B using the active kernel backend.
Matrix multiply(ConstMatrixView a, ConstMatrixView b);

/// Frobenius inner product <A, B> = trace(A^T B), canonical summation order.
double frobenius_dot(ConstMatrixView a, ConstMatrixView b);

inline double frobenius_dot(const Matrix& a, const Matrix& b) { return frobenius_dot(a.view(), b.view()); }

double frobenius_norm(const Matrix& a);

/// Throws DomainError if any entry is NaN or infinite.
void require_finite(ConstMatrixView m, const char* what);

}  // namespace sgmatch
