#include "sgmatch/matrix.hpp"

#include <cmath>
#include <string>

#include "sgmatch/kernels.hpp"

namespace sgmatch {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix multiply(ConstMatrixView a, ConstMatrixView b) {
    if (a.cols != b.rows)
        throw DimensionError("multiply: " + std::to_string(a.rows) + "x" + std::to_string(a.cols) +
                             " by " + std::to_string(b.rows) + "x" + std::to_string(b.cols));
    Matrix c(a.rows, b.cols);
    if (a.rows && b.cols && a.cols)
        kernels::active().gemm_acc(a.data, a.stride, b.data, b.stride, c.data(), c.cols(), a.rows,
                                   a.cols, b.cols);
    return c;
}

double frobenius_dot(ConstMatrixView a, ConstMatrixView b) {
    if (a.rows != b.rows || a.cols != b.cols) throw DimensionError("frobenius_dot: shape mismatch");
    const auto& k = kernels::active();
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows; ++i) sum += k.dot(a.row(i), b.row(i), a.cols);
    return sum;
}

double frobenius_norm(const Matrix& a) { return std::sqrt(frobenius_dot(a, a)); }

void require_finite(ConstMatrixView m, const char* what) {
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            if (!std::isfinite(m(i, j)))
                throw DomainError(std::string(what) + ": non-finite entry at (" +
                                  std::to_string(i) + ", " + std::to_string(j) + ")");
}

}  // namespace sgmatch
