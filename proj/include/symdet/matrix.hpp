#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace symdet {

/// Dense row-major matrix with no structural constraints.
template <typename T>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::size_t n() const {
        if (rows_ != cols_) throw std::logic_error("matrix is not square");
        return rows_;
    }

    T& at(std::size_t i, std::size_t j) {
        check_(i, j);
        return data_[i * cols_ + j];
    }
    const T& at(std::size_t i, std::size_t j) const {
        check_(i, j);
        return data_[i * cols_ + j];
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    void check_(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index out of range");
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

}  // namespace symdet
