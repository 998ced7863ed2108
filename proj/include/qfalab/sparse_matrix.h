// Copyright 2026 The qfalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QFALAB_SPARSE_MATRIX_H
#define QFALAB_SPARSE_MATRIX_H

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfalab {

using Amplitude = std::complex<double>;

template <typename T>
struct MatrixEntry {
    std::size_t row;
    std::size_t col;
    T value;
};

template <typename T>
inline T conjugate(const T &v) {
    return v;
}
template <>
inline Amplitude conjugate(const Amplitude &v) {
    return std::conj(v);
}

/// Square matrix in compressed sparse row form. Exact zeros are never stored,
/// so the constructions' permutation matrices stay linear in the state count.
template <typename T>
class SparseMatrix {
   public:
    struct Cell {
        std::size_t col;
        T value;
    };

    SparseMatrix() : row_start_(1, 0) {
    }

    /// Duplicate (row, col) pairs are summed.
    static SparseMatrix from_entries(std::size_t dim, std::vector<MatrixEntry<T>> entries) {
        for (const auto &e : entries) {
            if (e.row >= dim || e.col >= dim) {
                throw std::out_of_range(
                    "matrix entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) + ") outside dimension " +
                    std::to_string(dim));
            }
        }
        std::sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        SparseMatrix m;
        m.dim_ = dim;
        m.row_start_.assign(dim + 1, 0);
        for (std::size_t k = 0; k < entries.size();) {
            std::size_t j = k;
            T sum{};
            while (j < entries.size() && entries[j].row == entries[k].row && entries[j].col == entries[k].col) {
                sum += entries[j].value;
                j++;
            }
            if (sum != T{}) {
                m.cells_.push_back({entries[k].col, sum});
                m.row_start_[entries[k].row + 1]++;
            }
            k = j;
        }
        for (std::size_t r = 0; r < dim; r++) {
            m.row_start_[r + 1] += m.row_start_[r];
        }
        return m;
    }

    /// `values` is row-major with dim*dim entries.
    static SparseMatrix from_dense(std::size_t dim, std::span<const T> values) {
        if (values.size() != dim * dim) {
            throw std::invalid_argument(
                "dense matrix has " + std::to_string(values.size()) + " entries, expected " +
                std::to_string(dim * dim));
        }
        SparseMatrix m;
        m.dim_ = dim;
        m.row_start_.assign(dim + 1, 0);
        for (std::size_t r = 0; r < dim; r++) {
            for (std::size_t c = 0; c < dim; c++) {
                const T &v = values[r * dim + c];
                if (v != T{}) {
                    m.cells_.push_back({c, v});
                }
            }
            m.row_start_[r + 1] = m.cells_.size();
        }
        return m;
    }

    static SparseMatrix identity(std::size_t dim) {
        std::vector<MatrixEntry<T>> entries;
        for (std::size_t k = 0; k < dim; k++) {
            entries.push_back({k, k, T{1}});
        }
        return from_entries(dim, std::move(entries));
    }

    std::size_t dim() const {
        return dim_;
    }
    std::size_t nonzeros() const {
        return cells_.size();
    }

    std::span<const Cell> row(std::size_t r) const {
        return std::span<const Cell>(cells_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]);
    }

    T at(std::size_t r, std::size_t c) const {
        for (const auto &cell : row(r)) {
            if (cell.col == c) {
                return cell.value;
            }
        }
        return T{};
    }

    std::vector<T> to_dense() const {
        std::vector<T> out(dim_ * dim_, T{});
        for (std::size_t r = 0; r < dim_; r++) {
            for (const auto &cell : row(r)) {
                out[r * dim_ + cell.col] = cell.value;
            }
        }
        return out;
    }

    /// y = A x
    std::vector<T> multiply(std::span<const T> x) const {
        std::vector<T> y(dim_, T{});
        for (std::size_t r = 0; r < dim_; r++) {
            T acc{};
            for (const auto &cell : row(r)) {
                acc += cell.value * x[cell.col];
            }
            y[r] = acc;
        }
        return y;
    }

    /// y = A^† x (conjugate transpose; plain transpose for real T).
    std::vector<T> multiply_adjoint(std::span<const T> x) const {
        std::vector<T> y(dim_, T{});
        for (std::size_t r = 0; r < dim_; r++) {
            if (x[r] == T{}) {
                continue;
            }
            for (const auto &cell : row(r)) {
                y[cell.col] += conjugate(cell.value) * x[r];
            }
        }
        return y;
    }

    /// Row vector times matrix, y = x A. Used for stochastic propagation.
    std::vector<T> left_multiply(std::span<const T> x) const {
        std::vector<T> y(dim_, T{});
        for (std::size_t r = 0; r < dim_; r++) {
            if (x[r] == T{}) {
                continue;
            }
            for (const auto &cell : row(r)) {
                y[cell.col] += x[r] * cell.value;
            }
        }
        return y;
    }

    /// Sparse product A^† A.
    SparseMatrix gram() const {
        std::vector<MatrixEntry<T>> entries;
        for (std::size_t r = 0; r < dim_; r++) {
            auto cells = row(r);
            for (const auto &a : cells) {
                for (const auto &b : cells) {
                    entries.push_back({a.col, b.col, conjugate(a.value) * b.value});
                }
            }
        }
        return from_entries(dim_, std::move(entries));
    }

    friend bool operator==(const SparseMatrix &a, const SparseMatrix &b) {
        if (a.dim_ != b.dim_ || a.row_start_ != b.row_start_) {
            return false;
        }
        for (std::size_t k = 0; k < a.cells_.size(); k++) {
            if (a.cells_[k].col != b.cells_[k].col || a.cells_[k].value != b.cells_[k].value) {
                return false;
            }
        }
        return true;
    }

   private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> row_start_;
    std::vector<Cell> cells_;
};

}  // namespace qfalab

#endif
