#pragma once

// Sparse integer matrices and Smith normal form over Z.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dvrhom/error.hpp"

namespace dvrhom {

/// Sparse matrix of arbitrary-precision integers. Zero entries are never
/// stored.
class IntegerMatrix {
public:
    using Key = std::pair<std::size_t, std::size_t>;

    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

    static IntegerMatrix identity(std::size_t n) {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
        return m;
    }

    static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        IntegerMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw InputError("ragged matrix rows");
            for (std::size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    void set(std::size_t i, std::size_t j, const mpz_class& value) {
        check(i, j);
        if (value == 0) {
            entries_.erase({i, j});
        } else {
            entries_[{i, j}] = value;
        }
    }

    mpz_class get(std::size_t i, std::size_t j) const {
        check(i, j);
        auto it = entries_.find({i, j});
        return it == entries_.end() ? mpz_class(0) : it->second;
    }

    const std::map<Key, mpz_class>& entries() const noexcept { return entries_; }
    bool is_zero() const noexcept { return entries_.empty(); }

    std::vector<std::vector<mpz_class>> to_dense() const {
        std::vector<std::vector<mpz_class>> d(rows_, std::vector<mpz_class>(cols_, 0));
        for (const auto& [key, value] : entries_) d[key.first][key.second] = value;
        return d;
    }

    static IntegerMatrix from_dense(const std::vector<std::vector<mpz_class>>& d, std::size_t cols) {
        IntegerMatrix m(d.size(), cols);
        for (std::size_t i = 0; i < d.size(); ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                if (d[i][j] != 0) m.entries_.emplace(Key{i, j}, d[i][j]);
            }
        }
        return m;
    }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw InputError("matrix shape mismatch: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) +
                             " times " + std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
        }
        std::vector<std::vector<std::pair<std::size_t, const mpz_class*>>> b_rows(b.rows_);
        for (const auto& [key, value] : b.entries_) b_rows[key.first].emplace_back(key.second, &value);
        std::map<Key, mpz_class> acc;
        for (const auto& [key, value] : a.entries_) {
            for (const auto& [col, bv] : b_rows[key.second]) acc[{key.first, col}] += value * *bv;
        }
        IntegerMatrix c(a.rows_, b.cols_);
        for (auto& [key, value] : acc) {
            if (value != 0) c.entries_.emplace(key, std::move(value));
        }
        return c;
    }

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) {
            throw InputError("matrix index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::map<Key, mpz_class> entries_;
};

/// u * a * v = diag(d) with d[i] > 0 dividing d[i+1] and u, v unimodular.
/// The transforms are empty when they were not requested.
struct SmithForm {
    std::vector<mpz_class> d;
    IntegerMatrix u;
    IntegerMatrix v;

    std::size_t rank() const noexcept { return d.size(); }
};

/// rows x cols matrix with d on the leading diagonal.
inline IntegerMatrix diagonal(std::size_t rows, std::size_t cols, const std::vector<mpz_class>& d) {
    IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
}

namespace detail {

using DenseZ = std::vector<std::vector<mpz_class>>;

class SmithReducer {
public:
    SmithReducer(const IntegerMatrix& a, bool track) : m_(a.to_dense()), rows_(a.rows()), cols_(a.cols()), track_(track) {
        if (track_) {
            u_ = IntegerMatrix::identity(rows_).to_dense();
            v_ = IntegerMatrix::identity(cols_).to_dense();
        }
    }

    SmithForm run() {
        const std::size_t limit = std::min(rows_, cols_);
        std::vector<mpz_class> d;
        for (std::size_t t = 0; t < limit; ++t) {
            auto pivot = smallest_entry(t);
            if (!pivot) break;
            move_to(t, pivot->first, pivot->second);
            for (;;) {
                if (!clear_cross(t)) continue;
                // Every remaining entry must be a multiple of the pivot;
                // otherwise fold the offending row in and reduce again.
                auto bad = non_multiple(t);
                if (!bad) break;
                add_row(t, *bad, 1);
            }
            if (m_[t][t] < 0) negate_row(t);
            d.push_back(m_[t][t]);
        }
        SmithForm out{std::move(d), {}, {}};
        if (track_) {
            out.u = IntegerMatrix::from_dense(u_, rows_);
            out.v = IntegerMatrix::from_dense(v_, cols_);
        }
        return out;
    }

private:
    // Minimal absolute value in the trailing block; ties go to the lowest
    // row, then the lowest column.
    std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(std::size_t t) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < rows_; ++i) {
            for (std::size_t j = t; j < cols_; ++j) {
                if (sgn(m_[i][j]) == 0) continue;
                if (!best || mpz_cmpabs(m_[i][j].get_mpz_t(), m_[best->first][best->second].get_mpz_t()) < 0) best = {{i, j}};
                if (mpz_cmpabs_ui(m_[i][j].get_mpz_t(), 1) == 0) return best;
            }
        }
        return best;
    }

    void move_to(std::size_t t, std::size_t i, std::size_t j) {
        if (i != t) swap_rows(t, i);
        if (j != t) swap_cols(t, j);
    }

    // Reduces row t and column t against the pivot. Returns false when a
    // nonzero remainder was swapped in as the new, smaller pivot.
    bool clear_cross(std::size_t t) {
        mpz_class q;
        for (std::size_t i = t + 1; i < rows_; ++i) {
            if (sgn(m_[i][t]) == 0) continue;
            mpz_tdiv_q(q.get_mpz_t(), m_[i][t].get_mpz_t(), m_[t][t].get_mpz_t());
            add_row(i, t, -q);
        }
        for (std::size_t j = t + 1; j < cols_; ++j) {
            if (sgn(m_[t][j]) == 0) continue;
            mpz_tdiv_q(q.get_mpz_t(), m_[t][j].get_mpz_t(), m_[t][t].get_mpz_t());
            add_col(j, t, -q);
        }
        std::optional<std::pair<std::size_t, std::size_t>> best;
        auto consider = [&](std::size_t i, std::size_t j) {
            if (sgn(m_[i][j]) != 0 && (!best || mpz_cmpabs(m_[i][j].get_mpz_t(), m_[best->first][best->second].get_mpz_t()) < 0)) best = {{i, j}};
        };
        for (std::size_t i = t + 1; i < rows_; ++i) consider(i, t);
        for (std::size_t j = t + 1; j < cols_; ++j) consider(t, j);
        if (!best) return true;
        move_to(t, best->first, best->second);
        return false;
    }

    std::optional<std::size_t> non_multiple(std::size_t t) const {
        for (std::size_t i = t + 1; i < rows_; ++i) {
            for (std::size_t j = t + 1; j < cols_; ++j) {
                if (sgn(m_[i][j]) != 0 && !mpz_divisible_p(m_[i][j].get_mpz_t(), m_[t][t].get_mpz_t())) return i;
            }
        }
        return std::nullopt;
    }

    // row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const mpz_class& factor) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (sgn(m_[src][j]) != 0) m_[dst][j] += factor * m_[src][j];
        }
        if (track_) {
            for (std::size_t j = 0; j < rows_; ++j) {
                if (sgn(u_[src][j]) != 0) u_[dst][j] += factor * u_[src][j];
            }
        }
    }

    // col[dst] += factor * col[src]
    void add_col(std::size_t dst, std::size_t src, const mpz_class& factor) {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (sgn(m_[i][src]) != 0) m_[i][dst] += factor * m_[i][src];
        }
        if (track_) {
            for (std::size_t i = 0; i < cols_; ++i) {
                if (sgn(v_[i][src]) != 0) v_[i][dst] += factor * v_[i][src];
            }
        }
    }

    void swap_rows(std::size_t a, std::size_t b) {
        std::swap(m_[a], m_[b]);
        if (track_) std::swap(u_[a], u_[b]);
    }

    void swap_cols(std::size_t a, std::size_t b) {
        for (auto& row : m_) std::swap(row[a], row[b]);
        if (track_) {
            for (auto& row : v_) std::swap(row[a], row[b]);
        }
    }

    void negate_row(std::size_t t) {
        for (auto& x : m_[t]) x = -x;
        if (track_) {
            for (auto& x : u_[t]) x = -x;
        }
    }

    DenseZ m_;
    DenseZ u_;
    DenseZ v_;
    std::size_t rows_;
    std::size_t cols_;
    bool track_;
};

}  // namespace detail

/// Diagonalizes a over Z by unimodular row and column operations, always
/// pivoting on a nonzero entry of minimal absolute value. Set
/// with_transforms to false when only the invariant factors are needed.
inline SmithForm smith_normal_form(const IntegerMatrix& a, bool with_transforms = true) {
    return detail::SmithReducer(a, with_transforms).run();
}

/// Checks u * a * v = diag(d), positivity and the divisibility chain.
inline bool verify_smith_form(const IntegerMatrix& a, const SmithForm& s) {
    for (std::size_t i = 0; i < s.d.size(); ++i) {
        if (s.d[i] <= 0) return false;
        if (i + 1 < s.d.size() && !mpz_divisible_p(s.d[i + 1].get_mpz_t(), s.d[i].get_mpz_t())) return false;
    }
    if (s.u.rows() != a.rows() || s.v.cols() != a.cols()) return false;
    return s.u * a * s.v == diagonal(a.rows(), a.cols(), s.d);
}

}  // namespace dvrhom
