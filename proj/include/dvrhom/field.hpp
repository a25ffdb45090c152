#pragma once

// Coefficient fields and dense linear algebra over them.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "dvrhom/error.hpp"
#include "dvrhom/smith.hpp"

namespace dvrhom {

/// Q with exact gmp rationals.
struct Rationals {
    using value_type = mpq_class;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_integer(const mpz_class& z) const { return mpq_class(z); }
    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const { return 1 / a; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    std::string name() const { return "q"; }
};

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t q = 2; q * q <= p; ++q) {
        if (p % q == 0) return false;
    }
    return true;
}

/// Z/p for a prime p < 2^31.
class PrimeField {
public:
    using value_type = std::uint64_t;

    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p >= (std::uint64_t{1} << 31)) throw InputError("prime modulus " + std::to_string(p) + " is too large");
        if (!is_prime(p)) throw InputError("coefficient modulus " + std::to_string(p) + " is not prime");
    }

    std::uint64_t characteristic() const noexcept { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_integer(const mpz_class& z) const {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
        return r.get_ui();
    }
    value_type add(value_type a, value_type b) const { return (a + b) % p_; }
    value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type inv(value_type a) const {
        // Fermat: a^(p-2)
        value_type result = 1, base = a % p_;
        for (std::uint64_t e = p_ - 2; e > 0; e >>= 1) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
        }
        return result;
    }
    bool is_zero(value_type a) const { return a % p_ == 0; }
    std::string name() const { return "zp:" + std::to_string(p_); }

private:
    std::uint64_t p_;
};

using Coefficients = std::variant<Rationals, PrimeField>;

/// Parses "q" or "zp:<p>".
inline Coefficients parse_coefficients(const std::string& spec) {
    if (spec == "q") return Rationals{};
    if (spec.rfind("zp:", 0) == 0) {
        const std::string digits = spec.substr(3);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 12) {
            throw InputError("malformed prime in coefficient spec '" + spec + "'");
        }
        return PrimeField(std::stoull(digits));
    }
    throw InputError("unknown coefficient field '" + spec + "' (expected q or zp:<p>)");
}

/// Dense row-major matrix over a field.
template <class F>
struct FieldMatrix {
    using T = typename F::value_type;

    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<T>> data;

    FieldMatrix() = default;
    FieldMatrix(const F& f, std::size_t r, std::size_t c) : rows(r), cols(c), data(r, std::vector<T>(c, f.zero())) {}

    static FieldMatrix from_integer(const F& f, const IntegerMatrix& m) {
        FieldMatrix out(f, m.rows(), m.cols());
        for (const auto& [key, value] : m.entries()) out.data[key.first][key.second] = f.from_integer(value);
        return out;
    }

    /// Matrix whose columns are the given vectors, each of length r.
    static FieldMatrix from_columns(const F& f, std::size_t r, const std::vector<std::vector<T>>& columns) {
        FieldMatrix out(f, r, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            for (std::size_t i = 0; i < r; ++i) out.data[i][j] = columns[j][i];
        }
        return out;
    }

    std::vector<T> apply(const F& f, const std::vector<T>& x) const {
        std::vector<T> y(rows, f.zero());
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                if (!f.is_zero(data[i][j]) && !f.is_zero(x[j])) y[i] = f.add(y[i], f.mul(data[i][j], x[j]));
            }
        }
        return y;
    }

    FieldMatrix multiply(const F& f, const FieldMatrix& b) const {
        FieldMatrix c(f, rows, b.cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t k = 0; k < cols; ++k) {
                if (f.is_zero(data[i][k])) continue;
                for (std::size_t j = 0; j < b.cols; ++j) c.data[i][j] = f.add(c.data[i][j], f.mul(data[i][k], b.data[k][j]));
            }
        }
        return c;
    }

    bool is_zero(const F& f) const {
        for (const auto& row : data) {
            for (const auto& x : row) {
                if (!f.is_zero(x)) return false;
            }
        }
        return true;
    }
};

/// Reduced row echelon form, in place. Returns the pivot columns.
template <class F>
std::vector<std::size_t> row_reduce(const F& f, FieldMatrix<F>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
        std::size_t p = r;
        while (p < m.rows && f.is_zero(m.data[p][c])) ++p;
        if (p == m.rows) continue;
        std::swap(m.data[p], m.data[r]);
        const auto scale = f.inv(m.data[r][c]);
        for (auto& x : m.data[r]) x = f.mul(x, scale);
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r || f.is_zero(m.data[i][c])) continue;
            const auto factor = m.data[i][c];
            for (std::size_t j = c; j < m.cols; ++j) {
                if (!f.is_zero(m.data[r][j])) m.data[i][j] = f.sub(m.data[i][j], f.mul(factor, m.data[r][j]));
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
std::size_t rank(const F& f, FieldMatrix<F> m) {
    return row_reduce(f, m).size();
}

/// Basis of the null space {x : m x = 0}.
template <class F>
std::vector<std::vector<typename F::value_type>> kernel_basis(const F& f, FieldMatrix<F> m) {
    const auto pivots = row_reduce(f, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<typename F::value_type>> basis;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<typename F::value_type> x(m.cols, f.zero());
        x[free] = f.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = f.sub(f.zero(), m.data[r][free]);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// Some x with m x = b, or nothing when b is outside the column space.
template <class F>
std::optional<std::vector<typename F::value_type>> solve(const F& f, const FieldMatrix<F>& m,
                                                         const std::vector<typename F::value_type>& b) {
    FieldMatrix<F> aug(f, m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.data[i][j] = m.data[i][j];
        aug.data[i][m.cols] = b[i];
    }
    const auto pivots = row_reduce(f, aug);
    if (!pivots.empty() && pivots.back() == m.cols) return std::nullopt;
    std::vector<typename F::value_type> x(m.cols, f.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.data[r][m.cols];
    return x;
}

}  // namespace dvrhom
