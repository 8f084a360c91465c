#pragma once

#include <stdexcept>
#include <vector>

#include "parmonge/polynomial.hpp"
#include "parmonge/rational_matrix.hpp"

namespace parmonge {

// Rectangular matrix with polynomial entries over a single coordinate space.
class PolyMatrix {
public:
    PolyMatrix() : rows_(0), cols_(0) {}
    PolyMatrix(std::size_t rows, std::size_t cols, CoordSpacePtr space)
        : rows_(rows), cols_(cols), space_(std::move(space)),
          data_(rows * cols, Polynomial::zero(space_)) {}

    static PolyMatrix identity(std::size_t n, CoordSpacePtr space) {
        PolyMatrix m(n, n, std::move(space));
        for (std::size_t i = 0; i < n; ++i)
            m.at(i, i) = Polynomial::constant(m.space_, Rational(1));
        return m;
    }
    static PolyMatrix from_constant(const RationalMatrix& c, CoordSpacePtr space) {
        PolyMatrix m(c.rows(), c.cols(), std::move(space));
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j)
                m.at(i, j) = Polynomial::constant(m.space_, c.at(i, j));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const CoordSpacePtr& space() const { return space_; }
    Polynomial& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& p : data_)
            if (!p.is_zero()) return false;
        return true;
    }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMatrix: shape mismatch");
        require_same_space(a.space_, b.space_);
        PolyMatrix r(a.rows_, b.cols_, a.space_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Polynomial& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Polynomial& bkj = b.at(k, j);
                    if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("PolyMatrix: shape mismatch");
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
        return a;
    }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("PolyMatrix: shape mismatch");
        for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
        return a;
    }

    PolyMatrix partial(int coord) const {
        PolyMatrix r(rows_, cols_, space_);
        for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].partial(coord);
        return r;
    }

private:
    std::size_t rows_, cols_;
    CoordSpacePtr space_;
    std::vector<Polynomial> data_;
};

// exp(t * M) for a nilpotent constant matrix M and coordinate t; the series is
// a finite polynomial sum.
inline PolyMatrix nilpotent_exp(const RationalMatrix& m, int coord, const CoordSpacePtr& space) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("nilpotent_exp: square matrix required");
    PolyMatrix result = PolyMatrix::identity(n, space);
    RationalMatrix power = m;
    Polynomial t = Polynomial::coordinate(space, coord);
    Polynomial tk = t;
    Rational factorial(1);
    for (std::size_t k = 1; k <= n; ++k) {
        if (power.is_zero()) return result;
        factorial *= Rational(static_cast<long>(k));
        PolyMatrix term(n, n, space);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!power.at(i, j).is_zero())
                    term.at(i, j) = tk.scaled(power.at(i, j) / factorial);
        result = result + term;
        power = power * m;
        tk = tk * t;
    }
    if (!power.is_zero()) throw std::invalid_argument("nilpotent_exp: matrix is not nilpotent");
    return result;
}

}  // namespace parmonge
