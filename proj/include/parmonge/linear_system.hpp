#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "parmonge/rational.hpp"

namespace parmonge {

// Sparse homogeneous linear system over the rationals.  Rows are kept as
// integer vectors with content divided out; elimination is fraction-free
// (cross-multiplication, division deferred to the content normalization), with
// the pivot for each unknown being the first row, in insertion order, whose
// leading unknown it is.
class LinearSystem {
public:
    using Entry = std::pair<std::int32_t, mpz_class>;  // (column, coefficient)
    using Row = std::vector<Entry>;                    // sorted by column

    explicit LinearSystem(std::vector<std::string> unknowns)
        : unknowns_(std::move(unknowns)), pivot_of_col_(unknowns_.size(), -1) {}

    const std::vector<std::string>& unknowns() const { return unknowns_; }
    std::size_t row_count() const { return rows_; }

    void add_row(const std::vector<std::pair<std::int32_t, Rational>>& entries) {
        Row row;
        mpz_class lcm_den(1);
        for (const auto& [c, v] : entries) {
            if (c < 0 || static_cast<std::size_t>(c) >= unknowns_.size())
                throw std::invalid_argument("LinearSystem: row references unknown column");
            if (!v.is_zero()) {
                mpz_class den = v.denominator();
                mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
            }
        }
        for (const auto& [c, v] : entries) {
            if (v.is_zero()) continue;
            row.emplace_back(c, v.numerator() * (lcm_den / v.denominator()));
        }
        std::sort(row.begin(), row.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < row.size(); ++i)
            if (row[i].first == row[i - 1].first)
                throw std::invalid_argument("LinearSystem: duplicate column in row");
        push_reduced(std::move(row));
        ++rows_;
    }

    // Integer-coefficient fast path used by the determining-system builders.
    void add_integer_row(Row row) {
        std::sort(row.begin(), row.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        push_reduced(std::move(row));
        ++rows_;
    }

    std::size_t rank() const {
        std::size_t r = 0;
        for (auto p : pivot_of_col_)
            if (p >= 0) ++r;
        return r;
    }

    // Basis of the kernel: one vector per free unknown (in declared order),
    // with that unknown set to 1.
    std::vector<std::vector<Rational>> nullspace() const {
        const std::size_t n = unknowns_.size();
        std::vector<std::int32_t> pivot_cols;
        for (std::int32_t c = 0; c < static_cast<std::int32_t>(n); ++c)
            if (pivot_of_col_[static_cast<std::size_t>(c)] >= 0) pivot_cols.push_back(c);
        std::vector<std::vector<Rational>> basis;
        for (std::int32_t f = 0; f < static_cast<std::int32_t>(n); ++f) {
            if (pivot_of_col_[static_cast<std::size_t>(f)] >= 0) continue;
            std::vector<Rational> x(n);
            x[static_cast<std::size_t>(f)] = Rational(1);
            for (auto it = pivot_cols.rbegin(); it != pivot_cols.rend(); ++it) {
                const Row& row = pivot_rows_[static_cast<std::size_t>(
                    pivot_of_col_[static_cast<std::size_t>(*it)])];
                mpq_class acc(0);
                for (std::size_t k = 1; k < row.size(); ++k) {
                    const auto& xv = x[static_cast<std::size_t>(row[k].first)];
                    if (!xv.is_zero()) acc += mpq_class(row[k].second) * xv.value();
                }
                if (acc != 0) {
                    mpq_class v = -acc / mpq_class(row.front().second);
                    v.canonicalize();
                    x[static_cast<std::size_t>(*it)] = Rational(v);
                }
            }
            basis.push_back(std::move(x));
        }
        return basis;
    }

private:
    // Reduce a row against the current pivots; register it as a new pivot if
    // anything survives.
    void push_reduced(Row row) {
        normalize(row);
        while (!row.empty()) {
            std::int32_t lead = row.front().first;
            std::int64_t p = pivot_of_col_[static_cast<std::size_t>(lead)];
            if (p < 0) {
                pivot_of_col_[static_cast<std::size_t>(lead)] =
                    static_cast<std::int64_t>(pivot_rows_.size());
                pivot_rows_.push_back(std::move(row));
                return;
            }
            combine(row, pivot_rows_[static_cast<std::size_t>(p)]);
        }
    }

    // row := pivot_lead * row - row_lead * pivot, then content-normalized.
    static void combine(Row& row, const Row& pivot) {
        const mpz_class a = pivot.front().second;  // pivot leading coefficient
        const mpz_class b = row.front().second;
        Row out;
        out.reserve(row.size() + pivot.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() || j < pivot.size()) {
            if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
                out.emplace_back(row[i].first, a * row[i].second);
                ++i;
            } else if (i == row.size() || pivot[j].first < row[i].first) {
                out.emplace_back(pivot[j].first, -b * pivot[j].second);
                ++j;
            } else {
                mpz_class v = a * row[i].second - b * pivot[j].second;
                if (v != 0) out.emplace_back(row[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        row = std::move(out);
        normalize(row);
    }

    static void normalize(Row& row) {
        if (row.empty()) return;
        mpz_class g(0);
        for (const auto& [c, v] : row) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) break;
        }
        if (sgn(row.front().second) < 0) g = -g;
        if (g != 1)
            for (auto& [c, v] : row) v /= g;
    }

    std::vector<std::string> unknowns_;
    std::vector<Row> pivot_rows_;
    std::vector<std::int64_t> pivot_of_col_;
    std::size_t rows_ = 0;
};

}  // namespace parmonge
