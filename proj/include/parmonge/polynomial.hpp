#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parmonge/rational.hpp"

namespace parmonge {

// An ordered list of coordinate names, each with an integer weight.  Weights
// default to 1 and only matter for weighted-degree bookkeeping.
struct CoordSpace {
    std::vector<std::string> names;
    std::vector<int> weights;

    CoordSpace() = default;
    explicit CoordSpace(std::vector<std::string> n)
        : names(std::move(n)), weights(names.size(), 1) {}
    CoordSpace(std::vector<std::string> n, std::vector<int> w)
        : names(std::move(n)), weights(std::move(w)) {
        if (names.size() != weights.size())
            throw std::invalid_argument("CoordSpace: names/weights size mismatch");
    }

    std::size_t dim() const { return names.size(); }
    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return static_cast<int>(i);
        throw std::invalid_argument("CoordSpace: unknown coordinate " + name);
    }
    friend bool operator==(const CoordSpace& a, const CoordSpace& b) {
        return a.names == b.names && a.weights == b.weights;
    }
};

using CoordSpacePtr = std::shared_ptr<const CoordSpace>;

inline CoordSpacePtr make_space(std::vector<std::string> names) {
    return std::make_shared<const CoordSpace>(std::move(names));
}
inline CoordSpacePtr make_space(std::vector<std::string> names, std::vector<int> weights) {
    return std::make_shared<const CoordSpace>(std::move(names), std::move(weights));
}

inline bool same_space(const CoordSpacePtr& a, const CoordSpacePtr& b) {
    return a == b || (a && b && *a == *b);
}
inline void require_same_space(const CoordSpacePtr& a, const CoordSpacePtr& b) {
    if (!same_space(a, b))
        throw std::invalid_argument("operands live in different coordinate spaces");
}

// Exponent vector, one entry per coordinate.  std::map with the vector's
// lexicographic order gives a deterministic monomial order.
using Monomial = std::vector<int>;

// Multivariate polynomial with exact rational coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(CoordSpacePtr space) : space_(std::move(space)) {}

    static Polynomial zero(CoordSpacePtr space) { return Polynomial(std::move(space)); }
    static Polynomial constant(CoordSpacePtr space, const Rational& c) {
        Polynomial p(std::move(space));
        if (!c.is_zero()) p.terms_[Monomial(p.space_->dim(), 0)] = c;
        return p;
    }
    static Polynomial coordinate(CoordSpacePtr space, int i) {
        Polynomial p(std::move(space));
        Monomial m(p.space_->dim(), 0);
        m.at(static_cast<std::size_t>(i)) = 1;
        p.terms_[m] = Rational(1);
        return p;
    }
    static Polynomial monomial(CoordSpacePtr space, Monomial m, const Rational& c) {
        Polynomial p(std::move(space));
        if (m.size() != p.space_->dim())
            throw std::invalid_argument("Polynomial: monomial size mismatch");
        for (int e : m)
            if (e < 0) throw std::invalid_argument("Polynomial: negative exponent");
        if (!c.is_zero()) p.terms_[std::move(m)] = c;
        return p;
    }

    const CoordSpacePtr& space() const { return space_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coeff(Monomial(space_->dim(), 0)); }

    Polynomial& operator+=(const Polynomial& o) {
        require_same_space(space_, o.space_);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        require_same_space(space_, o.space_);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    Polynomial operator-() const {
        Polynomial r(space_);
        for (const auto& [m, c] : terms_) r.terms_[m] = -c;
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        require_same_space(a.space_, b.space_);
        Polynomial r(a.space_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma.size());
                for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
                r.add_term(m, ca * cb);
            }
        return r;
    }
    Polynomial scaled(const Rational& c) const {
        Polynomial r(space_);
        if (c.is_zero()) return r;
        for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
        return r;
    }

    // Partial derivative with respect to coordinate i.
    Polynomial partial(int i) const {
        Polynomial r(space_);
        auto ui = static_cast<std::size_t>(i);
        for (const auto& [m, c] : terms_) {
            if (m.at(ui) == 0) continue;
            Monomial d = m;
            --d[ui];
            r.add_term(d, c * Rational(m[ui]));
        }
        return r;
    }

    // Pullback along coordinate i -> 0.
    Polynomial substitute_zero(int i) const {
        Polynomial r(space_);
        auto ui = static_cast<std::size_t>(i);
        for (const auto& [m, c] : terms_)
            if (m.at(ui) == 0) r.terms_[m] = c;
        return r;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) {
            int s = 0;
            for (int e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }
    int weighted_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, weighted_degree_of(m));
        return d;
    }
    int weighted_degree_of(const Monomial& m) const {
        int s = 0;
        for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * space_->weights[i];
        return s;
    }

    // Keeps only terms whose weighted degree equals w.
    Polynomial weighted_component(int w) const {
        Polynomial r(space_);
        for (const auto& [m, c] : terms_)
            if (weighted_degree_of(m) == w) r.terms_[m] = c;
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << (c.sign() >= 0 ? " + " : " - ");
            else if (c.sign() < 0) os << "-";
            first = false;
            Rational a = c.sign() >= 0 ? c : -c;
            bool unit = (a == Rational(1));
            bool any_var = false;
            std::ostringstream vars;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (any_var) vars << "*";
                any_var = true;
                vars << space_->names[i];
                if (m[i] > 1) vars << "^" << m[i];
            }
            if (!any_var) os << a.str();
            else if (unit) os << vars.str();
            else os << a.str() << "*" << vars.str();
        }
        return os.str();
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        require_same_space(a.space_, b.space_);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    CoordSpacePtr space_;
    std::map<Monomial, Rational> terms_;
};

}  // namespace parmonge
