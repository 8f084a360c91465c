#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "parmonge/polynomial.hpp"

namespace parmonge {

// Differential form of degree 0, 1 or 2 with polynomial coefficients.
// Degree-2 components are stored on index pairs (i,j) with i < j.
class PolyForm {
public:
    PolyForm() : degree_(0) {}
    PolyForm(int degree, CoordSpacePtr space) : degree_(degree), space_(std::move(space)) {
        if (degree_ < 0 || degree_ > 2)
            throw std::invalid_argument("PolyForm: degree must be 0, 1 or 2");
    }

    static PolyForm from_function(const Polynomial& f) {
        PolyForm w(0, f.space());
        if (!f.is_zero()) w.comps_[{-1, -1}] = f;
        return w;
    }
    static PolyForm zero(int degree, CoordSpacePtr space) { return {degree, std::move(space)}; }
    // The coordinate differential dx^i.
    static PolyForm d_coordinate(CoordSpacePtr space, int i) {
        PolyForm w(1, space);
        w.comps_[{i, -1}] = Polynomial::constant(space, Rational(1));
        return w;
    }

    int degree() const { return degree_; }
    const CoordSpacePtr& space() const { return space_; }
    bool is_zero() const { return comps_.empty(); }

    Polynomial function_part() const {
        require_degree(0);
        auto it = comps_.find({-1, -1});
        return it == comps_.end() ? Polynomial::zero(space_) : it->second;
    }
    Polynomial component(int i) const {
        require_degree(1);
        auto it = comps_.find({i, -1});
        return it == comps_.end() ? Polynomial::zero(space_) : it->second;
    }
    // Coefficient of dx^i ^ dx^j, antisymmetric in (i,j).
    Polynomial component(int i, int j) const {
        require_degree(2);
        if (i == j) return Polynomial::zero(space_);
        bool flip = i > j;
        if (flip) std::swap(i, j);
        auto it = comps_.find({i, j});
        if (it == comps_.end()) return Polynomial::zero(space_);
        return flip ? -it->second : it->second;
    }
    const std::map<std::pair<int, int>, Polynomial>& components() const { return comps_; }

    void add_component(int i, const Polynomial& p) {
        require_degree(1);
        require_same_space(space_, p.space());
        accumulate({i, -1}, p);
    }
    void add_component(int i, int j, Polynomial p) {
        require_degree(2);
        require_same_space(space_, p.space());
        if (i == j) return;  // dx^i ^ dx^i contributes nothing
        if (i > j) {
            std::swap(i, j);
            p = -p;
        }
        accumulate({i, j}, p);
    }

    PolyForm& operator+=(const PolyForm& o) {
        require_compatible(o);
        for (const auto& [k, p] : o.comps_) accumulate(k, p);
        return *this;
    }
    PolyForm& operator-=(const PolyForm& o) {
        require_compatible(o);
        for (const auto& [k, p] : o.comps_) accumulate(k, -p);
        return *this;
    }
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    PolyForm operator-() const {
        PolyForm r(degree_, space_);
        for (const auto& [k, p] : comps_) r.comps_[k] = -p;
        return r;
    }
    PolyForm scaled(const Polynomial& f) const {
        require_same_space(space_, f.space());
        PolyForm r(degree_, space_);
        for (const auto& [k, p] : comps_) r.accumulate(k, p * f);
        return r;
    }
    PolyForm scaled(const Rational& c) const {
        PolyForm r(degree_, space_);
        for (const auto& [k, p] : comps_) r.accumulate(k, p.scaled(c));
        return r;
    }

    friend bool operator==(const PolyForm& a, const PolyForm& b) {
        return a.degree_ == b.degree_ && same_space(a.space_, b.space_) && a.comps_ == b.comps_;
    }
    friend bool operator!=(const PolyForm& a, const PolyForm& b) { return !(a == b); }

    std::string str() const {
        if (comps_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, p] : comps_) {
            if (!first) os << " + ";
            first = false;
            if (degree_ == 0) {
                os << p.str();
            } else if (degree_ == 1) {
                os << "(" << p.str() << ") d" << space_->names[static_cast<std::size_t>(k.first)];
            } else {
                os << "(" << p.str() << ") d" << space_->names[static_cast<std::size_t>(k.first)]
                   << "^d" << space_->names[static_cast<std::size_t>(k.second)];
            }
        }
        return os.str();
    }

private:
    void require_degree(int d) const {
        if (degree_ != d) throw std::invalid_argument("PolyForm: wrong degree for accessor");
    }
    void require_compatible(const PolyForm& o) const {
        require_same_space(space_, o.space_);
        if (degree_ != o.degree_)
            throw std::invalid_argument("PolyForm: degree mismatch in sum");
    }
    void accumulate(const std::pair<int, int>& k, const Polynomial& p) {
        if (p.is_zero()) return;
        auto it = comps_.find(k);
        if (it == comps_.end()) {
            comps_.emplace(k, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    int degree_;
    CoordSpacePtr space_;
    std::map<std::pair<int, int>, Polynomial> comps_;
};

// Exterior derivative; defined for degree 0 and 1 only (forms are capped at
// degree 2).
inline PolyForm exterior_derivative(const PolyForm& f) {
    const auto& space = f.space();
    if (f.degree() == 0) {
        PolyForm r(1, space);
        Polynomial fun = f.function_part();
        for (std::size_t i = 0; i < space->dim(); ++i)
            r.add_component(static_cast<int>(i), fun.partial(static_cast<int>(i)));
        return r;
    }
    if (f.degree() == 1) {
        PolyForm r(2, space);
        for (const auto& [k, p] : f.components())
            for (std::size_t i = 0; i < space->dim(); ++i) {
                if (static_cast<int>(i) == k.first) continue;
                r.add_component(static_cast<int>(i), k.first, p.partial(static_cast<int>(i)));
            }
        return r;
    }
    throw std::invalid_argument("exterior_derivative: unsupported on degree-2 forms");
}

inline PolyForm wedge(const PolyForm& a, const PolyForm& b) {
    require_same_space(a.space(), b.space());
    int deg = a.degree() + b.degree();
    if (deg > 2) throw std::invalid_argument("wedge: resulting degree exceeds 2");
    if (a.degree() == 0) return b.scaled(a.function_part());
    if (b.degree() == 0) return a.scaled(b.function_part());
    PolyForm r(2, a.space());
    for (const auto& [ka, pa] : a.components())
        for (const auto& [kb, pb] : b.components())
            if (ka.first != kb.first) r.add_component(ka.first, kb.first, pa * pb);
    return r;
}

// Pairing of a 1-form with a vector field given by its component polynomials.
inline Polynomial pair_with_field(const PolyForm& w, const std::map<int, Polynomial>& field) {
    if (w.degree() != 1) throw std::invalid_argument("pair_with_field: need a 1-form");
    Polynomial r = Polynomial::zero(w.space());
    for (const auto& [k, p] : w.components()) {
        auto it = field.find(k.first);
        if (it != field.end()) r += p * it->second;
    }
    return r;
}

// Interior product of a vector field with a 2-form: (i_X w)(Y) = w(X, Y).
inline PolyForm contract(const std::map<int, Polynomial>& field, const PolyForm& w) {
    if (w.degree() != 2) throw std::invalid_argument("contract: need a 2-form");
    PolyForm r(1, w.space());
    for (const auto& [k, p] : w.components()) {
        auto it = field.find(k.first);
        if (it != field.end()) r.add_component(k.second, p * it->second);
        it = field.find(k.second);
        if (it != field.end()) r.add_component(k.first, -(p * it->second));
    }
    return r;
}

}  // namespace parmonge
