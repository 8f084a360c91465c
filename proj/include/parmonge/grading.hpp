#pragma once

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "parmonge/root_system.hpp"

namespace parmonge {

// Grading subset: a nonempty set of simple-root indices (0-based).
struct Sigma {
    std::set<int> indices;

    explicit Sigma(std::set<int> idx) : indices(std::move(idx)) {
        if (indices.empty()) throw std::invalid_argument("Sigma must be nonempty");
    }
    Sigma(std::initializer_list<int> idx) : Sigma(std::set<int>(idx)) {}

    bool contains(int i) const { return indices.count(i) > 0; }
    std::size_t size() const { return indices.size(); }

    void validate(const RootSystem& rs) const {
        for (int i : indices)
            if (i < 0 || i >= rs.rank())
                throw std::invalid_argument("Sigma index out of range");
    }

    // 1-based display matching the usual alpha numbering.
    std::string str() const {
        std::ostringstream os;
        os << "{";
        bool first = true;
        for (int i : indices) {
            if (!first) os << ",";
            first = false;
            os << (i + 1);
        }
        os << "}";
        return os.str();
    }

    friend bool operator==(const Sigma& a, const Sigma& b) { return a.indices == b.indices; }
    friend bool operator<(const Sigma& a, const Sigma& b) { return a.indices < b.indices; }
};

// ht_Sigma(beta): sum of the beta-coefficients over the roots in Sigma.
inline int height(const Root& beta, const Sigma& sigma) {
    int h = 0;
    for (int i : sigma.indices) h += beta[static_cast<std::size_t>(i)];
    return h;
}

inline int depth(const RootSystem& rs, const Sigma& sigma) {
    sigma.validate(rs);
    return height(rs.highest_root(), sigma);
}

// The graded components of the |k|-grading determined by Sigma.  For j != 0
// the component lists the roots of Sigma-height j; the degree-0 component
// lists the height-0 roots of both signs, and its dimension adds the rank for
// the Cartan subalgebra.
struct GradingInfo {
    int depth = 0;
    std::map<int, std::vector<Root>> components;
    std::map<int, int> dims;
};

inline GradingInfo grading_components(const RootSystem& rs, const Sigma& sigma) {
    sigma.validate(rs);
    GradingInfo info;
    info.depth = depth(rs, sigma);
    if (info.depth < 1)
        throw std::logic_error("grading: highest root has Sigma-height 0");
    for (int j = -info.depth; j <= info.depth; ++j) {
        info.components[j] = {};
        info.dims[j] = 0;
    }
    for (const Root& beta : rs.positive_roots()) {
        int h = height(beta, sigma);
        Root neg(beta.size());
        for (std::size_t i = 0; i < beta.size(); ++i) neg[i] = -beta[i];
        info.components[h].push_back(beta);
        info.components[-h].push_back(neg);
        info.dims[h] += 1;
        info.dims[-h] += 1;
    }
    info.dims[0] += rs.rank();
    return info;
}

// Positive roots of Sigma-height exactly j (j >= 0).
inline std::vector<Root> height_level(const RootSystem& rs, const Sigma& sigma, int j) {
    std::vector<Root> out;
    for (const Root& beta : rs.positive_roots())
        if (height(beta, sigma) == j) out.push_back(beta);
    return out;
}

}  // namespace parmonge
