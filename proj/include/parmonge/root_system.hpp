#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace parmonge {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

inline char family_letter(Family f) { return static_cast<char>(f); }

inline Family family_from_letter(char c) {
    switch (c) {
        case 'A': case 'B': case 'C': case 'D': case 'E': case 'F': case 'G':
            return static_cast<Family>(c);
        default:
            throw std::invalid_argument(std::string("unknown family letter: ") + c);
    }
}

struct AlgebraSpec {
    Family family;
    int rank;

    std::string name() const {
        return std::string(1, family_letter(family)) + std::to_string(rank);
    }
};

inline void validate(const AlgebraSpec& spec) {
    const int l = spec.rank;
    bool ok = false;
    switch (spec.family) {
        case Family::A: ok = l >= 1; break;
        case Family::B: ok = l >= 2; break;
        case Family::C: ok = l >= 2; break;
        case Family::D: ok = l >= 3; break;
        case Family::E: ok = l == 6 || l == 7 || l == 8; break;
        case Family::F: ok = l == 4; break;
        case Family::G: ok = l == 2; break;
    }
    if (!ok) throw std::invalid_argument("invalid rank for family " + spec.name());
}

// A root written in simple-root coordinates: beta = sum_i coeff[i] * alpha_i.
using Root = std::vector<int>;

inline std::string root_str(const Root& r) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) os << ",";
        os << r[i];
    }
    os << ")";
    return os.str();
}

// Root system data for one simple Lie algebra: Cartan matrix (in the
// convention cartan[i][j] = <alpha_i, alpha_j> = 2(alpha_i,alpha_j)/(alpha_j,alpha_j)),
// symmetrizer, the positive roots, the highest root and the Dynkin adjacency.
class RootSystem {
public:
    explicit RootSystem(const AlgebraSpec& spec) : spec_(spec) {
        validate(spec);
        build_cartan();
        generate_roots();
    }

    const AlgebraSpec& spec() const { return spec_; }
    int rank() const { return spec_.rank; }
    const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
    const std::vector<int>& symmetrizer() const { return symmetrizer_; }
    const std::vector<Root>& positive_roots() const { return positive_; }
    const Root& highest_root() const { return highest_; }
    const std::vector<std::pair<int, int>>& dynkin_edges() const { return edges_; }

    bool is_positive_root(const Root& beta) const { return positive_set_.count(beta) > 0; }
    bool is_root(const Root& beta) const {
        if (positive_set_.count(beta)) return true;
        Root neg(beta.size());
        for (std::size_t i = 0; i < beta.size(); ++i) neg[i] = -beta[i];
        return positive_set_.count(neg) > 0;
    }
    void require_root(const Root& beta) const {
        if (!is_root(beta)) throw std::invalid_argument("not a root: " + root_str(beta));
    }

    Root simple_root(int i) const {
        Root r(static_cast<std::size_t>(rank()), 0);
        r[static_cast<std::size_t>(i)] = 1;
        return r;
    }

    // <beta, alpha_i> = 2(beta, alpha_i)/(alpha_i, alpha_i), exact integer.
    int cartan_integer(const Root& beta, int i) const {
        require_root(beta);
        return cartan_pairing(beta, i);
    }

    // (beta, beta), normalized so short roots have squared length 2.
    int squared_length(const Root& beta) const {
        int s = 0;
        for (int j = 0; j < rank(); ++j) {
            int nj = beta[static_cast<std::size_t>(j)];
            if (nj != 0) s += nj * symmetrizer_[static_cast<std::size_t>(j)] * cartan_pairing(beta, j);
        }
        return s;
    }

    bool is_long(const Root& beta) const {
        require_root(beta);
        return squared_length(beta) == max_squared_length_;
    }

    Root simple_reflection(int i, const Root& beta) const {
        require_root(beta);
        return reflect(i, beta);
    }

    // Word [i, j] acts as s_i(s_j(beta)).
    Root weyl_apply(const std::vector<int>& word, const Root& beta) const {
        require_root(beta);
        Root r = beta;
        for (auto it = word.rbegin(); it != word.rend(); ++it) r = reflect(*it, r);
        return r;
    }

    bool adjacent(int i, int j) const {
        return i != j && cartan_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
    }
    std::vector<int> neighbors(int i) const {
        std::vector<int> n;
        for (int j = 0; j < rank(); ++j)
            if (adjacent(i, j)) n.push_back(j);
        return n;
    }

    int cartan_pairing(const Root& beta, int i) const {
        int s = 0;
        for (int j = 0; j < rank(); ++j)
            s += beta[static_cast<std::size_t>(j)] *
                 cartan_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        return s;
    }

private:
    Root reflect(int i, const Root& beta) const {
        Root r = beta;
        r[static_cast<std::size_t>(i)] -= cartan_pairing(beta, i);
        return r;
    }

    void add_edge(int i, int j, int cij, int cji) {
        cartan_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cij;
        cartan_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = cji;
        edges_.emplace_back(std::min(i, j), std::max(i, j));
    }

    void build_cartan() {
        const int l = rank();
        cartan_.assign(static_cast<std::size_t>(l), std::vector<int>(static_cast<std::size_t>(l), 0));
        for (int i = 0; i < l; ++i) cartan_[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
        symmetrizer_.assign(static_cast<std::size_t>(l), 1);

        auto chain = [&](int from, int to) {
            for (int i = from; i < to; ++i) add_edge(i, i + 1, -1, -1);
        };
        switch (spec_.family) {
            case Family::A:
                chain(0, l - 1);
                break;
            case Family::B:
                // alpha_l short; double edge alpha_{l-1} => alpha_l.
                chain(0, l - 2);
                add_edge(l - 2, l - 1, -2, -1);
                for (int i = 0; i < l - 1; ++i) symmetrizer_[static_cast<std::size_t>(i)] = 2;
                break;
            case Family::C:
                // alpha_l long.
                chain(0, l - 2);
                add_edge(l - 2, l - 1, -1, -2);
                symmetrizer_[static_cast<std::size_t>(l - 1)] = 2;
                break;
            case Family::D:
                // Fork at alpha_{l-2}: both alpha_{l-1} and alpha_l attach to it.
                chain(0, l - 2);
                add_edge(l - 3, l - 1, -1, -1);
                break;
            case Family::E:
                // Bourbaki labels: chain 1-3-4-5-...-l with node 2 attached to 4.
                add_edge(0, 2, -1, -1);
                add_edge(1, 3, -1, -1);
                chain(2, l - 1);
                break;
            case Family::F:
                // alpha_1, alpha_2 long; double edge alpha_2 => alpha_3.
                add_edge(0, 1, -1, -1);
                add_edge(1, 2, -2, -1);
                add_edge(2, 3, -1, -1);
                symmetrizer_[0] = symmetrizer_[1] = 2;
                break;
            case Family::G:
                // alpha_1 short.
                add_edge(0, 1, -1, -3);
                symmetrizer_[1] = 3;
                break;
        }
    }

    // Closure under adding simple roots along root strings: beta + alpha_i is a
    // root iff q > 0 where q = r - <beta, alpha_i> and r is the number of times
    // alpha_i can be subtracted from beta while staying in the root system.
    void generate_roots() {
        const int l = rank();
        std::vector<std::vector<Root>> levels;
        std::vector<Root> simples;
        for (int i = 0; i < l; ++i) {
            simples.push_back(simple_root(i));
            positive_set_.insert(simples.back());
        }
        std::sort(simples.begin(), simples.end());
        levels.push_back(simples);
        while (true) {
            std::set<Root> next;
            for (const Root& beta : levels.back()) {
                for (int i = 0; i < l; ++i) {
                    int r = 0;
                    Root down = beta;
                    while (true) {
                        down[static_cast<std::size_t>(i)] -= 1;
                        if (!positive_set_.count(down)) break;
                        ++r;
                    }
                    int q = r - cartan_pairing(beta, i);
                    if (q > 0) {
                        Root up = beta;
                        up[static_cast<std::size_t>(i)] += 1;
                        next.insert(up);
                    }
                }
            }
            if (next.empty()) break;
            for (const Root& r : next) positive_set_.insert(r);
            levels.emplace_back(next.begin(), next.end());
        }
        for (const auto& level : levels)
            for (const Root& r : level) positive_.push_back(r);
        highest_ = levels.back().front();
        if (levels.back().size() != 1)
            throw std::logic_error("root generation: topmost level is not a single root");
        max_squared_length_ = 0;
        for (const Root& r : positive_)
            max_squared_length_ = std::max(max_squared_length_, squared_length(r));
    }

    AlgebraSpec spec_;
    std::vector<std::vector<int>> cartan_;
    std::vector<int> symmetrizer_;
    std::vector<Root> positive_;
    std::set<Root> positive_set_;
    Root highest_;
    std::vector<std::pair<int, int>> edges_;
    int max_squared_length_ = 0;
};

inline RootSystem build_root_system(const AlgebraSpec& spec) { return RootSystem(spec); }

}  // namespace parmonge
