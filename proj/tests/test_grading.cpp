#include <catch2/catch_amalgamated.hpp>

#include "parmonge/grading.hpp"

using namespace parmonge;

namespace {

std::vector<AlgebraSpec> specs_up_to(int max_rank) {
    std::vector<AlgebraSpec> specs;
    for (int l = 2; l <= max_rank; ++l) specs.push_back({Family::A, l});
    for (int l = 2; l <= max_rank; ++l) specs.push_back({Family::B, l});
    for (int l = 2; l <= max_rank; ++l) specs.push_back({Family::C, l});
    for (int l = 3; l <= max_rank; ++l) specs.push_back({Family::D, l});
    specs.push_back({Family::G, 2});
    specs.push_back({Family::F, 4});
    return specs;
}

std::vector<Sigma> all_sigmas(int rank) {
    std::vector<Sigma> out;
    for (unsigned mask = 1; mask < (1u << rank); ++mask) {
        std::set<int> idx;
        for (int i = 0; i < rank; ++i)
            if (mask & (1u << i)) idx.insert(i);
        out.push_back(Sigma(idx));
    }
    return out;
}

}  // namespace

TEST_CASE("sigma validation") {
    REQUIRE_THROWS_AS(Sigma(std::set<int>{}), std::invalid_argument);
    RootSystem rs({Family::A, 3});
    REQUIRE_THROWS_AS(Sigma{5}.validate(rs), std::invalid_argument);
}

TEST_CASE("heights") {
    SECTION("alpha in Sigma has height 1") {
        RootSystem rs({Family::B, 3});
        Sigma s{0, 2};
        REQUIRE(height(rs.simple_root(0), s) == 1);
        REQUIRE(height(rs.simple_root(2), s) == 1);
        REQUIRE(height(rs.simple_root(1), s) == 0);
    }
    SECTION("A_l, Sigma = {a1,a2,a3}: ht(theta) = 3") {
        for (int l = 3; l <= 7; ++l) {
            RootSystem rs({Family::A, l});
            REQUIRE(height(rs.highest_root(), Sigma{0, 1, 2}) == 3);
        }
    }
    SECTION("C_l, Sigma = {a_{l-2},a_{l-1},a_l}: ht(theta) = 5") {
        for (int l = 3; l <= 7; ++l) {
            RootSystem rs({Family::C, l});
            REQUIRE(height(rs.highest_root(), Sigma{l - 3, l - 2, l - 1}) == 5);
        }
    }
}

TEST_CASE("grading components") {
    SECTION("G2{a2}: dim g_-1 = 4, dim g_-2 = 1") {
        RootSystem rs({Family::G, 2});
        GradingInfo info = grading_components(rs, Sigma{1});
        REQUIRE(info.dims.at(-1) == 4);
        REQUIRE(info.dims.at(-2) == 1);
        REQUIRE(info.depth == 2);
    }
    SECTION("G2{a1}: dims (2,1,2)") {
        RootSystem rs({Family::G, 2});
        GradingInfo info = grading_components(rs, Sigma{0});
        REQUIRE(info.dims.at(-1) == 2);
        REQUIRE(info.dims.at(-2) == 1);
        REQUIRE(info.dims.at(-3) == 2);
    }
    SECTION("A3{a1,a2,a3}: dims (3,2,1)") {
        RootSystem rs({Family::A, 3});
        GradingInfo info = grading_components(rs, Sigma{0, 1, 2});
        REQUIRE(info.dims.at(-1) == 3);
        REQUIRE(info.dims.at(-2) == 2);
        REQUIRE(info.dims.at(-3) == 1);
        REQUIRE(info.dims.at(0) == 3);
    }
}

TEST_CASE("depth") {
    SECTION("A2{a1}: depth 1") {
        RootSystem rs({Family::A, 2});
        REQUIRE(depth(rs, Sigma{0}) == 1);
    }
    SECTION("C3{a1,a2,a3}: depth 5") {
        RootSystem rs({Family::C, 3});
        REQUIRE(depth(rs, Sigma{0, 1, 2}) == 5);
    }
    SECTION("B2{a2}: depth 2") {
        RootSystem rs({Family::B, 2});
        REQUIRE(depth(rs, Sigma{1}) == 2);
    }
}

TEST_CASE("grading invariants over all Sigma, ranks <= 8") {
    for (const auto& spec : specs_up_to(8)) {
        RootSystem rs(spec);
        for (const auto& sigma : all_sigmas(rs.rank())) {
            GradingInfo info = grading_components(rs, sigma);
            INFO(spec.name() + sigma.str());
            // dim g_j = dim g_{-j}
            for (const auto& [j, d] : info.dims) REQUIRE(info.dims.at(-j) == d);
            // total dimension = rank + 2 |Delta^+|
            int total = 0;
            for (const auto& [j, d] : info.dims) total += d;
            REQUIRE(total == rs.rank() + 2 * static_cast<int>(rs.positive_roots().size()));
            // depth is attained and equals ht(theta)
            REQUIRE(info.depth == height(rs.highest_root(), sigma));
            int max_h = 0;
            for (const Root& beta : rs.positive_roots())
                max_h = std::max(max_h, height(beta, sigma));
            REQUIRE(info.depth == max_h);
            REQUIRE(info.dims.at(-info.depth) > 0);
            // generation: every root of height j+1 >= 2 splits off a height-1 root
            for (int j = 1; j + 1 <= info.depth; ++j) {
                for (const Root& beta : height_level(rs, sigma, j + 1)) {
                    bool found = false;
                    for (const Root& gamma : height_level(rs, sigma, 1)) {
                        Root rest(beta.size());
                        for (std::size_t t = 0; t < beta.size(); ++t)
                            rest[t] = beta[t] - gamma[t];
                        if (rs.is_positive_root(rest) && height(rest, sigma) == j) {
                            found = true;
                            break;
                        }
                    }
                    REQUIRE(found);
                }
            }
        }
    }
}
