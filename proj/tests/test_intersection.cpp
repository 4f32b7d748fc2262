#include "doctest.h"

#include "qz5/intersection.hpp"

#include <cstdio>
#include <random>

using namespace qz5;

TEST_SUITE("intersection") {

TEST_CASE("frozen values") {
    PsiCache cache;
    CHECK(cache.integral(0, {0, 0, 0}) == 1);
    CHECK(cache.integral(1, {1}) == rat(1, 24));
    CHECK(cache.integral(2, {4}) == rat(1, 1152));
    // A few independent table entries reachable by distinct recursion paths.
    CHECK(cache.integral(0, {1, 0, 0, 0}) == 1);
    CHECK(cache.integral(0, {2, 0, 0, 0, 0}) == 1);
    CHECK(cache.integral(0, {1, 1, 0, 0, 0}) == 2);
    CHECK(cache.integral(1, {0, 2}) == rat(1, 24));
    CHECK(cache.integral(1, {1, 1}) == rat(1, 24));
    CHECK(cache.integral(2, {2, 3}) == rat(29, 5760));
    // String reduces <tau_0 tau_5>_2 to <tau_4>_2.
    CHECK(cache.integral(2, {0, 5}) == rat(1, 1152));
}

TEST_CASE("dimension gate") {
    PsiCache cache;
    CHECK(cache.integral(1, {2}) == 0);
    CHECK(cache.integral(2, {3}) == 0);
    CHECK(cache.integral(0, {1, 1, 1}) == 0);
}

TEST_CASE("unstable keys are rejected") {
    PsiCache cache;
    CHECK_THROWS_AS(cache.integral(0, {0, 0}), std::domain_error);
    CHECK_THROWS_AS(cache.integral(1, {}), std::domain_error);
}

TEST_CASE("string and dilaton equations on random stable keys") {
    PsiCache cache;
    std::mt19937 rng(211);
    std::uniform_int_distribution<int> gdist(0, 3);
    std::uniform_int_distribution<int> ndist(1, 5);
    std::uniform_int_distribution<int> adist(0, 6);
    int tested = 0;
    while (tested < 100) {
        int g = gdist(rng);
        int n = ndist(rng);
        if (2 * g - 2 + n + 1 <= 0) continue;
        std::vector<int> exps;
        for (int i = 0; i < n; ++i) exps.push_back(adist(rng));
        if (2 * g - 2 + n <= 0) continue;

        // String: <tau_0 prod tau_ai>_g = sum_j <ldots tau_(aj-1) ldots>_g.
        {
            std::vector<int> with0 = exps;
            with0.push_back(0);
            Rat lhs = cache.integral(g, with0);
            Rat rhs(0);
            for (std::size_t j = 0; j < exps.size(); ++j) {
                if (exps[j] == 0) continue;
                std::vector<int> low = exps;
                --low[j];
                rhs += cache.integral(g, low);
            }
            CHECK(lhs == rhs);
        }
        // Dilaton: <tau_1 prod tau_ai>_g = (2g-2+n) <prod tau_ai>_g.
        {
            std::vector<int> with1 = exps;
            with1.push_back(1);
            Rat lhs = cache.integral(g, with1);
            Rat rhs = Rat(2 * g - 2 + n) * cache.integral(g, exps);
            CHECK(lhs == rhs);
        }
        ++tested;
    }
}

TEST_CASE("cache persistence round trip") {
    PsiCache cache;
    cache.integral(2, {4});
    cache.integral(2, {2, 3});
    std::string path = "psi_cache_test.json";
    cache.save(path);

    PsiCache loaded;
    loaded.load(path);
    CHECK(loaded.size() == cache.size());
    CHECK(loaded.integral(2, {4}) == rat(1, 1152));
    std::remove(path.c_str());
}

}  // TEST_SUITE
