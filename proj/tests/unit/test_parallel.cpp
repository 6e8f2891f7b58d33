#include <doctest.h>

#include <cstdlib>
#include <numeric>

#include "hoe/errors.hpp"
#include "hoe/parallel.hpp"

using namespace hoe;

TEST_CASE("parallel_map keeps index order for any worker count") {
    for (const char* threads : {"1", "3", "8"}) {
        setenv("HOE_THREADS", threads, 1);
        CHECK(worker_count() == static_cast<std::size_t>(std::atoi(threads)));
        const auto v = parallel_map(1000, [](std::size_t i) { return 3 * i + 1; });
        REQUIRE(v.size() == 1000);
        for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == 3 * i + 1);
    }
    CHECK(parallel_map(0, [](std::size_t i) { return i; }).empty());
    unsetenv("HOE_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("the lowest failing index is reported") {
    setenv("HOE_THREADS", "4", 1);
    try {
        (void)parallel_map(400, [](std::size_t i) -> int {
            if (i == 350 || i == 120 || i == 121) throw DomainError("bad sample");
            return 0;
        });
        FAIL("expected SampleError");
    } catch (const SampleError& e) {
        CHECK(e.index() == 120);
        CHECK(e.kind() == "DomainError");
    }
    unsetenv("HOE_THREADS");
}
