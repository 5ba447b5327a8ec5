// Acceptance runner: one criterion per invocation (ctest registers C1..C14),
// or all of them with no arguments.

#include <cstdio>
#include <cstring>
#include <exception>

#include "tlab/acceptance.hpp"

int main(int argc, char** argv) {
    try {
        if (argc >= 2) {
            int idx = 0;
            if (sscanf(argv[1], "C%d", &idx) != 1 && sscanf(argv[1], "%d", &idx) != 1) {
                fprintf(stderr, "usage: acceptance [C1..C%d]\n", tlab::kNumCriteria);
                return 2;
            }
            auto r = tlab::run_criterion(idx);
            printf("[%s] C%-2d %-18s %6.1fs  %s\n", r.pass ? "PASS" : "FAIL", r.index,
                   r.name.c_str(), r.seconds, r.detail.c_str());
            return r.pass ? 0 : 1;
        }
        return tlab::run_suite_printed("all") ? 0 : 1;
    } catch (const std::exception& e) {
        fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
