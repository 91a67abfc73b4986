// Compares the OpenMP kernel against the serial reference: same numbers
// (bit identical by construction), wall time for both.
#include <chrono>
#include <cstdio>
#include <cstring>

#include "wfl/wills.hpp"

using namespace wfl;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t samples = 2000000;
    if (argc > 1) samples = std::strtoull(argv[1], nullptr, 10);

    MCConfig par;
    par.samples = samples;
    MCConfig ser = par;
    ser.serial = true;

    WeightFunction u = classical_weight();
    struct Case {
        const char* name;
        BodyPtr k;
    };
    std::vector<Case> cases = {
        {"ball3", ball(3, 1.0)},
        {"cube4", cube(4, 0.0, 1.0)},
        {"ball3+cube3", minkowski_sum(ball(3, 1.0), cube(3, 0.0, 1.0))},
    };

    std::printf("%-14s %12s %10s %10s %8s %s\n", "body", "W (mc)", "serial s", "openmp s",
                "speedup", "identical");
    int mismatches = 0;
    for (const Case& c : cases) {
        BodyPtr e = ball(c.k->dim, 1.0);
        auto t0 = std::chrono::steady_clock::now();
        ValueWithError ws = wills_mc(*c.k, *e, u, ser);
        double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        ValueWithError wp = wills_mc(*c.k, *e, u, par);
        double tp = seconds_since(t0);
        bool same = std::memcmp(&ws.value, &wp.value, sizeof(double)) == 0 &&
                    std::memcmp(&ws.stderr_, &wp.stderr_, sizeof(double)) == 0;
        if (!same) ++mismatches;
        std::printf("%-14s %12.6f %10.3f %10.3f %8.2fx %s\n", c.name, wp.value, ts, tp, ts / tp,
                    same ? "yes" : "NO");
    }
    return mismatches;
}
