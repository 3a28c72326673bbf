// Compares the serial Euler-factor convolution kernel against the OpenMP
// segmented kernel on identical inputs, verifying that both produce the same
// table while timing them. Run: bench_sieve [max_bound]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ekron/sieve.hpp"

using namespace ekron;
namespace chrono = std::chrono;

namespace {

double time_once(const NumberField& field, std::uint64_t x, bool parallel, int threads) {
    SieveOptions opts;
    opts.parallel = parallel;
    omp_set_num_threads(threads);
    auto t0 = chrono::steady_clock::now();
    IdealCountTable table = build_table(field, x, {}, opts);
    auto t1 = chrono::steady_clock::now();
    // keep the table alive past the clock and sanity-check it
    if (table.a(1) != 1) std::abort();
    return chrono::duration<double>(t1 - t0).count();
}

void bench_field(const NumberField& field, std::uint64_t max_bound) {
    std::printf("field %-12s  %12s  %10s  %10s  %10s  %8s\n",
                field.spec_string().c_str(), "bound", "serial[s]", "par(1t)[s]", "par(max)[s]",
                "speedup");
    for (std::uint64_t x = 1000000; x <= max_bound; x *= 4) {
        double serial = time_once(field, x, false, 1);
        double par1 = time_once(field, x, true, 1);
        double parn = time_once(field, x, true, omp_get_num_procs());
        std::printf("%-18s  %12llu  %10.3f  %10.3f  %10.3f  %7.2fx\n", "",
                    static_cast<unsigned long long>(x), serial, par1, parn, serial / parn);

        // equality spot check at the smallest size per field
        if (x == 1000000) {
            IdealCountTable a = build_table_serial(field, x);
            SieveOptions opts;
            IdealCountTable b = build_table(field, x, {}, opts);
            if (a.counts() != b.counts()) {
                std::fprintf(stderr, "kernel mismatch at bound %llu!\n",
                             static_cast<unsigned long long>(x));
                std::exit(1);
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t max_bound = 16000000;
    if (argc > 1) max_bound = std::strtoull(argv[1], nullptr, 10);
    bench_field(NumberField::rationals(), max_bound);
    bench_field(NumberField::quadratic(-1), max_bound);
    bench_field(NumberField::cyclotomic(5), max_bound);
    return 0;
}
