#include <benchmark/benchmark.h>

// libbenchmark_main.a in the distro package is LTO bytecode from another GCC.
BENCHMARK_MAIN();
