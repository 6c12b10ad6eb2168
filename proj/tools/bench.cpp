#include "gmra/demo_data.hpp"
#include "gmra/diagnostics.hpp"

#include <chrono>
#include <cstdio>

using namespace gmra;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_entry_diff(const RealLineGrid& a, const RealLineGrid& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        worst = std::max(worst, (a.samples[i] - b.samples[i]).cwiseAbs().maxCoeff());
    return worst;
}

} // namespace

int main() {
    OperatorContext ctx(demo::journe_filter());
    const int depth = 25;
    const Rational xmax = rat(8);
    const Rational step = rat(1, 2240);

    auto t0 = std::chrono::steady_clock::now();
    RealLineGrid serial = scaling_product(ctx, 2, depth, xmax, step, false);
    double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    RealLineGrid parallel = scaling_product(ctx, 2, depth, xmax, step, true);
    double t_parallel = seconds_since(t0);

    double drift = max_entry_diff(serial, parallel);
    std::printf("scaling product (%zu points, depth %d)\n", serial.size(), depth);
    std::printf("  serial   %8.3f s\n", t_serial);
    std::printf("  parallel %8.3f s  (speedup %.2fx)\n", t_parallel, t_serial / t_parallel);
    std::printf("  max |serial - parallel| = %.3e\n", drift);

    t0 = std::chrono::steady_clock::now();
    GramReport g_serial = gram_multiplicity(serial, 8, kDefaultRankTol, false);
    double tg_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    GramReport g_parallel = gram_multiplicity(serial, 8, kDefaultRankTol, true);
    double tg_parallel = seconds_since(t0);

    std::size_t rank_diffs = 0;
    for (std::size_t i = 0; i < g_serial.ranks.size(); ++i)
        if (g_serial.ranks[i] != g_parallel.ranks[i]) ++rank_diffs;
    std::printf("gram ranks (%zu circle points, translates |k| <= 8)\n", g_serial.points.size());
    std::printf("  serial   %8.3f s\n", tg_serial);
    std::printf("  parallel %8.3f s  (speedup %.2fx)\n", tg_parallel, tg_serial / tg_parallel);
    std::printf("  rank disagreements = %zu\n", rank_diffs);

    return drift <= 1e-13 && rank_diffs == 0 ? 0 : 1;
}
