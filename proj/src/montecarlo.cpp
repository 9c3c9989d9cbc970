#include "quadwalk/montecarlo.hpp"

#include "quadwalk/errors.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace quadwalk {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-path stream state derived from (seed, path index).
std::uint64_t path_state(std::uint64_t seed, std::uint64_t path) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = a ^ (path * 0xd1b54a32d192ed03ULL);
    return splitmix64(t);
}

double uniform01(std::uint64_t& state) { return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53; }

McEstimate simulate(const StepDistribution& sd, Point x, std::optional<Point> y, long n, long reps,
                    std::uint64_t seed, const McOptions& opts) {
    if (reps < 1) throw InputError(ErrorCode::BadArgument, "reps must be >= 1");
    if (n < 0) throw InputError(ErrorCode::NegativeHorizon, "n must be >= 0");
    if (!opts.spec.survives(x)) throw InputError(ErrorCode::OutsideRegion, "start point is outside the survival region");

    std::vector<double> cdf;
    std::vector<Point> jumps;
    double acc = 0.0;
    for (const auto& a : sd.atoms()) {
        acc += a.weight / sd.total_weight();
        cdf.push_back(acc);
        jumps.push_back({a.dx, a.dy});
    }
    cdf.back() = 1.0;

    auto run_path = [&](long i) {
        std::uint64_t st = path_state(seed, static_cast<std::uint64_t>(i));
        Point z = x;
        for (long k = 0; k < n; ++k) {
            const double u = uniform01(st);
            std::size_t j = 0;
            while (cdf[j] <= u) ++j;
            z.x1 += jumps[j].x1;
            z.x2 += jumps[j].x2;
            if (!opts.spec.survives(z)) return false;
        }
        return !y || (z.x1 == y->x1 && z.x2 == y->x2);
    };

    const unsigned threads = std::max(1u, opts.threads);
    const long chunk = 4096;
    std::atomic<long> next{0};
    std::atomic<long> hits{0};
    auto work = [&] {
        long local = 0;
        for (long start; (start = next.fetch_add(chunk)) < reps;) {
            const long stop = std::min(reps, start + chunk);
            for (long i = start; i < stop; ++i) local += run_path(i) ? 1 : 0;
        }
        hits += local;
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    McEstimate est;
    est.reps = reps;
    est.seed = seed;
    est.hits = hits.load();
    est.mean = static_cast<double>(est.hits) / static_cast<double>(reps);
    est.half_width_95 = 1.96 * std::sqrt(est.mean * (1.0 - est.mean) / static_cast<double>(reps));
    return est;
}

} // namespace

McEstimate simulate_survival(const StepDistribution& sd, Point x, long n, long reps, std::uint64_t seed,
                             const McOptions& opts) {
    return simulate(sd, x, std::nullopt, n, reps, seed, opts);
}

McEstimate simulate_local(const StepDistribution& sd, Point x, Point y, long n, long reps, std::uint64_t seed,
                          const McOptions& opts) {
    return simulate(sd, x, y, n, reps, seed, opts);
}

unsigned default_threads() {
    if (const char* env = std::getenv("QUADWALK_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

} // namespace quadwalk
