// Exhaustive enumeration of rational points of bounded height for the
// in-scope families, with exact counts and provably complete search boxes.
//
// Engine notes:
//  - projective: Moebius inversion over the content of the coordinate vector
//    (exact; the naive sweep is kept in the tests as the oracle).
//  - cubic surface: iterate u and distribute the prime exponents of u^3 over
//    the magnitude triple (|x|,|y|,|z|); primitivity is the per-prime
//    condition min(a,b,c) = 0, and each magnitude triple carries 4 sign
//    patterns with xyz > 0.
//  - weighted torus: sweep reduced fractions (t1, t2) over the proven box
//    num,den(t1) <= B^{1/(m+2)}, num,den(t2) <= B, derived from the pure
//    powers x0^{m+2}, x1^{m+2} and the mixed section x0^2 x2 through the
//    product formula. Heights are evaluated in integer arithmetic on a
//    common denominator.
#pragma once

#include "ratcount/heights.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

namespace ratcount {

struct CountCurve {
    std::vector<std::pair<Rational, Integer>> samples; // (B, N), B strictly increasing
    std::string model_id;

    void validate() const
    {
        for (std::size_t i = 0; i < samples.size(); ++i) {
            if (samples[i].first <= 0) throw std::invalid_argument("CountCurve: bounds must be positive");
            if (samples[i].second < 0) throw std::invalid_argument("CountCurve: negative count");
            if (i > 0) {
                if (samples[i].first <= samples[i - 1].first)
                    throw std::invalid_argument("CountCurve: bounds must increase");
                if (samples[i].second < samples[i - 1].second)
                    throw std::invalid_argument("CountCurve: counts must be nondecreasing");
            }
        }
    }
};

// ---------------------------------------------------------------------------
// sieves

inline std::vector<int> mobius_up_to(long n)
{
    std::vector<int> mu(static_cast<std::size_t>(n) + 1, 1);
    std::vector<long> spf(static_cast<std::size_t>(n) + 1, 0);
    for (long i = 2; i <= n; ++i) {
        if (spf[static_cast<std::size_t>(i)] == 0)
            for (long j = i; j <= n; j += i)
                if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
    }
    for (long i = 2; i <= n; ++i) {
        long p = spf[static_cast<std::size_t>(i)];
        long rest = i / p;
        mu[static_cast<std::size_t>(i)] = (rest % p == 0) ? 0 : -mu[static_cast<std::size_t>(rest)];
    }
    return mu;
}

inline std::vector<long> spf_up_to(long n)
{
    std::vector<long> spf(static_cast<std::size_t>(n) + 1, 0);
    for (long i = 2; i <= n; ++i) {
        if (spf[static_cast<std::size_t>(i)] == 0)
            for (long j = i; j <= n; j += i)
                if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
    }
    return spf;
}

// ---------------------------------------------------------------------------
// projective space, standard height

// Sign-normalized primitive integer (n+1)-vectors of max-norm <= B:
// N = (1/2) sum_{d<=B} mu(d) ((2 floor(B/d) + 1)^{n+1} - 1).
inline Integer enumerate_projective(int n, long B)
{
    if (n < 1) throw std::invalid_argument("enumerate_projective: n must be >= 1");
    if (B < 0) throw std::invalid_argument("enumerate_projective: negative bound");
    if (B == 0) return 0;
    auto mu = mobius_up_to(B);
    Integer total = 0;
    for (long d = 1; d <= B; ++d) {
        if (mu[static_cast<std::size_t>(d)] == 0) continue;
        Integer box = pow_int(Integer(2 * (B / d) + 1), static_cast<unsigned long>(n + 1)) - 1;
        total += Integer(mu[static_cast<std::size_t>(d)]) * box;
    }
    return total / 2;
}

inline CountCurve projective_curve(int n, const std::vector<long>& schedule)
{
    CountCurve c;
    c.model_id = "projective-" + std::to_string(n);
    for (long B : schedule) c.samples.emplace_back(Rational(B), enumerate_projective(n, B));
    c.validate();
    return c;
}

// Heights histogram on P^n: number of points of height exactly h for
// h = 1..B (used by the zeta-function partial sums).
inline std::vector<Integer> projective_height_histogram(int n, long B)
{
    std::vector<Integer> hist(static_cast<std::size_t>(B) + 1, Integer(0));
    Integer prev = 0;
    for (long h = 1; h <= B; ++h) {
        Integer cur = enumerate_projective(n, h);
        hist[static_cast<std::size_t>(h)] = cur - prev;
        prev = cur;
    }
    return hist;
}

// ---------------------------------------------------------------------------
// cubic surface xyz = u^3

namespace detail {

struct CubicBuckets {
    // counts of points whose height falls in (schedule[i-1], schedule[i]]
    std::vector<Integer> bucket;
};

// distribute the exponents of u^3 over (|x|,|y|,|z|) with per-prime
// primitivity and magnitude bound; h = max of the triple.
inline void cubic_distribute(const std::vector<std::pair<long, int>>& pf, std::size_t idx,
                             std::int64_t X, std::int64_t Y, std::int64_t Z, std::int64_t bound,
                             const std::vector<std::int64_t>& schedule, std::vector<Integer>& bucket)
{
    if (idx == pf.size()) {
        std::int64_t h = std::max({X, Y, Z});
        auto it = std::lower_bound(schedule.begin(), schedule.end(), h);
        if (it != schedule.end()) bucket[static_cast<std::size_t>(it - schedule.begin())] += 4;
        return;
    }
    const auto [p, e3] = pf[idx];
    // powers of p; overflow-safe via division guards against the bound
    std::vector<std::int64_t> pw(static_cast<std::size_t>(e3) + 1, 1);
    for (int i = 1; i <= e3; ++i) pw[static_cast<std::size_t>(i)] = pw[static_cast<std::size_t>(i - 1)] * p;
    for (int a = 0; a <= e3; ++a) {
        if (pw[static_cast<std::size_t>(a)] > bound / X) break;
        std::int64_t Xa = X * pw[static_cast<std::size_t>(a)];
        for (int b = 0; a + b <= e3; ++b) {
            int cexp = e3 - a - b;
            if (a > 0 && b > 0 && cexp > 0) continue; // primitivity: min(a,b,c) = 0
            if (pw[static_cast<std::size_t>(b)] > bound / Y) break;
            std::int64_t Yb = Y * pw[static_cast<std::size_t>(b)];
            if (pw[static_cast<std::size_t>(cexp)] > bound / Z) continue;
            std::int64_t Zc = Z * pw[static_cast<std::size_t>(cexp)];
            cubic_distribute(pf, idx + 1, Xa, Yb, Zc, bound, schedule, bucket);
        }
    }
}

} // namespace detail

// Count curve for N(T, B) on the cubic surface over a sorted schedule of
// integer bounds. Deterministic and thread-count independent: u-ranges are
// processed in chunks whose partial buckets are added in chunk order.
inline CountCurve cubic_curve(const std::vector<long>& schedule, int threads = 1)
{
    if (schedule.empty()) throw std::invalid_argument("cubic_curve: empty schedule");
    std::vector<long> sched = schedule;
    std::sort(sched.begin(), sched.end());
    const long Bmax = sched.back();
    if (Bmax < 1) throw std::invalid_argument("cubic_curve: bounds must be >= 1");
    if (Bmax > 2000000) throw std::invalid_argument("cubic_curve: bound too large for this engine");
    auto spf = spf_up_to(std::max(Bmax, 2L));
    std::vector<std::int64_t> schedq(sched.begin(), sched.end());

    const int nthreads = std::max(1, threads);
    const long chunk = std::max(1L, (Bmax + nthreads - 1) / nthreads);
    std::vector<std::vector<Integer>> partial(static_cast<std::size_t>(nthreads),
                                              std::vector<Integer>(sched.size(), Integer(0)));
    auto work = [&](int tid) {
        long lo = 1 + tid * chunk, hi = std::min(Bmax, (tid + 1) * chunk);
        auto& bucket = partial[static_cast<std::size_t>(tid)];
        for (long u = lo; u <= hi; ++u) {
            std::vector<std::pair<long, int>> pf;
            long m = u;
            while (m > 1) {
                long p = spf[static_cast<std::size_t>(m)];
                int e = 0;
                while (m % p == 0) {
                    m /= p;
                    ++e;
                }
                pf.emplace_back(p, 3 * e);
            }
            detail::cubic_distribute(pf, 0, 1, 1, 1, Bmax, schedq, bucket);
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    std::vector<Integer> bucket(sched.size(), Integer(0));
    for (const auto& part : partial)
        for (std::size_t i = 0; i < bucket.size(); ++i) bucket[i] += part[i];

    CountCurve c;
    c.model_id = "cubic-xyz-u3";
    Integer acc = 0;
    for (std::size_t i = 0; i < sched.size(); ++i) {
        acc += bucket[i];
        c.samples.emplace_back(Rational(sched[i]), acc);
    }
    c.validate();
    return c;
}

inline Integer enumerate_cubic_surface_torus(long B, int threads = 1)
{
    return cubic_curve({B}, threads).samples.back().second;
}

// ---------------------------------------------------------------------------
// weighted projective torus P(1,1,m)

namespace detail {

// reduced fractions a/b with 0 < |a| <= num_bound, 0 < b <= den_bound
inline std::vector<std::pair<long, long>> reduced_fractions(long num_bound, long den_bound)
{
    std::vector<std::pair<long, long>> out;
    for (long b = 1; b <= den_bound; ++b)
        for (long a = 1; a <= num_bound; ++a)
            if (std::gcd(a, b) == 1) {
                out.emplace_back(a, b);
                out.emplace_back(-a, b);
            }
    return out;
}

} // namespace detail

namespace detail {

using u128 = unsigned __int128;

inline u128 u128_pow_checked(std::uint64_t base, int e)
{
    u128 r = 1;
    const u128 limit = ~u128(0) / (base ? base : 1);
    for (int i = 0; i < e; ++i) {
        if (r > limit) throw std::overflow_error("weighted enumeration: bound too large");
        r *= base;
    }
    return r;
}

inline u128 u128_gcd(u128 a, u128 b)
{
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace detail

// Curve of torus-point counts on P(1,1,m) in the anticanonical scale, over a
// sorted integer schedule. The height comparison runs in the exact power
// scale: H^m = prod_v max(1, |t1^M|_v, |t2^{m+2}|_v) with M = m(m+2) (the
// lattice-hull vertices of the section polytope of O(m(m+2))), which equals
// max(L, |a1|^M L / b1^M, |a2|^{m+2} L / b2^{m+2}) for reduced t1 = a1/b1,
// t2 = a2/b2 and L = lcm(b1^M, b2^{m+2}).
//
// Completeness of the sweep box: a point with H <= B has reduced t1 with
// num, den <= B^{1/(m+2)} (from the subfamily {x0^M, x1^M}) and reduced t2
// with num, den <= B (from {x0^M, (x0^2 x2)^m} and the product formula);
// validated against the grid oracle and by box stabilization in the tests.
inline CountCurve weighted_torus_curve(long m, const std::vector<long>& schedule, int threads = 1)
{
    if (m < 2) throw std::invalid_argument("weighted_torus_curve: m must be >= 2");
    if (schedule.empty()) throw std::invalid_argument("weighted_torus_curve: empty schedule");
    std::vector<long> sched = schedule;
    std::sort(sched.begin(), sched.end());
    const long Bmax = sched.back();
    if (Bmax < 1) throw std::invalid_argument("weighted_torus_curve: bounds must be >= 1");

    const int M = static_cast<int>(m * (m + 2));
    const int K = static_cast<int>(m + 2);
    const long box1 = iroot_floor(Integer(Bmax), static_cast<unsigned>(m + 2)).convert_to<long>() + 1;
    const long box2 = Bmax;
    auto t1s = detail::reduced_fractions(box1, box1);

    // schedule thresholds in the power scale (throws if B^m overflows)
    std::vector<detail::u128> sched_pow;
    for (long b : sched)
        sched_pow.push_back(detail::u128_pow_checked(static_cast<std::uint64_t>(b), static_cast<int>(m)));
    const detail::u128 Bm = sched_pow.back();

    // per-t1 data: |a1|^M and b1^M (sign pairs appear twice: both heights
    // are equal and both points count)
    struct T1 {
        detail::u128 a1M, b1M;
    };
    std::vector<T1> t1pow;
    for (const auto& [a1, b1] : t1s) {
        detail::u128 a1M = detail::u128_pow_checked(static_cast<std::uint64_t>(a1 < 0 ? -a1 : a1), M);
        detail::u128 b1M = detail::u128_pow_checked(static_cast<std::uint64_t>(b1), M);
        if (a1M > Bm || b1M > Bm) continue; // outside the proven box after slack
        t1pow.push_back({a1M, b1M});
    }

    const int nthreads = std::max(1, threads);
    std::vector<std::vector<Integer>> partial(static_cast<std::size_t>(nthreads),
                                              std::vector<Integer>(sched.size(), Integer(0)));
    const long chunk = std::max(1L, (box2 + nthreads - 1) / nthreads);

    auto work = [&](int tid) {
        auto& bucket = partial[static_cast<std::size_t>(tid)];
        const long lo = 1 + tid * chunk, hi = std::min(box2, (tid + 1) * chunk);
        for (long b2 = lo; b2 <= hi; ++b2) {
            detail::u128 b2K = detail::u128_pow_checked(static_cast<std::uint64_t>(b2), K);
            if (b2K > Bm) break; // larger denominators only grow the floor L
            for (long a2m = 1; a2m <= box2; ++a2m) {
                if (std::gcd(a2m, b2) != 1) continue;
                detail::u128 a2K = detail::u128_pow_checked(static_cast<std::uint64_t>(a2m), K);
                if (a2K > Bm) break;
                // the sign of t2 does not change the height: count 2 per hit
                for (const auto& t1 : t1pow) {
                    detail::u128 L = t1.b1M / detail::u128_gcd(t1.b1M, b2K) * b2K;
                    if (L > Bm) continue;
                    detail::u128 A1 = t1.a1M * (L / t1.b1M);
                    detail::u128 A2 = a2K * (L / b2K);
                    detail::u128 hm = std::max({L, A1, A2});
                    auto it = std::lower_bound(sched_pow.begin(), sched_pow.end(), hm);
                    if (it != sched_pow.end())
                        bucket[static_cast<std::size_t>(it - sched_pow.begin())] += 2;
                }
            }
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    std::vector<Integer> bucket(sched.size(), Integer(0));
    for (const auto& part : partial)
        for (std::size_t i = 0; i < bucket.size(); ++i) bucket[i] += part[i];

    CountCurve c;
    c.model_id = "weighted-1-1-" + std::to_string(m);
    Integer acc = 0;
    for (std::size_t i = 0; i < sched.size(); ++i) {
        acc += bucket[i];
        c.samples.emplace_back(Rational(sched[i]), acc);
    }
    c.validate();
    return c;
}

inline Integer enumerate_weighted_torus(long m, long B, int threads = 1)
{
    return weighted_torus_curve(m, {B}, threads).samples.back().second;
}

// ---------------------------------------------------------------------------
// grid oracle

struct GridBox {
    long num_bound = 1;
    long den_bound = 1;
};

// Exhaustive sweep over reduced fractions in an explicit box; the caller
// owns completeness of the box. Reference oracle for the fast engines.
inline Integer torus_grid_enumerate(const HeightModel& model, const Rational& B, const GridBox& box)
{
    int dim = 0;
    if (model.kind == HeightModel::Kind::ToricPL)
        dim = model.phi.fan.dim;
    else if (model.kind == HeightModel::Kind::WeightedMonomial)
        dim = static_cast<int>(model.weights.size()) - 1;
    else
        throw std::invalid_argument("torus_grid_enumerate: unsupported model kind");

    auto fractions = detail::reduced_fractions(box.num_bound, box.den_bound);
    std::vector<Rational> values;
    for (const auto& [a, b] : fractions) values.push_back(make_rational(a, b));

    // weighted models are compared in their exact power scale
    const Rational b_power = (model.kind == HeightModel::Kind::WeightedMonomial)
                                 ? pow_rat(B, model.normalization_degree.convert_to<long>())
                                 : B;
    Integer count = 0;
    std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
    QVec point(static_cast<std::size_t>(dim));
    while (true) {
        for (int i = 0; i < dim; ++i) point[static_cast<std::size_t>(i)] = values[idx[static_cast<std::size_t>(i)]];
        bool inside;
        if (model.kind == HeightModel::Kind::ToricPL)
            inside = toric_height(TorusPoint::of(point), model.phi) <= B;
        else
            inside = weighted_model_torus_height_power(point, model) <= b_power;
        if (inside) ++count;
        int pos = dim - 1;
        while (pos >= 0) {
            if (++idx[static_cast<std::size_t>(pos)] < values.size()) break;
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return count;
}

// ---------------------------------------------------------------------------
// saturation diagnostics

// Pointwise ratios N_sub / N_whole over a shared schedule; 0/0 is an
// undefined marker.
inline std::vector<std::pair<Rational, std::optional<Rational>>>
saturation_ratios(const CountCurve& sub, const CountCurve& whole)
{
    if (sub.samples.size() != whole.samples.size())
        throw std::invalid_argument("saturation_ratios: schedules differ");
    std::vector<std::pair<Rational, std::optional<Rational>>> out;
    for (std::size_t i = 0; i < sub.samples.size(); ++i) {
        if (sub.samples[i].first != whole.samples[i].first)
            throw std::invalid_argument("saturation_ratios: schedules differ");
        if (whole.samples[i].second == 0) {
            out.emplace_back(sub.samples[i].first, std::nullopt);
        } else {
            out.emplace_back(sub.samples[i].first,
                             make_rational(sub.samples[i].second, whole.samples[i].second));
        }
    }
    return out;
}

} // namespace ratcount
