// Independent oracles used by the test and acceptance suites. These live
// outside the library on purpose: they re-derive quantities along different
// routes (residue counting, Monte Carlo quadrature, naive sweeps) and must
// not share code with the implementation paths they check.
#pragma once

#include "ratcount/pl_function.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracles {

using ratcount::Integer;
using ratcount::Rational;

// ---------------------------------------------------------------------------
// p-adic volume by brute-force residue counting.
//
// A chart is a polydisc: coordinate i ranges over Z_p (or pZ_p when
// restricted), and carries an optional divisor exponent r_i >= 0; the chart
// integrand is prod |x_i|^{r_i}. The chart volume is the sum over residue
// cells mod p^k of the cell mass, with the deepest cell (x ≡ 0 mod p^k)
// accounted exactly through the geometric series
//   ∫_{|x| <= p^{-k}} |x|^r dx = (1 - 1/p) p^{-k(r+1)} / (1 - p^{-(r+1)}).

struct PadicChart {
    int n = 1;                        // coordinates
    std::vector<bool> restricted;     // coordinate confined to pZ_p
    std::vector<long> exponent;       // r_i >= 0
};

inline Rational padic_chart_volume(const PadicChart& chart, long p, int k = 3)
{
    using ratcount::make_rational;
    using ratcount::pow_int;
    const Integer P(p);
    const Integer Pk = pow_int(P, static_cast<unsigned long>(k));

    // per-coordinate class list: (mass contribution summed over residues)
    // masses already include the 1/p^k cell normalization
    std::vector<Rational> coord_sum(static_cast<std::size_t>(chart.n), Rational(0));
    for (int i = 0; i < chart.n; ++i) {
        const long r = chart.exponent[static_cast<std::size_t>(i)];
        Rational total = 0;
        for (Integer x = 0; x < Pk; ++x) {
            if (chart.restricted[static_cast<std::size_t>(i)] && x % P != 0) continue;
            if (x == 0) {
                // exact tail of the zero cell
                Rational tail = make_rational(P - 1, P) *
                                make_rational(Integer(1), pow_int(P, static_cast<unsigned long>(k * (r + 1))));
                tail /= (Rational(1) - make_rational(Integer(1), pow_int(P, static_cast<unsigned long>(r + 1))));
                total += tail;
                continue;
            }
            long v = 0;
            Integer y = x;
            while (y % P == 0) {
                ++v;
                y /= P;
            }
            // weight |x|^r = p^{-vr}; cell mass p^{-k}
            total += make_rational(Integer(1), pow_int(P, static_cast<unsigned long>(k + v * r)));
        }
        coord_sum[static_cast<std::size_t>(i)] = total;
    }
    Rational vol = 1;
    for (const auto& s : coord_sum) vol *= s;
    return vol;
}

inline Rational padic_volume(const std::vector<PadicChart>& charts, long p, int k = 3)
{
    Rational vol = 0;
    for (const auto& c : charts) vol += padic_chart_volume(c, p, k);
    return vol;
}

// Standard chart decompositions of the configurations used in the tests.

// P^1 with rigid divisors at 0 and infinity, multiplicity r each.
inline std::vector<PadicChart> p1_two_points(long r)
{
    return {PadicChart{1, {false}, {r}}, PadicChart{1, {true}, {r}}};
}

// P^1 with a single rigid point, multiplicity r.
inline std::vector<PadicChart> p1_one_point(long r)
{
    return {PadicChart{1, {false}, {r}}, PadicChart{1, {true}, {0}}};
}

// P^2 with one rigid coordinate line, multiplicity r.
inline std::vector<PadicChart> p2_line(long r)
{
    return {PadicChart{2, {false, false}, {0, 0}},
            PadicChart{2, {true, false}, {r, 0}},
            PadicChart{2, {true, true}, {r, 0}}};
}

// ---------------------------------------------------------------------------
// Monte Carlo quadrature for 2^dim * integral of e^{-phi} over N_R, with a
// product-Laplace importance proposal of rate lambda per coordinate.

inline double tau_archimedean_mc(const ratcount::PLFunction& phi, double lambda,
                                 std::uint64_t samples, std::uint64_t seed = 20240811)
{
    const int d = phi.fan.dim;
    std::vector<std::vector<double>> forms;
    for (const auto& m : phi.cone_forms) {
        std::vector<double> f;
        for (const auto& c : m) f.push_back(ratcount::to_double(c));
        forms.push_back(f);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto sample_laplace = [&]() {
        double u = unif(rng) - 0.5;
        double mag = -std::log(1.0 - 2.0 * std::fabs(u)) / lambda;
        return u < 0 ? -mag : mag;
    };
    double acc = 0.0;
    std::vector<double> y(static_cast<std::size_t>(d));
    for (std::uint64_t s = 0; s < samples; ++s) {
        double logg = 0.0;
        for (int i = 0; i < d; ++i) {
            y[static_cast<std::size_t>(i)] = sample_laplace();
            logg += std::log(lambda / 2.0) - lambda * std::fabs(y[static_cast<std::size_t>(i)]);
        }
        double val = -1e300;
        for (const auto& f : forms) {
            double v = 0.0;
            for (int i = 0; i < d; ++i) v += f[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
            val = std::max(val, v);
        }
        acc += std::exp(-val - logg);
    }
    return std::ldexp(1.0, d) * acc / static_cast<double>(samples);
}

} // namespace oracles
