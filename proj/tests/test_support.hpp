// Shared generators for the property-style tests.

#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "rendezvous/policies.hpp"
#include "rendezvous/rational.hpp"

namespace rendezvous::testing {

/// Uniform-ish rational in [lo, hi) with denominator up to max_den.
inline Rational random_rational(std::mt19937_64& rng, const Rational& lo, const Rational& hi,
                                long max_den = 997) {
    std::uniform_int_distribution<long> den_dist(1, max_den);
    const long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(0, den - 1);
    return lo + (hi - lo) * Rational(num_dist(rng), den);
}

/// 0-6 strictly increasing turn points in (0, 3n) with denominators <= 64.
inline TurnSchedule random_schedule(std::mt19937_64& rng, const Rational& n) {
    std::uniform_int_distribution<int> count_dist(0, 6);
    std::uniform_int_distribution<long> den_dist(1, 64);
    const int count = count_dist(rng);
    std::vector<Rational> pts;
    while (static_cast<int>(pts.size()) < count) {
        const long den = den_dist(rng);
        // numerator in [1, 3n*den - 1] keeps the point strictly inside (0, 3n)
        const Rational top = Rational(3) * n * Rational(den) - 1;
        std::uniform_int_distribution<long> num_dist(1, static_cast<long>(top.to_double()));
        Rational p = Rational(num_dist(rng), den);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) {
            pts.push_back(std::move(p));
        }
    }
    std::sort(pts.begin(), pts.end());
    return TurnSchedule(std::move(pts));
}

}  // namespace rendezvous::testing
