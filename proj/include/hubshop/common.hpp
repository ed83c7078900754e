#pragma once

// Shared plumbing: error types, the reproducible RNG used by the generator
// and the metaheuristic, and small formatting helpers.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hubshop {

// Thrown on malformed or version-mismatched files (JSON schemas, LP format).
class SchemaError : public std::runtime_error {
public:
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a solution handed to evaluate_solution fails its preconditions.
class FeasibilityError : public std::runtime_error {
public:
    explicit FeasibilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown by the solver on numerical breakdown; never a silent wrong answer.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// SplitMix64. Chosen because it is trivially portable: identical output on
// every platform and standard library, which the reproducibility contract
// (identical seeds -> byte-identical instances) depends on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_unit() * static_cast<double>(hi - lo + 1));
    }

private:
    std::uint64_t state_;
};

// FNV-1a, used to derive one independent stream per parameter family from
// (masterSeed, family tag) so adding a family never perturbs the others.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline Rng family_stream(std::uint64_t master_seed, const std::string& family) {
    // One extra SplitMix64 scramble decorrelates nearby master seeds.
    Rng mix(master_seed ^ fnv1a64(family));
    return Rng(mix.next_u64());
}

// Round half up; the generator's documented rounding for integer-valued draws.
inline double round_half_up(double v) { return std::floor(v + 0.5); }

// Shortest exact decimal for a double: round-trips through strtod bit-exactly.
// Integers print as plain digits (never exponent form).
inline std::string format_double(double v) {
    char buf[40];
    if (v == std::floor(v) && std::fabs(v) < 1e15) {
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Prefer the shorter form when it round-trips exactly.
    for (int prec = 1; prec < 17; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        if (std::strtod(probe, nullptr) == v) return probe;
    }
    return buf;
}

}  // namespace hubshop
