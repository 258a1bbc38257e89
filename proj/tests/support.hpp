#pragma once

#include "prevtrop/exactla.hpp"

#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using prevtrop::Integer;
using prevtrop::IntMatrix;
using prevtrop::IntVector;
using prevtrop::Rational;
using prevtrop::RatVector;

inline std::uint64_t seed()
{
    if (const char* s = std::getenv("PREVTROP_SEED"))
        return std::stoull(s);
    return 20240611;
}

inline IntVector iv(std::initializer_list<long> xs)
{
    IntVector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

inline RatVector rv(std::initializer_list<long> xs)
{
    RatVector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

inline std::vector<IntVector> ivs(std::initializer_list<std::initializer_list<long>> rows)
{
    std::vector<IntVector> out;
    for (auto r : rows)
        out.push_back(iv(r));
    return out;
}

inline IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows)
{
    auto vs = ivs(rows);
    std::size_t cols = vs.empty() ? 0 : vs.front().size();
    return IntMatrix::from_rows(vs, cols);
}

inline IntMatrix random_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols, long bound)
{
    std::uniform_int_distribution<long> dist(-bound, bound);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = dist(gen);
    return m;
}

// Every vector in [-bound, bound]^n, in lexicographic order.
inline std::vector<IntVector> box(std::size_t n, long bound)
{
    std::vector<IntVector> out;
    IntVector cur(n, Integer(-bound));
    if (n == 0)
        return {IntVector{}};
    while (true) {
        out.push_back(cur);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (cur[i] < bound) {
                cur[i] += 1;
                break;
            }
            cur[i] = -bound;
            if (i == 0)
                return out;
        }
    }
}

}  // namespace testing_support
