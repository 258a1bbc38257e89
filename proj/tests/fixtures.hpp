#pragma once

#include "support.hpp"

#include "prevtrop/sysfan.hpp"

namespace fixtures {

using namespace prevtrop;
using testing_support::ivs;

inline Cone ray(std::initializer_list<long> v)
{
    return Cone::from_generators(v.size(), ivs({v}));
}

inline Cone cone(std::size_t n, std::initializer_list<std::initializer_list<long>> rays)
{
    return Cone::from_generators(n, ivs(rays));
}

// Two copies of the affine line glued along the torus.
inline SystemOfFans line_two_origins()
{
    Fan chart(1, {ray({1})});
    Fan torus(1, {Cone::zero(1)});
    return SystemOfFans(1, {"1", "2"}, {{chart, torus}, {torus, chart}});
}

inline SystemOfFans affine_line()
{
    return SystemOfFans::single(Fan(1, {ray({1})}));
}

inline SystemOfFans affine_plane()
{
    return SystemOfFans::single(Fan(2, {Cone::orthant(2)}));
}

inline SystemOfFans projective_line()
{
    return SystemOfFans::single(Fan(1, {ray({1}), ray({-1})}));
}

// The projective line with its two affine charts.
inline SystemOfFans projective_line_two_charts()
{
    Fan torus(1, {Cone::zero(1)});
    return SystemOfFans(1, {"1", "2"},
                        {{Fan(1, {ray({1})}), torus}, {torus, Fan(1, {ray({-1})})}});
}

inline SystemOfFans p1_times_p1()
{
    return SystemOfFans::single(Fan(2, {cone(2, {{1, 0}, {0, 1}}), cone(2, {{-1, 0}, {0, 1}}),
                                        cone(2, {{-1, 0}, {0, -1}}), cone(2, {{1, 0}, {0, -1}})}));
}

inline SystemOfFans projective_plane()
{
    return SystemOfFans::single(
        Fan(2, {cone(2, {{1, 0}, {0, 1}}), cone(2, {{0, 1}, {-1, -1}}), cone(2, {{-1, -1}, {1, 0}})}));
}

inline SystemOfFans point()
{
    return SystemOfFans::single(Fan(0, {Cone::zero(0)}));
}

inline std::vector<SystemOfFans> all_systems()
{
    return {line_two_origins(), affine_line(),  affine_plane(), projective_line(),
            projective_line_two_charts(), p1_times_p1(), projective_plane(), point()};
}

}  // namespace fixtures
