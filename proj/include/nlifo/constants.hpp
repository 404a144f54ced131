#pragma once

namespace nlifo {

inline constexpr double c_light = 299792458.0;  // m/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace nlifo
