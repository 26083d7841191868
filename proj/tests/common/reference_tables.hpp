#pragma once

// Published separatrix-slope tables for the two cube-root equations, plus the
// quartic oscillator column, used as ground truth by the asymptotics tests
// and the acceptance suite.

#include <array>

namespace reference {

// y'' = -2 y' y + 4 x^3 (quartic potential), slopes y'_n(0), n = 0..8
inline constexpr std::array<double, 9> kQuarticSlopes = {
    -1.06036209, -7.45569793, -16.26182601, -26.52847118, -37.92300102,
    -50.25625451, -63.40304698, -77.27320048, -91.79806681,
};

// y'' = -(4/3) y' y^3 + x, slopes y'_n(0), n = 0..25
inline constexpr std::array<double, 26> kCubeRootXSlopes = {
    -1.00243383,  -2.94953545,  -4.60069679,  -6.11303401,  -7.53640737,
    -8.89523799,  -10.20390084, -11.47180488, -12.70555477, -13.91002352,
    -15.08894332, -16.24525712, -17.38134027, -18.49914706, -19.60031125,
    -20.68621727, -21.75805200, -22.81684331, -23.86348925, -24.89878065,
    -25.92341874, -26.93802924, -27.94317361, -28.93935824, -29.92704197,
    -30.90664231,
};

// y'' = -(4/3) y' y^3 + x y, slopes y'_n(0), n = 0..15
inline constexpr std::array<double, 16> kCubeRootXYSlopes = {
    -0.89134081, -1.21797331, -1.48616058, -1.71029522, -1.90473552, -2.07799763,
    -2.23533407, -2.38019349, -2.51496483, -2.64137602, -2.76072118, -2.87399742,
    -2.98199128, -3.08533557, -3.18454800, -3.28005827,
};

}  // namespace reference
