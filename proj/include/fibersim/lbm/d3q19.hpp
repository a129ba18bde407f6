#pragma once

#include <array>

namespace fibersim::lbm {

inline constexpr int kQ = 19;

/// Rest, six axis directions, then twelve diagonals; q and q + 1 are opposite for odd q.
inline constexpr std::array<std::array<int, 3>, kQ> kC{{
    {0, 0, 0},
    {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
    {1, 1, 0}, {-1, -1, 0}, {1, -1, 0}, {-1, 1, 0},
    {1, 0, 1}, {-1, 0, -1}, {1, 0, -1}, {-1, 0, 1},
    {0, 1, 1}, {0, -1, -1}, {0, 1, -1}, {0, -1, 1},
}};

inline constexpr std::array<double, kQ> kW{
    1.0 / 3,
    1.0 / 18, 1.0 / 18, 1.0 / 18, 1.0 / 18, 1.0 / 18, 1.0 / 18,
    1.0 / 36, 1.0 / 36, 1.0 / 36, 1.0 / 36, 1.0 / 36, 1.0 / 36,
    1.0 / 36, 1.0 / 36, 1.0 / 36, 1.0 / 36, 1.0 / 36, 1.0 / 36,
};

constexpr int opposite(int q) { return q == 0 ? 0 : (q % 2 ? q + 1 : q - 1); }

/// Squared lattice speed of sound, c_s^2 = 1/3 in lattice units.
inline constexpr double kCs2 = 1.0 / 3.0;

}  // namespace fibersim::lbm
