#pragma once

#include <array>
#include <vector>

namespace dms::reference {

/// Reference nonnegative detunings Delta0 T with a = -1 for the Rosen-Zener
/// model, indexed by l = chi T / 2 (entry 0 is chi T = 2). Three decimals.
inline const std::array<std::vector<double>, 15>& rz_minus_one_table() {
  static const std::array<std::vector<double>, 15> table{{
      {0.0},
      {1.732},
      {0.0, 4.796},
      {1.113, 9.207},
      {0.0, 2.756, 14.913},
      {0.943, 4.936, 21.903},
      {0.0, 2.243, 7.595, 30.171},
      {0.855, 3.916, 10.708, 39.715},
      {0.0, 1.988, 5.907, 14.265, 50.534},
      {0.799, 3.418, 8.195, 18.260, 62.627},
      {0.0, 1.830, 5.098, 10.766, 22.687, 75.993},
      {0.759, 3.113, 7.006, 13.613, 27.545, 90.634},
      {0.0, 1.719, 4.606, 9.130, 16.729, 32.833, 106.549},
      {0.728, 2.901, 6.289, 11.461, 20.113, 38.548, 123.736},
      {0.0, 1.636, 4.268, 8.150, 13.994, 23.760, 44.690, 142.198},
  }};
  return table;
}

}  // namespace dms::reference
