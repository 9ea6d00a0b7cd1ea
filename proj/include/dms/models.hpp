#pragma once

#include "dms/core.hpp"

namespace dms {

/// Cayley-Klein parameter a = [U(+inf, -inf)]_11 of the bright/excited
/// two-state problem for the model.
///
/// Resonance carries the exact b = -i sin(A/2). The other models report
/// b = -i sqrt(1 - |a|^2) with b_phase_exact = false; single-state
/// populations only need |b|.
///
/// The Rabi value is given for the Hamiltonian with the detuning on the
/// excited diagonal (ground energy zero), which multiplies the symmetric-frame
/// expression by exp(-i Delta0 T) and flips the sign of its imaginary term.
CayleyKlein cayley_klein(const ModelSpec& model);

/// |a|^2 = 1 - sin^2(pi alpha) / cosh^2(pi delta) for the Rosen-Zener model.
double rz_abs_a_squared(double alpha, double delta);

/// Rosen-Zener a at integer alpha = l:
///   a = (-1)^l prod_{k=0}^{l-1} (2k+1 - i Delta0 T) / (2k+1 + i Delta0 T).
Complex rz_integer_alpha_a(int l, double delta0_T);

}  // namespace dms
