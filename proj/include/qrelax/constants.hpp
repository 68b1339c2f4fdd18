#pragma once

namespace qrelax::tol {

// Numerical tolerances used by contract checks across the library.
// RunConfig can override the ones marked overridable.
inline constexpr double kOrthogonality = 1e-10;     // U^T U vs identity
inline constexpr double kEigenResidual = 1e-8;      // |H v - E v| per component, units of lambda
inline constexpr double kNorm = 1e-10;              // wave packet normalization
inline constexpr double kSymmetryInput = 1e-12;     // relative asymmetry accepted by diagonalize
inline constexpr double kSymmetryIngest = 1e-10;    // relative asymmetry warned on ingest (overridable)
inline constexpr double kTraceless = 1e-12;         // sum of generated Q eigenvalues
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kOverlap = 1e-10;
inline constexpr double kComposability = 1e-9;
inline constexpr double kDecomposition = 1e-10;     // three-term normalization sum
inline constexpr double kStrengthMass = 1e-10;

} // namespace qrelax::tol
