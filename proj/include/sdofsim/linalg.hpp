// sdofsim - Monte Carlo simulator for secure multi-user MISO downlink transmission
// Copyright (C) 2026 the sdofsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sdofsim/errors.hpp"

namespace sdofsim::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Relative tolerance deciding the numerical rank of a matrix,
/// measured against the largest column-pivoted QR pivot.
inline constexpr double kRankRelTol = 1e-10;

/// Entries below this magnitude are treated as zero when fixing the
/// global phase of a unit vector.
inline constexpr double kPhaseEntryTol = 1e-12;

/// Allowed deviation of a UnitVector's Euclidean norm from 1.
inline constexpr double kUnitNormTol = 1e-12;

/// Complex vector with Euclidean norm 1 (validated on construction).
class UnitVector {
  public:
    explicit UnitVector(ComplexVector coeffs);

    /// Scales an arbitrary nonzero vector to unit norm and applies the
    /// canonical phase convention (see apply_phase_convention).
    static UnitVector normalized(ComplexVector coeffs);

    const ComplexVector& coeffs() const { return coeffs_; }
    Eigen::Index dim() const { return coeffs_.size(); }

  private:
    ComplexVector coeffs_;
};

/// Multiplies the vector by a unit-modulus factor so that its first entry of
/// magnitude above kPhaseEntryTol becomes real and positive. Makes vectors
/// that are unique only up to phase comparable by plain subtraction.
ComplexVector apply_phase_convention(ComplexVector v);

/// Unit vector v with a*v = 0, for a full-row-rank a with rows < cols.
///
/// When the null space has dimension greater than one, the first vector of
/// the deterministic orthonormal basis produced by null_space_basis() is
/// returned. Throws DimensionError if rows >= cols and RankDeficientError if
/// the numerical rank of a is below its row count.
UnitVector null_space_unit_vector(const ComplexMatrix& a);

/// Deterministic orthonormal basis of the numerical null space of a
/// (rows <= cols required). Size of the result is cols - rank(a). The basis
/// comes from a column-pivoted Householder QR of the adjoint of a; basis
/// vectors appear in ascending factorization order and each one carries the
/// canonical phase convention. An empty input (zero rows) yields the
/// standard basis of the full space.
std::vector<UnitVector> null_space_basis(const ComplexMatrix& a);

/// log2(det(m)) for a Hermitian positive definite m, via Cholesky.
/// Throws NotHermitianError / NotPositiveDefiniteError.
double log_det_hermitian_pd(const ComplexMatrix& m);

} // namespace sdofsim::linalg
