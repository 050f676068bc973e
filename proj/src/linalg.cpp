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

#include "sdofsim/linalg.hpp"

#include <cmath>
#include <string>

namespace sdofsim::linalg {

namespace {

void require_finite(const ComplexMatrix& a, const char* op) {
    if (!a.allFinite()) {
        throw DimensionError(std::string(op) + ": input has non-finite entries");
    }
}

} // namespace

UnitVector::UnitVector(ComplexVector coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) {
        throw DimensionError("UnitVector: dimension must be positive");
    }
    if (std::abs(coeffs_.norm() - 1.0) > kUnitNormTol) {
        throw std::invalid_argument("UnitVector: norm deviates from 1 beyond tolerance");
    }
}

UnitVector UnitVector::normalized(ComplexVector coeffs) {
    const double n = coeffs.norm();
    if (n == 0.0) {
        throw std::invalid_argument("UnitVector::normalized: zero vector");
    }
    return UnitVector(apply_phase_convention(coeffs / n));
}

ComplexVector apply_phase_convention(ComplexVector v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > kPhaseEntryTol) {
            const Complex phase = v[i] / mag;
            v *= std::conj(phase);
            return v;
        }
    }
    return v;
}

UnitVector null_space_unit_vector(const ComplexMatrix& a) {
    if (a.rows() >= a.cols()) {
        throw DimensionError("null_space_unit_vector: requires rows < cols, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    require_finite(a, "null_space_unit_vector");

    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(a.adjoint());
    qr.setThreshold(kRankRelTol);
    if (qr.rank() < a.rows()) {
        throw RankDeficientError("null_space_unit_vector: numerical rank " +
                                 std::to_string(qr.rank()) + " below row count " +
                                 std::to_string(a.rows()));
    }

    const ComplexMatrix q = qr.householderQ();
    return UnitVector(apply_phase_convention(q.col(a.rows())));
}

std::vector<UnitVector> null_space_basis(const ComplexMatrix& a) {
    if (a.rows() > a.cols()) {
        throw DimensionError("null_space_basis: requires rows <= cols, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    std::vector<UnitVector> basis;
    if (a.rows() == 0) {
        // Unconstrained: the null space is the whole space, canonical basis.
        for (Eigen::Index i = 0; i < a.cols(); ++i) {
            ComplexVector e = ComplexVector::Zero(a.cols());
            e[i] = Complex(1.0, 0.0);
            basis.emplace_back(std::move(e));
        }
        return basis;
    }
    require_finite(a, "null_space_basis");

    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(a.adjoint());
    qr.setThreshold(kRankRelTol);
    const Eigen::Index rank = qr.rank();

    const ComplexMatrix q = qr.householderQ();
    basis.reserve(static_cast<std::size_t>(a.cols() - rank));
    for (Eigen::Index i = rank; i < a.cols(); ++i) {
        basis.emplace_back(apply_phase_convention(q.col(i)));
    }
    return basis;
}

double log_det_hermitian_pd(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError("log_det_hermitian_pd: matrix must be square and nonempty");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw NotHermitianError("log_det_hermitian_pd: matrix is not Hermitian within tolerance");
    }

    Eigen::LLT<ComplexMatrix> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefiniteError("log_det_hermitian_pd: Cholesky pivot <= 0");
    }
    double log2_det = 0.0;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        log2_det += 2.0 * std::log2(l(i, i).real());
    }
    return log2_det;
}

} // namespace sdofsim::linalg
