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

#include "sdofsim/precoding.hpp"

#include <string>

namespace sdofsim::precoding {

namespace {

// Minimum norm for the anchored projection before falling back to the
// first deterministic basis vector.
constexpr double kAnchorProjectionTol = 1e-8;

linalg::ComplexMatrix remove_row(const linalg::ComplexMatrix& m, Eigen::Index row) {
    linalg::ComplexMatrix out(m.rows() - 1, m.cols());
    out.topRows(row) = m.topRows(row);
    out.bottomRows(m.rows() - 1 - row) = m.bottomRows(m.rows() - 1 - row);
    return out;
}

} // namespace

StreamRole BlockPrecoder::p_role(int idx) const {
    return StreamRole{StreamKind::kData, idx + 1, SymbolTag::kPerfectSlot};
}

StreamRole BlockPrecoder::d_role(int idx) const {
    if (idx == 0) {
        return StreamRole{StreamKind::kArtificialNoise, 0, SymbolTag::kNone};
    }
    return StreamRole{StreamKind::kData, idx + 1, SymbolTag::kDelayedSlot};
}

linalg::UnitVector anchored_null_vector(const linalg::ComplexMatrix& a, Eigen::Index anchor) {
    if (anchor < 0 || anchor >= a.cols()) {
        throw DimensionError("anchored_null_vector: anchor index out of range");
    }
    const auto basis = linalg::null_space_basis(a);
    if (basis.empty()) {
        throw RankDeficientError("anchored_null_vector: null space is trivial");
    }
    linalg::ComplexVector projection = linalg::ComplexVector::Zero(a.cols());
    for (const auto& b : basis) {
        projection += b.coeffs() * std::conj(b.coeffs()[anchor]);
    }
    if (projection.norm() > kAnchorProjectionTol) {
        return linalg::UnitVector::normalized(std::move(projection));
    }
    return basis.front();
}

std::vector<linalg::UnitVector> build_p_state_precoder(const channel::TxView& view) {
    if (view.state != channel::CsitState::kPAll) {
        throw DimensionError("build_p_state_precoder: view is not in the perfect-CSI state");
    }
    const auto& h = view.known_rows;
    if (h.rows() != h.cols() || h.rows() < 2) {
        throw DimensionError("build_p_state_precoder: expected a square view with K >= 2 rows");
    }
    std::vector<linalg::UnitVector> beams;
    beams.reserve(static_cast<std::size_t>(h.rows()));
    for (Eigen::Index k = 0; k < h.rows(); ++k) {
        beams.push_back(linalg::null_space_unit_vector(remove_row(h, k)));
    }
    return beams;
}

std::vector<linalg::UnitVector> build_d_state_precoder(const channel::TxView& view) {
    if (view.state != channel::CsitState::kDFirst) {
        throw DimensionError("build_d_state_precoder: view is not in the delayed-CSI state");
    }
    const auto& rows = view.known_rows; // rows 2..K, shape (K-1) x K
    const Eigen::Index users = rows.cols();
    if (rows.rows() != users - 1 || users < 2) {
        throw DimensionError("build_d_state_precoder: expected (K-1) x K known rows with K >= 2");
    }
    std::vector<linalg::UnitVector> beams;
    beams.reserve(static_cast<std::size_t>(users));
    // Artificial-noise direction: invisible at every receiver with known CSI.
    beams.push_back(linalg::null_space_unit_vector(rows));
    for (Eigen::Index k = 1; k < users; ++k) {
        // User k+1's beam nulls the other known rows; row k-1 of `rows`
        // belongs to user k+1 itself and stays.
        beams.push_back(anchored_null_vector(remove_row(rows, k - 1), k));
    }
    return beams;
}

BlockPrecoder build_block_precoder(const channel::TxView& p_view, const channel::TxView& d_view,
                                   const PowerAllocation& powers) {
    BlockPrecoder precoder;
    precoder.p_beams = build_p_state_precoder(p_view);
    precoder.d_beams = build_d_state_precoder(d_view);
    precoder.powers = powers;
    if (static_cast<int>(precoder.p_beams.size()) != powers.users) {
        throw DimensionError("build_block_precoder: power allocation user count mismatch");
    }
    return precoder;
}

PowerAllocation allocate_powers(int users, double total_power, PowerPolicy policy) {
    if (total_power <= 0.0) {
        throw InvalidPowerError("allocate_powers: total power must be positive, got " +
                                std::to_string(total_power));
    }
    if (users < 2) {
        throw InvalidUserCountError("allocate_powers: need at least 2 users");
    }
    PowerAllocation alloc;
    alloc.users = users;
    alloc.total = total_power;
    alloc.p_data = total_power / users;
    if (policy == PowerPolicy::kHalfNoise) {
        alloc.d_noise = total_power / 2.0;
        alloc.d_data = total_power / (2.0 * (users - 1));
    } else {
        alloc.d_noise = total_power / users;
        alloc.d_data = total_power / users;
    }
    return alloc;
}

} // namespace sdofsim::precoding
