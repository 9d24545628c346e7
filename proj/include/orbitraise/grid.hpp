// Circular-crown state grid: a 4-D tensor lattice over (rho, theta, v_rho,
// v_theta), periodic in theta and bounded elsewhere, with multilinear (Q1)
// interpolation and the out-of-domain penalty used as a state constraint.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orbitraise/types.hpp"

namespace orbitraise {

struct AxisSpec {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;
    bool periodic = false;

    /// Node spacing: (hi-lo)/(n-1) on bounded axes, (hi-lo)/n on the
    /// periodic axis, whose last node stops one step short of hi.
    double spacing() const {
        return periodic ? (hi - lo) / n : (hi - lo) / (n - 1);
    }
    double node(int i) const { return lo + i * spacing(); }
};

/// The 16 interpolation nodes of the cell containing a query point, with
/// their convex multilinear weights (nonnegative, summing to 1).
struct Stencil {
    std::array<std::uint32_t, 16> nodes;
    std::array<double, 16> weights;
};

/**
 * Vertex-centered lattice. Bounded axes place nodes exactly on both bounds
 * and treat queries on a bound as in-domain; the theta axis spans [0, 2*pi)
 * with wraparound. Flat indexing is row-major with rho slowest:
 *
 *   flat = ((i_rho * n_theta + i_theta) * n_v_rho + i_v_rho) * n_v_theta + i_v_theta
 *
 * The layout is fixed so persisted value functions stay portable.
 */
class CrownGrid {
public:
    /// Axis order: rho, theta, v_rho, v_theta. Throws InvalidBounds unless
    /// every axis has n >= 2 and ordered bounds, exactly the theta axis is
    /// periodic, and theta spans [0, 2*pi).
    static CrownGrid build(const std::array<AxisSpec, 4>& axes);

    std::int64_t size() const { return size_; }
    const AxisSpec& axis(int k) const { return axes_[static_cast<std::size_t>(k)]; }

    std::int64_t flat_index(const std::array<int, 4>& multi) const;
    std::array<int, 4> multi_index(std::int64_t flat) const;
    PolarState node_state(std::int64_t flat) const;

    /// True when every bounded coordinate lies inside its closed range.
    bool contains(const PolarState& q) const;

    /// Cell and weights for a query point, wrapping theta modulo 2*pi.
    /// Returns nullopt when the query leaves the crown (out-of-domain is a
    /// value here, not a fault).
    std::optional<Stencil> stencil(const PolarState& q) const;

    /// Q1 interpolation of a nodal field; out-of-crown queries return the
    /// penalty value (the state-constraint stopping cost).
    double interpolate(std::span<const double> field, const PolarState& q,
                       double penalty) const;

    /// Interpolation with a precomputed stencil.
    static double apply(const Stencil& st, std::span<const double> field) {
        double acc = 0.0;
        for (int k = 0; k < 16; ++k) acc += st.weights[static_cast<std::size_t>(k)] * field[st.nodes[static_cast<std::size_t>(k)]];
        return acc;
    }

private:
    CrownGrid() = default;

    std::array<AxisSpec, 4> axes_{};
    std::array<std::int64_t, 4> strides_{};
    std::int64_t size_ = 0;
};

}  // namespace orbitraise
