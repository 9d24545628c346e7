#include "orbitraise/grid.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace orbitraise {

CrownGrid CrownGrid::build(const std::array<AxisSpec, 4>& axes) {
    static const char* names[4] = {"rho", "theta", "v_rho", "v_theta"};
    for (int k = 0; k < 4; ++k) {
        const AxisSpec& ax = axes[static_cast<std::size_t>(k)];
        if (ax.n < 2) {
            throw InvalidBounds(std::string(names[k]) + " axis needs at least 2 nodes");
        }
        if (!(ax.lo < ax.hi) || !std::isfinite(ax.lo) || !std::isfinite(ax.hi)) {
            throw InvalidBounds(std::string(names[k]) + " axis bounds must be finite and ordered");
        }
        if (ax.periodic != (k == 1)) {
            throw InvalidBounds("exactly the theta axis must be periodic");
        }
    }
    if (axes[1].lo != 0.0 || std::abs(axes[1].hi - kTwoPi) > 1e-12) {
        throw InvalidBounds("theta axis must span [0, 2*pi)");
    }

    CrownGrid g;
    g.axes_ = axes;
    g.size_ = 1;
    for (int k = 3; k >= 0; --k) {
        g.strides_[static_cast<std::size_t>(k)] = g.size_;
        g.size_ *= axes[static_cast<std::size_t>(k)].n;
    }
    if (g.size_ > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidBounds("grid exceeds the 32-bit node index range");
    }
    return g;
}

std::int64_t CrownGrid::flat_index(const std::array<int, 4>& multi) const {
    std::int64_t flat = 0;
    for (int k = 0; k < 4; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        if (multi[ks] < 0 || multi[ks] >= axes_[ks].n) {
            throw IndexOutOfRange("multi-index out of range");
        }
        flat += strides_[ks] * multi[ks];
    }
    return flat;
}

std::array<int, 4> CrownGrid::multi_index(std::int64_t flat) const {
    if (flat < 0 || flat >= size_) {
        throw IndexOutOfRange("flat index out of range");
    }
    std::array<int, 4> multi{};
    for (int k = 0; k < 4; ++k) {
        const auto ks = static_cast<std::size_t>(k);
        multi[ks] = static_cast<int>(flat / strides_[ks]);
        flat %= strides_[ks];
    }
    return multi;
}

PolarState CrownGrid::node_state(std::int64_t flat) const {
    const auto m = multi_index(flat);
    return PolarState{
        axes_[0].node(m[0]),
        axes_[1].node(m[1]),
        axes_[2].node(m[2]),
        axes_[3].node(m[3]),
    };
}

bool CrownGrid::contains(const PolarState& q) const {
    return q.rho >= axes_[0].lo && q.rho <= axes_[0].hi &&
           q.v_rho >= axes_[2].lo && q.v_rho <= axes_[2].hi &&
           q.v_theta >= axes_[3].lo && q.v_theta <= axes_[3].hi;
}

namespace {

struct AxisLocation {
    int i0, i1;       // bracketing node indices along the axis
    double w0, w1;    // linear weights
};

inline bool locate_bounded(const AxisSpec& ax, double q, AxisLocation& loc) {
    if (q < ax.lo || q > ax.hi) return false;
    const double u = (q - ax.lo) / ax.spacing();
    int i = static_cast<int>(u);
    if (i > ax.n - 2) i = ax.n - 2;
    double t = u - i;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    loc = AxisLocation{i, i + 1, 1.0 - t, t};
    return true;
}

inline void locate_periodic(const AxisSpec& ax, double q, AxisLocation& loc) {
    const double u = wrap_angle(q) / ax.spacing();
    int i = static_cast<int>(u);
    if (i > ax.n - 1) i = ax.n - 1;
    double t = u - i;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    loc = AxisLocation{i, (i + 1 == ax.n) ? 0 : i + 1, 1.0 - t, t};
}

}  // namespace

std::optional<Stencil> CrownGrid::stencil(const PolarState& q) const {
    AxisLocation loc[4];
    if (!locate_bounded(axes_[0], q.rho, loc[0])) return std::nullopt;
    locate_periodic(axes_[1], q.theta, loc[1]);
    if (!locate_bounded(axes_[2], q.v_rho, loc[2])) return std::nullopt;
    if (!locate_bounded(axes_[3], q.v_theta, loc[3])) return std::nullopt;

    Stencil st;
    std::size_t k = 0;
    for (int b0 = 0; b0 < 2; ++b0) {
        const std::int64_t base0 = strides_[0] * (b0 ? loc[0].i1 : loc[0].i0);
        const double w0 = b0 ? loc[0].w1 : loc[0].w0;
        for (int b1 = 0; b1 < 2; ++b1) {
            const std::int64_t base1 = base0 + strides_[1] * (b1 ? loc[1].i1 : loc[1].i0);
            const double w1 = w0 * (b1 ? loc[1].w1 : loc[1].w0);
            for (int b2 = 0; b2 < 2; ++b2) {
                const std::int64_t base2 = base1 + strides_[2] * (b2 ? loc[2].i1 : loc[2].i0);
                const double w2 = w1 * (b2 ? loc[2].w1 : loc[2].w0);
                st.nodes[k] = static_cast<std::uint32_t>(base2 + loc[3].i0);
                st.weights[k] = w2 * loc[3].w0;
                ++k;
                st.nodes[k] = static_cast<std::uint32_t>(base2 + loc[3].i1);
                st.weights[k] = w2 * loc[3].w1;
                ++k;
            }
        }
    }
    return st;
}

double CrownGrid::interpolate(std::span<const double> field, const PolarState& q,
                              double penalty) const {
    const auto st = stencil(q);
    if (!st) return penalty;
    return apply(*st, field);
}

}  // namespace orbitraise
