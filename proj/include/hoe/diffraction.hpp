#pragma once

#include <functional>
#include <string_view>

#include "hoe/geometry.hpp"
#include "hoe/recording.hpp"
#include "hoe/waves.hpp"

namespace hoe {

enum class ClosureMode { basic, energy_conserving };
enum class DiffractionStatus { propagating, evanescent, pass_through };

[[nodiscard]] std::string_view to_string(DiffractionStatus status) noexcept;
[[nodiscard]] std::string_view to_string(ClosureMode mode) noexcept;

struct DiffractionResult {
    /// Diffracted wavevector (rad/um). For evanescent results only the
    /// tangential part is kept.
    Vec3 kd;
    DiffractionStatus status = DiffractionStatus::propagating;
    /// Bragg mismatch |kg + kp| - |kp| (rad/um).
    double mismatch = 0.0;
    /// First-order efficiency; the zero order carries 1 - eta.
    double eta = 1.0;
    double zero_order_weight = 0.0;
};

/// kd = kg + kp.
[[nodiscard]] inline Vec3 kvc_basic(const Vec3& kp, const Vec3& kg) { return kg + kp; }

/// Keeps the (t, b) components of kg + kp and picks the normal component so
/// that |kd| = |kp|, on the same side of the surface as (kg + kp) . n
/// (positive root when that is zero). Negative radicand -> evanescent.
[[nodiscard]] DiffractionResult kvc_energy_conserving(const Vec3& kp, const Vec3& kg,
                                                      const Frame& frame);

/// Efficiency hook: maps a sample and the local probe wavevector to eta in [0, 1].
using EfficiencyModel = std::function<double(const GratingSample&, const Vec3&)>;

[[nodiscard]] inline double unit_efficiency(const GratingSample&, const Vec3&) { return 1.0; }

/// Diffracts `probe` at one sample. Degenerate samples pass the probe through
/// (kd = kp, eta = 0). Throws SingularPoint from the probe and InvalidArgument
/// if the efficiency model leaves [0, 1].
[[nodiscard]] DiffractionResult diffract_sample(const GratingSample& sample, const Wave& probe,
                                                ClosureMode mode,
                                                const EfficiencyModel& efficiency = unit_efficiency);

}  // namespace hoe
