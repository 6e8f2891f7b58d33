#include "hoe/diffraction.hpp"

#include <cmath>
#include <string>

namespace hoe {

std::string_view to_string(DiffractionStatus status) noexcept {
    switch (status) {
        case DiffractionStatus::propagating: return "propagating";
        case DiffractionStatus::evanescent: return "evanescent";
        case DiffractionStatus::pass_through: return "pass_through";
    }
    return "unknown";
}

std::string_view to_string(ClosureMode mode) noexcept {
    return mode == ClosureMode::basic ? "basic" : "energy";
}

DiffractionResult kvc_energy_conserving(const Vec3& kp, const Vec3& kg, const Frame& frame) {
    const Vec3 closure = kg + kp;
    const double kp_len = kp.norm();
    const double along_t = closure.dot(frame.t());
    const double along_b = closure.dot(frame.b());
    const double radicand = kp_len * kp_len - along_t * along_t - along_b * along_b;

    DiffractionResult result;
    result.mismatch = closure.norm() - kp_len;
    if (radicand < 0.0) {
        result.kd = along_t * frame.t() + along_b * frame.b();
        result.status = DiffractionStatus::evanescent;
        result.eta = 0.0;
        result.zero_order_weight = 1.0;
        return result;
    }
    const double sign = closure.dot(frame.n()) < 0.0 ? -1.0 : 1.0;
    result.kd = along_t * frame.t() + along_b * frame.b() + sign * std::sqrt(radicand) * frame.n();
    result.status = DiffractionStatus::propagating;
    return result;
}

DiffractionResult diffract_sample(const GratingSample& sample, const Wave& probe, ClosureMode mode,
                                  const EfficiencyModel& efficiency) {
    const Vec3 kp = local_wavevector(probe, sample.position());
    if (sample.degenerate()) {
        DiffractionResult pass;
        pass.kd = kp;
        pass.status = DiffractionStatus::pass_through;
        pass.eta = 0.0;
        pass.zero_order_weight = 1.0;
        return pass;
    }
    const Vec3 kg = sample.grating_vector();
    DiffractionResult result;
    if (mode == ClosureMode::basic) {
        result.kd = kvc_basic(kp, kg);
        result.mismatch = result.kd.norm() - kp.norm();
    } else {
        result = kvc_energy_conserving(kp, kg, sample.frame());
        if (result.status == DiffractionStatus::evanescent) return result;
    }
    const double eta = efficiency ? efficiency(sample, kp) : 1.0;
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw InvalidArgument("diffract_sample: efficiency " + std::to_string(eta) +
                              " outside [0, 1]");
    }
    result.eta = eta;
    result.zero_order_weight = 1.0 - eta;
    return result;
}

}  // namespace hoe
