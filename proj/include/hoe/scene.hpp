#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hoe/deformation.hpp"
#include "hoe/field_io.hpp"
#include "hoe/tracing.hpp"

namespace hoe::scene {

using io::json;

enum class Problem { forward, inverse };

/// factor(sample) = base + slope_per_mm * s.
struct RescaleSpec {
    double base = 1.0;
    double slope_per_mm = 0.0;
};

struct DeformationSpec {
    SurfaceProfile target;
    Projection projection;
    std::optional<RescaleSpec> rescale;
};

struct ScanSpec {
    double z_min = 0.0;
    double z_max = 0.0;
    int n = 0;
};

struct AnalysisSpec {
    std::vector<double> detector_z_mm;
    std::optional<ScanSpec> focal_scan;
};

/// Scene document:
///
///   {
///     "wavelength":  {"lambda_nm": 500},
///     "problem":     "forward" | "inverse",            (default "forward")
///     "recording":   {"w1": wave, "w2": wave, "carrier": profile, "grid": grid},
///     "deformation": {"target_profile": profile,
///                     "projection": "orthogonal" | {"center_z_mm": z},
///                     "rescale": {"kind": "uniform", "factor": f}
///                              | {"kind": "radial_linear", "base": a, "slope_per_mm": b}},
///     "probe":       wave,                              (default: recording.w1)
///     "analysis":    {"detector_z_mm": [...], "focal_scan": {"z_min", "z_max", "n"}}
///   }
///
/// Unknown keys anywhere are rejected with ConfigError. For the inverse
/// problem, w1 -> w2 is the replay behavior wanted on the deformed surface.
struct SceneConfig {
    Wavelength wavelength;
    Problem problem = Problem::forward;
    Wave w1;
    Wave w2;
    SurfaceProfile carrier;
    SamplingGrid grid;
    std::optional<DeformationSpec> deformation;
    Wave probe;
    AnalysisSpec analysis;

    static SceneConfig from_json(const json& j);
    static SceneConfig load(const std::filesystem::path& path);
};

[[nodiscard]] ScaleFunction make_scale_function(const RescaleSpec& spec);

/// Forward: the field recorded on the carrier. Inverse: the target field
/// designed on the deformation target surface.
[[nodiscard]] GratingVectorField record_stage(const SceneConfig& config);

/// induce_forward onto the deformation target, then the optional rescale.
/// Throws ConfigError without a deformation section.
[[nodiscard]] GratingVectorField deform_stage(const SceneConfig& config,
                                              const GratingVectorField& planar);

/// Undoes the optional rescale, then induce_inverse back to the plane.
[[nodiscard]] GratingVectorField invert_stage(const SceneConfig& config,
                                              const GratingVectorField& target);

struct Analysis {
    TraceResult trace;
    std::vector<std::vector<PlaneHit>> detector_hits;
    std::vector<SpotReport> spots;
    std::optional<FocalScan> scan;
    std::optional<std::string> scan_error;
};

[[nodiscard]] Analysis analyze(const SceneConfig& config, const GratingVectorField& field,
                               ClosureMode mode);

/// CSV writers; numbers are printed with 17 significant digits.
[[nodiscard]] std::string rays_csv(const GratingVectorField& field, const TraceResult& trace);
[[nodiscard]] std::string hits_csv(const std::vector<double>& detector_z,
                                   const std::vector<std::vector<PlaneHit>>& hits);
[[nodiscard]] std::string spots_csv(const std::vector<SpotReport>& spots);

/// Writes rays.csv, and hits.csv / spots.csv when the analysis section asks
/// for them, plus summary.json. Returns the summary.
json write_analysis(const SceneConfig& config, const GratingVectorField& field, ClosureMode mode,
                    const std::filesystem::path& out_dir);

/// Full pipeline. Forward: record -> [deform] -> trace -> detectors / scan.
/// Inverse: design target -> invert -> re-deform -> trace -> detectors / scan.
/// Writes the intermediate fields next to the analysis outputs.
json run_scene(const SceneConfig& config, const std::filesystem::path& out_dir, ClosureMode mode);

}  // namespace hoe::scene
