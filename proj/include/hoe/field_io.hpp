#pragma once

#include <filesystem>
#include <initializer_list>
#include <string_view>

#include <json.hpp>

#include "hoe/recording.hpp"
#include "hoe/surfaces.hpp"
#include "hoe/waves.hpp"

namespace hoe::io {

using json = nlohmann::json;

/// Throws ConfigError if `obj` is not an object or has keys outside `allowed`.
void require_keys_subset(const json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view context);

/// {"kind": "planar", "domain_radius_mm": ...} or
/// {"kind": "sphere_cap", "radius_mm": ..., "domain_radius_mm": ...}.
/// Custom profiles cannot be serialized (InvalidArgument).
[[nodiscard]] json profile_to_json(const SurfaceProfile& profile);
[[nodiscard]] SurfaceProfile profile_from_json(const json& j);

/// {"kind": "polar", "rings", "spokes", "radius_mm"} or
/// {"kind": "cartesian", "n", "half_width_mm"}.
[[nodiscard]] json grid_to_json(const SamplingGrid& grid);
[[nodiscard]] SamplingGrid grid_from_json(const json& j);

/// "orthogonal" or {"center_z_mm": ...}.
[[nodiscard]] json projection_to_json(const Projection& proj);
[[nodiscard]] Projection projection_from_json(const json& j);

/// {"kind": "plane", "dir": [x, y, z] | "angle_deg": a, ...},
/// {"kind": "diverging", "origin_mm": [...]}, {"kind": "converging", "target_mm": [...]},
/// each with optional "lambda_nm" (defaults to `fallback`) and "amplitude".
/// Plane directions are normalized; "angle_deg" tilts +z towards +x.
[[nodiscard]] Wave wave_from_json(const json& j, Wavelength fallback);
[[nodiscard]] json wave_to_json(const Wave& wave);

/// Field document: header (format, version, lambda_nm, carrier, grid,
/// mapping) plus samples [{s, phi, pos: [x, y, z], g: [g1, g2, g3]}].
/// Doubles are written in shortest round-trip form, so reading a written
/// field reproduces every stored number bit for bit. Frames are rebuilt from
/// the carrier on load.
[[nodiscard]] json field_to_json(const GratingVectorField& field);
[[nodiscard]] GratingVectorField field_from_json(const json& j);

void write_field(const GratingVectorField& field, const std::filesystem::path& path);
[[nodiscard]] GratingVectorField read_field(const std::filesystem::path& path);

/// Reads a JSON document; parse failures become ConfigError.
[[nodiscard]] json read_json(const std::filesystem::path& path);

}  // namespace hoe::io
