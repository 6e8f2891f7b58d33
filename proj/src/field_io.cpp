#include "hoe/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <fstream>
#include <string>

namespace hoe::io {

namespace {

constexpr std::string_view kFieldFormat = "hoe-grating-field";
constexpr int kFieldVersion = 1;

const json& member(const json& obj, std::string_view key, std::string_view context) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ConfigError(std::string(context) + ": missing key '" + std::string(key) + "'");
    }
    return *it;
}

double number(const json& obj, std::string_view key, std::string_view context) {
    const json& v = member(obj, key, context);
    if (!v.is_number()) {
        throw ConfigError(std::string(context) + "." + std::string(key) + " must be a number");
    }
    return v.get<double>();
}

int integer(const json& obj, std::string_view key, std::string_view context) {
    const json& v = member(obj, key, context);
    if (!v.is_number_integer()) {
        throw ConfigError(std::string(context) + "." + std::string(key) + " must be an integer");
    }
    return v.get<int>();
}

std::string text(const json& obj, std::string_view key, std::string_view context) {
    const json& v = member(obj, key, context);
    if (!v.is_string()) {
        throw ConfigError(std::string(context) + "." + std::string(key) + " must be a string");
    }
    return v.get<std::string>();
}

Vec3 vec3(const json& obj, std::string_view key, std::string_view context) {
    const json& v = member(obj, key, context);
    if (!v.is_array() || v.size() != 3 ||
        !std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); })) {
        throw ConfigError(std::string(context) + "." + std::string(key) +
                          " must be an array of three numbers");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

json to_array(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

// Library validation errors raised while building objects from a document are
// configuration problems from the caller's point of view.
template <typename Fn>
auto as_config(std::string_view context, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string(context) + ": " + e.what());
    }
}

}  // namespace

void require_keys_subset(const json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view context) {
    if (!obj.is_object()) {
        throw ConfigError(std::string(context) + " must be an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError(std::string(context) + ": unknown key '" + key + "'");
        }
    }
}

json profile_to_json(const SurfaceProfile& profile) {
    switch (profile.kind()) {
        case ProfileKind::planar:
            return {{"kind", "planar"}, {"domain_radius_mm", profile.domain_radius()}};
        case ProfileKind::sphere_cap:
            return {{"kind", "sphere_cap"},
                    {"radius_mm", *profile.sphere_radius()},
                    {"domain_radius_mm", profile.domain_radius()}};
        case ProfileKind::custom_convex:
            break;
    }
    throw InvalidArgument("custom profiles cannot be serialized");
}

SurfaceProfile profile_from_json(const json& j) {
    constexpr std::string_view ctx = "profile";
    require_keys_subset(j, {"kind", "radius_mm", "domain_radius_mm"}, ctx);
    const std::string kind = text(j, "kind", ctx);
    return as_config(ctx, [&] {
        if (kind == "planar") {
            if (j.contains("radius_mm")) {
                throw ConfigError("profile: planar profiles take no radius_mm");
            }
            return SurfaceProfile::planar(number(j, "domain_radius_mm", ctx));
        }
        if (kind == "sphere_cap") {
            return SurfaceProfile::sphere_cap(number(j, "radius_mm", ctx),
                                              number(j, "domain_radius_mm", ctx));
        }
        throw ConfigError("profile: unknown kind '" + kind + "'");
    });
}

json grid_to_json(const SamplingGrid& grid) {
    if (const auto* polar = std::get_if<PolarGrid>(&grid)) {
        return {{"kind", "polar"},
                {"rings", polar->rings},
                {"spokes", polar->spokes},
                {"radius_mm", polar->radius_mm}};
    }
    const auto& cart = std::get<CartesianGrid>(grid);
    return {{"kind", "cartesian"}, {"n", cart.n}, {"half_width_mm", cart.half_width_mm}};
}

SamplingGrid grid_from_json(const json& j) {
    constexpr std::string_view ctx = "grid";
    require_keys_subset(j, {"kind", "rings", "spokes", "radius_mm", "n", "half_width_mm"}, ctx);
    const std::string kind = text(j, "kind", ctx);
    SamplingGrid grid;
    if (kind == "polar") {
        require_keys_subset(j, {"kind", "rings", "spokes", "radius_mm"}, ctx);
        grid = PolarGrid{integer(j, "rings", ctx), integer(j, "spokes", ctx),
                         number(j, "radius_mm", ctx)};
    } else if (kind == "cartesian") {
        require_keys_subset(j, {"kind", "n", "half_width_mm"}, ctx);
        grid = CartesianGrid{integer(j, "n", ctx), number(j, "half_width_mm", ctx)};
    } else {
        throw ConfigError("grid: unknown kind '" + kind + "'");
    }
    // validates the parameters
    as_config(ctx, [&] { return grid_footprints(grid).size(); });
    return grid;
}

json projection_to_json(const Projection& proj) {
    if (proj.is_orthogonal()) return "orthogonal";
    return {{"center_z_mm", *proj.center_z()}};
}

Projection projection_from_json(const json& j) {
    constexpr std::string_view ctx = "projection";
    if (j.is_string()) {
        if (j.get<std::string>() == "orthogonal") return Projection::orthogonal();
        throw ConfigError("projection: expected \"orthogonal\" or {\"center_z_mm\": ...}");
    }
    require_keys_subset(j, {"center_z_mm"}, ctx);
    return as_config(ctx, [&] { return Projection::central(number(j, "center_z_mm", ctx)); });
}

Wave wave_from_json(const json& j, Wavelength fallback) {
    constexpr std::string_view ctx = "wave";
    require_keys_subset(j, {"kind", "dir", "angle_deg", "origin_mm", "target_mm", "lambda_nm",
                            "amplitude"},
                        ctx);
    const std::string kind = text(j, "kind", ctx);
    return as_config(ctx, [&] {
        const Wavelength lambda =
            j.contains("lambda_nm") ? Wavelength::from_nm(number(j, "lambda_nm", ctx)) : fallback;
        const double amplitude = j.contains("amplitude") ? number(j, "amplitude", ctx) : 1.0;
        if (kind == "plane") {
            require_keys_subset(j, {"kind", "dir", "angle_deg", "lambda_nm", "amplitude"}, ctx);
            if (j.contains("dir") == j.contains("angle_deg")) {
                throw ConfigError("wave: plane waves need exactly one of 'dir' or 'angle_deg'");
            }
            Vec3 dir;
            if (j.contains("dir")) {
                dir = vec3(j, "dir", ctx).normalized();
            } else {
                const double a = number(j, "angle_deg", ctx) * std::numbers::pi / 180.0;
                dir = Vec3{std::sin(a), 0.0, std::cos(a)};
            }
            return Wave::plane(dir, lambda, amplitude);
        }
        if (kind == "diverging") {
            require_keys_subset(j, {"kind", "origin_mm", "lambda_nm", "amplitude"}, ctx);
            return Wave::diverging(vec3(j, "origin_mm", ctx), lambda, amplitude);
        }
        if (kind == "converging") {
            require_keys_subset(j, {"kind", "target_mm", "lambda_nm", "amplitude"}, ctx);
            return Wave::converging(vec3(j, "target_mm", ctx), lambda, amplitude);
        }
        throw ConfigError("wave: unknown kind '" + kind + "'");
    });
}

json wave_to_json(const Wave& wave) {
    json j;
    switch (wave.kind()) {
        case WaveKind::plane:
            j = {{"kind", "plane"}, {"dir", to_array(wave.direction())}};
            break;
        case WaveKind::diverging:
            j = {{"kind", "diverging"}, {"origin_mm", to_array(wave.point())}};
            break;
        case WaveKind::converging:
            j = {{"kind", "converging"}, {"target_mm", to_array(wave.point())}};
            break;
    }
    j["lambda_nm"] = wave.wavelength().nm();
    j["amplitude"] = wave.amplitude();
    return j;
}

json field_to_json(const GratingVectorField& field) {
    json samples = json::array();
    for (const GratingSample& s : field.samples()) {
        const FrameCoords& g = s.coords();
        samples.push_back({{"s", s.footprint().s()},
                           {"phi", s.footprint().phi()},
                           {"pos", to_array(s.position())},
                           {"g", json::array({g.g1, g.g2, g.g3})}});
    }
    return {{"format", kFieldFormat},
            {"version", kFieldVersion},
            {"lambda_nm", field.wavelength().nm()},
            {"carrier", profile_to_json(field.carrier())},
            {"grid", grid_to_json(field.grid())},
            {"mapping", field.mapping() ? projection_to_json(*field.mapping()) : json(nullptr)},
            {"samples", std::move(samples)}};
}

GratingVectorField field_from_json(const json& j) {
    constexpr std::string_view ctx = "field";
    require_keys_subset(j, {"format", "version", "lambda_nm", "carrier", "grid", "mapping",
                            "samples"},
                        ctx);
    if (text(j, "format", ctx) != kFieldFormat || integer(j, "version", ctx) != kFieldVersion) {
        throw ConfigError("field: unsupported format or version");
    }
    const SurfaceProfile carrier = profile_from_json(member(j, "carrier", ctx));
    const SamplingGrid grid = grid_from_json(member(j, "grid", ctx));
    const Wavelength lambda =
        as_config(ctx, [&] { return Wavelength::from_nm(number(j, "lambda_nm", ctx)); });
    std::optional<Projection> mapping;
    if (const json& m = member(j, "mapping", ctx); !m.is_null()) {
        mapping = projection_from_json(m);
    }
    const json& arr = member(j, "samples", ctx);
    if (!arr.is_array()) {
        throw ConfigError("field.samples must be an array");
    }
    std::vector<GratingSample> samples;
    samples.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const json& e = arr[i];
        const std::string sctx = "field.samples[" + std::to_string(i) + "]";
        require_keys_subset(e, {"s", "phi", "pos", "g"}, sctx);
        const Vec3 g = vec3(e, "g", sctx);
        const Vec3 pos = vec3(e, "pos", sctx);
        samples.push_back(as_config(sctx, [&] {
            const PolarPoint fp{number(e, "s", sctx), number(e, "phi", sctx)};
            return GratingSample(fp, pos, build_frame(carrier, fp), {g.x(), g.y(), g.z()});
        }));
    }
    return as_config(ctx, [&] {
        return GratingVectorField(carrier, std::move(samples), grid, lambda, mapping);
    });
}

void write_field(const GratingVectorField& field, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidArgument("cannot open " + path.string() + " for writing");
    }
    out << field_to_json(field).dump(1) << '\n';
}

GratingVectorField read_field(const std::filesystem::path& path) {
    return field_from_json(read_json(path));
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

}  // namespace hoe::io
