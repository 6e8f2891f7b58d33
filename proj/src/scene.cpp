#include "hoe/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace hoe::scene {

namespace {

const json& section(const json& j, std::string_view key) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ConfigError("scene: missing section '" + std::string(key) + "'");
    }
    return *it;
}

double number(const json& j, std::string_view key, std::string_view ctx) {
    const auto it = j.find(key);
    if (it == j.end() || !it->is_number()) {
        throw ConfigError(std::string(ctx) + "." + std::string(key) + " must be a number");
    }
    return it->get<double>();
}

RescaleSpec rescale_from_json(const json& j) {
    constexpr std::string_view ctx = "deformation.rescale";
    io::require_keys_subset(j, {"kind", "factor", "base", "slope_per_mm"}, ctx);
    const auto kind = j.value("kind", std::string{});
    if (kind == "uniform") {
        io::require_keys_subset(j, {"kind", "factor"}, ctx);
        return {number(j, "factor", ctx), 0.0};
    }
    if (kind == "radial_linear") {
        io::require_keys_subset(j, {"kind", "base", "slope_per_mm"}, ctx);
        return {number(j, "base", ctx), number(j, "slope_per_mm", ctx)};
    }
    throw ConfigError("deformation.rescale: kind must be 'uniform' or 'radial_linear'");
}

AnalysisSpec analysis_from_json(const json& j) {
    constexpr std::string_view ctx = "analysis";
    io::require_keys_subset(j, {"detector_z_mm", "focal_scan"}, ctx);
    AnalysisSpec spec;
    if (const auto it = j.find("detector_z_mm"); it != j.end()) {
        if (!it->is_array()) throw ConfigError("analysis.detector_z_mm must be an array");
        for (const json& z : *it) {
            if (!z.is_number()) throw ConfigError("analysis.detector_z_mm must hold numbers");
            spec.detector_z_mm.push_back(z.get<double>());
        }
    }
    if (const auto it = j.find("focal_scan"); it != j.end()) {
        io::require_keys_subset(*it, {"z_min", "z_max", "n"}, "analysis.focal_scan");
        const auto n = it->find("n");
        if (n == it->end() || !n->is_number_integer()) {
            throw ConfigError("analysis.focal_scan.n must be an integer");
        }
        spec.focal_scan = ScanSpec{number(*it, "z_min", "analysis.focal_scan"),
                                   number(*it, "z_max", "analysis.focal_scan"), n->get<int>()};
        if (!(spec.focal_scan->z_max > spec.focal_scan->z_min) || spec.focal_scan->n < 3) {
            throw ConfigError("analysis.focal_scan: need z_max > z_min and n >= 3");
        }
    }
    return spec;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidArgument("cannot open " + path.string() + " for writing");
    out << content;
}

}  // namespace

SceneConfig SceneConfig::from_json(const json& j) {
    io::require_keys_subset(j, {"wavelength", "problem", "recording", "deformation", "probe",
                                "analysis"},
                            "scene");
    const json& wl = section(j, "wavelength");
    io::require_keys_subset(wl, {"lambda_nm"}, "wavelength");
    const double lambda_nm = number(wl, "lambda_nm", "wavelength");
    if (!(lambda_nm > 0.0)) throw ConfigError("wavelength.lambda_nm must be positive");
    const Wavelength lambda = Wavelength::from_nm(lambda_nm);

    Problem problem = Problem::forward;
    if (const auto it = j.find("problem"); it != j.end()) {
        const auto name = it->is_string() ? it->get<std::string>() : std::string{};
        if (name == "inverse") {
            problem = Problem::inverse;
        } else if (name != "forward") {
            throw ConfigError("problem must be 'forward' or 'inverse'");
        }
    }

    const json& rec = section(j, "recording");
    io::require_keys_subset(rec, {"w1", "w2", "carrier", "grid"}, "recording");
    const Wave w1 = io::wave_from_json(section(rec, "w1"), lambda);
    const Wave w2 = io::wave_from_json(section(rec, "w2"), lambda);
    SurfaceProfile carrier = io::profile_from_json(section(rec, "carrier"));
    const SamplingGrid grid = io::grid_from_json(section(rec, "grid"));

    std::optional<DeformationSpec> deformation;
    if (const auto it = j.find("deformation"); it != j.end()) {
        io::require_keys_subset(*it, {"target_profile", "projection", "rescale"}, "deformation");
        DeformationSpec spec{io::profile_from_json(section(*it, "target_profile")),
                             Projection::orthogonal(), std::nullopt};
        if (const auto p = it->find("projection"); p != it->end()) {
            spec.projection = io::projection_from_json(*p);
        }
        if (const auto r = it->find("rescale"); r != it->end()) {
            spec.rescale = rescale_from_json(*r);
        }
        if (carrier.kind() != ProfileKind::planar) {
            throw ConfigError("deformation requires a planar recording carrier");
        }
        deformation = std::move(spec);
    }
    if (problem == Problem::inverse && !deformation) {
        throw ConfigError("the inverse problem needs a deformation section");
    }

    const Wave probe = j.contains("probe") ? io::wave_from_json(j.at("probe"), lambda) : w1;
    AnalysisSpec analysis;
    if (const auto it = j.find("analysis"); it != j.end()) {
        analysis = analysis_from_json(*it);
    }
    return SceneConfig{lambda,         problem, w1, w2, std::move(carrier), grid,
                       std::move(deformation), probe, std::move(analysis)};
}

SceneConfig SceneConfig::load(const std::filesystem::path& path) {
    return from_json(io::read_json(path));
}

ScaleFunction make_scale_function(const RescaleSpec& spec) {
    return [spec](const GratingSample& sample) {
        return spec.base + spec.slope_per_mm * sample.footprint().s();
    };
}

GratingVectorField record_stage(const SceneConfig& config) {
    if (config.problem == Problem::inverse) {
        return design_target_field(config.w1, config.w2, config.deformation->target, config.grid);
    }
    return record(config.w1, config.w2, config.carrier, config.grid);
}

GratingVectorField deform_stage(const SceneConfig& config, const GratingVectorField& planar) {
    if (!config.deformation) {
        throw ConfigError("scene has no deformation section");
    }
    const DeformationSpec& d = *config.deformation;
    GratingVectorField deformed = induce_forward(planar, d.target, d.projection);
    if (d.rescale) {
        deformed = rescale(deformed, make_scale_function(*d.rescale));
    }
    return deformed;
}

GratingVectorField invert_stage(const SceneConfig& config, const GratingVectorField& target) {
    if (!config.deformation) {
        throw ConfigError("scene has no deformation section");
    }
    const DeformationSpec& d = *config.deformation;
    if (!d.rescale) {
        return induce_inverse(target, d.projection);
    }
    const ScaleFunction factor = make_scale_function(*d.rescale);
    const GratingVectorField unscaled =
        rescale(target, [&](const GratingSample& s) { return 1.0 / factor(s); });
    return induce_inverse(unscaled, d.projection);
}

Analysis analyze(const SceneConfig& config, const GratingVectorField& field, ClosureMode mode) {
    Analysis out;
    out.trace = trace_field(field, config.probe, mode);
    for (double z : config.analysis.detector_z_mm) {
        out.detector_hits.push_back(intersect_plane(out.trace.rays, z));
    }
    if (const auto& spec = config.analysis.focal_scan) {
        try {
            out.scan = focal_scan(out.trace.rays, spec->z_min, spec->z_max, spec->n);
            out.spots = out.scan->spots;
        } catch (const NoMinimumInRange& e) {
            out.scan_error = e.what();
            out.spots = scan_planes(out.trace.rays, spec->z_min, spec->z_max, spec->n);
        }
    }
    return out;
}

std::string rays_csv(const GratingVectorField& field, const TraceResult& trace) {
    std::string csv = "s,phi,x,y,z,dx,dy,dz,status,weight\n";
    for (const SampleTrace& st : trace.samples) {
        const GratingSample& sample = field[st.sample_index];
        const DiffractionResult& r = st.result;
        // Evanescent samples have no propagation direction.
        const double len = r.kd.norm();
        const bool has_dir = r.status != DiffractionStatus::evanescent && len > 0.0;
        const Vec3 dir = has_dir ? r.kd / len : Vec3{};
        const Vec3& p = sample.position();
        csv += fmt(sample.footprint().s()) + ',' + fmt(sample.footprint().phi()) + ',' +
               fmt(p.x()) + ',' + fmt(p.y()) + ',' + fmt(p.z()) + ',' + fmt(dir.x()) + ',' +
               fmt(dir.y()) + ',' + fmt(dir.z()) + ',' + std::string(to_string(r.status)) + ',' +
               fmt(r.eta) + '\n';
    }
    return csv;
}

std::string hits_csv(const std::vector<double>& detector_z,
                     const std::vector<std::vector<PlaneHit>>& hits) {
    std::string csv = "z0,x,y,ray_index\n";
    for (std::size_t plane = 0; plane < hits.size(); ++plane) {
        for (std::size_t i = 0; i < hits[plane].size(); ++i) {
            const PlaneHit& h = hits[plane][i];
            if (h.status != HitStatus::hit) continue;
            csv += fmt(detector_z[plane]) + ',' + fmt(h.point.x) + ',' + fmt(h.point.y) + ',' +
                   std::to_string(i) + '\n';
        }
    }
    return csv;
}

std::string spots_csv(const std::vector<SpotReport>& spots) {
    std::string csv = "z,cx,cy,rms_x,rms_y,rms_total\n";
    for (const SpotReport& s : spots) {
        csv += fmt(s.z) + ',' + fmt(s.centroid.x) + ',' + fmt(s.centroid.y) + ',' + fmt(s.rms_x) +
               ',' + fmt(s.rms_y) + ',' + fmt(s.rms_total) + '\n';
    }
    return csv;
}

json write_analysis(const SceneConfig& config, const GratingVectorField& field, ClosureMode mode,
                    const std::filesystem::path& out_dir) {
    const Analysis a = analyze(config, field, mode);
    write_text(out_dir / "rays.csv", rays_csv(field, a.trace));
    if (!config.analysis.detector_z_mm.empty()) {
        write_text(out_dir / "hits.csv", hits_csv(config.analysis.detector_z_mm, a.detector_hits));
    }
    if (config.analysis.focal_scan) {
        write_text(out_dir / "spots.csv", spots_csv(a.spots));
    }

    double max_mismatch = 0.0;
    for (const SampleTrace& st : a.trace.samples) {
        if (st.result.status != DiffractionStatus::pass_through) {
            max_mismatch = std::max(max_mismatch, std::abs(st.result.mismatch));
        }
    }
    json summary = {{"closure", std::string(to_string(mode))},
                    {"samples", field.size()},
                    {"propagating", a.trace.rays.size()},
                    {"pass_through", a.trace.pass_through.size()},
                    {"evanescent", a.trace.evanescent.size()},
                    {"max_abs_bragg_mismatch", max_mismatch}};
    if (a.scan) {
        summary["focal_scan"] = {{"spacing_mm", a.scan->spacing},
                                 {"z_best_x_mm", a.scan->z_best_x},
                                 {"z_best_y_mm", a.scan->z_best_y},
                                 {"z_best_total_mm", a.scan->z_best_total},
                                 {"astigmatism_mm", a.scan->astigmatism},
                                 {"bracketed", a.scan->bracketed}};
    } else if (a.scan_error) {
        summary["focal_scan"] = {{"error", "NoMinimumInRange"}, {"message", *a.scan_error}};
    }
    write_text(out_dir / "summary.json", summary.dump(1) + "\n");
    return summary;
}

json run_scene(const SceneConfig& config, const std::filesystem::path& out_dir, ClosureMode mode) {
    std::filesystem::create_directories(out_dir);
    const GratingVectorField recorded = record_stage(config);

    if (config.problem == Problem::inverse) {
        io::write_field(recorded, out_dir / "field_target.json");
        const GratingVectorField planar = invert_stage(config, recorded);
        io::write_field(planar, out_dir / "field_precompensated.json");
        const GratingVectorField deformed = deform_stage(config, planar);
        io::write_field(deformed, out_dir / "field_deformed.json");

        double coord_dev = 0.0;
        double pos_dev = 0.0;
        for (std::size_t i = 0; i < deformed.size(); ++i) {
            const FrameCoords& a = deformed[i].coords();
            const FrameCoords& b = recorded[i].coords();
            const double diff = std::hypot(a.g1 - b.g1, a.g2 - b.g2, a.g3 - b.g3);
            coord_dev = std::max(coord_dev, diff / std::max(b.norm(), kDegenerateGrating));
            pos_dev = std::max(pos_dev, (deformed[i].position() - recorded[i].position()).norm());
        }
        json summary = write_analysis(config, deformed, mode, out_dir);
        summary["problem"] = "inverse";
        summary["round_trip"] = {{"max_relative_coord_deviation", coord_dev},
                                 {"max_position_deviation_mm", pos_dev}};
        write_text(out_dir / "summary.json", summary.dump(1) + "\n");
        return summary;
    }

    io::write_field(recorded, out_dir / "field_recorded.json");
    const GratingVectorField* traced = &recorded;
    std::optional<GratingVectorField> deformed;
    if (config.deformation) {
        deformed = deform_stage(config, recorded);
        io::write_field(*deformed, out_dir / "field_deformed.json");
        traced = &*deformed;
    }
    json summary = write_analysis(config, *traced, mode, out_dir);
    summary["problem"] = "forward";
    write_text(out_dir / "summary.json", summary.dump(1) + "\n");
    return summary;
}

}  // namespace hoe::scene
