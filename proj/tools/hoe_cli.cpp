// hoe: command line front end for the scene pipeline.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hoe/errors.hpp"
#include "hoe/field_io.hpp"
#include "hoe/scene.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPipeline = 3;

int report(std::string_view kind, std::string_view message,
           std::optional<std::size_t> sample_index, int code) {
    json err = {{"kind", kind}, {"message", message}, {"sample_index", nullptr}};
    if (sample_index) err["sample_index"] = *sample_index;
    std::cerr << json{{"error", err}}.dump() << '\n';
    return code;
}

struct Options {
    std::string config;
    std::string out = ".";
    std::string field;
    std::string mode = "energy";
    long long seed = 0;
};

hoe::ClosureMode closure(const Options& o) {
    return o.mode == "basic" ? hoe::ClosureMode::basic : hoe::ClosureMode::energy_conserving;
}

void print_summary(const json& summary) { std::cout << summary.dump(1) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Holographic optical element deformation simulator"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool needs_field) {
        sub->add_option("--config", opt.config, "scene configuration (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "output directory");
        sub->add_option("--mode", opt.mode, "closure: basic | energy")
            ->check(CLI::IsMember({"basic", "energy"}));
        sub->add_option("--seed", opt.seed, "reserved, ignored");
        if (needs_field) {
            sub->add_option("--field", opt.field, "input field (JSON)")
                ->required()
                ->check(CLI::ExistingFile);
        }
    };

    auto* record = app.add_subcommand("record", "record the field described by the scene");
    auto* deform = app.add_subcommand("deform", "carry a planar field onto the target surface");
    auto* invert = app.add_subcommand("invert", "pull a target field back to the plane");
    auto* trace = app.add_subcommand("trace", "trace the probe through a field");
    auto* scan = app.add_subcommand("scan", "trace and run the focal scan");
    auto* run = app.add_subcommand("run", "full pipeline");
    add_common(record, false);
    add_common(deform, true);
    add_common(invert, true);
    add_common(trace, true);
    add_common(scan, true);
    add_common(run, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report("UsageError", e.what(), std::nullopt, kExitConfig);
    }

    namespace sc = hoe::scene;
    try {
        const sc::SceneConfig config = sc::SceneConfig::load(opt.config);
        const fs::path out = opt.out;
        fs::create_directories(out);
        const hoe::ClosureMode mode = closure(opt);

        if (record->parsed()) {
            const auto field = sc::record_stage(config);
            const char* name = config.problem == sc::Problem::inverse ? "field_target.json"
                                                                      : "field_recorded.json";
            hoe::io::write_field(field, out / name);
        } else if (deform->parsed()) {
            hoe::io::write_field(sc::deform_stage(config, hoe::io::read_field(opt.field)),
                                 out / "field_deformed.json");
        } else if (invert->parsed()) {
            hoe::io::write_field(sc::invert_stage(config, hoe::io::read_field(opt.field)),
                                 out / "field_precompensated.json");
        } else if (trace->parsed()) {
            sc::SceneConfig no_scan = config;
            no_scan.analysis.focal_scan.reset();
            print_summary(sc::write_analysis(no_scan, hoe::io::read_field(opt.field), mode, out));
        } else if (scan->parsed()) {
            if (!config.analysis.focal_scan) {
                throw hoe::ConfigError("scan needs analysis.focal_scan in the configuration");
            }
            print_summary(sc::write_analysis(config, hoe::io::read_field(opt.field), mode, out));
        } else if (run->parsed()) {
            print_summary(sc::run_scene(config, out, mode));
        }
    } catch (const hoe::ConfigError& e) {
        return report(e.kind(), e.what(), std::nullopt, kExitConfig);
    } catch (const hoe::SampleError& e) {
        return report(e.kind(), e.what(), e.index(), kExitPipeline);
    } catch (const hoe::Error& e) {
        return report(e.kind(), e.what(), std::nullopt, kExitPipeline);
    } catch (const fs::filesystem_error& e) {
        return report("IoError", e.what(), std::nullopt, kExitPipeline);
    } catch (const std::exception& e) {
        return report("InternalError", e.what(), std::nullopt, kExitPipeline);
    }
    return 0;
}
