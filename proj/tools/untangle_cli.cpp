// Command-line front end: demo scenarios, file-driven relocation, pairwise
// separability certification, and network evaluation. Machine-readable
// reports are JSON; exit status depends on asserted certificates only
// (0 = all hold, 1 = some assertion failed, 2 = bad configuration/input).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "untangle/csvio.hpp"
#include "untangle/datasets.hpp"
#include "untangle/fixtures.hpp"
#include "untangle/flows.hpp"
#include "untangle/geometry.hpp"
#include "untangle/network.hpp"
#include "untangle/relocate.hpp"
#include "untangle/separability.hpp"
#include "untangle/svg.hpp"

using namespace untangle;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Assertion {
    std::string name;
    bool ok = false;
    std::string detail;
};

// Aggregated run report. Written to report.json before any SVG rendering so
// a drawing failure can never mask the certificate outcome.
struct Report {
    std::string command;
    json parameters = json::object();
    std::vector<Assertion> assertions;
    std::vector<std::string> artifacts;

    bool all_ok() const {
        for (const Assertion& a : assertions)
            if (!a.ok) return false;
        return true;
    }

    json to_json() const {
        json as = json::array();
        for (const Assertion& a : assertions)
            as.push_back({{"name", a.name}, {"ok", a.ok}, {"detail", a.detail}});
        return {{"command", command},
                {"parameters", parameters},
                {"assertions", as},
                {"artifacts", artifacts},
                {"allOk", all_ok()}};
    }
};

void write_json_file(const json& j, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

fs::path ensure_out_dir(const std::string& out) {
    fs::path dir(out.empty() ? "." : out);
    fs::create_directories(dir);
    return dir;
}

// UNTANGLE_THREADS caps point-mapping parallelism; default is the hardware
// concurrency. Per-point maps are independent, so results are unaffected.
std::size_t thread_budget() {
    std::size_t hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("UNTANGLE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) hw = std::min<std::size_t>(hw, v);
    }
    return hw;
}

PointCloud apply_pipeline_parallel(const DiffeoPipeline& p, const PointCloud& cloud) {
    std::size_t workers = std::min(thread_budget(), std::size_t{1} + cloud.size() / 64);
    if (workers <= 1) return pipeline_apply(p, cloud);
    PointCloud out = cloud;
    std::vector<std::thread> pool;
    std::size_t chunk = (out.points.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk, hi = std::min(out.points.size(), lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i)
                out.points[i] = pipeline_apply_point(p, std::move(out.points[i]));
        });
    }
    for (std::thread& t : pool) t.join();
    return out;
}

LabeledDataset map_classes(const LabeledDataset& d, const Network& net) {
    LabeledDataset out;
    for (const LabeledClass& c : d.classes)
        out.classes.push_back({c.label, network_eval(net, c.cloud), std::nullopt});
    return out;
}

void emit_csv(Report& rep, const LabeledDataset& d, const fs::path& dir,
              const std::string& name) {
    write_labeled_csv(d, (dir / name).string());
    rep.artifacts.push_back(name);
}

// SVG rendering is best-effort by design: the report is already on disk.
void emit_svg(Report& rep, const LabeledDataset& d, const fs::path& dir,
              const std::string& name) {
    try {
        export_svg(d, (dir / name).string());
        rep.artifacts.push_back(name);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "svg skipped (%s): %s\n", name.c_str(), e.what());
    }
}

void emit_certificate(Report& rep, const SeparabilityCertificate& cert, const fs::path& dir,
                      const std::string& name) {
    write_json_file(certificate_to_json(cert), dir / name);
    rep.artifacts.push_back(name);
}

std::string pair_text(const SeparabilityCertificate& cert) {
    std::string s;
    for (const PairCertificate& p : cert.pairs) {
        if (!s.empty()) s += "; ";
        s += std::to_string(p.labelA) + "|" + std::to_string(p.labelB) + " ";
        s += p.separable ? "margin " + format_double(p.margin) : "inseparable";
    }
    return s;
}

int finish(Report& rep, const fs::path& dir) {
    write_json_file(rep.to_json(), dir / "report.json");
    for (const Assertion& a : rep.assertions)
        std::printf("%s %s: %s\n", a.ok ? "[ok]" : "[FAILED]", a.name.c_str(),
                    a.detail.c_str());
    std::printf("%s -> %s (report.json written)\n", rep.command.c_str(),
                rep.all_ok() ? "all assertions hold" : "ASSERTIONS FAILED");
    return rep.all_ok() ? 0 : 1;
}

// Containment of every relocated image in its target ball, one assertion.
Assertion containment_assertion(const std::vector<Ball>& targets,
                                const std::vector<PointCloud>& images,
                                const std::string& name) {
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        bool in = ball_contains_cloud(targets[i], images[i], 0.0);
        if (!in) ok = false;
        if (!detail.empty()) detail += ", ";
        detail += "set " + std::to_string(i) + (in ? " inside" : " LEAKED");
    }
    return {name, ok, detail};
}

// ---------------------------------------------------------------- demo-toy
int run_demo_toy(std::size_t count, std::uint64_t seed, const std::string& out,
                 double liftHeight) {
    fs::path dir = ensure_out_dir(out);
    Report rep;
    rep.command = "demo-toy";
    rep.parameters = {{"count", count}, {"seed", seed}, {"liftHeight", liftHeight}};

    LabeledDataset d = gen_toy_abc(count, seed);
    SeparabilityCertificate rawCert = certify_pairwise(d);
    rep.assertions.push_back({"raw-classes-not-separable", !rawCert.allSeparable,
                              pair_text(rawCert)});

    LabeledDataset netImages = map_classes(d, toy_network());
    SeparabilityCertificate netCert = certify_pairwise(netImages);
    rep.assertions.push_back({"network-images-separable", netCert.allSeparable,
                              pair_text(netCert)});

    // Constructive route: lay out one target ball per label past the scene,
    // lift each class to its own height, relocate, project back down.
    std::vector<Ball> sceneBalls{Ball(Vec{-1.0, 1.0}, 1.1), Ball(Vec{1.0, -1.0}, 1.1),
                                 Ball(Vec{0.0, 0.0}, 5.0)};
    std::vector<Ball> labelBalls = layout_targets(3, sceneBalls, 1.0);
    std::vector<Ball> subTargets = assign_label_subtargets(d, labelBalls);
    LiftRelocateResult lifted = lift_relocate_project(d, subTargets, liftHeight);
    rep.assertions.push_back(
        containment_assertion(subTargets, lifted.images, "constructive-delivery"));

    LabeledDataset relocated;
    for (std::size_t i = 0; i < d.classes.size(); ++i)
        relocated.classes.push_back({d.classes[i].label, lifted.images[i], std::nullopt});
    SeparabilityCertificate relCert = certify_pairwise(relocated);
    rep.assertions.push_back({"constructive-images-separable", relCert.allSeparable,
                              pair_text(relCert)});

    emit_certificate(rep, rawCert, dir, "toy_raw_certificate.json");
    emit_certificate(rep, netCert, dir, "toy_net_certificate.json");
    emit_certificate(rep, relCert, dir, "toy_constructive_certificate.json");
    emit_csv(rep, d, dir, "toy_raw.csv");
    emit_csv(rep, netImages, dir, "toy_net_images.csv");
    emit_csv(rep, relocated, dir, "toy_relocated.csv");
    int code = finish(rep, dir);
    emit_svg(rep, d, dir, "toy_raw.svg");
    emit_svg(rep, netImages, dir, "toy_net_images.svg");
    emit_svg(rep, relocated, dir, "toy_relocated.svg");
    return code;
}

// --------------------------------------------------------------- demo-hopf
int run_demo_hopf(std::size_t count, const std::string& out, double liftHeight) {
    fs::path dir = ensure_out_dir(out);
    Report rep;
    rep.command = "demo-hopf";
    rep.parameters = {{"count", count}, {"liftHeight", liftHeight}};

    LabeledDataset d = gen_hopf_link(count);

    double lk = linking_number(d.classes[0].cloud.points, d.classes[1].cloud.points);
    rep.assertions.push_back({"inputs-linked", std::fabs(std::fabs(lk) - 1.0) <= 0.05,
                              "linking number " + format_double(lk)});

    LabeledDataset netImages = map_classes(d, hopf_network());
    SeparabilityCertificate netCert = certify_pairwise(netImages);
    rep.assertions.push_back({"network-images-separable", netCert.allSeparable,
                              pair_text(netCert)});

    std::vector<Ball> targets{Ball(Vec{20.0, 0.0, 0.0}, 2.0),
                              Ball(Vec{-20.0, 0.0, 0.0}, 2.0)};
    LiftRelocateResult lifted = lift_relocate_project(d, targets, liftHeight);
    rep.assertions.push_back(
        containment_assertion(targets, lifted.images, "constructive-delivery"));

    LabeledDataset relocated;
    for (std::size_t i = 0; i < d.classes.size(); ++i)
        relocated.classes.push_back({d.classes[i].label, lifted.images[i], std::nullopt});
    SeparabilityCertificate relCert = certify_pairwise(relocated);
    rep.assertions.push_back({"constructive-images-separable", relCert.allSeparable,
                              pair_text(relCert)});

    emit_certificate(rep, netCert, dir, "hopf_net_certificate.json");
    emit_certificate(rep, relCert, dir, "hopf_constructive_certificate.json");
    emit_csv(rep, d, dir, "hopf_raw.csv");
    emit_csv(rep, netImages, dir, "hopf_net_images.csv");
    emit_csv(rep, relocated, dir, "hopf_relocated.csv");
    int code = finish(rep, dir);
    emit_svg(rep, d, dir, "hopf_raw.svg");
    emit_svg(rep, netImages, dir, "hopf_net_images.svg");
    emit_svg(rep, relocated, dir, "hopf_relocated.svg");
    return code;
}

// -------------------------------------------------------------- demo-swiss
int run_demo_swiss(const std::string& out) {
    fs::path dir = ensure_out_dir(out);
    Report rep;
    rep.command = "demo-swiss";
    rep.parameters = {{"t0", 8.0}, {"t1", 21.0}, {"grid", 40}};

    SwissRoll roll = gen_swiss_roll(8.0, 21.0, 40, 40);
    double worst = 0.0;
    LabeledDataset unrolled;
    unrolled.classes.push_back({0, PointCloud(), std::nullopt});
    for (std::size_t i = 0; i < roll.cloud.size(); ++i) {
        auto [s, t] = unroll_swiss(roll.cloud.points[i]);
        worst = std::max({worst, std::fabs(s - roll.params[i][0]),
                          std::fabs(t - roll.params[i][1])});
        unrolled.classes[0].cloud.points.push_back(Vec{s, t});
    }
    rep.assertions.push_back({"roll-unroll-roundtrip", worst <= 1e-9,
                              "worst parameter error " + format_double(worst)});

    LabeledDataset rolled;
    rolled.classes.push_back({0, roll.cloud, std::nullopt});
    emit_csv(rep, rolled, dir, "swiss_points.csv");
    emit_csv(rep, unrolled, dir, "swiss_unrolled.csv");
    int code = finish(rep, dir);
    emit_svg(rep, rolled, dir, "swiss_points.svg");
    emit_svg(rep, unrolled, dir, "swiss_unrolled.svg");
    return code;
}

// ------------------------------------------------------------------ certify
int run_certify(const std::string& csvPath, const std::string& out) {
    fs::path dir = ensure_out_dir(out);
    Report rep;
    rep.command = "certify";
    rep.parameters = {{"input", csvPath}};

    LabeledDataset d = read_labeled_csv(csvPath);
    SeparabilityCertificate cert = certify_pairwise(d);
    rep.assertions.push_back({"pairwise-separable", cert.allSeparable, pair_text(cert)});
    emit_certificate(rep, cert, dir, "certificate.json");
    return finish(rep, dir);
}

// ----------------------------------------------------------------- eval-net
Network load_network(const std::string& spec) {
    if (spec == "toy") return toy_network();
    if (spec == "hopf") return hopf_network();
    std::ifstream in(spec);
    if (!in) throw std::runtime_error("cannot read network file " + spec);
    json j;
    in >> j;
    return network_from_json(j);
}

int run_eval_net(const std::string& netSpec, const std::string& csvPath,
                 const std::string& out) {
    fs::path dir = ensure_out_dir(out);
    Report rep;
    rep.command = "eval-net";
    rep.parameters = {{"net", netSpec}, {"input", csvPath}};

    Network net = load_network(netSpec);
    LabeledDataset d = read_labeled_csv(csvPath);
    LabeledDataset images = map_classes(d, net);
    emit_csv(rep, images, dir, "eval_images.csv");
    int code = finish(rep, dir);
    if (images.dim() <= 3) emit_svg(rep, images, dir, "eval_images.svg");
    return code;
}

// ----------------------------------------------------------------- relocate
Ball ball_from_json(const json& j) {
    return Ball(j.at("center").get<Vec>(), j.at("radius").get<double>());
}

PointCloud merged_cloud(const LabeledDataset& d) {
    PointCloud all;
    for (const LabeledClass& c : d.classes)
        all.points.insert(all.points.end(), c.cloud.points.begin(), c.cloud.points.end());
    return all;
}

int run_relocate(const std::string& configPath, const std::string& out, double stepSize,
                 const std::string& waypointsPath) {
    fs::path dir = ensure_out_dir(out);
    Report rep;
    rep.command = "relocate";
    rep.parameters = {{"config", configPath},
                      {"stepSize", stepSize},
                      {"waypoints", waypointsPath}};

    std::ifstream in(configPath);
    if (!in) throw std::runtime_error("cannot read config file " + configPath);
    json cfg;
    in >> cfg;

    RelocationProblem problem;
    fs::path base = fs::path(configPath).parent_path();
    for (const json& s : cfg.at("sets")) {
        fs::path csv = s.at("csv").get<std::string>();
        if (csv.is_relative()) csv = base / csv;
        RelocationSet set{merged_cloud(read_labeled_csv(csv.string())),
                          ball_from_json(s.at("source")),
                          {}};
        if (s.contains("waypoints"))
            for (const json& w : s.at("waypoints")) set.waypoints.push_back(w.get<Vec>());
        problem.sets.push_back(std::move(set));
    }
    for (const json& t : cfg.at("targets")) problem.targets.push_back(ball_from_json(t));

    // Waypoint CSV rows labeled i become manual detour points for set i.
    if (!waypointsPath.empty()) {
        LabeledDataset wps = read_labeled_csv(waypointsPath);
        for (const LabeledClass& c : wps.classes) {
            if (c.label < 0 || static_cast<std::size_t>(c.label) >= problem.sets.size())
                throw std::runtime_error("waypoints file labels a nonexistent set");
            problem.sets[c.label].waypoints = c.cloud.points;
        }
    }

    RelocationResult res = relocate_disjoint(problem);
    DiffeoPipeline pipeline = res.pipeline;
    std::vector<PointCloud> images = std::move(res.images);
    if (stepSize > 0.0) {
        pipeline = pipeline_with_step(pipeline, stepSize);
        for (std::size_t i = 0; i < problem.sets.size(); ++i)
            images[i] = apply_pipeline_parallel(pipeline, problem.sets[i].cloud);
    }
    rep.assertions.push_back(containment_assertion(problem.targets, images, "delivery"));

    write_json_file(pipeline_to_json(pipeline), dir / "relocate_pipeline.json");
    rep.artifacts.push_back("relocate_pipeline.json");

    LabeledDataset relocated, sources;
    for (std::size_t i = 0; i < images.size(); ++i) {
        relocated.classes.push_back({static_cast<int>(i), images[i], std::nullopt});
        sources.classes.push_back({static_cast<int>(i), problem.sets[i].cloud, std::nullopt});
    }
    emit_csv(rep, relocated, dir, "relocated.csv");
    int code = finish(rep, dir);
    if (relocated.dim() <= 3) {
        emit_svg(rep, sources, dir, "sources.svg");
        emit_svg(rep, relocated, dir, "relocated.svg");
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"untangle: compactly supported diffeomorphisms that relocate labeled "
                 "point sets into prescribed balls, with separability certificates"};
    app.require_subcommand(1);

    std::size_t count = 200;
    std::uint64_t seed = 7;
    std::string out = ".";
    std::string config, netSpec, csvPath, waypointsPath;
    double stepSize = 0.0, liftHeight = 0.0;

    CLI::App* demoToy = app.add_subcommand(
        "demo-toy", "two disks in a ring: raw inseparable, network images separable, "
                    "constructive relocation");
    demoToy->add_option("--count", count, "samples per class")->capture_default_str();
    demoToy->add_option("--seed", seed, "sampling seed")->capture_default_str();
    demoToy->add_option("--out", out, "output directory")->capture_default_str();
    demoToy->add_option("--lift-height", liftHeight,
                        "height gap between lifted classes (0 = auto)");

    CLI::App* demoHopf = app.add_subcommand(
        "demo-hopf", "linked circles: network separation plus lift/relocate/project");
    demoHopf->add_option("--count", count, "samples per circle")->capture_default_str();
    demoHopf->add_option("--out", out, "output directory")->capture_default_str();
    demoHopf->add_option("--lift-height", liftHeight,
                         "height gap between lifted classes (0 = auto)");

    CLI::App* demoSwiss =
        app.add_subcommand("demo-swiss", "roll a parameter grid onto the surface and "
                                         "unroll it back");
    demoSwiss->add_option("--out", out, "output directory")->capture_default_str();

    CLI::App* certify =
        app.add_subcommand("certify", "pairwise hard-margin certificates for a labeled CSV");
    certify->add_option("csv", csvPath, "labeled CSV file")->required();
    certify->add_option("--out", out, "output directory")->capture_default_str();

    CLI::App* evalNet = app.add_subcommand("eval-net", "run a network over a labeled CSV");
    evalNet->add_option("--net", netSpec, "toy | hopf | weights JSON file")->required();
    evalNet->add_option("csv", csvPath, "labeled CSV file")->required();
    evalNet->add_option("--out", out, "output directory")->capture_default_str();

    CLI::App* relocate = app.add_subcommand(
        "relocate", "move each configured set into its target ball, emit the pipeline");
    relocate->add_option("--config", config, "problem JSON (sets + targets)")->required();
    relocate->add_option("--out", out, "output directory")->capture_default_str();
    relocate->add_option("--step-size", stepSize,
                         "re-integrate with at most this step (0 = as built)");
    relocate->add_option("--waypoints", waypointsPath,
                         "CSV of manual detour points, label = set index");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(demoToy)) return run_demo_toy(count, seed, out, liftHeight);
        if (app.got_subcommand(demoHopf)) return run_demo_hopf(count, out, liftHeight);
        if (app.got_subcommand(demoSwiss)) return run_demo_swiss(out);
        if (app.got_subcommand(certify)) return run_certify(csvPath, out);
        if (app.got_subcommand(evalNet)) return run_eval_net(netSpec, csvPath, out);
        if (app.got_subcommand(relocate))
            return run_relocate(config, out, stepSize, waypointsPath);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
