#include <cmath>
#include <cstdio>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hm/errors.hpp"
#include "hm/io.hpp"
#include "hm/pipeline.hpp"
#include "hm/tube.hpp"

using namespace hm;
using io::json;

namespace {

constexpr int kAuditFailure = 2;
constexpr int kAllCapped = 3;

struct Options {
    std::string surface = "1,1";
    uint64_t seed = 1;
    int64_t cap_dist = SearchCaps{}.max_distance;
    int64_t cap_int = SearchCaps{}.max_intersection;
    double K = 4;
    std::string out = "-";
    std::string in;
    int count = 10;
    int walk = 4;
    int pair = -1;
    int max_main = -1;
    bool emit_slices = false;
    bool no_boundary = false;
    double r_plus = 0, r_minus = 0;
    std::string dot;
    std::vector<std::string> files;
    std::string omega;
    double t = 0;
};

PipelineConfig pipeline_config(const Options& o) {
    PipelineConfig c;
    c.caps.max_distance = o.cap_dist;
    c.caps.max_intersection = o.cap_int;
    c.model.caps = c.caps;
    c.model.K = o.K;
    c.model.boundary_blocks = !o.no_boundary;
    c.model.r_plus = o.r_plus;
    c.model.r_minus = o.r_minus;
    c.max_main_distance = o.max_main;
    return c;
}

std::vector<MarkingPair> load_pairs(const Options& o, SurfaceSig& s) {
    if (o.in.empty()) throw std::runtime_error("--in <corpus.json> is required");
    auto pairs = io::corpus_from_json(io::read_file(o.in), &s);
    if (o.pair >= 0) {
        std::vector<MarkingPair> one;
        for (auto& p : pairs)
            if (p.id == o.pair) one.push_back(p);
        if (one.empty()) throw std::runtime_error("no pair with id " + std::to_string(o.pair));
        return one;
    }
    return pairs;
}

json distance_json(double d) { return std::isinf(d) ? json("inf") : json(d); }

enum class Stage { Hierarchy, Resolution, Model, Omegas, Pipeline };

json record(const PairResult& r, Stage stage, bool slices) {
    json j{{"id", r.id}};
    if (!r.built) {
        j["error"] = r.error;
        j["cap_exceeded"] = r.cap_exceeded;
        if (r.skipped) j["skipped"] = true;
        return j;
    }
    if (stage == Stage::Omegas) {
        json tubes = json::array();
        for (auto& [v, t] : r.M.tubes)
            tubes.push_back({{"vertex", io::to_json(v)},
                             {"omega_H", io::to_json(t.omega_H)},
                             {"omega_M", io::to_json(t.omega_M)},
                             {"omega_nu", io::to_json(t.omega_nu)},
                             {"d_H2", distance_json(omega_distance(t.omega_H, t.omega_nu))}});
        j["tubes"] = tubes;
        j["D"] = r.constants.D;
        return j;
    }
    j["hierarchy"] = io::to_json(r.H);
    j["hierarchy_report"] = io::to_json(r.hierarchy);
    if (stage == Stage::Hierarchy) return j;
    j["resolution"] = io::to_json(r.R, slices);
    j["resolution_report"] = io::to_json(r.resolution);
    if (stage == Stage::Resolution) return j;
    j["model"] = io::to_json(r.M);
    j["model_report"] = io::to_json(r.model);
    if (stage == Stage::Model) return j;
    j["constants"] = io::to_json(r.constants);
    j["counting"] = {{"ratio", r.counting.ratio},
                     {"witness_max", r.counting.witness_max},
                     {"fit_exponent", r.counting.fit_exponent}};
    return j;
}

json aggregate_json(const Aggregate& a) {
    return json{{"pairs", a.pairs},   {"built", a.built},     {"valid", a.valid},
                {"capped", a.capped}, {"skipped", a.skipped}, {"failed", a.failed},
                {"constants", io::to_json(a.constants)}};
}

int run_stage(const Options& o, Stage stage) {
    SurfaceSig s;
    auto pairs = load_pairs(o, s);
    auto results = run_pairs(pairs, pipeline_config(o), default_threads());
    json records = json::array();
    for (auto& r : results) records.push_back(record(r, stage, o.emit_slices));
    auto agg = aggregate(results);
    json doc{{"format", io::kFormat}, {"surface", io::surface_str(s)}, {"records", records}};
    if (stage == Stage::Pipeline || stage == Stage::Omegas) doc["aggregate"] = aggregate_json(agg);
    io::write_file(o.out, io::dump(doc));
    if (!o.dot.empty()) {
        for (auto& r : results)
            if (r.built) {
                io::write_file(o.dot, io::to_dot(r.M));
                break;
            }
    }
    for (auto& r : results)
        if (!r.ok() && !r.cap_exceeded && !r.skipped)
            std::cerr << "pair " << r.id << ": " << (r.error.empty() ? "validation failed" : r.error) << "\n";
    if (!results.empty() && agg.capped == agg.pairs) return kAllCapped;
    return agg.failed > 0 ? kAuditFailure : 0;
}

// Re-validates stored artifacts: hierarchies, resolutions and models are decoded from the file
// and checked from scratch.
int run_audit(const Options& o) {
    int bad = 0, checked = 0;
    auto flag = [&](const std::string& file, const json& id, const std::string& what) {
        ++bad;
        std::cout << file << " pair " << id.dump() << ": " << what << "\n";
    };
    for (auto& file : o.files) {
        json doc;
        try {
            doc = io::read_file(file);
        } catch (const std::exception& e) {
            flag(file, "null", std::string("unreadable: ") + e.what());
            continue;
        }
        if (doc.value("format", 0) != io::kFormat) {
            flag(file, "null", "schema: missing or unknown format");
            continue;
        }
        if (doc.contains("pairs")) {
            try {
                io::corpus_from_json(doc);
                ++checked;
            } catch (const std::exception& e) {
                flag(file, "null", std::string("schema: ") + e.what());
            }
            continue;
        }
        if (!doc.contains("records")) {
            flag(file, "null", "schema: no records");
            continue;
        }
        for (auto& rec : doc.at("records")) {
            json id = rec.value("id", json());
            if (!rec.contains("hierarchy")) continue;
            try {
                s05::reset_frames();
                Hierarchy H = io::hierarchy_from_json(rec.at("hierarchy"));
                auto hr = validate_hierarchy(H);
                for (auto& f : hr.failures) flag(file, id, f);
                if (!hr.ok() && hr.failures.empty()) flag(file, id, "hierarchy invalid");
                ++checked;
                if (!rec.contains("resolution")) continue;
                Resolution R = resolve(H);
                Resolution stored = io::resolution_from_json(rec.at("resolution"));
                bool same = stored.moves.size() == R.moves.size();
                for (size_t i = 0; same && i < R.moves.size(); ++i)
                    same = stored.moves[i].geodesic == R.moves[i].geodesic && stored.moves[i].from == R.moves[i].from;
                if (!same) flag(file, id, "resolution moves differ from a fresh resolution");
                if (!stored.slices.empty() && stored.slices != R.slices)
                    flag(file, id, "resolution slices differ from a fresh resolution");
                auto rr = audit_resolution(H, R);
                for (auto& f : rr.failures) flag(file, id, f);
                if (!rec.contains("model")) continue;
                ModelComplex M = io::model_from_json(H.surface, rec.at("model"));
                auto mr = validate_model(M, H, R);
                for (auto& f : mr.failures) flag(file, id, f);
                if (!mr.ok() && mr.failures.empty()) flag(file, id, "model invalid");
                // stored coefficients must match a fresh evaluation
                ModelComplex fresh = M;
                compute_omegas(fresh, H);
                for (auto& [v, t] : M.tubes) {
                    const auto& f = fresh.tubes.at(v);
                    auto same_omega = [](const Omega& a, const Omega& b) {
                        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
                    };
                    if (!same_omega(t.omega_H, f.omega_H) || !same_omega(t.omega_M, f.omega_M) ||
                        !same_omega(t.omega_nu, f.omega_nu))
                        flag(file, id, "stored coefficients differ at " + v.str());
                }
            } catch (const std::exception& e) {
                flag(file, id, std::string("schema or structure: ") + e.what());
            }
        }
    }
    std::cout << (bad ? "FAIL" : "OK") << ": " << checked << " artifacts checked, " << bad << " problems\n";
    return bad ? kAuditFailure : 0;
}

cplx parse_omega(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    static const std::regex re(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?:([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i)?$)");
    static const std::regex pure(R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?i$)");
    std::smatch m;
    if (std::regex_match(s, m, pure)) {
        std::string b = m[1].str();
        double im = b.empty() || b == "+" ? 1.0 : b == "-" ? -1.0 : std::stod(b);
        return {0.0, im};
    }
    if (std::regex_match(s, m, re) && m[1].matched) {
        double re_part = std::stod(m[1].str());
        double im = 0;
        if (m[2].matched) im = (m[2].str() == "-" ? -1.0 : 1.0) * (m[3].matched ? std::stod(m[3].str()) : 1.0);
        return {re_part, im};
    }
    throw DomainError("cannot read a complex number from '" + text + "' (use a+bi)");
}

int run_tube(const Options& o) {
    BoundaryData bd{parse_omega(o.omega), o.t};
    auto tp = tube_from_boundary(bd);
    json j{{"format", io::kFormat},
           {"lambda", {{"re", tp.lambda.real()}, {"im", tp.lambda.imag()}}},
           {"r", tp.r},
           {"omega", {{"re", bd.omega.real()}, {"im", bd.omega.imag()}}},
           {"t", bd.t}};
    io::write_file(o.out, io::dump(j));
    return 0;
}

int run_gen(const Options& o) {
    SurfaceSig s = parse_surface(o.surface);
    require_supported(s);
    auto pairs = generate_corpus(s, o.count, o.walk, o.seed);
    io::write_file(o.out, io::dump(io::corpus_json(s, o.walk, o.seed, pairs)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hierarchies of tight geodesics, their resolutions and the combinatorial model manifold"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--surface", o.surface, "surface as g,b (1,1 or 0,4 or 0,5)");
    app.add_option("--seed", o.seed, "corpus seed");
    app.add_option("--caps.dist", o.cap_dist, "curve complex search depth cap");
    app.add_option("--caps.int", o.cap_int, "intersection number cap for search candidates");
    app.add_option("--K", o.K, "threshold for omega_nu");
    app.add_option("--out", o.out, "output file (- for stdout)");

    auto* gen = app.add_subcommand("gen", "generate marking pairs by random elementary moves");
    gen->add_option("--count", o.count, "number of pairs");
    gen->add_option("--walk", o.walk, "walk length");

    auto add_input = [&](CLI::App* c) {
        c->add_option("--in", o.in, "corpus file")->required();
        c->add_option("--pair", o.pair, "process only this pair id");
        c->add_option("--max-main", o.max_main, "skip pairs whose main geodesic is longer");
        c->add_flag("--no-boundary-blocks", o.no_boundary, "leave the boundary faces open");
        c->add_option("--r-plus", o.r_plus, "height added at the top boundary");
        c->add_option("--r-minus", o.r_minus, "height added at the bottom boundary");
    };
    auto* hier = app.add_subcommand("hier", "hierarchies");
    hier->require_subcommand(1);
    auto* hbuild = hier->add_subcommand("build", "build hierarchies");
    add_input(hbuild);
    auto* hres = hier->add_subcommand("resolve", "build and resolve hierarchies");
    add_input(hres);
    hres->add_flag("--emit-slices", o.emit_slices, "write every slice");

    auto* model = app.add_subcommand("model", "model manifolds");
    model->require_subcommand(1);
    auto* mbuild = model->add_subcommand("build", "build model manifolds");
    add_input(mbuild);
    mbuild->add_flag("--emit-slices", o.emit_slices, "write every slice");
    mbuild->add_option("--dot", o.dot, "write the gluing graph of the first model as DOT");
    auto* momega = model->add_subcommand("omegas", "meridian coefficients");
    add_input(momega);

    auto* pipe = app.add_subcommand("pipeline", "every stage plus audits and empirical constants");
    add_input(pipe);

    auto* audit = app.add_subcommand("audit", "re-validate artifact files");
    audit->add_option("files", o.files, "artifact files")->required();

    auto* tube = app.add_subcommand("tube", "tube geometry");
    tube->require_subcommand(1);
    auto* solve = tube->add_subcommand("solve", "boundary data to tube parameters");
    solve->add_option("--omega", o.omega, "omega as a+bi")->required();
    solve->add_option("--t", o.t, "t")->required();

    for (auto* c : {gen, hier, hbuild, hres, model, mbuild, momega, pipe, audit, tube, solve}) c->fallthrough();

    CLI11_PARSE(app, argc, argv);
    try {
        if (*gen) return run_gen(o);
        if (*hbuild) return run_stage(o, Stage::Hierarchy);
        if (*hres) return run_stage(o, Stage::Resolution);
        if (*mbuild) return run_stage(o, Stage::Model);
        if (*momega) return run_stage(o, Stage::Omegas);
        if (*pipe) return run_stage(o, Stage::Pipeline);
        if (*audit) return run_audit(o);
        if (*solve) return run_tube(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
