#include "burgers/bm.hpp"
#include "burgers/errors.hpp"
#include "burgers/experiments.hpp"
#include "burgers/loops.hpp"
#include "burgers/params.hpp"
#include "burgers/path.hpp"
#include "burgers/rng.hpp"
#include "burgers/sampler.hpp"
#include "burgers/word.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace burgers;
using nlohmann::json;

// Flat key=value config support for every subcommand. Lines become --key value
// pairs spliced in place of the --config flag; flags given explicitly on the
// command line win. '#' and ';' start comments.
std::vector<std::string> expand_config(const std::vector<std::string>& argv_in) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < argv_in.size(); ++i) {
        const std::string& tok = argv_in[i];
        std::string file;
        if (tok == "--config") {
            if (i + 1 >= argv_in.size()) throw CLI::ParseError("--config needs a file", 2);
            file = argv_in[++i];
        } else if (tok.rfind("--config=", 0) == 0) {
            file = tok.substr(9);
        } else {
            out.push_back(tok);
            continue;
        }
        std::ifstream f(file);
        if (!f) throw CLI::ParseError("cannot open config file: " + file, 2);
        std::vector<std::string> expanded;
        std::string line;
        while (std::getline(f, line)) {
            const auto cut = line.find_first_of("#;");
            if (cut != std::string::npos) line.resize(cut);
            const auto a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            const auto b = line.find_last_not_of(" \t\r");
            line = line.substr(a, b - a + 1);
            const auto eq = line.find('=');
            if (eq == std::string::npos || eq == 0)
                throw CLI::ParseError("config line is not key=value: " + line, 2);
            std::string key = line.substr(0, eq);
            std::string val = line.substr(eq + 1);
            while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
            const auto va = val.find_first_not_of(" \t");
            val = va == std::string::npos ? std::string{} : val.substr(va);
            if (val.size() >= 2 && (val.front() == '"' || val.front() == '\'') &&
                val.back() == val.front())
                val = val.substr(1, val.size() - 2);
            const std::string flag = "--" + key;
            bool given = false;
            for (const std::string& t : argv_in)
                if (t == flag || t.rfind(flag + "=", 0) == 0) given = true;
            if (given) continue;
            expanded.push_back(flag);
            expanded.push_back(val);
        }
        out.insert(out.end(), expanded.begin(), expanded.end());
    }
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw Error("cannot open output file: " + out_path);
    f << text << "\n";
}

json path_json(const GridPath& path) {
    json j;
    j["dt"] = path.dt;
    j["t0"] = path.t0;
    j["u"] = path.u;
    j["v"] = path.v;
    return j;
}

struct SampleArgs {
    double p = 1.0 / 3.0;
    std::int64_t n = 10;
    std::uint64_t seed = 1;
    std::int64_t max_trials = 100'000'000;
    std::string mode = "conditioned";
    std::string out;
};

int run_sample(const SampleArgs& a) {
    const ModelParams mp = derive_params(a.p);
    json j;
    j["p"] = a.p;
    j["seed"] = a.seed;
    j["mode"] = a.mode;
    if (a.mode == "iid") {
        const Word w = iid_word(mp, a.n, 1, a.seed);
        j["word"] = to_text(w);
        j["length"] = w.size();
    } else {
        const SamplerReport rep = a.mode == "backward"
                                      ? sample_no_burgers_backward(mp, a.n, a.seed, a.max_trials)
                                      : sample_empty_reduction(mp, a.n, a.seed, a.max_trials);
        j["word"] = to_text(rep.word);
        j["length"] = rep.word.size();
        j["origin"] = rep.word.origin;
        j["trials"] = rep.trials;
        j["acceptance_estimate"] = rep.acceptance_estimate;
    }
    emit(j.dump(2), a.out);
    return 0;
}

struct WordArgs {
    std::string word;
    std::string out;
};

int run_reduce(const WordArgs& a) {
    const Word w = word_from_text(a.word);
    const ReducedWord r = reduce(w);
    const CountVector cv = counts(w);
    json j;
    j["input"] = a.word;
    j["reduced"] = to_text(r.as_word());
    j["empty"] = r.empty();
    j["counts"] = {{"d", cv.d},           {"d_star", cv.d_star}, {"h", cv.h},
                   {"c", cv.c},           {"o", cv.o},           {"c_f", cv.c_f},
                   {"r", cv.r},           {"n_hb", cv.n_hb},     {"n_cb", cv.n_cb},
                   {"n_ho", cv.n_ho},     {"n_co", cv.n_co},     {"n_fo", cv.n_fo}};
    emit(j.dump(2), a.out);
    return 0;
}

int run_match(const WordArgs& a) {
    const Word w = word_from_text(a.word);
    const MatchTable m = match_indices(w);
    json pairs = json::array();
    for (std::int64_t i = w.first_index(); i <= w.last_index(); ++i) {
        const auto phi = m.phi(i);
        if (phi && i < *phi) pairs.push_back({i, *phi});
    }
    json j;
    j["word"] = a.word;
    j["pairs"] = pairs;
    j["unmatched"] = m.unmatched_indices();
    emit(j.dump(2), a.out);
    return 0;
}

struct PathArgs {
    std::string word;
    std::int64_t n_scale = 1;
    std::string format = "json";
    std::string out;
};

int run_path(const PathArgs& a) {
    const Word w = word_from_text(a.word);
    const Word y = resolve_flex(w, match_indices(w));
    const LatticePath lp = lattice_path(y, a.n_scale);
    if (a.format == "csv") {
        emit(a.n_scale > 1 ? path_to_csv_scaled(lp) : path_to_csv(lp), a.out);
        return 0;
    }
    json points = json::array();
    for (std::size_t k = 0; k < lp.points.size(); ++k)
        points.push_back({lp.j0 + static_cast<std::int64_t>(k), lp.points[k].first,
                          lp.points[k].second});
    json j;
    j["word"] = a.word;
    j["resolved"] = to_text(y);
    j["n_scale"] = a.n_scale;
    j["points"] = points;
    emit(j.dump(2), a.out);
    return 0;
}

struct LoopsArgs {
    std::string word;
    std::int64_t at = -1;
    std::int64_t j_max = 16;
    std::string out;
};

int run_loops(const LoopsArgs& a) {
    const Word w = word_from_text(a.word);
    const MatchTable m = match_indices(w);
    json j;
    j["word"] = a.word;
    j["forest"] = json::parse(loop_forest_json(loop_forest(w, m)));
    try {
        const EdgeCount ec = edge_count_check(w);
        j["edges"] = {{"map_edges", ec.map_edges}, {"quad_edges", ec.quad_edges}};
    } catch (const NotClosed&) {
        // edge counts are only defined for words reducing to the empty word
    }
    if (a.at >= 0) {
        const SurroundingLoops sl = surrounding_loops(w, m, a.at, a.j_max);
        json thetas = json::array();
        for (const auto& [open, close] : sl.thetas) thetas.push_back({open, close});
        j["surrounding"] = {{"at", sl.base_index}, {"thetas", thetas}};
    }
    emit(j.dump(2), a.out);
    return 0;
}

struct BmArgs {
    double p = 1.0 / 3.0;
    double dt = 1.0 / 256.0;
    double horizon = 1.0;
    double delta = 0.02;
    double cap_c = 4.0;
    double start_u = 0.0, start_v = 0.0;
    double end_u = 0.0, end_v = 0.0;
    std::uint64_t seed = 1;
    std::string kind = "meander";
    std::string format = "csv";
    std::string out;
};

int run_bm_sample(const BmArgs& a) {
    const BmConfig cfg = bm_config(a.p, a.dt, a.seed);
    Rng rng(mix_seed(a.seed, 0xB33Full));
    GridPath path;
    json meta;
    if (a.kind == "bm") {
        path = sample_correlated_bm(cfg, a.horizon, {a.start_u, a.start_v}, rng);
    } else if (a.kind == "meander") {
        path = sample_meander(cfg, a.horizon, rng, 4'000'000);
    } else if (a.kind == "excursion") {
        const Excursion exc = sample_excursion(cfg, {a.delta, a.cap_c}, rng, 4'000'000);
        path = exc.path;
        meta["delta"] = exc.delta;
        meta["trials"] = exc.trials;
    } else if (a.kind == "bridge") {
        path = sample_bridge(cfg, a.horizon, {a.start_u, a.start_v}, {a.end_u, a.end_v}, rng);
    } else {
        throw OutOfRange("unknown kind: " + a.kind);
    }
    if (a.format == "csv") {
        emit(grid_path_csv(path), a.out);
        return 0;
    }
    json j = path_json(path);
    j["kind"] = a.kind;
    j["p"] = a.p;
    if (!meta.empty()) j["meta"] = meta;
    emit(j.dump(2), a.out);
    return 0;
}

struct DensityArgs {
    double p = 1.0 / 3.0;
    double t = 1.0;
    double u_max = 3.0, v_max = 3.0;
    int cells = 32;
    std::string out;
};

int run_density(const DensityArgs& a) {
    const BmConfig cfg = bm_config(a.p, 1e-3, 0);
    emit(density_table_csv(cfg, a.t, a.u_max, a.v_max, a.cells, a.cells), a.out);
    return 0;
}

struct ExperimentArgs {
    ExperimentSpec spec;
    std::string out;
};

int run_experiment_cmd(const ExperimentArgs& a) {
    const ExperimentReport rep = run_experiment(a.spec);
    emit(report_json(rep), a.out);
    return rep.pass ? 0 : 1;
}

struct ReportArgs {
    std::string in;
    std::string out;
};

int run_report(const ReportArgs& a) {
    std::ifstream f(a.in);
    if (!f) throw Error("cannot open report file: " + a.in);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw Error("report is not valid JSON: " + std::string(e.what()));
    }
    for (const char* field : {"id", "params", "estimates", "expected", "pass",
                              "runtime_seconds", "replica_count"})
        if (!j.contains(field)) throw Error("report is missing field: " + std::string(field));
    const bool pass = j.at("pass").get<bool>();
    std::ostringstream line;
    line << j.at("id").get<std::string>() << " pass=" << (pass ? "true" : "false")
         << " estimates=" << j.at("estimates").size()
         << " replicas=" << j.at("replica_count").get<std::int64_t>()
         << " runtime_s=" << j.at("runtime_seconds").get<double>();
    emit(line.str(), a.out);
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"inventory-accumulation model toolkit: word samplers, reducers, loop "
                 "structure, Brownian cone references, and Monte Carlo experiments"};
    app.require_subcommand(1);

    SampleArgs sample_args;
    CLI::App* sample = app.add_subcommand("sample", "draw a word from the symbol law");
    sample->add_option("--p", sample_args.p, "flexible-order intensity");
    sample->add_option("--n", sample_args.n, "half-length (conditioned/backward) or length (iid)");
    sample->add_option("--seed", sample_args.seed, "rng seed");
    sample->add_option("--mode", sample_args.mode, "conditioned | iid | backward")
        ->check(CLI::IsMember({"conditioned", "iid", "backward"}));
    sample->add_option("--max-trials", sample_args.max_trials, "rejection budget");
    sample->add_option("--out", sample_args.out, "output file (default stdout)");

    WordArgs reduce_args;
    CLI::App* reduce_cmd = app.add_subcommand("reduce", "reduce a word to its normal form");
    reduce_cmd->add_option("--word", reduce_args.word, "word text, e.g. HChF")->required();
    reduce_cmd->add_option("--out", reduce_args.out, "output file (default stdout)");

    WordArgs match_args;
    CLI::App* match_cmd = app.add_subcommand("match", "print the match involution");
    match_cmd->add_option("--word", match_args.word, "word text")->required();
    match_cmd->add_option("--out", match_args.out, "output file (default stdout)");

    PathArgs path_args;
    CLI::App* path_cmd = app.add_subcommand("path", "lattice walk of a flex-resolved word");
    path_cmd->add_option("--word", path_args.word, "word text")->required();
    path_cmd->add_option("--n", path_args.n_scale, "diffusive rescaling n");
    path_cmd->add_option("--format", path_args.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    path_cmd->add_option("--out", path_args.out, "output file (default stdout)");

    LoopsArgs loops_args;
    CLI::App* loops_cmd = app.add_subcommand("loops", "loop forest of a word");
    loops_cmd->add_option("--word", loops_args.word, "word text")->required();
    loops_cmd->add_option("--at", loops_args.at, "also list loops surrounding this index");
    loops_cmd->add_option("--j-max", loops_args.j_max, "cap on surrounding loops");
    loops_cmd->add_option("--out", loops_args.out, "output file (default stdout)");

    BmArgs bm_args;
    CLI::App* bm_cmd = app.add_subcommand("bm-sample", "draw a Brownian reference path");
    bm_cmd->add_option("--p", bm_args.p, "flexible-order intensity");
    bm_cmd->add_option("--dt", bm_args.dt, "grid step");
    bm_cmd->add_option("--t", bm_args.horizon, "horizon");
    bm_cmd->add_option("--seed", bm_args.seed, "rng seed");
    bm_cmd->add_option("--kind", bm_args.kind, "bm | meander | excursion | bridge")
        ->check(CLI::IsMember({"bm", "meander", "excursion", "bridge"}));
    bm_cmd->add_option("--delta", bm_args.delta, "excursion window size");
    bm_cmd->add_option("--cap-c", bm_args.cap_c, "excursion window constant C");
    bm_cmd->add_option("--start-u", bm_args.start_u, "start U (bm/bridge)");
    bm_cmd->add_option("--start-v", bm_args.start_v, "start V (bm/bridge)");
    bm_cmd->add_option("--end-u", bm_args.end_u, "bridge end U");
    bm_cmd->add_option("--end-v", bm_args.end_v, "bridge end V");
    bm_cmd->add_option("--format", bm_args.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    bm_cmd->add_option("--out", bm_args.out, "output file (default stdout)");

    DensityArgs density_args;
    CLI::App* density_cmd = app.add_subcommand("density", "closed-form endpoint density table");
    density_cmd->add_option("--p", density_args.p, "flexible-order intensity");
    density_cmd->add_option("--t", density_args.t, "time");
    density_cmd->add_option("--u-max", density_args.u_max, "table extent in U");
    density_cmd->add_option("--v-max", density_args.v_max, "table extent in V");
    density_cmd->add_option("--cells", density_args.cells, "cells per axis");
    density_cmd->add_option("--out", density_args.out, "output file (default stdout)");

    ExperimentArgs exp_args;
    std::vector<std::int64_t> n_grid;
    std::vector<double> zeta_grid, eps_grid;
    CLI::App* exp_cmd = app.add_subcommand("experiment", "run a Monte Carlo experiment");
    exp_cmd->add_option("--id", exp_args.spec.id, "experiment id, e.g. E1 or E1_mu_from_I")
        ->required();
    exp_cmd->add_option("--p", exp_args.spec.p, "flexible-order intensity");
    exp_cmd->add_option("--seed", exp_args.spec.seed, "rng seed");
    exp_cmd->add_option("--replicas", exp_args.spec.replicas, "main sample-size knob");
    exp_cmd->add_option("--dt", exp_args.spec.dt, "grid step for Brownian experiments");
    exp_cmd->add_option("--delta", exp_args.spec.delta, "excursion window size");
    exp_cmd->add_option("--cap-c", exp_args.spec.cap_c, "excursion window constant C");
    exp_cmd->add_option("--threads", exp_args.spec.threads, "worker threads");
    exp_cmd->add_option("--tolerance", exp_args.spec.tolerance, "pass threshold override");
    exp_cmd->add_option("--n", n_grid, "n grid (repeatable)");
    exp_cmd->add_option("--zeta", zeta_grid, "zeta grid (repeatable)");
    exp_cmd->add_option("--eps", eps_grid, "epsilon grid (repeatable)");
    exp_cmd->add_option("--out", exp_args.out, "output file (default stdout)");

    ReportArgs report_args;
    CLI::App* report_cmd = app.add_subcommand("report", "validate and summarize a report file");
    report_cmd->add_option("--in", report_args.in, "report JSON file")->required();
    report_cmd->add_option("--out", report_args.out, "output file (default stdout)");

    app.footer("Every subcommand also accepts --config FILE, a flat key=value file\n"
               "mirroring its flags; explicit flags override config values.");

    try {
        std::vector<std::string> args = expand_config({argv + 1, argv + argc});
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sample) return run_sample(sample_args);
        if (*reduce_cmd) return run_reduce(reduce_args);
        if (*match_cmd) return run_match(match_args);
        if (*path_cmd) return run_path(path_args);
        if (*loops_cmd) return run_loops(loops_args);
        if (*bm_cmd) return run_bm_sample(bm_args);
        if (*density_cmd) return run_density(density_args);
        if (*exp_cmd) {
            exp_args.spec.n_grid = n_grid;
            exp_args.spec.zeta_grid = zeta_grid;
            exp_args.spec.eps_grid = eps_grid;
            return run_experiment_cmd(exp_args);
        }
        if (*report_cmd) return run_report(report_args);
    } catch (const burgers::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
