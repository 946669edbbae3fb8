#include "burgers/bm.hpp"
#include "burgers/errors.hpp"
#include "burgers/experiments.hpp"
#include "burgers/loops.hpp"
#include "burgers/params.hpp"
#include "burgers/path.hpp"
#include "burgers/rng.hpp"
#include "burgers/sampler.hpp"
#include "burgers/word.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace burgers;

namespace {

Word parse_word(const std::string& text) { return word_from_text(text, 1); }

py::dict params_dict(const ModelParams& mp) {
    py::dict d;
    d["p"] = mp.p;
    d["q"] = mp.q;
    d["kappa"] = mp.kappa;
    d["gamma"] = mp.gamma;
    d["mu"] = mp.mu;
    return d;
}

py::dict counts_dict(const CountVector& cv) {
    py::dict d;
    d["n_hb"] = cv.n_hb;
    d["n_cb"] = cv.n_cb;
    d["n_ho"] = cv.n_ho;
    d["n_co"] = cv.n_co;
    d["n_fo"] = cv.n_fo;
    d["d"] = cv.d;
    d["d_star"] = cv.d_star;
    d["h"] = cv.h;
    d["c"] = cv.c;
    d["o"] = cv.o;
    d["c_f"] = cv.c_f;
    d["r"] = cv.r;
    return d;
}

py::dict grid_path_dict(const GridPath& path) {
    py::dict d;
    d["t0"] = path.t0;
    d["dt"] = path.dt;
    d["u"] = path.u;
    d["v"] = path.v;
    return d;
}

ExperimentSpec spec_from_args(const std::string& id, double p, std::int64_t replicas,
                              std::uint64_t seed, int threads, double dt, double delta,
                              double cap_c, double tolerance,
                              const std::vector<std::int64_t>& n_grid,
                              const std::vector<double>& zeta_grid,
                              const std::vector<double>& eps_grid) {
    ExperimentSpec spec;
    spec.id = id;
    spec.p = p;
    spec.replicas = replicas;
    spec.seed = seed;
    spec.threads = threads;
    spec.dt = dt;
    spec.delta = delta;
    spec.cap_c = cap_c;
    spec.tolerance = tolerance;
    spec.n_grid = n_grid;
    spec.zeta_grid = zeta_grid;
    spec.eps_grid = eps_grid;
    return spec;
}

} // namespace

PYBIND11_MODULE(_burgers, m) {
    m.doc() = "inventory-accumulation words: reducers, samplers, loop structure, "
              "Brownian cone references, Monte Carlo experiments";

    py::register_exception<Error>(m, "Error");

    m.def("derive_params", [](double p) { return params_dict(derive_params(p)); },
          py::arg("p"), "parameter dictionary derived from the flexible-order intensity");

    m.def("reduce_word",
          [](const std::string& text) {
              const Word w = parse_word(text);
              const ReducedWord r = reduce(w);
              py::dict d;
              d["reduced"] = to_text(r.as_word());
              d["empty"] = r.empty();
              d["counts"] = counts_dict(counts(w));
              return d;
          },
          py::arg("word"), "normal form (orders then burgers) and count statistics");

    m.def("match_word",
          [](const std::string& text) {
              const Word w = parse_word(text);
              const MatchTable t = match_indices(w);
              std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
              for (std::int64_t i = w.first_index(); i <= w.last_index(); ++i) {
                  const auto phi = t.phi(i);
                  if (phi && i < *phi) pairs.emplace_back(i, *phi);
              }
              py::dict d;
              d["pairs"] = pairs;
              d["unmatched"] = t.unmatched_indices();
              return d;
          },
          py::arg("word"), "match involution: (burger, order) index pairs and survivors");

    m.def("iid_word",
          [](double p, std::int64_t n, std::uint64_t seed) {
              return to_text(iid_word(derive_params(p), n, 1, seed));
          },
          py::arg("p"), py::arg("n"), py::arg("seed"), "iid word of length n under the symbol law");

    m.def("sample_conditioned",
          [](double p, std::int64_t n, std::uint64_t seed, std::int64_t max_trials) {
              const SamplerReport r =
                  sample_empty_reduction(derive_params(p), n, seed, max_trials);
              py::dict d;
              d["word"] = to_text(r.word);
              d["trials"] = r.trials;
              d["acceptance_estimate"] = r.acceptance_estimate;
              return d;
          },
          py::arg("p"), py::arg("n"), py::arg("seed"), py::arg("max_trials") = 100'000'000,
          "length-2n word conditioned to reduce to the empty word");

    m.def("sample_backward",
          [](double p, std::int64_t n, std::uint64_t seed, std::int64_t max_trials) {
              const SamplerReport r =
                  sample_no_burgers_backward(derive_params(p), n, seed, max_trials);
              py::dict d;
              d["word"] = to_text(r.word);
              d["origin"] = r.word.origin;
              d["trials"] = r.trials;
              return d;
          },
          py::arg("p"), py::arg("n"), py::arg("seed"), py::arg("max_trials") = 100'000'000,
          "length-n word indexed from -n conditioned to leave no burger unconsumed");

    m.def("lattice_path",
          [](const std::string& text) {
              const Word w = parse_word(text);
              const LatticePath lp = lattice_path(resolve_flex(w, match_indices(w)));
              std::vector<std::tuple<std::int64_t, std::int64_t, std::int64_t>> pts;
              pts.reserve(lp.points.size());
              for (std::size_t k = 0; k < lp.points.size(); ++k)
                  pts.emplace_back(lp.j0 + static_cast<std::int64_t>(k), lp.points[k].first,
                                   lp.points[k].second);
              return pts;
          },
          py::arg("word"), "(j, d, d_star) walk of the flex-resolved word");

    m.def("loops_json",
          [](const std::string& text) {
              const Word w = parse_word(text);
              return loop_forest_json(loop_forest(w, match_indices(w)));
          },
          py::arg("word"), "loop forest as a JSON string");

    m.def("first_order_index",
          [](const std::string& text) { return first_order_index(parse_word(text)); },
          py::arg("word"), "index of the first order surviving every prefix reduction");

    m.def("backward_j",
          [](const std::string& text) { return backward_J(parse_word(text)); },
          py::arg("word"), "smallest suffix length whose reduction keeps a burger");

    m.def("endpoint_density",
          [](double p, double t, double u, double v) {
              return endpoint_density(bm_config(p, 1e-3, 0), t, u, v);
          },
          py::arg("p"), py::arg("t"), py::arg("u"), py::arg("v"),
          "closed-form quadrant-conditioned endpoint density");

    m.def("sample_meander",
          [](double p, double t, double dt, std::uint64_t seed) {
              const BmConfig cfg = bm_config(p, dt, seed);
              Rng rng(mix_seed(seed, 0xB33Full));
              return grid_path_dict(sample_meander(cfg, t, rng, 4'000'000));
          },
          py::arg("p"), py::arg("t"), py::arg("dt"), py::arg("seed"),
          "correlated Brownian path conditioned to stay in the quadrant");

    m.def("sample_excursion",
          [](double p, double dt, double delta, double cap_c, std::uint64_t seed) {
              const BmConfig cfg = bm_config(p, dt, seed);
              Rng rng(mix_seed(seed, 0xB33Full));
              const Excursion e = sample_excursion(cfg, {delta, cap_c}, rng, 4'000'000);
              py::dict d = grid_path_dict(e.path);
              d["delta"] = e.delta;
              d["trials"] = e.trials;
              return d;
          },
          py::arg("p"), py::arg("dt"), py::arg("delta") = 0.02, py::arg("cap_c") = 4.0,
          py::arg("seed") = 1, "quadrant excursion via small-window rejection");

    m.def("experiment_ids", &experiment_ids, "long-form ids of the Monte Carlo experiments");

    m.def("run_experiment_json",
          [](const std::string& id, double p, std::int64_t replicas, std::uint64_t seed,
             int threads, double dt, double delta, double cap_c, double tolerance,
             const std::vector<std::int64_t>& n_grid, const std::vector<double>& zeta_grid,
             const std::vector<double>& eps_grid) {
              py::gil_scoped_release release;
              return report_json(run_experiment(spec_from_args(id, p, replicas, seed, threads,
                                                               dt, delta, cap_c, tolerance,
                                                               n_grid, zeta_grid, eps_grid)));
          },
          py::arg("id"), py::arg("p") = 1.0 / 3.0, py::arg("replicas") = 0, py::arg("seed") = 1,
          py::arg("threads") = 1, py::arg("dt") = 0.0, py::arg("delta") = 0.0,
          py::arg("cap_c") = 0.0, py::arg("tolerance") = 0.0,
          py::arg("n_grid") = std::vector<std::int64_t>{},
          py::arg("zeta_grid") = std::vector<double>{},
          py::arg("eps_grid") = std::vector<double>{},
          "run a Monte Carlo experiment, returning its report as a JSON string");
}
