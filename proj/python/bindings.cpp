#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "firmnet/aggregate.hpp"
#include "firmnet/cascade.hpp"
#include "firmnet/errors.hpp"
#include "firmnet/existence.hpp"
#include "firmnet/info.hpp"
#include "firmnet/manifest.hpp"
#include "firmnet/network.hpp"
#include "firmnet/significance.hpp"
#include "firmnet/synth.hpp"

namespace py = pybind11;
using namespace firmnet;

namespace {

using Arcs = std::vector<std::pair<uint32_t, uint32_t>>;

Network network_from_arcs(uint32_t n, Arcs arcs, bool directed) {
  if (!directed) {
    for (auto& [s, d] : arcs) {
      if (s > d) std::swap(s, d);
    }
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  return Network::from_arcs(n, arcs, directed, Multiplicity::Simple, {}, {});
}

info::InfoParams make_params(int k, int l, int tau_x, int tau_y, int u) {
  info::InfoParams p;
  p.k = k;
  p.l = l;
  p.tau_x = tau_x;
  p.tau_y = tau_y;
  p.u = u;
  return p;
}

py::dict metrics_dict(const cascade::Metrics& m) {
  py::dict d;
  d["mean_downtime"] = m.mean_downtime;
  d["failure_proportion"] = m.failure_proportion;
  d["per_step_new_failures"] = m.per_step_new_failures;
  d["shocked_nodes"] = m.shocked_nodes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_firmnet, m) {
  m.doc() = "interfirm network information dynamics and cascading failure toolkit";
  m.attr("__version__") = kToolVersion;

  m.def(
      "entropy",
      [](const std::vector<uint64_t>& counts) { return info::entropy_bits(counts); },
      py::arg("counts"), "Shannon entropy of a count vector, in bits");

  m.def(
      "mutual_information",
      [](const std::vector<uint8_t>& x, const std::vector<uint8_t>& y, int u) {
        return info::mutual_information_bits(x, y, u);
      },
      py::arg("x"), py::arg("y"), py::arg("u") = 0,
      "Plug-in MI between x delayed by u and y, in bits");

  m.def(
      "active_information_storage",
      [](const std::vector<uint8_t>& x, int k, int tau) {
        return info::active_information_storage_bits(x, k, tau);
      },
      py::arg("x"), py::arg("k"), py::arg("tau") = 1);

  m.def(
      "transfer_entropy",
      [](const std::vector<uint8_t>& source, const std::vector<uint8_t>& target, int k, int l,
         int tau_x, int tau_y, int u) {
        return info::transfer_entropy_bits(source, target, make_params(k, l, tau_x, tau_y, u));
      },
      py::arg("source"), py::arg("target"), py::arg("k") = 5, py::arg("l") = 1,
      py::arg("tau_x") = 1, py::arg("tau_y") = 1, py::arg("u") = 0);

  m.def(
      "transfer_entropy_entropy_form",
      [](const std::vector<uint8_t>& source, const std::vector<uint8_t>& target, int k, int l,
         int tau_x, int tau_y, int u) {
        return info::transfer_entropy_entropy_form_bits(source, target,
                                                        make_params(k, l, tau_x, tau_y, u));
      },
      py::arg("source"), py::arg("target"), py::arg("k") = 5, py::arg("l") = 1,
      py::arg("tau_x") = 1, py::arg("tau_y") = 1, py::arg("u") = 0);

  m.def(
      "surrogate_p_value",
      [](const std::string& measure, const std::vector<uint8_t>& x,
         const std::vector<uint8_t>& y, int k, int l, int tau_x, int tau_y, int u,
         int n_surrogates, uint64_t seed) {
        info::InfoParams params = make_params(k, l, tau_x, tau_y, u);
        info::MeasureFn fn;
        if (measure == "mi") {
          fn = [u](std::span<const uint8_t> a, std::span<const uint8_t> b) {
            return info::mutual_information_bits(a, b, u);
          };
        } else if (measure == "te") {
          fn = [params](std::span<const uint8_t> a, std::span<const uint8_t> b) {
            return info::transfer_entropy_bits(b, a, params);
          };
        } else {
          throw DataError("surrogate_p_value: measure must be 'mi' or 'te'");
        }
        return info::surrogate_p_value(fn, x, y, n_surrogates, seed);
      },
      py::arg("measure"), py::arg("x"), py::arg("y"), py::arg("k") = 5, py::arg("l") = 1,
      py::arg("tau_x") = 1, py::arg("tau_y") = 1, py::arg("u") = 0,
      py::arg("n_surrogates") = 200, py::arg("seed") = 0,
      "Permutation test shuffling y; for 'te', y is the source series");

  m.def(
      "fisher_combine",
      [](const std::vector<double>& ps) { return info::fisher_combine(ps).p; }, py::arg("p_values"));

  m.def(
      "derive_step_params",
      [](double alpha, double gamma, int steps) {
        cascade::StepParams sp = cascade::derive_step_params(alpha, gamma, steps);
        return py::make_tuple(sp.k_step, sp.r_step);
      },
      py::arg("alpha"), py::arg("gamma"), py::arg("steps"),
      "(k_step, r_step) for the per-step model");

  m.def(
      "init_shock",
      [](uint32_t n, double fraction, uint64_t seed) {
        return cascade::init_shock(n, fraction, seed);
      },
      py::arg("n"), py::arg("fraction"), py::arg("seed") = 0);

  m.def(
      "cascade_run",
      [](uint32_t n, const Arcs& arcs, double alpha, double gamma, int steps, double shock,
         uint64_t seed, std::optional<std::vector<uint32_t>> shock_nodes) {
        Network net = network_from_arcs(n, arcs, true);
        cascade::CascadeParams params;
        params.alpha = alpha;
        params.gamma = gamma;
        params.steps = steps;
        params.shock_fraction = shock;
        params.seed = seed;
        cascade::RunOptions opts;
        opts.shock_override = std::move(shock_nodes);
        return metrics_dict(cascade::run(net, params, opts).metrics);
      },
      py::arg("n"), py::arg("arcs"), py::arg("alpha") = 0.2, py::arg("gamma") = 1.0,
      py::arg("steps") = 50, py::arg("shock") = 0.1, py::arg("seed") = 0,
      py::arg("shock_nodes") = std::nullopt,
      "Run one cascade on arcs (investee -> shareholder) over n nodes");

  m.def(
      "cascade_sweep",
      [](uint32_t n, const Arcs& arcs, const std::vector<double>& alphas,
         const std::vector<double>& gammas, int steps, int replicates, uint64_t seed,
         double shock, int threads) {
        Network net = network_from_arcs(n, arcs, true);
        auto rows = cascade::sweep(net, alphas, gammas, steps, replicates, seed, shock, threads);
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["alpha"] = r.alpha;
          d["gamma"] = r.gamma;
          d["replicate"] = r.replicate;
          d["seed"] = r.seed;
          d["mean_downtime"] = r.mean_downtime;
          d["failure_proportion"] = r.failure_proportion;
          out.append(d);
        }
        return out;
      },
      py::arg("n"), py::arg("arcs"), py::arg("alphas"), py::arg("gammas"), py::arg("steps") = 50,
      py::arg("replicates") = 1, py::arg("seed") = 0, py::arg("shock") = 0.1,
      py::arg("threads") = 1);

  m.def(
      "gen_coupled",
      [](uint32_t pairs, int start_year, int end_year, double p_patent, double q_convert,
         int delay, double noise, int countries, uint64_t seed) {
        synth::CoupledGenParams p;
        p.n_pairs = pairs;
        p.years = {start_year, end_year};
        p.p_patent = p_patent;
        p.q_convert = q_convert;
        p.d_delay = delay;
        p.p_noise_share = noise;
        p.n_countries = countries;
        p.seed = seed;
        synth::CoupledData data = synth::gen_coupled(p);
        auto records_list = [&](const std::vector<TemporalEdgeRecord>& recs) {
          py::list out;
          for (const auto& r : recs) out.append(py::make_tuple(r.src, r.dst, r.year));
          return out;
        };
        py::dict d;
        d["patents"] = records_list(data.patent_records);
        d["shares"] = records_list(data.share_records);
        d["n_nodes"] = data.table->size();
        d["converted_pairs"] = data.truth.converted_pairs;
        d["d_delay"] = data.truth.d_delay;
        return d;
      },
      py::arg("pairs") = 5000, py::arg("start_year") = 2008, py::arg("end_year") = 2016,
      py::arg("p_patent") = 0.3, py::arg("q_convert") = 0.6, py::arg("delay") = 4,
      py::arg("noise") = 0.02, py::arg("countries") = 1, py::arg("seed") = 0);

  m.def(
      "gen_shareholding",
      [](uint32_t nodes, double mix, double exponent, int edges_per_node, int countries,
         double assort, uint64_t seed) {
        synth::ShareGenParams p;
        p.n_nodes = nodes;
        p.component_mix = mix;
        p.attachment_exponent = exponent;
        p.edges_per_node = edges_per_node;
        p.n_countries = countries;
        p.country_assortativity = assort;
        p.seed = seed;
        Network net = synth::gen_shareholding(p);
        py::dict d;
        d["n"] = net.node_count();
        d["arcs"] = net.arcs();
        std::vector<std::string> cs(net.countries().begin(), net.countries().end());
        d["countries"] = cs;
        return d;
      },
      py::arg("nodes") = 100000, py::arg("mix") = 0.8, py::arg("exponent") = 1.0,
      py::arg("edges_per_node") = 1, py::arg("countries") = 20, py::arg("assort") = 0.0,
      py::arg("seed") = 0);

  m.def(
      "summarize_network",
      [](uint32_t n, const Arcs& arcs, bool directed) {
        TopologySummary s = summarize(network_from_arcs(n, arcs, directed));
        py::dict d;
        d["nodes"] = s.nodes;
        d["edges"] = s.edges;
        d["avg_degree"] = s.avg_degree;
        d["median_degree"] = s.median_degree;
        d["component_count"] = s.component_count;
        d["largest_component_nodes"] = s.largest_component_nodes;
        d["largest_component_fraction"] = s.largest_component_fraction;
        py::dict hist;
        for (const auto& [deg, count] : s.degree_histogram) hist[py::int_(deg)] = count;
        d["degree_histogram"] = hist;
        return d;
      },
      py::arg("n"), py::arg("arcs"), py::arg("directed") = true);

  m.def(
      "delayed_mi_curve",
      [](const std::vector<std::vector<uint8_t>>& patents,
         const std::vector<std::vector<uint8_t>>& shares, int max_delay) {
        if (patents.size() != shares.size() || patents.empty())
          throw DataError("delayed_mi_curve: need equal nonempty series lists");
        std::vector<double> curve;
        for (int u = 0; u <= max_delay; ++u) {
          double sum = 0;
          for (size_t i = 0; i < patents.size(); ++i)
            sum += info::mutual_information_bits(shares[i], patents[i], u);
          curve.push_back(sum / static_cast<double>(patents.size()));
        }
        return curve;
      },
      py::arg("patents"), py::arg("shares"), py::arg("max_delay") = 6,
      "Mean per-edge MI pairing P_t with S_{t+u} for u = 0..max_delay");

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
}
