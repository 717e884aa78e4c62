#include "qinterf/fockspace.hpp"
#include "qinterf/fourfold.hpp"
#include "qinterf/output.hpp"
#include "qinterf/scenario.hpp"
#include "qinterf/spectra.hpp"
#include "qinterf/twofold.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace qinterf;

namespace {

py::dict distribution_dict(const FockDistribution& d) {
  py::dict out;
  for (const auto& [occ, p] : d.probabilities) out[py::tuple(py::cast(occ.counts()))] = p;
  return out;
}

py::dict result_dict(const ScenarioResult& r) {
  py::dict out;
  if (r.pattern) out["pattern"] = *r.pattern;
  if (r.distribution) out["distribution"] = distribution_dict(*r.distribution);
  if (r.spectral_density) out["spectral_density"] = r.spectral_density->values();
  out["derived"] = r.derived;
  out["warnings"] = r.warnings;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-photon and multi-photon interference simulations";
  m.attr("__version__") = std::string(library_version());

  py::register_exception<GuardViolation>(m, "GuardViolation");
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NyquistViolation>(m, "NyquistViolation");

  py::class_<Axis>(m, "Axis")
      .def(py::init<double, double, std::size_t>(), py::arg("start"), py::arg("step"), py::arg("count"))
      .def_property_readonly("start", &Axis::start)
      .def_property_readonly("step", &Axis::step)
      .def_property_readonly("count", &Axis::count)
      .def_property_readonly("last", &Axis::last)
      .def("values", &Axis::values)
      .def("__len__", &Axis::count)
      .def("__repr__", [](const Axis& a) {
        return "Axis(start=" + std::to_string(a.start()) + ", step=" + std::to_string(a.step()) +
               ", count=" + std::to_string(a.count()) + ")";
      });
  m.def("centered_axis", &centered_axis, py::arg("half_width"), py::arg("count"));
  m.def("linspace", &linspace, py::arg("first"), py::arg("last"), py::arg("count"));

  // ---- spectra
  py::class_<JointSpectralAmplitude>(m, "JointSpectralAmplitude")
      .def_static(
          "from_array",
          [](const Axis& s, const Axis& i, const Eigen::MatrixXcd& values, double cs, double ci) {
            return JointSpectralAmplitude::normalized(Grid2(s, i, values), cs, ci);
          },
          py::arg("axis_s"), py::arg("axis_i"), py::arg("values"), py::arg("center_s"), py::arg("center_i"))
      .def_property_readonly("axis_s", &JointSpectralAmplitude::axis_s)
      .def_property_readonly("axis_i", &JointSpectralAmplitude::axis_i)
      .def_property_readonly("values", &JointSpectralAmplitude::values)
      .def_property_readonly("center_s", &JointSpectralAmplitude::center_s)
      .def_property_readonly("center_i", &JointSpectralAmplitude::center_i)
      .def_property_readonly("renormalization", &JointSpectralAmplitude::renormalization);

  m.def("gaussian_jsa", &gaussian_jsa, py::arg("sigma_plus"), py::arg("sigma_minus"), py::arg("center_s"),
        py::arg("center_i"), py::arg("axis_s"), py::arg("axis_i"));
  m.def("gaussian_single_photon_width", &gaussian_single_photon_width, py::arg("sigma_plus"), py::arg("sigma_minus"));
  m.def("jsa_from_function", &jsa_from_function, py::arg("axis_s"), py::arg("axis_i"), py::arg("center_s"),
        py::arg("center_i"), py::arg("fn"));
  m.def("load_jsa", &load_jsa, py::arg("path"));
  m.def("save_jsa", &save_jsa, py::arg("path"), py::arg("jsa"));
  m.def("symmetrized", &symmetrized);
  m.def("antisymmetrized", &antisymmetrized);
  m.def("exchange_symmetry_score", &exchange_symmetry_score);

  py::class_<CombJsa>(m, "CombJsa")
      .def_readonly("jsa", &CombJsa::jsa)
      .def_readonly("max_mode_overlap", &CombJsa::max_mode_overlap)
      .def_readonly("modes_overlap", &CombJsa::modes_overlap);
  m.def("comb_jsa", &comb_jsa, py::arg("base"), py::arg("mode_count"), py::arg("mode_spacing"));

  py::class_<SchmidtAnalysis>(m, "SchmidtAnalysis")
      .def_readonly("coefficients", &SchmidtAnalysis::coefficients)
      .def_readonly("purity", &SchmidtAnalysis::purity)
      .def_readonly("schmidt_number", &SchmidtAnalysis::schmidt_number);
  m.def("schmidt_analysis", &schmidt_analysis);

  py::enum_<MarginalKind>(m, "MarginalKind")
      .value("sum_frequency", MarginalKind::sum_frequency)
      .value("difference_frequency", MarginalKind::difference_frequency);
  py::class_<SpectralMarginal>(m, "SpectralMarginal")
      .def_readonly("axis", &SpectralMarginal::axis)
      .def_readonly("offset", &SpectralMarginal::offset)
      .def_readonly("density", &SpectralMarginal::density)
      .def_readonly("kind", &SpectralMarginal::kind)
      .def("frequencies", [](const SpectralMarginal& s) {
        std::vector<double> w(s.axis.count());
        for (std::size_t k = 0; k < w.size(); ++k) w[k] = s.frequency(k);
        return w;
      });
  m.def("marginal", &marginal, py::arg("jsa"), py::arg("kind"));

  // ---- two-photon patterns
  py::enum_<PatternKind>(m, "PatternKind")
      .value("hom", PatternKind::hom)
      .value("noon", PatternKind::noon)
      .value("franson_coincidence", PatternKind::franson_coincidence)
      .value("franson_singles", PatternKind::franson_singles)
      .value("fourfold", PatternKind::fourfold)
      .value("fock_scan", PatternKind::fock_scan);
  py::class_<InterferencePattern>(m, "InterferencePattern")
      .def(py::init<Axis, std::vector<double>, PatternKind, double>(), py::arg("axis"), py::arg("values"),
           py::arg("kind"), py::arg("baseline"))
      .def_property_readonly("axis", &InterferencePattern::axis)
      .def_property_readonly("values", &InterferencePattern::values)
      .def_property_readonly("kind", &InterferencePattern::kind)
      .def_property_readonly("baseline", &InterferencePattern::baseline)
      .def_property_readonly("visibility", &InterferencePattern::visibility)
      .def("delays", [](const InterferencePattern& p) { return p.axis().values(); });

  m.def("hom_pattern", &hom_pattern, py::arg("jsa"), py::arg("tau"));
  m.def(
      "hom_pattern_temporal",
      [](const JointSpectralAmplitude& jsa, const Axis& tau, int oversample) {
        return hom_pattern_temporal(to_temporal(jsa, oversample), tau);
      },
      py::arg("jsa"), py::arg("tau"), py::arg("oversample") = 1);
  m.def(
      "spectrally_resolved_hom",
      [](const JointSpectralAmplitude& jsa, double tau) { return spectrally_resolved_hom(jsa, tau).values(); },
      py::arg("jsa"), py::arg("tau"));
  m.def("noon_pattern", &noon_pattern, py::arg("jsa"), py::arg("tau"));
  m.def(
      "franson_pattern",
      [](const JointSpectralAmplitude& jsa, const Axis& offsets, double base1, std::optional<double> base2) {
        const FransonDelays d = base2 ? FransonDelays::independent(base1, *base2) : FransonDelays::common(base1);
        return franson_pattern(jsa, offsets, d);
      },
      py::arg("jsa"), py::arg("offsets"), py::arg("base_delay") = 0.0, py::arg("base_delay2") = py::none(),
      "Common-delay scan, or arm 1 only when base_delay2 is given.");

  // ---- quantum Wiener-Khinchin
  py::enum_<CorrelationKind>(m, "CorrelationKind")
      .value("g2_plus", CorrelationKind::g2_plus)
      .value("g2_minus", CorrelationKind::g2_minus);
  py::class_<CorrelationFunction>(m, "CorrelationFunction")
      .def(py::init([](Axis axis, std::vector<cplx> values, CorrelationKind kind) {
             return CorrelationFunction{std::move(axis), std::move(values), kind};
           }),
           py::arg("axis"), py::arg("values"), py::arg("kind"))
      .def_readonly("axis", &CorrelationFunction::axis)
      .def_readonly("values", &CorrelationFunction::values)
      .def_readonly("kind", &CorrelationFunction::kind);
  m.def("qwkt_forward", &qwkt_forward, py::arg("marginal"), py::arg("tau"));
  m.def("qwkt_inverse", py::overload_cast<const CorrelationFunction&>(&qwkt_inverse), py::arg("g2"));
  m.def("correlation_from_pattern", &correlation_from_pattern, py::arg("pattern"));

  // ---- four-fold
  py::class_<SourcePair>(m, "SourcePair")
      .def(py::init<JointSpectralAmplitude, JointSpectralAmplitude>(), py::arg("jsa1"), py::arg("jsa2"))
      .def_property_readonly("signal_axis", &SourcePair::signal_axis)
      .def_property_readonly("max_delay", &SourcePair::max_delay);
  const auto method = [](const std::string& name, int rank) {
    if (name == "direct") return FourfoldMethod::direct();
    if (name == "schmidt") return FourfoldMethod::schmidt(rank);
    throw std::invalid_argument("method must be 'schmidt' or 'direct'");
  };
  m.def(
      "fourfold_pattern",
      [method](const SourcePair& p, const Axis& tau, const std::string& name, int rank) {
        const FourfoldResult r = fourfold_pattern(p, tau, method(name, rank));
        return py::make_tuple(r.pattern, r.truncation_weight);
      },
      py::arg("pair"), py::arg("tau"), py::arg("method") = "schmidt", py::arg("rank") = 8,
      "Returns (pattern, truncation_weight).");
  m.def(
      "fourfold_visibility",
      [method](const SourcePair& p, const std::string& name, int rank) {
        return fourfold_visibility(p, method(name, rank));
      },
      py::arg("pair"), py::arg("method") = "schmidt", py::arg("rank") = 8);

  // ---- Fock space
  py::class_<MultiportUnitary>(m, "MultiportUnitary")
      .def(py::init<Eigen::MatrixXcd>(), py::arg("matrix"))
      .def_property_readonly("matrix", &MultiportUnitary::matrix)
      .def_property_readonly("modes", &MultiportUnitary::modes)
      .def_static("standard", &MultiportUnitary::standard, py::arg("name"));
  m.def("permanent", &permanent, py::arg("matrix"));
  m.def(
      "transition_amplitude",
      [](const std::vector<int>& in, const std::vector<int>& out, const MultiportUnitary& u) {
        return transition_amplitude(ModeOccupation(in), ModeOccupation(out), u);
      },
      py::arg("input"), py::arg("output"), py::arg("unitary"));
  m.def(
      "evolve",
      [](const std::vector<int>& in, const MultiportUnitary& u) {
        return distribution_dict(evolve(ModeOccupation(in), u));
      },
      py::arg("input"), py::arg("unitary"), "Output distribution keyed by occupation tuples.");
  m.def(
      "delayed_pair_distribution",
      [](int n, double indist, const MultiportUnitary& u) {
        return distribution_dict(delayed_pair_distribution(n, indist, u));
      },
      py::arg("n_per_port"), py::arg("indistinguishability"), py::arg("unitary") = MultiportUnitary::bs50());
  m.def(
      "hb_coefficients", [](int photons, double phi) { return hb_coefficients(photons, phi).coefficients; },
      py::arg("photons"), py::arg("phi"));
  m.def("noon_phase_fringe", &noon_phase_fringe, py::arg("photons"), py::arg("phi"));

  // ---- scenarios
  m.def(
      "check_config",
      [](const std::string& text, const std::filesystem::path& base) { return check_config(text, base).violations; },
      py::arg("json_text"), py::arg("base_dir") = std::filesystem::path(),
      "Every violation found; empty when the config is valid.");
  m.def(
      "run_scenario",
      [](const std::string& text, const std::filesystem::path& base) {
        return result_dict(run_scenario(parse_config(text, base), base));
      },
      py::arg("json_text"), py::arg("base_dir") = std::filesystem::path());
  m.def(
      "run_config_file", [](const std::filesystem::path& path) {
        return result_dict(run_scenario(load_config(path), path.parent_path()));
      },
      py::arg("path"));
}
