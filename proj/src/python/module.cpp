#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "fbmc/channel.hpp"
#include "fbmc/compander.hpp"
#include "fbmc/experiments.hpp"
#include "fbmc/harness.hpp"
#include "fbmc/metrics.hpp"
#include "fbmc/modem.hpp"
#include "fbmc/prototype_filter.hpp"

namespace py = pybind11;
using namespace fbmc;

namespace {

using ComplexArray = py::array_t<cdouble, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

template <typename T>
py::array_t<T> to_array(std::span<const T> values) {
  py::array_t<T> out(std::vector<py::ssize_t>{static_cast<py::ssize_t>(values.size())});
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

template <typename T>
std::span<const T> view(const py::array_t<T, py::array::c_style | py::array::forcecast>& a) {
  return {a.data(), static_cast<std::size_t>(a.size())};
}

// numpy (K, M) complex -> block
QamSymbolBlock block_from(const ComplexArray& symbols) {
  if (symbols.ndim() != 2) throw std::invalid_argument("symbols must be a 2-D (K, M) array");
  const auto k = static_cast<int>(symbols.shape(0));
  const auto m = static_cast<int>(symbols.shape(1));
  QamSymbolBlock block(k, m);
  auto r = symbols.unchecked<2>();
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < k; ++i) block(i, j) = r(i, j);
  return block;
}

py::array_t<cdouble> block_to(const QamSymbolBlock& block) {
  py::array_t<cdouble> out({block.subcarriers(), block.blocks()});
  auto w = out.mutable_unchecked<2>();
  for (int j = 0; j < block.blocks(); ++j)
    for (int i = 0; i < block.subcarriers(); ++i) w(i, j) = block(i, j);
  return out;
}

FrameGeometry geometry_for(const PrototypeFilter& filter, int subcarriers, std::size_t length) {
  FrameGeometry g{subcarriers, 0, filter.overlap_factor(), filter.samples_per_period()};
  const auto half = static_cast<std::size_t>(filter.samples_per_period() / 2);
  const auto ramp = static_cast<std::size_t>(2 * filter.overlap_factor() - 1) * half;
  if (length < ramp || (length - ramp) % (2 * half) != 0)
    throw std::invalid_argument("sample count does not match an FBMC frame for this filter");
  g.blocks = static_cast<int>((length - ramp) / (2 * half));
  return g;
}

CompanderSpec make_spec(const std::string& scheme, double mu, double c, double cutoff,
                        std::optional<double> sigma, std::optional<double> peak) {
  CompanderSpec spec;
  switch (parse_compander_kind(scheme)) {
    case CompanderKind::Identity: spec = CompanderSpec::identity(); break;
    case CompanderKind::MuLaw: spec = CompanderSpec::mu_law(mu, peak); break;
    case CompanderKind::UniformPdf: spec = CompanderSpec::uniform_pdf(c, sigma); break;
    case CompanderKind::LinearPdf: spec = CompanderSpec::linear_pdf(c, cutoff, sigma); break;
  }
  spec.validate();
  return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "FBMC-OQAM modem, companders and PAPR/BER/PSD metrics";
  m.attr("__version__") = FBMC_VERSION;

  py::class_<PrototypeFilter>(m, "PrototypeFilter")
      .def_static("phydyas", &PrototypeFilter::phydyas, py::arg("overlap_factor"),
                  py::arg("samples_per_period"))
      .def_property_readonly("overlap_factor", &PrototypeFilter::overlap_factor)
      .def_property_readonly("samples_per_period", &PrototypeFilter::samples_per_period)
      .def_property_readonly("taps", [](const PrototypeFilter& f) { return to_array(f.taps()); })
      .def("energy", &PrototypeFilter::energy)
      .def("nyquist_defect", [](const PrototypeFilter& f) { return nyquist_defect(f); });

  m.def(
      "generate_symbols",
      [](int k, int blocks, const std::string& constellation, std::uint64_t seed) {
        return block_to(generate_symbols(k, blocks, parse_constellation(constellation), seed));
      },
      py::arg("subcarriers"), py::arg("blocks"), py::arg("constellation") = "qpsk",
      py::arg("seed") = 1, "Random (K, M) constellation points.");

  m.def(
      "synthesize",
      [](const ComplexArray& symbols, const PrototypeFilter& filter) {
        const auto frame = synthesize(oqam_stagger(block_from(symbols)), filter);
        return to_array<cdouble>(frame.samples);
      },
      py::arg("symbols"), py::arg("filter"),
      "OQAM-stagger a (K, M) QAM block and run the synthesis filter bank.");

  m.def(
      "analyze",
      [](const ComplexArray& samples, const PrototypeFilter& filter, int subcarriers) {
        FbmcFrame frame;
        frame.samples.assign(samples.data(), samples.data() + samples.size());
        frame.geometry = geometry_for(filter, subcarriers, frame.samples.size());
        return block_to(oqam_destagger(analyze(frame, filter)));
      },
      py::arg("samples"), py::arg("filter"), py::arg("subcarriers"),
      "Analysis filter bank plus OQAM destagger, returning the (K, M) QAM block.");

  m.def(
      "ofdm_modulate",
      [](const ComplexArray& symbols) {
        return to_array<cdouble>(ofdm_modulate(block_from(symbols)));
      },
      py::arg("symbols"));

  m.def(
      "compand",
      [](const RealArray& x, const std::string& scheme, double mu, double c, double cutoff,
         std::optional<double> sigma, std::optional<double> peak) {
        const auto spec = make_spec(scheme, mu, c, cutoff, sigma, peak);
        py::array_t<double> out(std::vector<py::ssize_t>{x.size()});
        auto* dst = out.mutable_data();
        const auto src = view(x);
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = compand(src[i], spec);
        return out;
      },
      py::arg("x"), py::arg("scheme"), py::arg("mu") = 16.0, py::arg("c") = 1.0,
      py::arg("cutoff") = 1.2, py::arg("sigma") = py::none(), py::arg("peak") = py::none(),
      "Scalar compander applied elementwise to real amplitudes.");

  m.def(
      "expand",
      [](const RealArray& y, const std::string& scheme, double mu, double c, double cutoff,
         std::optional<double> sigma, std::optional<double> peak) {
        const auto spec = make_spec(scheme, mu, c, cutoff, sigma, peak);
        py::array_t<double> out(std::vector<py::ssize_t>{y.size()});
        auto* dst = out.mutable_data();
        const auto src = view(y);
        for (std::size_t i = 0; i < src.size(); ++i) dst[i] = expand(src[i], spec);
        return out;
      },
      py::arg("y"), py::arg("scheme"), py::arg("mu") = 16.0, py::arg("c") = 1.0,
      py::arg("cutoff") = 1.2, py::arg("sigma") = py::none(), py::arg("peak") = py::none());

  m.def(
      "compand_frame",
      [](const ComplexArray& samples, const PrototypeFilter& filter, int subcarriers,
         const std::string& scheme, double mu, double c, double cutoff) {
        FbmcFrame frame;
        frame.samples.assign(samples.data(), samples.data() + samples.size());
        frame.geometry = geometry_for(filter, subcarriers, frame.samples.size());
        const auto spec = make_spec(scheme, mu, c, cutoff, {}, {});
        return to_array<cdouble>(apply_to_frame(frame, spec).samples);
      },
      py::arg("samples"), py::arg("filter"), py::arg("subcarriers"), py::arg("scheme"),
      py::arg("mu") = 16.0, py::arg("c") = 1.0, py::arg("cutoff") = 1.2,
      "Compand an FBMC frame with sigma or peak estimated from the frame.");

  m.def(
      "papr_per_interval",
      [](const ComplexArray& samples, std::size_t interval, double reference_power) {
        return py::array_t<double>(py::cast(
            papr_per_interval(view(samples), interval, reference_power)));
      },
      py::arg("samples"), py::arg("interval"), py::arg("reference_power"));

  m.def(
      "ccdf_empirical",
      [](const RealArray& paprs, const RealArray& grid) {
        return py::array_t<double>(
            py::cast(ccdf_empirical(view(paprs), view(grid)).prob_exceed));
      },
      py::arg("paprs_db"), py::arg("grid_db"));

  m.def(
      "ccdf_theoretical",
      [](const std::string& scheme, const RealArray& grid, int samples_per_interval,
         double alpha_t, double c, double cutoff) {
        TheoreticalCcdfParams params{alpha_t, samples_per_interval, c, cutoff};
        CcdfKind kind = CcdfKind::TheoreticalConventional;
        switch (parse_compander_kind(scheme)) {
          case CompanderKind::Identity: break;
          case CompanderKind::UniformPdf: kind = CcdfKind::TheoreticalUniform; break;
          case CompanderKind::LinearPdf: kind = CcdfKind::TheoreticalLinear; break;
          case CompanderKind::MuLaw:
            throw std::invalid_argument("no closed-form CCDF for mu-law");
        }
        return py::array_t<double>(
            py::cast(ccdf_theoretical(kind, params, view(grid)).prob_exceed));
      },
      py::arg("scheme"), py::arg("grid_db"), py::arg("samples_per_interval"),
      py::arg("alpha_t") = 1.0, py::arg("c") = 1.0, py::arg("cutoff") = 1.2);

  m.def(
      "collect_paprs",
      [](const std::string& scheme, int subcarriers, long symbols, int blocks_per_frame,
         std::uint64_t seed, double mu, double c, double cutoff, int workers) {
        PaprRun run;
        run.scheme = make_spec(scheme, mu, c, cutoff, {}, {});
        run.subcarriers = subcarriers;
        run.symbols_total = symbols;
        run.blocks_per_frame = blocks_per_frame;
        run.seed = seed;
        run.workers = workers;
        std::vector<double> paprs;
        {
          py::gil_scoped_release release;
          paprs = collect_paprs(run);
        }
        return py::array_t<double>(py::cast(paprs));
      },
      py::arg("scheme"), py::arg("subcarriers") = 512, py::arg("symbols") = 10000,
      py::arg("blocks_per_frame") = 100, py::arg("seed") = 1, py::arg("mu") = 16.0,
      py::arg("c") = 1.0, py::arg("cutoff") = 1.2, py::arg("workers") = 1);

  py::class_<BerPoint>(m, "BerPoint")
      .def_readonly("snr_db", &BerPoint::snr_db)
      .def_readonly("bits", &BerPoint::bits)
      .def_readonly("errors", &BerPoint::errors)
      .def_readonly("ber", &BerPoint::ber)
      .def_readonly("target_met", &BerPoint::target_met);

  m.def(
      "ber_run",
      [](const std::string& scheme, double snr_db, std::uint64_t min_errors,
         std::uint64_t max_bits, std::uint64_t seed, int subcarriers, bool expander, double mu,
         double c, double cutoff) {
        BerConfig cfg;
        cfg.scheme = make_spec(scheme, mu, c, cutoff, {}, {});
        cfg.snr_db = snr_db;
        cfg.min_errors = min_errors;
        cfg.max_bits = max_bits;
        cfg.seed = seed;
        cfg.subcarriers = subcarriers;
        cfg.expand_at_receiver = expander;
        py::gil_scoped_release release;
        return ber_run(cfg);
      },
      py::arg("scheme"), py::arg("snr_db"), py::arg("min_errors") = 100,
      py::arg("max_bits") = 1000000, py::arg("seed") = 1, py::arg("subcarriers") = 64,
      py::arg("expander") = false, py::arg("mu") = 16.0, py::arg("c") = 1.0,
      py::arg("cutoff") = 1.2);

  m.def(
      "psd_welch",
      [](const ComplexArray& samples, std::size_t segment, double overlap) {
        const auto psd = psd_welch(view(samples), segment, overlap);
        return py::make_tuple(py::array_t<double>(py::cast(psd.freq_norm)),
                              py::array_t<double>(py::cast(psd.psd_db)));
      },
      py::arg("samples"), py::arg("segment") = 1024, py::arg("overlap") = 0.5,
      "Returns (freq_norm, psd_db).");

  m.def(
      "ebn0_to_snr_db",
      [](double ebn0_db, const std::string& constellation, int subcarriers,
         int samples_per_period) {
        return ebn0_to_snr_db(ebn0_db, parse_constellation(constellation), subcarriers,
                              samples_per_period);
      },
      py::arg("ebn0_db"), py::arg("constellation"), py::arg("subcarriers"),
      py::arg("samples_per_period"));

  m.def(
      "run_experiment",
      [](const std::map<std::string, std::string>& settings) {
        ExperimentConfig config;
        for (const auto& [key, value] : settings) set_key(config, key, value);
        std::vector<std::filesystem::path> files;
        {
          py::gil_scoped_release release;
          files = run(config);
        }
        return files;
      },
      py::arg("settings"),
      "Run one harness experiment from key/value settings; returns the files written.");

  m.def(
      "config_text",
      [](const std::map<std::string, std::string>& settings) {
        ExperimentConfig config;
        for (const auto& [key, value] : settings) set_key(config, key, value);
        config.validate();
        return canonical_text(config);
      },
      py::arg("settings"));

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
}
