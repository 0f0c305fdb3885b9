#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "photon_shaper/cavity_filter.hpp"
#include "photon_shaper/fm_modulation.hpp"
#include "photon_shaper/photon_states.hpp"
#include "photon_shaper/pulse_codes.hpp"
#include "photon_shaper/specgrid.hpp"

namespace py = pybind11;
using namespace photon_shaper;

namespace
{
using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

std::vector<Complex> to_vector(const ComplexArray &a)
{
    if (a.ndim() != 1)
        throw ValidationError("expected a one-dimensional array");
    return std::vector<Complex>(a.data(), a.data() + a.size());
}

template <class T>
py::array_t<T> to_numpy(std::span<const T> v)
{
    return py::array_t<T>(static_cast<py::ssize_t>(v.size()), v.data());
}

template <class Domain>
void bind_amplitude(py::module_ &m, const char *name)
{
    using A = Amplitude<Domain>;
    py::class_<A>(m, name)
        .def(py::init([](const SampledGrid &g, const ComplexArray &v) { return A(g, to_vector(v)); }), py::arg("grid"),
             py::arg("values"))
        .def_property_readonly("grid", &A::grid)
        .def_property_readonly("values", [](const A &a) { return to_numpy<Complex>(a.values()); })
        .def("__len__", &A::size)
        .def("scaled", &A::scaled)
        .def("__add__", [](const A &a, const A &b) { return a + b; })
        .def("__sub__", [](const A &a, const A &b) { return a - b; });
}

template <class Domain>
Density<Domain> density_from(const SampledGrid &g, const RealArray &v)
{
    return Density<Domain>(g, std::vector<double>(v.data(), v.data() + v.size()));
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Single-photon pulse shaping simulations";

    auto validation = py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    (void)validation;

    py::class_<SampledGrid>(m, "SampledGrid")
        .def(py::init<std::size_t, double, std::optional<double>>(), py::arg("n_points"), py::arg("delta_omega"),
             py::arg("carrier") = py::none())
        .def_property_readonly("n_points", &SampledGrid::n_points)
        .def_property_readonly("delta_omega", &SampledGrid::delta_omega)
        .def_property_readonly("delta_t", &SampledGrid::delta_t)
        .def_property_readonly("carrier", &SampledGrid::carrier)
        .def("omegas", [](const SampledGrid &g) { return py::array_t<double>(py::cast(g.omegas())); })
        .def("times", [](const SampledGrid &g) { return py::array_t<double>(py::cast(g.times())); })
        .def("__eq__", &SampledGrid::operator==)
        .def("__repr__", &SampledGrid::describe);

    bind_amplitude<FrequencyDomain>(m, "SpectralAmplitude");
    bind_amplitude<TimeDomain>(m, "TimeAmplitude");

    m.def("to_time", &to_time, py::arg("nu"));
    m.def("to_freq", &to_freq, py::arg("nu_t"));
    m.def("inner_product", &inner_product<FrequencyDomain>, py::arg("a"), py::arg("b"));
    m.def("inner_product", &inner_product<TimeDomain>, py::arg("a"), py::arg("b"));
    m.def("norm", &norm<FrequencyDomain>);
    m.def("norm", &norm<TimeDomain>);
    m.def("normalize", &normalize, py::arg("nu"));
    m.def("gaussian_amplitude", &gaussian_amplitude, py::arg("grid"), py::arg("sigma"), py::arg("center") = 0.0,
          py::arg("t0") = 0.0);

    py::class_<SinglePhotonState>(m, "SinglePhotonState")
        .def(py::init<SpectralAmplitude>(), py::arg("nu"))
        .def_static("from_unnormalized", &SinglePhotonState::from_unnormalized)
        .def_property_readonly("amplitude", &SinglePhotonState::amplitude);
    py::class_<CoherentState>(m, "CoherentState")
        .def(py::init<SpectralAmplitude>(), py::arg("alpha"))
        .def_property_readonly("displacement", &CoherentState::displacement)
        .def_property_readonly("mean_photon_number", &CoherentState::mean_photon_number);

    m.def("mean_field", py::overload_cast<const SinglePhotonState &>(&mean_field));
    m.def("mean_field", py::overload_cast<const CoherentState &>(&mean_field));
    m.def("count_rate", [](const SinglePhotonState &s) { return to_numpy<double>(count_rate(s).values()); });
    m.def("count_rate", [](const CoherentState &s) { return to_numpy<double>(count_rate(s).values()); });
    m.def("intensity_spectrum",
          [](const SinglePhotonState &s) { return to_numpy<double>(intensity_spectrum(s).values()); });
    m.def("intensity_spectrum",
          [](const CoherentState &s) { return to_numpy<double>(intensity_spectrum(s).values()); });

    py::class_<CavityParams>(m, "CavityParams")
        .def(py::init<double, double>(), py::arg("gamma"), py::arg("delta") = 0.0)
        .def_property_readonly("gamma", &CavityParams::gamma)
        .def_property_readonly("delta", &CavityParams::delta);
    m.def("transfer_function", &transfer_function, py::arg("p"), py::arg("omega"));
    m.def("apply", py::overload_cast<const CavityParams &, const SpectralAmplitude &>(&apply), py::arg("p"),
          py::arg("nu"));
    m.def("group_delay", &group_delay, py::arg("p"), py::arg("omega"));
    m.def(
        "pulse_stats",
        [](const SampledGrid &g, const RealArray &n) {
            const auto s = pulse_stats(density_from<TimeDomain>(g, n));
            return py::make_tuple(s.mean_time, s.rms_width);
        },
        py::arg("grid"), py::arg("n"), "(mean_time, rms_width) of a count rate sampled on grid.times()");

    py::class_<ModulationParams>(m, "ModulationParams")
        .def(py::init<double, double>(), py::arg("epsilon"), py::arg("big_omega"))
        .def_property_readonly("epsilon", &ModulationParams::epsilon)
        .def_property_readonly("big_omega", &ModulationParams::big_omega);
    m.def("perturbative_spectrum_paper", [](const CavityParams &p, const ModulationParams &mp,
                                            const SpectralAmplitude &nu) {
        return to_numpy<double>(perturbative_spectrum_paper(p, mp, nu).values());
    });
    m.def("perturbative_spectrum_two_sideband", [](const CavityParams &p, const ModulationParams &mp,
                                                   const SpectralAmplitude &nu) {
        return to_numpy<double>(perturbative_spectrum_two_sideband(p, mp, nu).values());
    });

    py::class_<OracleConfig>(m, "OracleConfig")
        .def(py::init<>())
        .def_readwrite("dt", &OracleConfig::dt)
        .def_readwrite("t_start", &OracleConfig::t_start)
        .def_readwrite("t_end", &OracleConfig::t_end)
        .def_static("automatic", &OracleConfig::automatic);
    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("nu_out", &OracleResult::nu_out)
        .def_readonly("input_norm_squared", &OracleResult::input_norm_squared)
        .def_readonly("output_norm_squared", &OracleResult::output_norm_squared)
        .def_readonly("residual_intracavity", &OracleResult::residual_intracavity)
        .def_readonly("conservation_residual", &OracleResult::conservation_residual)
        .def_readonly("steps", &OracleResult::steps);
    m.def("oracle_simulate", &oracle_simulate, py::arg("p"), py::arg("m"), py::arg("nu"), py::arg("cfg"));
    m.def(
        "sideband_report",
        [](const SampledGrid &g, const RealArray &spectrum, const ModulationParams &mp) {
            const auto r = sideband_report(density_from<FrequencyDomain>(g, spectrum), mp);
            py::dict d;
            d["carrier_mass"] = r.carrier_mass;
            d["upper_mass"] = r.upper_mass;
            d["lower_mass"] = r.lower_mass;
            d["total_mass"] = r.total_mass;
            return d;
        },
        py::arg("grid"), py::arg("spectrum"), py::arg("m"));

    py::class_<CodeBook>(m, "CodeBook")
        .def(py::init<std::vector<SpectralAmplitude>>(), py::arg("signals"))
        .def("__len__", &CodeBook::size)
        .def("signal", &CodeBook::signal)
        .def_property_readonly("grid", &CodeBook::grid)
        .def("gram", &CodeBook::gram);
    m.def("make_timebin_codebook", &make_timebin_codebook, py::arg("grid"), py::arg("count"), py::arg("bin_width"));
    m.def("orthonormalize", &orthonormalize, py::arg("raw"));
    m.def(
        "encode",
        [](const CodeBook &book, const std::string &bits) { return encode(book, SymbolVector::from_string(bits)); },
        py::arg("book"), py::arg("bits"));
    m.def(
        "decode",
        [](const CodeBook &book, const SpectralAmplitude &nu, double threshold) {
            auto r = decode(book, nu, threshold);
            return py::make_tuple(r.overlaps, r.bits.to_string());
        },
        py::arg("book"), py::arg("nu"), py::arg("threshold") = 0.5);
    m.def(
        "crosstalk_matrix", [](const CodeBook &book, const CavityParams &p) { return crosstalk_matrix(book, p).matrix; },
        py::arg("book"), py::arg("p"));
}
