#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "jacsidon/cli.hpp"
#include "jacsidon/embed.hpp"
#include "jacsidon/error.hpp"
#include "jacsidon/sidon.hpp"

namespace py = pybind11;
using namespace jacsidon;

namespace {

abgroup::GroupElement to_element(const abgroup::GroupSpec& g, const std::vector<std::int64_t>& c) {
  if (c.size() != g.rank()) throw std::invalid_argument("element rank does not match the group");
  return abgroup::g_reduce(g, c);
}

std::vector<abgroup::GroupElement> to_elements(const abgroup::GroupSpec& g,
                                               const std::vector<std::vector<std::int64_t>>& xs) {
  std::vector<abgroup::GroupElement> out;
  for (const auto& x : xs) out.push_back(to_element(g, x));
  return out;
}

sidon::SidonOptions options(std::size_t witness_cap, bool babai_sos, bool energy) {
  sidon::SidonOptions o;
  o.witness_cap = witness_cap;
  o.babai_sos = babai_sos;
  o.with_energy = energy;
  return o;
}

std::string construct_json(const std::string& family, std::uint64_t q, unsigned d, std::vector<std::int64_t> f,
                           const std::string& curve, std::optional<std::uint64_t> seed) {
  cli::FamilyRequest r;
  r.family = family;
  r.q = q;
  r.d = d;
  r.f = std::move(f);
  r.curve = curve;
  r.seed = seed;
  return cli::set_file_to_json(cli::to_set_file(cli::construct_family(r), seed)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sidon and symmetric Sidon sets from generalized jacobians";
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  m.def("construct", &construct_json, py::arg("family"), py::arg("q"), py::arg("d") = 3,
        py::arg("f") = std::vector<std::int64_t>{}, py::arg("curve") = "", py::arg("seed") = py::none(),
        "Set file of a family as a JSON string");

  m.def(
      "verify_sidon",
      [](const std::vector<std::uint64_t>& moduli, const std::vector<std::vector<std::int64_t>>& elements,
         std::size_t witness_cap, bool babai_sos, bool energy) {
        abgroup::GroupSpec g(moduli);
        auto s = to_elements(g, elements);
        return cli::report_to_json(sidon::verify_sidon(s, sidon::SpecOps{g}, options(witness_cap, babai_sos, energy)))
            .dump();
      },
      py::arg("moduli"), py::arg("elements"), py::arg("witness_cap") = 16, py::arg("babai_sos") = false,
      py::arg("energy") = false, "Sidon report as a JSON string");

  m.def(
      "classify",
      [](const std::vector<std::uint64_t>& moduli, const std::vector<std::vector<std::int64_t>>& elements,
         std::size_t witness_cap, bool energy) {
        abgroup::GroupSpec g(moduli);
        auto s = to_elements(g, elements);
        return cli::report_to_json(sidon::classify(s, sidon::SpecOps{g}, options(witness_cap, false, energy))).dump();
      },
      py::arg("moduli"), py::arg("elements"), py::arg("witness_cap") = 16, py::arg("energy") = false,
      "Sidon, symmetric or neither, as a JSON report");

  m.def(
      "desymmetrize",
      [](const std::vector<std::uint64_t>& moduli, const std::vector<std::vector<std::int64_t>>& elements,
         const std::vector<std::int64_t>& center) {
        abgroup::GroupSpec g(moduli);
        auto d = sidon::desymmetrize(to_elements(g, elements), to_element(g, center), sidon::SpecOps{g});
        std::vector<std::vector<std::uint64_t>> kept, dropped;
        for (const auto& x : d.elements) kept.push_back(x.coords);
        for (const auto& x : d.dropped) dropped.push_back(x.coords);
        return py::make_tuple(kept, dropped);
      },
      py::arg("moduli"), py::arg("elements"), py::arg("center"));

  m.def(
      "census",
      [](const std::vector<std::uint64_t>& moduli, bool babai_sos) {
        auto r = sidon::max_sidon_census(abgroup::GroupSpec(moduli), babai_sos);
        std::vector<std::vector<std::uint64_t>> w;
        for (const auto& x : r.witness) w.push_back(x.coords);
        return py::make_tuple(r.max_size, w, r.method);
      },
      py::arg("moduli"), py::arg("babai_sos") = false, "(max size, witness, method)");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"jacsidon"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "(exit code, stdout, stderr)");
}
