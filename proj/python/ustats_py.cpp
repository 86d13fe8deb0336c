// Python bindings for the main operations: einsum contraction, U/V-statistics
// of built-in kernels, distance covariance, motif counts, treewidth, and the
// contraction-cost report.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "ustats/ustats.hpp"

namespace py = pybind11;

namespace {

using ustats::Config;
using ustats::DenseTensor;
using ustats::IndexTuple;
using ustats::MDKernel;
using ustats::Observation;
using ustats::Sample;

DenseTensor tensor_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    DenseTensor t;
    t.order = static_cast<int>(arr.ndim());
    t.extent = t.order == 0 ? 1 : static_cast<int>(arr.shape(0));
    for (py::ssize_t d = 0; d < arr.ndim(); ++d)
        if (arr.shape(d) != t.extent)
            throw py::value_error("tensor axes must share one extent");
    t.data.assign(arr.data(), arr.data() + arr.size());
    return t;
}

Sample sample_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw py::value_error("data must be a 2-D array (rows = observations)");
    const auto n = arr.shape(0);
    const auto d = arr.shape(1);
    std::vector<Observation> rows(static_cast<std::size_t>(n));
    const double* p = arr.data();
    for (py::ssize_t i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(i)].assign(p + i * d, p + (i + 1) * d);
    return Sample(std::move(rows));
}

MDKernel kernel_from_spec(const std::string& spec) {
    if (spec == "prod2") return ustats::prod2_kernel();
    if (spec.rfind("hoif:", 0) == 0) {
        std::size_t second = spec.find(':', 5);
        if (second == std::string::npos) throw py::value_error("expected hoif:<j>:<k>");
        int j = std::stoi(spec.substr(5, second - 5));
        int k = std::stoi(spec.substr(second + 1));
        return ustats::hoif_kernel(j, ustats::truncation_phi(k));
    }
    throw py::value_error("unknown kernel spec '" + spec + "' (prod2 | hoif:<j>:<k>)");
}

Config config_with(int threads) {
    Config c;
    c.threads = threads;
    return c;
}

}  // namespace

PYBIND11_MODULE(_ustats, m) {
    m.doc() = "Exact U/V-statistics via partition-lattice tensor contraction";

    py::register_exception<ustats::Error>(m, "UStatsError");

    m.def(
        "einsum",
        [](const std::vector<py::array_t<double, py::array::c_style | py::array::forcecast>>& arrays,
           const std::vector<IndexTuple>& inputs, const IndexTuple& output, int threads) {
            std::vector<DenseTensor> tensors;
            tensors.reserve(arrays.size());
            for (const auto& a : arrays) tensors.push_back(tensor_from_array(a));
            ustats::EinsumNotation notation = ustats::validate_notation(inputs, output);
            DenseTensor result = ustats::einsum(tensors, notation, config_with(threads));
            std::vector<py::ssize_t> shape(static_cast<std::size_t>(result.order),
                                           static_cast<py::ssize_t>(result.extent));
            py::array_t<double> out(shape);
            std::copy(result.data.begin(), result.data.end(), out.mutable_data());
            return out;
        },
        py::arg("tensors"), py::arg("inputs"), py::arg("output") = IndexTuple{},
        py::arg("threads") = 0,
        "Contract tensors over the given index tuples; empty output yields a 0-d array");

    m.def(
        "u_statistic",
        [](const std::string& kernel,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
           int threads) {
            Sample s = sample_from_array(data);
            return ustats::u_statistic(kernel_from_spec(kernel), s, config_with(threads));
        },
        py::arg("kernel"), py::arg("data"), py::arg("threads") = 0,
        "Exact U-statistic of a built-in kernel (prod2 | hoif:<j>:<k>)");

    m.def(
        "v_statistic",
        [](const std::string& kernel,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& data,
           int threads) {
            Sample s = sample_from_array(data);
            return ustats::v_statistic(kernel_from_spec(kernel), s, config_with(threads));
        },
        py::arg("kernel"), py::arg("data"), py::arg("threads") = 0,
        "V-statistic of a built-in kernel");

    m.def(
        "dcov_squared",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& y, int threads) {
            return ustats::dcov_squared(sample_from_array(x), sample_from_array(y),
                                        config_with(threads));
        },
        py::arg("x"), py::arg("y"), py::arg("threads") = 0,
        "Unbiased squared distance covariance of paired samples");

    m.def(
        "motif_counts",
        [](int n, const std::vector<std::pair<int, int>>& edges, int order) {
            ustats::SimpleGraph g = ustats::SimpleGraph::from_edges(n, edges);
            py::dict out;
            for (const ustats::MotifSpec& spec : ustats::motif_catalog()) {
                if (spec.order != order) continue;
                out[py::str(spec.id)] = ustats::motif_count(g, spec);
            }
            return out;
        },
        py::arg("n"), py::arg("edges"), py::arg("order"),
        "Induced motif counts (order 3: r1-r2, order 4: r3-r8)");

    m.def(
        "treewidth",
        [](int n, const std::vector<std::pair<int, int>>& edges) {
            ustats::SimpleGraph g = ustats::SimpleGraph::from_edges(n, edges);
            Config c;
            c.exact_treewidth_bound = std::max(c.exact_treewidth_bound, g.vertex_count());
            ustats::TreewidthResult r = ustats::treewidth_exact(g, c);
            return py::make_tuple(r.width, r.order);
        },
        py::arg("n"), py::arg("edges"), "Exact treewidth and a witness elimination order");

    m.def(
        "analyze",
        [](const std::vector<IndexTuple>& signature, int n) {
            ustats::ComplexityReport r = ustats::complexity_report(signature, n);
            py::dict out;
            out["signature"] = r.signature;
            out["m"] = r.index_count;
            out["vertices"] = r.graph_vertices;
            out["edges"] = r.graph_edges;
            out["treewidth_lower"] = r.treewidth_lower;
            out["treewidth_upper"] = r.treewidth_upper;
            if (r.treewidth_exact) out["treewidth_exact"] = *r.treewidth_exact;
            out["bell"] = r.bell_count;
            out["sparsified"] = r.sparsified_count;
            py::dict by_width;
            for (const auto& [w, c] : r.count_by_width) by_width[py::int_(w)] = c;
            out["by_width"] = by_width;
            out["M"] = r.max_quotient_width;
            out["flops_estimate"] = r.flops_estimate;
            return out;
        },
        py::arg("signature"), py::arg("n"),
        "Partition/treewidth cost report for a signature priced at extent n");

    m.def("bell_number", &ustats::bell_number, py::arg("m"));
}
