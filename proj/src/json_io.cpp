#include "addiviol/json_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace addiviol {

namespace {

using nlohmann::json;

json complex_pairs(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back({v[i].real(), v[i].imag()});
    return out;
}

Vector vector_from_pairs(const json& j, const char* what) {
    if (!j.is_array()) throw std::invalid_argument(std::string(what) + ": expected an array");
    Vector v(j.size());
    Eigen::Index i = 0;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2)
            throw std::invalid_argument(std::string(what) + ": entries must be [re, im] pairs");
        v[i++] = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
    return v;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace

json subspace_to_json(const Subspace& s) {
    json basis = json::array();
    for (Eigen::Index r = 0; r < s.basis.rows(); ++r)
        for (Eigen::Index c = 0; c < s.basis.cols(); ++c)
            basis.push_back({s.basis(r, c).real(), s.basis(r, c).imag()});
    return json{{"d_A", s.d_A}, {"d_B", s.d_B}, {"k", s.k()}, {"basis", basis}};
}

Subspace subspace_from_json(const json& j) {
    if (!j.contains("d_A") || !j.contains("d_B") || !j.contains("basis"))
        throw std::invalid_argument("subspace document needs d_A, d_B and basis");
    const int d_A = j.at("d_A").get<int>();
    const int d_B = j.at("d_B").get<int>();
    if (d_A < 1 || d_B < 1) throw std::invalid_argument("subspace document: bad dimensions");
    const auto& basis = j.at("basis");
    if (!basis.is_array() || basis.empty())
        throw std::invalid_argument("subspace document: basis must be a nonempty array");
    const std::size_t rows = static_cast<std::size_t>(d_A) * d_B;
    if (basis.size() % rows != 0)
        throw std::invalid_argument("subspace document: basis length is not a multiple of d_A*d_B");
    const std::size_t k = basis.size() / rows;
    if (j.contains("k") && j.at("k").get<std::size_t>() != k)
        throw std::invalid_argument("subspace document: k is inconsistent with the basis length");

    Matrix m(rows, k);
    std::size_t idx = 0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < k; ++c) {
            const auto& entry = basis.at(idx++);
            if (!entry.is_array() || entry.size() != 2)
                throw std::invalid_argument("subspace document: basis entries must be [re, im]");
            m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
        }
    return Subspace(d_A, d_B, std::move(m));
}

Subspace load_subspace(const std::string& path) { return subspace_from_json(read_file(path)); }

void save_subspace(const Subspace& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << subspace_to_json(s).dump(2) << "\n";
}

json product_basis_to_json(const ProductBasis& pb) {
    json members = json::array();
    for (const auto& [a, b] : pb.members)
        members.push_back({{"a", complex_pairs(a)}, {"b", complex_pairs(b)}});
    return json{{"d_A", pb.d_A}, {"d_B", pb.d_B}, {"members", members}};
}

ProductBasis product_basis_from_json(const json& j) {
    if (!j.contains("d_A") || !j.contains("d_B") || !j.contains("members"))
        throw std::invalid_argument("product basis document needs d_A, d_B and members");
    const int d_A = j.at("d_A").get<int>();
    const int d_B = j.at("d_B").get<int>();
    std::vector<std::pair<Vector, Vector>> members;
    for (const auto& m : j.at("members")) {
        members.emplace_back(vector_from_pairs(m.at("a"), "product basis member a"),
                             vector_from_pairs(m.at("b"), "product basis member b"));
    }
    return ProductBasis(d_A, d_B, std::move(members));
}

ProductBasis load_product_basis(const std::string& path) {
    return product_basis_from_json(read_file(path));
}

json spectrum_to_json(const SchmidtSpectrum& s) { return json(s.lambdas); }

json to_json(const ViolationReport& rep) {
    // The analytic bound is undefined for p <= 1 and serializes as null.
    json bound;
    if (!std::isnan(rep.analytic_joint_bound)) bound = rep.analytic_joint_bound;
    return json{{"p", rep.p.to_string()},
                {"d_A", rep.d_A},
                {"d_B", rep.d_B},
                {"k", rep.k},
                {"single_copy_min", rep.single_copy_min},
                {"single_copy_certified", rep.single_copy_certified},
                {"joint_entropy", rep.joint_entropy},
                {"analytic_joint_bound", bound},
                {"hayden_lambda_bound", rep.hayden_lambda_bound},
                {"lambda_max_exact", rep.lambda_max_exact},
                {"joint_spectrum", spectrum_to_json(rep.joint_spectrum)},
                {"verdict", to_string(rep.verdict)}};
}

json to_json(const ScanResult& scan) {
    json reports = json::array();
    for (const auto& rep : scan.reports) {
        json entry = to_json(rep);
        entry.erase("joint_spectrum");  // the per-d table lives in the CSV projection
        reports.push_back(entry);
    }
    json j{{"reports", reports}};
    if (scan.minimal_violating_d)
        j["minimal_violating_d"] = *scan.minimal_violating_d;
    else
        j["minimal_violating_d"] = nullptr;
    return j;
}

json to_json(const MinEntropyResult& res) {
    return json{{"p", res.p.to_string()},
                {"value", res.value},
                {"argmin", complex_pairs(res.argmin)},
                {"spectrum_at_argmin", spectrum_to_json(res.spectrum_at_argmin)},
                {"restarts_used", res.restarts_used},
                {"converged", res.converged}};
}

json to_json(const MultiCopyResult& res) {
    return json{{"d", res.d},
                {"n", res.n},
                {"input_kind", to_string(res.input_kind)},
                {"p", res.p.to_string()},
                {"entropy", res.entropy},
                {"single_copy_sum", res.single_copy_sum},
                {"spectrum", spectrum_to_json(res.spectrum)},
                {"converged", res.converged}};
}

json to_json(const UpbCertificate& cert) {
    json j{{"is_unextendible", cert.is_unextendible}, {"method", to_string(cert.method)}};
    if (cert.method == UpbMethod::partition_exhaustive) {
        if (cert.extension_partition)
            j["extension_partition"] = *cert.extension_partition;
        else
            j["worst_partition"] = cert.worst_partition;
    } else {
        j["max_complement_overlap"] = cert.max_complement_overlap;
    }
    return j;
}

json to_json(const P0AdditivityReport& rep) {
    json j{{"declined", rep.declined},
           {"certificate", to_json(rep.certificate)},
           {"complement_overlap", rep.complement_overlap},
           {"random_output_min_rank", rep.random_output_min_rank},
           {"random_output_min_eigenvalue", rep.random_output_min_eigenvalue},
           {"additive_evidence", rep.additive_evidence}};
    j["genericity_applicable"] = rep.genericity_applicable;
    if (rep.genericity_applicable) {
        j["generic"] = rep.genericity.generic;
        if (!rep.genericity.generic) j["genericity_failing_subset"] = rep.genericity.failing_subset;
    }
    if (!rep.declined) {
        j["tensor_complement_overlap"] = rep.tensor_complement_overlap;
        j["two_copy_min_rank"] = rep.two_copy_rank.min_rank;
        j["two_copy_min_eigenvalue"] = rep.two_copy_rank.min_eigenvalue;
        j["s0_two_copy_estimate"] = rep.s0_two_copy_estimate;
    }
    return j;
}

}  // namespace addiviol
