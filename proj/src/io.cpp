#include "wha/io.hpp"

#include <nlohmann/json.hpp>

namespace wha {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("expected a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const char* what) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
        throw ShapeMismatch(std::string(what) + ": wrong row count");
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw ShapeMismatch(std::string(what) + ": wrong column count");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(row[static_cast<size_t>(c)]);
    }
    return m;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

Vector vector_from_json(const json& j, Eigen::Index size, const char* what) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size)
        throw ShapeMismatch(std::string(what) + ": wrong length");
    Vector v(size);
    for (Eigen::Index i = 0; i < size; ++i)
        v(i) = complex_from_json(j[static_cast<size_t>(i)]);
    return v;
}

json algebra_to_json(const BlockAlgebra& a) {
    return json{{"blocks", a.blocks()}, {"label", a.label()}};
}

BlockAlgebra algebra_from_json(const json& j) {
    if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
        throw ParseError("algebra: missing block list");
    std::vector<int> blocks;
    for (const auto& b : j["blocks"]) {
        if (!b.is_number_integer() || b.get<int>() < 1)
            throw ParseError("algebra: block sizes must be positive integers");
        blocks.push_back(b.get<int>());
    }
    if (blocks.empty()) throw ParseError("algebra: needs at least one block");
    return BlockAlgebra(blocks, j.value("label", std::string()));
}

json parse(const std::string& bytes) {
    json j = json::parse(bytes, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return j;
}

}  // namespace

std::string save(const WeakHopf& w, const std::map<std::string, std::string>& metadata) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["algebra"] = algebra_to_json(w.A);
    if (w.has_standard_gauge())
        doc["gauge"] = "identity";
    else
        doc["gauge"] = vector_to_json(w.gauge.to_vector());
    doc["delta"] = matrix_to_json(w.delta.matrix());
    doc["kappa"] = matrix_to_json(w.kappa.matrix());
    doc["epsilon"] = vector_to_json(w.eps.matrix().row(0).transpose());
    doc["metadata"] = metadata;
    return doc.dump(2) + "\n";
}

WeakHopf load(const std::string& bytes) {
    const json doc = parse(bytes);
    if (!doc.is_object()) throw ParseError("document: expected a JSON object");
    if (!doc.contains("format_version") || !doc["format_version"].is_number_integer())
        throw ParseError("document: missing format_version");
    if (doc["format_version"].get<int>() != kFormatVersion)
        throw UnsupportedVersion("document: unsupported format_version");
    for (const char* key : {"algebra", "gauge", "delta", "kappa", "epsilon"})
        if (!doc.contains(key)) throw ParseError(std::string("document: missing ") + key);

    WeakHopf w;
    w.A = algebra_from_json(doc["algebra"]);
    const Eigen::Index dim = w.A.dim();
    const BlockAlgebra aa = tensor(w.A, w.A);

    if (doc["gauge"].is_string()) {
        if (doc["gauge"].get<std::string>() != "identity")
            throw ParseError("gauge: unknown keyword");
        w.gauge = AlgElement::identity(w.A);
    } else {
        w.gauge = AlgElement::from_vector(w.A, vector_from_json(doc["gauge"], dim, "gauge"));
    }
    w.delta = LinearMapRep(w.A, aa, matrix_from_json(doc["delta"], aa.dim(), dim, "delta"));
    w.kappa = LinearMapRep(w.A, w.A, matrix_from_json(doc["kappa"], dim, dim, "kappa"));
    w.eps = functional_from_row(
        w.A, vector_from_json(doc["epsilon"], dim, "epsilon").transpose());
    return w;
}

std::string save_element(const AlgElement& x) {
    json doc;
    doc["format_version"] = kFormatVersion;
    doc["algebra"] = algebra_to_json(x.algebra());
    doc["values"] = vector_to_json(x.to_vector());
    return doc.dump(2) + "\n";
}

AlgElement load_element(const std::string& bytes) {
    const json doc = parse(bytes);
    if (!doc.is_object() || !doc.contains("algebra") || !doc.contains("values"))
        throw ParseError("element: expected {algebra, values}");
    if (doc.contains("format_version") && doc["format_version"].is_number_integer() &&
        doc["format_version"].get<int>() != kFormatVersion)
        throw UnsupportedVersion("element: unsupported format_version");
    const BlockAlgebra a = algebra_from_json(doc["algebra"]);
    return AlgElement::from_vector(a, vector_from_json(doc["values"], a.dim(), "values"));
}

std::string report_to_json(const StructureReport& report, bool pass) {
    json doc;
    doc["pass"] = pass;
    doc["tol"] = report.tol;
    json res = json::object();
    for (const auto& it : report.items) res[it.name] = it.residual;
    doc["residuals"] = std::move(res);
    return doc.dump(2) + "\n";
}

}  // namespace wha
