#include "nlpm/json_io.hpp"

#include <fstream>

namespace nlpm {

using nlohmann::json;

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "pass") return Verdict::pass;
    if (s == "fail") return Verdict::fail;
    if (s == "inconclusive") return Verdict::inconclusive;
    throw Error("unknown verdict '" + s + "'");
}

json report_to_json(const PropertyReport& r) {
    json j;
    j["property"] = r.property;
    j["verdict"] = to_string(r.verdict);
    j["trials"] = r.trials;
    j["worst_margin"] = r.worst_margin;
    if (r.counterexample) j["counterexample"] = *r.counterexample;
    j["seed"] = r.seed;
    return j;
}

namespace {

json real_part_rows(const CMatrix& m, bool imag) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j)
            row.push_back(imag ? m.at(i, j).imag() : m.at(i, j).real());
        rows.push_back(row);
    }
    return rows;
}

bool has_imag(const CMatrix& m) {
    for (const cplx& z : m.data())
        if (z.imag() != 0.0) return true;
    return false;
}

void expect_object(const json& j, const char* what) {
    if (!j.is_object()) throw Error(std::string(what) + ": expected a JSON object");
}

const json& field(const json& j, const char* name, const char* what) {
    auto it = j.find(name);
    if (it == j.end()) throw Error(std::string(what) + ": missing field \"" + name + "\"");
    return *it;
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
    json j;
    j["dim"] = m.dim();
    j["re"] = real_part_rows(m, false);
    if (has_imag(m)) j["im"] = real_part_rows(m, true);
    return j;
}

json matrix_to_json(const HermMatrix& m) { return matrix_to_json(m.mat()); }

CMatrix cmatrix_from_json(const json& j) {
    expect_object(j, "matrix");
    const int dim = field(j, "dim", "matrix").get<int>();
    if (dim < 1) throw Error("matrix: dim must be >= 1");
    const json& re = field(j, "re", "matrix");
    if (!re.is_array() || static_cast<int>(re.size()) != dim)
        throw Error("matrix: \"re\" must be a dim x dim array");
    CMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
        if (!re[i].is_array() || static_cast<int>(re[i].size()) != dim)
            throw Error("matrix: \"re\" must be a dim x dim array");
        for (int k = 0; k < dim; ++k) m.at(i, k) = re[i][k].get<double>();
    }
    if (j.contains("im")) {
        const json& im = j["im"];
        if (!im.is_array() || static_cast<int>(im.size()) != dim)
            throw Error("matrix: \"im\" must be a dim x dim array");
        for (int i = 0; i < dim; ++i) {
            if (!im[i].is_array() || static_cast<int>(im[i].size()) != dim)
                throw Error("matrix: \"im\" must be a dim x dim array");
            for (int k = 0; k < dim; ++k) m.at(i, k) += cplx(0.0, im[i][k].get<double>());
        }
    }
    return m;
}

HermMatrix herm_from_json(const json& j) { return HermMatrix::hermitize(cmatrix_from_json(j)); }

json capacity_to_json(const Capacity& c) {
    json j;
    j["n"] = c.n();
    j["values"] = c.values();
    return j;
}

Capacity capacity_from_json(const json& j) {
    expect_object(j, "capacity");
    const int n = field(j, "n", "capacity").get<int>();
    const json& vals = field(j, "values", "capacity");
    if (!vals.is_array()) throw Error("capacity: \"values\" must be an array");
    return Capacity(n, vals.get<std::vector<double>>());
}

json opcapacity_to_json(const OperatorCapacity& c) {
    json j;
    j["n"] = c.n();
    j["out_dim"] = c.out_dim();
    json vals = json::array();
    for (const HermMatrix& m : c.values()) vals.push_back(matrix_to_json(m));
    j["values"] = vals;
    return j;
}

OperatorCapacity opcapacity_from_json(const json& j) {
    expect_object(j, "operator capacity");
    const int n = field(j, "n", "operator capacity").get<int>();
    const int out_dim = field(j, "out_dim", "operator capacity").get<int>();
    const json& vals = field(j, "values", "operator capacity");
    if (!vals.is_array()) throw Error("operator capacity: \"values\" must be an array");
    std::vector<HermMatrix> ms;
    ms.reserve(vals.size());
    for (const json& v : vals) ms.push_back(herm_from_json(v));
    return OperatorCapacity(n, out_dim, std::move(ms));
}

bool is_operator_capacity_json(const json& j) { return j.is_object() && j.contains("out_dim"); }

ScalarFunctionSpec function_from_json(const json& j) {
    expect_object(j, "function spec");
    if (j.contains("builtin")) {
        const std::string name = j["builtin"].get<std::string>();
        const double param = j.contains("param") ? j["param"].get<double>() : 0.0;
        if (name == "identity") return fn_identity();
        if (name == "sqrt") return fn_sqrt();
        if (name == "power") return fn_power(param);
        if (name == "shifted_inverse") return fn_shifted_inverse(param);
        if (name == "f_alpha") return fn_f_alpha(param);
        if (name == "indicator_jump") return fn_indicator_jump();
        if (name == "max_one") return fn_max_one();
        if (name == "square") return fn_square();
        throw Error("function spec: unknown builtin '" + name + "'");
    }
    if (j.contains("table")) {
        std::vector<std::pair<double, double>> samples;
        for (const json& row : j["table"]) {
            if (!row.is_array() || row.size() != 2) throw Error("function spec: table rows must be [t, F]");
            samples.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
        const double jump = j.contains("jump") ? j["jump"].get<double>() : 0.0;
        return fn_table(samples, jump);
    }
    throw Error("function spec: need \"builtin\" or \"table\"");
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

}  // namespace nlpm
