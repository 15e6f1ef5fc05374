#include "loqgs/io.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>

namespace loqgs {

using nlohmann::json;

namespace {

json read_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw io_error("cannot open " + file.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw io_error(file.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw io_error("cannot write " + file.string());
    out << text;
    if (!out) throw io_error("short write to " + file.string());
}

Eigen::MatrixXcd matrix_from_parts(const json& re, const json& im, int rows, int cols,
                                   const std::string& what) {
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != rows ||
        static_cast<int>(im.size()) != rows) {
        throw usage_error(what + ": re/im must be " + std::to_string(rows) + " rows");
    }
    Eigen::MatrixXcd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& rrow = re.at(static_cast<size_t>(i));
        const json& irow = im.at(static_cast<size_t>(i));
        if (static_cast<int>(rrow.size()) != cols || static_cast<int>(irow.size()) != cols) {
            throw usage_error(what + ": row " + std::to_string(i) + " must have " +
                              std::to_string(cols) + " columns");
        }
        for (int j = 0; j < cols; ++j) {
            m(i, j) = Complex(rrow.at(static_cast<size_t>(j)).get<double>(),
                              irow.at(static_cast<size_t>(j)).get<double>());
        }
    }
    return m;
}

void matrix_to_parts(const Eigen::MatrixXcd& m, json& re, json& im) {
    re = json::array();
    im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
}

PhotonConfig config_from_json(const json& j, const std::string& what) {
    if (!j.is_array()) throw usage_error(what + ": expected an array of occupations");
    std::vector<int> occ;
    occ.reserve(j.size());
    for (const auto& v : j) {
        const int n = v.get<int>();
        if (n < 0) throw usage_error(what + ": negative occupation");
        occ.push_back(n);
    }
    return PhotonConfig(std::move(occ));
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

Eigen::MatrixXcd load_unitary(const std::filesystem::path& file) {
    const json j = read_json_file(file);
    if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im")) {
        throw usage_error(file.string() + ": expected {\"n\", \"re\", \"im\"}");
    }
    const int n = j.at("n").get<int>();
    if (n < 1) throw usage_error(file.string() + ": n must be >= 1");
    return matrix_from_parts(j.at("re"), j.at("im"), n, n, file.string());
}

void save_unitary(const std::filesystem::path& file, const Eigen::MatrixXcd& u) {
    if (u.rows() != u.cols()) throw usage_error("save_unitary: matrix must be square");
    json j;
    j["n"] = static_cast<int>(u.rows());
    matrix_to_parts(u, j["re"], j["im"]);
    write_text_file(file, j.dump(2) + "\n");
}

GateSpec load_gate(const std::filesystem::path& file) {
    const json j = read_json_file(file);
    GateSpec g;
    try {
        g.name = j.at("name").get<std::string>();
        g.n_modes = j.at("n_modes").get<int>();
        g.n_ancilla = j.at("n_ancilla").get<int>();
        for (const auto& c : j.at("computational_inputs")) {
            g.computational_inputs.push_back(config_from_json(c, "computational_inputs"));
        }
        g.ancilla_input = config_from_json(j.at("ancilla_input"), "ancilla_input");
        g.measurement = config_from_json(j.at("measurement"), "measurement");

        const json& t = j.at("target");
        const int rows = t.at("rows").get<int>();
        const int cols = t.at("cols").get<int>();
        OutputLabeling lab =
            output_labeling(g.computational_inputs, g.ancilla_input, g.measurement);
        if (rows != static_cast<int>(g.computational_inputs.size()) ||
            cols != static_cast<int>(lab.outputs.size())) {
            throw usage_error(file.string() + ": target must be " +
                              std::to_string(g.computational_inputs.size()) + "x" +
                              std::to_string(lab.outputs.size()) +
                              " over the sector-ordered output basis");
        }
        g.target.entries = matrix_from_parts(t.at("re"), t.at("im"), rows, cols, "target");
        g.target.inputs = g.computational_inputs;
        g.target.outputs = std::move(lab.outputs);
        g.target.row_span = std::move(lab.row_span);

        if (j.contains("u0")) {
            g.u0 = matrix_from_parts(j.at("u0").at("re"), j.at("u0").at("im"), g.n_modes,
                                     g.n_modes, "u0");
        } else {
            g.u0 = Eigen::MatrixXcd::Identity(g.n_modes, g.n_modes);
        }
    } catch (const json::exception& e) {
        throw usage_error(file.string() + ": " + e.what());
    }
    try {
        g.validate();
    } catch (const std::invalid_argument& e) {
        throw usage_error(file.string() + ": " + e.what());
    }
    return g;
}

GateSpec resolve_gate(const std::string& name_or_path) {
    if (name_or_path == "ns") return ns_spec();
    if (name_or_path == "cz") return cz_spec();
    if (std::filesystem::exists(name_or_path)) return load_gate(name_or_path);
    throw usage_error("unknown gate '" + name_or_path + "' (not a builtin name or a file)");
}

}  // namespace loqgs
