#include "cohinfo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cohinfo/error.hpp"

namespace cohinfo::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::ParseError, path + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) parse_fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(path.empty() ? key : path + "." + key, "missing");
    return *it;
}

std::vector<double> number_array(const json& j, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) parse_fail(path + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(j[i].get<double>());
    }
    return out;
}

std::vector<std::vector<double>> number_grid(const json& j, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected an array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(number_array(j[i], path + "[" + std::to_string(i) + "]"));
    return rows;
}

ComplexMatrix complex_grid(const json& obj, const std::string& path) {
    const auto re = number_grid(field(obj, "re", path), path + ".re");
    const auto im = number_grid(field(obj, "im", path), path + ".im");
    const std::size_t n = re.size();
    if (im.size() != n) parse_fail(path + ".im", "row count differs from re");
    const std::size_t cols = n == 0 ? 0 : re[0].size();
    ComplexMatrix m(n, cols);
    for (std::size_t r = 0; r < n; ++r) {
        const std::string row = "[" + std::to_string(r) + "]";
        if (re[r].size() != cols) parse_fail(path + ".re" + row, "ragged row");
        if (im[r].size() != cols) parse_fail(path + ".im" + row, "row length differs from re");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
    }
    return m;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
    }
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_grid(std::ostringstream& os, const ComplexMatrix& m, bool imag, const char* indent) {
    os << "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        os << (r ? ",\n" : "\n") << indent << "  [";
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << num(imag ? m(r, c).imag() : m(r, c).real());
        os << "]";
    }
    os << "\n" << indent << "]";
}

}  // namespace

BipartiteState StateFile::bipartite() const {
    if (dims.size() != 2)
        throw Error(ErrorCode::DimensionMismatch, "dims: expected two subsystems, got " + std::to_string(dims.size()));
    return {state, dims[0], dims[1]};
}

StateFile parse_state(const std::string& text, double tol) {
    const json j = parse_json(text);
    StateFile f;
    const json& dims = field(j, "dims", "");
    if (!dims.is_array() || dims.empty()) parse_fail("dims", "expected a nonempty array of positive integers");
    std::size_t product = 1;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (!dims[i].is_number_integer() || dims[i].get<long long>() <= 0)
            parse_fail("dims[" + std::to_string(i) + "]", "expected a positive integer");
        f.dims.push_back(dims[i].get<std::size_t>());
        product *= f.dims.back();
    }
    const ComplexMatrix m = complex_grid(j, "");
    if (m.rows() != m.cols()) throw Error(ErrorCode::ValidationError, "re: state matrix is not square");
    if (m.rows() != product) {
        throw Error(ErrorCode::DimensionMismatch, "dims: product " + std::to_string(product) +
                                                      " differs from matrix dimension " + std::to_string(m.rows()));
    }
    try {
        f.state = DensityMatrix::validated(m, tol);
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationError, std::string("re/im: ") + e.what());
    }
    return f;
}

Observable parse_observable(const std::string& text, double tol) {
    const json j = parse_json(text);
    const auto values = number_array(field(j, "eigenvalues", ""), "eigenvalues");
    std::vector<Observable::Branch> branches;
    if (j.contains("projectors")) {
        const json& ps = j["projectors"];
        if (!ps.is_array()) parse_fail("projectors", "expected an array");
        if (ps.size() != values.size()) parse_fail("projectors", "count differs from eigenvalues");
        for (std::size_t l = 0; l < ps.size(); ++l)
            branches.push_back({values[l], complex_grid(ps[l], "projectors[" + std::to_string(l) + "]")});
    } else if (j.contains("eigenvectors")) {
        const json& vs = j["eigenvectors"];
        if (!vs.is_array()) parse_fail("eigenvectors", "expected an array");
        if (vs.size() != values.size()) parse_fail("eigenvectors", "count differs from eigenvalues");
        for (std::size_t l = 0; l < vs.size(); ++l) {
            const std::string path = "eigenvectors[" + std::to_string(l) + "]";
            const auto re = number_array(field(vs[l], "re", path), path + ".re");
            const auto im = number_array(field(vs[l], "im", path), path + ".im");
            if (re.size() != im.size()) parse_fail(path + ".im", "length differs from re");
            std::vector<Complex> v(re.size());
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = Complex(re[i], im[i]);
            branches.push_back({values[l], ComplexMatrix::outer(v)});
        }
    } else {
        parse_fail("projectors", "missing (or give eigenvectors)");
    }
    try {
        return Observable::validated(std::move(branches), tol);
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationError, std::string("projectors: ") + e.what());
    }
}

std::string format_state(const DensityMatrix& state, const std::vector<std::size_t>& dims) {
    std::ostringstream os;
    os << "{\n  \"dims\": [";
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? ", " : "") << dims[i];
    os << "],\n  \"re\": ";
    write_grid(os, state.matrix(), false, "  ");
    os << ",\n  \"im\": ";
    write_grid(os, state.matrix(), true, "  ");
    os << "\n}\n";
    return os.str();
}

std::string format_observable(const Observable& a) {
    std::ostringstream os;
    os << "{\n  \"eigenvalues\": [";
    for (std::size_t l = 0; l < a.branch_count(); ++l) os << (l ? ", " : "") << num(a.branch(l).eigenvalue);
    os << "],\n  \"projectors\": [";
    for (std::size_t l = 0; l < a.branch_count(); ++l) {
        os << (l ? ",\n" : "\n") << "    {\"re\": ";
        write_grid(os, a.branch(l).projector, false, "     ");
        os << ",\n     \"im\": ";
        write_grid(os, a.branch(l).projector, true, "     ");
        os << "}";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ValidationError, path + ": cannot write");
    out << text;
}

}  // namespace cohinfo::io
