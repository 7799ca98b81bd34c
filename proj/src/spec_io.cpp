// spec_io.cpp: JSON spec files and report serialization helpers

#include "rateaudit/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace rateaudit {

using nlohmann::json;

namespace {

double finite_number(const json& j, const std::string& what) {
    if (!j.is_number()) throw InputError(what + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InputError(what + ": non-finite number");
    return v;
}

const json& field(const json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key)) throw InputError(what + ": missing field \"" + key + "\"");
    return j.at(key);
}

}  // namespace

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {finite_number(j, "scalar"), 0.0};
    if (!j.is_array() || j.size() != 2) throw InputError("complex scalar must be [re, im]");
    return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

CMatrix matrix_from_json(const json& j, Eigen::Index d, const std::string& what) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != d) {
        throw InputError(what + ": expected " + std::to_string(d) + " rows");
    }
    CMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        const auto& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
            throw InputError(what + ": expected " + std::to_string(d) + " columns in every row");
        }
        for (Eigen::Index c = 0; c < d; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

ordered_json to_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json to_json(const CMatrix& m) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

ordered_json to_json(const CVector& v) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v(k)));
    return out;
}

ordered_json to_json(const Witness& w) {
    struct Visitor {
        ordered_json operator()(std::monostate) const { return nullptr; }
        ordered_json operator()(const CVector& v) const { return {{"vector", to_json(v)}}; }
        ordered_json operator()(const VectorPair& p) const {
            return {{"phi", to_json(p.phi)}, {"psi", to_json(p.psi)}};
        }
        ordered_json operator()(const CMatrix& m) const { return {{"matrix", to_json(m)}}; }
    };
    return std::visit(Visitor{}, w);
}

GeneratorSpec generator_spec_from_json(const json& j) {
    const auto& dj = field(j, "d", "spec");
    if (!dj.is_number_integer() || dj.get<long long>() < 2 || dj.get<long long>() > 64) {
        throw InputError("spec: d must be an integer in [2, 64]");
    }
    GeneratorSpec spec;
    spec.d = dj.get<Eigen::Index>();
    spec.hamiltonian = j.contains("hamiltonian") ? matrix_from_json(j.at("hamiltonian"), spec.d, "hamiltonian")
                                                 : CMatrix(CMatrix::Zero(spec.d, spec.d));
    if (j.contains("jumps")) {
        const auto& jumps = j.at("jumps");
        if (!jumps.is_array()) throw InputError("spec: jumps must be an array");
        for (std::size_t k = 0; k < jumps.size(); ++k) {
            const std::string what = "jump " + std::to_string(k);
            spec.jumps.push_back({matrix_from_json(field(jumps[k], "matrix", what), spec.d, what),
                                  finite_number(field(jumps[k], "rate", what), what + " rate")});
        }
    }
    spec.validate();
    return spec;
}

ordered_json to_json(const GeneratorSpec& spec) {
    ordered_json jumps = ordered_json::array();
    for (const auto& jp : spec.jumps) jumps.push_back({{"rate", jp.rate}, {"matrix", to_json(jp.matrix)}});
    return {{"kind", "static"}, {"d", spec.d}, {"hamiltonian", to_json(spec.hamiltonian)}, {"jumps", jumps}};
}

SpecFile parse_spec(const std::string& bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("spec parse error: ") + e.what());
    }
    if (!j.is_object()) throw InputError("spec: top level must be an object");
    SpecFile out;
    out.bytes = bytes;
    out.digest = sha256_hex(bytes);
    const std::string kind = j.value("kind", std::string("static"));
    if (kind == "static") {
        out.spec = generator_spec_from_json(j);
    } else if (kind == "time_dependent") {
        const auto& type = field(j, "type", "time-dependent spec");
        if (type == "tanh_example") {
            out.spec = builtin_tanh_example(finite_number(field(j, "mu", "tanh example"), "mu"));
        } else if (type == "piecewise") {
            const auto& tj = field(j, "times", "piecewise spec");
            const auto& sj = field(j, "specs", "piecewise spec");
            if (!tj.is_array() || !sj.is_array()) throw InputError("piecewise spec: times and specs must be arrays");
            std::vector<double> times;
            for (const auto& t : tj) times.push_back(finite_number(t, "time"));
            std::vector<GeneratorSpec> specs;
            for (const auto& s : sj) specs.push_back(generator_spec_from_json(s));
            if (times.empty()) throw InputError("piecewise spec: empty");
            const double t_end = j.contains("t_end") ? finite_number(j.at("t_end"), "t_end") : 1e6;
            out.spec = piecewise_spec(std::move(times), std::move(specs), t_end);
        } else {
            throw InputError("time-dependent spec: unknown type");
        }
    } else {
        throw InputError("spec: kind must be \"static\" or \"time_dependent\"");
    }
    return out;
}

SpecFile load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw NumericalError("sha256 failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return hex.str();
}

}  // namespace rateaudit
