// spec_io.hpp: JSON spec files and report serialization helpers

#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "rateaudit/generator.hpp"
#include "rateaudit/positivity.hpp"
#include "rateaudit/timedep.hpp"

namespace rateaudit {

using ordered_json = nlohmann::ordered_json;

// Complex scalars are [re, im]; matrices are row-major nested arrays.
cplx complex_from_json(const nlohmann::json& j);
CMatrix matrix_from_json(const nlohmann::json& j, Eigen::Index d, const std::string& what);
ordered_json to_json(cplx z);
ordered_json to_json(const CMatrix& m);
ordered_json to_json(const CVector& v);
ordered_json to_json(const Witness& w);

GeneratorSpec generator_spec_from_json(const nlohmann::json& j);
ordered_json to_json(const GeneratorSpec& spec);

struct SpecFile {
    std::string bytes;   // file content as read
    std::string digest;  // SHA-256 hex of bytes
    std::variant<GeneratorSpec, TimeDependentSpec> spec;

    bool is_static() const { return std::holds_alternative<GeneratorSpec>(spec); }
};

// Throws InputError on unreadable files, malformed JSON, non-finite numbers or bad shapes.
SpecFile parse_spec(const std::string& bytes);
SpecFile load_spec_file(const std::string& path);

std::string sha256_hex(const std::string& bytes);

}  // namespace rateaudit
