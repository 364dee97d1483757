#include "mfkit/mfcore/io.hpp"

#include <fstream>

#include "mfkit/error.hpp"
#include "mfkit/exactalg/parse.hpp"

namespace mfkit {

nlohmann::json mf_to_json(const MatrixFactorization& m) {
    nlohmann::json j;
    j["f"] = m.potential().to_string();
    j["rank"] = m.rank();
    j["vars"] = m.ring()->names();
    auto mat = [](const PolyMatrix& a) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < a.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(a(i, k).to_string());
            rows.push_back(row);
        }
        return rows;
    };
    j["p"] = mat(m.p());
    j["q"] = mat(m.q());
    if (!m.has_default_grading()) j["grading"] = m.grading();
    return j;
}

MatrixFactorization mf_from_json(const nlohmann::json& j, Field field, bool check) {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::Io, "invalid factorization file: " + msg); };
    if (!j.is_object()) fail("top level must be an object");
    for (auto key : {"f", "rank", "p", "q"})
        if (!j.contains(key)) fail(std::string("missing key '") + key + "'");
    if (!j["f"].is_string()) fail("'f' must be a string");
    if (!j["rank"].is_number_integer() || j["rank"].get<long>() <= 0) fail("'rank' must be a positive integer");
    std::size_t r = j["rank"].get<std::size_t>();
    std::vector<std::string> srcs{j["f"].get<std::string>()};
    for (auto key : {"p", "q"}) {
        const auto& m = j[key];
        if (!m.is_array() || m.size() != r) fail(std::string("'") + key + "' must have rank rows");
        for (const auto& row : m) {
            if (!row.is_array() || row.size() != r) fail(std::string("'") + key + "' must be rank x rank");
            for (const auto& e : row) {
                if (!e.is_string()) fail("matrix entries must be strings");
                srcs.push_back(e.get<std::string>());
            }
        }
    }
    ParseOptions opts;
    opts.field = field;
    if (j.contains("vars")) {
        if (!j["vars"].is_array()) fail("'vars' must be an array of names");
        for (const auto& v : j["vars"]) {
            if (!v.is_string()) fail("'vars' must be an array of names");
            opts.vars.push_back(v.get<std::string>());
        }
        opts.allow_new_vars = false;
    }
    auto polys = parse_polys(srcs, opts);
    auto ring = polys[0].ring();
    PolyMatrix p(ring, r, r), q(ring, r, r);
    std::size_t k = 1;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < r; ++c) p(i, c) = polys[k++];
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t c = 0; c < r; ++c) q(i, c) = polys[k++];
    std::vector<int> grading;
    if (j.contains("grading")) {
        if (!j["grading"].is_array()) fail("'grading' must be an integer array");
        for (const auto& g : j["grading"]) {
            if (!g.is_number_integer()) fail("'grading' must be an integer array");
            grading.push_back(g.get<int>());
        }
    }
    if (check) return MatrixFactorization(polys[0], p, q, grading);
    return MatrixFactorization::unchecked(polys[0], p, q, grading);
}

MatrixFactorization read_mf_file(const std::string& path, Field field, bool check) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, "'" + path + "' is not valid JSON: " + e.what());
    }
    return mf_from_json(j, field, check);
}

void write_mf_file(const MatrixFactorization& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
    out << mf_to_json(m).dump(2) << "\n";
}

} // namespace mfkit
