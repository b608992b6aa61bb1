#include "lix/json_io.hpp"

#include <fstream>

#include "lix/error.hpp"

namespace lix {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::SchemaError, where + ": " + what);
}

int require_int(const Json& j, const char* field, const std::string& where) {
    if (!j.contains(field) || !j[field].is_number_integer())
        schema_error(where, std::string("missing integer field '") + field + "'");
    return j[field].get<int>();
}

std::string require_string(const Json& j, const char* field, const std::string& where) {
    if (!j.contains(field) || !j[field].is_string())
        schema_error(where, std::string("missing string field '") + field + "'");
    return j[field].get<std::string>();
}

}  // namespace

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::SchemaError, "cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, path + ": " + e.what());
    }
}

Json space_to_json(const GradedSpace& s) {
    Json basis = Json::array();
    for (const auto& b : s.basis())
        basis.push_back({{"id", b.id}, {"degree", b.degree}, {"weight", b.weight}});
    return Json{{"basis", basis}};
}

SpacePtr space_from_json(const Json& j, int max_dim) {
    if (!j.contains("basis") || !j["basis"].is_array())
        schema_error("space", "missing array field 'basis'");
    std::vector<BasisVector> basis;
    int pos = 0;
    for (const auto& bj : j["basis"]) {
        std::string where = "basis[" + std::to_string(pos++) + "]";
        BasisVector b;
        b.id = require_string(bj, "id", where);
        b.degree = require_int(bj, "degree", where);
        b.weight = require_int(bj, "weight", where);
        basis.push_back(std::move(b));
    }
    if (static_cast<int>(basis.size()) > max_dim)
        schema_error("space", "basis exceeds the LIX_MAX_DIM cap of " + std::to_string(max_dim));
    try {
        return build_space(std::move(basis));
    } catch (const Error& e) {
        throw Error(ErrorCode::SchemaError, e.what());
    }
}

Json element_to_json(const Element& x) {
    Json out = Json::object();
    for (const auto& [i, c] : x.coeffs()) out[x.space()->at(i).id] = c.str();
    return out;
}

Element element_from_json(const Json& j, const SpacePtr& space) {
    if (!j.is_object()) schema_error("element", "expected an object of id -> rational");
    Element e(space);
    for (const auto& [id, vj] : j.items()) {
        int idx = space->index_of(id);
        if (idx < 0) schema_error("element", "unknown basis id '" + id + "'");
        if (!vj.is_string()) schema_error("element", "coefficient of '" + id + "' not a string");
        e.add_coeff(idx, Rational::from_string(vj.get<std::string>()));
    }
    return e;
}

Json algebra_to_json(const CurvedAlgebra& alg) {
    Json brackets = Json::array();
    for (int n : alg.brackets.arities_present()) {
        for (const auto& [tuple, value] : alg.brackets.entries(n)) {
            Json args = Json::array();
            for (int i : tuple) args.push_back(alg.space->at(i).id);
            brackets.push_back(
                {{"arity", n}, {"args", args}, {"value", element_to_json(value)}});
        }
    }
    return Json{{"space", space_to_json(*alg.space)}, {"brackets", brackets}};
}

CurvedAlgebra algebra_from_json(const Json& j, int max_dim) {
    if (!j.contains("space")) schema_error("algebra", "missing field 'space'");
    SpacePtr space = space_from_json(j["space"], max_dim);
    int max_arity = 0;
    if (j.contains("brackets")) {
        if (!j["brackets"].is_array()) schema_error("algebra", "'brackets' must be an array");
        for (const auto& bj : j["brackets"])
            max_arity = std::max(max_arity, require_int(bj, "arity", "bracket"));
    }
    if (j.contains("maxArity")) max_arity = std::max(max_arity, j["maxArity"].get<int>());

    BracketSet brackets(max_arity);
    CurvedAlgebra alg{space, std::move(brackets)};
    if (j.contains("brackets")) {
        int pos = 0;
        for (const auto& bj : j["brackets"]) {
            std::string where = "brackets[" + std::to_string(pos++) + "]";
            int arity = require_int(bj, "arity", where);
            if (!bj.contains("args") || !bj["args"].is_array())
                schema_error(where, "missing array field 'args'");
            if (static_cast<int>(bj["args"].size()) != arity)
                schema_error(where, "args length differs from arity");
            std::vector<int> args;
            for (const auto& aj : bj["args"]) {
                if (!aj.is_string()) schema_error(where, "args entries must be basis ids");
                int idx = space->index_of(aj.get<std::string>());
                if (idx < 0)
                    schema_error(where, "unknown basis id '" + aj.get<std::string>() + "'");
                args.push_back(idx);
            }
            if (!bj.contains("value")) schema_error(where, "missing field 'value'");
            Element value = element_from_json(bj["value"], space);
            try {
                alg.brackets.set_entry(space, std::move(args), std::move(value));
            } catch (const Error& e) {
                throw Error(ErrorCode::SchemaError, where + ": " + e.what());
            }
        }
    }
    return alg;
}

Json ainfty_to_json(const AInftyAlgebra& a) {
    Json ops = Json::array();
    for (const auto& [n, table] : a.ops) {
        for (const auto& [word, value] : table) {
            Json args = Json::array();
            for (int i : word) args.push_back(a.space->at(i).id);
            ops.push_back({{"arity", n}, {"args", args}, {"value", element_to_json(value)}});
        }
    }
    return Json{{"space", space_to_json(*a.space)}, {"ops", ops}, {"weightCap", a.weight_cap}};
}

AInftyAlgebra ainfty_from_json(const Json& j, int max_dim) {
    if (!j.contains("space")) schema_error("ainfty", "missing field 'space'");
    SpacePtr space = space_from_json(j["space"], max_dim);
    int weight_cap = require_int(j, "weightCap", "ainfty");
    std::map<int, std::map<Word, Element>> ops;
    if (j.contains("ops")) {
        if (!j["ops"].is_array()) schema_error("ainfty", "'ops' must be an array");
        int pos = 0;
        for (const auto& oj : j["ops"]) {
            std::string where = "ops[" + std::to_string(pos++) + "]";
            int arity = require_int(oj, "arity", where);
            if (!oj.contains("args") || !oj["args"].is_array() ||
                static_cast<int>(oj["args"].size()) != arity)
                schema_error(where, "args must list one basis id per slot");
            Word word;
            for (const auto& aj : oj["args"]) {
                int idx = space->index_of(aj.get<std::string>());
                if (idx < 0)
                    schema_error(where, "unknown basis id '" + aj.get<std::string>() + "'");
                word.push_back(idx);
            }
            if (!oj.contains("value")) schema_error(where, "missing field 'value'");
            Element value = element_from_json(oj["value"], space);
            if (value.is_zero()) continue;
            if (!ops[arity].emplace(std::move(word), std::move(value)).second)
                schema_error(where, "duplicate word");
        }
    }
    try {
        return build_ainfty(space, std::move(ops), weight_cap);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::StasheffViolation) throw;
        throw Error(ErrorCode::SchemaError, e.what());
    }
}

Json certificate_to_json(const MCCertificate& c) {
    Json steps = Json::array();
    for (const auto& s : c.steps) {
        Json sj{{"k", s.k},
                {"twist", element_to_json(s.twist_element)},
                {"before", s.curvature_before}};
        if (s.curvature_after == kWeightInfinity)
            sj["after"] = "inf";
        else
            sj["after"] = s.curvature_after;
        steps.push_back(std::move(sj));
    }
    return Json{{"alpha", element_to_json(c.alpha)}, {"r", c.r_used}, {"steps", steps}};
}

MCCertificate certificate_from_json(const Json& j, const SpacePtr& space) {
    MCCertificate c;
    if (!j.contains("alpha")) schema_error("certificate", "missing field 'alpha'");
    c.alpha = element_from_json(j["alpha"], space);
    c.r_used = require_int(j, "r", "certificate");
    if (j.contains("steps")) {
        for (const auto& sj : j["steps"]) {
            TwistStep s;
            s.k = require_int(sj, "k", "step");
            if (!sj.contains("twist")) schema_error("step", "missing field 'twist'");
            s.twist_element = element_from_json(sj["twist"], space);
            s.curvature_before = require_int(sj, "before", "step");
            if (sj.contains("after") && sj["after"].is_string()) {
                if (sj["after"].get<std::string>() != "inf")
                    schema_error("step", "'after' must be an integer or \"inf\"");
                s.curvature_after = kWeightInfinity;
            } else {
                s.curvature_after = require_int(sj, "after", "step");
            }
            c.steps.push_back(std::move(s));
        }
    }
    return c;
}

bool json_is_ainfty(const Json& j) { return j.contains("ops") || j.contains("weightCap"); }

Json shift_input_degrees(Json j) {
    if (j.contains("space") && j["space"].contains("basis"))
        for (auto& bj : j["space"]["basis"])
            if (bj.contains("degree") && bj["degree"].is_number_integer())
                bj["degree"] = bj["degree"].get<int>() - 1;
    return j;
}

}  // namespace lix
