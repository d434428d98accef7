#include "confmodels/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace confmodels {

namespace {

using nlohmann::json;

const json& field(const json& obj, const std::string& path, const char* key)
{
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(path + "." + key, "missing field");
    return *it;
}

std::string as_string(const json& v, const std::string& path)
{
    if (!v.is_string())
        throw ParseError(path, "expected a string");
    return v.get<std::string>();
}

int as_int(const json& v, const std::string& path)
{
    if (!v.is_number_integer())
        throw ParseError(path, "expected an integer");
    return v.get<int>();
}

Scalar as_scalar(const json& v, const std::string& path)
{
    if (v.is_number_integer())
        return Scalar(v.get<long>());
    if (!v.is_string())
        throw ParseError(path, "expected a rational string \"p/q\"");
    try {
        return parse_scalar(v.get<std::string>());
    }
    catch (const std::invalid_argument& e) {
        throw ParseError(path, e.what());
    }
}

}  // namespace

RawAlgebra parse_algebra_json(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw ParseError("$", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ParseError("$", "expected an object");
    RawAlgebra raw;
    raw.name = as_string(field(doc, "$", "name"), "$.name");
    raw.formal_dimension = as_int(field(doc, "$", "formal_dimension"), "$.formal_dimension");
    const json& basis = field(doc, "$", "basis");
    if (!basis.is_array())
        throw ParseError("$.basis", "expected an array");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        std::string p = "$.basis[" + std::to_string(i) + "]";
        if (!basis[i].is_object())
            throw ParseError(p, "expected an object {label, degree}");
        raw.basis.push_back({as_string(field(basis[i], p, "label"), p + ".label"), as_int(field(basis[i], p, "degree"), p + ".degree")});
    }
    raw.orientation = as_string(field(doc, "$", "orientation"), "$.orientation");
    auto prods = doc.find("products");
    if (prods != doc.end()) {
        if (!prods->is_array())
            throw ParseError("$.products", "expected an array");
        for (std::size_t i = 0; i < prods->size(); ++i) {
            const json& pr = (*prods)[i];
            std::string p = "$.products[" + std::to_string(i) + "]";
            if (!pr.is_object())
                throw ParseError(p, "expected an object {left, right, value}");
            RawProduct rp;
            rp.left = as_string(field(pr, p, "left"), p + ".left");
            rp.right = as_string(field(pr, p, "right"), p + ".right");
            const json& val = field(pr, p, "value");
            if (!val.is_array())
                throw ParseError(p + ".value", "expected an array of [label, rational]");
            for (std::size_t k = 0; k < val.size(); ++k) {
                std::string vp = p + ".value[" + std::to_string(k) + "]";
                if (!val[k].is_array() || val[k].size() != 2)
                    throw ParseError(vp, "expected [label, rational]");
                rp.value.emplace_back(as_string(val[k][0], vp + "[0]"), as_scalar(val[k][1], vp + "[1]"));
            }
            raw.products.push_back(std::move(rp));
        }
    }
    return raw;
}

RawAlgebra read_algebra_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("$", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_algebra_json(ss.str());
}

std::string algebra_json(const RawAlgebra& raw)
{
    json j;
    j["name"] = raw.name;
    j["formal_dimension"] = raw.formal_dimension;
    j["orientation"] = raw.orientation;
    j["basis"] = json::array();
    for (const auto& b : raw.basis)
        j["basis"].push_back({{"label", b.label}, {"degree", b.degree}});
    j["products"] = json::array();
    for (const auto& p : raw.products) {
        json val = json::array();
        for (const auto& [label, c] : p.value)
            val.push_back({label, format_scalar(c)});
        j["products"].push_back({{"left", p.left}, {"right", p.right}, {"value", val}});
    }
    return j.dump();
}

std::string canonical_algebra_json(const PDAlgebra& h) { return algebra_json(to_raw(h)); }

}  // namespace confmodels
