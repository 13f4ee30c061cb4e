#pragma once

// File formats and canonical serialization. JSON output is canonical:
// keys sorted, floats formatted with %.12g, no NaN/Inf, so identical
// runs produce byte-identical files. Files are written atomically
// (temp + rename).

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "eptopo/cover.hpp"
#include "eptopo/geometry.hpp"
#include "eptopo/loop.hpp"
#include "eptopo/model.hpp"

namespace eptopo {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string format_double(double v)
{
    if (!std::isfinite(v))
        throw std::invalid_argument("non-finite value in JSON output");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace detail {

inline void emit_canonical(const json& j, std::string& out)
{
    switch (j.type()) {
        case json::value_t::null: out += "null"; break;
        case json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
        case json::value_t::number_integer:
            out += std::to_string(j.get<long long>());
            break;
        case json::value_t::number_unsigned:
            out += std::to_string(j.get<unsigned long long>());
            break;
        case json::value_t::number_float: out += format_double(j.get<double>()); break;
        case json::value_t::string: out += json(j.get<std::string>()).dump(); break;
        case json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first)
                    out += ',';
                first = false;
                emit_canonical(v, out);
            }
            out += ']';
            break;
        }
        case json::value_t::object: {
            // nlohmann's default object is a std::map: already key-sorted.
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first)
                    out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                emit_canonical(it.value(), out);
            }
            out += '}';
            break;
        }
        default:
            throw std::invalid_argument("unsupported JSON value type");
    }
}

}  // namespace detail

inline std::string canonical_json(const json& j)
{
    std::string out;
    detail::emit_canonical(j, out);
    out += '\n';
    return out;
}

inline void write_file_atomic(const std::filesystem::path& path, std::string_view content)
{
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!os)
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline json load_json_file(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open " + path.string());
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

namespace detail {

inline std::complex<double> complex_from_json(const json& j, const char* what)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string(what) + " must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline ParamPoint point_from_json(const json& j, const char* what)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string(what) + " must be an [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace detail

// {"model": "nh_dirac", "b_x": 1.0}
// {"model": "square_root", "z1": [0,-1], "z2": [0,1]}
inline TwoBandModel model_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("model") || !j["model"].is_string())
        throw ConfigError("model spec needs a \"model\" name");
    const std::string name = j["model"].get<std::string>();
    if (name == "nh_dirac") {
        if (!j.contains("b_x") || !j["b_x"].is_number())
            throw ConfigError("nh_dirac model needs numeric \"b_x\"");
        return TwoBandModel::nh_dirac(j["b_x"].get<double>());
    }
    if (name == "square_root") {
        if (!j.contains("z1") || !j.contains("z2"))
            throw ConfigError("square_root model needs \"z1\" and \"z2\"");
        return TwoBandModel::square_root(detail::complex_from_json(j["z1"], "z1"),
                                         detail::complex_from_json(j["z2"], "z2"));
    }
    throw ConfigError("unknown model \"" + name + "\"");
}

// {"kind":"circle","center":[0,0],"radius":3,"orientation":"cw","samples":4096}
// {"kind":"polyline","points":[[x,y],...]}
// {"kind":"arcs","segments":[...],"samples":4096}
inline Loop loop_from_json(const json& j, int default_samples = 4096)
{
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("loop spec needs a \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    const int samples = j.contains("samples") ? j["samples"].get<int>() : default_samples;

    if (kind == "circle") {
        if (!j.contains("center") || !j.contains("radius"))
            throw ConfigError("circle loop needs \"center\" and \"radius\"");
        const std::string orient =
            j.contains("orientation") ? j["orientation"].get<std::string>() : "cw";
        if (orient != "cw" && orient != "ccw")
            throw ConfigError("orientation must be \"cw\" or \"ccw\"");
        return circle_loop(detail::point_from_json(j["center"], "center"),
                           j["radius"].get<double>(), orient == "cw", samples);
    }
    if (kind == "polyline") {
        if (!j.contains("points") || !j["points"].is_array())
            throw ConfigError("polyline loop needs a \"points\" array");
        std::vector<ParamPoint> pts;
        for (const auto& pj : j["points"])
            pts.push_back(detail::point_from_json(pj, "point"));
        return polyline_loop(std::move(pts));
    }
    if (kind == "arcs") {
        if (!j.contains("segments") || !j["segments"].is_array())
            throw ConfigError("arcs loop needs a \"segments\" array");
        std::vector<ArcSegment> segs;
        for (const auto& sj : j["segments"]) {
            if (!sj.is_object() || !sj.contains("type"))
                throw ConfigError("arc segment needs a \"type\"");
            const std::string type = sj["type"].get<std::string>();
            ArcSegment seg;
            if (type == "arc") {
                seg.is_arc = true;
                seg.center = detail::point_from_json(sj.at("center"), "arc center");
                seg.radius = sj.at("radius").get<double>();
                seg.from_angle = sj.at("from_angle").get<double>();
                seg.to_angle = sj.at("to_angle").get<double>();
            } else if (type == "segment") {
                seg.is_arc = false;
                seg.from = detail::point_from_json(sj.at("from"), "segment from");
                seg.to = detail::point_from_json(sj.at("to"), "segment to");
            } else {
                throw ConfigError("arc segment type must be \"arc\" or \"segment\"");
            }
            segs.push_back(seg);
        }
        try {
            return arcs_loop(segs, samples);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    throw ConfigError("unknown loop kind \"" + kind + "\"");
}

// {"sheets": n, "branch_points": [{"pos":[re,im],"cut_dir":[ux,uy],"perm":[...]}]}
inline CoveringSpec cover_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("sheets") || !j.contains("branch_points"))
        throw ConfigError("cover spec needs \"sheets\" and \"branch_points\"");
    CoveringSpec cover;
    cover.sheets = j["sheets"].get<int>();
    for (const auto& bj : j["branch_points"]) {
        BranchPoint bp;
        bp.position = detail::complex_from_json(bj.at("pos"), "branch point pos");
        const ParamPoint d = detail::point_from_json(bj.at("cut_dir"), "cut_dir");
        bp.cut_direction = {d.x, d.y};
        if (!bj.contains("perm") || !bj["perm"].is_array())
            throw ConfigError("branch point needs a \"perm\" image array");
        for (const auto& v : bj["perm"])
            bp.deck.push_back(v.get<int>());
        cover.branch_points.push_back(std::move(bp));
    }
    try {
        validate_cover(cover);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cover;
}

}  // namespace eptopo
