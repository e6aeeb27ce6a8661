#include "chordisc/chordset_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace chordisc {

namespace {

using nlohmann::json;

std::string number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_number(const json& j, const char* what)
{
    if (!j.is_string()) {
        throw ChordSetFormatError(std::string("expected a decimal string for ") + what);
    }
    const std::string& s = j.get_ref<const std::string&>();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        throw ChordSetFormatError("malformed number '" + s + "' for " + what);
    }
    return v;
}

json point_json(Point p) { return json::array({number(p.x), number(p.y)}); }

Point parse_point(const json& j)
{
    if (!j.is_array() || j.size() != 2) {
        throw ChordSetFormatError("expected a coordinate pair");
    }
    return {parse_number(j[0], "x"), parse_number(j[1], "y")};
}

json body_json(const ConvexBody& body)
{
    if (body.is_disk()) {
        return {{"kind", "disk"},
                {"params", {{"center", point_json(body.center())}, {"radius", number(body.radius())}}}};
    }
    json vs = json::array();
    for (const Point& v : body.vertices()) {
        vs.push_back(point_json(v));
    }
    return {{"kind", "polygon"}, {"params", {{"vertices", vs}}}};
}

ConvexBody parse_body(const json& j)
{
    if (!j.is_object() || !j.contains("kind") || !j.contains("params")) {
        throw ChordSetFormatError("body needs kind and params");
    }
    const json& params = j.at("params");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "disk") {
            return make_disk(parse_point(params.at("center")), parse_number(params.at("radius"), "radius"));
        }
        if (kind == "polygon") {
            std::vector<Point> vs;
            for (const json& v : params.at("vertices")) {
                vs.push_back(parse_point(v));
            }
            return make_polygon(std::move(vs));
        }
    } catch (const InvalidBody& e) {
        throw ChordSetFormatError(std::string("invalid body: ") + e.what());
    }
    throw ChordSetFormatError("unknown body kind '" + kind + "'");
}

}  // namespace

std::string body_to_json(const ConvexBody& body) { return body_json(body).dump(); }

ConvexBody body_from_json(const std::string& text)
{
    try {
        return parse_body(json::parse(text));
    } catch (const json::exception& e) {
        throw ChordSetFormatError(std::string("malformed body: ") + e.what());
    }
}

std::string chordset_to_json(const ChordSet& set)
{
    json chords = json::array();
    for (const Chord& c : set.chords()) {
        chords.push_back(json::array({number(c.s.value()), number(c.t.value())}));
    }
    const json doc = {{"version", kChordSetFormatVersion}, {"body", body_json(set.body())}, {"chords", chords}};
    return doc.dump(1) + "\n";
}

ChordSet chordset_from_json(const std::string& text, const std::optional<ConvexBody>& expected_body)
{
    try {
        const json doc = json::parse(text);
        if (!doc.is_object() || !doc.contains("version")) {
            throw ChordSetFormatError("missing version field");
        }
        if (!doc.at("version").is_number_integer() || doc.at("version").get<int>() != kChordSetFormatVersion) {
            throw ChordSetFormatError("unsupported chord-set version " + doc.at("version").dump());
        }
        ConvexBody body = parse_body(doc.at("body"));
        if (expected_body && !(body == *expected_body)) {
            throw ChordSetFormatError("chord set body does not match the requested body");
        }
        std::vector<Chord> chords;
        std::size_t index = 0;
        for (const json& c : doc.at("chords")) {
            if (!c.is_array() || c.size() != 2) {
                throw ChordSetFormatError("chord " + std::to_string(index) + " is not an [s, t] pair");
            }
            const double s = parse_number(c[0], "s");
            const double t = parse_number(c[1], "t");
            if (!(s >= 0.0 && s < 1.0 && t >= 0.0 && t < 1.0)) {
                throw ChordSetFormatError("chord " + std::to_string(index) + " has a parameter outside [0,1)");
            }
            try {
                chords.push_back(chord_from_params(body, s, t));
            } catch (const DegenerateChord& e) {
                throw ChordSetFormatError("chord " + std::to_string(index) + ": " + e.what());
            }
            ++index;
        }
        try {
            return ChordSet(std::move(body), std::move(chords));
        } catch (const std::invalid_argument& e) {
            throw ChordSetFormatError(e.what());
        }
    } catch (const json::exception& e) {
        throw ChordSetFormatError(std::string("malformed chord set: ") + e.what());
    }
}

void save_chordset(const ChordSet& set, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << chordset_to_json(set);
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

ChordSet load_chordset(const std::filesystem::path& path, const std::optional<ConvexBody>& expected_body)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ChordSetFormatError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return chordset_from_json(buf.str(), expected_body);
}

}  // namespace chordisc
