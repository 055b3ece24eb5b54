#include "uncprop/cli/request.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "uncprop/error.hpp"

namespace uncprop::cli {

using Json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// Diagnostics helpers

std::string at(const std::string& origin, int line = 0) {
    return line > 0 ? origin + ":" + std::to_string(line) + ": " : origin + ": ";
}

[[noreturn]] void reject(const std::string& origin, int line, errc code, const std::string& message) {
    fail(code, at(origin, line) + message, line);
}

// ---------------------------------------------------------------------------
// Duplicate-key detection. nlohmann's DOM parser silently keeps the last
// occurrence, so duplicates are caught with a SAX pass first.

class DuplicateKeyCheck : public nlohmann::json_sax<Json> {
public:
    explicit DuplicateKeyCheck(const std::string& origin) : origin_(origin) {}

    bool null() override { return true; }
    bool boolean(bool) override { return true; }
    bool number_integer(number_integer_t) override { return true; }
    bool number_unsigned(number_unsigned_t) override { return true; }
    bool number_float(number_float_t, const string_t&) override { return true; }
    bool string(string_t&) override { return true; }
    bool binary(binary_t&) override { return true; }
    bool start_array(std::size_t) override { return true; }
    bool end_array() override { return true; }

    bool start_object(std::size_t) override {
        frames_.emplace_back();
        return true;
    }

    bool key(string_t& val) override {
        Frame& frame = frames_.back();
        if (!frame.keys.insert(val).second)
            reject(origin_, 0, errc::duplicate_input, "duplicate key '" + path_to(val) + "'");
        frame.current = val;
        return true;
    }

    bool end_object() override {
        frames_.pop_back();
        return true;
    }

    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override {
        reject(origin_, 0, errc::bad_request, ex.what());
    }

private:
    struct Frame {
        std::set<std::string> keys;
        std::string current;
    };

    std::string path_to(const std::string& leaf) const {
        std::string path;
        for (std::size_t i = 0; i + 1 < frames_.size(); ++i) {
            if (!frames_[i].current.empty()) {
                path += frames_[i].current;
                path += '.';
            }
        }
        return path + leaf;
    }

    std::string origin_;
    std::vector<Frame> frames_;
};

// ---------------------------------------------------------------------------
// Schema walking

class ObjectReader {
public:
    ObjectReader(const Json& node, std::string path, const std::string& origin)
        : node_(node), path_(std::move(path)), origin_(origin) {
        if (!node_.is_object())
            reject(origin_, 0, errc::bad_request, label() + " must be an object");
    }

    const Json& require(const char* key) {
        const Json* j = optional(key);
        if (!j) reject(origin_, 0, errc::bad_request, "missing required key '" + child_path(key) + "'");
        return *j;
    }

    const Json* optional(const char* key) {
        consumed_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    // Every key must have been consumed by now.
    void finish() const {
        for (const auto& [key, _] : node_.items())
            if (!consumed_.contains(key))
                reject(origin_, 0, errc::bad_request, "unknown key '" + child_path(key) + "'");
    }

    std::string child_path(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }

private:
    std::string label() const { return path_.empty() ? "input" : "'" + path_ + "'"; }

    const Json& node_;
    std::string path_;
    const std::string& origin_;
    std::set<std::string> consumed_;
};

double as_number(const Json& j, const std::string& path, const std::string& origin) {
    if (!j.is_number())
        reject(origin, 0, errc::bad_request, "'" + path + "' must be a number");
    double v = j.get<double>();
    if (!std::isfinite(v))
        reject(origin, 0, errc::non_finite, "'" + path + "' must be finite");
    return v;
}

std::string as_string(const Json& j, const std::string& path, const std::string& origin) {
    if (!j.is_string())
        reject(origin, 0, errc::bad_request, "'" + path + "' must be a string");
    return j.get<std::string>();
}

enum class UncRule {
    Required,        // value and unc both required
    PoissonDefault,  // missing unc defaults to sqrt(value)
    UnitValue,       // missing value defaults to 1; unc required
};

Measurement read_measurement(const Json& j, const std::string& path, const std::string& origin,
                             UncRule rule, std::vector<std::string>& flags) {
    ObjectReader r(j, path, origin);
    double value = 0.0;
    if (rule == UncRule::UnitValue) {
        const Json* v = r.optional("value");
        value = v ? as_number(*v, r.child_path("value"), origin) : 1.0;
    } else {
        value = as_number(r.require("value"), r.child_path("value"), origin);
    }

    double unc = 0.0;
    const Json* u = r.optional("unc");
    if (u) {
        unc = as_number(*u, r.child_path("unc"), origin);
    } else if (rule == UncRule::PoissonDefault) {
        if (!(value > 0.0))
            reject(origin, 0, errc::bad_request,
                   "'" + path + "': cannot default unc to sqrt(value) for a non-positive count");
        unc = std::sqrt(value);
        flags.push_back("poisson-default:" + path);
    } else {
        reject(origin, 0, errc::bad_request, "missing required key '" + r.child_path("unc") + "'");
    }
    r.finish();

    try {
        return Measurement(value, unc);
    } catch (const Error& e) {
        fail(e.code(), at(origin) + "'" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Typed request builders (shared by the JSON and text front ends)

ParsedInput build_propagate(const Json& root, const std::string& origin) {
    ParsedInput out;
    PropagateRequest req;
    ObjectReader r(root, "", origin);
    req.model_source = as_string(r.require("model"), "model", origin);

    const Json& inputs = r.require("inputs");
    if (!inputs.is_object())
        reject(origin, 0, errc::bad_request, "'inputs' must be an object of name -> {value, unc}");
    for (const auto& [name, j] : inputs.items())
        req.inputs.emplace(name, read_measurement(j, "inputs." + name, origin, UncRule::Required, out.flags));
    if (req.inputs.empty())
        reject(origin, 0, errc::bad_request, "'inputs' must not be empty");
    r.finish();
    out.request = std::move(req);
    return out;
}

ParsedInput build_quantify(const Json& root, const std::string& origin) {
    ParsedInput out;
    QuantifyRequest req;
    ObjectReader r(root, "", origin);

    ObjectReader standard(r.require("standard"), "standard", origin);
    req.sample.standard_name = as_string(standard.require("name"), "standard.name", origin);
    req.sample.standard_concentration = read_measurement(
        standard.require("concentration"), "standard.concentration", origin, UncRule::Required, out.flags);
    req.sample.standard_intensity = read_measurement(
        standard.require("intensity"), "standard.intensity", origin, UncRule::PoissonDefault, out.flags);
    standard.finish();

    ObjectReader analyte(r.require("analyte"), "analyte", origin);
    req.sample.analyte_name = as_string(analyte.require("name"), "analyte.name", origin);
    req.sample.analyte_intensity = read_measurement(
        analyte.require("intensity"), "analyte.intensity", origin, UncRule::PoissonDefault, out.flags);
    analyte.finish();

    ObjectReader sens(r.require("sensitivities"), "sensitivities", origin);
    req.analyte_sensitivity = read_measurement(sens.require("analyte"), "sensitivities.analyte", origin,
                                               UncRule::Required, out.flags);
    req.standard_sensitivity = read_measurement(sens.require("standard"), "sensitivities.standard", origin,
                                                UncRule::Required, out.flags);
    sens.finish();

    r.finish();
    out.request = std::move(req);
    return out;
}

ParsedInput build_calibrate(const Json& root, const std::string& origin) {
    ParsedInput out;
    CalibrateRequest req;
    ObjectReader r(root, "", origin);

    ObjectReader ref(r.require("ref"), "ref", origin);
    req.inputs.ref_sensitivity =
        read_measurement(ref.require("sensitivity"), "ref.sensitivity", origin, UncRule::UnitValue, out.flags);
    req.inputs.ref_intensity =
        read_measurement(ref.require("intensity"), "ref.intensity", origin, UncRule::PoissonDefault, out.flags);
    req.inputs.ref_concentration = read_measurement(ref.require("concentration"), "ref.concentration", origin,
                                                    UncRule::Required, out.flags);
    ref.finish();

    ObjectReader element(r.require("element"), "element", origin);
    req.inputs.element_intensity = read_measurement(element.require("intensity"), "element.intensity", origin,
                                                    UncRule::PoissonDefault, out.flags);
    req.inputs.element_concentration = read_measurement(
        element.require("concentration"), "element.concentration", origin, UncRule::Required, out.flags);
    element.finish();

    r.finish();
    out.request = std::move(req);
    return out;
}

ParsedInput build_replicates(const Json& root, const std::string& origin) {
    ParsedInput out;
    ReplicatesRequest req;
    ObjectReader r(root, "", origin);

    const Json& values = r.require("values");
    if (!values.is_array())
        reject(origin, 0, errc::bad_request, "'values' must be an array of numbers");
    std::size_t i = 0;
    for (const auto& v : values.items()) {
        req.values.push_back(as_number(v.value(), "values[" + std::to_string(i) + "]", origin));
        ++i;
    }

    if (const Json* ref = r.optional("reference"))
        req.reference = as_number(*ref, "reference", origin);

    r.finish();
    out.request = std::move(req);
    return out;
}

ParsedInput build_request(InputKind kind, const Json& root, const std::string& origin) {
    switch (kind) {
        case InputKind::Propagate: return build_propagate(root, origin);
        case InputKind::Quantify: return build_quantify(root, origin);
        case InputKind::Calibrate: return build_calibrate(root, origin);
        case InputKind::Replicates: return build_replicates(root, origin);
    }
    fail(errc::bad_request, "unknown input kind");
}

// ---------------------------------------------------------------------------
// Line-oriented text front end: `dotted.path = value` mirroring the JSON
// schema. Measurements are written `value` or `value +- unc`.

enum class LeafType { String, Number, Measurement, NumberList };

struct LeafSpec {
    const char* path;  // trailing ".*" matches one extra segment
    LeafType type;
};

std::vector<LeafSpec> leaf_table(InputKind kind) {
    switch (kind) {
        case InputKind::Propagate:
            return {{"model", LeafType::String}, {"inputs.*", LeafType::Measurement}};
        case InputKind::Quantify:
            return {{"standard.name", LeafType::String},
                    {"standard.concentration", LeafType::Measurement},
                    {"standard.intensity", LeafType::Measurement},
                    {"analyte.name", LeafType::String},
                    {"analyte.intensity", LeafType::Measurement},
                    {"sensitivities.analyte", LeafType::Measurement},
                    {"sensitivities.standard", LeafType::Measurement}};
        case InputKind::Calibrate:
            return {{"ref.sensitivity", LeafType::Measurement},
                    {"ref.intensity", LeafType::Measurement},
                    {"ref.concentration", LeafType::Measurement},
                    {"element.intensity", LeafType::Measurement},
                    {"element.concentration", LeafType::Measurement}};
        case InputKind::Replicates:
            return {{"values", LeafType::NumberList}, {"reference", LeafType::Number}};
    }
    return {};
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

const LeafSpec* match_leaf(const std::vector<LeafSpec>& table, const std::string& key) {
    for (const auto& spec : table) {
        std::string_view pattern = spec.path;
        if (pattern.ends_with(".*")) {
            std::string_view prefix = pattern.substr(0, pattern.size() - 1);  // keep the dot
            if (key.size() > prefix.size() && key.compare(0, prefix.size(), prefix) == 0 &&
                key.find('.', prefix.size()) == std::string::npos)
                return &spec;
        } else if (key == pattern) {
            return &spec;
        }
    }
    return nullptr;
}

double parse_number_strict(const std::string& text, const std::string& origin, int line) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v))
        reject(origin, line, errc::bad_request, "malformed number '" + text + "'");
    return v;
}

Json parse_leaf_value(LeafType type, const std::string& text, const std::string& origin, int line) {
    switch (type) {
        case LeafType::String:
            if (text.empty()) reject(origin, line, errc::bad_request, "value must not be empty");
            return Json(text);
        case LeafType::Number:
            return Json(parse_number_strict(text, origin, line));
        case LeafType::NumberList: {
            Json arr = Json::array();
            std::istringstream iss(text);
            std::string item;
            while (iss >> item) arr.push_back(parse_number_strict(item, origin, line));
            return arr;
        }
        case LeafType::Measurement: {
            Json m = Json::object();
            std::size_t sep = text.find("+-");
            if (sep == std::string::npos) {
                m["value"] = parse_number_strict(trim(text), origin, line);
            } else {
                m["value"] = parse_number_strict(trim(text.substr(0, sep)), origin, line);
                m["unc"] = parse_number_strict(trim(text.substr(sep + 2)), origin, line);
            }
            return m;
        }
    }
    reject(origin, line, errc::bad_request, "unsupported value type");
}

void insert_path(Json& root, const std::string& key, Json value, const std::string& origin, int line) {
    Json* node = &root;
    std::size_t begin = 0;
    while (true) {
        std::size_t dot = key.find('.', begin);
        std::string segment = key.substr(begin, dot == std::string::npos ? dot : dot - begin);
        if (segment.empty()) reject(origin, line, errc::bad_request, "malformed key '" + key + "'");
        if (dot == std::string::npos) {
            (*node)[segment] = std::move(value);
            return;
        }
        node = &(*node)[segment];
        begin = dot + 1;
    }
}

Json text_to_json(InputKind kind, std::string_view content, const std::string& origin) {
    const std::vector<LeafSpec> table = leaf_table(kind);
    Json root = Json::object();
    std::set<std::string> seen;

    std::istringstream stream{std::string(content)};
    std::string raw;
    int line = 0;
    while (std::getline(stream, raw)) {
        ++line;
        if (std::size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::string stripped = trim(raw);
        if (stripped.empty()) continue;

        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            reject(origin, line, errc::bad_request, "expected 'key = value', got '" + stripped + "'");
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) reject(origin, line, errc::bad_request, "empty key");

        const LeafSpec* spec = match_leaf(table, key);
        if (!spec) reject(origin, line, errc::bad_request, "unknown key '" + key + "'");
        if (!seen.insert(key).second)
            reject(origin, line, errc::duplicate_input, "duplicate key '" + key + "'");

        insert_path(root, key, parse_leaf_value(spec->type, value, origin, line), origin, line);
    }
    return root;
}

}  // namespace

ParsedInput parse_input(InputKind kind, std::string_view content, const std::string& origin) {
    std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        fail(errc::bad_request, at(origin) + "input is empty");

    Json root;
    if (content[first] == '{') {
        // SAX pass first: positions syntax errors and catches duplicate keys,
        // which the DOM parser would silently collapse.
        DuplicateKeyCheck checker(origin);
        Json::sax_parse(content, &checker);
        root = Json::parse(content);
    } else {
        root = text_to_json(kind, content, origin);
    }
    return build_request(kind, root, origin);
}

ParsedInput parse_input_file(InputKind kind, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::bad_request, path + ": cannot open input file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_input(kind, buffer.str(), path);
}

}  // namespace uncprop::cli
