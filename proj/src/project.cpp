#include "origami/project.hpp"

#include "origami/errors.hpp"

#include <fstream>
#include <sstream>

namespace origami {

namespace {

const char* const kSections[] = {"design", "pattern", "task", "fab", "routing"};

io::json merged(const io::json& base, const char* key, io::json fresh) {
    auto it = base.find(key);
    if (it == base.end() || !it->is_object() || !fresh.is_object()) return fresh;
    io::json out = *it;
    for (auto& [k, v] : fresh.items()) out[k] = v;
    return out;
}

}  // namespace

void check_references(const Project& p) {
    const std::size_t panels = p.pattern ? p.pattern->panels.size() : 0;
    if (p.fab) {
        for (std::size_t i = 0; i < p.fab->holes.size(); ++i)
            if (p.fab->holes[i].anchor.panel >= panels)
                throw ReferenceError("fab.holes[" + std::to_string(i) + "] references missing panel " +
                                     std::to_string(p.fab->holes[i].anchor.panel));
    }
    if (p.routing) {
        for (std::size_t s = 0; s < p.routing->plan.strings.size(); ++s)
            for (std::size_t k = 0; k < p.routing->plan.strings[s].waypoints.size(); ++k)
                if (p.routing->plan.strings[s].waypoints[k].hole.panel >= panels)
                    throw ReferenceError("routing.strings[" + std::to_string(s) + "].waypoints[" + std::to_string(k) +
                                         "] references a missing panel");
    }
}

std::string save_project(const Project& p) {
    io::json doc = p.preserved.is_object() ? p.preserved : io::json::object();
    doc["version"] = p.version;
    doc["provenance"] = p.provenance;
    auto put = [&](const char* key, bool present, auto make) {
        if (present) doc[key] = merged(p.preserved, key, make());
        else doc.erase(key);
    };
    put("design", p.design.has_value(), [&] { return io::to_json(*p.design); });
    put("pattern", p.pattern.has_value(), [&] { return io::to_json(*p.pattern); });
    put("task", p.task.has_value(), [&] { return io::to_json(*p.task); });
    put("fab", p.fab.has_value(), [&] {
        io::json holes = io::json::array();
        for (const auto& h : p.fab->holes) holes.push_back(io::to_json(h));
        return io::json{{"params", io::to_json(p.fab->params)}, {"holes", holes}};
    });
    put("routing", p.routing.has_value(), [&] {
        io::json r = io::to_json(p.routing->plan);
        r["tsa"] = io::to_json(p.routing->tsa);
        return r;
    });
    return doc.dump(2) + "\n";
}

Project load_project(std::string_view text) {
    io::json doc;
    try {
        doc = io::json::parse(text.begin(), text.end());
    } catch (const io::json::parse_error& e) {
        throw ParseError(std::string("malformed project document: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw SchemaError("", "project document must be an object");
    Project p;
    auto v = doc.find("version");
    if (v == doc.end() || !v->is_number_integer() || v->get<int>() < 1)
        throw SchemaError("/version", "expected a positive integer");
    p.version = v->get<int>();
    if (auto it = doc.find("provenance"); it != doc.end()) {
        if (!it->is_object()) throw SchemaError("/provenance", "expected an object");
        p.provenance = *it;
    }
    auto section = [&](const char* key) -> const io::json* {
        auto it = doc.find(key);
        return it == doc.end() || it->is_null() ? nullptr : &*it;
    };
    if (auto* s = section("design")) p.design = io::design_from(*s, "/design");
    if (auto* s = section("pattern")) p.pattern = io::pattern_from(*s, "/pattern");
    if (auto* s = section("task")) p.task = io::task_from(*s, "/task");
    if (auto* s = section("fab")) {
        FabricationSection f;
        auto params = s->find("params");
        if (!s->is_object() || params == s->end()) throw SchemaError("/fab/params", "missing field");
        f.params = io::fab_params_from(*params, "/fab/params");
        if (auto holes = s->find("holes"); holes != s->end()) {
            if (!holes->is_array()) throw SchemaError("/fab/holes", "expected an array");
            for (std::size_t i = 0; i < holes->size(); ++i)
                f.holes.push_back(io::hole_from((*holes)[i], "/fab/holes/" + std::to_string(i)));
        }
        p.fab = f;
    }
    if (auto* s = section("routing")) {
        RoutingSection r;
        if (!s->is_object() || !s->contains("tsa")) throw SchemaError("/routing/tsa", "missing field");
        r.tsa = io::tsa_from(s->at("tsa"), "/routing/tsa");
        r.plan = io::routing_from(*s, "/routing");
        p.routing = r;
    }
    p.preserved = doc;
    for (const char* key : kSections)
        if (doc.contains(key) && doc[key].is_null()) p.preserved.erase(key);
    check_references(p);
    return p;
}

void save_project_file(const Project& project, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << save_project(project);
    if (!f) throw IoError("failed writing " + path);
}

Project load_project_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return load_project(ss.str());
}

bool operator==(const Project& a, const Project& b) { return save_project(a) == save_project(b); }

}  // namespace origami
