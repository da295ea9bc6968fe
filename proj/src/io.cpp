#include "multicover/io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace multicover {

namespace {

using ordered_json = nlohmann::ordered_json;

void reject_unknown(const ordered_json& obj, std::initializer_list<const char*> allowed, const char* where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known) throw InputError(std::string("unknown field \"") + key + "\" in " + where);
    }
}

const ordered_json& field(const ordered_json& obj, const char* name, const char* where) {
    auto it = obj.find(name);
    if (it == obj.end()) throw InputError(std::string("missing field \"") + name + "\" in " + where);
    return *it;
}

long long int_field(const ordered_json& obj, const char* name, const char* where) {
    const auto& v = field(obj, name, where);
    if (!v.is_number_integer()) throw InputError(std::string("field \"") + name + "\" in " + where + " must be an integer");
    return v.get<long long>();
}

double num_field(const ordered_json& obj, const char* name, const char* where) {
    const auto& v = field(obj, name, where);
    if (!v.is_number()) throw InputError(std::string("field \"") + name + "\" in " + where + " must be a number");
    return v.get<double>();
}

std::uint64_t u64_field(const ordered_json& obj, const char* name, const char* where) {
    const auto& v = field(obj, name, where);
    if (!v.is_number_integer() && !v.is_number_unsigned())
        throw InputError(std::string("field \"") + name + "\" in " + where + " must be an integer");
    return v.get<std::uint64_t>();
}

std::string str_field(const ordered_json& obj, const char* name, const char* where) {
    const auto& v = field(obj, name, where);
    if (!v.is_string()) throw InputError(std::string("field \"") + name + "\" in " + where + " must be a string");
    return v.get<std::string>();
}

ordered_json parse(const std::string& text, const char* what) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("malformed ") + what + ": " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!out) throw InputError("failed writing " + path);
}

ordered_json ids_json(const std::vector<RangeId>& ids) {
    ordered_json a = ordered_json::array();
    for (RangeId id : ids) a.push_back(id);
    return a;
}

std::vector<RangeId> ids_from(const ordered_json& a, const char* where) {
    if (!a.is_array()) throw InputError(std::string(where) + " must be an array");
    std::vector<RangeId> out;
    for (const auto& v : a) {
        if (!v.is_number_integer()) throw InputError(std::string(where) + " must hold integers");
        out.push_back(v.get<RangeId>());
    }
    return out;
}

ordered_json trace_json(const RoundingTrace& t) {
    ordered_json obj;
    obj["heavy"] = ids_json(t.heavy);
    obj["sample"] = ids_json(t.sample);
    obj["completion"] = ids_json(t.completion);
    obj["residual_before"] = t.residual_before;
    obj["residual_after"] = t.residual_after;
    obj["seed"] = t.seed;
    obj["trial"] = t.trial;
    return obj;
}

RoundingTrace trace_from(const ordered_json& obj) {
    reject_unknown(obj, {"heavy", "sample", "completion", "residual_before", "residual_after", "seed", "trial"},
                   "trace");
    RoundingTrace t;
    t.heavy = ids_from(field(obj, "heavy", "trace"), "trace.heavy");
    t.sample = ids_from(field(obj, "sample", "trace"), "trace.sample");
    t.completion = ids_from(field(obj, "completion", "trace"), "trace.completion");
    t.residual_before = int_field(obj, "residual_before", "trace");
    t.residual_after = int_field(obj, "residual_after", "trace");
    t.seed = u64_field(obj, "seed", "trace");
    t.trial = static_cast<int>(int_field(obj, "trial", "trace"));
    return t;
}

ordered_json report_json(const PipelineReport& r) {
    ordered_json obj;
    obj["f"] = r.f;
    obj["f_prime"] = r.f_prime;
    obj["c"] = r.c;
    obj["beta"] = r.beta;
    obj["heavy_size"] = r.heavy_size;
    obj["sample_size"] = r.sample_size;
    obj["completion_size"] = r.completion_size;
    obj["total_size"] = r.total_size;
    obj["residual_before_sample"] = r.residual_before_sample;
    obj["residual_after_sample"] = r.residual_after_sample;
    obj["cells"] = r.cells;
    obj["seed"] = r.seed;
    return obj;
}

PipelineReport report_from(const ordered_json& obj, const RoundingTrace& trace) {
    reject_unknown(obj,
                   {"f", "f_prime", "c", "beta", "heavy_size", "sample_size", "completion_size", "total_size",
                    "residual_before_sample", "residual_after_sample", "cells", "seed"},
                   "report");
    PipelineReport r;
    r.f = num_field(obj, "f", "report");
    r.f_prime = num_field(obj, "f_prime", "report");
    r.c = num_field(obj, "c", "report");
    r.beta = num_field(obj, "beta", "report");
    r.heavy_size = static_cast<std::size_t>(int_field(obj, "heavy_size", "report"));
    r.sample_size = static_cast<std::size_t>(int_field(obj, "sample_size", "report"));
    r.completion_size = static_cast<std::size_t>(int_field(obj, "completion_size", "report"));
    r.total_size = static_cast<std::size_t>(int_field(obj, "total_size", "report"));
    r.residual_before_sample = int_field(obj, "residual_before_sample", "report");
    r.residual_after_sample = int_field(obj, "residual_after_sample", "report");
    r.cells = static_cast<std::size_t>(int_field(obj, "cells", "report"));
    r.seed = u64_field(obj, "seed", "report");
    r.trace = trace;
    return r;
}

}  // namespace

std::string instance_to_text(const MultiCoverInstance& inst) {
    ordered_json root;
    root["points"] = ordered_json::array();
    for (const auto& p : inst.points()) {
        ordered_json jp;
        jp["id"] = p.id;
        jp["demand"] = p.demand;
        if (p.pos) {
            jp["x"] = p.pos->x;
            jp["y"] = p.pos->y;
        }
        root["points"].push_back(std::move(jp));
    }
    root["ranges"] = ordered_json::array();
    for (const auto& r : inst.ranges()) {
        ordered_json jr;
        jr["id"] = r.id;
        if (r.halfplane) {
            jr["halfplane"] = ordered_json{{"a", r.halfplane->a}, {"b", r.halfplane->b}, {"c", r.halfplane->c}};
        } else {
            jr["members"] = ids_json(r.members);
        }
        root["ranges"].push_back(std::move(jr));
    }
    root["repetition_allowed"] = inst.repetition_allowed();
    return root.dump(2) + "\n";
}

MultiCoverInstance instance_from_text(const std::string& text) {
    ordered_json root = parse(text, "instance");
    if (!root.is_object()) throw InputError("instance must be an object");
    reject_unknown(root, {"points", "ranges", "repetition_allowed"}, "instance");

    std::vector<PointRecord> points;
    const auto& jpoints = field(root, "points", "instance");
    if (!jpoints.is_array()) throw InputError("\"points\" must be an array");
    for (const auto& jp : jpoints) {
        if (!jp.is_object()) throw InputError("each point must be an object");
        reject_unknown(jp, {"id", "demand", "x", "y"}, "point");
        PointRecord p;
        p.id = static_cast<PointId>(int_field(jp, "id", "point"));
        p.demand = static_cast<int>(int_field(jp, "demand", "point"));
        bool has_x = jp.contains("x"), has_y = jp.contains("y");
        if (has_x != has_y) throw InputError("point " + std::to_string(p.id) + " must carry both x and y or neither");
        if (has_x) p.pos = Vec2{num_field(jp, "x", "point"), num_field(jp, "y", "point")};
        points.push_back(p);
    }

    std::vector<RangeRecord> ranges;
    const auto& jranges = field(root, "ranges", "instance");
    if (!jranges.is_array()) throw InputError("\"ranges\" must be an array");
    for (const auto& jr : jranges) {
        if (!jr.is_object()) throw InputError("each range must be an object");
        reject_unknown(jr, {"id", "members", "halfplane"}, "range");
        RangeRecord r;
        r.id = static_cast<RangeId>(int_field(jr, "id", "range"));
        bool has_members = jr.contains("members"), has_half = jr.contains("halfplane");
        if (has_members == has_half)
            throw InputError("range " + std::to_string(r.id) + " must carry exactly one of members or halfplane");
        if (has_half) {
            const auto& jh = field(jr, "halfplane", "range");
            if (!jh.is_object()) throw InputError("\"halfplane\" must be an object");
            reject_unknown(jh, {"a", "b", "c"}, "halfplane");
            r.halfplane = Halfplane::normalized(num_field(jh, "a", "halfplane"), num_field(jh, "b", "halfplane"),
                                                num_field(jh, "c", "halfplane"));
        } else {
            r.members = ids_from(field(jr, "members", "range"), "members");
        }
        ranges.push_back(std::move(r));
    }

    bool rep = false;
    if (root.contains("repetition_allowed")) {
        const auto& jr = root["repetition_allowed"];
        if (!jr.is_boolean()) throw InputError("\"repetition_allowed\" must be a boolean");
        rep = jr.get<bool>();
    }
    return MultiCoverInstance(std::move(points), std::move(ranges), rep);
}

MultiCoverInstance load_instance(const std::string& path) { return instance_from_text(read_file(path)); }

void save_instance(const MultiCoverInstance& inst, const std::string& path) {
    write_file(path, instance_to_text(inst));
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string instance_digest(const MultiCoverInstance& inst) {
    std::uint64_t h = fnv1a64(instance_to_text(inst));
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string solution_to_text(const SolutionRecord& sol) {
    ordered_json root;
    root["instance"] = sol.instance;
    root["method"] = sol.method;
    root["seed"] = sol.seed;
    root["f"] = sol.f;
    if (sol.opt) root["opt"] = *sol.opt;
    root["size"] = sol.cover.size();
    root["cover"] = ids_json(sol.cover.expanded());
    root["trace"] = trace_json(sol.trace);
    if (sol.report) root["report"] = report_json(*sol.report);
    return root.dump(2) + "\n";
}

SolutionRecord solution_from_text(const std::string& text) {
    ordered_json root = parse(text, "solution");
    if (!root.is_object()) throw InputError("solution must be an object");
    reject_unknown(root, {"instance", "method", "seed", "f", "opt", "size", "cover", "trace", "report"}, "solution");
    SolutionRecord sol;
    sol.instance = str_field(root, "instance", "solution");
    sol.method = str_field(root, "method", "solution");
    sol.seed = u64_field(root, "seed", "solution");
    sol.f = num_field(root, "f", "solution");
    if (root.contains("opt")) sol.opt = int_field(root, "opt", "solution");
    for (RangeId id : ids_from(field(root, "cover", "solution"), "cover")) sol.cover.add(id);
    sol.trace = trace_from(field(root, "trace", "solution"));
    if (root.contains("report")) sol.report = report_from(root["report"], sol.trace);
    long long size = int_field(root, "size", "solution");
    if (size != sol.cover.size()) throw InputError("solution size disagrees with its cover");
    return sol;
}

SolutionRecord load_solution(const std::string& path) { return solution_from_text(read_file(path)); }

void save_solution(const SolutionRecord& sol, const std::string& path) { write_file(path, solution_to_text(sol)); }

std::string result_to_line(const ResultRecord& rec) {
    ordered_json obj;
    obj["instance"] = rec.instance;
    obj["method"] = rec.method;
    obj["seed"] = rec.seed;
    obj["f"] = rec.f;
    obj["size"] = rec.size;
    if (rec.opt) obj["opt"] = *rec.opt;
    obj["ratio_f"] = rec.ratio_f;
    if (rec.ratio_opt) obj["ratio_opt"] = *rec.ratio_opt;
    obj["wall_ms"] = rec.wall_ms;
    obj["trace"] = rec.trace;
    return obj.dump();
}

ResultRecord result_from_line(const std::string& line) {
    ordered_json obj = parse(line, "result line");
    if (!obj.is_object()) throw InputError("result line must be an object");
    reject_unknown(obj, {"instance", "method", "seed", "f", "size", "opt", "ratio_f", "ratio_opt", "wall_ms", "trace"},
                   "result line");
    ResultRecord rec;
    rec.instance = str_field(obj, "instance", "result");
    rec.method = str_field(obj, "method", "result");
    rec.seed = u64_field(obj, "seed", "result");
    rec.f = num_field(obj, "f", "result");
    rec.size = int_field(obj, "size", "result");
    if (obj.contains("opt")) rec.opt = int_field(obj, "opt", "result");
    rec.ratio_f = num_field(obj, "ratio_f", "result");
    if (obj.contains("ratio_opt")) rec.ratio_opt = num_field(obj, "ratio_opt", "result");
    rec.wall_ms = num_field(obj, "wall_ms", "result");
    rec.trace = str_field(obj, "trace", "result");
    return rec;
}

}  // namespace multicover
