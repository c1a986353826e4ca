#include "ncl/io.hpp"

#include <sstream>

namespace ncl {

Json to_json(const Circuit& c) {
    Json j;
    j["nvars"] = c.nvars();
    j["modulus"] = c.field().name();
    Json gates = Json::array();
    for (const Gate& g : c.gates()) {
        Json e;
        e["id"] = g.id;
        e["kind"] = std::string(to_string(g.kind));
        if (g.kind == GateKind::input) e["var"] = g.var;
        if (g.kind == GateKind::constant) e["value"] = g.value.to_string();
        if (g.left) e["left"] = *g.left;
        if (g.right) e["right"] = *g.right;
        gates.push_back(std::move(e));
    }
    j["gates"] = std::move(gates);
    j["outputs"] = c.outputs();
    return j;
}

namespace {

template <class T>
T field_as(const Json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(where + ": \"" + key + "\" has the wrong type");
    }
}

Field field_from_json(const Json& j) {
    if (!j.contains("modulus")) return Field();
    const auto& m = j.at("modulus");
    if (m.is_number_unsigned()) return Field::prime(m.get<std::uint64_t>());
    if (m.is_string()) return Field::parse(m.get<std::string>());
    throw ParseError("\"modulus\" must be a string or a number");
}

}  // namespace

Circuit circuit_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("circuit JSON must be an object");
    const Field field = field_from_json(j);
    const auto nvars = field_as<std::size_t>(j, "nvars", "circuit");
    if (!j.contains("gates") || !j.at("gates").is_array()) throw ParseError("circuit: \"gates\" must be an array");
    std::vector<Gate> gates;
    for (const auto& e : j.at("gates")) {
        if (!e.is_object()) throw ParseError("gate entries must be objects");
        Gate g;
        g.id = field_as<GateId>(e, "id", "gate");
        const std::string where = "gate " + std::to_string(g.id);
        const auto kind = field_as<std::string>(e, "kind", where);
        if (kind == "input") {
            g.kind = GateKind::input;
            const auto v = field_as<std::uint64_t>(e, "var", where);
            if (v > kMaxVars) throw ParseError(where + ": variable index too large");
            g.var = static_cast<Var>(v);
        } else if (kind == "const") {
            g.kind = GateKind::constant;
            const auto& v = e.contains("value") ? e.at("value") : Json();
            if (v.is_string()) {
                g.value = FieldElement::parse(field, v.get<std::string>());
            } else if (v.is_number_integer()) {
                g.value = FieldElement::from_int(field, v.get<long long>());
            } else {
                throw ParseError(where + ": constant needs a \"value\"");
            }
        } else if (kind == "add" || kind == "mul") {
            g.kind = kind == "add" ? GateKind::add : GateKind::mul;
            if (e.contains("left")) g.left = field_as<GateId>(e, "left", where);
            if (e.contains("right")) g.right = field_as<GateId>(e, "right", where);
        } else {
            throw ParseError(where + ": unknown kind \"" + kind + "\"");
        }
        gates.push_back(std::move(g));
    }
    std::vector<GateId> outputs;
    if (j.contains("outputs")) {
        const auto& o = j.at("outputs");
        if (!o.is_array() && !o.is_object()) throw ParseError("\"outputs\" must be an array or an object");
        for (const auto& id : o) {
            if (!id.is_number_integer()) throw ParseError("output ids must be integers");
            outputs.push_back(id.get<GateId>());
        }
    }
    return Circuit(field, nvars, std::move(gates), std::move(outputs));
}

Circuit parse_circuit(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return circuit_from_json(j);
}

std::string to_dot(const Circuit& c) {
    std::ostringstream out;
    out << "digraph circuit {\n  rankdir=BT;\n";
    for (const Gate& g : c.gates()) {
        out << "  g" << g.id << " [label=\"";
        switch (g.kind) {
            case GateKind::input: out << "x" << g.var; break;
            case GateKind::constant: out << g.value.to_string(); break;
            case GateKind::add: out << "+"; break;
            case GateKind::mul: out << "*"; break;
        }
        out << "\"";
        if (g.is_leaf()) out << ", shape=box";
        out << "];\n";
    }
    for (const Gate& g : c.gates()) {
        if (g.is_leaf()) continue;
        const bool mul = g.kind == GateKind::mul;
        if (g.left) out << "  g" << *g.left << " -> g" << g.id << (mul ? " [label=\"L\"]" : "") << ";\n";
        if (g.right) out << "  g" << *g.right << " -> g" << g.id << (mul ? " [label=\"R\"]" : "") << ";\n";
    }
    for (GateId o : c.outputs()) out << "  g" << o << " [peripheries=2];\n";
    out << "}\n";
    return out.str();
}

Json to_json(const DerivativeBundle& b) {
    Json j = to_json(b.circuit);
    Json outputs = Json::object();
    for (const auto& [v, g] : b.outputs) outputs[std::to_string(v)] = g;
    j["outputs"] = std::move(outputs);
    Json meta;
    meta["target"] = b.provenance.target;
    meta["source_size"] = b.provenance.size;
    meta["source_non_scalar"] = b.provenance.non_scalar;
    meta["weights"] = b.weights.values();
    j["meta"] = std::move(meta);
    return j;
}

Json to_json(const MeasureReport& r) {
    Json j;
    j["ell"] = r.ell;
    j["family_size"] = r.family_size;
    j["rank"] = r.rank;
    j["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
    j["field"] = r.field.name();
    j["witness"] = r.witness;
    return j;
}

Json to_json(const Certificate& c) {
    Json j;
    j["mu"] = c.report.rank;
    j["bound"] = c.bound;
    j["sources"] = c.source_count;
    j["statement"] = c.statement;
    j["report"] = to_json(c.report);
    return j;
}

Json to_json(const Telemetry& t) {
    Json j;
    j["n"] = t.n;
    j["method"] = t.method;
    j["size"] = t.size;
    j["non_scalar"] = t.non_scalar;
    j["depth"] = t.depth;
    return j;
}

Json to_json(const Metrics& m) {
    Json j;
    j["size"] = m.size;
    j["non_scalar"] = m.non_scalar;
    j["depth"] = m.depth;
    return j;
}

Json to_json(const PitVerdict& v) {
    Json j;
    j["verdict"] = std::string(to_string(v.kind));
    j["trials"] = v.trials;
    j["dim"] = v.dim;
    j["degree_bound"] = v.degree_bound;
    j["modulus"] = std::to_string(v.modulus);
    j["failure_bound"] = v.failure_bound;
    return j;
}

Json to_json(const LemmaCheck& l) {
    Json j;
    j["mu"] = l.mu;
    j["non_scalar"] = l.non_scalar;
    j["limit"] = l.limit;
    j["holds"] = l.holds;
    return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace ncl
