#pragma once

// JSON ingestion of theory and lattice-sequence files.
//
// Theory file:
//   { "preset": "SL2" | "PGL2" | "A2" | "torus(r)" | "GL(n)",   (optional)
//     "rank": r, "simple_roots": [[...]], "simple_coroots": [[...]],
//     "name": "...",                                            (optional)
//     "matter": [ { "weight": [...], "mult": m }, ... ],        (optional)
//     "flavor": [ f1, f2, ... ],       one charge per matter entry (optional)
//     "mode": "classical" | "quantized" | "flavored" }          (optional)
//
// Sequence file: { "alpha": [[...]], "beta": [[...]] }.

#include "coulombkit/errors.hpp"
#include "coulombkit/hypertoric.hpp"
#include "coulombkit/localized.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>

namespace ck {

struct TheorySpec {
    RootDatum rd;
    MatterContent matter;
    Mode mode = Mode::classical;
    std::optional<std::vector<long long>> flavor_charges;
    long long dropped_zero_weights = 0;

    Theory theory() const { return Theory{rd, matter, mode}; }
    Theory theory(Mode m) const { return Theory{rd, matter, m}; }
};

namespace detail_io {

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline IntVec to_int_vec(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array of integers");
    IntVec v;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw SchemaError(std::string(what) + " must be integral");
        v.push_back(x.get<long long>());
    }
    return v;
}

inline IntMat to_int_mat(const nlohmann::json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be a matrix");
    IntMat m;
    for (const auto& row : j) m.push_back(to_int_vec(row, what));
    return m;
}

inline RootDatum preset_root_datum(const std::string& name) {
    if (name == "SL2") return sl2();
    if (name == "PGL2") return pgl2();
    if (name == "A2") return a2();
    auto paren = [&](const std::string& head) -> std::optional<int> {
        if (name.rfind(head + "(", 0) != 0 || name.back() != ')') return std::nullopt;
        std::string inner = name.substr(head.size() + 1, name.size() - head.size() - 2);
        if (inner.empty()) return std::nullopt;
        for (char c : inner)
            if (!std::isdigit((unsigned char)c)) return std::nullopt;
        return std::stoi(inner);
    };
    if (auto r = paren("torus")) return torus(*r);
    if (auto n = paren("GL")) return gl(*n);
    throw SchemaError("unknown preset '" + name + "'");
}

}  // namespace detail_io

inline Mode parse_mode(const std::string& s) {
    if (s == "classical") return Mode::classical;
    if (s == "quantized") return Mode::quantized;
    if (s == "flavored") return Mode::flavored;
    throw SchemaError("unknown mode '" + s + "'");
}

inline TheorySpec load_theory(const std::string& path) {
    using nlohmann::json;
    json j = detail_io::load_json(path);
    if (!j.is_object()) throw SchemaError("theory file must be a JSON object");

    std::optional<RootDatum> rd;
    if (j.contains("preset")) {
        if (!j["preset"].is_string()) throw SchemaError("preset must be a string");
        rd = detail_io::preset_root_datum(j["preset"].get<std::string>());
    } else {
        if (!j.contains("rank")) throw SchemaError("theory file needs a preset or a rank");
        int rank = j["rank"].get<int>();
        std::vector<Weight> roots;
        std::vector<Coweight> coroots;
        if (j.contains("simple_roots"))
            for (const auto& r : detail_io::to_int_mat(j["simple_roots"], "simple_roots"))
                roots.push_back(Weight{r});
        if (j.contains("simple_coroots"))
            for (const auto& r : detail_io::to_int_mat(j["simple_coroots"], "simple_coroots"))
                coroots.push_back(Coweight{r});
        std::string name = j.value("name", std::string{});
        rd = RootDatum(rank, roots, coroots, name);
    }

    MatterContent matter;
    if (j.contains("matter")) {
        if (!j["matter"].is_array()) throw SchemaError("matter must be an array");
        for (const auto& e : j["matter"]) {
            if (!e.is_object() || !e.contains("weight"))
                throw SchemaError("matter entries are objects with a weight");
            IntVec w = detail_io::to_int_vec(e["weight"], "matter weight");
            if ((int)w.size() != rd->rank())
                throw SchemaError("matter weight of wrong length");
            long long mult = e.value("mult", 1ll);
            matter.entries.push_back({Weight{w}, mult});
        }
    }

    TheorySpec spec{*rd, {}, Mode::classical, std::nullopt, 0};
    // flavor charges are per entry as written, before merging
    if (j.contains("flavor")) {
        IntVec charges = detail_io::to_int_vec(j["flavor"], "flavor");
        if (charges.size() != matter.entries.size())
            throw SchemaError("flavor must list one charge per matter entry");
        // normalize merges duplicates; keep the file's entries distinct by
        // requiring distinct weights when flavor charges are given
        std::vector<long long> out;
        MatterContent normalized = matter;
        long long dropped = normalized.normalize();
        if (normalized.entries.size() != matter.entries.size() || dropped != 0)
            throw SchemaError("flavor charges require distinct nonzero matter weights");
        for (const auto& e : normalized.entries) {
            for (std::size_t i = 0; i < matter.entries.size(); ++i)
                if (matter.entries[i].weight == e.weight) out.push_back(charges[i]);
        }
        spec.flavor_charges = out;
        spec.matter = normalized;
    } else {
        spec.matter = matter;
        spec.dropped_zero_weights = spec.matter.normalize();
    }
    if (j.contains("mode")) spec.mode = parse_mode(j["mode"].get<std::string>());
    return spec;
}

inline LatticeSequence load_sequence(const std::string& path) {
    using nlohmann::json;
    json j = detail_io::load_json(path);
    if (!j.is_object() || !j.contains("alpha"))
        throw SchemaError("sequence file must contain alpha");
    LatticeSequence seq;
    seq.alpha = detail_io::to_int_mat(j["alpha"], "alpha");
    if (j.contains("beta")) seq.beta = detail_io::to_int_mat(j["beta"], "beta");
    validate_sequence(seq);
    return seq;
}

}  // namespace ck
