#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sumeta/error.hpp"
#include "sumeta/format.hpp"

namespace sumeta {

enum class SystemKind { Extractive, Abstractive };
enum class SystemGroup { Ext, Abs, Mix };

inline std::string_view system_kind_name(SystemKind k) {
    return k == SystemKind::Extractive ? "ext" : "abs";
}

inline std::string_view system_group_name(SystemGroup g) {
    switch (g) {
        case SystemGroup::Ext: return "ext";
        case SystemGroup::Abs: return "abs";
        case SystemGroup::Mix: return "mix";
    }
    return "mix";
}

inline std::optional<SystemGroup> parse_system_group(std::string_view s) {
    if (s == "ext") return SystemGroup::Ext;
    if (s == "abs") return SystemGroup::Abs;
    if (s == "mix") return SystemGroup::Mix;
    return std::nullopt;
}

struct Scu {
    std::string id;
    std::string text;

    bool operator==(const Scu&) const = default;
};

struct Document {
    std::string id;
    std::string reference;      // the single reference summary
    std::vector<Scu> scus;      // empty unless an SCU file was loaded

    bool operator==(const Document&) const = default;
};

struct SystemInfo {
    std::string id;
    SystemKind kind;

    bool operator==(const SystemInfo&) const = default;
};

// A reference per document plus one output per (system, document) pair.
// Immutable after loading; document order follows the references file and
// system order follows the manifest.
struct Corpus {
    std::vector<Document> documents;
    std::vector<SystemInfo> systems;
    std::map<std::pair<std::string, std::string>, std::string> outputs; // (system, doc) -> summary

    bool operator==(const Corpus&) const = default;

    const Document* find_document(std::string_view id) const {
        for (const auto& d : documents)
            if (d.id == id) return &d;
        return nullptr;
    }

    const SystemInfo* find_system(std::string_view id) const {
        for (const auto& s : systems)
            if (s.id == id) return &s;
        return nullptr;
    }

    std::vector<std::string> document_ids() const {
        std::vector<std::string> out;
        out.reserve(documents.size());
        for (const auto& d : documents) out.push_back(d.id);
        return out;
    }

    std::vector<std::string> system_ids() const {
        std::vector<std::string> out;
        out.reserve(systems.size());
        for (const auto& s : systems) out.push_back(s.id);
        return out;
    }

    const std::string& output(const std::string& system, const std::string& doc) const {
        auto it = outputs.find({system, doc});
        if (it == outputs.end())
            raise(ErrorCode::MissingOutput, "no output for system '" + system + "', document '" + doc + "'");
        return it->second;
    }
};

namespace detail {

// Reads a JSONL file, calling fn(line_number, json) for every non-blank line.
template <typename Fn>
void for_each_jsonl_record(const std::filesystem::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) raise(ErrorCode::IoError, "cannot open " + path.string());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            raise(ErrorCode::MalformedRecord,
                  path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
        fn(line_no, record);
    }
}

inline std::string json_string_field(const nlohmann::json& record, const char* key,
                                     const std::filesystem::path& path, int line_no) {
    if (!record.contains(key) || !record[key].is_string())
        raise(ErrorCode::MalformedRecord, path.string() + ":" + std::to_string(line_no) +
                                              ": missing string field '" + key + "'");
    return record[key].get<std::string>();
}

} // namespace detail

// References file: JSONL records {"doc_id": ..., "reference_text": ...}.
inline std::vector<Document> load_references(const std::filesystem::path& path) {
    std::vector<Document> docs;
    std::set<std::string> seen;
    detail::for_each_jsonl_record(path, [&](int line_no, const nlohmann::json& record) {
        Document d;
        d.id = detail::json_string_field(record, "doc_id", path, line_no);
        d.reference = detail::json_string_field(record, "reference_text", path, line_no);
        require_valid_id(d.id, path.string() + ":" + std::to_string(line_no));
        if (d.reference.empty())
            raise(ErrorCode::MalformedRecord,
                  path.string() + ":" + std::to_string(line_no) + ": empty reference text");
        if (!seen.insert(d.id).second)
            raise(ErrorCode::DuplicateId,
                  path.string() + ":" + std::to_string(line_no) + ": duplicate doc_id '" + d.id + "'");
        docs.push_back(std::move(d));
    });
    return docs;
}

// Systems manifest: JSONL records {"system_id": ..., "kind": "ext"|"abs"}.
inline std::vector<SystemInfo> load_manifest(const std::filesystem::path& path) {
    std::vector<SystemInfo> systems;
    std::set<std::string> seen;
    detail::for_each_jsonl_record(path, [&](int line_no, const nlohmann::json& record) {
        SystemInfo s;
        s.id = detail::json_string_field(record, "system_id", path, line_no);
        std::string kind = detail::json_string_field(record, "kind", path, line_no);
        require_valid_id(s.id, path.string() + ":" + std::to_string(line_no));
        if (kind == "ext") s.kind = SystemKind::Extractive;
        else if (kind == "abs") s.kind = SystemKind::Abstractive;
        else
            raise(ErrorCode::MalformedRecord, path.string() + ":" + std::to_string(line_no) +
                                                  ": kind must be 'ext' or 'abs', got '" + kind + "'");
        if (!seen.insert(s.id).second)
            raise(ErrorCode::DuplicateId, path.string() + ":" + std::to_string(line_no) +
                                              ": duplicate system_id '" + s.id + "'");
        systems.push_back(std::move(s));
    });
    return systems;
}

// SCU file: JSONL records {"doc_id": ..., "scu_id": ..., "scu_text": ...}.
// SCU order per document follows the file. At most 16 SCUs per document.
inline void load_scus(const std::filesystem::path& path, Corpus& corpus) {
    std::map<std::string, Document*> by_id;
    for (auto& d : corpus.documents) by_id[d.id] = &d;
    detail::for_each_jsonl_record(path, [&](int line_no, const nlohmann::json& record) {
        std::string where = path.string() + ":" + std::to_string(line_no);
        std::string doc_id = detail::json_string_field(record, "doc_id", path, line_no);
        Scu scu;
        scu.id = detail::json_string_field(record, "scu_id", path, line_no);
        scu.text = detail::json_string_field(record, "scu_text", path, line_no);
        require_valid_id(scu.id, where);
        auto it = by_id.find(doc_id);
        if (it == by_id.end())
            raise(ErrorCode::UnknownDocument, where + ": unknown doc_id '" + doc_id + "'");
        Document& doc = *it->second;
        for (const auto& existing : doc.scus)
            if (existing.id == scu.id)
                raise(ErrorCode::DuplicateId,
                      where + ": duplicate scu_id '" + scu.id + "' for document '" + doc_id + "'");
        if (doc.scus.size() >= 16)
            raise(ErrorCode::MalformedRecord,
                  where + ": document '" + doc_id + "' has more than 16 SCUs");
        doc.scus.push_back(std::move(scu));
    });
}

// Output files: one <system_id>.jsonl per system in the manifest, records
// {"doc_id": ..., "summary_text": ...}. Every (system, document) pair must
// be present; summaries may be empty.
inline void load_outputs(const std::filesystem::path& dir, Corpus& corpus) {
    std::set<std::string> doc_ids;
    for (const auto& d : corpus.documents) doc_ids.insert(d.id);
    for (const auto& system : corpus.systems) {
        std::filesystem::path path = dir / (system.id + ".jsonl");
        if (!std::filesystem::exists(path))
            raise(ErrorCode::MissingOutput,
                  "no output file for system '" + system.id + "' (expected " + path.string() + ")");
        detail::for_each_jsonl_record(path, [&](int line_no, const nlohmann::json& record) {
            std::string where = path.string() + ":" + std::to_string(line_no);
            std::string doc_id = detail::json_string_field(record, "doc_id", path, line_no);
            std::string summary = detail::json_string_field(record, "summary_text", path, line_no);
            if (!doc_ids.count(doc_id))
                raise(ErrorCode::UnknownDocument, where + ": unknown doc_id '" + doc_id + "'");
            if (!corpus.outputs.emplace(std::make_pair(system.id, doc_id), std::move(summary)).second)
                raise(ErrorCode::DuplicateId,
                      where + ": duplicate output for system '" + system.id + "', document '" + doc_id + "'");
        });
    }
    for (const auto& system : corpus.systems)
        for (const auto& doc : corpus.documents)
            if (!corpus.outputs.count({system.id, doc.id}))
                raise(ErrorCode::MissingOutput,
                      "missing output for system '" + system.id + "', document '" + doc.id + "'");
}

// Documents and systems only; outputs stay empty. Used by commands that
// consume score files rather than summary text.
inline Corpus load_corpus_index(const std::filesystem::path& refs_path,
                                const std::filesystem::path& manifest_path) {
    Corpus corpus;
    corpus.documents = load_references(refs_path);
    corpus.systems = load_manifest(manifest_path);
    return corpus;
}

inline Corpus load_corpus(const std::filesystem::path& refs_path,
                          const std::filesystem::path& manifest_path,
                          const std::filesystem::path& outputs_dir) {
    Corpus corpus = load_corpus_index(refs_path, manifest_path);
    load_outputs(outputs_dir, corpus);
    return corpus;
}

inline std::vector<std::string> group_systems(const Corpus& corpus, SystemGroup group) {
    std::vector<std::string> out;
    for (const auto& s : corpus.systems) {
        bool take = group == SystemGroup::Mix ||
                    (group == SystemGroup::Ext && s.kind == SystemKind::Extractive) ||
                    (group == SystemGroup::Abs && s.kind == SystemKind::Abstractive);
        if (take) out.push_back(s.id);
    }
    return out;
}

inline void write_references(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoError, "cannot write " + path.string());
    for (const auto& d : corpus.documents)
        out << nlohmann::json{{"doc_id", d.id}, {"reference_text", d.reference}}.dump() << '\n';
}

inline void write_manifest(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoError, "cannot write " + path.string());
    for (const auto& s : corpus.systems)
        out << nlohmann::json{{"system_id", s.id}, {"kind", std::string(system_kind_name(s.kind))}}.dump()
            << '\n';
}

inline void write_scus(const Corpus& corpus, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) raise(ErrorCode::IoError, "cannot write " + path.string());
    for (const auto& d : corpus.documents)
        for (const auto& scu : d.scus)
            out << nlohmann::json{{"doc_id", d.id}, {"scu_id", scu.id}, {"scu_text", scu.text}}.dump()
                << '\n';
}

inline void write_outputs(const Corpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& system : corpus.systems) {
        std::filesystem::path path = dir / (system.id + ".jsonl");
        std::ofstream out(path);
        if (!out) raise(ErrorCode::IoError, "cannot write " + path.string());
        for (const auto& doc : corpus.documents)
            out << nlohmann::json{{"doc_id", doc.id},
                                  {"summary_text", corpus.output(system.id, doc.id)}}
                       .dump()
                << '\n';
    }
}

} // namespace sumeta
