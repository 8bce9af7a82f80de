#include "toklens/lang_registry.hpp"

#include <fstream>
#include <sstream>

#include "toklens/error.hpp"

namespace toklens {

namespace detail {
std::vector<LanguageInfo> builtin_language_table();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

bool parse_bool(const std::string& text, std::size_t line_no) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw error("parse", "line " + std::to_string(line_no) + ": expected true/false, got '" +
                             text + "'");
}

}  // namespace

const LanguageRegistry& LanguageRegistry::builtin() {
    static const LanguageRegistry instance = from_entries(detail::builtin_language_table());
    return instance;
}

LanguageRegistry LanguageRegistry::from_entries(std::vector<LanguageInfo> entries) {
    LanguageRegistry registry;
    registry.entries_ = std::move(entries);
    registry.index_.reserve(registry.entries_.size());
    for (std::size_t i = 0; i < registry.entries_.size(); ++i) {
        const LanguageInfo& e = registry.entries_[i];
        if (e.iso_code.empty()) {
            throw error("parse", "language entry with empty iso code");
        }
        if (e.family_l2 && !e.family_l1) {
            throw error("parse", "language '" + e.iso_code + "': family2 present without family1");
        }
        if (e.family_l3 && !e.family_l2) {
            throw error("parse", "language '" + e.iso_code + "': family3 present without family2");
        }
        auto [it, inserted] = registry.index_.emplace(e.iso_code, i);
        (void)it;
        if (!inserted) {
            throw error("duplicate-code", "duplicate language code '" + e.iso_code + "'");
        }
    }
    return registry;
}

LanguageRegistry LanguageRegistry::from_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw error("io", "cannot open registry file: " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    std::vector<LanguageInfo> entries;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != "iso,name,family1,family2,family3,space_separated,llama_supported") {
                throw error("parse", "line 1: unexpected registry header");
            }
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> f = split_fields(line);
        if (f.size() != 7) {
            throw error("parse", "line " + std::to_string(line_no) + ": expected 7 fields, got " +
                                     std::to_string(f.size()));
        }
        LanguageInfo info;
        info.iso_code = f[0];
        info.name = f[1];
        if (info.iso_code.empty()) {
            throw error("parse", "line " + std::to_string(line_no) + ": empty iso code");
        }
        if (!f[2].empty()) info.family_l1 = f[2];
        if (!f[3].empty()) info.family_l2 = f[3];
        if (!f[4].empty()) info.family_l3 = f[4];
        info.space_separated = parse_bool(f[5], line_no);
        info.llama_supported = parse_bool(f[6], line_no);
        entries.push_back(std::move(info));
    }
    return from_entries(std::move(entries));
}

const LanguageInfo& LanguageRegistry::lookup(std::string_view iso_code) const {
    const LanguageInfo* info = find(iso_code);
    if (!info) {
        throw error("not-found", "unknown language code '" + std::string(iso_code) + "'");
    }
    return *info;
}

const LanguageInfo* LanguageRegistry::find(std::string_view iso_code) const noexcept {
    auto it = index_.find(std::string(iso_code));
    if (it == index_.end()) return nullptr;
    return &entries_[it->second];
}

const std::array<std::string_view, 12>& LanguageRegistry::representative_languages() noexcept {
    static const std::array<std::string_view, 12> codes = {
        "ha", "he", "mi", "ta", "af", "ro", "th", "ns", "luo", "zh", "tr", "et",
    };
    return codes;
}

bool LanguageRegistry::is_representative(std::string_view iso_code) const noexcept {
    for (std::string_view c : representative_languages()) {
        if (c == iso_code) return find(iso_code) != nullptr;
    }
    return false;
}

}  // namespace toklens
