#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace toklens {

/// Per-language metadata. Codes are ISO 639-1 where one exists; languages
/// without one (luo, kea, umb, kam, ast, ceb, zhtrad, ...) keep their
/// source-table codes as opaque identifiers.
struct LanguageInfo {
    std::string iso_code;
    std::string name;
    std::optional<std::string> family_l1;
    std::optional<std::string> family_l2;
    std::optional<std::string> family_l3;
    bool space_separated = true;
    bool llama_supported = false;
};

/// Immutable after construction; safe to share across threads.
class LanguageRegistry {
public:
    /// The bundled 101-language table (the en->x target languages of the
    /// Flores-101 set, with three-level family infomation).
    static const LanguageRegistry& builtin();

    /// CSV with header iso,name,family1,family2,family3,space_separated,llama_supported.
    /// Empty family fields mean "absent"; booleans are `true`/`false`.
    static LanguageRegistry from_csv(const std::filesystem::path& path);

    /// Validates uniqueness and family-level nesting.
    static LanguageRegistry from_entries(std::vector<LanguageInfo> entries);

    const LanguageInfo& lookup(std::string_view iso_code) const;  // throws not-found
    const LanguageInfo* find(std::string_view iso_code) const noexcept;

    std::size_t size() const noexcept { return entries_.size(); }
    const std::vector<LanguageInfo>& entries() const noexcept { return entries_; }

    /// The 12 languages used as evaluation directions (one per family).
    static const std::array<std::string_view, 12>& representative_languages() noexcept;
    bool is_representative(std::string_view iso_code) const noexcept;

private:
    LanguageRegistry() = default;

    std::vector<LanguageInfo> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace toklens
