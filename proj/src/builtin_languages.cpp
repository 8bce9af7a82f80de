#include <array>
#include <string_view>
#include <vector>

#include "toklens/lang_registry.hpp"

namespace toklens::detail {

namespace {

struct Row {
    std::string_view code;
    std::string_view name;
    std::string_view f1;
    std::string_view f2;
    std::string_view f3;
};

// The 101 en->x target languages of the Flores-101 set with three-level
// family names. Codes without an ISO 639-1 entry (ast, ceb, kam, kea, luo,
// umb, zhtrad) are kept verbatim.
constexpr Row kRows[] = {
    {"hy", "Armenian", "Indo-European", "Armenian", ""},
    {"lt", "Lithuanian", "Indo-European", "Balto-Slavic", "Baltic"},
    {"lv", "Latvian", "Indo-European", "Balto-Slavic", "Baltic"},
    {"be", "Belarusian", "Indo-European", "Balto-Slavic", "Slavic"},
    {"bg", "Bulgarian", "Indo-European", "Balto-Slavic", "Slavic"},
    {"bs", "Bosnian", "Indo-European", "Balto-Slavic", "Slavic"},
    {"cs", "Czech", "Indo-European", "Balto-Slavic", "Slavic"},
    {"hr", "Croatian", "Indo-European", "Balto-Slavic", "Slavic"},
    {"mk", "Macedonian", "Indo-European", "Balto-Slavic", "Slavic"},
    {"pl", "Polish", "Indo-European", "Balto-Slavic", "Slavic"},
    {"ru", "Russian", "Indo-European", "Balto-Slavic", "Slavic"},
    {"sk", "Slovak", "Indo-European", "Balto-Slavic", "Slavic"},
    {"sl", "Slovenian", "Indo-European", "Balto-Slavic", "Slavic"},
    {"sr", "Serbian", "Indo-European", "Balto-Slavic", "Slavic"},
    {"uk", "Ukrainian", "Indo-European", "Balto-Slavic", "Slavic"},
    {"cy", "Welsh", "Indo-European", "Celtic", "Insular Celtic"},
    {"ga", "Irish", "Indo-European", "Celtic", "Insular Celtic"},
    {"is", "Icelandic", "Indo-European", "Germanic", "North Germanic"},
    {"sv", "Swedish", "Indo-European", "Germanic", "North Germanic"},
    {"da", "Danish", "Indo-European", "Germanic", "Northwest Germanic"},
    {"no", "Norwegian", "Indo-European", "Germanic", "Northwest Germanic"},
    {"af", "Afrikaans", "Indo-European", "Germanic", "West Germanic"},
    {"de", "German", "Indo-European", "Germanic", "West Germanic"},
    {"lb", "Luxembourgish", "Indo-European", "Germanic", "West Germanic"},
    {"nl", "Dutch", "Indo-European", "Germanic", "West Germanic"},
    {"el", "Greek", "Indo-European", "Graeco-Phrygian", "Hellenic"},
    {"bn", "Bengali", "Indo-European", "Indo-Aryan", "Eastern"},
    {"as", "Assamese", "Indo-European", "Indo-Iranian", "Indo-Aryan"},
    {"gu", "Gujarati", "Indo-European", "Indo-Iranian", "Indo-Aryan"},
    {"hi", "Hindi", "Indo-European", "Indo-Iranian", "Indo-Aryan"},
    {"mr", "Marathi", "Indo-European", "Indo-Iranian", "Indo-Aryan"},
    {"ne", "Nepali", "Indo-European", "Indo-Iranian", "Indo-Aryan"},
    {"or", "Odia", "Indo-European", "Indo-Iranian", "Indo-Aryan"},
    {"pa", "Punjabi", "Indo-European", "Indo-Iranian", "Indo-Aryan"},
    {"sd", "Sindhi", "Indo-European", "Indo-Iranian", "Indo-Aryan"},
    {"ur", "Urdu", "Indo-European", "Indo-Iranian", "Indo-Aryan"},
    {"fa", "Persian", "Indo-European", "Indo-Iranian", "Iranian"},
    {"ku", "Kurdish", "Indo-European", "Indo-Iranian", "Iranian"},
    {"ps", "Pashto", "Indo-European", "Indo-Iranian", "Iranian"},
    {"tg", "Tajik", "Indo-European", "Indo-Iranian", "Iranian"},
    {"ast", "Asturian", "Indo-European", "Italic", "Latino-Faliscan"},
    {"ca", "Catalan", "Indo-European", "Italic", "Latino-Faliscan"},
    {"es", "Spanish", "Indo-European", "Italic", "Latino-Faliscan"},
    {"fr", "French", "Indo-European", "Italic", "Latino-Faliscan"},
    {"gl", "Galician", "Indo-European", "Italic", "Latino-Faliscan"},
    {"it", "Italian", "Indo-European", "Italic", "Latino-Faliscan"},
    {"oc", "Occitan", "Indo-European", "Italic", "Latino-Faliscan"},
    {"pt", "Portuguese", "Indo-European", "Italic", "Latino-Faliscan"},
    {"ro", "Romanian", "Indo-European", "Italic", "Latino-Faliscan"},
    {"ja", "Japanese", "Japonic", "Japanese", ""},
    {"ka", "Georgian", "Kartvelian", "Karto-Zan", "Georgian"},
    {"ko", "Korean", "Koreanic", "Korean", ""},
    {"lo", "Lao", "Kra–Dai", "Tai", "Southwestern Tai"},
    {"th", "Thai", "Kra–Dai", "Tai", "Southwestern Tai"},
    {"mn", "Mongolian", "Mongolic", "Central", "Mongolian"},
    {"wo", "Wolof", "Niger–Congo", "Atlantic–Congo", "Atlantic"},
    {"ln", "Lingala", "Niger–Congo", "Atlantic–Congo", "Benue–Congo"},
    {"ns", "Northern Sotho", "Niger–Congo", "Atlantic–Congo", "Benue–Congo"},
    {"lg", "Luganda", "Niger–Congo", "Atlantic–Congo", "Volta-Congo"},
    {"ny", "Nyanja", "Niger–Congo", "Atlantic–Congo", "Volta-Congo"},
    {"sn", "Shona", "Niger–Congo", "Atlantic–Congo", "Volta-Congo"},
    {"sw", "Swahili", "Niger–Congo", "Atlantic–Congo", "Volta-Congo"},
    {"umb", "Umbundu", "Niger–Congo", "Atlantic–Congo", "Volta-Congo"},
    {"xh", "Xhosa", "Niger–Congo", "Atlantic–Congo", "Volta-Congo"},
    {"yo", "Yoruba", "Niger–Congo", "Atlantic–Congo", "Volta-Congo"},
    {"zu", "Zulu", "Niger–Congo", "Atlantic–Congo", "Volta-Congo"},
    {"ig", "Igbo", "Niger–Congo", "Atlantic–Congo", "Volta-Congo"},
    {"kam", "Kamba", "Niger–Congo", "Atlantic–Congo", "Volta-Congo"},
    {"ff", "Fulani", "Niger–Congo", "Atlantic–Congo", "West Atlantic"},
    {"luo", "Dholuo", "Nilo-Saharan", "Eastern", "Nilotic"},
    {"kea", "Kabuverdianu", "Portuguese", "Afro-Portuguese", "Upper Guinea Creole"},
    {"zh", "Chinese", "Sino-Tibetan", "Sinitic", "Chinese"},
    {"zhtrad", "Chinese", "Sino-Tibetan", "Sinitic", "Chinese"},
    {"my", "Burmese", "Sino-Tibetan", "Tibeto-Burman", "Lolo-Burmese"},
    {"uz", "Uzbek", "Turkic", "Common", "Karluk"},
    {"kk", "Kazakh", "Turkic", "Common", "Kipchak"},
    {"ky", "Kyrgyz", "Turkic", "Common", "Kipchak"},
    {"az", "Azerbaijani", "Turkic", "Common", "Oghuz"},
    {"tr", "Turkish", "Turkic", "Common", "Oghuz"},
    {"et", "Estonian", "Uralic", "Finno-Permic", "Finno-Samic"},
    {"fi", "Finnish", "Uralic", "Finno-Ugric", "Finnic"},
    {"hu", "Hungarian", "Uralic", "Finno-Ugric", "Ugric"},
    {"ha", "Hausa", "Afro-Asiatic", "Chadic", "West Chadic"},
    {"om", "Oromo", "Afro-Asiatic", "Cushitic", "Lowland East Cushitic"},
    {"so", "Somali", "Afro-Asiatic", "Cushitic", "Lowland East Cushitic"},
    {"am", "Amharic", "Afro-Asiatic", "Semitic", "West Semitic"},
    {"ar", "Arabic", "Afro-Asiatic", "Semitic", "West Semitic"},
    {"he", "Hebrew", "Afro-Asiatic", "Semitic", "West Semitic"},
    {"mt", "Maltese", "Afro-Asiatic", "Semitic", "West Semitic"},
    {"km", "Khmer", "Austroasiatic", "Khmer", ""},
    {"vi", "Vietnamese", "Austroasiatic", "Vietic", "Viet–Muong"},
    {"jv", "Javanese", "Austronesian", "Malayo-Polynesian", "Javanese"},
    {"id", "Indonesian", "Austronesian", "Malayo-Polynesian", "Malayic"},
    {"ms", "Malay", "Austronesian", "Malayo-Polynesian", "Malayic"},
    {"mi", "Maori", "Austronesian", "Malayo-Polynesian", "Oceanic"},
    {"ceb", "Cebuano", "Austronesian", "Malayo-Polynesian", "Philippine"},
    {"tl", "Tagalog", "Austronesian", "Malayo-Polynesian", "Philippine"},
    {"te", "Telugu", "Dravidian", "South-Central", "Telugu"},
    {"kn", "Kannada", "Dravidian", "Southern", "Tamil–Kannada"},
    {"ml", "Malayalam", "Dravidian", "Southern", "Tamil–Kannada"},
    {"ta", "Tamil", "Dravidian", "Southern", "Tamil–Kannada"},
};

// Scripts written without inter-word spaces among the covered languages.
constexpr std::string_view kNoSpace[] = {"zh", "zhtrad", "ja", "th", "km", "lo", "my"};

// The 20-language Wikipedia pretraining set of the reference model, minus
// the pivot (en), which is not a target language here.
constexpr std::string_view kLlamaSupported[] = {
    "bg", "ca", "cs", "da", "de", "es", "fr", "hr", "hu", "it",
    "nl", "pl", "pt", "ro", "ru", "sl", "sr", "sv", "uk",
};

template <typename Range>
bool contains(const Range& range, std::string_view code) {
    for (std::string_view c : range) {
        if (c == code) return true;
    }
    return false;
}

}  // namespace

std::vector<LanguageInfo> builtin_language_table() {
    std::vector<LanguageInfo> out;
    out.reserve(std::size(kRows));
    for (const Row& row : kRows) {
        LanguageInfo info;
        info.iso_code = std::string(row.code);
        info.name = std::string(row.name);
        if (!row.f1.empty()) info.family_l1 = std::string(row.f1);
        if (!row.f2.empty()) info.family_l2 = std::string(row.f2);
        if (!row.f3.empty()) info.family_l3 = std::string(row.f3);
        info.space_separated = !contains(kNoSpace, row.code);
        info.llama_supported = contains(kLlamaSupported, row.code);
        out.push_back(std::move(info));
    }
    return out;
}

}  // namespace toklens::detail
