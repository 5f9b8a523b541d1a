#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ranklab/stemmer.hpp"

namespace ranklab {

struct TokenizerConfig {
    std::set<std::string> stopwords;
    bool stemming = true;
    bool lowercasing = true;
};

/// Classic minimal English stopword list.
inline const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "a",    "an",   "and",  "are",   "as",    "at",   "be",   "but",
        "by",   "for",  "if",   "in",    "into",  "is",   "it",   "no",
        "not",  "of",   "on",   "or",    "such",  "that", "the",  "their",
        "then", "there", "these", "they", "this",  "to",   "was",  "will",
        "with"};
    return words;
}

inline TokenizerConfig default_tokenizer_config() {
    return TokenizerConfig{default_stopwords(), true, true};
}

namespace detail {

inline bool is_token_byte(unsigned char c) {
    // alphanumeric ASCII plus any non-ASCII byte (keeps UTF-8 sequences whole)
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c >= 0x80;
}

inline bool is_ascii_alpha(const std::string& s) {
    for (unsigned char c : s)
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
    return !s.empty();
}

}  // namespace detail

/// Split raw text into normalized tokens: split on non-alphanumeric bytes,
/// lowercase, drop stopwords, then stem. Deterministic for a fixed config.
inline std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
    std::vector<std::string> out;
    std::string token;
    auto flush = [&] {
        if (token.empty()) return;
        std::string t = std::move(token);
        token.clear();
        if (config.lowercasing) {
            for (char& c : t)
                if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        }
        if (config.stopwords.contains(t)) return;
        if (config.stemming && detail::is_ascii_alpha(t)) t = porter_stem(std::move(t));
        out.push_back(std::move(t));
    };
    for (unsigned char c : text) {
        if (detail::is_token_byte(c)) {
            token.push_back(static_cast<char>(c));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

inline std::vector<std::string> tokenize(std::string_view text) {
    return tokenize(text, default_tokenizer_config());
}

}  // namespace ranklab
