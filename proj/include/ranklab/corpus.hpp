#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ranklab/errors.hpp"
#include "ranklab/tokenizer.hpp"

namespace ranklab {

/// Collection-level statistics kept alongside the postings.
struct CorpusStats {
    std::uint64_t doc_count = 0;   // M
    double avgdl = 0.0;            // mean document length in tokens
    std::uint64_t total_tokens = 0;
    std::map<std::string, std::uint64_t> collection_tf;  // F_t per term

    bool operator==(const CorpusStats&) const = default;
};

struct Document {
    std::string id;
    std::map<std::string, std::uint32_t> terms;
    std::uint64_t length = 0;  // token count, equals the sum of term frequencies
};

struct Query {
    std::string id;
    std::map<std::string, std::uint32_t> terms;
    std::uint64_t length = 0;
    std::string exclude_doc;  // empty means no exclusion
};

namespace detail {

inline void check_id(const std::string& id, const char* what) {
    if (id.empty()) throw input_error(std::string(what) + " id must be non-empty");
    for (unsigned char c : id)
        if (c <= 0x20)
            throw input_error(std::string(what) + " id contains whitespace or control bytes: \"" + id + "\"");
}

inline std::map<std::string, std::uint32_t> count_terms(const std::vector<std::string>& tokens) {
    std::map<std::string, std::uint32_t> counts;
    for (const auto& t : tokens) ++counts[t];
    return counts;
}

}  // namespace detail

inline Document make_document(std::string id, std::string_view text, const TokenizerConfig& config) {
    detail::check_id(id, "document");
    auto tokens = tokenize(text, config);
    Document d{std::move(id), detail::count_terms(tokens), tokens.size()};
    return d;
}

inline Query make_query(std::string id, std::string_view text, const TokenizerConfig& config,
                        std::string exclude_doc = {}) {
    detail::check_id(id, "query");
    auto tokens = tokenize(text, config);
    return Query{std::move(id), detail::count_terms(tokens), tokens.size(), std::move(exclude_doc)};
}

struct Posting {
    std::uint32_t doc = 0;  // ordinal into the doc table (ascending doc-id order)
    std::uint32_t tf = 0;

    bool operator==(const Posting&) const = default;
};

struct DocEntry {
    std::string id;
    std::uint64_t length = 0;

    bool operator==(const DocEntry&) const = default;
};

/// Immutable term -> postings map over a fixed document collection.
/// Ordinals follow ascending doc-id order, so posting lists are sorted
/// by doc id by construction. Safe for concurrent read-only use.
class InvertedIndex {
  public:
    InvertedIndex() = default;

    const CorpusStats& stats() const { return stats_; }
    std::size_t doc_count() const { return docs_.size(); }
    const std::vector<DocEntry>& docs() const { return docs_; }

    const std::string& doc_id(std::uint32_t ordinal) const { return docs_[ordinal].id; }
    std::uint64_t doc_length(std::uint32_t ordinal) const { return docs_[ordinal].length; }

    std::optional<std::uint32_t> ordinal(const std::string& doc_id) const {
        auto it = ordinals_.find(doc_id);
        if (it == ordinals_.end()) return std::nullopt;
        return it->second;
    }
    bool has_doc(const std::string& doc_id) const { return ordinals_.contains(doc_id); }

    const std::vector<Posting>* postings(const std::string& term) const {
        auto it = postings_.find(term);
        return it == postings_.end() ? nullptr : &it->second;
    }
    std::uint32_t doc_freq(const std::string& term) const {
        const auto* p = postings(term);
        return p ? static_cast<std::uint32_t>(p->size()) : 0;
    }
    std::uint64_t collection_freq(const std::string& term) const {
        auto it = stats_.collection_tf.find(term);
        return it == stats_.collection_tf.end() ? 0 : it->second;
    }
    const std::map<std::string, std::vector<Posting>>& all_postings() const { return postings_; }

    bool operator==(const InvertedIndex& other) const {
        return docs_ == other.docs_ && postings_ == other.postings_ && stats_ == other.stats_;
    }

    /// Assemble an index from a doc table and postings, recomputing the
    /// derived statistics and checking every structural invariant.
    /// Both build_index and load_index funnel through here.
    template <typename ErrorType = input_error>
    static InvertedIndex from_parts(std::vector<DocEntry> docs,
                                    std::map<std::string, std::vector<Posting>> postings) {
        if (docs.empty()) throw ErrorType("an index needs at least one document (avgdl is undefined otherwise)");
        InvertedIndex idx;
        idx.docs_ = std::move(docs);
        idx.postings_ = std::move(postings);
        if (!std::is_sorted(idx.docs_.begin(), idx.docs_.end(),
                            [](const DocEntry& a, const DocEntry& b) { return a.id < b.id; }))
            throw ErrorType("doc table must be sorted by id");
        for (std::uint32_t i = 0; i < idx.docs_.size(); ++i) {
            detail::check_id(idx.docs_[i].id, "document");
            if (!idx.ordinals_.emplace(idx.docs_[i].id, i).second)
                throw ErrorType("duplicate document id: \"" + idx.docs_[i].id + "\"");
        }
        std::vector<std::uint64_t> posted_tokens(idx.docs_.size(), 0);
        for (auto& [term, plist] : idx.postings_) {
            if (plist.empty()) throw ErrorType("empty posting list for term \"" + term + "\"");
            if (plist.size() > idx.docs_.size())
                throw ErrorType("df exceeds document count for term \"" + term + "\"");
            std::uint64_t ft = 0;
            for (std::size_t i = 0; i < plist.size(); ++i) {
                const Posting& p = plist[i];
                if (p.doc >= idx.docs_.size())
                    throw ErrorType("posting ordinal out of range for term \"" + term + "\"");
                if (p.tf < 1) throw ErrorType("posting with tf < 1 for term \"" + term + "\"");
                if (i > 0 && plist[i - 1].doc >= p.doc)
                    throw ErrorType("postings not strictly sorted by doc for term \"" + term + "\"");
                ft += p.tf;
                posted_tokens[p.doc] += p.tf;
            }
            idx.stats_.collection_tf.emplace(term, ft);
        }
        for (std::uint32_t i = 0; i < idx.docs_.size(); ++i) {
            if (posted_tokens[i] != idx.docs_[i].length)
                throw ErrorType("document \"" + idx.docs_[i].id +
                                "\" length disagrees with its posting frequencies");
            idx.stats_.total_tokens += idx.docs_[i].length;
        }
        idx.stats_.doc_count = idx.docs_.size();
        idx.stats_.avgdl = static_cast<double>(idx.stats_.total_tokens) /
                           static_cast<double>(idx.stats_.doc_count);
        return idx;
    }

  private:
    std::vector<DocEntry> docs_;
    std::unordered_map<std::string, std::uint32_t> ordinals_;
    std::map<std::string, std::vector<Posting>> postings_;
    CorpusStats stats_;
};

/// Tokenize and index a batch of (id, raw text) records.
inline InvertedIndex build_index(const std::vector<std::pair<std::string, std::string>>& records,
                                 const TokenizerConfig& config) {
    if (records.empty())
        throw input_error("cannot build an index from zero documents (avgdl is undefined)");
    std::vector<Document> parsed;
    parsed.reserve(records.size());
    for (const auto& [id, text] : records) parsed.push_back(make_document(id, text, config));
    std::sort(parsed.begin(), parsed.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < parsed.size(); ++i)
        if (parsed[i - 1].id == parsed[i].id)
            throw input_error("duplicate document id: \"" + parsed[i].id + "\"");

    std::vector<DocEntry> docs;
    docs.reserve(parsed.size());
    std::map<std::string, std::vector<Posting>> postings;
    for (std::uint32_t ord = 0; ord < parsed.size(); ++ord) {
        docs.push_back({parsed[ord].id, parsed[ord].length});
        for (const auto& [term, tf] : parsed[ord].terms) postings[term].push_back({ord, tf});
    }
    return InvertedIndex::from_parts(std::move(docs), std::move(postings));
}

inline constexpr const char* k_index_magic = "ranklab.index";
inline constexpr const char* k_index_version = "1";

/// Write an index as a self-describing text file. The layout is versioned
/// and deterministic; avgdl is stored as a hexfloat so a round trip
/// reproduces the exact bit pattern.
inline void save_index(const InvertedIndex& index, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open \"" + path.string() + "\" for writing");
    out << k_index_magic << ' ' << k_index_version << '\n';
    out << "stats " << index.stats().doc_count << ' ' << index.stats().total_tokens << ' '
        << std::hexfloat << index.stats().avgdl << std::defaultfloat << '\n';
    out << "docs " << index.doc_count() << '\n';
    for (const auto& d : index.docs()) out << "d " << d.id << ' ' << d.length << '\n';
    out << "terms " << index.all_postings().size() << '\n';
    for (const auto& [term, plist] : index.all_postings()) {
        out << "t " << term << ' ' << plist.size();
        for (const Posting& p : plist) out << ' ' << p.doc << ':' << p.tf;
        out << '\n';
    }
    out << "end\n";
    if (!out) throw io_error("failed while writing \"" + path.string() + "\"");
}

namespace detail {

inline double parse_hexfloat(const std::string& token, const std::filesystem::path& path) {
    const char* begin = token.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + token.size())
        throw malformed_file_error("bad float \"" + token + "\" in \"" + path.string() + "\"");
    return v;
}

}  // namespace detail

inline InvertedIndex load_index(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (!std::filesystem::exists(path))
            throw file_missing_error("index file not found: \"" + path.string() + "\"");
        throw io_error("cannot open \"" + path.string() + "\" for reading");
    }
    auto fail = [&](const std::string& why) -> malformed_file_error {
        return malformed_file_error("malformed index file \"" + path.string() + "\": " + why);
    };
    std::string magic, version;
    if (!(in >> magic >> version)) throw fail("missing header");
    if (magic != k_index_magic) throw fail("not a ranklab index file");
    if (version != k_index_version)
        throw version_mismatch_error("index file \"" + path.string() + "\" has version " + version +
                                     ", expected " + k_index_version);
    std::string tag;
    std::uint64_t doc_count = 0, total_tokens = 0;
    std::string avgdl_token;
    if (!(in >> tag >> doc_count >> total_tokens >> avgdl_token) || tag != "stats")
        throw fail("bad stats line");
    double stored_avgdl = detail::parse_hexfloat(avgdl_token, path);

    std::uint64_t n_docs = 0;
    if (!(in >> tag >> n_docs) || tag != "docs") throw fail("bad docs header");
    if (n_docs != doc_count) throw fail("docs header disagrees with stats");
    std::vector<DocEntry> docs;
    docs.reserve(n_docs);
    for (std::uint64_t i = 0; i < n_docs; ++i) {
        DocEntry d;
        if (!(in >> tag >> d.id >> d.length) || tag != "d") throw fail("truncated doc table");
        docs.push_back(std::move(d));
    }

    std::uint64_t n_terms = 0;
    if (!(in >> tag >> n_terms) || tag != "terms") throw fail("bad terms header");
    std::map<std::string, std::vector<Posting>> postings;
    for (std::uint64_t i = 0; i < n_terms; ++i) {
        std::string term;
        std::uint64_t df = 0;
        if (!(in >> tag >> term >> df) || tag != "t") throw fail("truncated postings");
        auto& plist = postings[term];
        plist.reserve(df);
        for (std::uint64_t p = 0; p < df; ++p) {
            std::string pair;
            if (!(in >> pair)) throw fail("truncated posting list for term \"" + term + "\"");
            auto colon = pair.find(':');
            if (colon == std::string::npos) throw fail("bad posting \"" + pair + "\"");
            Posting post;
            try {
                post.doc = static_cast<std::uint32_t>(std::stoul(pair.substr(0, colon)));
                post.tf = static_cast<std::uint32_t>(std::stoul(pair.substr(colon + 1)));
            } catch (const std::exception&) {
                throw fail("bad posting \"" + pair + "\"");
            }
            plist.push_back(post);
        }
    }
    if (!(in >> tag) || tag != "end") throw fail("missing end marker");

    InvertedIndex idx = InvertedIndex::from_parts<malformed_file_error>(std::move(docs), std::move(postings));
    if (idx.stats().total_tokens != total_tokens) throw fail("stats disagree with postings");
    if (idx.stats().avgdl != stored_avgdl) throw fail("stored avgdl disagrees with recomputation");
    return idx;
}

}  // namespace ranklab
