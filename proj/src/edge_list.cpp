#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>
#include <unordered_set>

#include "sgmatch/error.hpp"
#include "sgmatch/experiments.hpp"

namespace sgmatch::experiments {
namespace {

std::string_view strip_comment(std::string_view line) {
    if (auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
    return line;
}

// Reads whitespace-separated unsigned integers; false on anything else.
bool read_integers(std::string_view text, std::vector<std::size_t>& out) {
    out.clear();
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
        if (i == text.size()) break;
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec != std::errc() || ptr == text.data() + i) return false;
        i = static_cast<std::size_t>(ptr - text.data());
        if (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r') return false;
        out.push_back(value);
    }
    return true;
}

}  // namespace

EdgeListFile parse_edge_list(std::istream& in, bool compact) {
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;
    std::size_t duplicates = 0, max_id = 0, line_no = 0;
    bool any = false;
    std::string line;
    std::vector<std::size_t> ints;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view body = strip_comment(line);
        if (!read_integers(body, ints))
            throw ParseError("expected two non-negative integers", line_no);
        if (ints.empty()) continue;
        if (ints.size() != 2) throw ParseError("expected two non-negative integers", line_no);
        const std::size_t u = std::min(ints[0], ints[1]), v = std::max(ints[0], ints[1]);
        if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), line_no);
        if (v >= (std::size_t{1} << 32)) throw ParseError("vertex id too large", line_no);
        if (!seen.insert((std::uint64_t(u) << 32) | v).second) {
            ++duplicates;
            continue;
        }
        edges.push_back({u, v});
        max_id = std::max(max_id, v);
        any = true;
    }

    EdgeListFile out;
    out.duplicates_removed = duplicates;
    std::size_t order = any ? max_id + 1 : 0;
    if (compact) {
        std::vector<std::size_t> ids;
        for (const Edge& e : edges) {
            ids.push_back(e.u);
            ids.push_back(e.v);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        out.compacted = ids.size() != order;
        for (Edge& e : edges) {
            e.u = std::size_t(std::lower_bound(ids.begin(), ids.end(), e.u) - ids.begin());
            e.v = std::size_t(std::lower_bound(ids.begin(), ids.end(), e.v) - ids.begin());
        }
        order = ids.size();
        out.original_id = std::move(ids);
    } else {
        out.original_id.resize(order);
        for (std::size_t i = 0; i < order; ++i) out.original_id[i] = i;
    }
    out.graph = Graph(order, edges);
    return out;
}

EdgeListFile ingest_edge_list(const std::filesystem::path& path, bool compact) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0);
    return parse_edge_list(in, compact);
}

std::vector<std::pair<std::size_t, std::size_t>> parse_seed_pairs(std::istream& in) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::string line;
    std::vector<std::size_t> ints;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!read_integers(strip_comment(line), ints) || (ints.size() != 0 && ints.size() != 2))
            throw ParseError("expected \"g_vertex h_vertex\"", line_no);
        if (ints.size() == 2) out.emplace_back(ints[0], ints[1]);
    }
    return out;
}

}  // namespace sgmatch::experiments
