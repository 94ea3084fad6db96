#include "mcbnc/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mcbnc/errors.hpp"

namespace mcbnc {

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::string_view strip_comment(std::string_view line) {
    auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

/// Non-empty, comment-free lines with their 1-based numbers.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        line = trim(strip_comment(line));
        if (!line.empty()) out.emplace_back(number, line);
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw InputError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

GraphText parse_graph_text(std::string_view text) {
    const auto lines = content_lines(text);
    if (lines.empty()) throw InputError("graph text is empty");

    auto [first_no, first] = lines.front();
    constexpr std::string_view header = "nodes:";
    if (first.substr(0, header.size()) != header) fail(first_no, "expected 'nodes:' header");
    std::vector<std::string> labels;
    std::string_view list = trim(first.substr(header.size()));
    while (!list.empty()) {
        auto comma = list.find(',');
        std::string_view item = trim(list.substr(0, comma));
        if (item.empty()) fail(first_no, "empty node label");
        labels.emplace_back(item);
        if (comma == std::string_view::npos) break;
        list = list.substr(comma + 1);
        if (trim(list).empty()) fail(first_no, "trailing comma in node list");
    }

    GraphText out;
    try {
        out.nodes = NodeSet(std::move(labels));
    } catch (const InputError& e) {
        fail(first_no, e.what());
    }

    for (std::size_t k = 1; k < lines.size(); ++k) {
        auto [no, line] = lines[k];
        auto arrow = line.find("->");
        auto dash = line.find("--");
        const bool directed = arrow != std::string_view::npos && (dash == std::string_view::npos || arrow < dash);
        const auto op = directed ? arrow : dash;
        if (op == std::string_view::npos) fail(no, "expected 'u -> v' or 'u -- v'");
        const std::string_view left = trim(line.substr(0, op));
        const std::string_view right = trim(line.substr(op + 2));
        auto a = out.nodes.find(left);
        auto b = out.nodes.find(right);
        if (!a) fail(no, "unknown node '" + std::string(left) + "'");
        if (!b) fail(no, "unknown node '" + std::string(right) + "'");
        if (*a == *b) fail(no, "self-loop on '" + std::string(left) + "'");
        if (directed)
            out.directed.push_back({*a, *b});
        else
            out.undirected.push_back(Link::of(*a, *b));
    }

    std::sort(out.directed.begin(), out.directed.end());
    out.directed.erase(std::unique(out.directed.begin(), out.directed.end()), out.directed.end());
    std::sort(out.undirected.begin(), out.undirected.end());
    out.undirected.erase(std::unique(out.undirected.begin(), out.undirected.end()), out.undirected.end());

    std::vector<Link> pairs = out.undirected;
    for (const Arc& a : out.directed) pairs.push_back(Link::of(a.from, a.to));
    std::sort(pairs.begin(), pairs.end());
    if (auto dup = std::adjacent_find(pairs.begin(), pairs.end()); dup != pairs.end()) {
        throw InputError("conflicting edges between '" + out.nodes.label(dup->a) + "' and '" +
                         out.nodes.label(dup->b) + "'");
    }
    return out;
}

Dag parse_dag(std::string_view text) {
    GraphText t = parse_graph_text(text);
    if (!t.undirected.empty()) throw InputError("undirected edge in a DAG file");
    return Dag(t.nodes, t.directed);
}

Pdag parse_pdag(std::string_view text) {
    GraphText t = parse_graph_text(text);
    return Pdag(t.nodes, t.directed, t.undirected);
}

namespace {

std::string node_line(const NodeSet& nodes) {
    std::string out = "nodes: ";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i) out += ',';
        out += nodes.labels()[i];
    }
    out += '\n';
    return out;
}

}  // namespace

std::string format_graph(const Dag& g) {
    std::string out = node_line(g.nodes());
    for (const Arc& a : g.arcs()) out += g.nodes().label(a.from) + " -> " + g.nodes().label(a.to) + "\n";
    return out;
}

std::string format_graph(const Pdag& g) {
    std::string out = node_line(g.nodes());
    for (const Arc& a : g.directed_arcs()) out += g.nodes().label(a.from) + " -> " + g.nodes().label(a.to) + "\n";
    for (const Link& l : g.undirected_links()) out += g.nodes().label(l.a) + " -- " + g.nodes().label(l.b) + "\n";
    return out;
}

Ordering parse_ordering(std::string_view text, const NodeSet& nodes) {
    std::vector<std::string> labels;
    for (auto [no, line] : content_lines(text)) {
        if (!nodes.find(line)) fail(no, "unknown node '" + std::string(line) + "' in ordering");
        labels.emplace_back(line);
    }
    return Ordering::from_labels(nodes, labels);
}

std::string format_ordering(const Ordering& sigma, const NodeSet& nodes) {
    std::string out;
    for (NodeId v : sigma.sequence()) out += nodes.label(v) + "\n";
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

namespace {

template <typename Parse>
auto read_with_context(const std::filesystem::path& path, Parse parse) {
    const std::string text = read_file(path);
    try {
        return parse(text);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    } catch (const StructuralError& e) {
        throw StructuralError(path.string() + ": " + e.what());
    }
}

}  // namespace

Dag read_dag(const std::filesystem::path& path) {
    return read_with_context(path, [](std::string_view t) { return parse_dag(t); });
}

Pdag read_pdag(const std::filesystem::path& path) {
    return read_with_context(path, [](std::string_view t) { return parse_pdag(t); });
}

}  // namespace mcbnc
