#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mcbnc/graph.hpp"
#include "mcbnc/pdag.hpp"

namespace mcbnc {

/// Line-oriented graph text:
///
///     # comment
///     nodes: a,b,c
///     a -> b
///     b -- c
///
/// The `nodes:` line comes first; edge lines may appear in any order. `--`
/// (undirected) lines are only accepted where a PDAG is expected. Writers emit
/// directed arcs, then undirected links, each sorted by label.
struct GraphText {
    NodeSet nodes;
    std::vector<Arc> directed;
    std::vector<Link> undirected;
};

/// Throws InputError with a line number on malformed input.
GraphText parse_graph_text(std::string_view text);

Dag parse_dag(std::string_view text);
Pdag parse_pdag(std::string_view text);

std::string format_graph(const Dag& g);
std::string format_graph(const Pdag& g);

/// One label per line; blank lines and `#` comments ignored.
Ordering parse_ordering(std::string_view text, const NodeSet& nodes);
std::string format_ordering(const Ordering& sigma, const NodeSet& nodes);

/// Whole-file helpers; failures raise IoError naming the path.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

Dag read_dag(const std::filesystem::path& path);
Pdag read_pdag(const std::filesystem::path& path);

}  // namespace mcbnc
