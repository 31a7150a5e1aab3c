#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rcdyn/graph.hpp"

namespace rcdyn {

/// Parses `{"n": <int>, "edges": [[u,v], ...]}`; file order is edge order.
Graph parse_graph_json(std::string_view text);
std::string graph_to_json(const Graph& g);
/// Compact label such as `n3:0-1,1-2`.
std::string describe_graph(const Graph& g);
Graph load_graph_file(const std::filesystem::path& path);

/// Builtin names: `torus:L,d`, `path:n`, `cycle:n`, `complete:n`, `star:n`.
Graph make_builtin_graph(std::string_view spec);
bool is_builtin_graph_spec(std::string_view spec);

/// Builtin spec if it parses as one, otherwise a JSON file path.
Graph resolve_graph_source(std::string_view source);

}  // namespace rcdyn
