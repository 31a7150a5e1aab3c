#include "rcdyn/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "rcdyn/errors.hpp"

namespace rcdyn {

using nlohmann::json;

Graph parse_graph_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParameterError(std::string("graph JSON: ") + err.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
    throw ParameterError("graph JSON must be an object with \"n\" and \"edges\"");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 0) {
    throw ParameterError("graph JSON: \"n\" must be a non-negative integer");
  }
  const auto n = doc["n"].get<std::size_t>();
  std::vector<Edge> edges;
  for (const auto& pair : doc["edges"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() || !pair[1].is_number_integer() ||
        pair[0].get<long long>() < 0 || pair[1].get<long long>() < 0) {
      throw ParameterError("graph JSON: each edge must be a pair of non-negative integers");
    }
    edges.push_back({pair[0].get<Vertex>(), pair[1].get<Vertex>()});
  }
  return Graph(n, std::move(edges));
}

std::string describe_graph(const Graph& g) {
  std::string out = "n" + std::to_string(g.num_vertices()) + ":";
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (e > 0) out += ',';
    out += std::to_string(g.edge(e).u) + "-" + std::to_string(g.edge(e).v);
  }
  return out;
}

std::string graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  return json{{"n", g.num_vertices()}, {"edges", edges}}.dump();
}

Graph load_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_json(buf.str());
}

namespace {

struct BuiltinSpec {
  std::string_view name;
  std::vector<std::size_t> args;
};

bool parse_size(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool split_builtin(std::string_view spec, BuiltinSpec& out) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) return false;
  out.name = spec.substr(0, colon);
  if (out.name != "torus" && out.name != "path" && out.name != "cycle" && out.name != "complete" &&
      out.name != "star") {
    return false;
  }
  std::string_view rest = spec.substr(colon + 1);
  out.args.clear();
  while (true) {
    auto comma = rest.find(',');
    std::size_t value = 0;
    if (!parse_size(rest.substr(0, comma), value)) return false;
    out.args.push_back(value);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return true;
}

}  // namespace

bool is_builtin_graph_spec(std::string_view spec) {
  BuiltinSpec parsed;
  return split_builtin(spec, parsed);
}

Graph make_builtin_graph(std::string_view spec) {
  BuiltinSpec parsed;
  if (!split_builtin(spec, parsed)) throw ParameterError("unrecognised graph spec '" + std::string(spec) + "'");
  const auto expect = [&](std::size_t count) {
    if (parsed.args.size() != count) {
      throw ParameterError("graph spec '" + std::string(spec) + "' expects " + std::to_string(count) +
                           " argument(s)");
    }
  };
  if (parsed.name == "torus") {
    expect(2);
    return make_torus(parsed.args[0], parsed.args[1]);
  }
  expect(1);
  if (parsed.name == "path") return make_path(parsed.args[0]);
  if (parsed.name == "cycle") return make_cycle(parsed.args[0]);
  if (parsed.name == "complete") return make_complete(parsed.args[0]);
  return make_star(parsed.args[0]);
}

Graph resolve_graph_source(std::string_view source) {
  for (std::string_view name : {"torus:", "path:", "cycle:", "complete:", "star:"}) {
    if (source.starts_with(name)) return make_builtin_graph(source);
  }
  return load_graph_file(std::filesystem::path(std::string(source)));
}

}  // namespace rcdyn
