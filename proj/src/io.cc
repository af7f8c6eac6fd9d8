#include "warmflow/io.h"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace warmflow {

ParseError::ParseError(const std::string& what, int line)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

namespace {

// Splits text into lines without allocating per token.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const std::size_t end = text_.find('\n', pos_);
    const std::size_t stop = end == std::string_view::npos ? text_.size() : end;
    line = text_.substr(pos_, stop - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = stop + 1;
    ++number_;
    return true;
  }
  int number() const { return number_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int number_ = 0;
};

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::optional<std::int64_t> to_int(std::string_view field) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

FlowNetwork parse_dimacs(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  std::optional<std::int64_t> nodes;
  std::int64_t declared_arcs = 0;
  std::optional<NodeId> source;
  std::optional<NodeId> sink;
  std::vector<Edge> edges;

  auto node_id = [&](std::string_view field) -> NodeId {
    const auto id = to_int(field);
    if (!id) throw ParseError("bad node id '" + std::string(field) + "'", reader.number());
    if (*id < 1 || *id > *nodes) {
      throw ParseError("node id " + std::to_string(*id) + " out of range",
                       reader.number());
    }
    return static_cast<NodeId>(*id - 1);
  };

  while (reader.next(line)) {
    const auto fields = split_fields(line);
    if (fields.empty() || fields[0] == "c") continue;
    const std::string_view kind = fields[0];
    if (kind == "p") {
      if (nodes) throw ParseError("duplicate problem line", reader.number());
      if (fields.size() != 4 || fields[1] != "max") {
        throw ParseError("expected 'p max <nodes> <arcs>'", reader.number());
      }
      const auto n = to_int(fields[2]);
      const auto m = to_int(fields[3]);
      if (!n || !m || *n < 2 || *m < 0) {
        throw ParseError("bad problem sizes", reader.number());
      }
      nodes = *n;
      declared_arcs = *m;
      edges.reserve(static_cast<std::size_t>(*m));
      continue;
    }
    if (!nodes) {
      throw ParseError("'" + std::string(kind) + "' line before problem line",
                       reader.number());
    }
    if (kind == "n") {
      if (fields.size() != 3) throw ParseError("expected 'n <id> s|t'", reader.number());
      const NodeId id = node_id(fields[1]);
      if (fields[2] == "s") {
        if (source) throw ParseError("duplicate source line", reader.number());
        source = id;
      } else if (fields[2] == "t") {
        if (sink) throw ParseError("duplicate sink line", reader.number());
        sink = id;
      } else {
        throw ParseError("node designator must be s or t", reader.number());
      }
    } else if (kind == "a") {
      if (fields.size() != 4) {
        throw ParseError("expected 'a <tail> <head> <cap>'", reader.number());
      }
      const NodeId tail = node_id(fields[1]);
      const NodeId head = node_id(fields[2]);
      const auto cap = to_int(fields[3]);
      if (!cap || *cap < 0) throw ParseError("bad capacity", reader.number());
      if (tail == head) throw ParseError("self-loop arc", reader.number());
      edges.push_back({tail, head, *cap});
    } else {
      throw ParseError("unknown line type '" + std::string(kind) + "'",
                       reader.number());
    }
  }
  if (!nodes) throw ParseError("missing problem line", 0);
  if (!source) throw ParseError("missing source node line", 0);
  if (!sink) throw ParseError("missing sink node line", 0);
  if (static_cast<std::int64_t>(edges.size()) != declared_arcs) {
    throw ParseError("problem line declares " + std::to_string(declared_arcs) +
                         " arcs but " + std::to_string(edges.size()) +
                         " were given",
                     0);
  }
  if (*source == *sink) throw ParseError("source and sink coincide", 0);
  return FlowNetwork(static_cast<NodeId>(*nodes), *source, *sink,
                     std::move(edges));
}

std::string write_dimacs(const FlowNetwork& net) {
  std::ostringstream out;
  out << "p max " << net.node_count() << ' ' << net.edge_count() << '\n';
  out << "n " << net.source() + 1 << " s\n";
  out << "n " << net.sink() + 1 << " t\n";
  for (const Edge& e : net.edges()) {
    out << "a " << e.tail + 1 << ' ' << e.head + 1 << ' ' << e.capacity << '\n';
  }
  return out.str();
}

Flow parse_flow(std::string_view text) {
  LineReader reader(text);
  std::string_view line;
  std::optional<std::int64_t> count;
  std::vector<Amount> values;
  while (reader.next(line)) {
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    if (!count) {
      if (fields.size() != 2 || fields[0] != "f") {
        throw ParseError("expected 'f <edge_count>'", reader.number());
      }
      count = to_int(fields[1]);
      if (!count || *count < 0) throw ParseError("bad edge count", reader.number());
      values.reserve(static_cast<std::size_t>(*count));
      continue;
    }
    if (fields.size() != 1) throw ParseError("expected one value", reader.number());
    const auto v = to_int(fields[0]);
    if (!v) throw ParseError("bad flow value", reader.number());
    if (*v < 0) throw ParseError("negative flow value", reader.number());
    if (static_cast<std::int64_t>(values.size()) == *count) {
      throw ParseError("more values than the header declares", reader.number());
    }
    values.push_back(*v);
  }
  if (!count) throw ParseError("missing 'f' header", 0);
  if (static_cast<std::int64_t>(values.size()) != *count) {
    throw ParseError("truncated flow file: expected " + std::to_string(*count) +
                         " values, got " + std::to_string(values.size()),
                     0);
  }
  return Flow(std::move(values));
}

std::string write_flow(const Flow& f) {
  std::ostringstream out;
  out << "f " << f.size() << '\n';
  for (const Amount v : f.values()) out << v << '\n';
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed for '" + path + "'");
}

std::string grid_spec_to_json(const GridSpec& spec) {
  nlohmann::json j;
  j["side"] = spec.side;
  j["big_capacity"] = grid_big_capacity(spec);
  j["attachment"] = spec.attachment == Attachment::kDense ? "dense" : "witness";
  j["source_cells"] = spec.source_cells;
  j["sink_cells"] = spec.sink_cells;
  std::vector<std::string> rows;
  for (int r = 0; r < spec.side; ++r) {
    std::string row;
    for (int c = 0; c < spec.side; ++c) {
      row.push_back(spec.region.contains(r, c) ? '1' : '0');
    }
    rows.push_back(std::move(row));
  }
  j["region"] = rows;
  return j.dump(2) + "\n";
}

GridSpec grid_spec_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    GridSpec spec;
    spec.side = j.at("side").get<int>();
    spec.big_capacity = j.value("big_capacity", Amount{0});
    const std::string attachment = j.value("attachment", "dense");
    if (attachment == "dense") {
      spec.attachment = Attachment::kDense;
    } else if (attachment == "witness") {
      spec.attachment = Attachment::kWitness;
    } else {
      throw Error("grid spec: unknown attachment '" + attachment + "'");
    }
    spec.source_cells = j.value("source_cells", std::vector<int>{});
    spec.sink_cells = j.value("sink_cells", std::vector<int>{});
    const auto rows = j.at("region").get<std::vector<std::string>>();
    if (static_cast<int>(rows.size()) != spec.side) {
      throw Error("grid spec: region row count does not match side");
    }
    std::vector<std::uint8_t> cells;
    for (const std::string& row : rows) {
      if (static_cast<int>(row.size()) != spec.side) {
        throw Error("grid spec: region row length does not match side");
      }
      for (char ch : row) {
        if (ch != '0' && ch != '1') throw Error("grid spec: region must be 0/1");
        cells.push_back(ch == '1' ? 1 : 0);
      }
    }
    spec.region = PartitionMask(spec.side, std::move(cells));
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("grid spec: ") + e.what());
  }
}

}  // namespace warmflow
