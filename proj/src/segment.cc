#include "warmflow/segment.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace warmflow {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : GrayImage(width, height,
                std::vector<std::uint8_t>(
                    static_cast<std::size_t>(std::max(width, 0)) *
                        static_cast<std::size_t>(std::max(height, 0)),
                    fill)) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width <= 0 || height <= 0) throw Error("image dimensions must be positive");
  if (pixels_.size() != static_cast<std::size_t>(width) * height) {
    throw Error("pixel buffer does not match image dimensions");
  }
}

namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string token;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      if (!token.empty()) break;
      continue;
    }
    if (std::isspace(ch)) {
      if (!token.empty()) break;
      continue;
    }
    token.push_back(static_cast<char>(ch));
  }
  return token;
}

int parse_header_int(std::istream& in, const char* what) {
  const std::string token = next_token(in);
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw Error(std::string("pgm: bad ") + what + " '" + token + "'");
  }
}

}  // namespace

GrayImage read_pgm(std::istream& in) {
  const std::string magic = next_token(in);
  if (magic != "P5" && magic != "P2") {
    throw Error("pgm: unsupported magic '" + magic + "'");
  }
  const int width = parse_header_int(in, "width");
  const int height = parse_header_int(in, "height");
  const int maxval = parse_header_int(in, "maxval");
  if (width <= 0 || height <= 0) throw Error("pgm: non-positive dimensions");
  if (maxval <= 0 || maxval > 255) throw Error("pgm: maxval must be 1..255");

  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height);
  if (magic == "P5") {
    in.read(reinterpret_cast<char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(pixels.size())) {
      throw Error("pgm: truncated raster");
    }
  } else {
    for (auto& p : pixels) {
      int v = 0;
      if (!(in >> v)) throw Error("pgm: truncated raster");
      if (v < 0 || v > maxval) throw Error("pgm: sample out of range");
      p = static_cast<std::uint8_t>(v);
    }
  }
  for (auto& p : pixels) {
    if (p > maxval) throw Error("pgm: sample out of range");
    if (maxval != 255) p = static_cast<std::uint8_t>(p * 255 / maxval);
  }
  return GrayImage(width, height, std::move(pixels));
}

GrayImage read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open image '" + path + "'");
  return read_pgm(in);
}

void write_pgm(std::ostream& out, const GrayImage& img) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels().data()),
            static_cast<std::streamsize>(img.pixels().size()));
}

void write_ppm(std::ostream& out, const RgbImage& img) {
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.rgb.data()),
            static_cast<std::streamsize>(img.rgb.size()));
}

SeedSet parse_seeds(std::istream& in) {
  SeedSet seeds;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind)) continue;
    auto fail = [&] {
      throw Error("seeds: malformed line " + std::to_string(line_no));
    };
    if (kind == "radius") {
      if (!(fields >> seeds.radius) || seeds.radius < 0) fail();
    } else if (kind == "O" || kind == "B") {
      Pixel p;
      if (!(fields >> p.x >> p.y)) fail();
      (kind == "O" ? seeds.object : seeds.background).push_back(p);
    } else {
      fail();
    }
    std::string extra;
    if (fields >> extra) fail();
  }
  return seeds;
}

SeedSet read_seeds_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open seed file '" + path + "'");
  return parse_seeds(in);
}

void write_seeds(std::ostream& out, const SeedSet& seeds) {
  out << "radius " << seeds.radius << '\n';
  for (const Pixel& p : seeds.object) out << "O " << p.x << ' ' << p.y << '\n';
  for (const Pixel& p : seeds.background) {
    out << "B " << p.x << ' ' << p.y << '\n';
  }
}

ExpandedSeeds expand_seeds(const GrayImage& img, const SeedSet& seeds) {
  const int r = seeds.radius;
  auto expand = [&](const std::vector<Pixel>& centers) {
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(img.pixel_count()), 0);
    for (const Pixel& c : centers) {
      if (!img.in_bounds(c.x, c.y)) throw Error("seed out of bounds");
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (dx * dx + dy * dy > r * r) continue;
          if (img.in_bounds(c.x + dx, c.y + dy)) {
            hit[img.index(c.x + dx, c.y + dy)] = 1;
          }
        }
      }
    }
    std::vector<int> out;
    for (int p = 0; p < img.pixel_count(); ++p) {
      if (hit[p]) out.push_back(p);
    }
    return out;
  };
  ExpandedSeeds out{expand(seeds.object), expand(seeds.background)};
  if (out.object.empty()) throw Error("no object seeds");
  if (out.background.empty()) throw Error("no background seeds");
  std::vector<int> overlap;
  std::set_intersection(out.object.begin(), out.object.end(),
                        out.background.begin(), out.background.end(),
                        std::back_inserter(overlap));
  if (!overlap.empty()) throw Error("object and background seeds overlap");
  return out;
}

Amount seg_terminal_capacity(const SegConfig& cfg, int pixel_count) {
  if (cfg.terminal > 0) return cfg.terminal;
  const Amount v = static_cast<Amount>(pixel_count) + 2;
  return cfg.penalty * v * v;
}

Amount beta(int ip, int iq, const SegConfig& cfg) {
  const double diff = static_cast<double>(ip - iq);
  const double weight = static_cast<double>(cfg.penalty) *
                        std::exp(-(diff * diff) / (2.0 * cfg.sigma * cfg.sigma));
  return static_cast<Amount>(std::floor(weight));
}

SegNetwork build_seg_network(const GrayImage& img, const SeedSet& seeds,
                             const SegConfig& cfg) {
  if (cfg.penalty <= 0 || cfg.sigma <= 0) {
    throw Error("segmentation config: C and sigma must be positive");
  }
  ExpandedSeeds expanded = expand_seeds(img, seeds);
  const int w = img.width();
  const int h = img.height();
  const NodeId s = img.pixel_count();
  const NodeId t = s + 1;
  const Amount big = seg_terminal_capacity(cfg, img.pixel_count());

  std::vector<Edge> edges;
  edges.reserve(4 * static_cast<std::size_t>(img.pixel_count()) +
                expanded.object.size() + expanded.background.size());
  auto add_pair = [&](int p, int q) {
    const Amount cap = beta(img.pixels()[p], img.pixels()[q], cfg);
    edges.push_back({p, q, cap});
    edges.push_back({q, p, cap});
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int p = img.index(x, y);
      if (x + 1 < w) add_pair(p, p + 1);
      if (y + 1 < h) add_pair(p, p + w);
    }
  }
  for (int p : expanded.object) edges.push_back({s, p, big});
  for (int p : expanded.background) edges.push_back({p, t, big});
  return {FlowNetwork(img.pixel_count() + 2, s, t, std::move(edges)), w, h,
          std::move(expanded)};
}

std::vector<bool> extract_segmentation(const SegNetwork& seg,
                                       const std::vector<bool>& source_side) {
  const int pixels = seg.width * seg.height;
  if (source_side.size() != static_cast<std::size_t>(pixels) + 2) {
    throw Error("cut does not match segmentation network");
  }
  for (int p : seg.seeds.object) {
    if (!source_side[p]) throw Error("cut severs an object seed arc");
  }
  for (int p : seg.seeds.background) {
    if (source_side[p]) throw Error("cut severs a background seed arc");
  }
  return std::vector<bool>(source_side.begin(), source_side.begin() + pixels);
}

RgbImage render_overlay(const GrayImage& img, const std::vector<bool>& mask) {
  if (mask.size() != static_cast<std::size_t>(img.pixel_count())) {
    throw Error("mask does not match image");
  }
  RgbImage out{img.width(), img.height(), {}};
  out.rgb.reserve(3 * static_cast<std::size_t>(img.pixel_count()));
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const bool label = mask[img.index(x, y)];
      bool edge = false;
      constexpr int kDx[] = {1, -1, 0, 0};
      constexpr int kDy[] = {0, 0, 1, -1};
      for (int k = 0; k < 4 && !edge; ++k) {
        const int nx = x + kDx[k];
        const int ny = y + kDy[k];
        edge = img.in_bounds(nx, ny) && mask[img.index(nx, ny)] != label;
      }
      if (edge) {
        out.rgb.insert(out.rgb.end(), {255, 0, 0});
      } else {
        const std::uint8_t g = img.at(x, y);
        out.rgb.insert(out.rgb.end(), {g, g, g});
      }
    }
  }
  return out;
}

Amount segmentation_energy(const SegNetwork& seg,
                           const std::vector<bool>& mask) {
  const int pixels = seg.width * seg.height;
  Amount total = 0;
  for (const Edge& e : seg.network.edges()) {
    if (e.tail >= pixels || e.head >= pixels) continue;
    if (mask[e.tail] && !mask[e.head]) total += e.capacity;
  }
  return total;
}

SyntheticSequence synthetic_sequence(const SyntheticSequenceConfig& cfg) {
  const int travel = (cfg.frames - 1) * cfg.shift_per_frame;
  if (cfg.frames < 1 || cfg.object_size <= travel ||
      cfg.object_size + travel + 4 > cfg.size) {
    throw Error("synthetic sequence: object does not fit its path");
  }
  const int top = (cfg.size - cfg.object_size) / 2;
  const int left = (cfg.size - cfg.object_size - travel) / 2;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> noise(-cfg.noise, cfg.noise);
  SyntheticSequence seq;
  for (int k = 0; k < cfg.frames; ++k) {
    GrayImage img(cfg.size, cfg.size);
    const int x0 = left + k * cfg.shift_per_frame;
    for (int y = 0; y < cfg.size; ++y) {
      for (int x = 0; x < cfg.size; ++x) {
        const bool inside = y >= top && y < top + cfg.object_size && x >= x0 &&
                            x < x0 + cfg.object_size;
        const int base = inside ? cfg.object_level : cfg.background_level;
        img.set(x, y, static_cast<std::uint8_t>(
                          std::clamp(base + noise(rng), 0, 255)));
      }
    }
    seq.frames.push_back(std::move(img));
  }

  // Columns covered by the object in every frame: [left + travel, left + size).
  const int radius = std::max(1, cfg.size / 30);
  const int cx = (left + travel + left + cfg.object_size - 1) / 2;
  const int cy = top + cfg.object_size / 2;
  seq.seeds.radius = radius;
  seq.seeds.object = {{cx, cy}};
  const int lo = radius;
  const int hi = cfg.size - 1 - radius;
  seq.seeds.background = {{lo, lo}, {hi, lo}, {lo, hi}, {hi, hi}};
  return seq;
}

}  // namespace warmflow
