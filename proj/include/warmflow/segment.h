#ifndef WARMFLOW_SEGMENT_H_
#define WARMFLOW_SEGMENT_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "warmflow/flow_core.h"

namespace warmflow {

class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  int pixel_count() const { return width_ * height_; }
  int index(int x, int y) const { return y * width_ + x; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  void set(int x, int y, std::uint8_t v) { pixels_[index(x, y)] = v; }
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }

  bool operator==(const GrayImage&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

// Portable graymap, binary (P5) or plain (P2), maxval <= 255.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm_file(const std::string& path);
void write_pgm(std::ostream& out, const GrayImage& img);

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major
};

void write_ppm(std::ostream& out, const RgbImage& img);

struct Pixel {
  int x = 0;  // column
  int y = 0;  // row

  bool operator==(const Pixel&) const = default;
};

// Listed seed pixels; each expands to the Euclidean ball of `radius`.
struct SeedSet {
  std::vector<Pixel> object;
  std::vector<Pixel> background;
  int radius = 0;
};

// Text format: optional "radius r" header, then "O x y" / "B x y" lines.
// '#' starts a comment.
SeedSet parse_seeds(std::istream& in);
SeedSet read_seeds_file(const std::string& path);
void write_seeds(std::ostream& out, const SeedSet& seeds);

struct ExpandedSeeds {
  std::vector<int> object;      // pixel indices, ascending
  std::vector<int> background;  // pixel indices, ascending
};

// Rasterises the balls, clipped to the image. Throws Error on an
// out-of-bounds seed, an empty side, or overlap between the two sets.
ExpandedSeeds expand_seeds(const GrayImage& img, const SeedSet& seeds);

struct SegConfig {
  Amount penalty = 100;   // C
  double sigma = 50.0;
  Amount terminal = 0;    // M; 0 selects C * |V|^2 with |V| = pixels + 2
};

Amount seg_terminal_capacity(const SegConfig& cfg, int pixel_count);

// floor(C * exp(-(ip - iq)^2 / (2 sigma^2))).
Amount beta(int ip, int iq, const SegConfig& cfg);

struct SegNetwork {
  FlowNetwork network;
  int width = 0;
  int height = 0;
  ExpandedSeeds seeds;

  NodeId pixel_node(int pixel) const { return pixel; }
};

// Pixel p is node p (row-major), s = pixels, t = pixels + 1. Edge order:
// for each pixel, the pair with its right neighbour then the pair with the
// one below (p->q first), then s -> O arcs, then B -> t arcs.
SegNetwork build_seg_network(const GrayImage& img, const SeedSet& seeds,
                             const SegConfig& cfg);

// Object mask (true = object) from the source side of a min cut. Throws
// Error if a seed lands on the wrong side, which means a terminal arc was
// cut.
std::vector<bool> extract_segmentation(const SegNetwork& seg,
                                       const std::vector<bool>& source_side);

// Gray image with every pixel whose 4-neighbourhood spans both labels
// painted in the marker colour.
RgbImage render_overlay(const GrayImage& img, const std::vector<bool>& mask);

// Sum of beta over directed arcs leaving the object region.
Amount segmentation_energy(const SegNetwork& seg,
                           const std::vector<bool>& mask);

struct SyntheticSequenceConfig {
  int size = 64;
  int frames = 10;
  int object_size = 24;
  int shift_per_frame = 1;
  std::uint8_t object_level = 200;
  std::uint8_t background_level = 50;
  int noise = 6;  // uniform +/- noise added per pixel
  std::uint64_t seed = 1;
};

struct SyntheticSequence {
  std::vector<GrayImage> frames;
  SeedSet seeds;  // shared by every frame
};

// A bright square moving right on a dark background. Object seeds sit where
// the square is in every frame; background seeds sit in the four corners.
SyntheticSequence synthetic_sequence(const SyntheticSequenceConfig& cfg);

}  // namespace warmflow

#endif  // WARMFLOW_SEGMENT_H_
