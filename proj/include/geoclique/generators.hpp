#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "geoclique/geometry.hpp"
#include "geoclique/hardness.hpp"
#include "geoclique/segment_cliques.hpp"

namespace geoclique {

class GeneratorTimeout : public std::runtime_error {
 public:
  explicit GeneratorTimeout(const std::string& what);
};

// All generators are deterministic functions of (parameters, seed): raw
// mt19937_64 draws are standardized, and no std::uniform_*_distribution
// (whose mapping is implementation defined) is involved, so instance bytes
// reproduce everywhere.

// n grounded segments with exactly one squared length. Directions are
// rational points of the unit circle, ((1-t^2), 2t)/(1+t^2), so unit length
// needs no radicals. Output passes validate().
std::vector<GroundedSegment> gen_unit_segments(int n, std::uint64_t seed);

// n grounded segments whose free endpoints all lie on k random non-ground
// lines; the lines come back in the instance. Output passes validate().
SegmentInstance gen_klines_instance(int n, int k, std::uint64_t seed);

// n grounded disks with small rational centers and radii.
std::vector<GroundedDisk> gen_grounded_disks(int n, std::uint64_t seed);

// n pairwise-intersecting disks with radii in [r_min, r_max] (subset of
// [1, 3]); rejection sampling with restarts. Throws GeneratorTimeout if the
// target count is infeasible for the attempt budget.
std::vector<Disk> gen_intersecting_disks(int n, double r_min, double r_max, std::uint64_t seed);

// n disks with radii in [r_min, r_max] sharing a common point (Helly case).
std::vector<Disk> gen_helly_disks(int n, double r_min, double r_max, std::uint64_t seed);

// A rooted plane tree of at most max_vertices vertices (depth capped at 4)
// together with an admissible extension: up to two vertex-disjoint 3- or
// 4-vertex paths between consecutive same-level leaves, interior ids numbered
// from node_count. Union size stays within max_vertices.
std::pair<TreeSpec, ExtensionSpec> gen_tree_extension(int max_vertices, std::uint64_t seed);

// Uniform helpers over raw engine draws (public: tests reuse them).
std::uint64_t rnd_below(std::mt19937_64& rng, std::uint64_t bound);  // [0, bound)
long rnd_range(std::mt19937_64& rng, long lo, long hi);              // [lo, hi]
double rnd_unit(std::mt19937_64& rng);                               // [0, 1)

}  // namespace geoclique
