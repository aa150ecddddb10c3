#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoclique/geometry.hpp"
#include "geoclique/graph.hpp"
#include "geoclique/segment_cliques.hpp"

namespace geoclique {

// Rooted tree with a plane embedding. Vertices are 0..node_count-1;
// children[v] lists v's children in clockwise embedding order, which is also
// the order the breadth-first traversal visits them.
struct TreeSpec {
  int node_count = 0;
  int root = 0;
  std::vector<std::vector<int>> children;
};

void validate(const TreeSpec& t);  // throws std::invalid_argument

// Breadth-first levels: levels[0] = {root}, levels[j] = concatenation of the
// children of levels[j-1] in order. Every vertex appears exactly once.
std::vector<std::vector<int>> tree_levels(const TreeSpec& t);

// Vertex-disjoint paths attached to the tree. Each path is an ordered vertex
// list whose two ends are consecutive same-level leaves of the tree and whose
// interior vertices are new: they use ids node_count, node_count+1, ...
struct ExtensionSpec {
  std::vector<std::vector<int>> paths;
};

// Structural admissibility check. Returns human-readable violations, empty
// when p is admissible for t; never throws.
std::vector<std::string> validate_extension(const TreeSpec& t, const ExtensionSpec& p);

// Vertices of the combined graph: tree vertices first, then path interiors.
int union_vertex_count(const TreeSpec& t, const ExtensionSpec& p);

// The combined graph itself: tree edges plus consecutive path edges.
// pre: validate_extension(t, p) is empty.
Graph union_graph(const TreeSpec& t, const ExtensionSpec& p);

class ConstructionFailed : public std::runtime_error {
 public:
  // Vertices of the first adjacency mismatch, when one was recorded.
  int a = -1;
  int b = -1;
  explicit ConstructionFailed(const std::string& what);
  ConstructionFailed(const std::string& what, int a, int b);
};

// Max coordinate size of the rays added at one construction level, in bits.
struct LevelBits {
  int level = 0;
  std::size_t num_bits = 0;
  std::size_t den_bits = 0;
};

// An exact arrangement of upward rays together with its intersection graph.
// sails records the rays of each constructed sail in extremal-path order.
struct RaySystem {
  std::vector<UpwardRay> rays;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> sails;
  Graph graph;
  std::vector<LevelBits> level_bits;
};

// Two interleaved sails of k_prime rays each, L1..L_{2k'}: odd indices lean
// left, even lean right, matching |slope| per pair and flattening as the
// index grows. For every i >= 2 the origin of L_i lies on L_{i-1} and L_i
// crosses every other ray; both extremal paths are verified to be outerpaths
// (on each ray, the crossing parameters increase with the other ray's sail
// position). All properties are asserted exactly; throws ConstructionFailed
// if the offset ladder never satisfies them. pre: k_prime >= 1.
RaySystem build_sail_skeleton(int k_prime);

// Upward-ray representation of the complement of the combined graph: ray i
// is vertex i, and the exact intersection graph equals
// union_graph(t, p).complement(), verified edge by edge.
//
// Construction is level by level, alternating lean with the level parity.
// The rays of one level form a near-pencil: each points into a zone next to
// one far point on the level's side, flatter than every earlier same-lean
// ray, so level mates cross each other far beyond everything built before.
// Each origin sits just above its host ray (the tree parent, or an endpoint
// leaf of the path for interiors) inside an open arrangement cell, which
// fixes by sidedness exactly which earlier rays the newcomer crosses. The
// remaining freedom, a horizontal offset of the aim point, is solved per
// member: every required crossing, ordering and corner condition is affine
// in the offset, and the first admissible cell of the root partition of
// those functions is taken, probing tightly next to knot-ordering roots and
// the middles of cells elsewhere. The second interior vertex of a 4-vertex
// path reuses the first one's direction, so the two rays never meet.
RaySystem build_upward_ray_complement(const TreeSpec& t, const ExtensionSpec& p);

// Clip every ray at a horizontal line above all pairwise supporting-line
// crossings and all origins, then flip vertically so the line becomes the
// ground. The exact intersection graph is preserved (asserted). Ray origins
// become free endpoints; an origin lying on another ray (a skeleton, per the
// on-previous-ray rule) therefore yields an instance that fails the strict
// instance validation even though the graph is exact.
SegmentInstance rays_to_grounded_segments(const RaySystem& r);

class MarginTooSmall : public std::runtime_error {
 public:
  int a = -1;
  int b = -1;
  MarginTooSmall(const std::string& what, int a, int b);
};

struct StabbedSegment {
  double ax = 0, ay = 0;  // free end, above the stab line
  double bx = 0, by = 0;  // extended end, below it
};

// Equal-length segments all crossing the horizontal stab line.
struct StabbedUnitInstance {
  std::vector<StabbedSegment> segments;
  double stab_y = 0.0;
  double length = 0.0;
};

// Extend every grounded segment beyond the ground line to the common length
// 1.25 * max input length; the ground line becomes the stab line. Coordinates
// are rescaled by an exact power of two into double range first (a uniform
// scale fixes the ground line and preserves the graph). The result is
// re-verified in floating point against the exact input graph: intersecting
// pairs must still intersect, and disjoint pairs must stay farther apart than
// 1e-6 of the instance diameter, else MarginTooSmall. Lengths agree with the
// common length to 1e-12 relative. pre: input from rays_to_grounded_segments,
// so no crossings appear beyond the ground line.
StabbedUnitInstance grounded_to_stabbed_unit(const SegmentInstance& s);

}  // namespace geoclique
