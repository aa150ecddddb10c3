#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "geoclique/clique_solvers.hpp"
#include "geoclique/geometry.hpp"
#include "geoclique/graph.hpp"

namespace geoclique {

// A set of grounded segments, optionally with the small family of lines that
// carries every free endpoint (the fixed-lines algorithms require it).
struct SegmentInstance {
  std::vector<GroundedSegment> segments;
  std::optional<std::vector<LineEq>> endpoint_lines;
};

// Rejects: non-positive heights, duplicate ground points, duplicate free
// endpoints, a free endpoint lying on another segment, or (when lines are
// present) a free endpoint not covered by any line.
void validate(const SegmentInstance& inst);

class NotIntersecting : public std::invalid_argument {
 public:
  NotIntersecting(int a, int b);
};

class NotUnitLength : public std::invalid_argument {
 public:
  NotUnitLength();
};

class DegenerateLines : public std::runtime_error {
 public:
  DegenerateLines(int a, int b);
};

class TooManyLines : public std::invalid_argument {
 public:
  TooManyLines(int k, int limit);
};

class DuplicateCoordinates : public std::invalid_argument {
 public:
  explicit DuplicateCoordinates(const std::string& what);
};

// Exact intersection graph of the segments (vertex i = segment i).
Graph intersection_graph(const std::vector<GroundedSegment>& segments);
Graph intersection_graph(const std::vector<UpwardRay>& rays);

// The subgraph a maximum clique through the ground-extreme pair (a, b) must
// live in: a, b, and every segment grounded strictly between them that
// intersects both. Vertices are listed in ground order, so the identity order
// of `graph` is the ground-line order.
struct CandidateSubgraph {
  std::vector<int> vertices;  // original indices, ascending ground x
  Graph graph;
};

// pre: ground_x(a) < ground_x(b); throws NotIntersecting if a, b disjoint.
CandidateSubgraph candidate_subgraph(const SegmentInstance& inst, int a, int b);

// Exact maximum clique for segments of one common length. Every clique of
// size >= 2 is spanned by its ground-extreme pair, whose candidate subgraph
// is a cocomparability graph in ground order; the best pair solve wins, with
// a singleton fallback. Result: original indices, ascending. Throws
// NotUnitLength if squared lengths differ.
std::vector<int> unit_grounded_max_clique(const SegmentInstance& inst);

// The derived instance the fixed-lines DP runs on: segment i of the input
// turns into an upward ray, and item i is the piece of that ray's supporting
// line from a low horizontal line L up to the ray origin. Everything is
// translated so L is y = 0. Original segments intersect exactly when their
// items are strictly independent, which turns max clique into max strict
// independent set.
struct SPrimeInstance {
  std::vector<GroundedSegment> items;
  std::vector<LineEq> lines;   // images of endpoint_lines, same translation
  std::vector<int> sigma;      // item indices by ground x, ascending
  Rational ground_level;       // the y-coordinate L had before translating
};

// pre: endpoint_lines present. Throws DegenerateLines if two items would
// share a supporting line (collinear input segments).
SPrimeInstance build_s_prime(const SegmentInstance& inst);

// Exact maximum clique for segments whose free endpoints lie on at most
// `max_lines` lines, via the interval DP over S': subproblems are pairs of
// boundary items plus a per-line ledger of at most two chosen items per side,
// and the recurrence picks the next item below both boundaries. Result:
// original indices, ascending. Throws TooManyLines beyond the cap.
std::vector<int> dp_fixed_lines(const SegmentInstance& inst, int max_lines = 3);

// Partition of points (given in ascending-x order) into y-monotone index
// subsequences of size at most ceil(sqrt(n)): repeatedly strip a longest
// monotone subsequence (ties prefer increasing, then smallest indices) and
// chop it into consecutive blocks. At most O(sqrt(n)) blocks come out.
// Throws DuplicateCoordinates on repeated x or y values.
std::vector<std::vector<int>> monotone_partition(const std::vector<Point>& points);

struct ApproxSegmentsResult {
  std::vector<int> clique;               // original indices, ascending
  int pieces_level1 = 0;                 // k: free-endpoint monotone pieces
  int max_pieces_level2 = 0;             // z: worst ground-order piece count
  std::vector<std::vector<int>> blocks;  // the final two-level partition
};

// Clique within a factor k*z of optimal: partition by free-endpoint
// y-monotonicity, then by ground-order monotonicity; every resulting block is
// umbrella-free in ground order and solved exactly. Unsplit monotone runs are
// solved as extra candidates, so fully monotone instances come back whole.
ApproxSegmentsResult approx_clique_n34(const SegmentInstance& inst);

}  // namespace geoclique
