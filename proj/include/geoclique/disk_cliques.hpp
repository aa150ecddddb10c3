#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoclique/geometry.hpp"
#include "geoclique/graph.hpp"

namespace geoclique {

// Disks with radii confined to a declared band. The piercing and
// approximation routines assume r_max <= 3 * r_min (they rescale so the band
// sits inside [1, 3]).
struct DiskInstance {
  std::vector<Disk> disks;
  double r_min = 1.0;
  double r_max = 3.0;
};

// Rejects non-positive or inverted bounds and radii outside them.
void validate(const DiskInstance& inst);

class NotPairwiseIntersecting : public std::invalid_argument {
 public:
  NotPairwiseIntersecting(int a, int b);
  int a;
  int b;
};

class PiercingVerificationFailed : public std::runtime_error {
 public:
  explicit PiercingVerificationFailed(int disk);
  int disk;  // first disk no candidate point reached
};

// Exact maximum clique over tangent-to-ground disks. Every clique is spanned
// by its smallest member D: the larger disks meeting D, split by center x
// into the two sides of D, form two cliques (sliding a far disk of a side
// toward D only increases pairwise distances, so each side pair already
// met). One cobipartite solve per choice of D, best result wins; radius ties
// on the "smallest member" role break by index. Entirely rational.
std::vector<int> grounded_disk_max_clique(const std::vector<GroundedDisk>& disks);

// max over disks of dist((x, y), center) - radius: the radius a circle
// centered at (x, y) needs to reach every disk. Negative when (x, y) is
// interior to all of them; convex in (x, y).
double reach_radius(const std::vector<Disk>& disks, double x, double y);

struct IntersectingCircle {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;        // max(0, reach_radius at the optimum)
  std::vector<int> basis;     // up to 3 disks tight at the optimum
};

// Smallest circle meeting every disk: minimizes reach_radius by multi-start
// compass descent (8 directions, step halves until < tol * 1e-3), then
// polishes with the algebraic equalizer of the snapped basis triple (the
// point whose reach to the three basis disks is equal solves a linear system
// in (x, y) plus one quadratic). Candidates never hurt: the final answer is
// whichever point evaluates lowest. Basis = disks within 10 * tol of the
// worst reach. Requires pairwise intersecting input (within tol).
IntersectingCircle smallest_intersecting_circle(const std::vector<Disk>& disks,
                                                double tol = 1e-9);

// Rigid normalization used by the piercing construction, mapping input
// coordinates to the canonical frame: p |-> rotate(angle) * (p / scale -
// (cx, cy)). Inverse maps the canonical points back out.
struct Frame {
  double cx = 0.0;
  double cy = 0.0;
  double angle = 0.0;
  double scale = 1.0;
};

struct PiercingTriple {
  std::vector<std::array<double, 2>> points;  // 1 or 3 points
  Frame frame;
};

struct PiercingCheck {
  bool ok = true;
  int first_failure = -1;  // disk index, -1 when all pierced
};

// True iff every disk contains at least one of the points, allowing tol of
// slack on the distance.
PiercingCheck verify_piercing(const std::vector<Disk>& disks,
                              const std::vector<std::array<double, 2>>& points, double tol);

// At most three points meeting every disk of a pairwise-intersecting family
// with radius spread at most 3x (coordinates are rescaled so radii land in
// [1, 3]). Zero-radius smallest circle: its center alone. Otherwise the
// three disks tight on that circle get labeled bottom/left/right (clockwise
// around the circle, the closest tangency pair playing left and right), the
// plane is normalized so the circle is centered at the origin with the
// bottom disk straight below, and the points are the fixed triangle
//   (0, -1/sqrt 3), (1/2, 1/(2 sqrt 3)), (-1/2, 1/(2 sqrt 3))
// mapped back out. The result is always checked with verify_piercing before
// returning; a failure throws rather than returning unverified points.
PiercingTriple piercing_points(const std::vector<Disk>& disks, double tol = 1e-9);

// Clique of size >= 2/3 of the maximum for disks with radius spread at most
// 3x. Candidate points (all pairwise boundary crossings plus all centers)
// each contribute the clique of disks containing them; every pairwise
// intersecting triple whose smallest intersecting circle has positive radius
// contributes three piercing-style points, and each pair of those yields a
// cobipartite solve over the disks containing either point (both-point disks
// sit on the first side). Containment tests use tol / 2 so any two disks
// sharing a point are intersecting within tol; edges use tol.
std::vector<int> approx_disk_clique(const DiskInstance& inst, double tol = 1e-9);

}  // namespace geoclique
