#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "berger/helix.hpp"
#include "berger/verify.hpp"

namespace berger {

// Stereographic projection pole: from sign * e_axis (axis is 1-based).
struct Pole {
  int axis = 4;
  int sign = -1;
};

// Project a point of S^3 to R^3 from the pole; throws domain_error at the pole.
Vec3 stereographic(const Vec4& x, const Pole& pole = {});

// Inverse map back to the unit sphere.
Vec4 stereographic_inverse(const Vec3& y, const Pole& pole = {});

// Sampled surface patch, stereographically projected, with quad connectivity.
struct MeshGrid {
  std::vector<Vec3> vertices;           // projected positions
  std::vector<Vec4> ambient;            // corresponding sphere points
  std::vector<std::array<int, 4>> faces;  // quads, CCW in (u, v)
  std::vector<double> us, vs;           // per-vertex parameters
  std::vector<double> nus;              // angle function per vertex (NaN if degenerate)
  GridSpec grid;
  int dropped_vertices = 0;             // vertices removed as too close to the pole
};

MeshGrid build_mesh(const HelixSpec& spec, const GridSpec& grid,
                    const Pole& pole = {});

void write_obj(std::ostream& os, const MeshGrid& mesh);
void write_ply(std::ostream& os, const MeshGrid& mesh);
void write_csv(std::ostream& os, const MeshGrid& mesh);

// Plain-text residual report: one "check,<name>,<max>,<tol>,<pass|fail>" line
// per check, then "# worst ..." and "# key=value" comment lines.
void write_report(std::ostream& os, const ResidualReport& report);

}  // namespace berger
