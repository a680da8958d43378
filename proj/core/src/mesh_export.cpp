#include "berger/export.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace berger {

namespace {

void require_pole(const Pole& pole) {
  if (pole.axis < 1 || pole.axis > 4) {
    throw std::invalid_argument("stereographic pole axis must be 1..4");
  }
  if (pole.sign != 1 && pole.sign != -1) {
    throw std::invalid_argument("stereographic pole sign must be +1 or -1");
  }
}

// Fixed-format float: round-trippable, locale-independent.
std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

Vec3 stereographic(const Vec4& x, const Pole& pole) {
  require_pole(pole);
  const int k = pole.axis - 1;
  const double denom = 1.0 - pole.sign * x(k);
  if (std::abs(denom) < 1e-9) {
    throw std::domain_error("point is at the stereographic pole");
  }
  Vec3 y;
  int j = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == k) continue;
    y(j++) = x(i) / denom;
  }
  return y;
}

Vec4 stereographic_inverse(const Vec3& y, const Pole& pole) {
  require_pole(pole);
  const int k = pole.axis - 1;
  const double q = y.squaredNorm();
  Vec4 x;
  int j = 0;
  for (int i = 0; i < 4; ++i) {
    if (i == k) {
      x(i) = pole.sign * (q - 1.0) / (q + 1.0);
    } else {
      x(i) = 2.0 * y(j++) / (q + 1.0);
    }
  }
  return x;
}

MeshGrid build_mesh(const HelixSpec& spec, const GridSpec& grid,
                    const Pole& pole) {
  require_pole(pole);
  if (grid.n_u < 2 || grid.n_v < 2) {
    throw std::invalid_argument("mesh grid needs at least 2x2 samples");
  }

  MeshGrid mesh;
  mesh.grid = grid;
  const int nu = grid.n_u, nv = grid.n_v;
  // -1 marks a vertex dropped for being at the projection pole.
  std::vector<int> remap(static_cast<size_t>(nu) * nv, -1);

  for (int iv = 0; iv < nv; ++iv) {
    const double v = grid.v_min + (grid.v_max - grid.v_min) * iv / double(nv - 1);
    for (int iu = 0; iu < nu; ++iu) {
      const double u =
          grid.u_min + (grid.u_max - grid.u_min) * iu / double(nu - 1);
      const SurfaceJet jet = surface_jet(spec, u, v);
      Vec3 y;
      try {
        y = stereographic(jet.F, pole);
      } catch (const std::domain_error&) {
        ++mesh.dropped_vertices;
        continue;
      }
      double angle = std::nan("");
      try {
        angle = unit_normal(jet, spec.params).nu;
      } catch (const std::exception&) {
        // leave NaN: lightlike or rank-deficient sample
      }
      remap[static_cast<size_t>(iv) * nu + iu] =
          static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(y);
      mesh.ambient.push_back(jet.F);
      mesh.us.push_back(u);
      mesh.vs.push_back(v);
      mesh.nus.push_back(angle);
    }
  }

  for (int iv = 0; iv + 1 < nv; ++iv) {
    for (int iu = 0; iu + 1 < nu; ++iu) {
      const int a = remap[static_cast<size_t>(iv) * nu + iu];
      const int b = remap[static_cast<size_t>(iv) * nu + iu + 1];
      const int c = remap[static_cast<size_t>(iv + 1) * nu + iu + 1];
      const int d = remap[static_cast<size_t>(iv + 1) * nu + iu];
      if (a < 0 || b < 0 || c < 0 || d < 0) continue;
      mesh.faces.push_back({a, b, c, d});
    }
  }
  return mesh;
}

void write_obj(std::ostream& os, const MeshGrid& mesh) {
  for (const Vec3& v : mesh.vertices) {
    os << "v " << fmt(v(0)) << ' ' << fmt(v(1)) << ' ' << fmt(v(2)) << '\n';
  }
  for (const auto& f : mesh.faces) {
    os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << ' '
       << f[3] + 1 << '\n';
  }
}

void write_ply(std::ostream& os, const MeshGrid& mesh) {
  os << "ply\nformat ascii 1.0\n";
  os << "element vertex " << mesh.vertices.size() << '\n';
  os << "property float x\nproperty float y\nproperty float z\n";
  os << "element face " << mesh.faces.size() << '\n';
  os << "property list uchar int vertex_indices\n";
  os << "end_header\n";
  for (const Vec3& v : mesh.vertices) {
    os << fmt(v(0)) << ' ' << fmt(v(1)) << ' ' << fmt(v(2)) << '\n';
  }
  for (const auto& f : mesh.faces) {
    os << "4 " << f[0] << ' ' << f[1] << ' ' << f[2] << ' ' << f[3] << '\n';
  }
}

void write_csv(std::ostream& os, const MeshGrid& mesh) {
  os << "u,v,F1,F2,F3,F4,nu\n";
  for (size_t i = 0; i < mesh.ambient.size(); ++i) {
    const Vec4& x = mesh.ambient[i];
    os << fmt(mesh.us[i]) << ',' << fmt(mesh.vs[i]) << ',' << fmt(x(0)) << ','
       << fmt(x(1)) << ',' << fmt(x(2)) << ',' << fmt(x(3)) << ','
       << fmt(mesh.nus[i]) << '\n';
  }
}

void write_report(std::ostream& os, const ResidualReport& report) {
  char buf[64];
  for (const auto& c : report.checks) {
    std::snprintf(buf, sizeof(buf), "%.9e", c.max_residual);
    os << "check," << c.name << ',' << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.3e", c.tolerance);
    os << buf << ',' << (c.pass ? "pass" : "fail") << '\n';
  }
  for (const auto& c : report.checks) {
    if (c.max_residual > 0.0) {
      os << "# worst " << c.name << " u=" << fmt(c.worst_u)
         << " v=" << fmt(c.worst_v) << '\n';
    }
  }
  os << "# samples=" << report.samples << '\n';
  os << "# degenerate_normals=" << report.degenerate_normals << '\n';
  os << "# mu_skipped=" << report.mu_skipped << '\n';
  os << "# shape_skipped=" << report.shape_skipped << '\n';
  os << "# shape_unreliable=" << report.shape_unreliable << '\n';
  for (const auto& [k, v] : report.metadata) {
    os << "# " << k << '=' << v << '\n';
  }
  os << (report.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << '\n';
}

}  // namespace berger
