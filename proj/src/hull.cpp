#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dimer/search.hpp"

namespace dimer::search {

namespace {

struct P3 {
  double x, y, z;
};

P3 sub(const P3& a, const P3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
P3 cross(const P3& a, const P3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double dot(const P3& a, const P3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(const P3& a) { return std::sqrt(dot(a, a)); }

struct Face {
  std::array<int, 3> v;
  std::array<int, 3> nb;  // neighbor across edge (v[k], v[k+1])
  P3 n;                   // unit outward normal
  double off;             // plane: dot(n, p) = off
  std::vector<int> outside;
  bool alive = true;
  int mark = -1;
};

// Quickhull in three dimensions. Points closer than eps to a face count as
// on the hull and are not processed further.
class Quickhull {
 public:
  Quickhull(const std::vector<P3>& pts, double eps) : p_(pts), eps_(eps) {}

  // False when the input is degenerate (all points within eps of a plane).
  bool run() {
    if (!initial_simplex()) return false;
    std::vector<int> stack;
    for (int f = 0; f < int(faces_.size()); ++f)
      if (!faces_[f].outside.empty()) stack.push_back(f);
    while (!stack.empty()) {
      int f = stack.back();
      stack.pop_back();
      if (!faces_[f].alive || faces_[f].outside.empty()) continue;
      int added = add_point(f);
      if (added < 0) {
        if (faces_[f].alive && !faces_[f].outside.empty()) stack.push_back(f);
        continue;
      }
      for (int g = added; g < int(faces_.size()); ++g)
        if (faces_[g].alive && !faces_[g].outside.empty()) stack.push_back(g);
    }
    return true;
  }

  const std::vector<Face>& faces() const { return faces_; }
  int skipped() const { return skipped_; }

 private:
  double dist(const Face& f, int i) const { return dot(f.n, p_[i]) - f.off; }

  bool make_plane(Face& f) {
    P3 n = cross(sub(p_[f.v[1]], p_[f.v[0]]), sub(p_[f.v[2]], p_[f.v[0]]));
    double l = norm(n);
    if (!(l > 0.0)) return false;
    f.n = {n.x / l, n.y / l, n.z / l};
    f.off = dot(f.n, p_[f.v[0]]);
    return true;
  }

  bool initial_simplex() {
    const int n = int(p_.size());
    if (n < 4) return false;
    int ex[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < n; ++i) {
      if (p_[i].x < p_[ex[0]].x) ex[0] = i;
      if (p_[i].x > p_[ex[1]].x) ex[1] = i;
      if (p_[i].y < p_[ex[2]].y) ex[2] = i;
      if (p_[i].y > p_[ex[3]].y) ex[3] = i;
      if (p_[i].z < p_[ex[4]].z) ex[4] = i;
      if (p_[i].z > p_[ex[5]].z) ex[5] = i;
    }
    int a = ex[0], b = ex[1];
    double best = -1.0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        double d = norm(sub(p_[ex[i]], p_[ex[j]]));
        if (d > best) best = d, a = ex[i], b = ex[j];
      }
    P3 ab = sub(p_[b], p_[a]);
    int c = -1;
    best = eps_;
    for (int i = 0; i < n; ++i) {
      double d = norm(cross(ab, sub(p_[i], p_[a]))) / norm(ab);
      if (d > best) best = d, c = i;
    }
    if (c < 0) return false;
    P3 nrm = cross(ab, sub(p_[c], p_[a]));
    double ln = norm(nrm);
    int d = -1;
    best = eps_;
    for (int i = 0; i < n; ++i) {
      double dd = std::abs(dot(nrm, sub(p_[i], p_[a]))) / ln;
      if (dd > best) best = dd, d = i;
    }
    if (d < 0) return false;
    P3 centroid = {(p_[a].x + p_[b].x + p_[c].x + p_[d].x) / 4.0,
                   (p_[a].y + p_[b].y + p_[c].y + p_[d].y) / 4.0,
                   (p_[a].z + p_[b].z + p_[c].z + p_[d].z) / 4.0};
    // Orient the base (a, b, c) so that d lies below it.
    if (dot(nrm, sub(p_[d], p_[a])) > 0.0) std::swap(b, c);
    std::array<std::array<int, 3>, 4> tri = {{{a, b, c}, {a, d, b}, {b, d, c}, {c, d, a}}};
    for (auto& t : tri) {
      Face f;
      f.v = t;
      f.nb = {-1, -1, -1};
      if (!make_plane(f)) return false;
      if (dot(f.n, centroid) - f.off > 0.0) return false;
      faces_.push_back(f);
    }
    link_all(0, 4);
    std::vector<int> pts;
    for (int i = 0; i < n; ++i)
      if (i != a && i != b && i != c && i != d) pts.push_back(i);
    assign(pts, 0);
    return true;
  }

  // Links neighbors among faces [first, first+count) by matching edges.
  void link_all(int first, int count) {
    for (int f = first; f < first + count; ++f)
      for (int e = 0; e < 3; ++e) {
        int u = faces_[f].v[e], v = faces_[f].v[(e + 1) % 3];
        for (int g = first; g < first + count; ++g) {
          if (g == f) continue;
          for (int k = 0; k < 3; ++k)
            if (faces_[g].v[k] == v && faces_[g].v[(k + 1) % 3] == u) faces_[f].nb[e] = g;
        }
      }
  }

  void assign(const std::vector<int>& pts, int first_face) {
    for (int i : pts) {
      int best_f = -1;
      double best_d = eps_;
      for (int f = first_face; f < int(faces_.size()); ++f) {
        if (!faces_[f].alive) continue;
        double d = dist(faces_[f], i);
        if (d > best_d) best_d = d, best_f = f;
      }
      if (best_f >= 0) faces_[best_f].outside.push_back(i);
    }
  }

  struct HorizonEdge {
    int u, v, face;  // edge (u, v) of a visible face; face is the hidden neighbor
  };

  void horizon(int eye, int f, int entry, std::vector<HorizonEdge>& out,
               std::vector<int>& visible) {
    faces_[f].mark = round_;
    visible.push_back(f);
    for (int k = 0; k < 3; ++k) {
      if (entry >= 0 && k == 0) continue;
      int e = entry < 0 ? k : (entry + k) % 3;
      int g = faces_[f].nb[e];
      if (faces_[g].mark == round_) continue;
      if (dist(faces_[g], eye) > eps_) {
        int back = 0;
        for (int q = 0; q < 3; ++q)
          if (faces_[g].nb[q] == f && faces_[g].v[q] == faces_[f].v[(e + 1) % 3]) back = q;
        horizon(eye, g, back, out, visible);
      } else {
        out.push_back({faces_[f].v[e], faces_[f].v[(e + 1) % 3], g});
      }
    }
  }

  // Returns the index of the first new face, or -1 if the point was dropped.
  int add_point(int f) {
    Face& face = faces_[f];
    auto it = std::max_element(face.outside.begin(), face.outside.end(),
                               [&](int i, int j) { return dist(face, i) < dist(face, j); });
    int eye = *it;
    ++round_;
    std::vector<HorizonEdge> hz;
    std::vector<int> visible;
    horizon(eye, f, -1, hz, visible);
    bool closed = hz.size() >= 3;
    for (std::size_t i = 0; closed && i < hz.size(); ++i)
      closed = hz[i].v == hz[(i + 1) % hz.size()].u;
    if (!closed) {
      // Inconsistent visibility at round-off level: drop the point.
      faces_[f].outside.erase(std::find(faces_[f].outside.begin(), faces_[f].outside.end(), eye));
      ++skipped_;
      for (int g : visible) faces_[g].mark = -1;
      return -1;
    }
    const int first = int(faces_.size());
    const int m = int(hz.size());
    for (int i = 0; i < m; ++i) {
      Face nf;
      nf.v = {hz[i].u, hz[i].v, eye};
      nf.nb = {hz[i].face, first + (i + 1) % m, first + (i + m - 1) % m};
      if (!make_plane(nf)) nf.n = {0.0, 0.0, 0.0}, nf.off = 0.0;
      faces_.push_back(nf);
      Face& hidden = faces_[hz[i].face];
      for (int q = 0; q < 3; ++q)
        if (hidden.v[q] == hz[i].v && hidden.v[(q + 1) % 3] == hz[i].u) hidden.nb[q] = first + i;
    }
    std::vector<int> orphans;
    for (int g : visible) {
      faces_[g].alive = false;
      for (int i : faces_[g].outside)
        if (i != eye) orphans.push_back(i);
      std::vector<int>().swap(faces_[g].outside);
    }
    assign(orphans, first);
    return first;
  }

  const std::vector<P3>& p_;
  double eps_;
  std::vector<Face> faces_;
  int round_ = 0;
  int skipped_ = 0;
};

}  // namespace

GridField lower_convex_envelope(const GridField& f) {
  const int n = f.resolution();
  std::vector<P3> pts;
  std::vector<long> node_of;  // grid index or -1 for anchors
  double zscale = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!f.active(k)) continue;
    RealRdm r = f.node(k);
    pts.push_back({r.g11, r.g12, f.value(k)});
    node_of.push_back(long(k));
    zscale = std::max(zscale, std::abs(f.value(k)));
  }
  if (pts.size() < 3) throw std::invalid_argument("envelope needs at least three active nodes");
  for (const auto& a : f.anchors()) {
    pts.push_back({a.g11, a.g12, a.value});
    node_of.push_back(-1);
    zscale = std::max(zscale, std::abs(a.value));
  }

  GridField out = f;
  out.set_generator("lower_convex_envelope(" + f.generator() + ")");
  const double eps = 1e-12 * std::max(1.0, zscale);
  Quickhull qh(pts, eps);
  if (!qh.run()) return out;  // coplanar input is its own envelope

  const double h = f.spacing();
  std::vector<double> plane(f.size(), std::numeric_limits<double>::infinity());
  for (const Face& face : qh.faces()) {
    if (!face.alive || !(face.n.z < -1e-12)) continue;
    const P3& a = pts[face.v[0]];
    const P3& b = pts[face.v[1]];
    const P3& c = pts[face.v[2]];
    double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    if (det == 0.0) continue;
    int i0 = std::max(0, int(std::ceil(std::min({a.x, b.x, c.x}) / h - 1e-9)));
    int i1 = std::min(n - 1, int(std::floor(std::max({a.x, b.x, c.x}) / h + 1e-9)));
    int j0 = std::max(0, int(std::ceil((std::min({a.y, b.y, c.y}) + 0.5) / h - 1e-9)));
    int j1 = std::min(n - 1, int(std::floor((std::max({a.y, b.y, c.y}) + 0.5) / h + 1e-9)));
    for (int i = i0; i <= i1; ++i)
      for (int j = j0; j <= j1; ++j) {
        std::size_t k = f.index(i, j);
        if (!f.active(k)) continue;
        RealRdm r = f.node(i, j);
        double l1 = ((r.g11 - a.x) * (c.y - a.y) - (c.x - a.x) * (r.g12 - a.y)) / det;
        double l2 = ((b.x - a.x) * (r.g12 - a.y) - (r.g11 - a.x) * (b.y - a.y)) / det;
        double l0 = 1.0 - l1 - l2;
        const double tol = -1e-9;
        if (l0 < tol || l1 < tol || l2 < tol) continue;
        double z = l0 * a.z + l1 * b.z + l2 * c.z;
        plane[k] = std::min(plane[k], z);
      }
  }
  const double keep = 1e-12 * std::max(1.0, zscale);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (!f.active(k) || !std::isfinite(plane[k])) continue;
    if (plane[k] < f.value(k) - keep) out.value(k) = plane[k];
  }
  return out;
}

}  // namespace dimer::search
