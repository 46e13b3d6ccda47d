#include "rcp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "rcp/errors.hpp"
#include "rcp/geometry.hpp"

namespace rcp {

namespace {

struct P2 {
  double x = 0, y = 0;
};

double parse_cell(const nlohmann::json& cell) {
  if (cell.is_number()) return cell.get<double>();
  if (cell.is_string()) {
    auto parsed = ScalarTraits<double>::parse(cell.get<std::string>());
    if (parsed) return *parsed;
  }
  throw SchemaError("report: unparsable numeric cell in plot input");
}

std::vector<std::vector<double>> parse_rows(const nlohmann::json& rows) {
  std::vector<std::vector<double>> out;
  for (const auto& row : rows) {
    std::vector<double> r;
    for (const auto& cell : row) r.push_back(parse_cell(cell));
    out.push_back(std::move(r));
  }
  return out;
}

class Canvas {
 public:
  Canvas(double min_x, double max_x, double min_y, double max_y, double origin_x, double size)
      : min_x_(min_x), min_y_(min_y), origin_x_(origin_x), size_(size) {
    scale_ = size / std::max(1e-12, std::max(max_x - min_x, max_y - min_y));
    span_y_ = max_y - min_y;
  }

  P2 map(double x, double y) const {
    return {origin_x_ + 20 + (x - min_x_) * scale_, 20 + (span_y_ - (y - min_y_)) * scale_};
  }

  double scale() const { return scale_; }

 private:
  double min_x_, min_y_, origin_x_, size_, scale_, span_y_;
};

void polygon(std::ostringstream& os, const std::vector<P2>& pts, const char* style) {
  os << "  <polygon points=\"";
  for (const auto& p : pts) os << p.x << "," << p.y << " ";
  os << "\" " << style << "/>\n";
}

void arrow(std::ostringstream& os, P2 from, P2 to, const char* color) {
  os << "  <line x1=\"" << from.x << "\" y1=\"" << from.y << "\" x2=\"" << to.x << "\" y2=\""
     << to.y << "\" stroke=\"" << color << "\" stroke-width=\"1.5\" marker-end=\"url(#tip)\"/>\n";
}

// One panel: the instance projected onto coordinate axes (ax, ay).
void draw_panel(std::ostringstream& os, const std::vector<std::vector<double>>& verts,
                const std::vector<std::vector<double>>& gverts,
                const std::vector<std::vector<double>>& law,
                const std::vector<std::vector<double>>& rays, int ax, int ay, double origin_x,
                double panel_size, const std::string& title) {
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  for (const auto& v : verts) {
    min_x = std::min(min_x, v[static_cast<std::size_t>(ax)]);
    max_x = std::max(max_x, v[static_cast<std::size_t>(ax)]);
    min_y = std::min(min_y, v[static_cast<std::size_t>(ay)]);
    max_y = std::max(max_y, v[static_cast<std::size_t>(ay)]);
  }
  Canvas canvas(min_x, max_x, min_y, max_y, origin_x, panel_size - 60);
  os << "  <text x=\"" << origin_x + 20 << "\" y=\"14\" font-size=\"12\" fill=\"#444\">" << title
     << "</text>\n";

  std::vector<P2> spoly;
  for (const auto& v : verts)
    spoly.push_back(canvas.map(v[static_cast<std::size_t>(ax)], v[static_cast<std::size_t>(ay)]));
  polygon(os, spoly, "fill=\"#eef3fa\" stroke=\"#5170a7\" stroke-width=\"1\"");

  double vec_len = 0.18 * std::max(max_x - min_x, max_y - min_y);
  auto unit_scaled = [&](const std::vector<double>& v) {
    double nx = v[static_cast<std::size_t>(ax)], ny = v[static_cast<std::size_t>(ay)];
    double norm = std::hypot(nx, ny);
    if (norm < 1e-12) return std::pair<double, double>(0.0, 0.0);
    return std::pair<double, double>(vec_len * nx / norm, vec_len * ny / norm);
  };

  // cone rays (one bundle per G vertex, rays listed with their anchor index)
  for (const auto& ray : rays) {
    int anchor = static_cast<int>(ray[0]);
    if (anchor < 0 || anchor >= static_cast<int>(gverts.size())) continue;
    const auto& base = gverts[static_cast<std::size_t>(anchor)];
    std::vector<double> dir(ray.begin() + 1, ray.end());
    auto [dx, dy] = unit_scaled(dir);
    P2 from = canvas.map(base[static_cast<std::size_t>(ax)], base[static_cast<std::size_t>(ay)]);
    P2 to = canvas.map(base[static_cast<std::size_t>(ax)] + dx, base[static_cast<std::size_t>(ay)] + dy);
    os << "  <line x1=\"" << from.x << "\" y1=\"" << from.y << "\" x2=\"" << to.x << "\" y2=\""
       << to.y << "\" stroke=\"#b9c4d6\" stroke-width=\"1\" stroke-dasharray=\"3,2\"/>\n";
  }

  if (gverts.size() >= 2) {
    std::vector<P2> gpoly;
    for (const auto& v : gverts)
      gpoly.push_back(canvas.map(v[static_cast<std::size_t>(ax)], v[static_cast<std::size_t>(ay)]));
    if (gverts.size() == 2)
      os << "  <line x1=\"" << gpoly[0].x << "\" y1=\"" << gpoly[0].y << "\" x2=\"" << gpoly[1].x
         << "\" y2=\"" << gpoly[1].y << "\" stroke=\"#c03b3b\" stroke-width=\"2\"/>\n";
    else
      polygon(os, gpoly, "fill=\"rgba(192,59,59,0.15)\" stroke=\"#c03b3b\" stroke-width=\"1.5\"");
  }
  for (std::size_t i = 0; i < gverts.size(); ++i) {
    P2 p = canvas.map(gverts[i][static_cast<std::size_t>(ax)], gverts[i][static_cast<std::size_t>(ay)]);
    os << "  <circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"2.5\" fill=\"#c03b3b\"/>\n";
    if (i < law.size()) {
      auto [dx, dy] = unit_scaled(law[i]);
      if (dx != 0 || dy != 0)
        arrow(os, p,
              canvas.map(gverts[i][static_cast<std::size_t>(ax)] + dx,
                         gverts[i][static_cast<std::size_t>(ay)] + dy),
              "#1d7a38");
    }
  }
}

}  // namespace

std::string render_svg(const InstanceData& inst, const nlohmann::json& report) {
  std::vector<std::vector<double>> verts;
  for (Eigen::Index r = 0; r < inst.vertices.rows(); ++r) {
    std::vector<double> row;
    for (Eigen::Index c = 0; c < inst.vertices.cols(); ++c)
      row.push_back(inst.vertices(r, c).convert_to<double>());
    verts.push_back(std::move(row));
  }
  std::vector<std::vector<double>> gverts, law, rays;
  if (report.contains("restriction_polytope"))
    gverts = parse_rows(report["restriction_polytope"]["vertices"]);
  if (report.contains("law") && report["law"].contains("vertex_values"))
    law = parse_rows(report["law"]["vertex_values"]);

  // admissible cone rays at the polytope vertices, from the float geometry
  if (!gverts.empty()) {
    auto tol = Tolerances<double>::defaults();
    Mat<double> vm(static_cast<int>(verts.size()), inst.n);
    for (std::size_t r = 0; r < verts.size(); ++r)
      for (int c = 0; c < inst.n; ++c) vm(static_cast<int>(r), c) = verts[r][static_cast<std::size_t>(c)];
    auto simplex = Simplex<double>::from_vertices(vm, tol);
    for (std::size_t i = 0; i < gverts.size(); ++i) {
      Vec<double> x(inst.n);
      for (int c = 0; c < inst.n; ++c) x(c) = gverts[i][static_cast<std::size_t>(c)];
      try {
        auto cone = simplex.tangent_cone(x, tol);
        for (Eigen::Index cr = 0; cr < cone.normals.rows(); ++cr) {
          // boundary ray direction of the halfspace, drawn at the anchor
          Vec<double> h = cone.normals.row(cr).transpose();
          std::vector<double> ray{static_cast<double>(i)};
          for (int c = 0; c < inst.n; ++c) ray.push_back(-h(c));
          rays.push_back(std::move(ray));
        }
      } catch (const PointOutsideSimplex&) {
        continue;
      }
    }
  }

  std::ostringstream os;
  os.precision(6);
  const double panel = 360;
  const int panels = inst.n == 2 ? 1 : 3;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << panel * panels
     << "\" height=\"" << panel << "\" viewBox=\"0 0 " << panel * panels << " " << panel
     << "\">\n";
  os << "  <defs><marker id=\"tip\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"3\" "
        "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"#1d7a38\"/></marker></defs>\n";
  if (inst.n == 2) {
    draw_panel(os, verts, gverts, law, rays, 0, 1, 0, panel, "x1 / x2");
  } else {
    draw_panel(os, verts, gverts, law, rays, 0, 1, 0, panel, "x1 / x2");
    draw_panel(os, verts, gverts, law, rays, 0, 2, panel, panel, "x1 / x3");
    draw_panel(os, verts, gverts, law, rays, 1, 2, 2 * panel, panel, "x2 / x3");
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rcp
