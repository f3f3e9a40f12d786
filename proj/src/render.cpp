#include "minply/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace minply {

namespace {

std::string num(double v) { return format_number(std::round(v * 100.0) / 100.0); }

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const Instance& inst, const std::optional<Solution>& sol,
                       const RenderOptions& opt) {
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  bool first = true;
  auto grow = [&](double x0, double x1, double y0, double y1) {
    if (first) {
      x_lo = x0, x_hi = x1, y_lo = y0, y_hi = y1;
      first = false;
      return;
    }
    x_lo = std::min(x_lo, x0), x_hi = std::max(x_hi, x1);
    y_lo = std::min(y_lo, y0), y_hi = std::max(y_hi, y1);
  };
  for (const auto& s : inst.squares) grow(s.x_left, s.x_right(), s.y_bottom(), s.y_top);
  for (const auto& p : inst.points) grow(p.x, p.x, p.y, p.y);
  if (inst.mode == InstanceMode::kLine) grow(x_lo, x_hi, inst.line_y, inst.line_y);
  if (inst.mode == InstanceMode::kSlab) grow(x_lo, x_hi, inst.slab_low, inst.slab_high);

  const double pad = 0.25;
  x_lo -= pad, x_hi += pad, y_lo -= pad, y_hi += pad;
  const auto sx = [&](double x) { return opt.margin + (x - x_lo) * opt.scale; };
  const auto sy = [&](double y) { return opt.margin + (y_hi - y) * opt.scale; };
  const double width = 2 * opt.margin + (x_hi - x_lo) * opt.scale;
  const double height = 2 * opt.margin + (y_hi - y_lo) * opt.scale;

  std::vector<SquareId> chosen;
  if (sol) chosen = sol->squares;

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  os << "<title>" << escape(inst.name) << "</title>\n";
  os << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" fill=\"white\"/>\n";

  if (sol && sol->witness) {
    const Rect& r = sol->witness->rect;
    os << "<rect class=\"ply-region\" x=\"" << num(sx(r.x_lo)) << "\" y=\"" << num(sy(r.y_hi))
       << "\" width=\"" << num(r.width() * opt.scale) << "\" height=\""
       << num(r.height() * opt.scale) << "\" fill=\"#f4a259\" fill-opacity=\"0.6\"/>\n";
    os << "<text class=\"depth\" x=\"" << num(sx((r.x_lo + r.x_hi) / 2)) << "\" y=\""
       << num(sy((r.y_lo + r.y_hi) / 2)) << "\" font-size=\"12\" text-anchor=\"middle\">"
       << sol->witness->depth << "</text>\n";
  }

  auto hline = [&](const char* cls, double y) {
    os << "<line class=\"" << cls << "\" x1=\"" << num(sx(x_lo)) << "\" y1=\"" << num(sy(y))
       << "\" x2=\"" << num(sx(x_hi)) << "\" y2=\"" << num(sy(y))
       << "\" stroke=\"#444\" stroke-dasharray=\"6 4\"/>\n";
  };
  if (inst.mode == InstanceMode::kLine) hline("stab-line", inst.line_y);
  if (inst.mode == InstanceMode::kSlab) {
    hline("slab-line", inst.slab_low);
    hline("slab-line", inst.slab_high);
  }

  for (const auto& s : inst.squares) {
    const bool picked = std::find(chosen.begin(), chosen.end(), s.id) != chosen.end();
    os << "<rect class=\"square\" data-id=\"" << s.id << "\" x=\"" << num(sx(s.x_left))
       << "\" y=\"" << num(sy(s.y_top)) << "\" width=\"" << num(opt.scale) << "\" height=\""
       << num(opt.scale) << "\" fill=\"none\" stroke=\"" << (picked ? "#1d3557" : "#a8a8a8")
       << "\" stroke-width=\"" << (picked ? 2 : 1) << "\"/>\n";
  }
  for (const auto& p : inst.points) {
    os << "<circle class=\"point\" data-id=\"" << p.id << "\" cx=\"" << num(sx(p.x))
       << "\" cy=\"" << num(sy(p.y)) << "\" r=\"3\" fill=\"#c1121f\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace minply
