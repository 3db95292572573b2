#include "plot.hpp"

#include <algorithm>
#include <sstream>

namespace engelfn::cli {

namespace {

// A region is a cylinder, or the tail of one: the sub-interval whose next
// digit is >= tail_from. Splitting peels one child off a tail.
struct Region {
    Cylinder cyl;
    Digit tail_from = 0;  // 0: whole cylinder
    Rat x_lo, x_hi;
    AffineParts parts;
};

Rat region_width(const Region& r) { return r.x_hi - r.x_lo; }

Box region_box(const FamilySpec& fam, const Region& r) {
    Rat lo, hi;
    if (r.tail_from == 0) {
        lo = r.parts.y + std::min(Rat(0), r.parts.d);
        hi = r.parts.y + std::max(Rat(0), r.parts.d);
    } else {
        // digits >= tail_from: f = y + d * v with v in (0, sup_{i>=tail_from-1} r_i]
        const Rat vbar = fam.sup_r_from(r.tail_from - 1);
        lo = r.parts.y + std::min(Rat(0), Rat(r.parts.d * vbar));
        hi = r.parts.y + std::max(Rat(0), Rat(r.parts.d * vbar));
    }
    return Box{r.x_lo, r.x_hi, lo, hi};
}

}  // namespace

std::vector<Box> plot_boxes(const FamilySpec& fam, int n_points) {
    if (n_points < 2) throw std::invalid_argument("plot: need at least 2 points");

    std::vector<Region> regions{
        Region{Cylinder(), 0, Rat(0), Rat(1), AffineParts{Rat(0), Rat(1)}}};
    const Digit digit_limit = fam.max_exact_index() - 1;

    while (static_cast<int>(regions.size()) < n_points) {
        // widest splittable region; ties resolved to the x-lowest
        std::size_t pick = regions.size();
        for (std::size_t i = 0; i < regions.size(); ++i) {
            const Region& r = regions[i];
            const Digit next = r.tail_from;
            if (next > digit_limit) continue;
            if (pick == regions.size() || region_width(r) > region_width(regions[pick]) ||
                (region_width(r) == region_width(regions[pick]) && r.x_lo < regions[pick].x_lo))
                pick = i;
        }
        if (pick == regions.size()) break;  // nothing splittable

        Region r = regions[pick];
        regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(pick));
        // peel child `c` off: the tail with next digit >= c+1 stays below it
        const Digit c = r.tail_from;
        Cylinder child = r.cyl.child(c);
        Region head{child, 0, child.a(), child.b(),
                    AffineParts{Rat(r.parts.y + fam.r(c) * r.parts.d), Rat(r.parts.d * fam.u(c))}};
        Region rest{r.cyl, c + 1, r.x_lo, child.a(), r.parts};
        regions.push_back(head);
        if (rest.x_lo < rest.x_hi) regions.push_back(rest);
    }

    std::vector<Box> boxes;
    boxes.reserve(regions.size());
    for (const auto& r : regions) boxes.push_back(region_box(fam, r));
    std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) { return a.x_lo < b.x_lo; });
    return boxes;
}

std::string boxes_to_csv(const std::vector<Box>& boxes, int digits) {
    std::ostringstream os;
    os << "x_lo,x_hi,f_lo,f_hi\n";
    for (const auto& b : boxes)
        os << decimal_str(b.x_lo, digits) << ',' << decimal_str(b.x_hi, digits) << ','
           << decimal_str(b.f_lo, digits) << ',' << decimal_str(b.f_hi, digits) << '\n';
    return os.str();
}

std::string boxes_to_svg(const std::vector<Box>& boxes, int width_px, int height_px) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\""
       << height_px << "\" viewBox=\"0 0 " << width_px << ' ' << height_px << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& b : boxes) {
        const double x = b.x_lo.get_d() * width_px;
        const double w = std::max(Rat(b.x_hi - b.x_lo).get_d() * width_px, 0.5);
        const double y = (1.0 - b.f_hi.get_d()) * height_px;
        const double h = std::max(Rat(b.f_hi - b.f_lo).get_d() * height_px, 0.5);
        os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << h
           << "\" fill=\"#33557a\" fill-opacity=\"0.85\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace engelfn::cli
