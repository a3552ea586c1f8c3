#include "cbmdlab/contour.hpp"

#include <algorithm>
#include <cmath>

#include "cbmdlab/numeric.hpp"

namespace cbmdlab::contour {

namespace {

struct Node {
    Complex z;
    Complex weight;  // includes dz direction and the trapezoid factor
};

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

void append_segment_nodes(Complex a, Complex b, int nodes_per_unit_length,
                          std::vector<Node>& nodes) {
    const Complex dz = b - a;
    const double len = std::abs(dz);
    const int n = std::max(6, static_cast<int>(std::ceil(nodes_per_unit_length * len)));
    const Complex h = dz / static_cast<double>(n);
    for (int j = 0; j <= n; ++j) {
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        nodes.push_back({a + dz * (static_cast<double>(j) / n), w * h});
    }
}

std::vector<Complex> rectangle_vertices(Complex a, Complex b) {
    const double xmin = std::min(a.real(), b.real());
    const double xmax = std::max(a.real(), b.real());
    const double ymin = std::min(a.imag(), b.imag());
    const double ymax = std::max(a.imag(), b.imag());
    return {{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}};
}

std::vector<Node> build_nodes(const ContourSpec& c) {
    std::vector<Node> nodes;
    if (c.kind == ContourKind::circle) {
        const double circumference = 2.0 * kPi * c.radius;
        const int n =
            std::max(16, static_cast<int>(std::ceil(c.nodes_per_unit_length * circumference)));
        nodes.reserve(n);
        for (int j = 0; j < n; ++j) {
            // half-step offset keeps nodes off exact real-axis pole angles
            const double theta = 2.0 * kPi * (j + 0.5) / n;
            const Complex e{std::cos(theta), std::sin(theta)};
            nodes.push_back({c.center + c.radius * e, (2.0 * kPi / n) * kI * c.radius * e});
        }
        return nodes;
    }
    const std::vector<Complex> verts = c.kind == ContourKind::rectangle
                                           ? rectangle_vertices(c.corner_a, c.corner_b)
                                           : c.vertices;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        append_segment_nodes(verts[i], verts[(i + 1) % verts.size()], c.nodes_per_unit_length,
                             nodes);
    }
    return nodes;
}

}  // namespace

ContourSpec ContourSpec::circle(Complex center, double radius, int nodes_per_unit_length) {
    ContourSpec c;
    c.kind = ContourKind::circle;
    c.center = center;
    c.radius = radius;
    c.nodes_per_unit_length = nodes_per_unit_length;
    c.validate();
    return c;
}

ContourSpec ContourSpec::rectangle(Complex a, Complex b, int nodes_per_unit_length) {
    ContourSpec c;
    c.kind = ContourKind::rectangle;
    c.corner_a = a;
    c.corner_b = b;
    c.nodes_per_unit_length = nodes_per_unit_length;
    c.validate();
    return c;
}

ContourSpec ContourSpec::polyline(std::vector<Complex> vertices, int nodes_per_unit_length) {
    ContourSpec c;
    c.kind = ContourKind::polyline;
    c.vertices = std::move(vertices);
    c.nodes_per_unit_length = nodes_per_unit_length;
    c.validate();
    return c;
}

void ContourSpec::validate() const {
    if (nodes_per_unit_length < 1) throw Error("ContourSpec: node density must be positive");
    switch (kind) {
        case ContourKind::circle:
            if (!(radius > 0.0)) throw Error("ContourSpec: circle radius must be positive");
            break;
        case ContourKind::rectangle:
            if (corner_a.real() == corner_b.real() || corner_a.imag() == corner_b.imag()) {
                throw Error("ContourSpec: rectangle corners must be opposite");
            }
            break;
        case ContourKind::polyline: {
            if (vertices.size() < 3) throw Error("ContourSpec: polyline needs >= 3 vertices");
            double area2 = 0.0;  // shoelace; positive means counterclockwise
            for (std::size_t i = 0; i < vertices.size(); ++i) {
                const Complex p = vertices[i];
                const Complex q = vertices[(i + 1) % vertices.size()];
                area2 += p.real() * q.imag() - q.real() * p.imag();
            }
            if (area2 <= 0.0) throw Error("ContourSpec: polyline must be counterclockwise");
            break;
        }
    }
}

double ContourSpec::length() const {
    if (kind == ContourKind::circle) return 2.0 * kPi * radius;
    const std::vector<Complex> verts =
        kind == ContourKind::rectangle ? rectangle_vertices(corner_a, corner_b) : vertices;
    double len = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        len += std::abs(verts[(i + 1) % verts.size()] - verts[i]);
    }
    return len;
}

double ContourSpec::distance_to(Complex p) const {
    if (kind == ContourKind::circle) return std::abs(std::abs(p - center) - radius);
    const std::vector<Complex> verts =
        kind == ContourKind::rectangle ? rectangle_vertices(corner_a, corner_b) : vertices;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < verts.size(); ++i) {
        best = std::min(best,
                        point_segment_distance(p, verts[i], verts[(i + 1) % verts.size()]));
    }
    return best;
}

Matrix integrate_contour(const Sampler& f, const ContourSpec& contour) {
    contour.validate();
    const std::vector<Node> nodes = build_nodes(contour);
    std::vector<Matrix> pieces;
    pieces.reserve(nodes.size());
    for (const Node& node : nodes) {
        Matrix v = f(node.z);
        if (!all_finite(v)) {
            throw SampleOnSingularity("integrate_contour: non-finite sample at z=(" +
                                      std::to_string(node.z.real()) + "," +
                                      std::to_string(node.z.imag()) + ")");
        }
        pieces.push_back(node.weight * v);
    }
    const Matrix zero = Matrix::Zero(pieces.front().rows(), pieces.front().cols());
    return pairwise_sum(pieces, zero);
}

Matrix residue_at(const Sampler& f, const PoleSpec& pole, double radius,
                  int nodes_per_unit_length) {
    if (pole.order != 1) throw Error("residue_at: only simple poles are supported");
    if (!(radius > 0.0)) throw Error("residue_at: radius must be positive");
    // keep at least 512 nodes regardless of how small the circle is
    const int npl = std::max(nodes_per_unit_length,
                             static_cast<int>(std::ceil(512.0 / (2.0 * kPi * radius))));
    const ContourSpec circle = ContourSpec::circle(pole.location, radius, npl);
    return integrate_contour(f, circle) / (2.0 * kPi * kI);
}

ResidueCheck verify_residue_theorem(const Sampler& f, const ContourSpec& contour,
                                    const std::vector<PoleSpec>& poles) {
    ResidueCheck out;
    out.lhs = integrate_contour(f, contour);

    std::vector<Matrix> residues;
    residues.reserve(poles.size());
    for (std::size_t i = 0; i < poles.size(); ++i) {
        double clearance = contour.distance_to(poles[i].location);
        for (std::size_t j = 0; j < poles.size(); ++j) {
            if (j == i) continue;
            clearance = std::min(clearance, std::abs(poles[i].location - poles[j].location));
        }
        const double radius = 0.45 * clearance;
        if (!(radius > 0.0)) throw Error("verify_residue_theorem: coincident poles");
        residues.push_back(residue_at(f, poles[i], radius, contour.nodes_per_unit_length));
    }
    const Matrix zero = Matrix::Zero(out.lhs.rows(), out.lhs.cols());
    out.rhs = 2.0 * kPi * kI * pairwise_sum(residues, zero);
    out.residual = spectral_norm(out.lhs - out.rhs);
    return out;
}

}  // namespace cbmdlab::contour
