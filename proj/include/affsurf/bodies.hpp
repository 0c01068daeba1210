#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "affsurf/hull.hpp"
#include "affsurf/linalg.hpp"
#include "affsurf/sphere_grid.hpp"

namespace affsurf {

// { x : <x, normal> <= offset }, normal unit within 1e-12.
struct Halfspace {
    Vec normal;
    double offset;
};

// Bounded, full-dimensional intersection of halfspaces. Exact geometry is
// only supported for n in {2, 3}; the vertex form is computed on
// construction and kept alongside.
class HPolytope {
public:
    HPolytope(std::vector<Halfspace> hs, int dim);
    int dim() const { return dim_; }
    const std::vector<Halfspace>& halfspaces() const { return hs_; }
    const std::vector<Vec>& vertices() const { return verts_; }
    const Vec& interior_point() const { return interior_; }

private:
    std::vector<Halfspace> hs_;
    std::vector<Vec> verts_;
    Vec interior_;
    int dim_;
};

// Convex hull of a nonempty, full-dimensional point set. The facet form is
// computed on construction for n in {2, 3}.
class VPolytope {
public:
    VPolytope(std::vector<Vec> verts, int dim);
    int dim() const { return dim_; }
    const std::vector<Vec>& vertices() const { return verts_; }
    const std::vector<Halfspace>& facets() const { return facets_; }

private:
    std::vector<Vec> verts_;   // reduced to extreme points, CCW in 2D
    std::vector<Halfspace> facets_;
    int dim_;
};

struct SmoothEval {
    double value;
    Vec grad;
    Mat hess;
};

// Body { F <= 0 } with F convex and C^2 away from a declared measure-zero
// exception set. Closed-form support/radial/volume may be attached by the
// factories; generic fallbacks are used otherwise.
struct SmoothBody {
    int dim;
    std::function<double(const Vec&)> value;
    std::function<SmoothEval(const Vec&)> eval;
    double bound = 2.0;  // containing box half-width
    bool convex = true;
    bool origin_symmetric = false;
    // polar angles in [0, 2 pi) of singular boundary directions (n = 2 only);
    // quadrature panels are split and graded there
    std::vector<double> exception_angles;
    std::function<double(const Vec&)> support;   // optional exact
    std::function<double(const Vec&)> radial;    // optional exact
    std::optional<double> volume_exact;
    std::string name;
};

// Star body given by radial samples on a circle grid with periodic linear
// interpolation (n = 2).
class StarBody {
public:
    StarBody(SphereGrid grid, std::vector<double> rho);
    int dim() const { return grid_.dim; }
    const SphereGrid& grid() const { return grid_; }
    const std::vector<double>& rho_samples() const { return rho_; }
    double radial(const Vec& xi) const;

private:
    SphereGrid grid_;
    std::vector<double> rho_;
};

// Intersection of smooth pieces and a polytopal cut: the representation
// behind floating/GHSW candidates and the valuation slab family. The
// boundary decomposes into smooth pieces (curvature from the active piece)
// and flat pieces (curvature 0).
struct IntersectionBody {
    std::vector<SmoothBody> smooth_parts;
    std::vector<Halfspace> cuts;
    int dim = 0;
};

class ConvexBody;
using BodyRep = std::variant<HPolytope, VPolytope, SmoothBody, StarBody, IntersectionBody>;

// Tagged union over the supported representations; the single dispatch
// point for all geometric operations.
class ConvexBody {
public:
    explicit ConvexBody(BodyRep rep, std::string name = "");
    int dim() const { return dim_; }
    const BodyRep& rep() const { return *rep_; }
    const std::string& name() const { return name_; }

    bool is_polytope() const;
    const HPolytope* as_hpoly() const { return std::get_if<HPolytope>(rep_.get()); }
    const VPolytope* as_vpoly() const { return std::get_if<VPolytope>(rep_.get()); }
    const SmoothBody* as_smooth() const { return std::get_if<SmoothBody>(rep_.get()); }
    const StarBody* as_star() const { return std::get_if<StarBody>(rep_.get()); }
    const IntersectionBody* as_intersection() const {
        return std::get_if<IntersectionBody>(rep_.get());
    }

private:
    std::shared_ptr<const BodyRep> rep_;
    int dim_;
    std::string name_;
};

// ---- factories ----

ConvexBody make_ball(int dim, double radius = 1.0);
ConvexBody make_ellipsoid(const std::vector<double>& semi_axes);
ConvexBody make_bpn(int dim, double p);           // unit ball of l_p, p > 1
ConvexBody make_cube(int dim, double half = 1.0); // [-half, half]^n as HPolytope
ConvexBody make_simplex(int dim);                 // conv{0, e_1..e_n} centered at origin
ConvexBody make_vpolytope(std::vector<Vec> verts);
ConvexBody make_hpolytope(std::vector<Halfspace> hs, int dim);

// Linear image T(K) + shift for smooth bodies; exact pushforward of
// evaluators, support and volume.
SmoothBody affine_image_smooth(const SmoothBody& b, const Mat& t, const Vec& shift);

}  // namespace affsurf
