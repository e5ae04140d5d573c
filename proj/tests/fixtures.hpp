#pragma once

// Shared fixture corpus for the unit tests and the acceptance driver: plain
// polynomials with known vanishing order at the origin, parametric families
// anchored at the origin, and monic slice fixtures with known slice degree.

#include <zerocycle/zerocycle.hpp>

#include <string>
#include <vector>

namespace zcfix {

using zerocycle::cdouble;
using zerocycle::MultiPoly;
using zerocycle::ParamFamily;

using P = MultiPoly<cdouble>;

inline P c1(double v) { return P::constant(1, cdouble(v, 0.0)); }
inline P c2(double v) { return P::constant(2, cdouble(v, 0.0)); }
inline P c3(double v) { return P::constant(3, cdouble(v, 0.0)); }

struct PolyFixture {
  std::string name;
  P poly;
  int ord;  // order of vanishing at the origin
};

// Polynomials in 1 to 3 variables, degree at most 6, all vanishing at 0.
inline std::vector<PolyFixture> corpus() {
  P x1 = P::variable(1, 0);
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P u = P::variable(3, 0), v = P::variable(3, 1), w = P::variable(3, 2);

  std::vector<PolyFixture> out;
  out.push_back({"x", x1, 1});
  out.push_back({"x^2", x1.pow(2), 2});
  out.push_back({"x^3", x1.pow(3), 3});
  out.push_back({"x^2(x-1)", x1.pow(2) * (x1 - c1(1)), 2});
  out.push_back({"x(x-1)(x+2)", x1 * (x1 - c1(1)) * (x1 + c1(2)), 1});
  out.push_back({"x^4+x^5", x1.pow(4) + x1.pow(5), 4});
  out.push_back({"xy", x * y, 2});
  out.push_back({"y^2-x^3", y.pow(2) - x.pow(3), 2});
  out.push_back({"x^2+y^3", x.pow(2) + y.pow(3), 2});
  out.push_back({"(x+y)^2(y-x^3)", (x + y).pow(2) * (y - x.pow(3)), 3});
  out.push_back({"x^2-y^2", x.pow(2) - y.pow(2), 2});
  out.push_back({"x+y^2", x + y.pow(2), 1});
  out.push_back({"x^2+xy+y^2", x.pow(2) + x * y + y.pow(2), 2});
  out.push_back({"(x-y)(x+2y)(x-3y)", (x - y) * (x + c2(2) * y) * (x - c2(3) * y), 3});
  out.push_back({"y^2-x^2-x^3", y.pow(2) - x.pow(2) - x.pow(3), 2});
  out.push_back({"xy(x+y)", x * y * (x + y), 3});
  out.push_back({"x^5+y^5+x^3y^3", x.pow(5) + y.pow(5) + x.pow(3) * y.pow(3), 5});
  out.push_back({"x^2y+y^4", x.pow(2) * y + y.pow(4), 3});
  out.push_back({"uvw", u * v * w, 3});
  out.push_back({"u^2+v^2+w^2", u.pow(2) + v.pow(2) + w.pow(2), 2});
  out.push_back({"w^2-uv", w.pow(2) - u * v, 2});
  out.push_back({"u+v+w^3", u + v + w.pow(3), 1});
  out.push_back({"(u+w)^2-v^3", (u + w).pow(2) - v.pow(3), 2});
  return out;
}

struct FamilyFixture {
  std::string name;
  ParamFamily fam;      // parameter is variable 0, base point the origin
  int ord0;             // order of f_{t0} at the origin
  int ord_generic;      // order of f_t at the origin for small t != t0
  // A testing disc for the degree-stabilization check: a complex line disc
  // anchored on the zero set of f_{t0} that isolates one intersection event.
  std::vector<cdouble> disc_anchor;
  std::vector<cdouble> disc_direction;
  double disc_radius = 0.5;
  int disc_degree = 0;  // intersection count with multiplicity at t0
};

inline ParamFamily make_family(P poly) {
  ParamFamily fam;
  fam.param_index = 0;
  fam.t0 = cdouble(0.0, 0.0);
  fam.base_point.assign(std::size_t(poly.nvars() - 1), cdouble(0.0, 0.0));
  fam.poly = std::move(poly);
  return fam;
}

// Families over (t, x) or (t, x, y) with f(t, 0) = 0 for every t.
inline std::vector<FamilyFixture> family_corpus() {
  P t = P::variable(2, 0), x = P::variable(2, 1);
  P s = P::variable(3, 0), a = P::variable(3, 1), b = P::variable(3, 2);

  const cdouble one(1.0, 0.0), zero(0.0, 0.0), quarter_i(0.0, 0.125);
  std::vector<FamilyFixture> out;
  out.push_back({"tx+x^2", make_family(t * x + x.pow(2)), 2, 1,
                 {zero}, {one}, 0.7, 2});
  out.push_back({"tx+x^3", make_family(t * x + x.pow(3)), 3, 1,
                 {zero}, {one}, 0.7, 3});
  out.push_back({"x^2 constant", make_family(x.pow(2)), 2, 2,
                 {zero}, {one}, 0.7, 2});
  out.push_back({"(1+t)x^2", make_family((c2(1) + t) * x.pow(2)), 2, 2,
                 {zero}, {one}, 0.7, 2});
  out.push_back({"x^2-t^2x", make_family(x.pow(2) - t.pow(2) * x), 2, 1,
                 {zero}, {one}, 0.7, 2});
  out.push_back({"tx^2+x^3", make_family(t * x.pow(2) + x.pow(3)), 3, 2,
                 {zero}, {one}, 0.7, 3});
  out.push_back({"y^2-x^3+sxy", make_family(b.pow(2) - a.pow(3) + s * a * b), 2, 2,
                 {cdouble(0.25, 0.0), cdouble(0.125, 0.0)}, {zero, one}, 0.15, 1});
  out.push_back({"xy+s(x+y)^3", make_family(a * b + s * (a + b).pow(3)), 2, 2,
                 {cdouble(0.5, 0.0), zero}, {zero, one}, 0.2, 1});
  out.push_back({"x^2+sxy+y^3", make_family(a.pow(2) + s * a * b + b.pow(3)), 2, 2,
                 {quarter_i, cdouble(0.25, 0.0)}, {one, zero}, 0.15, 1});
  out.push_back({"(x+y)^2+sy^3", make_family((a + b).pow(2) + s * b.pow(3)), 2, 2,
                 {cdouble(0.3, 0.0), cdouble(-0.3, 0.0)}, {one, zero}, 0.15, 2});
  return out;
}

struct SliceFixture {
  std::string name;
  P poly;        // variables (x, t), monic in the fibre variable t
  int delta;     // total fibre intersection count with multiplicity
  int covering;  // distinct fibre points over a generic base
  zerocycle::Region box;
};

inline zerocycle::Region slice_box(double base_radius, double fibre_radius) {
  zerocycle::Region r;
  r.center.assign(2, cdouble(0.0, 0.0));
  r.radii = {base_radius, fibre_radius};
  return r;
}

inline std::vector<SliceFixture> slice_corpus() {
  P x = P::variable(2, 0), t = P::variable(2, 1);
  std::vector<SliceFixture> out;
  out.push_back({"t^2-x", t.pow(2) - x, 2, 2, slice_box(0.04, 0.5)});
  out.push_back({"(t-x)^2", (t - x).pow(2), 2, 1, slice_box(0.04, 0.5)});
  out.push_back({"t(t-x)", t * (t - x), 2, 2, slice_box(0.04, 0.5)});
  out.push_back({"t^3-xt", t.pow(3) - x * t, 3, 3, slice_box(0.04, 0.5)});
  return out;
}

}  // namespace zcfix
