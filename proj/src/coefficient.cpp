#include "stpnp/coefficient.hpp"

#include <utility>

namespace stpnp {

CoefficientField CoefficientField::constant(std::string name, double value) {
  CoefficientField f;
  f.name_ = std::move(name);
  f.repr_ = value;
  return f;
}

CoefficientField CoefficientField::piecewise(std::string name, std::map<int, double> values,
                                             double fallback) {
  CoefficientField f;
  f.name_ = std::move(name);
  f.repr_ = Piecewise{std::move(values), fallback};
  return f;
}

CoefficientField CoefficientField::closed_form(std::string name, Function fn) {
  CoefficientField f;
  f.name_ = std::move(name);
  f.repr_ = std::move(fn);
  return f;
}

CoefficientField CoefficientField::piecewise_closed_form(std::string name,
                                                         std::map<int, Function> branches,
                                                         Function fallback) {
  CoefficientField f;
  f.name_ = std::move(name);
  f.repr_ = PiecewiseFn{std::move(branches), std::move(fallback)};
  return f;
}

double CoefficientField::operator()(int region, const Point& x) const {
  struct Visitor {
    int region;
    const Point& x;
    double operator()(double v) const { return v; }
    double operator()(const Piecewise& p) const {
      auto it = p.values.find(region);
      return it == p.values.end() ? p.fallback : it->second;
    }
    double operator()(const Function& f) const { return f(x); }
    double operator()(const PiecewiseFn& p) const {
      auto it = p.branches.find(region);
      return it == p.branches.end() ? p.fallback(x) : it->second(x);
    }
  };
  return std::visit(Visitor{region, x}, repr_);
}

double evaluate_coefficient(const CoefficientField& field, const Mesh& mesh,
                            std::size_t element, const Point& x) {
  return field(mesh.region[element], x);
}

}  // namespace stpnp
