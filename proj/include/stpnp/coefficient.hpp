#pragma once

#include <functional>
#include <map>
#include <string>
#include <variant>

#include "stpnp/mesh.hpp"

namespace stpnp {

/// Scalar coefficient over the mesh (permittivity, fixed charge,
/// cross-section, ...).
///
/// Piecewise fields are resolved through the element's region tag, never
/// through the point, so values on a jump interface are well defined.
class CoefficientField {
 public:
  using Function = std::function<double(const Point&)>;

  CoefficientField() = default;  // constant zero

  static CoefficientField constant(std::string name, double value);
  /// `values` maps region tag to value; regions not listed use `fallback`.
  static CoefficientField piecewise(std::string name, std::map<int, double> values,
                                    double fallback);
  static CoefficientField closed_form(std::string name, Function f);
  /// Region-selected closed-form branches (e.g. a linear profile per region).
  static CoefficientField piecewise_closed_form(std::string name,
                                                std::map<int, Function> branches,
                                                Function fallback);

  double operator()(int region, const Point& x) const;

  const std::string& name() const { return name_; }
  bool is_constant() const { return std::holds_alternative<double>(repr_); }

 private:
  struct Piecewise {
    std::map<int, double> values;
    double fallback;
  };
  struct PiecewiseFn {
    std::map<int, Function> branches;
    Function fallback;
  };

  std::string name_;
  std::variant<double, Piecewise, Function, PiecewiseFn> repr_;
};

double evaluate_coefficient(const CoefficientField& field, const Mesh& mesh,
                            std::size_t element, const Point& x);

}  // namespace stpnp
