#include "stpnp/problem.hpp"

#include <string>

#include "stpnp/error.hpp"

namespace stpnp {

bool ProblemSpec::has_dirichlet(FieldRef field) const {
  for (const auto& bc : dirichlet)
    if (bc.field == field) return true;
  return false;
}

void ProblemSpec::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); };
  if (species.empty()) fail("at least one species is required");
  for (std::size_t i = 0; i < species.size(); ++i) {
    if (!species[i].initial_density) fail("species " + std::to_string(i) + " has no initial density");
    if (!(species[i].diffusivity > 0.0)) fail("species " + std::to_string(i) + " needs D > 0");
  }
  if (!(unit_charge > 0.0 && boltzmann > 0.0 && temperature > 0.0))
    fail("physical constants must be positive");
  for (const auto& bc : dirichlet) {
    if (!bc.value) fail("Dirichlet condition without a value function");
    if (!bc.field.is_potential() && (bc.field.index < 0 || bc.field.index >= num_species()))
      fail("Dirichlet condition references an unknown species");
  }
  const bool phi_dirichlet = has_dirichlet(FieldRef::potential());
  if (gauge == Gauge::ZeroMean && phi_dirichlet)
    fail("zero-mean gauge cannot be combined with Dirichlet data on the potential");
  if (gauge == Gauge::Dirichlet && !phi_dirichlet)
    fail("potential gauge is 'dirichlet' but no Dirichlet marker is assigned to it");
}

}  // namespace stpnp
