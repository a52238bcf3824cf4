#include "dunkl/context.hpp"

namespace dunkl {

Context::Context(const RootSystemSpec& spec, MeasureSettings settings)
    : atlas_((spec.validate(), spec), build_group(spec)), measure_(atlas_, settings) {
  if (spec.type != GroupType::Dihedral) heat_.emplace(spec.coordinate_kappa());
}

const HeatKernel& Context::heat() const {
  if (!heat_) throw Unsupported("heat kernels are only available for Z2^N; got " + spec().name());
  return *heat_;
}

}  // namespace dunkl
