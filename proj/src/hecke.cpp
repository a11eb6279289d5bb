#include "overconv/modsym.hpp"

// HeckeOp::apply is defined in the header (it is needed for every
// coefficient module, including the weight-family one); this TU keeps the
// common instantiations out of user code.

namespace ovc {

template ModularSymbol<RatPolyModule> HeckeOp::apply(const RatPolyModule&, const ModularSymbol<RatPolyModule>&,
                                                     bool) const;
template ModularSymbol<PadicPolyModule> HeckeOp::apply(const PadicPolyModule&,
                                                       const ModularSymbol<PadicPolyModule>&, bool) const;
template ModularSymbol<DistModule> HeckeOp::apply(const DistModule&, const ModularSymbol<DistModule>&,
                                                  bool) const;

}  // namespace ovc
