#pragma once

#include "anchorlab/localizers.hpp"

// Untimed solver bodies for the batch runners, which time whole traversals.
namespace anchorlab::detail {

Estimate lsm_core(const AnchorSet& anchors, std::span<const double> measured, const LsmConfig& config = {});
Estimate gdm_core(const AnchorSet& anchors, std::span<const double> measured, Point2D init,
                  const GdmConfig& config);
Estimate tplm_core(const AnchorSet& anchors, std::span<const double> measured, Point2D reference);

}  // namespace anchorlab::detail
