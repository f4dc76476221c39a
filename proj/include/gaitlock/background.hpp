#pragma once

#include "gaitlock/imagery.hpp"
#include "gaitlock/threshold.hpp"

#include <optional>
#include <string>

namespace gaitlock {

enum class BackgroundTechnique { Cdm, Median, Histogram };

std::string to_string(BackgroundTechnique t);
BackgroundTechnique parse_background_technique(const std::string& text);

struct BackgroundModel {
  Frame reference;
  BackgroundTechnique technique = BackgroundTechnique::Median;
  // Change threshold actually applied; only set for Cdm.
  std::optional<int> cdm_threshold;
};

// Per-pixel temporal median. For an even frame count the lower of the two
// middle order statistics is used, so no new intensities are invented.
BackgroundModel model_median(const FrameSequence& seq);

// Change detection mask. Transition i -> i+1 of a pixel is a change when
// d = |I(i+1) - I(i)| >= T and d > 0. Frames between changes form runs; the
// reference is the lower median of the longest run (earliest on ties).
// An automatic threshold applies Otsu to all pooled inter-frame differences
// and uses T = otsu + 1, i.e. differences above the Otsu split are changes.
BackgroundModel model_cdm(const FrameSequence& seq, Threshold threshold);

// Per-pixel mode over a 256-bin histogram, ties toward the lowest intensity.
BackgroundModel model_histogram(const FrameSequence& seq);

BackgroundModel build_background(const FrameSequence& seq, BackgroundTechnique technique,
                                 Threshold cdm_threshold = Threshold::automatic());

} // namespace gaitlock
