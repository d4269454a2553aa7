#pragma once

#include <string>
#include <vector>

#include "nonint/integrate.hpp"

namespace nonint {

struct PlotScene {
    std::vector<PathSpec> paths;
    /// One per path, may be shorter.
    std::vector<std::string> path_labels;
    std::vector<Complex> singularities;
    /// Base point, drawn as a filled square.
    Complex base{0.0, 0.0};
};

/// Complex t plane with axes, loops and singularity markers. The view is
/// the bounding box of everything drawn plus a margin.
std::string render_svg(const PlotScene& scene, int width = 640, int height = 640);

/// Columns path,segment,s,re,im.
std::string path_csv(const std::vector<PathSpec>& paths, int samples_per_segment = 64);

/// Columns segment,s,re_t,im_t,norm_x,h.
std::string trace_csv(const std::vector<StepRecord>& steps);

} // namespace nonint
