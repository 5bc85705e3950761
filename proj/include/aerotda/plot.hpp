#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aerotda/diagram.hpp"
#include "aerotda/landscape.hpp"
#include "aerotda/metricspace.hpp"

namespace aerotda::plot {

/// Birth/death scatter with the diagonal; essential points drawn on a top band.
std::string diagram_svg(const PersistenceDiagram& d, const std::string& title);
/// One horizontal bar per interval, grouped by dimension.
std::string barcode_svg(const PersistenceDiagram& d, const std::string& title);
/// One polyline per landscape level.
std::string landscape_svg(const Landscape& l, const std::string& title);
/// Labelled scatter of planar coordinates.
std::string embedding_svg(const std::vector<std::string>& labels, const std::vector<Point2>& coords,
                          const std::string& title);

struct PlotArtifacts {
  std::vector<std::pair<std::string, PersistenceDiagram>> diagrams;  // stem, diagram
  std::vector<std::pair<std::string, Landscape>> landscapes;
  std::vector<std::string> embedding_labels;
  std::vector<Point2> embedding;
};

/// Writes <stem>_diagram.svg, <stem>_barcode.svg, <stem>_landscape.svg and
/// embedding.svg into out_dir. Failures become warnings.
std::vector<std::string> emit_plots(const PlotArtifacts& artifacts,
                                    const std::filesystem::path& out_dir);

}  // namespace aerotda::plot
