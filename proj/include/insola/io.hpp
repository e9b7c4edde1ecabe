#pragma once

#include <optional>
#include <string>
#include <vector>

#include "insola/hyper.hpp"
#include "insola/solver.hpp"
#include "insola/transport.hpp"

namespace insola {

/// Points CSV, schema fixed:
/// grade,re_t,im_t,re_value,im_value,survivor,residual
/// Doubles carry 17 significant digits so a read-back is bit exact.
std::string points_csv(const std::vector<RelationPoint>& points);
void write_points_csv(const std::string& path, const std::vector<RelationPoint>& points);
std::vector<RelationPoint> read_points_csv(const std::string& path);

/// Walk CSV: t,value_re,value_im,step,degree,value_exact — doubles plus the
/// exact rational rendering of each value.
std::string walk_csv(const WalkTrace& trace);
void write_walk_csv(const std::string& path, const WalkTrace& trace);

/// Solve/sweep results as JSON text (deterministic member order).
std::string points_json(const InsolaResult& result);
std::string sweep_json(const std::vector<SweepEntry>& entries);

/// classify output: exact residual rendering plus the classification tag.
std::string classification_json(const BiPoly& residual, const Classification& c);

/// Flat two-panel scatter SVG: complex roots on the left, real-axis values
/// with an optional reference curve on the right. Byte-deterministic for
/// identical inputs.
std::string scatter_svg(const std::vector<RelationPoint>& points, std::optional<RefName> reference);
void write_scatter_svg(const std::string& path, const std::vector<RelationPoint>& points,
                       std::optional<RefName> reference);

/// Root clouds of an alpha sweep, one color per alpha value.
std::string sweep_svg(const std::vector<SweepEntry>& entries);
void write_sweep_svg(const std::string& path, const std::vector<SweepEntry>& entries);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace insola
