#pragma once

#include <string>

#include "nullgeo/geodesic.hpp"
#include "nullgeo/mesh.hpp"
#include "nullgeo/metric.hpp"

// Lossless text formats. Doubles are printed with %.17g so every value
// round-trips bit for bit; see docs/formats.md for the grammar.

namespace nullgeo {

std::string format_double(double x);  // %.17g

std::string mesh_to_text(const SpatialMesh& mesh);
SpatialMesh mesh_from_text(const std::string& text);

std::string metric_to_text(const MetricField& field);
MetricField metric_from_text(const std::string& text);

std::string lapse_to_text(const Lapse& lapse);
Lapse lapse_from_text(const std::string& text);

std::string spacetime_to_json(const StaticSpacetime& st);
StaticSpacetime spacetime_from_json(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace nullgeo
