#pragma once

#include <map>
#include <string>

#include "vessel/graph.hpp"
#include "vessel/raster.hpp"

namespace vessel::io {

// Shortest decimal encoding that parses back to the same double.
std::string format_double(double value);

struct VesselFile {
  VesselGraph graph;
  std::map<std::string, std::string> meta;
  bool has_edges = true;  // false when the JSON omitted the edges array
};

// "vesselgraph/1" JSON document: sorted keys, nodes as {r,x,y,z} objects
// (ids implicit by order), edges as [from,to] pairs, meta as a string map.
// Numbers use shortest round-trip encoding, so save(load(save(g))) is
// byte-identical to save(g).
std::string save_vessel_file(const VesselGraph& graph,
                             const std::map<std::string, std::string>& meta = {});
VesselFile load_vessel_file(const std::string& text);

// Volume container: one compact JSON header line
// {"dims":[w,h,d],"encoding":"u8-raw","order":"x-fastest"}, a newline,
// then exactly w*h*d payload bytes, x-fastest.
std::string save_volume(const raster::RasterMask& mask);
raster::RasterMask load_volume(const std::string& bytes);

// 8-bit grayscale PNG, fixed encoder settings (identical input -> identical
// bytes). encode rejects 3D masks; decode rejects non-grayscale files.
std::string encode_png(const raster::RasterMask& mask);
raster::RasterMask decode_png(const std::string& bytes);

// Whole-file helpers; IoError on failure. write_file stages through a
// temp file in the target directory and renames into place.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

}  // namespace vessel::io
