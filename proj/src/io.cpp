#include "vessel/io.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <csetjmp>
#include <cstdint>
#include <filesystem>
#include <fstream>

#include <json.hpp>
#include <png.h>
#include <unistd.h>

#include "vessel/error.hpp"

namespace vessel::io {

using nlohmann::json;

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string save_vessel_file(const VesselGraph& graph,
                             const std::map<std::string, std::string>& meta) {
  json doc;
  doc["format_version"] = "vesselgraph/1";

  json nodes = json::array();
  for (const VesselNode& n : graph.nodes()) {
    nodes.push_back({{"x", n.x}, {"y", n.y}, {"z", n.z}, {"r", n.r}});
  }
  doc["nodes"] = std::move(nodes);

  json edges = json::array();
  for (const VesselEdge& e : graph.edges()) {
    edges.push_back(json::array({e.from, e.to}));
  }
  doc["edges"] = std::move(edges);

  doc["meta"] = json::object();
  for (const auto& [k, v] : meta) doc["meta"][k] = v;

  return doc.dump();
}

VesselFile load_vessel_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("format_version") ||
      doc["format_version"] != "vesselgraph/1") {
    fail(ErrorCode::ParseError, "expected format_version \"vesselgraph/1\"");
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) {
    fail(ErrorCode::ParseError, "missing nodes array");
  }

  VesselFile file;
  std::vector<VesselNode> nodes;
  nodes.reserve(doc["nodes"].size());
  for (const json& jn : doc["nodes"]) {
    if (!jn.is_object() || !jn.contains("x") || !jn.contains("y") ||
        !jn.contains("z") || !jn.contains("r") || !jn["x"].is_number() ||
        !jn["y"].is_number() || !jn["z"].is_number() || !jn["r"].is_number()) {
      fail(ErrorCode::ParseError, "node entries need numeric x, y, z, r");
    }
    VesselNode n{jn["x"].get<double>(), jn["y"].get<double>(),
                 jn["z"].get<double>(), jn["r"].get<double>()};
    if (!(n.r > 0.0) || !std::isfinite(n.r)) {
      fail(ErrorCode::ParseError, "node radii must be positive");
    }
    nodes.push_back(n);
  }

  std::vector<VesselEdge> edges;
  file.has_edges = doc.contains("edges");
  if (file.has_edges) {
    if (!doc["edges"].is_array()) fail(ErrorCode::ParseError, "edges must be an array");
    for (const json& je : doc["edges"]) {
      if (!je.is_array() || je.size() != 2 || !je[0].is_number_unsigned() ||
          !je[1].is_number_unsigned()) {
        fail(ErrorCode::ParseError, "edges must be [from, to] index pairs");
      }
      const std::uint64_t from = je[0].get<std::uint64_t>();
      const std::uint64_t to = je[1].get<std::uint64_t>();
      if (from >= nodes.size() || to >= nodes.size() || from == to) {
        fail(ErrorCode::ParseError, "edge references an invalid node id");
      }
      edges.push_back({static_cast<std::uint32_t>(from),
                       static_cast<std::uint32_t>(to),
                       nodes[from].r});
    }
  }

  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) fail(ErrorCode::ParseError, "meta must be an object");
    for (const auto& [k, v] : doc["meta"].items()) {
      if (!v.is_string()) fail(ErrorCode::ParseError, "meta values must be strings");
      file.meta[k] = v.get<std::string>();
    }
  }

  file.graph = VesselGraph::from_parts(std::move(nodes), std::move(edges));
  for (const ValidationIssue& issue : validate(file.graph).issues) {
    fail(ErrorCode::ParseError, issue.message);
  }
  return file;
}

std::string save_volume(const raster::RasterMask& mask) {
  if (mask.data.size() != mask.dims.cell_count()) {
    fail(ErrorCode::ShapeMismatch, "mask data does not match its dims");
  }
  json header;
  header["dims"] = {mask.dims.width, mask.dims.height, mask.dims.depth};
  header["encoding"] = "u8-raw";
  header["order"] = "x-fastest";

  std::string out = header.dump();
  out += '\n';
  out.append(reinterpret_cast<const char*>(mask.data.data()), mask.data.size());
  return out;
}

raster::RasterMask load_volume(const std::string& bytes) {
  const std::size_t nl = bytes.find('\n');
  if (nl == std::string::npos) fail(ErrorCode::ParseError, "missing header line");

  json header;
  try {
    header = json::parse(bytes.substr(0, nl));
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("invalid volume header: ") + e.what());
  }
  if (!header.is_object() || !header.contains("dims") ||
      !header["dims"].is_array() || header["dims"].size() != 3 ||
      header.value("encoding", "") != "u8-raw" ||
      header.value("order", "") != "x-fastest") {
    fail(ErrorCode::ParseError, "volume header fields are wrong");
  }
  raster::Dims dims;
  try {
    dims.width = header["dims"][0].get<std::uint32_t>();
    dims.height = header["dims"][1].get<std::uint32_t>();
    dims.depth = header["dims"][2].get<std::uint32_t>();
  } catch (const json::exception&) {
    fail(ErrorCode::ParseError, "volume dims must be unsigned integers");
  }
  if (dims.cell_count() == 0) fail(ErrorCode::ParseError, "volume has no cells");
  if (bytes.size() - nl - 1 != dims.cell_count()) {
    fail(ErrorCode::ParseError, "payload size does not match dims");
  }

  raster::RasterMask mask;
  mask.dims = dims;
  mask.data.assign(bytes.begin() + static_cast<std::ptrdiff_t>(nl) + 1, bytes.end());
  return mask;
}

namespace {

void png_append(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), length);
}

struct PngReadCursor {
  const std::string* bytes;
  std::size_t offset;
};

void png_consume(png_structp png, png_bytep data, png_size_t length) {
  auto* cur = static_cast<PngReadCursor*>(png_get_io_ptr(png));
  if (cur->offset + length > cur->bytes->size()) {
    png_error(png, "unexpected end of PNG data");
  }
  std::copy_n(cur->bytes->data() + cur->offset, length,
              reinterpret_cast<char*>(data));
  cur->offset += length;
}

void png_raise(png_structp png, png_const_charp msg) {
  *static_cast<std::string*>(png_get_error_ptr(png)) = msg;
  longjmp(png_jmpbuf(png), 1);
}

void png_quiet(png_structp, png_const_charp) {}

}  // namespace

std::string encode_png(const raster::RasterMask& mask) {
  if (!mask.dims.is_2d()) fail(ErrorCode::InvalidParams, "PNG wants a 2D mask");
  if (mask.data.size() != mask.dims.cell_count() || mask.data.empty()) {
    fail(ErrorCode::ShapeMismatch, "mask data does not match its dims");
  }

  std::string out;
  std::string error_msg;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, &error_msg, png_raise, png_quiet);
  if (!png) fail(ErrorCode::IoError, "png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    fail(ErrorCode::IoError, "png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorCode::IoError, "PNG encode failed: " + error_msg);
  }

  png_set_write_fn(png, &out, png_append, nullptr);
  png_set_IHDR(png, info, mask.dims.width, mask.dims.height, 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_set_compression_level(png, 6);
  png_set_filter(png, 0, PNG_FILTER_NONE);
  png_write_info(png, info);
  for (std::uint32_t y = 0; y < mask.dims.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(&mask.data[mask.index(0, y)]));
  }
  png_write_end(png, info);
  png_destroy_write_struct(&png, &info);
  return out;
}

raster::RasterMask decode_png(const std::string& bytes) {
  if (bytes.size() < 8 ||
      png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) != 0) {
    fail(ErrorCode::ParseError, "not a PNG file");
  }

  std::string error_msg;
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &error_msg, png_raise, png_quiet);
  if (!png) fail(ErrorCode::IoError, "png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    fail(ErrorCode::IoError, "png_create_info_struct failed");
  }
  raster::RasterMask mask;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(ErrorCode::ParseError, "PNG decode failed: " + error_msg);
  }

  PngReadCursor cursor{&bytes, 0};
  png_set_read_fn(png, &cursor, png_consume);
  png_read_info(png, info);

  const png_byte color = png_get_color_type(png, info);
  const png_byte depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    fail(ErrorCode::ParseError, "expected a grayscale PNG");
  }
  if (depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  if (depth == 16) png_set_strip_16(png);
  png_read_update_info(png, info);

  mask.dims = {png_get_image_width(png, info), png_get_image_height(png, info), 1};
  mask.data.resize(mask.dims.cell_count());
  for (std::uint32_t y = 0; y < mask.dims.height; ++y) {
    png_read_row(png, &mask.data[mask.index(0, y)], nullptr);
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return mask;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) fail(ErrorCode::IoError, "cannot read " + path);
  return bytes;
}

void write_file(const std::string& path, const std::string& bytes) {
  static std::atomic<std::uint64_t> counter{0};
  const std::string tmp = path + ".tmp." + std::to_string(::getpid()) + "." +
                          std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot create " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      fail(ErrorCode::IoError, "cannot write " + tmp);
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::IoError, "cannot move " + tmp + " into place: " + ec.message());
  }
}

}  // namespace vessel::io
