#include "lginet/numcore/archive.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "lginet/errors.hpp"

namespace lginet {

namespace {

using ordered_json = nlohmann::ordered_json;

template <typename Word>
void append_le(std::string& out, Word word) {
  for (std::size_t i = 0; i < sizeof(Word); ++i) out.push_back(static_cast<char>((word >> (8 * i)) & 0xFF));
}

template <typename Word>
Word read_le(const char* src) {
  Word word = 0;
  for (std::size_t i = 0; i < sizeof(Word); ++i)
    word |= static_cast<Word>(static_cast<unsigned char>(src[i])) << (8 * i);
  return word;
}

}  // namespace

std::string encode_archive(const ParamStore& store, ArchiveDtype dtype) {
  const std::size_t width = dtype == ArchiveDtype::kF64 ? 8 : 4;
  ordered_json header = ordered_json::object();
  std::size_t offset = 0;
  for (const auto& [name, t] : store) {
    header[name] = {{"shape", t.shape()},
                    {"dtype", dtype == ArchiveDtype::kF64 ? "f64" : "f32"},
                    {"byte_offset", offset}};
    offset += t.numel() * width;
  }
  std::string out = header.dump();
  out.push_back('\n');
  out.reserve(out.size() + offset);
  for (const auto& [name, t] : store) {
    for (double v : t.data()) {
      if (dtype == ArchiveDtype::kF64) {
        append_le(out, std::bit_cast<std::uint64_t>(v));
      } else {
        append_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
      }
    }
  }
  return out;
}

ParamStore decode_archive(const std::string& bytes) {
  const std::size_t newline = bytes.find('\n');
  if (newline == std::string::npos) throw FormatError("archive: missing header terminator");
  ordered_json header;
  try {
    header = ordered_json::parse(bytes.substr(0, newline));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("archive: bad header: ") + e.what(), 1);
  }
  if (!header.is_object()) throw FormatError("archive: header is not an object", 1);

  const std::size_t payload = newline + 1;
  ParamStore store;
  for (const auto& [name, meta] : header.items()) {
    Shape shape;
    std::string dtype;
    std::size_t offset = 0;
    try {
      shape = meta.at("shape").get<Shape>();
      dtype = meta.at("dtype").get<std::string>();
      offset = meta.at("byte_offset").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
      throw FormatError("archive: entry '" + name + "': " + e.what(), 1);
    }
    std::size_t width = 0;
    if (dtype == "f64") {
      width = 8;
    } else if (dtype == "f32") {
      width = 4;
    } else {
      throw FormatError("archive: entry '" + name + "' has unknown dtype '" + dtype + "'", 1);
    }
    const std::size_t count = shape_numel(shape);
    if (payload + offset + count * width > bytes.size()) {
      throw FormatError("archive: entry '" + name + "' runs past end of file");
    }
    std::vector<double> values(count);
    const char* src = bytes.data() + payload + offset;
    for (std::size_t i = 0; i < count; ++i) {
      if (width == 8) {
        values[i] = std::bit_cast<double>(read_le<std::uint64_t>(src + 8 * i));
      } else {
        values[i] = static_cast<double>(std::bit_cast<float>(read_le<std::uint32_t>(src + 4 * i)));
      }
    }
    store.add(name, Tensor(std::move(shape), std::move(values)));
  }
  return store;
}

void save_archive(const std::filesystem::path& path, const ParamStore& store, ArchiveDtype dtype) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  const std::string bytes = encode_archive(store, dtype);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

ParamStore load_archive(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_archive(bytes);
}

void copy_values(const ParamStore& source, ParamStore& target) {
  if (source.size() != target.size()) {
    throw ContractError("copy_values: " + std::to_string(source.size()) + " entries vs " +
                        std::to_string(target.size()));
  }
  for (auto& [name, t] : target) {
    const Tensor& src = source.get(name);
    if (src.shape() != t.shape()) {
      throw DimensionError("copy_values: '" + name + "' has shape " + shape_to_string(src.shape()) +
                           ", expected " + shape_to_string(t.shape()));
    }
    std::copy(src.data().begin(), src.data().end(), t.mutable_data().begin());
  }
}

}  // namespace lginet
