#pragma once

#include <filesystem>
#include <string>

#include "lginet/numcore/param_store.hpp"

namespace lginet {

// Checkpoint archive layout:
//   line 1: JSON object {name: {"shape": [...], "dtype": "f64"|"f32", "byte_offset": N}}
//           in store order, terminated by '\n'
//   rest:   little-endian IEEE-754 payloads concatenated in header order;
//           byte_offset is relative to the first payload byte.

enum class ArchiveDtype { kF64, kF32 };

std::string encode_archive(const ParamStore& store, ArchiveDtype dtype = ArchiveDtype::kF64);
ParamStore decode_archive(const std::string& bytes);

void save_archive(const std::filesystem::path& path, const ParamStore& store,
                  ArchiveDtype dtype = ArchiveDtype::kF64);
ParamStore load_archive(const std::filesystem::path& path);

// Overwrites values of `target` entries from `source`; names and shapes must match.
void copy_values(const ParamStore& source, ParamStore& target);

}  // namespace lginet
