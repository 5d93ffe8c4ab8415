#pragma once

#include <filesystem>
#include <string_view>

#include "swat/model.hpp"

namespace swat {

/// Leading bytes of a snapshot file. Bump the digit when the layout changes;
/// older files are then rejected and must be re-ingested.
inline constexpr std::string_view kSnapshotMagic = "SWATSNP1";

/// Binary snapshot: magic, build timestamp, then the canonical records.
/// Throws IoError.
void save_snapshot(const GraphSnapshot& snapshot, const std::filesystem::path& path);

/// Throws IoError when unreadable, FormatError on a magic mismatch or a
/// truncated body, IntegrityError if the stored records no longer validate.
GraphSnapshot load_snapshot(const std::filesystem::path& path);

}  // namespace swat
