#pragma once

#include <iosfwd>
#include <string>

#include "acid/config.hpp"

namespace acid {

struct RunPaths {
  std::string data_in;   // input CSV (resample/diagnose/bandwidth)
  std::string out_dir;   // artifact directory
};

//! Executes one command against a validated configuration. Artifacts are
//! written atomically (temp file + rename) and a manifest.json records the
//! config hash, the seed, and a content hash per emitted file.
//! Returns 0 on success, 2 on configuration errors, 3 on data errors and
//! 4 on numeric failures; diagnostics go to err.
int run_command(const std::string& command, const RunConfig& config,
                const RunPaths& paths, std::ostream& err);

//! FNV-1a 64-bit content hash (stable across platforms).
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace acid
