#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include <json.hpp>

#include "biasprobe/optimizers.hpp"

namespace biasprobe::io {

/// Shortest-exact then up-to-17-significant-digit formatting used for all
/// numeric trace/CSV output; round-trips doubles exactly and is locale-free.
std::string format_double(double value);

/// Streaming writer for the JSON-Lines trace format (docs/file-formats.md):
/// line 1 is the header record, then one line per snapshot, then a final_best
/// record. Lines are flushed as written so an aborted run leaves a parseable
/// prefix.
class TraceWriter {
public:
    TraceWriter(const std::string& path, const nlohmann::json& header);

    void write_snapshot(const optim::Snapshot& snapshot);
    void write_final_best(const optim::Individual& best, std::uint64_t evaluations_used);

private:
    std::ofstream out_;
    std::string path_;
};

/// Parse a trace file back into a RunTrace. Malformed input raises
/// std::runtime_error naming the file and line number.
optim::RunTrace read_trace(const std::string& path);

/// Write a complete in-memory trace (header, snapshots, final best).
void write_trace(const std::string& path, const optim::RunTrace& trace,
                 std::uint64_t evaluations_used);

/// FNV-1a 64-bit hash of a canonical (sorted-key) JSON dump, reported as a
/// 16-digit hex string; used to fingerprint experiment configs in manifests.
std::string config_hash(const nlohmann::json& config);

}  // namespace biasprobe::io
