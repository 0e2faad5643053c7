#pragma once

// Resumable search state on disk. The file is a single JSON document:
//
//   {"schema": "pythperm-search-checkpoint", "version": 1,
//    "search_id": "dim3:[0,2]:block1024", "dim": 3, "range": {"lo": 0, "hi": 2},
//    "block_size": 1024, "allow_negative": false,
//    "total_units": 1, "shard_plan": {"shards": 4, "descriptors": [...]},
//    "last_completed_unit": 0, "complete": true,
//    "records": [<search-record>...], "digest": "fnv1a64:..."}
//
// The digest covers search_id, last_completed_unit and records.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "pythperm/errors.hpp"
#include "pythperm/records.hpp"
#include "pythperm/search.hpp"

namespace pythperm {

inline constexpr const char* kCheckpointSchema = "pythperm-search-checkpoint";
inline constexpr int kCheckpointVersion = 1;

inline std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

namespace detail {

inline std::string checkpoint_digest(const std::string& id, std::int64_t last, const Json& records) {
  Json body;
  body["search_id"] = id;
  body["last_completed_unit"] = last;
  body["records"] = records;
  return fnv1a64(body.dump());
}

}  // namespace detail

inline Json checkpoint_json(const SearchState& state, std::size_t shards) {
  Json records = Json::array();
  for (const auto& r : state.records) records.push_back(to_json(r));
  const std::int64_t last = static_cast<std::int64_t>(state.next_unit) - 1;

  Json plan;
  plan["shards"] = shards;
  Json descriptors = Json::array();
  for (const auto& d : partition_work(state.space, shards)) {
    Json dj;
    dj["shard"] = d.shard;
    dj["unit_begin"] = d.unit_begin;
    dj["unit_end"] = d.unit_end;
    descriptors.push_back(dj);
  }
  plan["descriptors"] = descriptors;

  Json j;
  j["schema"] = kCheckpointSchema;
  j["version"] = kCheckpointVersion;
  j["search_id"] = state.space.id();
  j["dim"] = state.space.dim;
  j["range"] = {{"lo", state.space.range.lo}, {"hi", state.space.range.hi}};
  j["block_size"] = state.space.block_size;
  j["allow_negative"] = state.space.allow_negative;
  j["total_units"] = state.space.unit_total();
  j["shard_plan"] = plan;
  j["last_completed_unit"] = last;
  j["complete"] = state.complete();
  j["records"] = records;
  j["digest"] = detail::checkpoint_digest(state.space.id(), last, records);
  return j;
}

inline SearchState state_from_checkpoint(const Json& j) {
  try {
    if (j.at("schema").get<std::string>() != kCheckpointSchema) throw CheckpointError("not a search checkpoint");
    if (j.at("version").get<int>() != kCheckpointVersion)
      throw CheckpointError("unsupported checkpoint version " + j.at("version").dump());
    SearchState state;
    state.space.dim = j.at("dim").get<int>();
    state.space.range = {j.at("range").at("lo").get<Int>(), j.at("range").at("hi").get<Int>()};
    state.space.block_size = j.at("block_size").get<std::uint64_t>();
    state.space.allow_negative = j.at("allow_negative").get<bool>();
    state.space.validate();
    if (state.space.id() != j.at("search_id").get<std::string>())
      throw CheckpointError("checkpoint search_id does not match its parameters");
    const auto last = j.at("last_completed_unit").get<std::int64_t>();
    if (last < -1 || last >= static_cast<std::int64_t>(state.space.unit_total()))
      throw CheckpointError("checkpoint progress out of range");
    if (detail::checkpoint_digest(state.space.id(), last, j.at("records")) != j.at("digest").get<std::string>())
      throw CheckpointError("checkpoint digest mismatch");
    state.next_unit = static_cast<std::uint64_t>(last + 1);
    for (const auto& r : j.at("records")) state.records.push_back(search_record_from_json(r));
    return state;
  } catch (const Json::exception& e) {
    throw CheckpointError(std::string("malformed checkpoint: ") + e.what());
  } catch (const ParameterError& e) {
    throw CheckpointError(std::string("invalid checkpoint parameters: ") + e.what());
  }
}

/// Write-new-then-rename so a reader never sees a partial file.
inline void save_checkpoint(const std::filesystem::path& path, const SearchState& state, std::size_t shards) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError("cannot write " + tmp.string());
    out << checkpoint_json(state, shards).dump(1) << '\n';
    out.flush();
    if (!out) throw CheckpointError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline SearchState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError("cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw CheckpointError("checkpoint " + path.string() + " is not valid JSON: " + e.what());
  }
  return state_from_checkpoint(j);
}

}  // namespace pythperm
