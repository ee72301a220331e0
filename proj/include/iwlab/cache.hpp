// Persistent cache of computed objects and the line-delimited report records.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwlab/theorem_lab.hpp"

namespace iwlab {

constexpr int kCacheSchema = 1;

struct CacheRecord {
  int schema = kCacheSchema;
  std::string kind;  // object kind, e.g. "lp_at_one"
  std::string key;   // canonical parameter encoding
  std::vector<std::string> payload;  // decimal strings
  int precision = 0;
  std::string digest;
};

// SHA-256 over schema, kind, key, precision and payload
std::string record_digest(const CacheRecord& r);

struct CacheCheck {
  std::string file;
  bool ok;
  std::string message;
};

class Cache {
 public:
  // empty dir: $IWLAB_CACHE_DIR, else ./.iwlab-cache
  explicit Cache(std::string dir = "");
  const std::string& dir() const { return dir_; }

  void put(CacheRecord r) const;
  // nullopt when absent; throws DomainError on a schema mismatch or a bad digest
  std::optional<CacheRecord> get(const std::string& kind, const std::string& key) const;
  std::vector<std::string> files() const;
  std::vector<CacheCheck> verify() const;
  // removes the records that fail verification, returns how many
  int prune() const;

 private:
  std::string path_for(const std::string& kind, const std::string& key) const;
  std::string dir_;
};

std::string default_cache_dir();

// one JSON object per report; wall time only when requested
std::string to_record(const VerificationReport& r, bool with_time = false);
// p-adic and exact values as decimal-string payloads
std::vector<std::string> payload_of(const PadicCyclo& x);
std::vector<std::string> payload_of(const Cyclo& x);

}  // namespace iwlab
